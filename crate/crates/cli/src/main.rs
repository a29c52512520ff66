use std::process::ExitCode;

fn main() -> ExitCode {
    let code = npcorr_cli::main_with(
        std::env::args_os(),
        Box::new(std::io::stdin().lock()),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
