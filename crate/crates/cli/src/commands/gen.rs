use std::io::Write;

use super::{open_output, output_error};
use crate::args::GenArgs;
use crate::error::CliError;
use crate::manifest::sim_spec;
use crate::output::format_value;

/// Writes a simulated stream as headerless `x,y` rows.
pub fn cmd_gen(args: &GenArgs, stdout: &mut dyn Write) -> Result<u64, CliError> {
    let spec = sim_spec(&args.sim).ok_or_else(|| CliError::config("gen needs --sim1 or --sim2"))?;
    let path = args.output.as_deref().filter(|p| p.as_os_str() != "-");
    let mut out = open_output(path, stdout)?;
    let mut rows = 0;
    for (x, y) in spec.iter() {
        writeln!(out, "{},{}", format_value(x), format_value(y)).map_err(|e| output_error(path, e))?;
        rows += 1;
    }
    out.flush().map_err(|e| output_error(path, e))?;
    Ok(rows)
}
