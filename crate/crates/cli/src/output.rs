use std::io::Write;

use npcorr::{CorrelationKind, EmissionRecord};

pub const HEADER: &str = "t,kind,value";

/// Scientific notation with 17 significant digits; parses back to the same `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `t,kind,value` rows.
pub struct EmissionWriter<W: Write> {
    out: W,
    na: String,
    rows: u64,
}

impl<W: Write> EmissionWriter<W> {
    pub fn new(mut out: W, na: &str) -> std::io::Result<Self> {
        writeln!(out, "{HEADER}")?;
        Ok(EmissionWriter {
            out,
            na: na.to_string(),
            rows: 0,
        })
    }

    pub fn write(&mut self, record: &EmissionRecord) -> std::io::Result<()> {
        for (kind, est) in &record.estimates {
            match est.value {
                Some(v) => writeln!(self.out, "{},{},{}", record.t, kind, format_value(v))?,
                None => writeln!(self.out, "{},{},{}", record.t, kind, self.na)?,
            }
            self.rows += 1;
        }
        Ok(())
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn finish(mut self) -> std::io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

/// One parsed output row.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRow {
    pub t: u64,
    pub kind: CorrelationKind,
    pub value: Option<f64>,
}

/// Parses output written by [`EmissionWriter`].
pub fn parse_output(text: &str, na: &str) -> Result<Vec<OutputRow>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err("missing header".into());
    }
    lines
        .map(|line| {
            let mut parts = line.splitn(3, ',');
            let (t, kind, value) = match (parts.next(), parts.next(), parts.next()) {
                (Some(t), Some(k), Some(v)) => (t, k, v),
                _ => return Err(format!("short line `{line}`")),
            };
            Ok(OutputRow {
                t: t.parse().map_err(|_| format!("bad index `{t}`"))?,
                kind: kind.parse()?,
                value: if value == na {
                    None
                } else {
                    Some(value.parse().map_err(|_| format!("bad value `{value}`"))?)
                },
            })
        })
        .collect()
}
