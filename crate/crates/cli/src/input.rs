//! Observation sources: CSV readers and simulated streams.

use std::fs::File;
use std::io::{self, Read};

use npcorr::simgen::SimStream;

use crate::error::CliError;
use crate::manifest::{InputSource, RunManifest};

pub type PairResult = Result<(f64, f64), CliError>;

/// Parses a numeric field. Empty fields and `NA`/`NaN` mark a missing value.
pub fn parse_field(s: &str) -> Option<f64> {
    let s = s.trim();
    if s.is_empty() || s.eq_ignore_ascii_case("na") {
        return Some(f64::NAN);
    }
    s.parse::<f64>().ok()
}

/// Reads `(x, y)` pairs from selected CSV columns.
pub struct CsvPairs<R: Read> {
    reader: csv::Reader<R>,
    record: csv::StringRecord,
    x_col: usize,
    y_col: usize,
    skip_bad_rows: bool,
    bad_rows: u64,
    done: bool,
}

impl<R: Read> CsvPairs<R> {
    pub fn new(inner: R, x_col: usize, y_col: usize, header: bool, skip_bad_rows: bool) -> Self {
        let reader = csv::ReaderBuilder::new()
            .has_headers(header)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(inner);
        CsvPairs {
            reader,
            record: csv::StringRecord::new(),
            x_col,
            y_col,
            skip_bad_rows,
            bad_rows: 0,
            done: false,
        }
    }

    pub fn bad_rows(&self) -> u64 {
        self.bad_rows
    }

    fn parse_record(&self) -> Result<(f64, f64), String> {
        let get = |col: usize| -> Result<f64, String> {
            let field = self
                .record
                .get(col)
                .ok_or_else(|| format!("missing column {col} ({} fields)", self.record.len()))?;
            parse_field(field).ok_or_else(|| format!("column {col}: `{field}` is not a number"))
        };
        Ok((get(self.x_col)?, get(self.y_col)?))
    }
}

impl<R: Read> Iterator for CsvPairs<R> {
    type Item = PairResult;

    fn next(&mut self) -> Option<PairResult> {
        while !self.done {
            match self.reader.read_record(&mut self.record) {
                Ok(false) => self.done = true,
                Ok(true) => {
                    let row = self.record.position().map_or(0, |p| p.line());
                    // blank lines carry no observation
                    if self.record.len() == 1 && self.record[0].is_empty() {
                        continue;
                    }
                    match self.parse_record() {
                        Ok(pair) => return Some(Ok(pair)),
                        Err(_) if self.skip_bad_rows => self.bad_rows += 1,
                        Err(message) => {
                            self.done = true;
                            return Some(Err(CliError::Data { row, message }));
                        }
                    }
                }
                Err(e) => {
                    self.done = true;
                    let row = e.position().map_or(0, |p| p.line());
                    return Some(Err(match e.into_kind() {
                        csv::ErrorKind::Io(io) => CliError::io("input", io),
                        other => CliError::Data {
                            row,
                            message: format!("{other:?}"),
                        },
                    }));
                }
            }
        }
        None
    }
}

/// A source of observation pairs with counters for the run summary.
pub enum PairSource {
    Csv(CsvPairs<Box<dyn Read>>),
    Sim(SimStream),
}

impl PairSource {
    /// Opens the manifest's input. `stdin` is used for [`InputSource::Stdin`].
    pub fn open(manifest: &RunManifest, stdin: Box<dyn Read>) -> Result<Self, CliError> {
        let reader: Box<dyn Read> = match &manifest.source {
            InputSource::Sim(spec) => return Ok(PairSource::Sim(spec.iter())),
            InputSource::Stdin => stdin,
            InputSource::File(path) => Box::new(io::BufReader::new(
                File::open(path).map_err(|e| CliError::io(path.clone(), e))?,
            )),
        };
        Ok(PairSource::Csv(CsvPairs::new(
            reader,
            manifest.x_col,
            manifest.y_col,
            manifest.header,
            manifest.skip_bad_rows,
        )))
    }

    pub fn bad_rows(&self) -> u64 {
        match self {
            PairSource::Csv(c) => c.bad_rows(),
            PairSource::Sim(_) => 0,
        }
    }
}

impl Iterator for PairSource {
    type Item = PairResult;

    fn next(&mut self) -> Option<PairResult> {
        match self {
            PairSource::Csv(c) => c.next(),
            PairSource::Sim(s) => s.next().map(Ok),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(text: &str, header: bool, skip: bool) -> (Vec<PairResult>, u64) {
        let mut src = CsvPairs::new(text.as_bytes(), 0, 1, header, skip);
        let out: Vec<_> = src.by_ref().collect();
        (out, src.bad_rows())
    }

    #[test]
    fn reads_pairs_and_missing_values() {
        let (out, _) = pairs("1,2\n3.5, -4e1\n,7\nNA,1\n", false, false);
        let vals: Vec<(f64, f64)> = out.into_iter().map(Result::unwrap).collect();
        assert_eq!(vals[0], (1.0, 2.0));
        assert_eq!(vals[1], (3.5, -40.0));
        assert!(vals[2].0.is_nan() && vals[3].0.is_nan());
    }

    #[test]
    fn header_is_skipped() {
        let (out, _) = pairs("x,y\n1,2\n", true, false);
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn malformed_row_reports_line() {
        let (out, _) = pairs("1,2\n3,abc\n5,6\n", false, false);
        assert_eq!(out.len(), 2);
        match &out[1] {
            Err(CliError::Data { row, .. }) => assert_eq!(*row, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_rows_can_be_skipped() {
        let (out, bad) = pairs("1,2\n3\nx,1\n5,6\n", false, true);
        assert_eq!(out.len(), 2);
        assert_eq!(bad, 2);
    }

    #[test]
    fn selected_columns() {
        let mut src = CsvPairs::new("a,1,2,3\nb,4,5,6\n".as_bytes(), 3, 1, false, false);
        assert_eq!(src.next().unwrap().unwrap(), (3.0, 1.0));
        assert_eq!(src.next().unwrap().unwrap(), (6.0, 4.0));
    }
}
