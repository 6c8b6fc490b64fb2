//! The CSV row schema for sweep output.
//!
//! Columns: `c_num, c_den, status, d, dprime, N, cycle_code, period, beta,
//! delta, gap, threshold, epsilon, mrs_bound, runtime_ms`. Fields that do not
//! apply to a status are left empty. Reals carry 17 significant digits, which
//! round-trips binary64 exactly.

use std::io::{Read, Write};

use gelfond_core::verify::Triple;
use gelfond_core::{BinaryWord, DyadicRational, Status, VerificationRecord};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SweepError};
use crate::grid::mrs_bound;

pub const HEADER: [&str; 15] = [
    "c_num",
    "c_den",
    "status",
    "d",
    "dprime",
    "N",
    "cycle_code",
    "period",
    "beta",
    "delta",
    "gap",
    "threshold",
    "epsilon",
    "mrs_bound",
    "runtime_ms",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub c: DyadicRational,
    pub status: Status,
    pub triple: Option<Triple>,
    pub cycle_code: Option<BinaryWord>,
    pub period: usize,
    pub beta: Option<f64>,
    pub delta: Option<f64>,
    pub gap: Option<f64>,
    pub threshold: Option<f64>,
    pub epsilon: Option<f64>,
    pub mrs_bound: f64,
    pub runtime_ms: u64,
}

impl SweepRow {
    /// `record_runtime = false` writes `0` so reruns are byte-identical.
    pub fn from_record(record: &VerificationRecord, record_runtime: bool) -> Self {
        Self {
            c: record.c,
            status: record.status,
            triple: record.triple,
            cycle_code: record.cycle_code,
            period: record.period,
            beta: record.beta,
            delta: record.delta,
            gap: record.gap_value,
            threshold: record.threshold,
            epsilon: record.epsilon,
            mrs_bound: mrs_bound(record.c),
            runtime_ms: if record_runtime { record.runtime_ms } else { 0 },
        }
    }

    pub fn is_tested(&self) -> bool {
        self.status != Status::Untestable
    }

    fn fields(&self) -> Vec<String> {
        let real = |v: Option<f64>| v.map(format_real).unwrap_or_default();
        let int = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![
            self.c.numerator().to_string(),
            self.c.denominator().to_string(),
            self.status.as_str().to_string(),
            int(self.triple.map(|t| t.d)),
            int(self.triple.map(|t| t.dprime)),
            int(self.triple.map(|t| t.n)),
            self.cycle_code.map(|w| w.to_string()).unwrap_or_default(),
            self.period.to_string(),
            real(self.beta),
            real(self.delta),
            real(self.gap),
            real(self.threshold),
            real(self.epsilon),
            format_real(self.mrs_bound),
            self.runtime_ms.to_string(),
        ]
    }

    fn parse(fields: &csv::StringRecord) -> Result<Self> {
        let bad = |what: &str| SweepError::MalformedRecord(format!("{what} in {fields:?}"));
        if fields.len() != HEADER.len() {
            return Err(bad("wrong column count"));
        }
        let get = |i: usize| fields.get(i).unwrap_or("");
        let num: u64 = get(0).parse().map_err(|_| bad("c_num"))?;
        let den: u64 = get(1).parse().map_err(|_| bad("c_den"))?;
        let c = DyadicRational::new(num, den.trailing_zeros()).map_err(|_| bad("c"))?;
        if c.denominator() != den {
            return Err(bad("c_den"));
        }
        let opt_u32 = |i: usize| -> Result<Option<u32>> {
            match get(i) {
                "" => Ok(None),
                s => s.parse().map(Some).map_err(|_| bad(HEADER[i])),
            }
        };
        let opt_f64 = |i: usize| -> Result<Option<f64>> {
            match get(i) {
                "" => Ok(None),
                s => s.parse().map(Some).map_err(|_| bad(HEADER[i])),
            }
        };
        let triple = match (opt_u32(3)?, opt_u32(4)?, opt_u32(5)?) {
            (Some(d), Some(dprime), Some(n)) => Some(Triple { d, dprime, n }),
            (None, None, None) => None,
            _ => return Err(bad("partial triple")),
        };
        let cycle_code = match get(6) {
            "" => None,
            s => Some(s.parse().map_err(|_| bad("cycle_code"))?),
        };
        Ok(Self {
            c,
            status: get(2).parse().map_err(|_| bad("status"))?,
            triple,
            cycle_code,
            period: get(7).parse().map_err(|_| bad("period"))?,
            beta: opt_f64(8)?,
            delta: opt_f64(9)?,
            gap: opt_f64(10)?,
            threshold: opt_f64(11)?,
            epsilon: opt_f64(12)?,
            mrs_bound: opt_f64(13)?.ok_or_else(|| bad("mrs_bound"))?,
            runtime_ms: get(14).parse().map_err(|_| bad("runtime_ms"))?,
        })
    }
}

/// 17 significant digits.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Appends rows to a CSV sink, writing the header first when asked.
pub struct RowWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> RowWriter<W> {
    pub fn new(sink: W, header: bool) -> Result<Self> {
        let mut inner = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
        if header {
            inner.write_record(HEADER)?;
        }
        Ok(Self { inner })
    }

    pub fn write(&mut self, row: &SweepRow) -> Result<()> {
        self.inner.write_record(row.fields())?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

pub fn write_rows<W: Write>(sink: W, rows: &[SweepRow]) -> Result<()> {
    let mut writer = RowWriter::new(sink, true)?;
    for row in rows {
        writer.write(row)?;
    }
    writer.flush()
}

/// Reads rows; a truncated last line (from an interrupted writer) is dropped.
pub fn read_rows<R: Read>(source: R) -> Result<Vec<SweepRow>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).flexible(true).from_reader(source);
    let records: Vec<csv::StringRecord> = reader.records().collect::<std::result::Result<_, _>>()?;
    let last = records.len().saturating_sub(1);
    let mut rows = Vec::with_capacity(records.len());
    for (i, record) in records.iter().enumerate() {
        match SweepRow::parse(record) {
            Ok(row) => rows.push(row),
            Err(_) if i == last => break,
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SweepRow {
        SweepRow {
            c: "1/2".parse().unwrap(),
            status: Status::Certified,
            triple: Some(Triple { d: 3, dprime: 3, n: 9 }),
            cycle_code: Some("01".parse().unwrap()),
            period: 2,
            beta: Some((3f64.sqrt() / 2.0).ln()),
            delta: Some(3f64.ln() / 4f64.ln()),
            gap: Some(0.1),
            threshold: Some(1.0 / 3.0),
            epsilon: Some(1.1e-7),
            mrs_bound: 0.8,
            runtime_ms: 0,
        }
    }

    #[test]
    fn round_trip() {
        let untestable = SweepRow {
            c: "192/1024".parse().unwrap(),
            status: Status::Untestable,
            triple: None,
            cycle_code: None,
            period: 0,
            beta: None,
            delta: None,
            gap: None,
            threshold: None,
            epsilon: None,
            mrs_bound: 0.9,
            runtime_ms: 12,
        };
        let rows = vec![sample(), untestable];
        let mut buf = Vec::new();
        write_rows(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("c_num,c_den,status,d,dprime,N,cycle_code"));
        assert!(text.contains("192,1024,untestable,,,,,0,"));
        assert_eq!(read_rows(&buf[..]).unwrap(), rows);
    }

    #[test]
    fn truncated_tail_is_dropped() {
        let mut buf = Vec::new();
        write_rows(&mut buf, &[sample(), sample()]).unwrap();
        buf.truncate(buf.len() - 20);
        assert_eq!(read_rows(&buf[..]).unwrap().len(), 1);
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_real(0.1), "1.0000000000000001e-1");
        assert_eq!(format_real(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
