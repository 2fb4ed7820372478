//! Divergence curves as `alpha,value,status` CSV.

use crate::error::{CliError, Result};
use petz::petz::DivergenceCurve;
use petz::{AlphaOrder, ExtendedReal, InfinityReason};
use std::io::{Read, Write};

pub const HEADER: [&str; 3] = ["alpha", "value", "status"];

/// Rounds to 12 significant digits, the precision written to CSV.
pub fn round12(x: f64) -> f64 {
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn order_key(a: &AlphaOrder) -> f64 {
    match a {
        AlphaOrder::Zero => 0.0,
        AlphaOrder::Interior(v) => *v,
        AlphaOrder::One => 1.0,
        AlphaOrder::Infinity => f64::INFINITY,
    }
}

/// A curve whose finite values are already rounded to 12 significant
/// digits, so that emitting and parsing it is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveCsv {
    rows: Vec<(AlphaOrder, ExtendedReal)>,
}

impl CurveCsv {
    pub fn new(rows: impl IntoIterator<Item = (AlphaOrder, ExtendedReal)>) -> Self {
        let mut rows: Vec<_> = rows
            .into_iter()
            .map(|(a, v)| match v {
                ExtendedReal::Finite(x) => (a, ExtendedReal::Finite(round12(x))),
                other => (a, other),
            })
            .collect();
        rows.sort_by(|x, y| order_key(&x.0).total_cmp(&order_key(&y.0)));
        CurveCsv { rows }
    }

    pub fn from_curve(curve: &DivergenceCurve) -> Self {
        Self::new(curve.grid.iter().copied().zip(curve.values.iter().copied()))
    }

    pub fn rows(&self) -> &[(AlphaOrder, ExtendedReal)] {
        &self.rows
    }

    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| CliError::Csv(e.to_string());
        w.write_record(HEADER).map_err(csv_err)?;
        for (a, v) in &self.rows {
            let (value, status) = match v {
                ExtendedReal::Finite(x) => (format!("{x:.11e}"), "finite".to_string()),
                ExtendedReal::PlusInfinity(r) => ("inf".to_string(), format!("+inf:{}", r.tag())),
                ExtendedReal::MinusInfinity => ("-inf".to_string(), "-inf".to_string()),
            };
            w.write_record([a.to_string(), value, status]).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    pub fn parse<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers().map_err(|e| CliError::Csv(e.to_string()))?;
        if headers.iter().ne(HEADER) {
            return Err(CliError::Csv(format!("expected header {}", HEADER.join(","))));
        }
        let mut rows = Vec::new();
        for (line, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| CliError::Csv(e.to_string()))?;
            let bad = |what: &str| CliError::Csv(format!("row {}: {what}", line + 1));
            if rec.len() != 3 {
                return Err(bad("expected 3 fields"));
            }
            let alpha: AlphaOrder = rec[0].parse().map_err(|_| bad("bad alpha"))?;
            let value = match &rec[2] {
                "finite" => ExtendedReal::Finite(rec[1].parse().map_err(|_| bad("bad value"))?),
                "-inf" => ExtendedReal::MinusInfinity,
                s => {
                    let tag = s.strip_prefix("+inf:").ok_or_else(|| bad("bad status"))?;
                    ExtendedReal::PlusInfinity(InfinityReason::from_tag(tag).ok_or_else(|| bad("bad status"))?)
                }
            };
            rows.push((alpha, value));
        }
        if rows.windows(2).any(|w| order_key(&w[0].0) > order_key(&w[1].0)) {
            return Err(CliError::Csv("rows are not sorted by alpha".into()));
        }
        Ok(CurveCsv { rows })
    }
}

/// Inclusive linear grid `a:b:steps`. Points within 1e-9 of 1 become order One.
pub fn parse_grid(spec: &str) -> Result<Vec<AlphaOrder>> {
    let bad = |reason: &str| CliError::Grid {
        grid: spec.to_string(),
        reason: reason.to_string(),
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, steps] = parts[..] else {
        return Err(bad("expected a:b:steps"));
    };
    let a: f64 = a.trim().parse().map_err(|_| bad("start is not a number"))?;
    let b: f64 = b.trim().parse().map_err(|_| bad("end is not a number"))?;
    let steps: usize = steps
        .trim()
        .parse()
        .map_err(|_| bad("steps is not a positive integer"))?;
    if !a.is_finite() || !b.is_finite() {
        return Err(bad("bounds must be finite"));
    }
    if a < 0.0 {
        return Err(bad("start must be nonnegative"));
    }
    if a >= b {
        return Err(bad("start must be less than end"));
    }
    if steps < 2 {
        return Err(bad("steps must be at least 2"));
    }
    (0..steps)
        .map(|k| {
            let x = if k + 1 == steps {
                b
            } else {
                a + (b - a) * k as f64 / (steps - 1) as f64
            };
            let x = if (x - 1.0).abs() < 1e-9 { 1.0 } else { x };
            AlphaOrder::from_value(x).map_err(|e| bad(&e.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let c = CurveCsv::new([
            (
                AlphaOrder::Infinity,
                ExtendedReal::PlusInfinity(InfinityReason::SupportViolation),
            ),
            (AlphaOrder::Zero, ExtendedReal::Finite(-0.0)),
            (AlphaOrder::Interior(0.3), ExtendedReal::Finite(0.123_456_789_987_654_3)),
            (AlphaOrder::One, ExtendedReal::Finite(1e-300)),
            (
                AlphaOrder::Interior(2.5),
                ExtendedReal::PlusInfinity(InfinityReason::DivergentSum),
            ),
        ]);
        let text = c.to_csv_string();
        assert!(text.starts_with("alpha,value,status\n0,0.00000000000e0,finite\n"));
        assert!(text.contains("inf,inf,+inf:support"));
        let back = CurveCsv::parse(text.as_bytes()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_csv_string(), text);
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(round12(1.234_567_890_123_456_7), 1.234_567_890_12);
        assert_eq!(round12(-9.876_543_210_987_6e-20), -9.876_543_210_99e-20);
        assert_eq!(round12(-0.0).to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn rejects_unsorted_and_bad_rows() {
        assert!(CurveCsv::parse("alpha,value,status\n2,1,finite\n1,0,finite\n".as_bytes()).is_err());
        assert!(CurveCsv::parse("alpha,value,status\n2,1,weird\n".as_bytes()).is_err());
        assert!(CurveCsv::parse("a,b,c\n".as_bytes()).is_err());
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0:2:9").unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], AlphaOrder::Zero);
        assert_eq!(g[4], AlphaOrder::One);
        assert_eq!(g[8], AlphaOrder::Interior(2.0));
        for bad in ["2:0:5", "0:2:1", "-1:2:5", "0:2", "x:2:3", "0:inf:3"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }
}
