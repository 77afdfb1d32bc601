use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{check_dim, Error, Result};
use crate::maxplus::MaxPlusScalar;
use crate::semimodule::GridFunction;

/// `+∞` entries are written as this value so the files stay finite.
pub const DEFAULT_INF_CAP: f64 = 1e300;

fn token(v: MaxPlusScalar, cap: f64) -> String {
    match v {
        MaxPlusScalar::NegInf => "-inf".to_owned(),
        MaxPlusScalar::PosInf => format!("{cap:?}"),
        MaxPlusScalar::Finite(x) => format!("{x:?}"),
    }
}

/// Writes `x,v_approx[,v_exact,abs_err]`, one row per grid node. Values are
/// printed with shortest round-trip formatting.
pub fn write_csv<W: Write>(
    mut out: W,
    approx: &GridFunction,
    exact: Option<&GridFunction>,
    inf_cap: f64,
) -> Result<()> {
    if let Some(e) = exact {
        check_dim("write_csv", approx.len(), e.len())?;
        writeln!(out, "x,v_approx,v_exact,abs_err")?;
    } else {
        writeln!(out, "x,v_approx")?;
    }
    for (k, (x, v)) in approx.iter().enumerate() {
        write!(out, "{x:?},{}", token(v, inf_cap))?;
        if let Some(e) = exact {
            let ve = e.values()[k];
            let err = match (v.finite(), ve.finite()) {
                (Some(a), Some(b)) => MaxPlusScalar::new((a - b).abs()),
                _ if v == ve => MaxPlusScalar::UNIT,
                _ => MaxPlusScalar::POS_INF,
            };
            write!(out, ",{},{}", token(ve, inf_cap), token(err, inf_cap))?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

pub fn export_csv(
    path: impl AsRef<Path>,
    approx: &GridFunction,
    exact: Option<&GridFunction>,
    inf_cap: f64,
) -> Result<()> {
    write_csv(BufWriter::new(File::create(path)?), approx, exact, inf_cap)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

/// Reads back a file written by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<CsvTable> {
    let mut lines = BufReader::new(input).lines();
    let header: Vec<String> = match lines.next() {
        Some(line) => line?.split(',').map(str::to_owned).collect(),
        None => return Err(Error::Parse("empty csv".into())),
    };
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("line {}: bad number `{t}`", i + 2)))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != header.len() {
            return Err(Error::Parse(format!(
                "line {}: {} fields, header has {}",
                i + 2,
                row.len(),
                header.len()
            )));
        }
        rows.push(row);
    }
    Ok(CsvTable { header, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxplus::MaxPlusVector;
    use crate::semimodule::{GridSpec, Interval};

    fn grid() -> GridSpec {
        GridSpec::new(Interval::symmetric(1.0).unwrap(), 5).unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        let g = grid();
        let approx = GridFunction::sample_f64(g, |x| (x * 0.1).sin() / 3.0);
        let exact = GridFunction::sample_f64(g, |x| (x * 0.1).sin() / 3.0 + 1e-17);
        let mut buf = Vec::new();
        write_csv(&mut buf, &approx, Some(&exact), DEFAULT_INF_CAP).unwrap();
        let table = read_csv(buf.as_slice()).unwrap();
        assert_eq!(table.header, ["x", "v_approx", "v_exact", "abs_err"]);
        let back = table.column("v_approx").unwrap();
        for ((_, v), b) in approx.iter().zip(back) {
            assert_eq!(v.to_f64().to_bits(), b.to_bits());
        }
        assert_eq!(table.column("x").unwrap(), g.nodes());
    }

    #[test]
    fn infinities() {
        let g = grid();
        let vals = MaxPlusVector::new(vec![
            MaxPlusScalar::NEG_INF,
            MaxPlusScalar::POS_INF,
            MaxPlusScalar::new(0.5),
            MaxPlusScalar::NEG_INF,
            MaxPlusScalar::UNIT,
        ]);
        let approx = GridFunction::new(g, vals).unwrap();
        let exact = GridFunction::constant(g, MaxPlusScalar::NEG_INF);
        let mut buf = Vec::new();
        write_csv(&mut buf, &approx, Some(&exact), 1e9).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "-1.0,-inf,-inf,0.0");
        assert_eq!(lines[2], "-0.5,1000000000.0,-inf,1000000000.0");
        assert_eq!(lines[3], "0.0,0.5,-inf,1000000000.0");
        let table = read_csv(text.as_bytes()).unwrap();
        assert_eq!(table.rows[0][1], f64::NEG_INFINITY);
    }

    #[test]
    fn header_without_exact() {
        let mut buf = Vec::new();
        write_csv(
            &mut buf,
            &GridFunction::constant(grid(), MaxPlusScalar::UNIT),
            None,
            1.0,
        )
        .unwrap();
        assert!(buf.starts_with(b"x,v_approx\n-1.0,0.0\n"));
    }

    #[test]
    fn malformed_rows_are_rejected() {
        assert!(read_csv("".as_bytes()).is_err());
        assert!(read_csv("x,v\n1,abc\n".as_bytes()).is_err());
        assert!(read_csv("x,v\n1\n".as_bytes()).is_err());
    }
}
