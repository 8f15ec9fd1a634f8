//! The bounds table: one CSV row per `(n, s)` with `n >= 2s`.

use crossunion_core::bounds::{union_family_bound, maximal_pairs, union_sum_bound, BoundsError};
use serde::Serialize;
use thiserror::Error;

pub const MAX_TABLE_N: u32 = 40;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("n_max {0} exceeds {MAX_TABLE_N}")]
    TooLarge(u32),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: u32,
    pub s: u32,
    /// `"i,s-i"` entries joined by `;`.
    pub maximal_pairs: String,
    pub value: String,
    pub union_family_bound: String,
    pub union_sum_bound: String,
}

pub fn format_pairs(pairs: &[(u32, u32)]) -> String {
    pairs.iter().map(|(i, j)| format!("{i},{j}")).collect::<Vec<_>>().join(";")
}

pub fn rows(n_max: u32) -> Result<Vec<TableRow>, TableError> {
    if n_max > MAX_TABLE_N {
        return Err(TableError::TooLarge(n_max));
    }
    let mut out = Vec::new();
    for n in 2..=n_max {
        for s in 1..=n / 2 {
            let m = maximal_pairs(n, s)?;
            out.push(TableRow {
                n,
                s,
                maximal_pairs: format_pairs(&m.pairs),
                value: m.value.to_string(),
                union_family_bound: union_family_bound(n, s)?.to_string(),
                union_sum_bound: union_sum_bound(n, s)?.to_string(),
            });
        }
    }
    Ok(out)
}

pub fn write_csv<W: std::io::Write>(rows: &[TableRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(rows: &[TableRow], n: u32, s: u32) -> &TableRow {
        rows.iter().find(|r| r.n == n && r.s == s).unwrap()
    }

    #[test]
    fn documented_rows() {
        let rows = rows(10).unwrap();
        assert_eq!((row(&rows, 4, 2).maximal_pairs.as_str(), row(&rows, 4, 2).value.as_str()), ("1,1", "8"));
        assert_eq!(row(&rows, 6, 3).maximal_pairs, "0,3;1,2");
        assert_eq!(row(&rows, 6, 3).value, "21");
        assert_eq!((row(&rows, 10, 2).maximal_pairs.as_str(), row(&rows, 10, 2).value.as_str()), ("0,2", "46"));
        assert!(super::rows(41).is_err());
    }

    #[test]
    fn csv_has_a_header() {
        let mut buf = Vec::new();
        write_csv(&rows(4).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,s,maximal_pairs,value,union_family_bound,union_sum_bound\n"));
        assert!(text.contains("4,2,\"1,1\",8,5,12"));
    }
}
