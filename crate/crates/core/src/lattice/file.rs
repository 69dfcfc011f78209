//! JSON lattice files: `{"rank": n, "gram": [[...], ...]}`.

use serde::{Deserialize, Serialize};

use super::IntegralLattice;
use crate::error::{Error, Result};
use crate::exact::IntMatrix;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    rank: usize,
    gram: Vec<Vec<i64>>,
}

pub fn parse_lattice(text: &str) -> Result<IntegralLattice> {
    let file: LatticeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.gram.len() != file.rank || file.gram.iter().any(|r| r.len() != file.rank) {
        return Err(Error::Parse(format!("gram is not a {0}x{0} array", file.rank)));
    }
    let rows: Vec<&[i64]> = file.gram.iter().map(Vec::as_slice).collect();
    IntegralLattice::new(IntMatrix::from_i64_rows(&rows)?)
}

pub fn to_json(lattice: &IntegralLattice) -> Result<String> {
    let gram = lattice.gram().to_i64()?.to_rows();
    let file = LatticeFile { rank: lattice.rank(), gram };
    serde_json::to_string(&file).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let l = parse_lattice(r#"{"rank": 2, "gram": [[2, 1], [1, 2]]}"#).unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(parse_lattice(&to_json(&l).unwrap()).unwrap(), l);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_lattice(r#"{"rank": 2, "gram": [[2, 1], [0, 2]]}"#), Err(Error::NotSymmetric)));
        assert!(matches!(parse_lattice(r#"{"rank": 3, "gram": [[2, 1], [1, 2]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_lattice(r#"{"rank": 1, "gram": [[2]], "x": 1}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_lattice("not json"), Err(Error::Parse(_))));
    }
}
