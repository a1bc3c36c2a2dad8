//! Finite examples: groups given by multiplication tables, the twisted
//! Drinfeld double `D_G(G)`, and the families built from `A_n`.

mod an;
mod dg;

pub use an::{
    an_closed_form_report, an_closed_form_rmatrix, an_plus_sign_rmatrix, build_an_coalgebra, build_an_pair,
    default_gl_colors, AnCoalgebra, AnPair, GlColor, GlGroup,
};
pub use dg::{
    build_dg, build_dg_generic, check_twist_powers, conjugation_action, dg_twist, functions_hopf, group_algebra,
};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::pi::GroupOracle;

/// A finite group stored as a multiplication table on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroupTable {
    /// Checks closure, associativity, identity and inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid(format!("group table must be {n}x{n} with entries below {n}")));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate element name '{a}'")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!(
                            "group table is not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::Invalid(format!("'{}' has no inverse", names[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroupTable { names, table, inverse, identity })
    }

    /// `Z/n` with elements `1, g, g^2, ...`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                k => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroupTable::new(names, table).expect("cyclic group table is valid")
    }

    /// `S_3` as permutations of `{1,2,3}`, composed right to left.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let names = ["1", "(12)", "(13)", "(23)", "(123)", "(132)"].map(String::from).to_vec();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        FiniteGroupTable::new(names, table).expect("S3 table is valid")
    }

    /// `z2`, `z4`, `zN` or `s3`.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "s3" => Ok(FiniteGroupTable::symmetric3()),
            _ => match name.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if n >= 1 => Ok(FiniteGroupTable::cyclic(n)),
                _ => Err(Error::Invalid(format!("unknown group '{name}'"))),
            },
        }
    }

    /// Reads `{"names": [...], "table": [[...]]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let names: Vec<String> = serde_json::from_value(v.get("names").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Json(format!("group names: {e}")))?;
        let table: Vec<Vec<usize>> = serde_json::from_value(v.get("table").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Json(format!("group table: {e}")))?;
        FiniteGroupTable::new(names, table)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn pow(&self, a: usize, n: i64) -> usize {
        let base = if n < 0 { self.inverse[a] } else { a };
        (0..n.unsigned_abs()).fold(self.identity, |acc, _| self.table[acc][base])
    }
}

impl GroupOracle for FiniteGroupTable {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverse[*a]
    }

    fn key(&self, a: &usize) -> String {
        self.names[*a].clone()
    }

    fn parse_key(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        self.names
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| Error::Invalid(format!("'{s}' is not an element of the group")))
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.order()).collect())
    }

    fn descriptor(&self) -> Value {
        json!({ "kind": "finite-table", "names": self.names, "table": self.table })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_with_expected_products() {
        let g = FiniteGroupTable::symmetric3();
        let k = |s: &str| g.parse_key(s).unwrap();
        // (12)(23): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(g.mul(&k("(12)"), &k("(23)")), k("(123)"));
        assert_eq!(g.mul(&k("(23)"), &k("(12)")), k("(132)"));
        assert_eq!(g.inv(&k("(123)")), k("(132)"));
    }

    #[test]
    fn bad_tables_rejected() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(FiniteGroupTable::new(names.clone(), vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteGroupTable::new(names, vec![vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroupTable::cyclic(4);
        assert_eq!(FiniteGroupTable::from_json(&g.descriptor()).unwrap(), g);
        assert_eq!(g.pow(1, -3), 1);
    }
}
