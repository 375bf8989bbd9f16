//! Finite symmetric generating sets.

use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::element::{lat_inv, Group, LatticeElement};
use crate::error::{Error, Result};

/// Generating sets shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Builtin {
    /// `{a^±1, b^±1}` on `H₃(ℤ)`.
    HeisStd,
    /// `{(1;0,0,1)^±1, (1;0,0,−1)^±1, (0;1,0,0)^±1, (0;0,1,0)^±1}`
    ProdS1,
    /// `{(1;0,0,0)^±1, (0;1,0,0)^±1, (0;0,1,0)^±1}`
    ProdS2,
    /// Unit vectors of `ℤ³`.
    Z3Std,
}

impl Builtin {
    pub const ALL: [Builtin; 4] = [Builtin::HeisStd, Builtin::ProdS1, Builtin::ProdS2, Builtin::Z3Std];

    pub fn label(self) -> &'static str {
        match self {
            Builtin::HeisStd => "HEIS_STD",
            Builtin::ProdS1 => "PROD_S1",
            Builtin::ProdS2 => "PROD_S2",
            Builtin::Z3Std => "Z3_STD",
        }
    }

    pub fn group(self) -> Group {
        match self {
            Builtin::HeisStd => Group::Heis,
            Builtin::ProdS1 | Builtin::ProdS2 => Group::ProdHeisZ,
            Builtin::Z3Std => Group::Z3,
        }
    }

    pub fn genset(self) -> GenSet {
        let (group, raw): (Group, &[(i64, i64, i64, i64)]) = match self {
            Builtin::HeisStd => (Group::Heis, &[(0, 1, 0, 0), (0, 0, 1, 0)]),
            Builtin::ProdS1 => (Group::ProdHeisZ, &[(1, 0, 0, 1), (1, 0, 0, -1), (0, 1, 0, 0), (0, 0, 1, 0)]),
            Builtin::ProdS2 => (Group::ProdHeisZ, &[(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]),
            Builtin::Z3Std => (Group::Z3, &[(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]),
        };
        let half: Vec<LatticeElement> =
            raw.iter().map(|&(v, x, y, z)| LatticeElement { group, v, x, y, z }).collect();
        GenSet::with_inverses(self.label(), group, half).expect("builtin generating sets are valid")
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_uppercase().replace('-', "_");
        match norm.as_str() {
            "HEIS_STD" => Ok(Builtin::HeisStd),
            "PROD_S1" | "S1" => Ok(Builtin::ProdS1),
            "PROD_S2" | "S2" => Ok(Builtin::ProdS2),
            "Z3_STD" => Ok(Builtin::Z3Std),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Looks up a builtin set by label.
pub fn builtin_genset(label: &str) -> Result<GenSet> {
    Ok(label.parse::<Builtin>()?.genset())
}

/// A symmetric generating set; the identity is implicit and never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenSet {
    label: String,
    group: Group,
    elements: Vec<LatticeElement>,
}

impl GenSet {
    /// Validates symmetry; drops identities and duplicates.
    pub fn new(label: impl Into<String>, group: Group, elements: Vec<LatticeElement>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::with_capacity(elements.len());
        for e in elements {
            if e.group != group {
                return Err(Error::GroupMismatch { left: group, right: e.group });
            }
            if group != Group::ProdHeisZ && e.v != 0 {
                return Err(Error::InvalidParameter(format!("{e} has a v-coordinate outside ℤ×H₃")));
            }
            if !e.is_identity() && seen.insert(e) {
                kept.push(e);
            }
        }
        if kept.is_empty() {
            return Err(Error::InvalidParameter("generating set is empty".into()));
        }
        for e in &kept {
            if !seen.contains(&lat_inv(e)?) {
                return Err(Error::NotSymmetric(e.to_string()));
            }
        }
        Ok(GenSet { label: label.into(), group, elements: kept })
    }

    /// Closes `elements` under inversion, each generator followed by its inverse.
    pub fn with_inverses(label: impl Into<String>, group: Group, elements: Vec<LatticeElement>) -> Result<Self> {
        let mut all = Vec::with_capacity(2 * elements.len());
        for e in elements {
            all.push(e);
            all.push(lat_inv(&e)?);
        }
        GenSet::new(label, group, all)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn elements(&self) -> &[LatticeElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Builtin this set equals, if any.
    pub fn as_builtin(&self) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| {
            let g = b.genset();
            g.group == self.group
                && g.elements.iter().collect::<BTreeSet<_>>() == self.elements.iter().collect::<BTreeSet<_>>()
        })
    }

    /// True when every generator moves exactly one direct factor of `ℤ × H₃(ℤ)`.
    pub fn is_split(&self) -> bool {
        match self.group {
            Group::ProdHeisZ => self
                .elements
                .iter()
                .all(|e| e.v == 0 || (e.x == 0 && e.y == 0 && e.z == 0)),
            Group::Heis => true,
            Group::Z3 => false,
        }
    }

    /// Largest `|v|`, `|x|`, `|y|` and `|z|` over the generators.
    pub(crate) fn coordinate_bounds(&self) -> [i64; 4] {
        let mut b = [0i64; 4];
        for e in &self.elements {
            b[0] = b[0].max(e.v.abs());
            b[1] = b[1].max(e.x.abs());
            b[2] = b[2].max(e.y.abs());
            b[3] = b[3].max(e.z.abs());
        }
        b
    }

    /// Parses the plain-text format: one generator per line, `v x y z` for
    /// `ℤ × H₃(ℤ)` or `x y z` otherwise; `#` starts a comment.
    pub fn parse(label: impl Into<String>, group: Group, text: &str, close_inverses: bool) -> Result<Self> {
        let width = if group.has_v() { 4 } else { 3 };
        let mut elements = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
            if nums.len() != width {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected {width} integers, found {}", nums.len()),
                });
            }
            let e = if group.has_v() {
                LatticeElement { group, v: nums[0], x: nums[1], y: nums[2], z: nums[3] }
            } else {
                LatticeElement { group, v: 0, x: nums[0], y: nums[1], z: nums[2] }
            };
            elements.push(e);
        }
        if close_inverses {
            GenSet::with_inverses(label, group, elements)
        } else {
            GenSet::new(label, group, elements)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_sizes() {
        assert_eq!(builtin_genset("HEIS_STD").unwrap().len(), 4);
        assert_eq!(builtin_genset("PROD_S1").unwrap().len(), 8);
        assert_eq!(builtin_genset("PROD_S2").unwrap().len(), 6);
        assert_eq!(builtin_genset("Z3_STD").unwrap().len(), 6);
        assert!(matches!(builtin_genset("NOPE"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn s1_lists_the_central_diagonals() {
        let s1 = Builtin::ProdS1.genset();
        for e in [(1, 0, 0, 1), (-1, 0, 0, -1), (1, 0, 0, -1), (-1, 0, 0, 1), (0, 1, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0), (0, 0, -1, 0)] {
            let g = LatticeElement::prod(e.0, e.1, e.2, e.3);
            assert!(s1.elements().contains(&g), "{g}");
        }
        assert!(!s1.is_split());
        assert!(Builtin::ProdS2.genset().is_split());
    }

    #[test]
    fn parse_and_close() {
        let text = "# custom\n1 0 0\n0 1 0\n\n";
        let g = GenSet::parse("custom", Group::Heis, text, true).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.as_builtin(), Some(Builtin::HeisStd));
        assert!(matches!(GenSet::parse("c", Group::Heis, text, false), Err(Error::NotSymmetric(_))));
        assert!(matches!(GenSet::parse("c", Group::Heis, "1 0\n", false), Err(Error::Parse { line: 1, .. })));
        let prod = GenSet::parse("p", Group::ProdHeisZ, "1 0 0 1\n0 1 0 0\n0 0 1 0\n1 0 0 -1", true).unwrap();
        assert_eq!(prod.as_builtin(), Some(Builtin::ProdS1));
    }

    #[test]
    fn inverse_in_matrix_coordinates() {
        // (1,1,0)^{-1} = (-1,-1,1)
        let g = GenSet::parse("c", Group::Heis, "1 1 0\n-1 -1 1\n", false).unwrap();
        assert_eq!(g.len(), 2);
        assert!(GenSet::parse("c", Group::Heis, "1 1 0\n-1 -1 0\n", false).is_err());
    }
}
