//! JSON forms of spreads and packings; subspaces are written as their
//! reduced row-echelon bases.

use serde::{Deserialize, Serialize};

use super::{FoldSpread, Packing, SpreadError};
use crate::geometry::ProjectiveSpace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpreadFile {
    pub ambient: (usize, u32),
    pub dim: usize,
    pub fold: u32,
    pub members: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PackingFile {
    pub ambient: (usize, u32),
    pub dim: usize,
    pub fold: u32,
    pub spreads: Vec<Vec<Vec<Vec<u32>>>>,
}

impl SpreadFile {
    pub fn new(s: &FoldSpread) -> Self {
        SpreadFile {
            ambient: s.ambient(),
            dim: s.dim(),
            fold: s.fold(),
            members: s.members().iter().map(|m| m.basis().to_vec()).collect(),
        }
    }

    /// Rebuilds the spread; rows are re-reduced, so any basis is accepted.
    pub fn spread(&self, space: &ProjectiveSpace) -> Result<FoldSpread, SpreadError> {
        let members = self
            .members
            .iter()
            .map(|rows| space.subspace_from_rows(rows))
            .collect::<Result<_, _>>()?;
        Ok(FoldSpread::new(space, self.dim, self.fold, members))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializes");
        s.push('\n');
        s
    }
}

impl PackingFile {
    pub fn new(p: &Packing) -> Self {
        let first = &p.spreads[0];
        PackingFile {
            ambient: first.ambient(),
            dim: first.dim(),
            fold: 1,
            spreads: p
                .spreads
                .iter()
                .map(|s| s.members().iter().map(|m| m.basis().to_vec()).collect())
                .collect(),
        }
    }

    pub fn packing(&self, space: &ProjectiveSpace) -> Result<Packing, SpreadError> {
        let spreads = self
            .spreads
            .iter()
            .map(|members| {
                SpreadFile {
                    ambient: self.ambient,
                    dim: self.dim,
                    fold: self.fold,
                    members: members.clone(),
                }
                .spread(space)
            })
            .collect::<Result<_, _>>()?;
        Ok(Packing { spreads })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spreads::field_reduction_spread;

    #[test]
    fn spread_round_trip() {
        let space = ProjectiveSpace::of_order(3, 2).unwrap();
        let s = field_reduction_spread(3, 2, 1).unwrap();
        let text = SpreadFile::new(&s).to_json();
        assert!(text.starts_with("{\"ambient\":[3,2],\"dim\":1,\"fold\":1,\"members\":[[["));
        let back: SpreadFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.spread(&space).unwrap(), s);
    }
}
