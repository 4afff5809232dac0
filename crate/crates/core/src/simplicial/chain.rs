//! Graded free modules with differentials, and their (co)homology.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::group::{AbelianGroup, GradedGroups, Ring};
use super::matrix::IntMatrix;
use super::smith::{rank_mod_p, smith_normal_form};

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("differential in degree {degree} has shape {actual:?}, expected {expected:?}")]
    DimensionMismatch {
        degree: i32,
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("composition of differentials out of degree {degree} is not zero")]
    NotAComplex { degree: i32 },
}

/// An ascending complex `... -> C^i -> C^{i+1} -> ...` of free modules.
/// The differential stored at degree `i` maps `C^i` to `C^{i+1}` and has
/// `rank(i+1)` rows and `rank(i)` columns.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChainComplex {
    ranks: BTreeMap<i32, usize>,
    differentials: BTreeMap<i32, IntMatrix>,
}

/// Rank and cokernel torsion of one differential over a given ring.
#[derive(Clone, Debug)]
struct MapData {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl ChainComplex {
    pub fn new(
        ranks: BTreeMap<i32, usize>,
        differentials: BTreeMap<i32, IntMatrix>,
    ) -> Result<Self, ChainError> {
        let ranks: BTreeMap<i32, usize> = ranks.into_iter().filter(|(_, r)| *r > 0).collect();
        for (&i, d) in &differentials {
            let expected = (
                ranks.get(&(i + 1)).copied().unwrap_or(0),
                ranks.get(&i).copied().unwrap_or(0),
            );
            let actual = (d.nrows(), d.ncols());
            if expected != actual {
                return Err(ChainError::DimensionMismatch {
                    degree: i,
                    expected,
                    actual,
                });
            }
        }
        let differentials = differentials
            .into_iter()
            .filter(|(_, d)| !d.is_zero())
            .collect();
        Ok(ChainComplex {
            ranks,
            differentials,
        })
    }

    pub fn rank(&self, degree: i32) -> usize {
        self.ranks.get(&degree).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<i32, usize> {
        &self.ranks
    }

    /// The differential out of `degree`, as a full matrix (zero if absent).
    pub fn differential(&self, degree: i32) -> IntMatrix {
        self.differentials
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank(degree + 1), self.rank(degree)))
    }

    /// Checks `d_{i+1} ∘ d_i = 0` in every degree.
    pub fn verify(&self) -> Result<(), ChainError> {
        for (&i, d) in &self.differentials {
            if let Some(next) = self.differentials.get(&(i + 1)) {
                let ok = next.checked_mul(d).is_some_and(|p| p.is_zero());
                if !ok {
                    return Err(ChainError::NotAComplex { degree: i });
                }
            }
        }
        Ok(())
    }

    fn map_data(&self, ring: Ring) -> BTreeMap<i32, MapData> {
        let entries: Vec<(&i32, &IntMatrix)> = self.differentials.iter().collect();
        entries
            .into_par_iter()
            .map(|(&i, d)| {
                let data = match ring {
                    Ring::Integers => {
                        let sf = smith_normal_form(d);
                        MapData {
                            rank: sf.rank,
                            torsion: sf.torsion(),
                        }
                    }
                    Ring::Rationals => MapData {
                        rank: smith_normal_form(d).rank,
                        torsion: Vec::new(),
                    },
                    Ring::Prime(p) => MapData {
                        rank: rank_mod_p(d, p),
                        torsion: Vec::new(),
                    },
                };
                (i, data)
            })
            .collect()
    }

    /// Ranks of the differentials over `ring`.
    pub fn differential_ranks(&self, ring: Ring) -> BTreeMap<i32, usize> {
        self.map_data(ring)
            .into_iter()
            .map(|(i, m)| (i, m.rank))
            .collect()
    }

    /// `H^i = ker d_i / im d_{i-1}`. Zero groups are omitted.
    pub fn cohomology(&self, ring: Ring) -> Result<GradedGroups, ChainError> {
        self.verify()?;
        let data = self.map_data(ring);
        let rank_of = |i: i32| data.get(&i).map_or(0, |m| m.rank);
        let mut out = BTreeMap::new();
        let degrees: std::collections::BTreeSet<i32> = self
            .ranks
            .keys()
            .copied()
            .chain(data.keys().map(|i| i + 1))
            .collect();
        for i in degrees {
            let free = self.rank(i) - rank_of(i) - rank_of(i - 1);
            let torsion = data
                .get(&(i - 1))
                .map(|m| m.torsion.clone())
                .unwrap_or_default();
            let g = AbelianGroup::from_cyclic(free, torsion);
            if !g.is_zero() {
                out.insert(i, g);
            }
        }
        Ok(out)
    }

    /// Homology of the descending complex whose boundary out of degree `i`
    /// is the transpose of the differential into degree `i`:
    /// `H_i = ker d_{i-1}^T / im d_i^T`.
    pub fn transposed_homology(&self, ring: Ring) -> Result<GradedGroups, ChainError> {
        self.verify()?;
        let data = self.map_data(ring);
        let rank_of = |i: i32| data.get(&i).map_or(0, |m| m.rank);
        let mut out = BTreeMap::new();
        for &i in self.ranks.keys() {
            let free = self.rank(i) - rank_of(i) - rank_of(i - 1);
            let torsion = data.get(&i).map(|m| m.torsion.clone()).unwrap_or_default();
            let g = AbelianGroup::from_cyclic(free, torsion);
            if !g.is_zero() {
                out.insert(i, g);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp2_cells() -> ChainComplex {
        // Cellular cochains of RP^2: Z -0-> Z -2-> Z
        ChainComplex::new(
            [(0, 1), (1, 1), (2, 1)].into(),
            [
                (0, IntMatrix::from_dense(&[vec![0]])),
                (1, IntMatrix::from_dense(&[vec![2]])),
            ]
            .into(),
        )
        .unwrap()
    }

    #[test]
    fn coefficient_change_matches_direct_computation() {
        let c = rp2_cells();
        let integral = c.cohomology(Ring::Integers).unwrap();
        for ring in [Ring::Rationals, Ring::Prime(2), Ring::Prime(3)] {
            assert_eq!(
                super::super::change_coefficients(&integral, ring),
                c.cohomology(ring).unwrap(),
                "{ring}"
            );
        }
    }

    #[test]
    fn projective_plane_cohomology() {
        let c = rp2_cells();
        let h = c.cohomology(Ring::Integers).unwrap();
        assert_eq!(h.get(&0), Some(&AbelianGroup::free(1)));
        assert_eq!(h.get(&1), None);
        assert_eq!(
            h.get(&2),
            Some(&AbelianGroup::from_cyclic(0, [BigInt::from(2)]))
        );
        let h2 = c.cohomology(Ring::Prime(2)).unwrap();
        assert_eq!(
            h2.values().map(|g| g.rank).collect::<Vec<_>>(),
            vec![1, 1, 1]
        );
        assert_eq!(c.cohomology(Ring::Rationals).unwrap().len(), 1);
    }

    #[test]
    fn projective_plane_homology_by_transpose() {
        let h = rp2_cells().transposed_homology(Ring::Integers).unwrap();
        assert_eq!(h.get(&0), Some(&AbelianGroup::free(1)));
        assert_eq!(
            h.get(&1),
            Some(&AbelianGroup::from_cyclic(0, [BigInt::from(2)]))
        );
        assert_eq!(h.get(&2), None);
    }

    #[test]
    fn composition_is_checked() {
        let c = ChainComplex::new(
            [(0, 1), (1, 1), (2, 1)].into(),
            [
                (0, IntMatrix::from_dense(&[vec![1]])),
                (1, IntMatrix::from_dense(&[vec![1]])),
            ]
            .into(),
        )
        .unwrap();
        assert_eq!(
            c.cohomology(Ring::Integers),
            Err(ChainError::NotAComplex { degree: 0 })
        );
    }

    #[test]
    fn shape_is_checked() {
        let err = ChainComplex::new(
            [(0, 2), (1, 1)].into(),
            [(0, IntMatrix::zeros(2, 1))].into(),
        );
        assert!(matches!(
            err,
            Err(ChainError::DimensionMismatch { degree: 0, .. })
        ));
    }

    #[test]
    fn zero_complex_is_acyclic() {
        let c = ChainComplex::default();
        assert!(c.cohomology(Ring::Integers).unwrap().is_empty());
    }
}
