//! Khovanov cohomology from enhanced states, following Viro's description:
//! generators are states with a sign on every circle, graded by
//! `i = (w − σ)/2` and `j = w + i + τ`.
//!
//! Circles of different states are identified by the arcs they run along.

mod bracket;
mod polynomial;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use bracket::{jones, kauffman_bracket, state_census, unnormalized_jones};
pub use polynomial::Laurent;

use crate::diagram::{Diagram, Smoothing, State};
use crate::simplicial::{AbelianGroup, ChainComplex, ChainError, IntMatrix, Ring};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KhovanovError {
    #[error("diagram has {crossings} crossings, above the cap of {limit}")]
    CapExceeded { crossings: usize, limit: usize },
    #[error("enhanced states belong to different diagrams")]
    DifferentDiagram,
    #[error(transparent)]
    Chain(#[from] ChainError),
}

pub(crate) fn check_cap(d: &Diagram, limits: &Limits) -> Result<usize, KhovanovError> {
    let c = d.crossing_count();
    let limit = limits.max_crossings.min(40);
    if c > limit {
        return Err(KhovanovError::CapExceeded {
            crossings: c,
            limit,
        });
    }
    Ok(c)
}

/// A state with a sign on each of its circles, in the circle order of
/// [`Diagram::arc_circles`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnhancedState {
    pub state: State,
    pub signs: Vec<i8>,
}

impl EnhancedState {
    /// `τ = Σ ε`.
    pub fn tau(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// `i(s) = (w − σ)/2`.
    pub fn i(&self, d: &Diagram) -> i64 {
        (d.writhe() - self.state.sigma()) / 2
    }

    /// `j(s) = w + i + τ`.
    pub fn j(&self, d: &Diagram) -> i64 {
        d.writhe() + self.i(d) + self.tau()
    }
}

/// Every enhanced state of `d`, grouped by `(i, j)`.
pub fn enumerate_enhanced(
    d: &Diagram,
    limits: &Limits,
) -> Result<BTreeMap<(i64, i64), Vec<EnhancedState>>, KhovanovError> {
    let c = check_cap(d, limits)?;
    let mut out: BTreeMap<(i64, i64), Vec<EnhancedState>> = BTreeMap::new();
    for mask in 0..1u64 << c {
        let state = State::from_mask(c, mask);
        let circles = d.arc_circles(&state).1;
        for plus in 0..1u64 << circles {
            let signs = (0..circles)
                .map(|k| if plus >> k & 1 == 1 { 1 } else { -1 })
                .collect();
            let e = EnhancedState {
                state: state.clone(),
                signs,
            };
            out.entry((e.i(d), e.j(d))).or_default().push(e);
        }
    }
    Ok(out)
}

/// The incidence number `(s : t)`.
pub fn adjacent(d: &Diagram, s: &EnhancedState, t: &EnhancedState) -> Result<i8, KhovanovError> {
    let c = d.crossing_count();
    if s.state.len() != c || t.state.len() != c {
        return Err(KhovanovError::DifferentDiagram);
    }
    let (ids_s, ns) = d.arc_circles(&s.state);
    let (ids_t, nt) = d.arc_circles(&t.state);
    if s.signs.len() != ns || t.signs.len() != nt {
        return Err(KhovanovError::DifferentDiagram);
    }
    let changed: Vec<usize> = (0..c)
        .filter(|&x| s.state.label(x) != t.state.label(x))
        .collect();
    let [x] = changed[..] else { return Ok(0) };
    if s.state.label(x) != Smoothing::A || t.j(d) != s.j(d) {
        return Ok(0);
    }
    let touched: Vec<usize> = d.crossing(x).to_vec();
    // Circles away from `x` are common to both states and must keep their sign.
    for arc in 0..ids_s.len() {
        if touched.iter().any(|&a| ids_s[a] == ids_s[arc]) {
            continue;
        }
        if s.signs[ids_s[arc]] != t.signs[ids_t[arc]] {
            return Ok(0);
        }
    }
    let after = (x + 1..c)
        .filter(|&y| s.state.label(y) == Smoothing::B)
        .count();
    Ok(if after % 2 == 0 { 1 } else { -1 })
}

/// Per-state circle data shared by every row.
struct StateTable {
    c: usize,
    ids: Vec<Vec<usize>>,
    counts: Vec<usize>,
    /// Smallest arc on each circle.
    reps: Vec<Vec<usize>>,
}

impl StateTable {
    fn new(d: &Diagram) -> StateTable {
        let c = d.crossing_count();
        let (ids, counts): (Vec<_>, Vec<_>) = (0..1u64 << c)
            .into_par_iter()
            .map(|mask| d.arc_circles(&State::from_mask(c, mask)))
            .unzip();
        let reps = ids
            .iter()
            .zip(&counts)
            .map(|(ids, &n)| {
                let mut rep = vec![usize::MAX; n];
                for (a, &k) in ids.iter().enumerate().rev() {
                    rep[k] = a;
                }
                rep
            })
            .collect();
        StateTable {
            c,
            ids,
            counts,
            reps,
        }
    }
}

/// Generators `(state mask, plus-circle mask)` of one bidegree.
fn generators(table: &StateTable, w: i64, n: usize, i: i64, j: i64) -> Vec<(u64, u64)> {
    let b = i + n as i64;
    if b < 0 || b > table.c as i64 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 0..1u64 << table.c {
        if mask.count_ones() as i64 != b {
            continue;
        }
        let circles = table.counts[mask as usize] as i64;
        let twice_plus = j - w - i + circles;
        if twice_plus < 0 || twice_plus % 2 != 0 || twice_plus / 2 > circles {
            continue;
        }
        for plus in subsets_of_size(circles as usize, (twice_plus / 2) as usize) {
            out.push((mask, plus));
        }
    }
    out
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let n2 = ripple | (((cur ^ ripple) >> 2) / low);
            (n2 < limit).then_some(n2)
        };
        Some(cur)
    })
}

/// Differential from the degree whose basis is `from` into `to`.
fn differential(
    d: &Diagram,
    table: &StateTable,
    from: &[(u64, u64)],
    to: &[(u64, u64)],
) -> IntMatrix {
    let index: HashMap<(u64, u64), usize> = to.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    let mut triplets = Vec::new();
    for (col, &(mask, plus)) in from.iter().enumerate() {
        let (ids_s, reps_s) = (&table.ids[mask as usize], &table.reps[mask as usize]);
        for x in (0..table.c).filter(|&x| mask >> x & 1 == 0) {
            let t = mask | 1 << x;
            let ids_t = &table.ids[t as usize];
            let ports = d.crossing(x);
            let mut old: u64 = 0;
            for &a in &ports {
                old |= 1 << ids_s[a];
            }
            let mut new: u64 = 0;
            for &a in &ports {
                new |= 1 << ids_t[a];
            }
            let mut kept_plus = 0u64;
            for (k, &rep) in reps_s.iter().enumerate() {
                if old >> k & 1 == 0 && plus >> k & 1 == 1 {
                    kept_plus |= 1 << ids_t[rep];
                }
            }
            let tau_old: i64 = (0..64)
                .filter(|&k| old >> k & 1 == 1)
                .map(|k| if plus >> k & 1 == 1 { 1 } else { -1 })
                .sum();
            let new_circles: Vec<usize> = (0..64).filter(|&k| new >> k & 1 == 1).collect();
            let sign = if (mask >> (x + 1)).count_ones() % 2 == 0 {
                1
            } else {
                -1
            };
            for choice in 0..1u64 << new_circles.len() {
                let tau_new: i64 = (0..new_circles.len())
                    .map(|k| if choice >> k & 1 == 1 { 1 } else { -1 })
                    .sum();
                if tau_new != tau_old - 1 {
                    continue;
                }
                let mut p = kept_plus;
                for (k, &circle) in new_circles.iter().enumerate() {
                    if choice >> k & 1 == 1 {
                        p |= 1 << circle;
                    }
                }
                if let Some(&row) = index.get(&(t, p)) {
                    triplets.push((row, col, sign));
                }
            }
        }
    }
    IntMatrix::from_triplets(to.len(), from.len(), triplets)
}

/// The cochain complex of the row `j`, in degrees `i ∈ [−n, c − n]`.
pub fn khovanov_complex(
    d: &Diagram,
    j: i64,
    limits: &Limits,
) -> Result<ChainComplex, KhovanovError> {
    check_cap(d, limits)?;
    let table = StateTable::new(d);
    row_complex(d, &table, j)
}

fn row_complex(d: &Diagram, table: &StateTable, j: i64) -> Result<ChainComplex, KhovanovError> {
    let (w, n, c) = (d.writhe(), d.negative(), d.crossing_count() as i64);
    let degrees: Vec<i64> = (-(n as i64)..=c - n as i64).collect();
    let bases: Vec<Vec<(u64, u64)>> = degrees
        .iter()
        .map(|&i| generators(table, w, n, i, j))
        .collect();
    let mut ranks = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for (k, &i) in degrees.iter().enumerate() {
        ranks.insert(i as i32, bases[k].len());
        if k + 1 < degrees.len() && !bases[k].is_empty() && !bases[k + 1].is_empty() {
            differentials.insert(i as i32, differential(d, table, &bases[k], &bases[k + 1]));
        }
    }
    let complex = ChainComplex::new(ranks, differentials)?;
    complex.verify()?;
    Ok(complex)
}

/// `(j_min, j_max) = (c − 3n − |s_A|, −c + 3p + |s_B|)`.
pub fn j_bounds(d: &Diagram) -> (i64, i64) {
    let c = d.crossing_count() as i64;
    let sa = d.arc_circles(&d.all_a_state()).1 as i64;
    let sb = d.arc_circles(&d.all_b_state()).1 as i64;
    (
        c - 3 * d.negative() as i64 - sa,
        -c + 3 * d.positive() as i64 + sb,
    )
}

/// Hex SHA-256 of the canonical PD text.
pub fn diagram_hash(d: &Diagram) -> String {
    Sha256::digest(d.to_string().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Cohomology groups indexed by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub ring: Ring,
    pub diagram_hash: String,
    pub j_range: (i64, i64),
    pub groups: BTreeMap<(i64, i64), AbelianGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: i64,
    pub j: i64,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub ring: String,
    pub diagram_hash: String,
    pub j_min: i64,
    pub j_max: i64,
    pub entries: Vec<TableEntry>,
}

impl CohomologyTable {
    pub fn get(&self, i: i64, j: i64) -> AbelianGroup {
        self.groups.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// `Σ (−1)^i q^j rank H^{i,j}`.
    pub fn euler_characteristic(&self) -> Laurent {
        let mut p = Laurent::zero();
        for (&(i, j), g) in &self.groups {
            p.add_term(
                if i % 2 == 0 {
                    g.rank as i64
                } else {
                    -(g.rank as i64)
                },
                j,
            );
        }
        p
    }

    /// Nonzero groups of one row.
    pub fn row(&self, j: i64) -> BTreeMap<i64, AbelianGroup> {
        self.groups
            .iter()
            .filter(|((_, jj), _)| *jj == j)
            .map(|(&(i, _), g)| (i, g.clone()))
            .collect()
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            ring: self.ring.to_string(),
            diagram_hash: self.diagram_hash.clone(),
            j_min: self.j_range.0,
            j_max: self.j_range.1,
            entries: self
                .groups
                .iter()
                .map(|(&(i, j), g)| TableEntry {
                    i,
                    j,
                    group: g.notation(self.ring),
                })
                .collect(),
        }
    }
}

impl fmt::Display for CohomologyTable {
    /// Rows `j` descending, columns `i` ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return writeln!(f, "(all groups trivial)");
        }
        let i_min = self.groups.keys().map(|k| k.0).min().unwrap();
        let i_max = self.groups.keys().map(|k| k.0).max().unwrap();
        let cells: Vec<(i64, Vec<String>)> = (self.j_range.0..=self.j_range.1)
            .rev()
            .filter(|j| (j - self.j_range.0) % 2 == 0)
            .map(|j| {
                (
                    j,
                    (i_min..=i_max)
                        .map(|i| self.get(i, j))
                        .map(|g| {
                            if g.is_zero() {
                                ".".into()
                            } else {
                                g.notation(self.ring)
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        let width = cells
            .iter()
            .flat_map(|(_, r)| r.iter().map(|s| s.chars().count()))
            .max()
            .unwrap_or(1)
            .max(3);
        let jw = cells
            .iter()
            .map(|(j, _)| j.to_string().len())
            .max()
            .unwrap_or(1);
        write!(f, "{:>jw$} |", "j\\i")?;
        for i in i_min..=i_max {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        for (j, row) in cells {
            write!(f, "{:>jw$} |", j, jw = jw.max(3))?;
            for cell in row {
                write!(f, " {:>width$}", cell)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Every row of the Khovanov cohomology of `d`.
pub fn khovanov_cohomology(
    d: &Diagram,
    ring: Ring,
    limits: &Limits,
) -> Result<CohomologyTable, KhovanovError> {
    check_cap(d, limits)?;
    let table = StateTable::new(d);
    let (j_min, j_max) = j_bounds(d);
    let rows: Vec<i64> = (j_min..=j_max).step_by(2).collect();
    let computed = rows
        .par_iter()
        .map(|&j| {
            let complex = row_complex(d, &table, j)?;
            Ok((j, complex.cohomology(ring)?))
        })
        .collect::<Result<Vec<_>, KhovanovError>>()?;
    let mut groups = BTreeMap::new();
    for (j, row) in computed {
        for (i, g) in row {
            if !g.is_zero() {
                groups.insert((i as i64, j), g);
            }
        }
    }
    Ok(CohomologyTable {
        ring,
        diagram_hash: diagram_hash(d),
        j_range: (j_min, j_max),
        groups,
    })
}

/// A single row of the cohomology table.
pub fn khovanov_row(
    d: &Diagram,
    j: i64,
    ring: Ring,
    limits: &Limits,
) -> Result<BTreeMap<i64, AbelianGroup>, KhovanovError> {
    let complex = khovanov_complex(d, j, limits)?;
    Ok(complex
        .cohomology(ring)?
        .into_iter()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| (i as i64, g))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    fn z() -> AbelianGroup {
        AbelianGroup::free(1)
    }

    #[test]
    fn unknot_has_two_generators() {
        let d = Diagram::unlink(1);
        let states = enumerate_enhanced(&d, &Limits::default()).unwrap();
        assert_eq!(
            states.keys().copied().collect::<Vec<_>>(),
            vec![(0, -1), (0, 1)]
        );
        let table = khovanov_cohomology(&d, Ring::Integers, &Limits::default()).unwrap();
        assert_eq!(table.groups, [((0, -1), z()), ((0, 1), z())].into());
    }

    #[test]
    fn left_trefoil_table() {
        let d: Diagram = TREFOIL.parse().unwrap();
        let table = khovanov_cohomology(&d, Ring::Integers, &Limits::default()).unwrap();
        let z2 = AbelianGroup::from_cyclic(0, [2.into()]);
        let expected = [
            ((-3, -9), z()),
            ((-2, -7), z2),
            ((-2, -5), z()),
            ((0, -3), z()),
            ((0, -1), z()),
        ]
        .into();
        assert_eq!(table.groups, expected);
        assert_eq!(
            table.euler_characteristic(),
            unnormalized_jones(&d, &Limits::default()).unwrap()
        );
    }

    #[test]
    fn enumeration_counts_and_gradings() {
        let d: Diagram = TREFOIL.parse().unwrap();
        let states = enumerate_enhanced(&d, &Limits::default()).unwrap();
        let expected: usize = (0..8u64).map(|m| 1 << d.circle_count_mask(m)).sum();
        assert_eq!(states.values().map(Vec::len).sum::<usize>(), expected);
        let (j_min, j_max) = j_bounds(&d);
        assert_eq!(states.keys().map(|k| k.1).min(), Some(j_min));
        assert_eq!(states.keys().map(|k| k.1).max(), Some(j_max));
        for ((i, j), list) in &states {
            for e in list {
                let (w, sigma) = (d.writhe(), e.state.sigma());
                assert_eq!((3 * w - sigma) / 2 + e.tau(), *j);
                assert_eq!(e.state.b_count() as i64 - d.negative() as i64, *i);
            }
        }
    }

    #[test]
    fn incidence_signs_count_later_b_labels() {
        let d: Diagram = TREFOIL.parse().unwrap();
        let states = enumerate_enhanced(&d, &Limits::default()).unwrap();
        let all: Vec<&EnhancedState> = states.values().flatten().collect();
        let mut nonzero = 0;
        for s in &all {
            assert_eq!(adjacent(&d, s, s).unwrap(), 0);
            for t in &all {
                let v = adjacent(&d, s, t).unwrap();
                if v != 0 {
                    nonzero += 1;
                    assert_eq!(t.i(&d), s.i(&d) + 1);
                    assert_eq!(t.j(&d), s.j(&d));
                }
            }
        }
        // Matches the nonzero entries of the assembled differentials.
        let table = StateTable::new(&d);
        let mut entries = 0;
        let (j_min, j_max) = j_bounds(&d);
        for j in (j_min..=j_max).step_by(2) {
            let cx = row_complex(&d, &table, j).unwrap();
            entries += (-3..0).map(|i| cx.differential(i).nnz()).sum::<usize>();
        }
        assert_eq!(nonzero, entries);
    }

    #[test]
    fn subsets_by_size() {
        assert_eq!(
            subsets_of_size(4, 2).collect::<Vec<_>>(),
            vec![3, 5, 6, 9, 10, 12]
        );
        assert_eq!(subsets_of_size(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 3).collect::<Vec<_>>(), vec![7]);
    }

    #[test]
    fn crossing_cap() {
        let d: Diagram = TREFOIL.parse().unwrap();
        let limits = Limits {
            max_crossings: 2,
            ..Limits::default()
        };
        assert_eq!(
            khovanov_cohomology(&d, Ring::Integers, &limits),
            Err(KhovanovError::CapExceeded {
                crossings: 3,
                limit: 2
            })
        );
    }
}
