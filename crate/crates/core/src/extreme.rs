//! Extreme Khovanov cohomology.
//!
//! The row `j = j_min` is the cohomology of the independence complex of the
//! Lando graph shifted by `n − 1`: `H^{i,j_min}(D) ≅ H^{i−1+n}(X_D)`. It is
//! also the reduced homology of `Y_D`, the Alexander dual of Jonsson's
//! complex of the Lando graph, and the brute-force row of the enhanced-state
//! complex. The row `j = j_max` comes from the mirror diagram.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::khovanov::{self, j_bounds, EnhancedState, KhovanovError};
use crate::lando::{independence_number, is_complete_bipartite, lando_graph, LandoError, LandoGraph};
use crate::simplicial::{
    change_coefficients, cohomology_from_homology, independence_complex, join_homology, jonsson_complex, AbelianGroup,
    GradedGroups, Ring, SimplicialComplex, SimplicialError,
};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtremeError {
    #[error(transparent)]
    Lando(#[from] LandoError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Khovanov(#[from] KhovanovError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Lando,
    Brute,
    Dual,
}

/// One extreme row of the cohomology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeRow {
    pub j: i64,
    pub ring: Ring,
    pub groups: BTreeMap<i64, AbelianGroup>,
    pub provenance: Provenance,
    /// Negative crossings of the diagram.
    pub n: usize,
    /// Degree shift `n − 1` between the row and the Lando complex.
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremeRowJson {
    pub j: i64,
    pub ring: String,
    pub groups: BTreeMap<i64, String>,
    pub provenance: Provenance,
    pub n: usize,
    pub shift: i64,
}

impl ExtremeRow {
    fn new(d: &Diagram, j: i64, ring: Ring, groups: BTreeMap<i64, AbelianGroup>, provenance: Provenance) -> Self {
        let n = d.negative();
        let groups = groups.into_iter().filter(|(_, g)| !g.is_zero()).collect();
        ExtremeRow { j, ring, groups, provenance, n, shift: n as i64 - 1 }
    }

    /// Same groups in the same degrees, whatever the provenance.
    pub fn same_groups(&self, other: &ExtremeRow) -> bool {
        self.j == other.j && self.groups == other.groups
    }

    /// The groups read from the lowest nonzero degree upwards.
    pub fn profile(&self) -> Vec<AbelianGroup> {
        let (Some(&lo), Some(&hi)) = (self.groups.keys().next(), self.groups.keys().next_back()) else {
            return Vec::new();
        };
        (lo..=hi).map(|i| self.groups.get(&i).cloned().unwrap_or_default()).collect()
    }

    pub fn to_json(&self) -> ExtremeRowJson {
        ExtremeRowJson {
            j: self.j,
            ring: self.ring.to_string(),
            groups: self.groups.iter().map(|(&i, g)| (i, g.notation(self.ring))).collect(),
            provenance: self.provenance,
            n: self.n,
            shift: self.shift,
        }
    }

    /// `j=-13: i=-4: Z^2`.
    pub fn summary(&self) -> String {
        if self.groups.is_empty() {
            return format!("j={}: 0", self.j);
        }
        let cells: Vec<String> = self.groups.iter().map(|(i, g)| format!("i={i}: {}", g.notation(self.ring))).collect();
        format!("j={}: {}", self.j, cells.join(", "))
    }
}

fn to_rows(graded: &GradedGroups, offset: i64) -> BTreeMap<i64, AbelianGroup> {
    graded.iter().map(|(&k, g)| (k as i64 + offset, g.clone())).collect()
}

/// Integral reduced homology of the independence complex, computed one
/// connected component of the graph at a time and combined with the join
/// formula.
pub fn lando_homology(g: &LandoGraph, limits: &Limits) -> Result<GradedGroups, ExtremeError> {
    let graph = g.graph();
    let mut total: GradedGroups = [(-1, AbelianGroup::free(1))].into();
    for component in graph.connected_components() {
        let piece = graph.induced(&component);
        let h = independence_complex(&piece, limits.max_faces)?.homology(Ring::Integers, limits.max_faces)?;
        total = join_homology(&total, &h);
        if total.is_empty() {
            break;
        }
    }
    Ok(total)
}

/// Integral cohomology `H^*(X_D)` of the whole independence complex,
/// straight from its coboundary matrices.
pub fn lando_cohomology_direct(g: &LandoGraph, ring: Ring, limits: &Limits) -> Result<GradedGroups, ExtremeError> {
    Ok(independence_complex(g.graph(), limits.max_faces)?.cohomology(ring, limits.max_faces)?)
}

/// `H^{i,j_min}(D) ≅ H^{i−1+n}(X_D)`.
pub fn extreme_via_lando(d: &Diagram, ring: Ring, limits: &Limits) -> Result<ExtremeRow, ExtremeError> {
    let g = lando_graph(d);
    let integral = cohomology_from_homology(&lando_homology(&g, limits)?);
    let groups = change_coefficients(&integral, ring);
    let (j_min, _) = j_bounds(d);
    Ok(ExtremeRow::new(d, j_min, ring, to_rows(&groups, 1 - d.negative() as i64), Provenance::Lando))
}

/// The row `j_min` of the enhanced-state complex.
pub fn extreme_via_brute(d: &Diagram, ring: Ring, limits: &Limits) -> Result<ExtremeRow, ExtremeError> {
    let (j_min, _) = j_bounds(d);
    let row = khovanov::khovanov_row(d, j_min, ring, limits)?;
    Ok(ExtremeRow::new(d, j_min, ring, row, Provenance::Brute))
}

/// Integral cohomology of the mirror-dual complex:
/// `H^i(C^*) = free(H^{−i}(C)) ⊕ torsion(H^{−i+1}(C))`.
fn dualize(rows: &BTreeMap<i64, AbelianGroup>) -> GradedGroups {
    let mut out = GradedGroups::new();
    for (&i, g) in rows {
        if g.rank > 0 {
            out.entry(-i as i32).or_default().rank += g.rank;
        }
        if !g.torsion.is_empty() {
            let e = out.entry((1 - i) as i32).or_default();
            *e = e.direct_sum(&AbelianGroup::from_cyclic(0, g.torsion.clone()));
        }
    }
    out
}

/// The row `j = j_max`, from the `j_min` row of the mirror image.
pub fn extreme_jmax(d: &Diagram, ring: Ring, limits: &Limits) -> Result<ExtremeRow, ExtremeError> {
    let mirror = extreme_via_lando(&d.mirror(), Ring::Integers, limits)?;
    let groups = change_coefficients(&dualize(&mirror.groups), ring);
    let (_, j_max) = j_bounds(d);
    Ok(ExtremeRow::new(d, j_max, ring, to_rows(&groups, 0), Provenance::Lando))
}

/// The row `j_max` by brute force.
pub fn extreme_jmax_brute(d: &Diagram, ring: Ring, limits: &Limits) -> Result<ExtremeRow, ExtremeError> {
    let (_, j_max) = j_bounds(d);
    let row = khovanov::khovanov_row(d, j_max, ring, limits)?;
    Ok(ExtremeRow::new(d, j_max, ring, row, Provenance::Brute))
}

/// Enhanced states realizing `j_min`, found by enumeration.
pub fn s_min_states(d: &Diagram, limits: &Limits) -> Result<Vec<EnhancedState>, ExtremeError> {
    let c = khovanov::check_cap(d, limits)?;
    let (j_min, _) = j_bounds(d);
    let mut out = Vec::new();
    for mask in 0..1u64 << c {
        let state = crate::diagram::State::from_mask(c, mask);
        let circles = d.arc_circles(&state).1;
        let e = EnhancedState { state, signs: vec![-1; circles] };
        if e.j(d) == j_min {
            out.push(e);
        }
    }
    Ok(out)
}

/// `Y_D`, the Alexander dual of Jonsson's complex `X_{G,V}` of the Lando
/// graph, with `V` the smaller colour class of each component.
#[derive(Clone, Debug)]
pub struct YComplex {
    pub complex: SimplicialComplex,
    /// Vertices of the Lando graph forming `V`.
    pub part_v: Vec<usize>,
    pub lando: LandoGraph,
}

pub fn y_complex(d: &Diagram, limits: &Limits) -> Result<YComplex, ExtremeError> {
    let lando = lando_graph(d);
    let g = lando.graph();
    let colors = g.two_coloring().expect("Lando graphs are bipartite");
    let mut part_v = Vec::new();
    for component in g.connected_components() {
        let ones: Vec<usize> = component.iter().copied().filter(|&v| colors[v]).collect();
        let zeros: Vec<usize> = component.iter().copied().filter(|&v| !colors[v]).collect();
        part_v.extend(if ones.len() < zeros.len() || (ones.len() == zeros.len() && colors[component[0]]) { ones } else { zeros });
    }
    part_v.sort_unstable();
    let x = jonsson_complex(g, &part_v)?;
    let complex = x.alexander_dual(limits.max_faces)?;
    Ok(YComplex { complex, part_v, lando })
}

/// `H^{i,j_min}(D) ≅ H̃_{|V|−i−1−n}(Y_D)`.
pub fn extreme_via_dual(d: &Diagram, ring: Ring, limits: &Limits) -> Result<ExtremeRow, ExtremeError> {
    let y = y_complex(d, limits)?;
    let h = y.complex.homology(Ring::Integers, limits.max_faces)?;
    let base = y.part_v.len() as i64 - 1 - d.negative() as i64;
    let integral: GradedGroups = h.iter().map(|(&k, g)| ((base - k as i64) as i32, g.clone())).collect();
    let (j_min, _) = j_bounds(d);
    let groups = change_coefficients(&integral, ring);
    Ok(ExtremeRow::new(d, j_min, ring, to_rows(&groups, 0), Provenance::Dual))
}

/// The group at `(1 − n, j_min)`: the coefficient ring when the Lando graph
/// is a complete bipartite graph, trivial otherwise.
pub fn krs_criterion(d: &Diagram) -> AbelianGroup {
    match is_complete_bipartite(lando_graph(d).graph()) {
        Some(_) => AbelianGroup::free(1),
        None => AbelianGroup::zero(),
    }
}

/// The coefficient of `A^{c + 2|s_A| − 2}` in the Kauffman bracket, next to
/// its prediction `(−1)^{|s_A|−1} I(G_D)` from the Lando graph.
pub fn bracket_extreme_coefficient(d: &Diagram, limits: &Limits) -> Result<(BigInt, BigInt), ExtremeError> {
    let bracket = khovanov::kauffman_bracket(d, limits)?;
    let sa = d.arc_circles(&d.all_a_state()).1 as i64;
    let c = d.crossing_count() as i64;
    let actual = BigInt::from(bracket.coefficient(c + 2 * sa - 2));
    let i = independence_number(lando_graph(d).graph(), limits.max_lando_vertices)?;
    let predicted = if sa % 2 == 1 { i } else { -i };
    Ok((actual, predicted))
}
