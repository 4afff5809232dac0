//! Simplicial complexes over an ordered ground set and their integer
//! (co)homology, together with the combinatorial constructions used to move
//! between graphs and complexes: independence complexes, Alexander duals,
//! joins and Jonsson's bipartite correspondences.
//!
//! All (co)homology here is reduced: the cochain complex starts with the
//! empty face in degree -1. The complex with no faces at all (the void
//! complex) is distinct from `{∅}`.

mod chain;
mod group;
mod matrix;
mod smith;
mod vertex_set;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use chain::{ChainComplex, ChainError};
pub use group::{
    change_coefficients, cohomology_from_homology, join_homology, prune, AbelianGroup,
    GradedGroups, ParseGroupError, ParseRingError, Ring,
};
pub use matrix::IntMatrix;
pub use smith::{rank_mod_p, smith_normal_form, SmithForm};
pub use vertex_set::{VertexSet, MAX_VERTICES};

use crate::graph::Graph;

/// Default bound on the number of faces any enumeration may produce.
pub const DEFAULT_MAX_FACES: usize = 1 << 22;

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("face enumeration exceeded the cap of {limit} faces")]
    CapExceeded { limit: usize },
    #[error("ground set of {0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    GroundTooLarge(usize),
    #[error("family of faces is not closed under taking subsets")]
    NotDownwardClosed,
    #[error("face uses vertex {0} outside the ground set")]
    UnknownVertex(u32),
    #[error("vertex sets do not form a bipartition of the graph")]
    NotBipartition,
    #[error("bipartition has an empty {0} part")]
    EmptyPart(Part),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// The two sides of a bipartition `V ⊔ W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    V,
    W,
}

impl std::fmt::Display for Part {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Part::V => "V",
            Part::W => "W",
        })
    }
}

/// A simplicial complex stored by its maximal faces. Ground vertices need
/// not be faces.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    ground: Vec<u32>,
    facets: Vec<VertexSet>,
    faces: Option<Arc<Vec<VertexSet>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

/// Wire form: `{"ground": [...], "maximal_faces": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ground: Vec<u32>,
    pub maximal_faces: Vec<Vec<u32>>,
}

/// The cochain complex of a simplicial complex with its face basis.
#[derive(Clone, Debug)]
pub struct SimplicialCochains {
    pub complex: ChainComplex,
    /// Faces of each dimension, in basis order.
    pub basis: BTreeMap<i32, Vec<VertexSet>>,
}

fn maximal_among(mut family: Vec<VertexSet>) -> Vec<VertexSet> {
    family.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    family.dedup();
    let mut facets: Vec<VertexSet> = Vec::new();
    for f in family {
        if !facets.iter().any(|m| f.is_subset(*m)) {
            facets.push(f);
        }
    }
    facets.sort_unstable();
    facets
}

fn check_ground(ground: &[u32]) -> Result<(), SimplicialError> {
    if ground.len() > MAX_VERTICES {
        return Err(SimplicialError::GroundTooLarge(ground.len()));
    }
    Ok(())
}

impl SimplicialComplex {
    /// The complex generated by `facets` (which need not be maximal).
    pub fn from_facets(ground: Vec<u32>, facets: Vec<VertexSet>) -> Result<Self, SimplicialError> {
        check_ground(&ground)?;
        let all = VertexSet::full(ground.len());
        if let Some(bad) = facets.iter().find(|f| !f.is_subset(all)) {
            let v = bad.difference(all).first().unwrap();
            return Err(SimplicialError::UnknownVertex(v as u32));
        }
        Ok(SimplicialComplex {
            ground,
            facets: maximal_among(facets),
            faces: None,
        })
    }

    /// A complex given by its full face family, which must be downward closed.
    pub fn from_faces(ground: Vec<u32>, faces: Vec<VertexSet>) -> Result<Self, SimplicialError> {
        check_ground(&ground)?;
        let set: HashSet<VertexSet> = faces.iter().copied().collect();
        for f in &set {
            if f.iter().any(|v| !set.contains(&f.without(v))) {
                return Err(SimplicialError::NotDownwardClosed);
            }
        }
        let mut faces: Vec<VertexSet> = set.into_iter().collect();
        faces.sort_unstable();
        let mut c = Self::from_facets(ground, faces.clone())?;
        c.faces = Some(Arc::new(faces));
        Ok(c)
    }

    /// Like [`from_faces`](Self::from_faces) with faces written as label lists.
    pub fn from_labelled_faces(
        ground: Vec<u32>,
        faces: &[Vec<u32>],
    ) -> Result<Self, SimplicialError> {
        let sets = faces
            .iter()
            .map(|f| labels_to_set(&ground, f))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_faces(ground, sets)
    }

    /// The complex with no faces at all.
    pub fn void(ground: Vec<u32>) -> Self {
        SimplicialComplex {
            ground,
            facets: Vec::new(),
            faces: Some(Arc::new(Vec::new())),
        }
    }

    /// The complex `{∅}`.
    pub fn empty(ground: Vec<u32>) -> Self {
        SimplicialComplex {
            ground,
            facets: vec![VertexSet::EMPTY],
            faces: None,
        }
    }

    /// The full simplex on the ground set.
    pub fn simplex(ground: Vec<u32>) -> Self {
        let full = VertexSet::full(ground.len());
        SimplicialComplex {
            ground,
            facets: vec![full],
            faces: None,
        }
    }

    pub fn ground(&self) -> &[u32] {
        &self.ground
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension of the largest face; `None` for the void complex.
    pub fn dimension(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.len() as i32 - 1).max()
    }

    pub fn is_face(&self, s: VertexSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    /// Every face, ordered by dimension and then lexicographically.
    pub fn faces(&self, max_faces: usize) -> Result<Arc<Vec<VertexSet>>, SimplicialError> {
        if let Some(f) = &self.faces {
            if f.len() > max_faces {
                return Err(SimplicialError::CapExceeded { limit: max_faces });
            }
            return Ok(f.clone());
        }
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for &facet in &self.facets {
            let bits = facet.bits();
            let mut sub = bits;
            loop {
                if seen.insert(VertexSet::from_bits(sub)) && seen.len() > max_faces {
                    return Err(SimplicialError::CapExceeded { limit: max_faces });
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & bits;
            }
        }
        let mut faces: Vec<VertexSet> = seen.into_iter().collect();
        faces.sort_unstable();
        Ok(Arc::new(faces))
    }

    /// Face counts by dimension, starting at dimension -1.
    pub fn f_vector(&self, max_faces: usize) -> Result<Vec<usize>, SimplicialError> {
        let faces = self.faces(max_faces)?;
        let mut counts = Vec::new();
        for f in faces.iter() {
            if counts.len() <= f.len() {
                counts.resize(f.len() + 1, 0);
            }
            counts[f.len()] += 1;
        }
        Ok(counts)
    }

    /// Faces as lists of ground labels.
    pub fn labelled(&self, s: VertexSet) -> Vec<u32> {
        s.iter().map(|v| self.ground[v]).collect()
    }

    /// The cochain complex with `δ(σ) = Σ_v (-1)^k σ∪{v}`, `k` the number of
    /// vertices of `σ` after `v` in the ground order.
    pub fn coboundary_complex(
        &self,
        max_faces: usize,
    ) -> Result<SimplicialCochains, SimplicialError> {
        let faces = self.faces(max_faces)?;
        let mut basis: BTreeMap<i32, Vec<VertexSet>> = BTreeMap::new();
        for &f in faces.iter() {
            basis.entry(f.len() as i32 - 1).or_default().push(f);
        }
        let index: HashMap<VertexSet, usize> = basis
            .values()
            .flat_map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)))
            .collect();
        let n = self.ground.len();
        let mut differentials = BTreeMap::new();
        for (&d, fs) in &basis {
            let Some(targets) = basis.get(&(d + 1)) else {
                continue;
            };
            let mut triplets = Vec::new();
            for (col, &sigma) in fs.iter().enumerate() {
                for v in (0..n).filter(|&v| !sigma.contains(v)) {
                    let tau = sigma.with(v);
                    if let Some(&row) = index.get(&tau) {
                        let sign = if sigma.count_after(v) % 2 == 0 { 1 } else { -1 };
                        triplets.push((row, col, sign));
                    }
                }
            }
            differentials.insert(
                d,
                IntMatrix::from_triplets(targets.len(), fs.len(), triplets),
            );
        }
        let ranks = basis.iter().map(|(d, fs)| (*d, fs.len())).collect();
        let complex = ChainComplex::new(ranks, differentials)?;
        Ok(SimplicialCochains { complex, basis })
    }

    /// Reduced cohomology.
    pub fn cohomology(
        &self,
        ring: Ring,
        max_faces: usize,
    ) -> Result<GradedGroups, SimplicialError> {
        Ok(self
            .coboundary_complex(max_faces)?
            .complex
            .cohomology(ring)?)
    }

    /// Reduced homology, from the transposed coboundary maps.
    pub fn homology(&self, ring: Ring, max_faces: usize) -> Result<GradedGroups, SimplicialError> {
        Ok(self
            .coboundary_complex(max_faces)?
            .complex
            .transposed_homology(ring)?)
    }

    /// The complex on the same ground set whose faces are the complements
    /// of the nonfaces of `self`.
    pub fn alexander_dual(&self, max_faces: usize) -> Result<SimplicialComplex, SimplicialError> {
        let n = self.ground.len();
        if n >= 40 || (1usize << n) > max_faces.saturating_mul(4) {
            return Err(SimplicialError::CapExceeded { limit: max_faces });
        }
        let all = VertexSet::full(n);
        let mut faces = Vec::new();
        for bits in 0..(1u128 << n) {
            let s = VertexSet::from_bits(bits);
            if !self.is_face(all.difference(s)) {
                faces.push(s);
                if faces.len() > max_faces {
                    return Err(SimplicialError::CapExceeded { limit: max_faces });
                }
            }
        }
        faces.sort_unstable();
        let facets = maximal_among(faces.clone());
        Ok(SimplicialComplex {
            ground: self.ground.clone(),
            facets,
            faces: Some(Arc::new(faces)),
        })
    }

    /// The join `self * other`; `other`'s ground labels are shifted past `self`'s.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, SimplicialError> {
        let offset = self.ground.iter().copied().max().unwrap_or(0);
        let ground: Vec<u32> = self
            .ground
            .iter()
            .copied()
            .chain(other.ground.iter().map(|l| l + offset))
            .collect();
        check_ground(&ground)?;
        let n = self.ground.len();
        let facets = self
            .facets
            .iter()
            .flat_map(|a| other.facets.iter().map(move |b| a.union(b.shifted(n))))
            .collect();
        Ok(SimplicialComplex {
            ground,
            facets: maximal_among(facets),
            faces: None,
        })
    }

    /// Join with two isolated points.
    pub fn suspension(&self) -> Result<SimplicialComplex, SimplicialError> {
        let s0 = SimplicialComplex::from_facets(
            vec![1, 2],
            vec![VertexSet::singleton(0), VertexSet::singleton(1)],
        )?;
        self.join(&s0)
    }

    /// Join with a single point.
    pub fn cone(&self) -> Result<SimplicialComplex, SimplicialError> {
        self.join(&SimplicialComplex::simplex(vec![1]))
    }

    /// Bipartite graph on `ground ⊔ facets` with an edge `{v, μ}` whenever `v ∉ μ`.
    /// Facet vertices are labelled after the largest ground label.
    pub fn bipartite_graph(&self) -> Graph {
        let n = self.ground.len();
        let offset = self.ground.iter().copied().max().unwrap_or(0);
        let labels = self
            .ground
            .iter()
            .copied()
            .chain((0..self.facets.len()).map(|i| offset + 1 + i as u32))
            .collect();
        let edges: Vec<(usize, usize)> = self
            .facets
            .iter()
            .enumerate()
            .flat_map(|(i, mu)| {
                (0..n)
                    .filter(move |&v| !mu.contains(v))
                    .map(move |v| (v, n + i))
            })
            .collect();
        Graph::new(labels, edges).expect("bipartite graph of a complex")
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            ground: self.ground.clone(),
            maximal_faces: self.facets.iter().map(|f| self.labelled(*f)).collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<SimplicialComplex, SimplicialError> {
        let facets = json
            .maximal_faces
            .iter()
            .map(|f| labels_to_set(&json.ground, f))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_facets(json.ground.clone(), facets)
    }
}

fn labels_to_set(ground: &[u32], labels: &[u32]) -> Result<VertexSet, SimplicialError> {
    labels
        .iter()
        .map(|l| {
            ground
                .iter()
                .position(|g| g == l)
                .ok_or(SimplicialError::UnknownVertex(*l))
        })
        .collect()
}

/// The complex whose faces are the independent vertex sets of `g`.
pub fn independence_complex(
    g: &Graph,
    max_faces: usize,
) -> Result<SimplicialComplex, SimplicialError> {
    let masks = g
        .neighbor_masks()
        .ok_or(SimplicialError::GroundTooLarge(g.vertex_count()))?;
    let n = g.vertex_count();
    let mut faces = Vec::new();
    let mut stack = vec![(VertexSet::EMPTY, VertexSet::full(n))];
    while let Some((current, candidates)) = stack.pop() {
        faces.push(current);
        if faces.len() > max_faces {
            return Err(SimplicialError::CapExceeded { limit: max_faces });
        }
        for v in candidates.iter() {
            let later = VertexSet::from_bits(candidates.bits() & !((2u128 << v) - 1));
            stack.push((current.with(v), later.difference(masks[v])));
        }
    }
    faces.sort_unstable();
    let facets = faces
        .iter()
        .copied()
        .filter(|s| (0..n).all(|v| s.contains(v) || !masks[v].is_disjoint(*s)))
        .collect();
    Ok(SimplicialComplex {
        ground: g.labels().to_vec(),
        facets,
        faces: Some(Arc::new(faces)),
    })
}

/// Jonsson's complex `X_{G,V}` for a bipartite graph with parts `part_v`
/// and its complement: `σ ⊆ V` is a face iff `σ ∪ {w}` is independent for
/// some `w ∈ W`. The ground set is `V` in vertex order.
pub fn jonsson_complex(g: &Graph, part_v: &[usize]) -> Result<SimplicialComplex, SimplicialError> {
    let n = g.vertex_count();
    let mut in_v = vec![false; n];
    for &v in part_v {
        if v >= n {
            return Err(SimplicialError::NotBipartition);
        }
        in_v[v] = true;
    }
    if g.edges().any(|(a, b)| in_v[a] == in_v[b]) {
        return Err(SimplicialError::NotBipartition);
    }
    let v_list: Vec<usize> = (0..n).filter(|&v| in_v[v]).collect();
    let w_list: Vec<usize> = (0..n).filter(|&v| !in_v[v]).collect();
    if v_list.is_empty() {
        return Err(SimplicialError::EmptyPart(Part::V));
    }
    if w_list.is_empty() {
        return Err(SimplicialError::EmptyPart(Part::W));
    }
    let ground: Vec<u32> = v_list.iter().map(|&v| g.label(v)).collect();
    check_ground(&ground)?;
    let facets = w_list
        .iter()
        .map(|&w| {
            (0..v_list.len())
                .filter(|&k| !g.are_adjacent(v_list[k], w))
                .collect::<VertexSet>()
        })
        .collect();
    SimplicialComplex::from_facets(ground, facets)
}
