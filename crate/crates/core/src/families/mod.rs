//! Diagram generators: split unions, the knotify move that merges two
//! components while keeping the Lando graph, H-thick families and the
//! join-power table.

pub mod catalog;
pub mod chords;
pub mod corpus;

use std::collections::BTreeMap;

use num_integer::binomial;

use crate::diagram::{Diagram, DiagramError, Port};
use crate::lando::lando_graph;
use crate::simplicial::{
    AbelianGroup, GradedGroups, Ring, SimplicialComplex, SimplicialError, VertexSet,
};
use crate::Limits;

pub use catalog::{catalog, catalog_entry, CatalogEntry, CatalogError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("arcs {0} and {1} lie on the same component")]
    SameComponent(usize, usize),
    #[error("no arc or free loop with index {0}")]
    UnknownArc(usize),
    #[error("arcs {0} and {1} do not share a face")]
    NoCommonFace(usize, usize),
    #[error("no clasp preserved the Lando graph")]
    ClaspFailed,
    #[error("expected at least one copy")]
    NoCopies,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

pub fn split_union(d1: &Diagram, d2: &Diagram) -> Diagram {
    d1.split_union(d2)
}

/// Index of the component carrying `site`, where sites `arc_count + k`
/// stand for free loop `k`.
fn component_of_site(d: &Diagram, site: usize) -> usize {
    let m = d.arc_count();
    if site < m {
        d.component_of_arc(site)
    } else {
        d.components().len() + site - m
    }
}

/// Connected pieces of the crossing graph, as one label per crossing.
fn pieces(d: &Diagram) -> Vec<usize> {
    let c = d.crossing_count();
    let mut parent: Vec<usize> = (0..c).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for a in 0..d.arc_count() {
        let (h, t) = (find(&mut parent, d.head(a).0), find(&mut parent, d.tail(a).0));
        parent[h] = t;
    }
    (0..c).map(|x| find(&mut parent, x)).collect()
}

/// Whether `arc` runs along `face` in the direction that keeps the face on
/// its right, i.e. leaves the corner counterclockwise.
fn runs_with_face(d: &Diagram, face: &[Port], arc: usize) -> Option<bool> {
    let k = d.face_arcs(face).iter().position(|&a| a == arc)?;
    let (x, p) = face[k];
    Some(d.tail(arc) == (x, (p + 1) % 4))
}

/// Face directions of the two sites (`None` for free loops), measured on a
/// face they share, or on any face when they lie in different pieces.
fn face_directions(
    d: &Diagram,
    alpha: usize,
    beta: usize,
) -> Result<(Option<bool>, Option<bool>), FamilyError> {
    let m = d.arc_count();
    let faces = d.faces();
    let first = |arc: usize| faces.iter().find_map(|f| runs_with_face(d, f, arc));
    if alpha >= m || beta >= m {
        return Ok(((alpha < m).then(|| first(alpha)).flatten(), (beta < m).then(|| first(beta)).flatten()));
    }
    let piece = pieces(d);
    if piece[d.head(alpha).0] != piece[d.head(beta).0] {
        return Ok((first(alpha), first(beta)));
    }
    faces
        .iter()
        .find_map(|f| Some((Some(runs_with_face(d, f, alpha)?), Some(runs_with_face(d, f, beta)?))))
        .ok_or(FamilyError::NoCommonFace(alpha, beta))
}

/// Reverses one component and reports where the given arcs went.
fn reverse_tracking(d: &Diagram, component: usize, arcs: [usize; 2]) -> (Diagram, [usize; 2]) {
    let r = d.reverse_components(&[component]).expect("component exists");
    let m = d.arc_count();
    let moved = arcs.map(|a| {
        if a >= m {
            return a;
        }
        let (x, p) = d.head(a);
        let rotated = d.component_of_arc(d.crossing(x)[0]) == component;
        r.arc_at((x, if rotated { (p + 2) % 4 } else { p }))
    });
    (r, moved)
}

/// Splices a two-crossing twist between the sites. Both new crossings are
/// positive and their A-smoothings restore the original strands plus a
/// small circle. `forward` says both sites run with their shared face;
/// `mirrored` switches every new crossing.
fn clasp(d: &Diagram, alpha: usize, beta: usize, forward: bool, mirrored: bool) -> Result<Diagram, DiagramError> {
    let (c, m) = (d.crossing_count(), d.arc_count());
    let (t, u) = (c, c + 1);
    let mut tuples: Vec<[usize; 4]> = d.crossings().to_vec();
    let mut heads: Vec<Port> = (0..m).map(|a| d.head(a)).collect();
    fn fresh(heads: &mut Vec<Port>, head: Port) -> usize {
        heads.push(head);
        heads.len() - 1
    }
    // Splits a site into a piece ending at `at` and a new piece carrying the
    // old head; a free loop becomes one arc from the twist back to it.
    let cut = |tuples: &mut Vec<[usize; 4]>, heads: &mut Vec<Port>, site: usize, at: Port| {
        if site >= m {
            let a = fresh(heads, at);
            return (a, a);
        }
        let old = heads[site];
        heads[site] = at;
        let b = fresh(heads, old);
        tuples[old.0][old.1 as usize] = b;
        (site, b)
    };
    let (tt, uu) = if forward {
        let (a1, a2) = cut(&mut tuples, &mut heads, alpha, (t, 3));
        let (be, bw) = cut(&mut tuples, &mut heads, beta, (u, 3));
        let m1 = fresh(&mut heads, (u, 0));
        let m2 = fresh(&mut heads, (t, 0));
        ([m2, m1, a2, a1], [m1, m2, bw, be])
    } else {
        let (ai, ao) = cut(&mut tuples, &mut heads, alpha, (t, 0));
        let (bi, bo) = cut(&mut tuples, &mut heads, beta, (u, 0));
        let m1 = fresh(&mut heads, (t, 3));
        let m2 = fresh(&mut heads, (u, 3));
        ([ai, ao, m2, m1], [bi, bo, m1, m2])
    };
    tuples.push(tt);
    tuples.push(uu);
    if mirrored {
        for x in [t, u] {
            let k = tuples[x];
            tuples[x] = [k[3], k[0], k[1], k[2]];
        }
        for h in heads.iter_mut().filter(|h| h.0 >= c) {
            h.1 = (h.1 + 1) % 4;
        }
    }
    let loops = d.free_loops() - usize::from(alpha >= m) - usize::from(beta >= m);
    Diagram::from_oriented_arcs(&tuples, &heads, loops)
}

/// Joins the components through `alpha` and `beta` with a two-crossing
/// twist inside a face they share. Sites are arc indices, or `arc_count + k`
/// for free loop `k`. The component of `beta` is reversed when the two arcs
/// run in opposite senses around the face.
pub fn knotify(d: &Diagram, alpha: usize, beta: usize) -> Result<Diagram, FamilyError> {
    let sites = d.arc_count() + d.free_loops();
    for s in [alpha, beta] {
        if s >= sites {
            return Err(FamilyError::UnknownArc(s));
        }
    }
    if component_of_site(d, alpha) == component_of_site(d, beta) {
        return Err(FamilyError::SameComponent(alpha, beta));
    }
    let (da, db) = face_directions(d, alpha, beta)?;
    let forward = da.or(db).unwrap_or(true);
    let (base, [alpha, beta]) = match (da, db) {
        (Some(a), Some(b)) if a != b => reverse_tracking(d, d.component_of_arc(beta), [alpha, beta]),
        _ => (d.clone(), [alpha, beta]),
    };
    let target = lando_graph(d);
    for mirrored in [false, true] {
        let Ok(k) = clasp(&base, alpha, beta, forward, mirrored) else {
            continue;
        };
        if k.component_count() + 1 == d.component_count() && lando_graph(&k).graph().is_isomorphic(target.graph()) {
            return Ok(k);
        }
    }
    Err(FamilyError::ClaspFailed)
}

/// A pair of sites on different components that [`knotify`] accepts, or
/// `None` for a knot.
pub fn knotify_site(d: &Diagram) -> Option<(usize, usize)> {
    if d.component_count() < 2 {
        return None;
    }
    for face in d.faces() {
        let arcs = d.face_arcs(&face);
        let a = arcs[0];
        if let Some(&b) = arcs.iter().find(|&&b| d.component_of_arc(b) != d.component_of_arc(a)) {
            return Some((a, b));
        }
    }
    // Every face sees one component, so distinct components lie in distinct
    // pieces or are free loops.
    let first_site = |k: usize| match d.components().get(k) {
        Some(r) => r.start,
        None => d.arc_count() + k - d.components().len(),
    };
    Some((first_site(0), first_site(1)))
}

/// Knotifies until one component is left.
pub fn knotify_all(d: &Diagram) -> Result<Diagram, FamilyError> {
    let mut d = d.clone();
    while let Some((a, b)) = knotify_site(&d) {
        d = knotify(&d, a, b)?;
    }
    Ok(d)
}

/// `n` split copies of the two-hexagons catalog link, knotified into a knot
/// whose extreme row has `n + 1` nonzero groups.
pub fn thick_family(n: usize) -> Result<Diagram, FamilyError> {
    if n == 0 {
        return Err(FamilyError::NoCopies);
    }
    let base = catalog_entry("two-hexagons")?.diagram;
    let mut d = base.clone();
    for _ in 1..n {
        d = split_union(&d, &base);
    }
    knotify_all(&d)
}

/// A point disjoint from the boundary of a square:
/// `{∅, 1, 2, 3, 4, 5, 12, 23, 34, 41}`.
pub fn square_and_point() -> SimplicialComplex {
    let edges = [[0, 1], [1, 2], [2, 3], [3, 0]];
    let mut facets: Vec<VertexSet> = edges.iter().map(|e| VertexSet::from_iter(e.iter().copied())).collect();
    facets.push(VertexSet::singleton(4));
    SimplicialComplex::from_facets(vec![1, 2, 3, 4, 5], facets).expect("valid complex")
}

/// Reduced integral homology of the `n`-fold join of [`square_and_point`],
/// computed from the faces.
pub fn join_power_table(n: usize, limits: &Limits) -> Result<GradedGroups, FamilyError> {
    if n == 0 {
        return Err(FamilyError::NoCopies);
    }
    let x = square_and_point();
    let mut j = x.clone();
    for _ in 1..n {
        j = j.join(&x)?;
    }
    Ok(j.homology(Ring::Integers, limits.max_faces)?)
}

/// `H̃_i = Z^{C(n, i−n+1)}` for `n−1 ≤ i ≤ 2n−1`.
pub fn join_power_closed_form(n: usize) -> GradedGroups {
    (0..=n)
        .map(|k| ((n + k) as i32 - 1, AbelianGroup::free(binomial(n, k))))
        .collect::<BTreeMap<_, _>>()
}
