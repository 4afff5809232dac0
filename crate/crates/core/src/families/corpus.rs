//! Seeded random diagrams: braid closures, and single-circle chord
//! diagrams drawn inside and outside the circle.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chords::ChordDiagram;
use crate::diagram::{Diagram, Port};
use crate::graph::Graph;
use crate::simplicial::{SimplicialComplex, VertexSet};

/// Closure of a braid word. Letter `(i, positive)` crosses positions `i`
/// and `i + 1`; strands run upwards.
pub fn braid_closure(strands: usize, word: &[(usize, bool)]) -> Option<Diagram> {
    if strands == 0 || word.iter().any(|&(i, _)| i + 1 >= strands) {
        return None;
    }
    let mut current: Vec<usize> = (0..strands).collect();
    let mut arcs = strands;
    let mut tuples: Vec<[usize; 4]> = Vec::new();
    let mut heads: Vec<Option<Port>> = vec![None; strands];
    for (x, &(i, positive)) in word.iter().enumerate() {
        let (a, b) = (current[i], current[i + 1]);
        // `a` continues to position i+1 as `na`, `b` to position i as `nb`.
        let (na, nb) = (arcs, arcs + 1);
        arcs += 2;
        heads.extend([None, None]);
        // Ports counterclockwise from the incoming under-strand.
        if positive {
            tuples.push([b, na, nb, a]);
            heads[b] = Some((x, 0));
            heads[a] = Some((x, 3));
        } else {
            tuples.push([a, b, na, nb]);
            heads[a] = Some((x, 0));
            heads[b] = Some((x, 1));
        }
        current[i] = nb;
        current[i + 1] = na;
    }
    // Close up: the arc leaving the top at position p is the arc entering
    // the bottom at p.
    let mut merged: Vec<usize> = (0..arcs).collect();
    let mut free_loops = 0;
    for (p, &top) in current.iter().enumerate() {
        if top == p {
            free_loops += 1;
        } else {
            merged[top] = p;
        }
    }
    let used: Vec<bool> = {
        let mut u = vec![false; arcs];
        for t in &tuples {
            for &a in t {
                u[merged[a]] = true;
            }
        }
        u
    };
    let mut index = vec![usize::MAX; arcs];
    let mut next = 0;
    for a in 0..arcs {
        if used[a] {
            index[a] = next;
            next += 1;
        }
    }
    let tuples: Vec<[usize; 4]> = tuples.iter().map(|t| t.map(|a| index[merged[a]])).collect();
    let mut out_heads = vec![(0, 0); next];
    for a in 0..arcs {
        if let Some(h) = heads[a] {
            out_heads[index[merged[a]]] = h;
        }
    }
    Diagram::from_oriented_arcs(&tuples, &out_heads, free_loops).ok()
}

pub fn random_braid(rng: &mut impl Rng, strands: usize, length: usize) -> Option<Diagram> {
    let word: Vec<(usize, bool)> = (0..length)
        .map(|_| (rng.gen_range(0..strands - 1), rng.gen_bool(0.5)))
        .collect();
    braid_closure(strands, &word)
}

/// A random chord diagram with a bipartite circle graph, realized with
/// random strand directions. Its Lando graph is the circle graph.
pub fn random_chord_diagram(rng: &mut impl Rng, chords: usize) -> Option<Diagram> {
    let mut word: Vec<u32> = (1..=chords as u32).flat_map(|c| [c, c]).collect();
    word.shuffle(rng);
    let cd = ChordDiagram::from_word(&word).ok()?;
    let mut sides = cd.sides()?;
    if rng.gen_bool(0.5) {
        sides.iter_mut().for_each(|s| *s = !*s);
    }
    let directions: Vec<bool> = (0..cd.strands().len()).map(|_| rng.gen_bool(0.5)).collect();
    cd.realize(&sides, &directions).ok()
}

/// `count` diagrams with at most `max_crossings` crossings, alternating
/// between the two generators.
pub fn corpus(seed: u64, count: usize, max_crossings: usize) -> Vec<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = if out.len() % 2 == 0 {
            let strands = rng.gen_range(2..=4);
            let length = rng.gen_range(1..=max_crossings.max(1));
            random_braid(&mut rng, strands, length)
        } else {
            let chords = rng.gen_range(1..=max_crossings.clamp(1, 9));
            random_chord_diagram(&mut rng, chords)
        };
        if let Some(d) = d.filter(|d| d.crossing_count() <= max_crossings) {
            out.push(d);
        }
    }
    out
}

/// A complex on ground `1..=n` generated by a few random subsets; with no
/// subsets drawn it is `{∅}`.
pub fn random_complex(rng: &mut impl Rng, n: usize) -> SimplicialComplex {
    let ground: Vec<u32> = (1..=n as u32).collect();
    let k = rng.gen_range(0..=n + 1);
    let facets: Vec<VertexSet> = (0..k)
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    if facets.is_empty() {
        return SimplicialComplex::empty(ground);
    }
    SimplicialComplex::from_facets(ground, facets).expect("subsets of the ground set")
}

/// A random bipartite graph on parts `0..v` and `v..v+w`, each edge present
/// with probability `p`. Returns the graph and the first part.
pub fn random_bipartite(rng: &mut impl Rng, v: usize, w: usize, p: f64) -> (Graph, Vec<usize>) {
    let edges: Vec<(usize, usize)> = (0..v)
        .flat_map(|a| (v..v + w).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    (Graph::with_edges(v + w, edges).expect("bipartite graph"), (0..v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khovanov::jones;
    use crate::Limits;

    #[test]
    fn trefoil_as_a_braid() {
        let d = braid_closure(2, &[(0, false); 3]).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe().abs(), 3);
        let left: Diagram = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".parse().unwrap();
        let l = Limits::default();
        let j = jones(&d, &l).unwrap().to_string();
        assert!(j == jones(&left, &l).unwrap().to_string() || j == jones(&left.mirror(), &l).unwrap().to_string());
    }

    #[test]
    fn untouched_strands_become_free_loops() {
        let d = braid_closure(3, &[(0, true), (0, true)]).unwrap();
        assert_eq!(d.free_loops(), 1);
        assert_eq!(d.component_count(), 3);
    }

    #[test]
    fn corpus_is_reproducible() {
        let a = corpus(7, 20, 8);
        let b = corpus(7, 20, 8);
        assert_eq!(a.len(), 20);
        assert!(a.iter().zip(&b).all(|(x, y)| x.to_string() == y.to_string()));
        assert!(a.iter().all(|d| d.crossing_count() <= 8));
    }
}
