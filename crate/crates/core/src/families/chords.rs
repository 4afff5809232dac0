//! Diagrams whose all-A resolution is a single circle carrying a given
//! chord diagram.
//!
//! The chord diagram is a word in which every chord name occurs twice;
//! position `k` of the word is the `k`-th endpoint counterclockwise along
//! the circle and segment `e_k` runs from endpoint `k` to `k + 1`. Each
//! chord is drawn inside or outside the circle and contracted to a crossing
//! whose A-smoothing restores the circle. Chords on the same side must not
//! interleave.

use std::collections::HashMap;

use crate::diagram::{Diagram, DiagramError, Port};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChordError {
    #[error("chord {0} does not occur exactly twice")]
    Unpaired(u32),
    #[error("interleaving chords {0} and {1} are on the same side")]
    SameSide(u32, u32),
    #[error("expected one side per chord and one direction per component")]
    Shape,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    /// Chord names in order of first occurrence.
    names: Vec<u32>,
    /// Endpoint positions of each chord, `a < b`.
    chords: Vec<(usize, usize)>,
    partner: Vec<usize>,
    chord_at: Vec<usize>,
}

impl ChordDiagram {
    pub fn from_word(word: &[u32]) -> Result<ChordDiagram, ChordError> {
        let mut seen: HashMap<u32, Vec<usize>> = HashMap::new();
        let mut names = Vec::new();
        for (k, &w) in word.iter().enumerate() {
            let entry = seen.entry(w).or_default();
            if entry.is_empty() {
                names.push(w);
            }
            entry.push(k);
        }
        if let Some((&w, _)) = seen.iter().find(|(_, p)| p.len() != 2) {
            return Err(ChordError::Unpaired(w));
        }
        let chords: Vec<(usize, usize)> = names.iter().map(|w| (seen[w][0], seen[w][1])).collect();
        let mut partner = vec![0; word.len()];
        let mut chord_at = vec![0; word.len()];
        for (x, &(a, b)) in chords.iter().enumerate() {
            partner[a] = b;
            partner[b] = a;
            chord_at[a] = x;
            chord_at[b] = x;
        }
        Ok(ChordDiagram { names, chords, partner, chord_at })
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn names(&self) -> &[u32] {
        &self.names
    }

    fn interleave(&self, x: usize, y: usize) -> bool {
        let (a, b) = self.chords[x];
        let (c, d) = self.chords[y];
        (a < c && c < b) != (a < d && d < b)
    }

    /// The circle graph: chords joined when their endpoints alternate.
    pub fn interleave_graph(&self) -> Graph {
        let n = self.chord_count();
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).filter(|&(x, y)| self.interleave(x, y)).collect();
        Graph::new(self.names.clone(), edges).expect("circle graph")
    }

    fn len(&self) -> usize {
        2 * self.chords.len()
    }

    /// Next `(segment, forward)` along a link strand.
    fn step(&self, segment: usize, forward: bool) -> (usize, bool) {
        let m = self.len();
        if forward {
            let q = self.partner[(segment + 1) % m];
            ((q + m - 1) % m, false)
        } else {
            (self.partner[segment], true)
        }
    }

    /// Link components as cycles of `(segment, forward)`.
    pub fn strands(&self) -> Vec<Vec<(usize, bool)>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = (start, true);
            loop {
                seen[cur.0] = true;
                cycle.push(cur);
                cur = self.step(cur.0, cur.1);
                if cur.0 == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    /// Builds the diagram with chord `x` inside the circle when `inside[x]`
    /// and component `k` of [`strands`](Self::strands) traversed as traced
    /// when `directions[k]`.
    pub fn realize(&self, inside: &[bool], directions: &[bool]) -> Result<Diagram, ChordError> {
        if inside.len() != self.chord_count() {
            return Err(ChordError::Shape);
        }
        for x in 0..self.chord_count() {
            for y in x + 1..self.chord_count() {
                if inside[x] == inside[y] && self.interleave(x, y) {
                    return Err(ChordError::SameSide(self.names[x], self.names[y]));
                }
            }
        }
        let strands = self.strands();
        if directions.len() != strands.len() {
            return Err(ChordError::Shape);
        }
        let m = self.len();
        let mut forward = vec![true; m];
        for (strand, &dir) in strands.iter().zip(directions) {
            for &(seg, f) in strand {
                forward[seg] = f == dir;
            }
        }
        let arrives = |seg: usize, pos: usize| if forward[seg] { (seg + 1) % m == pos } else { seg == pos };
        let mut tuples = Vec::new();
        let mut heads: Vec<Port> = vec![(0, 0); m];
        for (x, &(a, b)) in self.chords.iter().enumerate() {
            let before = |p: usize| ((p + m - 1) % m, p);
            let after = |p: usize| (p, p);
            let mut entries = if inside[x] {
                [before(a), after(a), before(b), after(b)]
            } else {
                [after(a), before(a), after(b), before(b)]
            };
            if !arrives(entries[0].0, entries[0].1) {
                entries.rotate_left(2);
            }
            for (port, &(seg, pos)) in entries.iter().enumerate() {
                if arrives(seg, pos) {
                    heads[seg] = (x, port as u8);
                }
            }
            tuples.push(entries.map(|e| e.0));
        }
        Ok(Diagram::from_oriented_arcs(&tuples, &heads, 0)?)
    }

    /// A side assignment with no interleaving chords on a common side,
    /// from a 2-colouring of the circle graph.
    pub fn sides(&self) -> Option<Vec<bool>> {
        self.interleave_graph().two_coloring()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lando::lando_graph;

    #[test]
    fn single_chord_is_a_kink() {
        let c = ChordDiagram::from_word(&[1, 1]).unwrap();
        let d = c.realize(&[true], &[true]).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.arc_circles(&d.all_a_state()).1, 1);
    }

    #[test]
    fn hexagon_word_realizes_a_hexagon() {
        let c = ChordDiagram::from_word(&[1, 6, 2, 1, 3, 2, 4, 3, 5, 4, 6, 5]).unwrap();
        assert!(c.interleave_graph().is_isomorphic(&Graph::cycle(6)));
        let sides = c.sides().unwrap();
        let dirs = vec![true; c.strands().len()];
        let d = c.realize(&sides, &dirs).unwrap();
        assert_eq!(d.arc_circles(&d.all_a_state()).1, 1);
        assert!(lando_graph(&d).graph().is_isomorphic(&Graph::cycle(6)));
    }

    #[test]
    fn interleaving_chords_need_opposite_sides() {
        let c = ChordDiagram::from_word(&[1, 2, 1, 2]).unwrap();
        assert_eq!(c.realize(&[true, true], &[true]), Err(ChordError::SameSide(1, 2)));
    }
}
