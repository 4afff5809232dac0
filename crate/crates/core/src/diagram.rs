//! Oriented link diagrams in planar-diagram (PD) notation and their state
//! resolutions.
//!
//! A crossing `X(i,j,k,l)` lists its four incident arcs counterclockwise,
//! starting from the incoming under-strand, so the under-strand runs
//! `i → k`. The crossing is positive when the over-strand runs `l → j`.
//! The A-smoothing joins ports `(0,1)` and `(2,3)`; the B-smoothing joins
//! `(1,2)` and `(3,0)`.
//!
//! Arcs are relabelled on construction so that each component's arcs are
//! numbered consecutively along its orientation. Standard PD codes (arc
//! labels increasing along the orientation, component by component) keep
//! their labels.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("empty diagram")]
    EmptyDiagram,
    #[error("malformed tuple `{0}`")]
    MalformedTuple(String),
    #[error("arc label {label} appears {count} times (expected exactly 2)")]
    ArcLabelNotPairedTwice { label: u32, count: usize },
    #[error(
        "no orientation of the component through arc {label} is consistent with the PD convention"
    )]
    InconsistentOrientation { label: u32 },
    #[error("PD code does not describe a planar diagram")]
    NonPlanar,
    #[error("no component with index {0}")]
    UnknownComponent(usize),
    #[error("state has {actual} labels but the diagram has {expected} crossings")]
    StateSize { expected: usize, actual: usize },
}

/// A crossing port: `(crossing, position)` with position in `0..4`.
pub type Port = (usize, u8);

/// Smoothing label of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Smoothing {
    A,
    B,
}

impl Smoothing {
    /// The two port pairs joined by this smoothing; the first contains port 0.
    pub fn pairs(self) -> [[u8; 2]; 2] {
        match self {
            Smoothing::A => [[0, 1], [2, 3]],
            Smoothing::B => [[3, 0], [1, 2]],
        }
    }

    /// Index (0 or 1) of the pair containing `port`.
    pub fn pair_of(self, port: u8) -> usize {
        match (self, port) {
            (Smoothing::A, 0 | 1) | (Smoothing::B, 3 | 0) => 0,
            _ => 1,
        }
    }

    pub fn flipped(self) -> Smoothing {
        match self {
            Smoothing::A => Smoothing::B,
            Smoothing::B => Smoothing::A,
        }
    }
}

/// An assignment of a smoothing to every crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct State {
    labels: Vec<Smoothing>,
}

impl State {
    pub fn new(labels: Vec<Smoothing>) -> Self {
        State { labels }
    }

    pub fn all_a(c: usize) -> Self {
        State {
            labels: vec![Smoothing::A; c],
        }
    }

    pub fn all_b(c: usize) -> Self {
        State {
            labels: vec![Smoothing::B; c],
        }
    }

    /// The state with B-labels exactly at `b`.
    pub fn from_b_set(c: usize, b: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::all_a(c);
        for x in b {
            s.labels[x] = Smoothing::B;
        }
        s
    }

    /// The state whose B-labels are the set bits of `mask`.
    pub fn from_mask(c: usize, mask: u64) -> Self {
        Self::from_b_set(c, (0..c).filter(|&x| mask >> x & 1 == 1))
    }

    pub fn labels(&self) -> &[Smoothing] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> Smoothing {
        self.labels[x]
    }

    pub fn with_label(&self, x: usize, s: Smoothing) -> State {
        let mut t = self.clone();
        t.labels[x] = s;
        t
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `a(s)`, the number of A-labels.
    pub fn a_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l == Smoothing::A).count()
    }

    /// `b(s)`, the number of B-labels.
    pub fn b_count(&self) -> usize {
        self.labels.len() - self.a_count()
    }

    /// `σ(s) = a(s) − b(s)`.
    pub fn sigma(&self) -> i64 {
        self.a_count() as i64 - self.b_count() as i64
    }
}

/// An oriented link diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    /// Arcs at each crossing (0-based), counterclockwise from the incoming under-strand.
    crossings: Vec<[usize; 4]>,
    heads: Vec<Port>,
    tails: Vec<Port>,
    signs: Vec<i8>,
    components: Vec<Range<usize>>,
    free_loops: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub pd: String,
    pub crossings: Vec<[u32; 4]>,
    pub signs: Vec<i8>,
    pub free_loops: usize,
    pub components: usize,
    pub writhe: i64,
}

struct Walk {
    /// `(arc, head)` pairs in traversal order.
    steps: Vec<(usize, usize)>,
}

impl Diagram {
    /// Builds a diagram from PD tuples with arbitrary positive labels and a
    /// number of crossingless components.
    pub fn from_pd(tuples: &[[u32; 4]], free_loops: usize) -> Result<Diagram, DiagramError> {
        if tuples.is_empty() && free_loops == 0 {
            return Err(DiagramError::EmptyDiagram);
        }
        let mut occurrences: BTreeMap<u32, Vec<Port>> = BTreeMap::new();
        for (x, t) in tuples.iter().enumerate() {
            for (p, &label) in t.iter().enumerate() {
                if label == 0 {
                    return Err(DiagramError::MalformedTuple(format!(
                        "X({},{},{},{})",
                        t[0], t[1], t[2], t[3]
                    )));
                }
                occurrences.entry(label).or_default().push((x, p as u8));
            }
        }
        if let Some((&label, occ)) = occurrences.iter().find(|(_, o)| o.len() != 2) {
            return Err(DiagramError::ArcLabelNotPairedTwice {
                label,
                count: occ.len(),
            });
        }
        let labels: Vec<u32> = occurrences.keys().copied().collect();
        let ends: Vec<[Port; 2]> = occurrences.values().map(|o| [o[0], o[1]]).collect();
        let index: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let arcs: Vec<[usize; 4]> = tuples.iter().map(|t| t.map(|l| index[&l])).collect();

        let mut visited = vec![false; labels.len()];
        let mut walks = Vec::new();
        for start in 0..labels.len() {
            if visited[start] {
                continue;
            }
            let forward = walk(&arcs, &ends, start, 0);
            let backward = walk(&arcs, &ends, start, 1);
            let ok = |w: &Walk| {
                w.steps
                    .iter()
                    .all(|&(a, h)| respects_convention(&ends[a], h))
            };
            let chosen = match (ok(&forward), ok(&backward)) {
                (true, false) => forward,
                (false, true) => backward,
                (true, true) => choose_by_labels(&labels, &ends, forward, backward),
                (false, false) => {
                    return Err(DiagramError::InconsistentOrientation {
                        label: labels[start],
                    })
                }
            };
            for &(a, _) in &chosen.steps {
                visited[a] = true;
            }
            walks.push(chosen);
        }
        Diagram::from_walks(&arcs, &ends, walks, free_loops)
    }

    /// Canonical relabelling: components ordered by their smallest head
    /// port, each starting at the arc that arrives there.
    fn from_walks(
        arcs: &[[usize; 4]],
        ends: &[[Port; 2]],
        walks: Vec<Walk>,
        free_loops: usize,
    ) -> Result<Diagram, DiagramError> {
        let mut keyed: Vec<(Port, Walk)> = walks
            .into_iter()
            .map(|mut w| {
                let (k, _) = w
                    .steps
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &(a, h))| ends[a][h])
                    .unwrap();
                w.steps.rotate_left(k);
                let (a, h) = w.steps[0];
                (ends[a][h], w)
            })
            .collect();
        keyed.sort_by_key(|(k, _)| *k);
        let n_arcs = ends.len();
        let mut new_label = vec![0usize; n_arcs];
        let mut heads = vec![(0, 0); n_arcs];
        let mut tails = vec![(0, 0); n_arcs];
        let mut components = Vec::new();
        let mut next = 0;
        for (_, w) in &keyed {
            let start = next;
            for &(a, h) in &w.steps {
                new_label[a] = next;
                heads[next] = ends[a][h];
                tails[next] = ends[a][1 - h];
                next += 1;
            }
            components.push(start..next);
        }
        let crossings: Vec<[usize; 4]> = arcs.iter().map(|t| t.map(|a| new_label[a])).collect();
        let signs = (0..crossings.len())
            .map(|x| {
                if heads[crossings[x][3]] == (x, 3) {
                    1
                } else {
                    -1
                }
            })
            .collect();
        let d = Diagram {
            crossings,
            heads,
            tails,
            signs,
            components,
            free_loops,
        };
        d.check_planar()?;
        Ok(d)
    }

    /// Builds a diagram whose arc orientations are already known: `tuples`
    /// use 0-based arcs and `heads[a]` is the port where arc `a` arrives.
    fn from_oriented(
        tuples: &[[usize; 4]],
        heads: &[Port],
        free_loops: usize,
    ) -> Result<Diagram, DiagramError> {
        let mut ends: Vec<Vec<Port>> = vec![Vec::new(); heads.len()];
        for (x, t) in tuples.iter().enumerate() {
            for (p, &a) in t.iter().enumerate() {
                ends[a].push((x, p as u8));
            }
        }
        let ends: Vec<[Port; 2]> = ends.into_iter().map(|e| [e[0], e[1]]).collect();
        let mut visited = vec![false; heads.len()];
        let mut walks = Vec::new();
        for start in 0..heads.len() {
            if visited[start] {
                continue;
            }
            let h = if ends[start][0] == heads[start] { 0 } else { 1 };
            let w = walk(tuples, &ends, start, h);
            if !w
                .steps
                .iter()
                .all(|&(a, h)| respects_convention(&ends[a], h))
            {
                return Err(DiagramError::InconsistentOrientation {
                    label: start as u32 + 1,
                });
            }
            for &(a, _) in &w.steps {
                visited[a] = true;
            }
            walks.push(w);
        }
        Diagram::from_walks(tuples, &ends, walks, free_loops)
    }

    /// The crossingless unlink with `k` components.
    pub fn unlink(k: usize) -> Diagram {
        Diagram {
            crossings: Vec::new(),
            heads: Vec::new(),
            tails: Vec::new(),
            signs: Vec::new(),
            components: Vec::new(),
            free_loops: k,
        }
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let c = self.crossings.len();
        if c == 0 {
            return Ok(());
        }
        let mut parent: Vec<usize> = (0..c).collect();
        for a in 0..self.arc_count() {
            let (x, y) = (
                find(&mut parent, self.heads[a].0),
                find(&mut parent, self.tails[a].0),
            );
            parent[x] = y;
        }
        let mut crossings_per_piece: HashMap<usize, usize> = HashMap::new();
        for x in 0..c {
            *crossings_per_piece.entry(find(&mut parent, x)).or_default() += 1;
        }
        let mut faces_per_piece: HashMap<usize, usize> = HashMap::new();
        for face in self.faces() {
            *faces_per_piece
                .entry(find(&mut parent, face[0].0))
                .or_default() += 1;
        }
        for (piece, &n) in &crossings_per_piece {
            if faces_per_piece.get(piece).copied().unwrap_or(0) != n + 2 {
                return Err(DiagramError::NonPlanar);
            }
        }
        Ok(())
    }

    /// Faces of the underlying 4-valent graph as cycles of corners. Corner
    /// `(x, p)` is the region between ports `p` and `p+1` at crossing `x`.
    pub fn faces(&self) -> Vec<Vec<Port>> {
        let c = self.crossings.len();
        let mut seen = vec![[false; 4]; c];
        let mut faces = Vec::new();
        for x in 0..c {
            for p in 0..4u8 {
                if seen[x][p as usize] {
                    continue;
                }
                let mut face = Vec::new();
                let mut corner = (x, p);
                while !seen[corner.0][corner.1 as usize] {
                    seen[corner.0][corner.1 as usize] = true;
                    face.push(corner);
                    let out = (corner.0, (corner.1 + 1) % 4);
                    corner = self.other_end(self.arc_at(out), out);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Arcs on the boundary of a face, one per corner: the arc leaving the
    /// corner counterclockwise.
    pub fn face_arcs(&self, face: &[Port]) -> Vec<usize> {
        face.iter()
            .map(|&(x, p)| self.arc_at((x, (p + 1) % 4)))
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.heads.len()
    }

    /// Arcs (0-based) at crossing `x`.
    pub fn crossing(&self, x: usize) -> [usize; 4] {
        self.crossings[x]
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn arc_at(&self, (x, p): Port) -> usize {
        self.crossings[x][p as usize]
    }

    pub fn head(&self, arc: usize) -> Port {
        self.heads[arc]
    }

    pub fn tail(&self, arc: usize) -> Port {
        self.tails[arc]
    }

    /// The end of `arc` that is not `port`.
    pub fn other_end(&self, arc: usize, port: Port) -> Port {
        if self.heads[arc] == port {
            self.tails[arc]
        } else {
            self.heads[arc]
        }
    }

    pub fn sign(&self, x: usize) -> i8 {
        self.signs[x]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `p`, the number of positive crossings.
    pub fn positive(&self) -> usize {
        self.signs.iter().filter(|&&s| s > 0).count()
    }

    /// `n`, the number of negative crossings.
    pub fn negative(&self) -> usize {
        self.signs.len() - self.positive()
    }

    /// `w = p − n`.
    pub fn writhe(&self) -> i64 {
        self.positive() as i64 - self.negative() as i64
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Components with crossings, as consecutive arc ranges.
    pub fn components(&self) -> &[Range<usize>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len() + self.free_loops
    }

    pub fn component_of_arc(&self, arc: usize) -> usize {
        self.components
            .iter()
            .position(|r| r.contains(&arc))
            .expect("arc belongs to a component")
    }

    /// The arc following `arc` along the orientation.
    pub fn next_arc(&self, arc: usize) -> usize {
        let r = &self.components[self.component_of_arc(arc)];
        if arc + 1 == r.end {
            r.start
        } else {
            arc + 1
        }
    }

    pub fn all_a_state(&self) -> State {
        State::all_a(self.crossing_count())
    }

    pub fn all_b_state(&self) -> State {
        State::all_b(self.crossing_count())
    }

    /// PD tuples with 1-based arc labels.
    pub fn pd_tuples(&self) -> Vec<[u32; 4]> {
        self.crossings
            .iter()
            .map(|t| t.map(|a| a as u32 + 1))
            .collect()
    }

    /// The mirror image: every crossing switched, orientation kept.
    pub fn mirror(&self) -> Diagram {
        let shift: Vec<u8> = (0..self.crossing_count())
            .map(|x| {
                if self.heads[self.crossings[x][1]] == (x, 1) {
                    1
                } else {
                    3
                }
            })
            .collect();
        let tuples: Vec<[usize; 4]> = self
            .crossings
            .iter()
            .zip(&shift)
            .map(|(t, &r)| std::array::from_fn(|k| t[(r as usize + k) % 4]))
            .collect();
        let heads: Vec<Port> = self
            .heads
            .iter()
            .map(|&(x, p)| (x, (p + 4 - shift[x]) % 4))
            .collect();
        Diagram::from_oriented(&tuples, &heads, self.free_loops).expect("mirror of a valid diagram")
    }

    /// Reverses the orientation of the listed components (indices into
    /// [`components`](Self::components), then free loops).
    pub fn reverse_components(&self, which: &[usize]) -> Result<Diagram, DiagramError> {
        let mut reversed = vec![false; self.components.len()];
        for &k in which {
            if k >= self.component_count() {
                return Err(DiagramError::UnknownComponent(k));
            }
            if k < self.components.len() {
                reversed[k] = true;
            }
        }
        let mut heads = self.heads.clone();
        for (k, r) in self.components.iter().enumerate() {
            if reversed[k] {
                for a in r.clone() {
                    heads[a] = self.tails[a];
                }
            }
        }
        let tuples: Vec<[usize; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(x, t)| {
                if heads[t[0]] == (x, 0) {
                    *t
                } else {
                    [t[2], t[3], t[0], t[1]]
                }
            })
            .collect();
        let heads = heads
            .iter()
            .map(|&(x, p)| {
                if heads[self.crossings[x][0]] == (x, 0) {
                    (x, p)
                } else {
                    (x, (p + 2) % 4)
                }
            })
            .collect::<Vec<_>>();
        Diagram::from_oriented(&tuples, &heads, self.free_loops)
    }

    /// Reorders crossings: crossing `perm[k]` of `self` becomes crossing `k`.
    pub fn permute_crossings(&self, perm: &[usize]) -> Diagram {
        let tuples: Vec<[usize; 4]> = perm.iter().map(|&x| self.crossings[x]).collect();
        let mut position = vec![0; perm.len()];
        for (k, &x) in perm.iter().enumerate() {
            position[x] = k;
        }
        let heads: Vec<Port> = self.heads.iter().map(|&(x, p)| (position[x], p)).collect();
        Diagram::from_oriented(&tuples, &heads, self.free_loops).expect("permuted diagram")
    }

    /// Disjoint union, with `other`'s crossings after `self`'s.
    pub fn split_union(&self, other: &Diagram) -> Diagram {
        let (c, m) = (self.crossing_count(), self.arc_count());
        let tuples: Vec<[usize; 4]> = self
            .crossings
            .iter()
            .copied()
            .chain(other.crossings.iter().map(|t| t.map(|a| a + m)))
            .collect();
        let heads: Vec<Port> = self
            .heads
            .iter()
            .copied()
            .chain(other.heads.iter().map(|&(x, p)| (x + c, p)))
            .collect();
        Diagram::from_oriented(&tuples, &heads, self.free_loops + other.free_loops)
            .expect("split union")
    }

    /// Builds a diagram from 0-based tuples and arc heads; used by generators
    /// that already know the orientation.
    pub fn from_oriented_arcs(
        tuples: &[[usize; 4]],
        heads: &[Port],
        free_loops: usize,
    ) -> Result<Diagram, DiagramError> {
        if tuples.is_empty() && free_loops == 0 {
            return Err(DiagramError::EmptyDiagram);
        }
        let mut count = vec![0usize; heads.len()];
        for t in tuples {
            for &a in t {
                if a >= heads.len() {
                    return Err(DiagramError::ArcLabelNotPairedTwice {
                        label: a as u32 + 1,
                        count: 1,
                    });
                }
                count[a] += 1;
            }
        }
        if let Some(a) = count.iter().position(|&k| k != 2) {
            return Err(DiagramError::ArcLabelNotPairedTwice {
                label: a as u32 + 1,
                count: count[a],
            });
        }
        Diagram::from_oriented(tuples, heads, free_loops)
    }

    /// Traces the circles of `state` and records every chord.
    pub fn resolve(&self, state: &State) -> Result<ResolvedState, DiagramError> {
        let c = self.crossing_count();
        if state.len() != c {
            return Err(DiagramError::StateSize {
                expected: c,
                actual: state.len(),
            });
        }
        let mut circle_of = vec![usize::MAX; 2 * c];
        let mut circles = Vec::new();
        for start in 0..2 * c {
            if circle_of[start] != usize::MAX {
                continue;
            }
            let id = circles.len();
            let (endpoints, arcs) = self.trace_circle(state, start);
            for &e in &endpoints {
                circle_of[e as usize] = id;
            }
            circles.push(Circle { endpoints, arcs });
        }
        let m = self.arc_count();
        for k in 0..self.free_loops {
            circles.push(Circle {
                endpoints: Vec::new(),
                arcs: vec![m + k],
            });
        }
        let chords = (0..c)
            .map(|x| Chord {
                crossing: x,
                endpoints: [2 * x as u32, 2 * x as u32 + 1],
                label: state.label(x),
            })
            .collect();
        Ok(ResolvedState {
            circles,
            chords,
            circle_of,
        })
    }

    /// Follows the circle through chord endpoint `start`, leaving its
    /// turnback through the second port of the pair.
    fn trace_circle(&self, state: &State, start: usize) -> (Vec<u32>, Vec<usize>) {
        let mut endpoints = Vec::new();
        let mut arcs = Vec::new();
        let (mut e, mut entered_second) = (start, false);
        loop {
            endpoints.push(e as u32);
            let x = e / 2;
            let pair = state.label(x).pairs()[e % 2];
            let out = (x, if entered_second { pair[0] } else { pair[1] });
            let arc = self.arc_at(out);
            arcs.push(arc);
            let (y, q) = self.other_end(arc, out);
            let ly = state.label(y);
            let k = ly.pair_of(q);
            e = 2 * y + k;
            if e == start {
                return (endpoints, arcs);
            }
            entered_second = ly.pairs()[k][1] == q;
        }
    }

    /// Circle membership of every arc under `state` (free loops get ids
    /// `arc_count()..`), and the number of circles.
    pub fn arc_circles(&self, state: &State) -> (Vec<usize>, usize) {
        let m = self.arc_count();
        let mut parent: Vec<usize> = (0..m).collect();
        for (x, t) in self.crossings.iter().enumerate() {
            for pair in state.label(x).pairs() {
                let (a, b) = (
                    find(&mut parent, t[pair[0] as usize]),
                    find(&mut parent, t[pair[1] as usize]),
                );
                parent[a] = b;
            }
        }
        let mut ids = vec![usize::MAX; m];
        let mut root_id: HashMap<usize, usize> = HashMap::new();
        for (a, id) in ids.iter_mut().enumerate() {
            let r = find(&mut parent, a);
            let next = root_id.len();
            *id = *root_id.entry(r).or_insert(next);
        }
        let count = root_id.len();
        ids.extend(count..count + self.free_loops);
        (ids, count + self.free_loops)
    }

    /// `|s|` for a state given by its B-label mask.
    pub fn circle_count_mask(&self, mask: u64) -> usize {
        let m = self.arc_count();
        let mut parent: Vec<usize> = (0..m).collect();
        let mut merges = 0;
        for (x, t) in self.crossings.iter().enumerate() {
            let s = if mask >> x & 1 == 1 {
                Smoothing::B
            } else {
                Smoothing::A
            };
            for pair in s.pairs() {
                let (a, b) = (
                    find(&mut parent, t[pair[0] as usize]),
                    find(&mut parent, t[pair[1] as usize]),
                );
                if a != b {
                    parent[a] = b;
                    merges += 1;
                }
            }
        }
        m - merges + self.free_loops
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            pd: self.to_string(),
            crossings: self.pd_tuples(),
            signs: self.signs.clone(),
            free_loops: self.free_loops,
            components: self.component_count(),
            writhe: self.writhe(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Diagram, DiagramError> {
        Diagram::from_pd(&json.crossings, json.free_loops)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn other(ends: &[Port; 2], port: Port) -> usize {
    if ends[0] == port {
        1
    } else {
        0
    }
}

/// Follows a component from `start`, whose head is `ends[start][head]`.
fn walk(arcs: &[[usize; 4]], ends: &[[Port; 2]], start: usize, head: usize) -> Walk {
    let mut steps = Vec::new();
    let (mut a, mut h) = (start, head);
    loop {
        steps.push((a, h));
        let (x, p) = ends[a][h];
        let out = (x, (p + 2) % 4);
        let next = arcs[x][out.1 as usize];
        let next_head = other(&ends[next], out);
        if ends[next][next_head] == out && ends[next][1 - next_head] == out {
            break;
        }
        a = next;
        h = next_head;
        if a == start {
            break;
        }
    }
    Walk { steps }
}

/// Port 0 is always an incoming end and port 2 an outgoing one.
fn respects_convention(ends: &[Port; 2], head: usize) -> bool {
    ends[head].1 != 2 && ends[1 - head].1 != 0
}

/// For a component that never passes under, prefer the direction along
/// which labels increase; on a tie, the direction in which the smallest
/// label's arc arrives at its lexicographically smaller end.
fn choose_by_labels(labels: &[u32], ends: &[[Port; 2]], forward: Walk, backward: Walk) -> Walk {
    let rises = |w: &Walk| {
        let k = w.steps.len();
        let max = w.steps.iter().map(|&(a, _)| labels[a]).max().unwrap();
        let min = w.steps.iter().map(|&(a, _)| labels[a]).min().unwrap();
        (0..k)
            .filter(|&i| {
                let (a, b) = (labels[w.steps[i].0], labels[w.steps[(i + 1) % k].0]);
                b == a + 1 || (a == max && b == min)
            })
            .count()
    };
    let (f, b) = (rises(&forward), rises(&backward));
    if f != b {
        return if f > b { forward } else { backward };
    }
    let (first, h) = *forward
        .steps
        .iter()
        .min_by_key(|&&(a, _)| labels[a])
        .unwrap();
    if ends[first][h] <= ends[first][1 - h] {
        forward
    } else {
        backward
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .pd_tuples()
            .iter()
            .map(|t| format!("X({},{},{},{})", t[0], t[1], t[2], t[3]))
            .collect();
        let m = self.arc_count();
        parts.extend((0..self.free_loops).map(|k| format!("O({})", m + k + 1)));
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    /// Whitespace- or comma-separated `X(a,b,c,d)` tuples (square brackets
    /// and an enclosing `PD[...]` are accepted) plus `O` or `O(k)` for
    /// crossingless components.
    fn from_str(text: &str) -> Result<Diagram, DiagramError> {
        let mut body = text.trim();
        if let Some(rest) = body.strip_prefix("PD") {
            let rest = rest.trim();
            if (rest.starts_with('[') && rest.ends_with(']'))
                || (rest.starts_with('(') && rest.ends_with(')'))
            {
                body = &rest[1..rest.len() - 1];
            }
        }
        let mut tuples = Vec::new();
        let mut free_loops = 0;
        let chars: Vec<char> = body.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            if ch.is_whitespace() || ch == ',' || ch == ';' {
                i += 1;
                continue;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let args = if i < chars.len() && (chars[i] == '(' || chars[i] == '[') {
                let close = if chars[i] == '(' { ')' } else { ']' };
                let open = i;
                while i < chars.len() && chars[i] != close {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(DiagramError::MalformedTuple(
                        chars[start..].iter().collect(),
                    ));
                }
                i += 1;
                Some(chars[open + 1..i - 1].iter().collect::<String>())
            } else {
                None
            };
            let token: String = chars[start..i].iter().collect();
            let malformed = || DiagramError::MalformedTuple(token.clone());
            let numbers = match args.as_deref() {
                None => None,
                Some(a) => Some(
                    a.split(',')
                        .map(|s| s.trim().parse::<u32>().ok().filter(|&v| v > 0))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(malformed)?,
                ),
            };
            match (name.as_str(), numbers) {
                ("X", Some(v)) if v.len() == 4 => tuples.push([v[0], v[1], v[2], v[3]]),
                ("O", None) => free_loops += 1,
                ("O", Some(v)) if v.len() == 1 => free_loops += 1,
                _ => return Err(malformed()),
            }
        }
        Diagram::from_pd(&tuples, free_loops)
    }
}

/// A circle of a resolution: its chord endpoints in cyclic order and the
/// arcs it runs along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    pub endpoints: Vec<u32>,
    pub arcs: Vec<usize>,
}

/// The chord left behind by smoothing a crossing. Endpoint `2x` sits on
/// the turnback containing port 0, `2x + 1` on the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chord {
    pub crossing: usize,
    pub endpoints: [u32; 2],
    pub label: Smoothing,
}

/// The circles `sD` of a state together with its chords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedState {
    circles: Vec<Circle>,
    chords: Vec<Chord>,
    circle_of: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedJson {
    pub circles: Vec<Vec<u32>>,
    pub chords: Vec<Chord>,
}

impl ResolvedState {
    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    /// `|s|`.
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_of(&self, endpoint: u32) -> usize {
        self.circle_of[endpoint as usize]
    }

    /// Both ends of the chord lie on one circle.
    pub fn is_admissible(&self, chord: usize) -> bool {
        let [a, b] = self.chords[chord].endpoints;
        self.circle_of(a) == self.circle_of(b)
    }

    /// Position of an endpoint along its circle.
    pub fn position(&self, endpoint: u32) -> usize {
        let c = &self.circles[self.circle_of(endpoint)];
        c.endpoints.iter().position(|&e| e == endpoint).unwrap()
    }

    /// Two admissible chords on the same circle whose ends alternate.
    pub fn interleaved(&self, u: usize, v: usize) -> bool {
        let [a, b] = self.chords[u].endpoints;
        let [c, d] = self.chords[v].endpoints;
        let circle = self.circle_of(a);
        if [b, c, d].iter().any(|&e| self.circle_of(e) != circle) {
            return false;
        }
        let (pa, pb) = (self.position(a), self.position(b));
        let (lo, hi) = (pa.min(pb), pa.max(pb));
        let inside = |e: u32| {
            let p = self.position(e);
            lo < p && p < hi
        };
        inside(c) != inside(d)
    }

    pub fn to_json(&self) -> ResolvedJson {
        ResolvedJson {
            circles: self.circles.iter().map(|c| c.endpoints.clone()).collect(),
            chords: self.chords.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    fn pd(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_parses_with_standard_labels() {
        let d = pd(TREFOIL);
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.to_string(), TREFOIL);
        assert_eq!((d.positive(), d.negative(), d.writhe()), (0, 3, -3));
    }

    #[test]
    fn empty_text_is_rejected() {
        assert_eq!("".parse::<Diagram>(), Err(DiagramError::EmptyDiagram));
        assert_eq!("  ".parse::<Diagram>(), Err(DiagramError::EmptyDiagram));
    }

    #[test]
    fn malformed_tuples_are_rejected() {
        for bad in [
            "X(1,2,3)",
            "X(1,2,2,x)",
            "Y(1,2,2,1)",
            "X(1,2,2,1",
            "X(0,1,1,0)",
        ] {
            assert!(
                matches!(bad.parse::<Diagram>(), Err(DiagramError::MalformedTuple(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn labels_must_pair() {
        assert_eq!(
            "X(1,2,3,4)".parse::<Diagram>(),
            Err(DiagramError::ArcLabelNotPairedTwice { label: 1, count: 1 })
        );
    }

    #[test]
    fn inconsistent_orientation_is_detected() {
        // Both ends of arc 1 sit at port 0.
        let r = "X(1,2,3,4) X(1,4,3,2)".parse::<Diagram>();
        assert!(
            matches!(r, Err(DiagramError::InconsistentOrientation { .. })),
            "{r:?}"
        );
    }

    #[test]
    fn non_planar_code_is_rejected() {
        // Gauss word 1212 has no planar realization.
        assert_eq!(
            "X(3,1,4,2) X(4,2,1,3)".parse::<Diagram>(),
            Err(DiagramError::NonPlanar)
        );
    }

    #[test]
    fn kinks_of_both_signs() {
        let neg = pd("X(1,2,2,1)");
        assert_eq!(neg.signs(), &[-1]);
        let pos = pd("X(1,1,2,2)");
        assert_eq!(pos.signs(), &[1]);
        let a_neg = neg.resolve(&neg.all_a_state()).unwrap().circle_count();
        let a_pos = pos.resolve(&pos.all_a_state()).unwrap().circle_count();
        assert_eq!((a_neg, a_pos), (1, 2));
    }

    #[test]
    fn resolution_counts_match_union_find() {
        let d = pd(TREFOIL);
        for mask in 0..8u64 {
            let s = State::from_mask(3, mask);
            let r = d.resolve(&s).unwrap();
            assert_eq!(r.circle_count(), d.circle_count_mask(mask));
            assert_eq!(r.circle_count(), d.arc_circles(&s).1);
            let total: usize = r.circles().iter().map(|c| c.endpoints.len()).sum();
            assert_eq!(total, 6);
        }
        assert_eq!(d.resolve(&d.all_a_state()).unwrap().circle_count(), 3);
        assert_eq!(d.resolve(&d.all_b_state()).unwrap().circle_count(), 2);
    }

    #[test]
    fn flipping_one_label_changes_circle_count_by_one() {
        let d = pd(TREFOIL);
        for mask in 0..8u64 {
            for x in 0..3 {
                let a = d.circle_count_mask(mask) as i64;
                let b = d.circle_count_mask(mask ^ 1 << x) as i64;
                assert_eq!((a - b).abs(), 1);
            }
        }
    }

    #[test]
    fn mirror_swaps_signs_and_smoothings() {
        let d = pd(TREFOIL);
        let m = d.mirror();
        assert_eq!((m.positive(), m.negative()), (3, 0));
        assert_eq!(m.mirror(), d);
        let sb = d.resolve(&d.all_b_state()).unwrap().circle_count();
        assert_eq!(m.resolve(&m.all_a_state()).unwrap().circle_count(), sb);
    }

    #[test]
    fn reversing_one_hopf_component_flips_both_signs() {
        let hopf = pd("X(4,1,3,2) X(2,3,1,4)");
        assert_eq!(hopf.component_count(), 2);
        let r = hopf.reverse_components(&[1]).unwrap();
        assert_eq!(r.writhe(), -hopf.writhe());
        let back = r.reverse_components(&[1]).unwrap();
        assert_eq!(back.writhe(), hopf.writhe());
        assert_eq!(
            hopf.reverse_components(&[0, 1]).unwrap().writhe(),
            hopf.writhe()
        );
        assert_eq!(
            hopf.reverse_components(&[2]),
            Err(DiagramError::UnknownComponent(2))
        );
    }

    #[test]
    fn free_loops_round_trip() {
        let d = pd("O");
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.to_string(), "O(1)");
        assert_eq!(d.resolve(&d.all_a_state()).unwrap().circle_count(), 1);
        let e = pd(&format!("{TREFOIL} O(7)"));
        assert_eq!(e.to_string().parse::<Diagram>().unwrap(), e);
        assert_eq!(e.component_count(), 2);
    }

    #[test]
    fn bracket_wrapper_is_accepted() {
        let d = pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]");
        assert_eq!(d, pd(TREFOIL));
    }

    #[test]
    fn trefoil_faces() {
        let d = pd(TREFOIL);
        let faces = d.faces();
        assert_eq!(faces.len(), 5);
        assert_eq!(faces.iter().map(Vec::len).sum::<usize>(), 12);
    }

    #[test]
    fn permuting_crossings_keeps_signs() {
        let d = pd(TREFOIL);
        let p = d.permute_crossings(&[2, 0, 1]);
        assert_eq!(p.writhe(), d.writhe());
        assert_eq!(p.resolve(&p.all_a_state()).unwrap().circle_count(), 3);
    }

    #[test]
    fn split_union_adds_components() {
        let d = pd(TREFOIL);
        let u = d.split_union(&Diagram::unlink(1));
        assert_eq!(u.component_count(), 2);
        assert_eq!(u.resolve(&u.all_a_state()).unwrap().circle_count(), 4);
        let dd = d.split_union(&d);
        assert_eq!(dd.crossing_count(), 6);
        assert_eq!(dd.writhe(), -6);
    }
}
