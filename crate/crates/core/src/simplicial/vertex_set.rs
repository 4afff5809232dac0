use std::cmp::Ordering;
use std::fmt;

/// Largest ground set a [`VertexSet`] can index.
pub const MAX_VERTICES: usize = 128;

/// A subset of an ordered ground set, stored as a bitmask (bit `k` is the
/// `k`-th ground vertex).
///
/// Sets are ordered by cardinality first and then lexicographically by the
/// ground ordering, which is the basis order used for every cochain group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u128 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u128 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u128 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Shifts every member up by `offset` positions.
    pub fn shifted(self, offset: usize) -> Self {
        if self.0 == 0 {
            return self;
        }
        assert!(
            128 - self.0.leading_zeros() as usize + offset <= MAX_VERTICES,
            "vertex set overflow"
        );
        VertexSet(self.0 << offset)
    }

    /// Number of members strictly greater than `v`.
    pub fn count_after(self, v: usize) -> usize {
        if v + 1 >= MAX_VERTICES {
            0
        } else {
            (self.0 >> (v + 1)).count_ones() as usize
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 >> diff.trailing_zeros() & 1 == 1 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn order_is_size_then_lexicographic() {
        let mut faces = vec![
            set(&[1, 3]),
            set(&[0, 5]),
            set(&[0, 2]),
            set(&[4]),
            set(&[]),
            set(&[0, 2, 4]),
        ];
        faces.sort();
        assert_eq!(
            faces,
            vec![
                set(&[]),
                set(&[4]),
                set(&[0, 2]),
                set(&[0, 5]),
                set(&[1, 3]),
                set(&[0, 2, 4])
            ]
        );
    }

    #[test]
    fn counting_and_shifting() {
        let s = set(&[0, 2, 5]);
        assert_eq!(s.count_after(2), 1);
        assert_eq!(s.count_after(0), 2);
        assert_eq!(s.shifted(3), set(&[3, 5, 8]));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(VertexSet::full(128).len(), 128);
    }
}
