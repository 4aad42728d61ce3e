//! Fixed-capacity bitset keyed by vertex index.

/// Set of vertex indices backed by `u64` words.
///
/// Capacity is fixed at construction; indices out of range panic in debug
/// builds the same way slice indexing does.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut set = VertexSet::new(capacity);
        for word in &mut set.words {
            *word = !0;
        }
        set.trim_tail();
        set
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        debug_assert!(index < self.capacity);
        self.words[index / 64] >> (index % 64) & 1 != 0
    }

    #[inline]
    pub fn insert(&mut self, index: usize) -> bool {
        debug_assert!(index < self.capacity);
        let word = &mut self.words[index / 64];
        let mask = 1u64 << (index % 64);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, index: usize) -> bool {
        debug_assert!(index < self.capacity);
        let word = &mut self.words[index / 64];
        let mask = 1u64 << (index % 64);
        let present = *word & mask != 0;
        *word &= !mask;
        present
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Complement within the fixed capacity.
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for word in &mut out.words {
            *word = !*word;
        }
        out.trim_tail();
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        assert_eq!(self.capacity, other.capacity);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        assert_eq!(self.capacity, other.capacity);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    /// Ascending iterator over the contained indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + tz)
            })
        })
    }

    /// Packs the set into a single word. Requires capacity at most 64.
    pub fn as_mask(&self) -> u64 {
        assert!(self.capacity <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_mask(capacity: usize, mask: u64) -> Self {
        assert!(capacity <= 64);
        let mut set = VertexSet::new(capacity);
        if !set.words.is_empty() {
            set.words[0] = mask;
            set.trim_tail();
        }
        set
    }

    fn trim_tail(&mut self) {
        let tail = self.capacity % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    /// Collects indices into a set sized to hold the largest one.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let indices: Vec<usize> = iter.into_iter().collect();
        let capacity = indices.iter().max().map_or(0, |&m| m + 1);
        let mut set = VertexSet::new(capacity);
        for index in indices {
            set.insert(index);
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_roundtrip() {
        let mut set = VertexSet::new(130);
        assert!(set.insert(0));
        assert!(set.insert(64));
        assert!(set.insert(129));
        assert!(!set.insert(64));
        assert_eq!(set.len(), 3);
        assert!(set.contains(129));
        assert!(!set.contains(128));
        assert!(set.remove(64));
        assert!(!set.remove(64));
        assert_eq!(set.iter().collect::<Vec<_>>(), vec![0, 129]);
    }

    #[test]
    fn complement_respects_capacity() {
        let mut set = VertexSet::new(70);
        set.insert(3);
        set.insert(69);
        let comp = set.complement();
        assert_eq!(comp.len(), 68);
        assert!(!comp.contains(3));
        assert!(comp.contains(0));
        assert!(comp.contains(68));
        let mut both = set.clone();
        both.union_with(&comp);
        assert_eq!(both, VertexSet::full(70));
    }

    #[test]
    fn full_and_empty() {
        let full = VertexSet::full(64);
        assert_eq!(full.len(), 64);
        assert_eq!(full.as_mask(), !0u64);
        let empty = VertexSet::new(0);
        assert!(empty.is_empty());
        assert_eq!(empty.len(), 0);
    }

    #[test]
    fn subset_and_intersection() {
        let small: VertexSet = [1usize, 5, 9].into_iter().collect();
        let mut big = small.clone();
        big.insert(7);
        assert!(small.is_subset_of(&big));
        assert!(!big.is_subset_of(&small));
        let mut inter = big.clone();
        inter.intersect_with(&small);
        assert_eq!(inter, small);
    }

    #[test]
    fn mask_roundtrip() {
        let set = VertexSet::from_mask(20, 0b1010_0001);
        assert_eq!(set.iter().collect::<Vec<_>>(), vec![0, 5, 7]);
        assert_eq!(set.as_mask(), 0b1010_0001);
        let trimmed = VertexSet::from_mask(4, 0xffff);
        assert_eq!(trimmed.len(), 4);
    }
}
