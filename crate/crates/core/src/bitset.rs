use alloc::vec::Vec;

/// Set of small indices. Storage never has trailing zero words, so the
/// derived comparisons are set comparisons.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new() -> Self {
        BitSet { words: Vec::new() }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = BitSet::new();
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }

    fn grow(&mut self, i: usize) {
        let w = i / 64 + 1;
        if self.words.len() < w {
            self.words.resize(w, 0);
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.grow(i);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| self.words.get(i).copied().unwrap_or(0) & other.words.get(i).copied().unwrap_or(0))
            .collect();
        BitSet { words }.trimmed()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w & (1u64 << b) != 0).map(move |b| wi * 64 + b)
        })
    }

    fn trimmed(mut self) -> BitSet {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
        self
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = BitSet::default();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn basic_ops() {
        let a: BitSet = [1, 3, 70].into_iter().collect();
        let b: BitSet = [3, 70, 71].into_iter().collect();
        assert!(a.contains(70) && !a.contains(2));
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![3, 70]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(BitSet::full(65).len(), 65);
        let mut c = BitSet::new();
        c.insert(100);
        assert_ne!(c.intersection(&a), c);
        assert_eq!(c.intersection(&a), BitSet::new());
    }
}
