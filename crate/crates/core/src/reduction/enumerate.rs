use crate::cost::WeightedPoint;
use crate::solvers::binomial;

/// Subsets of `0..len` of size at most `max_size`, in lexicographic order of
/// their sorted index lists: `[], [0], [0,1], ..., [0,2], ..., [1], ...`.
///
/// Two optional rules restrict the stream:
/// * color caps: entry `e` has class `classes[e]`, and a subset may hold at
///   most `caps[c]` entries of class `c`;
/// * symmetry: when entry `e` is identical to entry `e - 1`, it may only be
///   taken together with `e - 1`. Identical entries are interchangeable, so
///   this keeps one representative of every family of equivalent subsets.
#[derive(Debug, Clone)]
pub struct OutlierSubsets {
    len: usize,
    max_size: usize,
    classes: Option<(Vec<usize>, Vec<usize>)>,
    same_as_previous: Option<Vec<bool>>,
    current: Vec<usize>,
    counts: Vec<usize>,
    started: bool,
    done: bool,
}

impl OutlierSubsets {
    pub fn new(len: usize, max_size: usize) -> Self {
        OutlierSubsets {
            len,
            max_size: max_size.min(len),
            classes: None,
            same_as_previous: None,
            current: Vec::new(),
            counts: Vec::new(),
            started: false,
            done: false,
        }
    }

    /// At most `caps[c]` entries whose class is `c`.
    pub fn with_class_caps(mut self, classes: Vec<usize>, caps: Vec<usize>) -> Self {
        assert_eq!(classes.len(), self.len, "one class per entry");
        self.counts = vec![0; caps.len()];
        self.classes = Some((classes, caps));
        self
    }

    /// Skip subsets that differ from an earlier one only by swapping identical
    /// entries. Identical entries must be adjacent to be recognized.
    pub fn with_symmetry(mut self, entries: &[WeightedPoint]) -> Self {
        assert_eq!(entries.len(), self.len, "one flag per entry");
        self.same_as_previous = Some((0..entries.len()).map(|e| e > 0 && entries[e] == entries[e - 1]).collect());
        self
    }

    fn allowed(&self, e: usize) -> bool {
        if let Some((classes, caps)) = &self.classes {
            let c = classes[e];
            if self.counts[c] >= caps[c] {
                return false;
            }
        }
        if let Some(same) = &self.same_as_previous {
            if same[e] && self.current.last() != Some(&(e - 1)) {
                return false;
            }
        }
        true
    }

    fn push(&mut self, e: usize) {
        if let Some((classes, _)) = &self.classes {
            self.counts[classes[e]] += 1;
        }
        self.current.push(e);
    }

    fn pop(&mut self) -> Option<usize> {
        let e = self.current.pop()?;
        if let Some((classes, _)) = &self.classes {
            self.counts[classes[e]] -= 1;
        }
        Some(e)
    }

    fn first_allowed_from(&self, start: usize) -> Option<usize> {
        (start..self.len).find(|&e| self.allowed(e))
    }
}

impl Iterator for OutlierSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        // Extend the current subset by its smallest admissible successor.
        if self.current.len() < self.max_size {
            let start = self.current.last().map_or(0, |&e| e + 1);
            if let Some(e) = self.first_allowed_from(start) {
                self.push(e);
                return Some(self.current.clone());
            }
        }
        // Otherwise replace the last element by a larger one, backtracking.
        while let Some(last) = self.pop() {
            if let Some(e) = self.first_allowed_from(last + 1) {
                self.push(e);
                return Some(self.current.clone());
            }
        }
        self.done = true;
        None
    }
}

/// `sum_{t=0}^{m} C(len, t)`, the size of the unrestricted stream.
pub fn subset_count(len: usize, m: usize) -> u128 {
    (0..=m.min(len)).fold(0u128, |acc, t| acc.saturating_add(binomial(len, t)))
}
