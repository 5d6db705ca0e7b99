/// Sparse real vector with strictly ascending term ids.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
    normalized: bool,
}

impl SparseVector {
    /// Panics (debug) if ids are not strictly ascending or a weight is not
    /// finite.
    pub fn from_sorted(entries: Vec<(u32, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1.is_finite()));
        Self {
            entries,
            normalized: false,
        }
    }

    /// Builds from unsorted pairs, summing duplicate ids.
    pub fn from_pairs(mut pairs: Vec<(u32, f64)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(u32, f64)> = Vec::with_capacity(pairs.len());
        for (id, w) in pairs {
            match entries.last_mut() {
                Some(last) if last.0 == id => last.1 += w,
                _ => entries.push((id, w)),
            }
        }
        Self::from_sorted(entries)
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn get(&self, id: u32) -> f64 {
        self.entries
            .binary_search_by_key(&id, |e| e.0)
            .map_or(0.0, |i| self.entries[i].1)
    }

    pub fn squared_norm(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w * w).sum()
    }

    pub fn norm(&self) -> f64 {
        self.squared_norm().sqrt()
    }

    /// Unit L2 norm; the zero vector stays zero.
    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        if norm > 0.0 {
            for e in &mut self.entries {
                e.1 /= norm;
            }
        }
        self.normalized = true;
        self
    }

    pub fn dot(&self, other: &SparseVector) -> f64 {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j, mut sum) = (0, 0, 0.0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    sum += a[i].1 * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        sum
    }

    /// Dot product with a dense vector; ids beyond its length contribute 0.
    pub fn dot_dense(&self, dense: &[f64]) -> f64 {
        self.entries
            .iter()
            .map(|&(id, w)| dense.get(id as usize).map_or(0.0, |d| d * w))
            .sum()
    }

    pub fn max_id(&self) -> Option<u32> {
        self.entries.last().map(|e| e.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_vec() -> impl Strategy<Value = SparseVector> {
        proptest::collection::vec((0u32..50, -10.0f64..10.0), 0..20).prop_map(SparseVector::from_pairs)
    }

    proptest! {
        #[test]
        fn normalized_has_unit_norm_or_is_zero(v in arb_vec()) {
            let n = v.clone().normalized();
            if v.norm() > 0.0 {
                prop_assert!((n.norm() - 1.0).abs() < 1e-9);
            } else {
                prop_assert_eq!(n.norm(), 0.0);
            }
            prop_assert!(n.entries().windows(2).all(|w| w[0].0 < w[1].0));
        }

        #[test]
        fn sparse_dot_matches_dense(a in arb_vec(), b in arb_vec()) {
            let mut dense = vec![0.0; 50];
            for (id, w) in b.iter() {
                dense[id as usize] = w;
            }
            prop_assert!((a.dot(&b) - a.dot_dense(&dense)).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_vector_stays_zero() {
        let z = SparseVector::default().normalized();
        assert_eq!(z.nnz(), 0);
        assert!(z.is_normalized());
    }
}
