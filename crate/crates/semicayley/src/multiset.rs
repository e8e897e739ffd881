//! Multisets of group elements and their algebra: unions, scalar dilation,
//! elementwise powers, products and the asymmetric difference.
//!
//! A multiset stores one multiplicity per element of the owning group, so
//! equality is plain componentwise comparison. Sets are multisets with all
//! multiplicities in `{0, 1}`. Mixing multisets over different groups is a
//! programmer error and panics.

use std::sync::Arc;

use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMultiset {
    group: Arc<FiniteGroup>,
    counts: Vec<u64>,
}

impl GMultiset {
    pub fn empty(group: &Arc<FiniteGroup>) -> Self {
        GMultiset {
            group: Arc::clone(group),
            counts: vec![0; group.order()],
        }
    }

    /// Set (multiplicity 1) from element indices; duplicates collapse.
    pub fn from_set(group: &Arc<FiniteGroup>, elements: &[usize]) -> Self {
        let mut s = Self::empty(group);
        for &e in elements {
            s.counts[e] = 1;
        }
        s
    }

    pub fn from_counts(group: &Arc<FiniteGroup>, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len(), group.order(), "count vector length mismatch");
        GMultiset {
            group: Arc::clone(group),
            counts,
        }
    }

    /// The full group as a set.
    pub fn full(group: &Arc<FiniteGroup>) -> Self {
        GMultiset {
            group: Arc::clone(group),
            counts: vec![1; group.order()],
        }
    }

    /// Union of the conjugacy classes with the given indices, as a set.
    pub fn from_classes(group: &Arc<FiniteGroup>, class_indices: &[usize]) -> Self {
        let cc = group.conjugacy_classes();
        let mut s = Self::empty(group);
        for &ci in class_indices {
            for &e in cc.class(ci) {
                s.counts[e] = 1;
            }
        }
        s
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn count(&self, element: usize) -> u64 {
        self.counts[element]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total size counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn is_set(&self) -> bool {
        self.counts.iter().all(|&c| c <= 1)
    }

    /// Element indices with nonzero multiplicity, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.counts.len()).filter(|&i| self.counts[i] > 0).collect()
    }

    fn check_same_group(&self, other: &GMultiset) {
        assert!(
            Arc::ptr_eq(&self.group, &other.group) || self.group == other.group,
            "multisets belong to different groups"
        );
    }

    /// Multiset union: multiplicities add.
    pub fn union(&self, other: &GMultiset) -> GMultiset {
        self.check_same_group(other);
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a + b)
            .collect();
        GMultiset {
            group: Arc::clone(&self.group),
            counts,
        }
    }

    /// `k * X`: every element repeated `k` times more.
    pub fn scale(&self, k: u64) -> GMultiset {
        GMultiset {
            group: Arc::clone(&self.group),
            counts: self.counts.iter().map(|&c| c * k).collect(),
        }
    }

    /// `XY = [xy | x in X, y in Y]`; empty if either factor is empty.
    pub fn product(&self, other: &GMultiset) -> GMultiset {
        self.check_same_group(other);
        let g = &self.group;
        let mut counts = vec![0u64; g.order()];
        for x in 0..g.order() {
            let cx = self.counts[x];
            if cx == 0 {
                continue;
            }
            for y in 0..g.order() {
                let cy = other.counts[y];
                if cy == 0 {
                    continue;
                }
                counts[g.mul(x, y)] += cx * cy;
            }
        }
        GMultiset {
            group: Arc::clone(g),
            counts,
        }
    }

    /// `X^t = [x^t | x in X]`, multiplicities carried along.
    pub fn power(&self, t: u64) -> GMultiset {
        assert!(t >= 1, "power exponent must be positive");
        let g = &self.group;
        let mut counts = vec![0u64; g.order()];
        for x in 0..g.order() {
            if self.counts[x] > 0 {
                counts[g.power(x, t)] += self.counts[x];
            }
        }
        GMultiset {
            group: Arc::clone(g),
            counts,
        }
    }

    /// Asymmetric difference: per-element `max(count_X - count_Y, 0)`.
    pub fn difference(&self, other: &GMultiset) -> GMultiset {
        self.check_same_group(other);
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.saturating_sub(b))
            .collect();
        GMultiset {
            group: Arc::clone(&self.group),
            counts,
        }
    }

    /// Elementwise inverses.
    pub fn inverse(&self) -> GMultiset {
        let g = &self.group;
        let mut counts = vec![0u64; g.order()];
        for x in 0..g.order() {
            counts[g.inv(x)] += self.counts[x];
        }
        GMultiset {
            group: Arc::clone(g),
            counts,
        }
    }

    /// True iff the multiplicity is constant on every conjugacy class.
    pub fn is_conjugate_closed(&self) -> bool {
        self.conjugate_closure_witness().is_none()
    }

    /// For a multiset that is not conjugate-closed, an element whose class
    /// carries unequal multiplicities.
    pub fn conjugate_closure_witness(&self) -> Option<usize> {
        let cc = self.group.conjugacy_classes();
        for class in cc.classes() {
            let c0 = self.counts[class[0]];
            for &e in &class[1..] {
                if self.counts[e] != c0 {
                    return Some(if self.counts[e] > c0 { e } else { class[0] });
                }
            }
        }
        None
    }

    /// Indices of the conjugacy classes meeting the support. For a
    /// conjugate-closed set this is exactly its class decomposition.
    pub fn touched_classes(&self) -> Vec<usize> {
        let cc = self.group.conjugacy_classes();
        let mut out: Vec<usize> = self.support().iter().map(|&e| cc.class_of(e)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    fn class_of(g: &Arc<FiniteGroup>, label: &str) -> GMultiset {
        let e = g.element_by_label(label).unwrap();
        let ci = g.conjugacy_classes().class_of(e);
        GMultiset::from_classes(g, &[ci])
    }

    #[test]
    fn product_of_transposition_class_with_itself() {
        let g = s3();
        let t = class_of(&g, "(12)");
        let p = t.product(&t);
        // nine ordered products: three land on the identity, three on each 3-cycle
        assert_eq!(p.count(g.identity()), 3);
        let c3 = g.element_by_label("(123)").unwrap();
        let c3i = g.element_by_label("(132)").unwrap();
        assert_eq!(p.count(c3), 3);
        assert_eq!(p.count(c3i), 3);
        assert_eq!(p.size(), 9);
    }

    #[test]
    fn empty_product_convention() {
        let g = s3();
        let t = class_of(&g, "(12)");
        let e = GMultiset::empty(&g);
        assert!(t.product(&e).is_empty());
        assert!(e.product(&t).is_empty());
    }

    #[test]
    fn product_size_multiplies() {
        let g = s3();
        let a = class_of(&g, "(12)").scale(2);
        let b = class_of(&g, "(123)");
        assert_eq!(a.product(&b).size(), a.size() * b.size());
    }

    #[test]
    fn fifth_power_fixes_nonidentity_set() {
        let g = s3();
        let full = GMultiset::full(&g);
        let nonid = full.difference(&GMultiset::from_set(&g, &[g.identity()]));
        assert_eq!(nonid.power(5), nonid);
        assert_eq!(nonid.power(1), nonid);
    }

    #[test]
    fn fifth_power_swaps_a4_three_cycle_classes() {
        let g = Arc::new(FiniteGroup::alternating(4).unwrap());
        let e = g.element_by_label("(123)").unwrap();
        let ci = g.conjugacy_classes().class_of(e);
        let x = GMultiset::from_classes(&g, &[ci]).scale(2);
        let y = x.power(5);
        assert_ne!(y, x);
        let inv_class = g.conjugacy_classes().class_of(g.inv(e));
        assert_eq!(y, GMultiset::from_classes(&g, &[inv_class]).scale(2));
    }

    #[test]
    fn difference_supports_are_disjoint() {
        let g = s3();
        let x = class_of(&g, "(12)").scale(3).union(&class_of(&g, "(123)"));
        let y = class_of(&g, "(12)").union(&GMultiset::from_set(&g, &[g.identity()]));
        let xy = x.difference(&y);
        let yx = y.difference(&x);
        for e in 0..g.order() {
            assert!(xy.count(e) == 0 || yx.count(e) == 0);
        }
        assert!(x.difference(&x).is_empty());
    }

    #[test]
    fn conjugate_closure_detection() {
        let g = s3();
        assert!(class_of(&g, "(12)").is_conjugate_closed());
        let single = GMultiset::from_set(&g, &[g.element_by_label("(12)").unwrap()]);
        assert!(!single.is_conjugate_closed());
        assert!(single.conjugate_closure_witness().is_some());
        let ab = Arc::new(FiniteGroup::abelian(&[2, 2]).unwrap());
        assert!(GMultiset::from_set(&ab, &[1, 3]).is_conjugate_closed());
    }

    #[test]
    fn closure_is_preserved_by_the_algebra() {
        let g = s3();
        let x = class_of(&g, "(12)");
        let y = class_of(&g, "(123)").scale(2);
        for z in [x.product(&y), x.power(2), x.scale(3), x.difference(&y), x.union(&y)] {
            assert!(z.is_conjugate_closed());
        }
    }

    #[test]
    fn power_composition_matches_elementwise() {
        let g = Arc::new(FiniteGroup::dihedral(6).unwrap());
        let full = GMultiset::full(&g);
        for s in 1..=4u64 {
            for t in 1..=4u64 {
                let a = full.power(s).power(t);
                let mut expected = vec![0u64; g.order()];
                for x in 0..g.order() {
                    expected[g.power(x, s * t)] += 1;
                }
                assert_eq!(a.counts(), &expected[..]);
            }
        }
    }
}
