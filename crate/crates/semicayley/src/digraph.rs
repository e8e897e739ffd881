//! Semi-Cayley digraphs and their exact spectra.
//!
//! `SC(G, T11, T22, T12, T21)` has vertices two copies of G; an arc runs
//! from h_1 to g_1 when g h^-1 lies in T11, and similarly for the other
//! three blocks. The digraph is quasi-abelian when all four connection sets
//! are unions of conjugacy classes; construction validates this and reports
//! a witness element on failure.
//!
//! Eigenvalues come in pairs `(chi(I1) +- sqrt(r_chi)) / (2 d_chi)`, one pair
//! per irreducible character, each side with multiplicity d_chi^2, where the
//! radicand is `r_chi = d_chi (chi(I2 \ I3) - chi(I3 \ I2))` over the three
//! auxiliary multisets I1, I2, I3.

use std::sync::Arc;

use num_complex::Complex64;

use crate::chartable::CharacterTable;
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::multiset::GMultiset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiCayleyDigraph {
    group: Arc<FiniteGroup>,
    t11: GMultiset,
    t22: GMultiset,
    t12: GMultiset,
    t21: GMultiset,
}

/// The auxiliary multisets of the eigenvalue formula:
/// `I1 = T11 u T22`, `I2 = T11 T11 u T22 T22 u 4*(T12 T21)`, `I3 = 2*(T11 T22)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMultisets {
    pub i1: GMultiset,
    pub i2: GMultiset,
    pub i3: GMultiset,
}

impl IMultisets {
    /// `I2 \ I3` and `I3 \ I2`; their supports are disjoint.
    pub fn differences(&self) -> (GMultiset, GMultiset) {
        (self.i2.difference(&self.i3), self.i3.difference(&self.i2))
    }
}

/// The eigenvalue pair attached to one irreducible character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalEigenvalue {
    /// Index into the character table rows.
    pub char_index: usize,
    /// d_chi.
    pub degree: u64,
    /// chi(I1), the rational part of the pair (before division by 2d).
    pub trace_part: CycNum,
    /// The radicand under the square root.
    pub radicand: CycNum,
}

impl RadicalEigenvalue {
    /// Each of the two eigenvalues carries multiplicity d^2.
    pub fn multiplicity_per_sign(&self) -> u64 {
        self.degree * self.degree
    }

    /// Zero radicand collapses the pair into one eigenvalue of multiplicity 2 d^2.
    pub fn is_collapsed(&self) -> bool {
        self.radicand.is_zero()
    }

    /// Sum of the pair: chi(I1) / d.
    pub fn pair_sum(&self) -> CycNum {
        self.trace_part
            .div(&CycNum::from_int(self.trace_part.modulus(), self.degree as i64))
    }

    /// Product of the pair: (chi(I1)^2 - r) / (4 d^2).
    pub fn pair_product(&self) -> CycNum {
        let m = self.trace_part.modulus();
        let num = self.trace_part.square().sub(&self.radicand);
        num.div(&CycNum::from_int(m, 4 * (self.degree * self.degree) as i64))
    }

    /// Numeric pair under the principal embedding. The `+` branch is the one
    /// with nonnegative imaginary part, then larger real part; this is a
    /// display convention only.
    pub fn approx_pair(&self) -> (Complex64, Complex64) {
        let a = self.trace_part.to_complex();
        let r = self.radicand.to_complex();
        let mut s = r.sqrt();
        if s.im < 0.0 || (s.im == 0.0 && s.re < 0.0) {
            s = -s;
        }
        let d = 2.0 * self.degree as f64;
        ((a + s) / d, (a - s) / d)
    }
}

impl SemiCayleyDigraph {
    /// Validates that all four connection sets are conjugate-closed sets
    /// over the same group.
    pub fn new(
        group: &Arc<FiniteGroup>,
        t11: GMultiset,
        t22: GMultiset,
        t12: GMultiset,
        t21: GMultiset,
    ) -> Result<Self> {
        for (name, set) in [("T11", &t11), ("T22", &t22), ("T12", &t12), ("T21", &t21)] {
            assert!(
                Arc::ptr_eq(set.group(), group) || **set.group() == **group,
                "{name} belongs to a different group"
            );
            assert!(set.is_set(), "{name} must have multiplicities 0/1");
            if let Some(witness) = set.conjugate_closure_witness() {
                let cc = group.conjugacy_classes();
                let class = cc.class(cc.class_of(witness));
                let present = class.iter().find(|&&e| set.count(e) > 0).copied();
                let missing = class.iter().find(|&&e| set.count(e) == 0).copied();
                return Err(Error::NotConjugateClosed {
                    set: name.to_string(),
                    witness: group.label(present.unwrap_or(witness)).to_string(),
                    missing: group.label(missing.unwrap_or(witness)).to_string(),
                });
            }
        }
        Ok(SemiCayleyDigraph {
            group: Arc::clone(group),
            t11,
            t22,
            t12,
            t21,
        })
    }

    /// Builds from explicit element index lists.
    pub fn from_element_sets(
        group: &Arc<FiniteGroup>,
        t11: &[usize],
        t22: &[usize],
        t12: &[usize],
        t21: &[usize],
    ) -> Result<Self> {
        Self::new(
            group,
            GMultiset::from_set(group, t11),
            GMultiset::from_set(group, t22),
            GMultiset::from_set(group, t12),
            GMultiset::from_set(group, t21),
        )
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn t11(&self) -> &GMultiset {
        &self.t11
    }
    pub fn t22(&self) -> &GMultiset {
        &self.t22
    }
    pub fn t12(&self) -> &GMultiset {
        &self.t12
    }
    pub fn t21(&self) -> &GMultiset {
        &self.t21
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.group.order()
    }

    pub fn i_multisets(&self) -> IMultisets {
        let i1 = self.t11.union(&self.t22);
        let i2 = self
            .t11
            .product(&self.t11)
            .union(&self.t22.product(&self.t22))
            .union(&self.t12.product(&self.t21).scale(4));
        let i3 = self.t11.product(&self.t22).scale(2);
        IMultisets { i1, i2, i3 }
    }

    /// One radical eigenvalue pair per irreducible character.
    pub fn eigenvalues(&self, table: &CharacterTable) -> Result<Vec<RadicalEigenvalue>> {
        if !Arc::ptr_eq(table.group(), &self.group) && **table.group() != *self.group {
            return Err(Error::TableGroupMismatch);
        }
        let i = self.i_multisets();
        let (i2d, i3d) = i.differences();
        let m = table.modulus();
        let mut out = Vec::with_capacity(table.len());
        for (idx, chi) in table.characters().iter().enumerate() {
            let trace_part = table.evaluate(idx, &i.i1)?;
            let diff = table.evaluate(idx, &i2d)?.sub(&table.evaluate(idx, &i3d)?);
            let radicand = diff.mul(&CycNum::from_int(m, chi.degree() as i64));
            out.push(RadicalEigenvalue {
                char_index: idx,
                degree: chi.degree(),
                trace_part,
                radicand,
            });
        }
        Ok(out)
    }

    /// Dense 0/1 adjacency matrix; vertices are ordered `g_1` block first
    /// (group element order), then the `g_2` block.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.group.order();
        let mut a = vec![vec![0i64; 2 * n]; 2 * n];
        for h in 0..n {
            for g in 0..n {
                let x = self.group.mul(g, self.group.inv(h));
                if self.t11.count(x) > 0 {
                    a[h][g] = 1;
                }
                if self.t22.count(x) > 0 {
                    a[n + h][n + g] = 1;
                }
                if self.t12.count(x) > 0 {
                    a[h][n + g] = 1;
                }
                if self.t21.count(x) > 0 {
                    a[n + h][g] = 1;
                }
            }
        }
        a
    }

    /// Undirected iff `T11 = T11^-1`, `T22 = T22^-1` and `T12^-1 = T21`.
    pub fn is_undirected(&self) -> bool {
        self.t11 == self.t11.inverse()
            && self.t22 == self.t22.inverse()
            && self.t12.inverse() == self.t21
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    fn paper_s3_digraph(g: &Arc<FiniteGroup>) -> SemiCayleyDigraph {
        let cc = g.conjugacy_classes();
        let transpositions = cc.class_of(g.element_by_label("(12)").unwrap());
        let three_cycles = cc.class_of(g.element_by_label("(123)").unwrap());
        let t = GMultiset::from_classes(g, &[transpositions]);
        let r = GMultiset::from_classes(g, &[three_cycles]);
        SemiCayleyDigraph::new(g, t.clone(), r, t.clone(), t).unwrap()
    }

    #[test]
    fn s3_example_i_multisets() {
        let g = s3();
        let gamma = paper_s3_digraph(&g);
        let i = gamma.i_multisets();
        // I1 = everything but the identity
        assert_eq!(i.i1.count(0), 0);
        assert_eq!(i.i1.size(), 5);
        // I2 = [17*1, 16*(123), 16*(132)]
        assert_eq!(i.i2.count(0), 17);
        assert_eq!(i.i2.count(g.element_by_label("(123)").unwrap()), 16);
        assert_eq!(i.i2.count(g.element_by_label("(132)").unwrap()), 16);
        assert_eq!(i.i2.count(g.element_by_label("(12)").unwrap()), 0);
        // I3 = [4*(12), 4*(13), 4*(23)]
        assert_eq!(i.i3.count(g.element_by_label("(12)").unwrap()), 4);
        assert_eq!(i.i3.size(), 12);
        // disjoint supports: differences return the originals
        let (a, b) = i.differences();
        assert_eq!(a, i.i2);
        assert_eq!(b, i.i3);
    }

    #[test]
    fn s3_example_radicands() {
        let g = s3();
        let gamma = paper_s3_digraph(&g);
        let tbl = CharacterTable::for_group(&g).unwrap();
        let eigen = gamma.eigenvalues(&tbl).unwrap();
        let mut radicands: Vec<CycNum> = eigen.iter().map(|e| e.radicand.clone()).collect();
        radicands.sort_by_key(|r| r.as_rational().unwrap());
        let expected: Vec<CycNum> = [4i64, 37, 61]
            .iter()
            .map(|&v| CycNum::from_int(6, v))
            .collect();
        assert_eq!(radicands, expected);
        // total multiplicity is 2|G|
        let total: u64 = eigen.iter().map(|e| 2 * e.multiplicity_per_sign()).sum();
        assert_eq!(total, 12);
    }

    #[test]
    fn adjacency_block_degrees() {
        let g = s3();
        let gamma = paper_s3_digraph(&g);
        let a = gamma.adjacency_matrix();
        // out-degrees: |T11| + |T12| = 6 on the first block,
        // |T21| + |T22| = 5 on the second
        for h in 0..6 {
            assert_eq!(a[h].iter().sum::<i64>(), 6);
            assert_eq!(a[6 + h].iter().sum::<i64>(), 5);
        }
        // no loops: identity absent from T11 and T22
        assert!((0..12).all(|v| a[v][v] == 0));
    }

    #[test]
    fn undirected_detection() {
        let g = s3();
        assert!(paper_s3_digraph(&g).is_undirected());
        let empty = GMultiset::empty(&g);
        let gamma = SemiCayleyDigraph::new(&g, empty.clone(), empty.clone(), empty.clone(), empty)
            .unwrap();
        assert!(gamma.is_undirected());
        // A4 example from the paper is directed
        let a4 = Arc::new(FiniteGroup::alternating(4).unwrap());
        let cc = a4.conjugacy_classes();
        let b = a4.element_by_label("(123)").unwrap();
        let bc = GMultiset::from_classes(&a4, &[cc.class_of(b)]);
        let binv = GMultiset::from_classes(&a4, &[cc.class_of(a4.inv(b))]);
        let one = GMultiset::from_set(&a4, &[a4.identity()]);
        let gamma = SemiCayleyDigraph::new(&a4, bc.clone(), bc, binv, one).unwrap();
        assert!(!gamma.is_undirected());
    }

    #[test]
    fn rejects_split_classes_with_witness() {
        let g = s3();
        let partial = GMultiset::from_set(&g, &[g.element_by_label("(12)").unwrap()]);
        let empty = GMultiset::empty(&g);
        let err = SemiCayleyDigraph::new(&g, partial, empty.clone(), empty.clone(), empty)
            .unwrap_err();
        match err {
            Error::NotConjugateClosed { set, .. } => assert_eq!(set, "T11"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn trace_identity_against_adjacency() {
        // sum over characters of d * chi(I1) equals the adjacency trace
        let g = Arc::new(FiniteGroup::dihedral(5).unwrap());
        let cc = g.conjugacy_classes();
        let rot = GMultiset::from_classes(&g, &[cc.class_of(1), cc.class_of(2)]);
        let refl = GMultiset::from_classes(&g, &[cc.class_of(5)]);
        let with_id = GMultiset::from_set(&g, &[0]).union(&rot);
        let gamma = SemiCayleyDigraph::new(&g, with_id, refl.clone(), refl.clone(), refl).unwrap();
        let tbl = CharacterTable::for_group(&g).unwrap();
        let eigen = gamma.eigenvalues(&tbl).unwrap();
        let mut sum = CycNum::zero(tbl.modulus());
        for e in &eigen {
            sum = sum.add(&e.trace_part.mul_int(e.degree as i64));
        }
        let a = gamma.adjacency_matrix();
        let trace: i64 = (0..a.len()).map(|v| a[v][v]).sum();
        assert_eq!(sum, CycNum::from_int(tbl.modulus(), trace));
    }
}
