//! Exact irreducible character tables.
//!
//! Every value is a [`CycNum`] over Q(w_m) with m the group exponent, stored
//! per conjugacy class. Abelian groups get their table from a primary
//! decomposition, odd dihedral groups from the closed form, and everything
//! else from the Dixon engine (simultaneous eigenvectors of the class
//! matrices over a prime field, lifted to exact cyclotomic values). Rows are
//! canonicalized by degree, then by coefficient order, so equal tables
//! compare equal componentwise.

pub mod abelian;
pub mod dihedral;
mod dixon;

use std::sync::Arc;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::multiset::GMultiset;

/// One irreducible character: degree plus a value at each class representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    degree: u64,
    values: Vec<CycNum>,
}

impl Character {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Value on class `i`.
    pub fn value(&self, class_index: usize) -> &CycNum {
        &self.values[class_index]
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    modulus: u64,
    characters: Vec<Character>,
}

impl CharacterTable {
    /// Chooses an engine: the closed form for abelian groups, Dixon otherwise.
    pub fn for_group(group: &Arc<FiniteGroup>) -> Result<Self> {
        if group.is_abelian() {
            Self::abelian(group)
        } else {
            Self::dixon(group)
        }
    }

    pub fn abelian(group: &Arc<FiniteGroup>) -> Result<Self> {
        abelian::table(group)
    }

    /// Closed-form table of the dihedral group of order 2n, odd n >= 3,
    /// for a group built with [`FiniteGroup::dihedral`] element order.
    pub fn dihedral(group: &Arc<FiniteGroup>) -> Result<Self> {
        dihedral::table(group)
    }

    pub fn dixon(group: &Arc<FiniteGroup>) -> Result<Self> {
        dixon::table(group)
    }

    pub(crate) fn from_characters(
        group: &Arc<FiniteGroup>,
        modulus: u64,
        mut characters: Vec<Character>,
    ) -> Self {
        characters.sort_by(|a, b| {
            a.degree
                .cmp(&b.degree)
                .then_with(|| compare_value_rows(&a.values, &b.values))
        });
        CharacterTable {
            group: Arc::clone(group),
            modulus,
            characters,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// The cyclotomic modulus of the values: the group exponent.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Row index of the trivial character (all values 1). Canonical sorting
    /// does not pin it to row zero.
    pub fn index_of_trivial(&self) -> usize {
        self.characters
            .iter()
            .position(|c| c.degree == 1 && c.values.iter().all(|v| v.is_one()))
            .expect("every table contains the trivial character")
    }

    /// Sum of a character over a conjugate-closed multiset:
    /// `chi(X) = sum over x of count(x) chi(x)`, with `chi(empty) = 0`.
    pub fn evaluate(&self, char_index: usize, x: &GMultiset) -> Result<CycNum> {
        if !Arc::ptr_eq(x.group(), &self.group) && **x.group() != *self.group {
            return Err(Error::TableGroupMismatch);
        }
        if let Some(w) = x.conjugate_closure_witness() {
            return Err(Error::MultisetNotClassClosed { witness: w });
        }
        let cc = self.group.conjugacy_classes();
        let chi = &self.characters[char_index];
        let mut acc = CycNum::zero(self.modulus);
        for (ci, class) in cc.classes().iter().enumerate() {
            let mult = x.count(class[0]);
            if mult == 0 {
                continue;
            }
            let total = mult * class.len() as u64;
            acc = acc.add(&chi.values[ci].mul_rat(&num_rational::BigRational::from(
                num_bigint::BigInt::from(total),
            )));
        }
        Ok(acc)
    }

    /// Exact first and second orthogonality relations plus the degree sum.
    pub fn check_orthogonality(&self) -> OrthogonalityReport {
        let cc = self.group.conjugacy_classes();
        let n = self.group.order() as i64;
        let r = self.characters.len();
        let mut report = OrthogonalityReport::default();

        report.class_count_matches = r == cc.count();
        let degree_sq_sum: u64 = self.characters.iter().map(|c| c.degree * c.degree).sum();
        report.degree_sum_ok = degree_sq_sum == self.group.order() as u64;

        let conj: Vec<Vec<CycNum>> = self
            .characters
            .iter()
            .map(|c| c.values.iter().map(|v| v.conjugate()).collect())
            .collect();
        for i in 0..r {
            for j in i..r {
                let mut acc = CycNum::zero(self.modulus);
                for (ci, class) in cc.classes().iter().enumerate() {
                    let term = self.characters[i].values[ci].mul(&conj[j][ci]);
                    acc = acc.add(&term.mul_int(class.len() as i64));
                }
                let expected = if i == j { n } else { 0 };
                if acc != CycNum::from_int(self.modulus, expected) {
                    report.row_failures.push((i, j));
                }
            }
        }
        for gi in 0..cc.count() {
            for gj in gi..cc.count() {
                let mut acc = CycNum::zero(self.modulus);
                for chi in 0..r {
                    let term =
                        self.characters[chi].values[gi].mul(&conj[chi][gj]);
                    acc = acc.add(&term);
                }
                let expected = if gi == gj {
                    n / cc.class(gi).len() as i64
                } else {
                    0
                };
                if acc != CycNum::from_int(self.modulus, expected) {
                    report.column_failures.push((gi, gj));
                }
            }
        }
        report
    }
}

fn compare_value_rows(a: &[CycNum], b: &[CycNum]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        for (cx, cy) in x.coeffs().iter().zip(y.coeffs().iter()) {
            match cx.cmp(cy) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
    }
    std::cmp::Ordering::Equal
}

/// Outcome of the exact orthogonality checks.
#[derive(Debug, Default, Clone)]
pub struct OrthogonalityReport {
    pub row_failures: Vec<(usize, usize)>,
    pub column_failures: Vec<(usize, usize)>,
    pub degree_sum_ok: bool,
    pub class_count_matches: bool,
}

impl OrthogonalityReport {
    pub fn is_ok(&self) -> bool {
        self.row_failures.is_empty()
            && self.column_failures.is_empty()
            && self.degree_sum_ok
            && self.class_count_matches
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::GMultiset;

    #[test]
    fn s3_table_matches_the_classical_one() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let tbl = CharacterTable::for_group(&g).unwrap();
        assert_eq!(tbl.len(), 3);
        let degrees: Vec<u64> = tbl.characters().iter().map(|c| c.degree()).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        assert!(tbl.check_orthogonality().is_ok());
        // classes are ordered: 1, (12)-class, (123)-class
        let rows: Vec<Vec<CycNum>> = tbl
            .characters()
            .iter()
            .map(|c| c.values().to_vec())
            .collect();
        let int = |v: i64| CycNum::from_int(6, v);
        assert!(rows.contains(&vec![int(1), int(1), int(1)]));
        assert!(rows.contains(&vec![int(1), int(-1), int(1)]));
        assert!(rows.contains(&vec![int(2), int(0), int(-1)]));
    }

    #[test]
    fn character_sums_over_multisets() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let tbl = CharacterTable::for_group(&g).unwrap();
        let full = GMultiset::full(&g);
        let nonid = full.difference(&GMultiset::from_set(&g, &[0]));
        // trivial character sums the sizes
        assert_eq!(
            tbl.evaluate(tbl.index_of_trivial(), &nonid).unwrap(),
            CycNum::from_int(6, 5)
        );
        // empty multiset gives zero
        assert!(tbl.evaluate(2, &GMultiset::empty(&g)).unwrap().is_zero());
        // non-closed multisets are rejected
        let single = GMultiset::from_set(&g, &[g.element_by_label("(12)").unwrap()]);
        assert!(matches!(
            tbl.evaluate(0, &single),
            Err(Error::MultisetNotClassClosed { .. })
        ));
    }

    #[test]
    fn lemma_two_one_products() {
        // chi(AB) = chi(A) chi(B) / degree, exactly, for conjugate-closed A, B
        for g in [
            Arc::new(FiniteGroup::symmetric(4).unwrap()),
            Arc::new(FiniteGroup::alternating(4).unwrap()),
            Arc::new(FiniteGroup::dihedral(5).unwrap()),
        ] {
            let tbl = CharacterTable::for_group(&g).unwrap();
            let a = GMultiset::from_classes(&g, &[1]).scale(2);
            let b = GMultiset::from_classes(&g, &[1, 2]);
            let ab = a.product(&b);
            for i in 0..tbl.len() {
                let lhs = tbl.evaluate(i, &ab).unwrap();
                let rhs = tbl
                    .evaluate(i, &a)
                    .unwrap()
                    .mul(&tbl.evaluate(i, &b).unwrap())
                    .div(&CycNum::from_int(
                        tbl.modulus(),
                        tbl.characters()[i].degree() as i64,
                    ));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
