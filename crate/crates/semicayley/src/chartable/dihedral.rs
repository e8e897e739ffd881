//! Closed-form character table of the dihedral group of order 2n, odd n:
//! two linear characters and (n-1)/2 characters of degree two whose values
//! on the rotation a^k are w_n^(lk) + w_n^(-lk), zero on reflections.

use std::sync::Arc;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

use super::{Character, CharacterTable};

pub fn table(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    let order = group.order();
    if order % 2 != 0 {
        return Err(Error::NotDihedralLayout);
    }
    let n = (order / 2) as u64;
    if n < 3 || n % 2 == 0 {
        return Err(Error::DihedralEvenOrder(n));
    }
    verify_layout(group, n as usize)?;
    let m = 2 * n; // the exponent: lcm of n and 2 for odd n

    let cc = group.conjugacy_classes();
    let expected_classes = 2 + (n as usize - 1) / 2;
    if cc.count() != expected_classes {
        return Err(Error::NotDihedralLayout);
    }

    // class index of each rotation a^k and of the reflection class
    let rotation_class: Vec<usize> = (0..n as usize).map(|k| cc.class_of(k)).collect();
    let reflection_class = cc.class_of(n as usize);

    let mut characters = Vec::with_capacity(expected_classes);
    for linear_sign in [1i64, -1] {
        let values: Vec<CycNum> = (0..cc.count())
            .map(|ci| {
                if ci == reflection_class {
                    CycNum::from_int(m, linear_sign)
                } else {
                    CycNum::from_int(m, 1)
                }
            })
            .collect();
        characters.push(Character { degree: 1, values });
    }
    for l in 1..=(n - 1) / 2 {
        let mut values = vec![CycNum::zero(m); cc.count()];
        for k in 0..n {
            let ci = rotation_class[k as usize];
            // w_n^(lk) + w_n^(-lk), written in terms of w_m with w_n = w_m^2
            let fwd = CycNum::root_of_unity(m, 2 * (l * k % n));
            let bwd = CycNum::root_of_unity(m, 2 * ((n - l * k % n) % n));
            values[ci] = fwd.add(&bwd);
        }
        values[reflection_class] = CycNum::zero(m);
        characters.push(Character { degree: 2, values });
    }
    Ok(CharacterTable::from_characters(group, m, characters))
}

/// Checks the `1, a, .., a^(n-1), b, ba, .., ba^(n-1)` element order produced
/// by [`FiniteGroup::dihedral`].
fn verify_layout(group: &FiniteGroup, n: usize) -> Result<()> {
    let a = 1usize;
    let b = n;
    let ok = group.order() == 2 * n
        && group.element_order(a) == n as u64
        && group.element_order(b) == 2
        && group.element_order(group.mul(a, b)) == 2
        && (0..n).all(|i| group.power(a, i as u64) == i)
        && (0..n).all(|i| group.mul(b, group.power(a, i as u64)) == n + i);
    if ok {
        Ok(())
    } else {
        Err(Error::NotDihedralLayout)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d10_table_shape_and_values() {
        let g = Arc::new(FiniteGroup::dihedral(5).unwrap());
        let tbl = table(&g).unwrap();
        assert_eq!(tbl.len(), 4);
        assert!(tbl.check_orthogonality().is_ok());
        let degrees: Vec<u64> = tbl.characters().iter().map(|c| c.degree()).collect();
        assert_eq!(degrees, vec![1, 1, 2, 2]);
        // chi_3(a) = w_5 + w_5^4 for one of the degree-2 rows
        let m = tbl.modulus();
        assert_eq!(m, 10);
        let expected = CycNum::root_of_unity(m, 2).add(&CycNum::root_of_unity(m, 8));
        let a_class = g.conjugacy_classes().class_of(1);
        assert!(tbl
            .characters()
            .iter()
            .any(|c| c.degree() == 2 && *c.value(a_class) == expected));
        // linear rows take the values 1 and -1 on the reflection class
        let b_class = g.conjugacy_classes().class_of(5);
        let linear_values: Vec<CycNum> = tbl
            .characters()
            .iter()
            .filter(|c| c.degree() == 1)
            .map(|c| c.value(b_class).clone())
            .collect();
        assert!(linear_values.contains(&CycNum::from_int(m, 1)));
        assert!(linear_values.contains(&CycNum::from_int(m, -1)));
    }

    #[test]
    fn d6_matches_dixon_for_s3_shape() {
        let g = Arc::new(FiniteGroup::dihedral(3).unwrap());
        let tbl = table(&g).unwrap();
        assert_eq!(tbl.len(), 3);
        assert!(tbl.check_orthogonality().is_ok());
    }

    #[test]
    fn even_n_is_out_of_scope() {
        let g = Arc::new(FiniteGroup::dihedral(4).unwrap());
        assert!(matches!(table(&g), Err(Error::DihedralEvenOrder(4))));
    }

    #[test]
    fn wrong_layout_is_rejected() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        // S3 is abstractly D6 but the element order differs from the
        // dihedral presentation, which the closed form relies on
        assert!(table(&g).is_err());
    }
}
