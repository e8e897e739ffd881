//! Character tables of abelian groups.
//!
//! The group is split into a direct product of cyclic subgroups, one prime at
//! a time: inside each Sylow subgroup a basis is grown greedily by picking an
//! element of maximal order in the current quotient and correcting it inside
//! its coset so its order matches the coset order. The |G| linear characters
//! then come from the dual basis.

use std::sync::Arc;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

use super::{Character, CharacterTable};

pub fn table(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = group.order();
    let m = group.exponent();
    let basis = abelian_basis(group);
    let orders: Vec<u64> = basis.iter().map(|&(_, o)| o).collect();

    // exponent tuple of every element relative to the basis
    let mut tuple_of = vec![None::<Vec<u64>>; n];
    let mut counter = vec![0u64; basis.len()];
    loop {
        let mut e = group.identity();
        for (&(b, _), &k) in basis.iter().zip(counter.iter()) {
            e = group.mul(e, group.power(b, k));
        }
        assert!(
            tuple_of[e].is_none(),
            "basis is not independent (duplicate element reached)"
        );
        tuple_of[e] = Some(counter.clone());
        if !increment(&mut counter, &orders) {
            break;
        }
    }
    assert!(
        tuple_of.iter().all(|t| t.is_some()),
        "basis does not generate the group"
    );

    let cc = group.conjugacy_classes();
    debug_assert_eq!(cc.count(), n);
    let mut characters = Vec::with_capacity(n);
    let mut char_tuple = vec![0u64; basis.len()];
    loop {
        let values: Vec<CycNum> = (0..cc.count())
            .map(|ci| {
                let rep = cc.representative(ci);
                let e = tuple_of[rep].as_ref().unwrap();
                let mut exp = 0u64;
                for ((&j, &k), &o) in char_tuple.iter().zip(e.iter()).zip(orders.iter()) {
                    exp = (exp + j * k % m * (m / o)) % m;
                }
                CycNum::root_of_unity(m, exp)
            })
            .collect();
        characters.push(Character { degree: 1, values });
        if !increment(&mut char_tuple, &orders) {
            break;
        }
    }
    Ok(CharacterTable::from_characters(group, m, characters))
}

fn increment(counter: &mut [u64], radix: &[u64]) -> bool {
    for i in (0..counter.len()).rev() {
        counter[i] += 1;
        if counter[i] < radix[i] {
            return true;
        }
        counter[i] = 0;
    }
    false
}

/// Independent generators `(element, order)` with `G` the direct product of
/// the cyclic groups they generate. The trivial group yields an empty basis.
fn abelian_basis(group: &Arc<FiniteGroup>) -> Vec<(usize, u64)> {
    let n = group.order() as u64;
    let mut basis: Vec<(usize, u64)> = Vec::new();
    let mut q = 2u64;
    let mut remaining = n;
    while remaining > 1 {
        if remaining % q == 0 {
            while remaining % q == 0 {
                remaining /= q;
            }
            basis.extend(sylow_basis(group, q));
        }
        q += 1;
    }
    basis
}

fn sylow_basis(group: &Arc<FiniteGroup>, q: u64) -> Vec<(usize, u64)> {
    let sylow: Vec<usize> = (0..group.order())
        .filter(|&e| {
            let o = group.element_order(e);
            o == 1 || is_power_of(o, q)
        })
        .collect();
    let target = sylow.len();

    let mut basis = Vec::new();
    let mut subgroup = vec![group.identity()];
    while subgroup.len() < target {
        // element with maximal coset order in the quotient by `subgroup`
        let (&x, coset_order) = sylow
            .iter()
            .map(|e| (e, coset_order(group, *e, &subgroup, q)))
            .max_by_key(|&(_, o)| o)
            .expect("sylow subgroup is nonempty");
        // correct inside the coset so the element order equals the coset order
        let adjusted = subgroup
            .iter()
            .map(|&h| group.mul(x, h))
            .find(|&y| group.element_order(y) == coset_order)
            .expect("coset contains an element of the coset order");
        basis.push((adjusted, coset_order));
        subgroup = closure(group, &subgroup, adjusted);
    }
    basis
}

fn is_power_of(mut o: u64, q: u64) -> bool {
    while o % q == 0 {
        o /= q;
    }
    o == 1
}

/// Least power q^c with x^(q^c) inside the subgroup.
fn coset_order(group: &FiniteGroup, x: usize, subgroup: &[usize], q: u64) -> u64 {
    let mut power = x;
    let mut order = 1u64;
    while !subgroup.contains(&power) {
        power = group.power(power, q);
        order *= q;
    }
    order
}

fn closure(group: &FiniteGroup, subgroup: &[usize], new_element: usize) -> Vec<usize> {
    let mut elements: Vec<usize> = subgroup.to_vec();
    let mut seen: Vec<bool> = {
        let mut v = vec![false; group.order()];
        for &e in subgroup {
            v[e] = true;
        }
        v
    };
    let mut power = new_element;
    let mut cosets = vec![group.identity()];
    while power != group.identity() {
        cosets.push(power);
        power = group.mul(power, new_element);
    }
    for &c in &cosets[1..] {
        for &h in subgroup {
            let e = group.mul(h, c);
            if !seen[e] {
                seen[e] = true;
                elements.push(e);
            }
        }
    }
    elements.sort_unstable();
    elements
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_three_characters() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let tbl = table(&g).unwrap();
        assert_eq!(tbl.len(), 3);
        assert!(tbl.check_orthogonality().is_ok());
        // values are cube roots of unity; the nontrivial rows contain w_3
        let omega = CycNum::root_of_unity(3, 1);
        let hits = tbl
            .characters()
            .iter()
            .flat_map(|c| c.values())
            .filter(|v| **v == omega)
            .count();
        assert_eq!(hits, 2);
    }

    #[test]
    fn klein_four_group_is_all_signs() {
        let g = Arc::new(FiniteGroup::abelian(&[2, 2]).unwrap());
        let tbl = table(&g).unwrap();
        assert_eq!(tbl.len(), 4);
        for c in tbl.characters() {
            for v in c.values() {
                assert!(
                    *v == CycNum::from_int(2, 1) || *v == CycNum::from_int(2, -1),
                    "got {v}"
                );
            }
        }
        assert!(tbl.check_orthogonality().is_ok());
    }

    #[test]
    fn trivial_group() {
        let g = Arc::new(FiniteGroup::cyclic(1).unwrap());
        let tbl = table(&g).unwrap();
        assert_eq!(tbl.len(), 1);
        assert_eq!(tbl.characters()[0].degree(), 1);
    }

    #[test]
    fn mixed_torsion_orthogonality() {
        for factors in [vec![2u64, 4], vec![3, 3], vec![2, 2, 3], vec![12], vec![2, 8]] {
            let g = Arc::new(FiniteGroup::abelian(&factors).unwrap());
            let tbl = table(&g).unwrap();
            assert_eq!(tbl.len(), g.order());
            assert!(tbl.check_orthogonality().is_ok(), "factors {factors:?}");
        }
    }

    #[test]
    fn rejects_nonabelian() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        assert!(matches!(table(&g), Err(Error::NotAbelian)));
    }
}
