//! Finite groups as explicit multiplication tables.
//!
//! Elements are indices `0..n` with index 0 the identity. Built-in families
//! (cyclic, abelian products, dihedral, small symmetric/alternating groups)
//! carry labels that match the usual notation: `a^i` and `ba^i` for dihedral
//! groups, cycle notation for permutation groups, plain residues for cyclic
//! groups. Groups built from generators use breadth-first closure order, so
//! element numbering is deterministic.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the group order; tables are dense `n x n`.
pub const DEFAULT_ORDER_CAP: usize = 512;

/// A finite group given by its full multiplication table.
#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    classes: OnceLock<ConjugacyClasses>,
    element_orders: OnceLock<Vec<u64>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul && self.labels == other.labels
    }
}
impl Eq for FiniteGroup {}

/// The partition of a group into conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    representatives: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    /// Sorted element indices of class `i`.
    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// The least element index in each class.
    pub fn representative(&self, i: usize) -> usize {
        self.representatives[i]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }
}

impl FiniteGroup {
    /// Validates a multiplication table and wraps it as a group.
    ///
    /// Associativity is checked exhaustively for `n <= 24` and on 20000
    /// pseudorandom triples for larger tables.
    pub fn from_table(table: Vec<Vec<u32>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| (x as usize) >= n) {
                return Err(Error::MalformedTable(format!(
                    "rows must have length {n} with entries below {n}"
                )));
            }
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in &table {
            mul.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| mul[a * n + b] as usize;

        // locate the identity, then renumber so it sits at index 0
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(Error::NoIdentity)?;
        let (mul, labels) = if identity != 0 {
            let mut order_map: Vec<usize> = (0..n).collect();
            order_map.swap(0, identity);
            let mut inv_map = vec![0usize; n];
            for (new, &old) in order_map.iter().enumerate() {
                inv_map[old] = new;
            }
            let mut remul = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    remul[a * n + b] =
                        inv_map[mul[order_map[a] * n + order_map[b]] as usize] as u32;
                }
            }
            let relabels = labels.map(|ls| {
                let mut out = ls.clone();
                for (new, &old) in order_map.iter().enumerate() {
                    out[new] = ls[old].clone();
                }
                out
            });
            (remul, relabels)
        } else {
            (mul, labels)
        };
        let at = |a: usize, b: usize| mul[a * n + b] as usize;

        if n <= 24 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if at(at(a, b), c) != at(a, at(b, c)) {
                            return Err(Error::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64);
            for _ in 0..20_000 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (state >> 33) as usize % n;
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let b = (state >> 33) as usize % n;
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let c = (state >> 33) as usize % n;
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(Error::NotAssociative { a, b, c });
                }
            }
        }

        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => inv[a] = b as u32,
                None => return Err(Error::NoInverse { element: a }),
            }
        }
        let labels =
            labels.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect::<Vec<_>>());
        if labels.len() != n {
            return Err(Error::MalformedTable("label count mismatch".into()));
        }
        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            labels,
            classes: OnceLock::new(),
            element_orders: OnceLock::new(),
        })
    }

    /// Cyclic group of order `n`, labels `0..n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::abelian(&[n as u64])
    }

    /// Direct product of cyclic groups with the given factor orders.
    /// Labels are residues for one factor, tuples `(i, j, ..)` otherwise.
    pub fn abelian(factors: &[u64]) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|&f| f == 0) {
            return Err(Error::UnsupportedGroup(
                "abelian factors must be positive".into(),
            ));
        }
        let order: u64 = factors.iter().product();
        if order as usize > DEFAULT_ORDER_CAP {
            return Err(Error::OrderCapExceeded {
                cap: DEFAULT_ORDER_CAP,
            });
        }
        let n = order as usize;
        let k = factors.len();
        // mixed-radix enumeration; identity (0, .., 0) first
        let mut tuples = Vec::with_capacity(n);
        let mut t = vec![0u64; k];
        loop {
            tuples.push(t.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                t[i] += 1;
                if t[i] < factors[i] {
                    break;
                }
                t[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX || tuples.len() == n {
                break;
            }
        }
        let index: HashMap<Vec<u64>, usize> =
            tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut table = vec![vec![0u32; n]; n];
        for (i, a) in tuples.iter().enumerate() {
            for (j, b) in tuples.iter().enumerate() {
                let sum: Vec<u64> = a
                    .iter()
                    .zip(b.iter())
                    .zip(factors.iter())
                    .map(|((&x, &y), &f)| (x + y) % f)
                    .collect();
                table[i][j] = index[&sum] as u32;
            }
        }
        let labels = tuples
            .iter()
            .map(|t| {
                if k == 1 {
                    t[0].to_string()
                } else {
                    format!(
                        "({})",
                        t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    )
                }
            })
            .collect();
        Self::from_table(table, Some(labels))
    }

    /// Dihedral group of order `2n` from the presentation
    /// `<a, b | a^n = b^2 = (ab)^2 = 1>`. Elements are ordered
    /// `1, a, .., a^(n-1), b, ba, .., ba^(n-1)`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::UnsupportedGroup("dihedral requires n >= 1".into()));
        }
        if 2 * n > DEFAULT_ORDER_CAP {
            return Err(Error::OrderCapExceeded {
                cap: DEFAULT_ORDER_CAP,
            });
        }
        let order = 2 * n;
        // element code: (r, i) -> r*n + i meaning b^r a^i
        // (b^r a^i)(b^s a^j) = b^(r+s) a^(i*(-1)^s + j)
        let mut table = vec![vec![0u32; order]; order];
        for r in 0..2usize {
            for i in 0..n {
                for s in 0..2usize {
                    for j in 0..n {
                        let e = if s == 1 { (n - i) % n } else { i };
                        let idx = ((r + s) % 2) * n + (e + j) % n;
                        table[r * n + i][s * n + j] = idx as u32;
                    }
                }
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (r, i) = (x / n, x % n);
                let reflect = if r == 1 { "b" } else { "" };
                match i {
                    0 if r == 0 => "1".to_string(),
                    0 => reflect.to_string(),
                    1 => format!("{reflect}a"),
                    i => format!("{reflect}a^{i}"),
                }
            })
            .collect();
        Self::from_table(table, Some(labels))
    }

    /// Symmetric group on `n <= 5` points, generated by `(12)` and `(12..n)`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::UnsupportedGroup(
                "built-in symmetric groups support 1 <= n <= 5".into(),
            ));
        }
        if n == 1 {
            return Self::from_generators(&[Permutation::identity(1)]);
        }
        let transposition = Permutation::parse("(1 2)", n)?;
        let cycle_points: Vec<String> = (1..=n).map(|p| p.to_string()).collect();
        let cycle = Permutation::parse(&format!("({})", cycle_points.join(" ")), n)?;
        Self::from_generators(&[transposition, cycle])
    }

    /// Alternating group on `n <= 5` points.
    pub fn alternating(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::UnsupportedGroup(
                "built-in alternating groups support 1 <= n <= 5".into(),
            ));
        }
        if n <= 2 {
            return Self::from_generators(&[Permutation::identity(n)]);
        }
        let three_cycle = Permutation::parse("(1 2 3)", n)?;
        if n == 3 {
            return Self::from_generators(&[three_cycle]);
        }
        // for A4 the double transposition goes first, which puts the
        // involution class ahead of the 3-cycle classes in closure order
        if n == 4 {
            let a = Permutation::parse("(1 2)(3 4)", n)?;
            return Self::from_generators(&[a, three_cycle]);
        }
        let five_cycle = Permutation::parse("(1 2 3 4 5)", n)?;
        Self::from_generators(&[three_cycle, five_cycle])
    }

    /// Closure of a permutation generating set, breadth-first from the
    /// identity, labelled with cycle notation.
    pub fn from_generators(generators: &[Permutation]) -> Result<Self> {
        Self::from_generators_capped(generators, DEFAULT_ORDER_CAP)
    }

    pub fn from_generators_capped(generators: &[Permutation], cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::UnsupportedGroup("empty generator list".into()));
        }
        let degree = generators.iter().map(|g| g.degree()).max().unwrap();
        let gens: Vec<Permutation> = generators.iter().map(|g| g.extend_to(degree)).collect();
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            for g in &gens {
                let next = current.compose(g);
                if !index.contains_key(&next) {
                    if elements.len() == cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            head += 1;
        }
        let n = elements.len();
        let mut table = vec![vec![0u32; n]; n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i][j] = index[&a.compose(b)] as u32;
            }
        }
        let labels = elements.iter().map(|p| p.cycle_notation()).collect();
        Self::from_table(table, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of the element with the given label, if any.
    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order of a single element.
    pub fn element_order(&self, a: usize) -> u64 {
        self.element_orders()[a]
    }

    pub fn element_orders(&self) -> &[u64] {
        self.element_orders.get_or_init(|| {
            (0..self.order)
                .map(|a| {
                    let mut x = a;
                    let mut k = 1u64;
                    while x != 0 {
                        x = self.mul(x, a);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    /// Exponent: least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders().iter().fold(1u64, |m, &o| m.lcm(&o))
    }

    /// `a^k` for `k >= 0`.
    pub fn power(&self, a: usize, k: u64) -> usize {
        let mut acc = 0usize;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Conjugacy classes; computed once and cached.
    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| {
            let n = self.order;
            let mut class_of = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for a in 0..n {
                if class_of[a] != usize::MAX {
                    continue;
                }
                let idx = classes.len();
                let mut members = Vec::new();
                for h in 0..n {
                    let c = self.mul(self.mul(self.inv(h), a), h);
                    if class_of[c] == usize::MAX {
                        class_of[c] = idx;
                        members.push(c);
                    }
                }
                members.sort_unstable();
                classes.push(members);
            }
            let representatives = classes.iter().map(|c| c[0]).collect();
            ConjugacyClasses {
                classes,
                class_of,
                representatives,
            }
        })
    }
}

/// Units of `Z/mZ`, sorted. `m = 1` yields `{1}`, the trivial unit group.
pub fn units_mod(m: u64) -> Vec<u64> {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return vec![1];
    }
    (1..m).filter(|&t| t.gcd(&m) == 1).collect()
}

/// Euler's totient; `phi(1) = 1`.
pub fn euler_phi(m: u64) -> u64 {
    units_mod(m).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three_has_order_six() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.conjugacy_classes().sizes(), vec![1, 3, 2]);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn alternating_four_classes() {
        let g = FiniteGroup::alternating(4).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.conjugacy_classes().sizes(), vec![1, 3, 4, 4]);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn dihedral_five_presentation() {
        let g = FiniteGroup::dihedral(5).unwrap();
        assert_eq!(g.order(), 10);
        let a = g.element_by_label("a").unwrap();
        let b = g.element_by_label("b").unwrap();
        assert_eq!(g.power(a, 5), g.identity());
        assert_eq!(g.power(b, 2), g.identity());
        assert_eq!(g.power(g.mul(a, b), 2), g.identity());
        // lcm of element orders, not the paper's n
        assert_eq!(g.exponent(), 10);
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn abelian_groups_have_singleton_classes() {
        let g = FiniteGroup::abelian(&[2, 4]).unwrap();
        assert_eq!(g.conjugacy_classes().count(), 8);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn generators_build_s3() {
        let g = FiniteGroup::from_generators(&[
            Permutation::parse("(12)", 3).unwrap(),
            Permutation::parse("(123)", 3).unwrap(),
        ])
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.element_by_label("(12)").is_some());
    }

    #[test]
    fn bad_tables_are_rejected() {
        // left-identity only
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]], None).is_err());
        // non-associative latin square (order 5 loops exist)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(loop5, None).is_err());
    }

    #[test]
    fn units_and_phi() {
        assert_eq!(units_mod(6), vec![1, 5]);
        assert_eq!(units_mod(1), vec![1]);
        assert_eq!(units_mod(10), vec![1, 3, 7, 9]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn class_equation_holds() {
        for g in [
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::dihedral(6).unwrap(),
            FiniteGroup::alternating(5).unwrap(),
        ] {
            let cc = g.conjugacy_classes();
            assert_eq!(cc.sizes().iter().sum::<usize>(), g.order());
            for s in cc.sizes() {
                assert_eq!(g.order() % s, 0);
            }
            assert_eq!(g.order() as u64 % g.exponent(), 0);
        }
    }
}
