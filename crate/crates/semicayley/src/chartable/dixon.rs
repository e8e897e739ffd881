//! Character tables of arbitrary small groups by the Dixon method.
//!
//! The class sums of a group span a commutative algebra whose structure
//! constants are integers. Over a prime field F_p with p = 1 (mod exponent)
//! and p > 2|G|, the r class matrices share r one-dimensional eigenspaces;
//! each common eigenvector, normalized at the identity class, stores the
//! class-sum eigenvalues `|C_k| chi(g_k) / d`. Degrees are recovered from the
//! second orthogonality relation and the exact cyclotomic values by a
//! discrete Fourier inversion over the m-th roots of unity mod p, which
//! counts the eigenvalue multiplicities of each rho(g). All steps are exact.

use std::sync::Arc;

use crate::cyclotomic::embed::{inv_mod, mul_mod, pow_mod, sqrt_mod, PrimeEmbedding};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::modp::{distinct_roots, SplitMix};

use super::{Character, CharacterTable};

pub fn table(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    let n = group.order() as u64;
    let m = group.exponent();
    let cc = group.conjugacy_classes();
    let r = cc.count();

    let embedding = PrimeEmbedding::find(m, 2 * n)?;
    let (p, z) = (embedding.p, embedding.z);

    // class matrices: entry [j][k] counts pairs (x, y) in C_i x C_j with
    // x y = z_k, computed as |{x in C_i : x^-1 z_k in C_j}|
    let class_matrices: Vec<Vec<Vec<u64>>> = (0..r)
        .map(|i| {
            let mut mat = vec![vec![0u64; r]; r];
            for k in 0..r {
                let zk = cc.representative(k);
                for &x in cc.class(i) {
                    let j = cc.class_of(group.mul(group.inv(x), zk));
                    mat[j][k] += 1;
                }
            }
            mat
        })
        .collect();

    let eigenvectors = common_eigenvectors(&class_matrices, r, p)?;

    // inverse-class permutation
    let inverse_class: Vec<usize> = (0..r)
        .map(|k| cc.class_of(group.inv(cc.representative(k))))
        .collect();
    let class_sizes: Vec<u64> = cc.sizes().iter().map(|&s| s as u64).collect();

    let mut characters = Vec::with_capacity(r);
    for w in &eigenvectors {
        // 1 / d^2 = (1/|G|) sum_k w_k w_(k*) / |C_k|
        let mut acc = 0u64;
        for k in 0..r {
            let term = mul_mod(
                mul_mod(w[k], w[inverse_class[k]], p),
                inv_mod(class_sizes[k] % p, p),
                p,
            );
            acc = (acc + term) % p;
        }
        let d_sq = mul_mod(n % p, inv_mod(acc, p), p);
        let d_mod = sqrt_mod(d_sq, p).ok_or_else(|| {
            Error::CharTableEngine("degree squared is not a residue".into())
        })?;
        let d = d_mod.min(p - d_mod);
        if d == 0 || d * d > n {
            return Err(Error::CharTableEngine(format!(
                "implausible degree {d} recovered"
            )));
        }
        // chi(g_k) mod p
        let chi_mod: Vec<u64> = (0..r)
            .map(|k| mul_mod(mul_mod(d, w[k], p), inv_mod(class_sizes[k] % p, p), p))
            .collect();
        let values = lift_character(group, &chi_mod, d, m, p, z)?;
        characters.push(Character { degree: d, values });
    }

    let table = CharacterTable::from_characters(group, m, characters);
    let degree_sq: u64 = table.characters().iter().map(|c| c.degree * c.degree).sum();
    if degree_sq != n {
        return Err(Error::CharTableEngine(format!(
            "degree check failed: sum of squares {degree_sq} != {n}"
        )));
    }
    Ok(table)
}

/// The r common one-dimensional eigenspaces of the commuting class matrices,
/// found through a random linear combination with separated spectrum. Each
/// returned vector is normalized to 1 at the identity class.
fn common_eigenvectors(mats: &[Vec<Vec<u64>>], r: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    let mut rng = SplitMix(0xd1c0 ^ (p << 8) ^ r as u64);
    'attempt: for _ in 0..200 {
        let combo: Vec<u64> = (0..r).map(|_| rng.next() % p).collect();
        let mut mat = vec![vec![0u64; r]; r];
        for (i, mi) in mats.iter().enumerate() {
            if combo[i] == 0 {
                continue;
            }
            for j in 0..r {
                for k in 0..r {
                    mat[j][k] = (mat[j][k] + mul_mod(combo[i], mi[j][k], p)) % p;
                }
            }
        }
        let charpoly = charpoly_mod(&mat, p);
        let roots = distinct_roots(&charpoly, p);
        if roots.len() != r {
            continue;
        }
        let mut vectors = Vec::with_capacity(r);
        for &lambda in &roots {
            let mut shifted = mat.clone();
            for (j, row) in shifted.iter_mut().enumerate() {
                row[j] = (row[j] + p - lambda % p) % p;
            }
            let kernel = kernel_basis(&shifted, p);
            if kernel.len() != 1 {
                continue 'attempt;
            }
            let v = &kernel[0];
            if v[0] == 0 {
                continue 'attempt;
            }
            let scale = inv_mod(v[0], p);
            let w: Vec<u64> = v.iter().map(|&c| mul_mod(c, scale, p)).collect();
            // verify it is a common eigenvector of every class matrix
            for mi in mats {
                let image = mat_vec(mi, &w, p);
                let eigen = image[0];
                for k in 0..r {
                    if image[k] != mul_mod(eigen, w[k], p) {
                        continue 'attempt;
                    }
                }
            }
            vectors.push(w);
        }
        return Ok(vectors);
    }
    Err(Error::CharTableEngine(
        "no separating class-matrix combination found".into(),
    ))
}

fn mat_vec(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v.iter())
                .fold(0u64, |acc, (&a, &b)| (acc + mul_mod(a, b, p)) % p)
        })
        .collect()
}

/// Characteristic polynomial over F_p by Faddeev-LeVerrier; p exceeds the
/// dimension so the divisions are legal.
fn charpoly_mod(mat: &[Vec<u64>], p: u64) -> Vec<u64> {
    let r = mat.len();
    let mut coeffs = vec![0u64; r + 1];
    coeffs[r] = 1;
    let mut mk: Vec<Vec<u64>> = mat.to_vec();
    let mut ck;
    for k in 1..=r {
        let trace = (0..r).fold(0u64, |acc, i| (acc + mk[i][i]) % p);
        ck = mul_mod(trace, inv_mod(k as u64 % p, p), p);
        ck = (p - ck) % p;
        coeffs[r - k] = ck;
        if k == r {
            break;
        }
        // mk <- mat (mk + ck I)
        let mut shifted = mk.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + ck) % p;
        }
        let mut next = vec![vec![0u64; r]; r];
        for i in 0..r {
            for l in 0..r {
                if mat[i][l] == 0 {
                    continue;
                }
                for j in 0..r {
                    next[i][j] = (next[i][j] + mul_mod(mat[i][l], shifted[l][j], p)) % p;
                }
            }
        }
        mk = next;
    }
    coeffs
}

/// Basis of the nullspace by Gaussian elimination.
fn kernel_basis(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = mat.len();
    let cols = rows;
    let mut a: Vec<Vec<u64>> = mat.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let inv = inv_mod(a[row][col], p);
        for j in 0..cols {
            a[row][j] = mul_mod(a[row][j], inv, p);
        }
        for i in 0..rows {
            if i != row && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..cols {
                    let t = mul_mod(f, a[row][j], p);
                    a[i][j] = (a[i][j] + p - t) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free_cols
        .iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[ri][fc]) % p;
            }
            v
        })
        .collect()
}

/// Turns the mod-p values of one character into exact cyclotomic values by
/// counting eigenvalue multiplicities of rho(g) with a DFT over the s-th
/// roots of unity mod p, s the element order.
fn lift_character(
    group: &FiniteGroup,
    chi_mod: &[u64],
    degree: u64,
    m: u64,
    p: u64,
    z: u64,
) -> Result<Vec<CycNum>> {
    let cc = group.conjugacy_classes();
    let mut values = Vec::with_capacity(cc.count());
    for k in 0..cc.count() {
        let g = cc.representative(k);
        let s = group.element_order(g);
        let zs = pow_mod(z, m / s, p);
        let zs_inv = inv_mod(zs, p);
        let s_inv = inv_mod(s % p, p);
        // chi(g^l) mod p for l = 0 .. s-1
        let chi_powers: Vec<u64> = {
            let mut out = Vec::with_capacity(s as usize);
            let mut power = group.identity();
            for _ in 0..s {
                out.push(chi_mod[cc.class_of(power)]);
                power = group.mul(power, g);
            }
            out
        };
        let mut value = CycNum::zero(m);
        let mut total = 0u64;
        for e in 0..s {
            // n_e = (1/s) sum_l chi(g^l) z_s^(-e l)
            let mut acc = 0u64;
            for (l, &chi_gl) in chi_powers.iter().enumerate() {
                let twiddle = pow_mod(zs_inv, e * l as u64 % s, p);
                acc = (acc + mul_mod(chi_gl, twiddle, p)) % p;
            }
            let count = mul_mod(acc, s_inv, p);
            if count > degree {
                return Err(Error::CharTableEngine(format!(
                    "eigenvalue multiplicity {count} exceeds degree {degree}"
                )));
            }
            if count > 0 {
                value = value.add(&CycNum::root_of_unity(m, e * (m / s)).mul_int(count as i64));
            }
            total += count;
        }
        if total != degree {
            return Err(Error::CharTableEngine(format!(
                "eigenvalue multiplicities sum to {total}, expected {degree}"
            )));
        }
        values.push(value);
    }
    Ok(values)
}
