//! Structure tables of the Cartan type algebras: the Zassenhaus algebras
//! `W(1;n)`, the Hamiltonian algebras in their Poisson realisations, and
//! the Albert-Zassenhaus family.

use crate::ffield::{Field, FieldElement};
use crate::liealg::{LieError, StructureTable};
use crate::linalg::{self, Vector};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("parameter n must be at least 1")]
    ZeroHeight,
    #[error("field F_{q} does not have order p^n = {want}")]
    FieldSizeMismatch { q: u32, want: u64 },
    #[error("group is not closed under addition")]
    NotAdditivelyClosed,
    #[error("theta is not additive")]
    ThetaNotAdditive,
    #[error("group and theta have different lengths")]
    ThetaLength,
    #[error("bracket leaves the basis: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `C(a, b) mod p` for `a >= 0` by Lucas' theorem; zero when `b < 0` or
/// `b > a`, which covers the negative upper index `a = -1`.
pub fn binom_mod_p(a: i64, b: i64, p: u32) -> u32 {
    if b < 0 || b > a {
        return 0;
    }
    let p = p as i64;
    let (mut a, mut b) = (a, b);
    let mut acc = 1i64;
    while a > 0 || b > 0 {
        let (ad, bd) = (a % p, b % p);
        if bd > ad {
            return 0;
        }
        acc = acc * small_binom(ad, bd) % p;
        a /= p;
        b /= p;
    }
    acc as u32
}

fn small_binom(a: i64, b: i64) -> i64 {
    let mut r: i128 = 1;
    for i in 0..b {
        r = r * (a - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

/// Binomial coefficient as a polynomial in the upper index, so that
/// `C(-1, b) = (-1)^b`.
pub fn binom_general(a: i64, b: i64, p: u32) -> u32 {
    if b < 0 {
        return 0;
    }
    if a >= 0 {
        return binom_mod_p(a, b, p);
    }
    let v = binom_mod_p(b - a - 1, b, p);
    if b % 2 == 0 || v == 0 {
        v
    } else {
        p - v
    }
}

fn sub_mod(x: u32, y: u32, p: u32) -> u32 {
    (x + p - y) % p
}

fn mul_mod(x: u32, y: u32, p: u32) -> u32 {
    (x as u64 * y as u64 % p as u64) as u32
}

/// Poisson structure constant: `{x^(i)y^(j), x^(k)y^(l)} = N x^(i+k-1)y^(j+l-1)`.
pub fn coeff_n(i: i64, j: i64, k: i64, l: i64, p: u32) -> u32 {
    let a = mul_mod(binom_mod_p(i + k - 1, i, p), binom_mod_p(j + l - 1, j - 1, p), p);
    let b = mul_mod(binom_mod_p(i + k - 1, i - 1, p), binom_mod_p(j + l - 1, j, p), p);
    sub_mod(a, b, p)
}

/// The symmetric variant `C(i+k-1,i)C(j+l-1,l) - C(i+k-1,k)C(j+l-1,j)`.
pub fn coeff_n_prime(i: i64, j: i64, k: i64, l: i64, p: u32) -> u32 {
    let a = mul_mod(binom_general(i + k - 1, i, p), binom_general(j + l - 1, l, p), p);
    let b = mul_mod(binom_general(i + k - 1, k, p), binom_general(j + l - 1, j, p), p);
    sub_mod(a, b, p)
}

fn check_field(field: &Field, n: u32) -> Result<(), CartanError> {
    let want = (field.characteristic() as u64).pow(n);
    if field.order() as u64 != want {
        return Err(CartanError::FieldSizeMismatch { q: field.order(), want });
    }
    Ok(())
}

/// `W(1;n)` with basis `E_{-1}, .., E_{p^n-2}` (index `i+1`) and
/// `[E_i, E_j] = (C(i+j+1, j) - C(i+j+1, i)) E_{i+j}`.
pub fn build_w1n(field: &Arc<Field>, n: u32) -> Result<StructureTable, CartanError> {
    if n == 0 {
        return Err(CartanError::ZeroHeight);
    }
    let p = field.characteristic();
    let q = (p as i64).pow(n);
    let labels = (-1..=q - 2).map(|i| format!("E_{i}")).collect();
    let mut entries = Vec::new();
    for i in -1..=q - 2 {
        for j in i + 1..=q - 2 {
            let s = i + j;
            if s > q - 2 {
                continue;
            }
            let c = sub_mod(binom_mod_p(s + 1, j, p), binom_mod_p(s + 1, i, p), p);
            if c != 0 {
                entries.push(((i + 1) as usize, (j + 1) as usize, vec![((s + 1) as usize, field.int(c as i64))]));
            }
        }
    }
    Ok(StructureTable::new(field.clone(), labels, entries)?)
}

/// Rows of the transition to the basis `e_alpha`, `alpha` in canonical
/// field order, expressed in the `E_i` basis of [`build_w1n`]:
/// `e_alpha = E_{q-2} + sum_{i=-1}^{q-2} alpha^{i+1} E_i` with `0^0 = 1`.
pub fn zassenhaus_group_basis(field: &Arc<Field>, n: u32) -> Result<Vec<Vector>, CartanError> {
    check_field(field, n)?;
    let q = field.order() as usize;
    Ok(field
        .elements()
        .map(|a| {
            let mut v = linalg::zero_vector(q);
            for i in 0..q {
                v[i] = field.pow(a, i as u64);
            }
            v[q - 1] = field.add(v[q - 1], field.one());
            v
        })
        .collect())
}

pub fn group_label(field: &Field, a: FieldElement) -> String {
    format!("e[{}]", field.format(a))
}

/// Albert-Zassenhaus algebra on an additive subgroup `G` of the field:
/// `[u_a, u_b] = (b - a + a theta(b) - b theta(a)) u_{a+b}`.
pub fn build_albert_frank(
    field: &Arc<Field>,
    group: &[FieldElement],
    theta: &[FieldElement],
) -> Result<StructureTable, CartanError> {
    if group.len() != theta.len() {
        return Err(CartanError::ThetaLength);
    }
    let pos: HashMap<FieldElement, usize> = group.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    for &a in group {
        for &b in group {
            let s = field.add(a, b);
            let Some(&k) = pos.get(&s) else {
                return Err(CartanError::NotAdditivelyClosed);
            };
            let (ta, tb) = (theta[pos[&a]], theta[pos[&b]]);
            if theta[k] != field.add(ta, tb) {
                return Err(CartanError::ThetaNotAdditive);
            }
        }
    }
    let labels = group.iter().map(|&a| group_label(field, a)).collect();
    let mut entries = Vec::new();
    for (i, &a) in group.iter().enumerate() {
        for (j, &b) in group.iter().enumerate().skip(i + 1) {
            let c = field.add(field.sub(b, a), field.sub(field.mul(a, theta[j]), field.mul(b, theta[i])));
            if !c.is_zero() {
                entries.push((i, j, vec![(pos[&field.add(a, b)], c)]));
            }
        }
    }
    Ok(StructureTable::new(field.clone(), labels, entries)?)
}

/// The Zassenhaus algebra directly in the basis `e_alpha`.
pub fn build_zassenhaus_group(field: &Arc<Field>) -> Result<StructureTable, CartanError> {
    let group: Vec<FieldElement> = field.elements().collect();
    let theta = vec![FieldElement::ZERO; group.len()];
    build_albert_frank(field, &group, &theta)
}

/// Which Hamiltonian algebra a [`MonomialAlgebra`] realises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HamiltonianKind {
    /// `H(2;n)^(2)`, spanned by `x^(i)y^(j)` with `0 < (i,j) < tau`.
    Second,
    /// `H(2;n;Phi(tau))^(1)`, spanned by `x^(i)y^(j)` with `0 < (i,j) <= tau`.
    PhiTau,
    /// `H(2;n;Phi(1))`, spanned by all `x^(i)y^(j)` with `(i,j) <= tau`.
    PhiOne,
}

/// A Hamiltonian algebra realised on divided power monomials.
#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    pub table: StructureTable,
    pub kind: HamiltonianKind,
    pub p: u32,
    pub n1: u32,
    pub n2: u32,
    pub eps: FieldElement,
    monomials: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), usize>,
}

impl MonomialAlgebra {
    /// `tau = (p^n1 - 1, p^n2 - 1)`, the exponents of `x-bar` and `y-bar`.
    pub fn tau(&self) -> (u32, u32) {
        (self.p.pow(self.n1) - 1, self.p.pow(self.n2) - 1)
    }

    pub fn monomials(&self) -> &[(u32, u32)] {
        &self.monomials
    }

    pub fn index(&self, i: u32, j: u32) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    /// Dense vector of the monomial `x^(i)y^(j)`.
    pub fn monomial(&self, i: u32, j: u32) -> Option<Vector> {
        self.index(i, j).map(|k| linalg::unit_vector(self.table.dim(), k))
    }
}

pub fn monomial_label(i: u32, j: u32) -> String {
    format!("x{i}y{j}")
}

fn hamiltonian(
    field: &Arc<Field>,
    n1: u32,
    n2: u32,
    kind: HamiltonianKind,
    eps: FieldElement,
) -> Result<MonomialAlgebra, CartanError> {
    if n1 == 0 || n2 == 0 {
        return Err(CartanError::ZeroHeight);
    }
    let p = field.characteristic();
    let (t1, t2) = (p.pow(n1) - 1, p.pow(n2) - 1);
    let monomials: Vec<(u32, u32)> = (0..=t1)
        .flat_map(|i| (0..=t2).map(move |j| (i, j)))
        .filter(|&m| match kind {
            HamiltonianKind::Second => m != (0, 0) && m != (t1, t2),
            HamiltonianKind::PhiTau => m != (0, 0),
            HamiltonianKind::PhiOne => true,
        })
        .collect();
    let index: HashMap<(u32, u32), usize> = monomials.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let mut entries = Vec::new();
    for (a, &(i, j)) in monomials.iter().enumerate() {
        for (b, &(k, l)) in monomials.iter().enumerate().skip(a + 1) {
            let (i, j, k, l) = (i as i64, j as i64, k as i64, l as i64);
            let mut terms: Vec<((i64, i64), FieldElement)> = Vec::new();
            if kind == HamiltonianKind::PhiOne && i + k == 0 {
                let c = sub_mod(binom_mod_p(j + l - 1, l, p), binom_mod_p(j + l - 1, j, p), p);
                if c != 0 && !eps.is_zero() {
                    terms.push(((t1 as i64, j + l - 1), field.mul(eps, field.int(c as i64))));
                }
            } else {
                let c = coeff_n(i, j, k, l, p);
                if c != 0 {
                    let m = (i + k - 1, j + l - 1);
                    let c = field.int(c as i64);
                    match kind {
                        // Constants vanish modulo F1.
                        HamiltonianKind::Second if m == (0, 0) => {}
                        // (1 + x-bar y-bar) m: only m = 1 picks up x-bar y-bar,
                        // and 1 itself vanishes modulo F1.
                        HamiltonianKind::PhiTau if m == (0, 0) => {
                            terms.push(((t1 as i64, t2 as i64), c));
                        }
                        _ => terms.push((m, c)),
                    }
                }
            }
            let mut out = Vec::new();
            for ((x, y), c) in terms {
                let key = (x.max(0) as u32, y.max(0) as u32);
                match index.get(&key) {
                    Some(&idx) if x >= 0 && y >= 0 => out.push((idx, c)),
                    _ => {
                        return Err(CartanError::NotClosed(format!(
                            "[{}, {}] -> x^({x})y^({y})",
                            monomial_label(i as u32, j as u32),
                            monomial_label(k as u32, l as u32)
                        )))
                    }
                }
            }
            if !out.is_empty() {
                entries.push((a, b, out));
            }
        }
    }
    let labels = monomials.iter().map(|&(i, j)| monomial_label(i, j)).collect();
    let table = StructureTable::new(field.clone(), labels, entries)?;
    Ok(MonomialAlgebra { table, kind, p, n1, n2, eps, monomials, index })
}

/// `H(2;(n1,n2))^(2)`, of dimension `p^(n1+n2) - 2`.
pub fn build_h2_second_derived(field: &Arc<Field>, n1: u32, n2: u32) -> Result<MonomialAlgebra, CartanError> {
    hamiltonian(field, n1, n2, HamiltonianKind::Second, FieldElement::ZERO)
}

/// `H(2;(n1,n2);Phi(tau))^(1)`, of dimension `p^(n1+n2) - 1`.
pub fn build_h2_phi_tau_derived(field: &Arc<Field>, n1: u32, n2: u32) -> Result<MonomialAlgebra, CartanError> {
    hamiltonian(field, n1, n2, HamiltonianKind::PhiTau, FieldElement::ZERO)
}

/// `H(2;(n1,n2);Phi(1))` with the pure-`y` brackets scaled by `eps`; the
/// constant monomial has index 0 and the order is row-major in `(i, j)`.
pub fn build_h2_phi1(field: &Arc<Field>, n1: u32, n2: u32, eps: FieldElement) -> Result<MonomialAlgebra, CartanError> {
    hamiltonian(field, n1, n2, HamiltonianKind::PhiOne, eps)
}

/// The isomorphism `H(2;(1,n);Phi(tau))^(1) -> W(1;n+1)^(1)` in
/// characteristic two: `x y^(j) -> E_{j-1}` and `y^(j) -> E_{j+2^n-2}`.
/// Returns the source, the target (on the basis `E_i`, `i != 2^(n+1)-2`)
/// and the images of the source basis vectors.
pub fn char_two_isomorphism(n: u32) -> Result<(MonomialAlgebra, StructureTable, Vec<Vector>), CartanError> {
    let f = Field::prime(2).map_err(LieError::from)?;
    let src = build_h2_phi_tau_derived(&f, 1, n)?;
    let w = build_w1n(&f, n + 1)?;
    let top = w.dim() - 1;
    let derived = linalg::Subspace::span(&f, w.dim(), (0..top).map(|i| linalg::unit_vector(w.dim(), i)));
    let dst = w.subalgebra_table(&derived)?;
    let half = 2i64.pow(n);
    let map = src
        .monomials()
        .iter()
        .map(|&(i, j)| {
            let e = if i == 1 { j as i64 - 1 } else { j as i64 + half - 2 };
            linalg::unit_vector(dst.dim(), (e + 1) as usize)
        })
        .collect();
    Ok((src, dst, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{check_structure_map, validate_table};

    #[test]
    fn char_two_isomorphism_holds() {
        for n in 1..=3 {
            let (src, dst, map) = char_two_isomorphism(n).unwrap();
            assert!(check_structure_map(&src.table, &dst, &map));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_mod_p(5, 2, 3), 1);
        assert_eq!(binom_mod_p(4, 6, 5), 0);
        assert_eq!(binom_mod_p(-1, 0, 5), 0);
        assert_eq!(binom_general(-1, 0, 5), 1);
        assert_eq!(binom_general(-1, 3, 5), 4);
        assert_eq!(coeff_n(2, 0, 0, 1, 5), 4);
    }

    #[test]
    fn phi_one_small_cases() {
        let f = Field::prime(3).unwrap();
        let h = build_h2_phi1(&f, 1, 1, f.one()).unwrap();
        let t = &h.table;
        let get = |a: (u32, u32), b: (u32, u32)| {
            t.bracket(&t.basis(h.index(a.0, a.1).unwrap()), &t.basis(h.index(b.0, b.1).unwrap())).unwrap()
        };
        let y = (0, 1);
        let ybar = (0, 2);
        let xbar_ybar = h.index(2, 2).unwrap();
        assert_eq!(get(y, ybar).terms(), &[(xbar_ybar, f.int(2))]);
        assert_eq!(get((0, 0), ybar).terms(), &[(h.index(2, 1).unwrap(), f.int(-1))]);
        assert!(validate_table(t).passed());
    }
}
