//! Finite fields `F_q`, `q = p^k`, in the polynomial representation.
//!
//! An element is stored as the integer `sum c_i p^i` of its coefficient
//! vector `(c_0, .., c_{k-1})` relative to the modulus. Multiplication runs
//! through discrete-log tables built once from polynomial arithmetic;
//! inverses come from the extended Euclidean algorithm on representatives.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Largest field on which exhaustive root finding is allowed (`5^6`).
pub const ROOT_SEARCH_LIMIT: u64 = 15_625;

const FIELD_ORDER_LIMIT: u64 = 1 << 22;
const ADD_TABLE_LIMIT: u64 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic must be prime, got {0}")]
    NonPrimeCharacteristic(u64),
    #[error("modulus {0:?} is reducible over F_{1}")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u32> },
    #[error("field of order {0} is too large")]
    FieldTooLarge(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("coefficient list {0:?} does not describe an element")]
    BadCoefficients(Vec<u32>),
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// Serializable description of a field: characteristic, degree and the
/// full monic modulus (constant term first, empty when `k = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modulus: Vec<u32>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub struct Field {
    spec: FieldSpec,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    inv: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)?;
        if self.spec.k > 1 {
            write!(f, "[mod {:?}]", self.spec.modulus)?;
        }
        Ok(())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, constant term first, no trailing zeros.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

fn poly_sub_scaled(a: &mut [u32], b: &[u32], c: u32, shift: usize, p: u32) {
    for (i, &bi) in b.iter().enumerate() {
        let t = (bi as u64 * c as u64 % p as u64) as u32;
        a[i + shift] = (a[i + shift] + p - t) % p;
    }
}

fn poly_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    let mut quot = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        quot[shift] = c;
        poly_sub_scaled(&mut r, &b, c, shift, p);
        r = trim(r);
    }
    (trim(quot), r)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    trim(out)
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
fn poly_inverse(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut t0, mut t1): (Vec<u32>, Vec<u32>) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (qt, rem) = poly_divrem(&r0, &r1, p);
        let t2 = poly_sub(&t0, &poly_mul(&qt, &t1, p), p);
        r0 = std::mem::replace(&mut r1, rem);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(poly_mul(&t0, &[c], p))
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut n: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(n % p);
        n /= p;
    }
    out
}

/// Exhaustive irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut f = decode(n as u32, p, d as u32);
            f.push(1);
            if poly_divrem(modulus, &f, p).1.is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `k`,
/// comparing coefficients from `t^{k-1}` down to the constant term.
pub fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for n in 0..count {
        let mut f = decode(n as u32, p, k);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Build `F_{p^k}`. With `modulus = None` the canonical modulus is used.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Arc<Field>, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NonPrimeCharacteristic(p as u64));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > FIELD_ORDER_LIMIT {
            return Err(FieldError::FieldTooLarge(q));
        }
        let modulus = match modulus {
            Some(m) if k == 1 && m.is_empty() => vec![],
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus { expected: k, got: m });
                }
                if !is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(m, p));
                }
                if k == 1 {
                    vec![]
                } else {
                    m
                }
            }
            None if k == 1 => vec![],
            None => canonical_modulus(p, k),
        };
        Ok(Arc::new(Self::build(FieldSpec { p, k, modulus }, q as u32)))
    }

    pub fn prime(p: u32) -> Result<Arc<Field>, FieldError> {
        Self::new(p, 1, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Arc<Field>, FieldError> {
        let m = if spec.modulus.is_empty() { None } else { Some(spec.modulus.clone()) };
        Self::new(spec.p, spec.k, m)
    }

    fn build(spec: FieldSpec, q: u32) -> Field {
        let (p, k) = (spec.p, spec.k);
        let mulmod = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return (a as u64 * b as u64 % p as u64) as u32;
            }
            let prod = poly_mul(&trim(decode(a, p, k)), &trim(decode(b, p, k)), p);
            encode(&poly_divrem(&prod, &spec.modulus, p).1, p)
        };
        let order = q - 1;
        let factors = prime_factors(order as u64);
        let pow = |mut b: u32, mut e: u64| {
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(acc, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            acc
        };
        let g = (1..q).find(|&g| factors.iter().all(|&l| pow(g, order as u64 / l) != 1)).unwrap_or(1);
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x;
            log[x as usize] = i;
            x = mulmod(x, g);
        }
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else if k == 1 {
                    inv_mod(a, p)
                } else {
                    encode(&poly_inverse(&trim(decode(a, p, k)), &spec.modulus, p).unwrap(), p)
                }
            })
            .collect();
        let neg =
            (0..q).map(|a| encode(&decode(a, p, k).iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p)).collect();
        let mut field = Field { spec, q, exp, log, inv, neg, add: None };
        if k > 1 && (q as u64) <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add = Some(table);
        }
        field
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// All elements in canonical order (by coefficient encoding).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Elements of the prime field `F_p`, in order `0, 1, .., p-1`.
    pub fn prime_elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.spec.p).map(FieldElement)
    }

    /// The residue of an integer in the prime subfield.
    pub fn int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.spec.p as i64) as u32)
    }

    /// The class of `t` in the polynomial basis (the integer 1 when k = 1).
    pub fn t(&self) -> FieldElement {
        if self.spec.k == 1 {
            FieldElement(1)
        } else {
            FieldElement(self.spec.p)
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.spec.k as usize || coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(FieldError::BadCoefficients(coeffs.to_vec()));
        }
        Ok(FieldElement(encode(coeffs, self.spec.p)))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        decode(a.0, self.spec.p, self.spec.k)
    }

    /// Parse the literal syntax `a0,a1,..` (coefficients, constant first).
    pub fn parse(&self, s: &str) -> Result<FieldElement, FieldError> {
        let coeffs: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        let coeffs = coeffs.map_err(|_| FieldError::Parse(s.to_string()))?;
        let p = self.spec.p as i64;
        let reduced: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(p) as u32).collect();
        self.from_coeffs(&reduced).map_err(|_| FieldError::Parse(s.to_string()))
    }

    pub fn format(&self, a: FieldElement) -> String {
        let c = self.coeffs(a);
        c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        let (mut a, mut b) = (a, b);
        let (mut out, mut scale) = (0, 1);
        for _ in 0..self.spec.k {
            out += (a % p + b % p) % p * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.spec.k == 1 {
            return FieldElement((a.0 + b.0) % self.spec.p);
        }
        match &self.add {
            Some(t) => FieldElement(t[(a.0 * self.q + b.0) as usize]),
            None => FieldElement(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| FieldElement(self.inv[a.0 as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e` for a non-negative exponent, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % n)) % n) as usize])
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.spec.p as u64)
    }

    /// The unique `b` with `b^p = a`, namely `a^{p^{k-1}}`.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        self.pow(a, (self.spec.p as u64).pow(self.spec.k - 1))
    }

    pub fn in_prime_field(&self, a: FieldElement) -> bool {
        a.0 < self.spec.p
    }

    /// Value in `0..p` of an element of the prime field.
    pub fn prime_value(&self, a: FieldElement) -> Option<u32> {
        self.in_prime_field(a).then_some(a.0)
    }

    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, it: I) -> FieldElement {
        it.into_iter().fold(FieldElement::ZERO, |acc, x| self.add(acc, x))
    }

    /// Evaluate a polynomial given by coefficients (constant term first).
    pub fn eval(&self, poly: &[FieldElement], x: FieldElement) -> FieldElement {
        poly.iter().rev().fold(FieldElement::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// All roots in the field, by exhaustive evaluation.
    pub fn find_roots(&self, poly: &[FieldElement]) -> Result<Vec<FieldElement>, FieldError> {
        if self.q as u64 > ROOT_SEARCH_LIMIT {
            return Err(FieldError::FieldTooLarge(self.q as u64));
        }
        Ok(self.elements().filter(|&x| self.eval(poly, x).is_zero()).collect())
    }
}

/// The unique `k mod (q-1)p` with `k = r mod (q-1)` and `k = s mod p`,
/// where `q` is a power of the prime `p`.
pub fn combine_residues(r: i64, s: i64, q: u64, p: u64) -> u64 {
    let m = q as i64 - 1;
    let r = r.rem_euclid(m);
    let s = s.rem_euclid(p as i64);
    // q - 1 = -1 mod p, so adding (q-1)t moves the residue mod p by -t.
    let t = (r - s).rem_euclid(p as i64);
    (r + m * t) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(canonical_modulus(5, 2), vec![2, 0, 1]);
        assert_eq!(canonical_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(canonical_modulus(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn frobenius_on_f9() {
        let f = Field::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        let t = f.t();
        assert_eq!(f.frobenius(t), f.neg(t));
        assert_eq!(f.pth_root(f.frobenius(t)), t);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), FieldError::NonPrimeCharacteristic(4));
        assert!(matches!(Field::new(3, 2, Some(vec![2, 0, 1])), Err(FieldError::ReducibleModulus(..))));
    }

    #[test]
    fn cubic_without_roots() {
        let f = Field::prime(3).unwrap();
        let poly = [f.int(-1), f.int(-1), f.int(0), f.int(1)];
        assert!(f.find_roots(&poly).unwrap().is_empty());
    }

    #[test]
    fn inverse_matches_log_tables() {
        for (p, k) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = Field::new(p, k, None).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn crt() {
        assert_eq!(combine_residues(1, 2, 3, 3), 5);
        assert_eq!(combine_residues(0, 0, 9, 3), 0);
        for r in 0..8 {
            for s in 0..3 {
                let k = combine_residues(r, s, 9, 3) as i64;
                assert!(k < 24 && k % 8 == r && k % 3 == s);
            }
        }
    }
}
