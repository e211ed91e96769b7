//! Test-only reference implementations. Nothing here calls into the
//! library's arithmetic: binomials come from Pascal's triangle and brackets
//! are computed by differentiating divided-power polynomials.
#![allow(dead_code)]

use std::collections::BTreeMap;

pub fn pascal(n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![1u64]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u64; i + 1];
        for k in 1..i {
            row[k] = (prev[k - 1] + prev[k]) % p;
        }
        rows.push(row);
    }
    rows
}

/// Binomial with the zero convention outside `0 <= b <= a`.
pub fn binom(tab: &[Vec<u64>], a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 || b > a {
        0
    } else {
        tab[a as usize][b as usize]
    }
}

/// Polynomial in the divided powers `x^(a) y^(b)` of `O((2))`, coefficients mod p.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DivPoly(pub BTreeMap<(i64, i64), u64>);

pub struct Ring {
    pub p: u64,
    tab: Vec<Vec<u64>>,
}

impl Ring {
    pub fn new(p: u64) -> Self {
        Ring { p, tab: pascal(520, p) }
    }

    pub fn binom(&self, a: i64, b: i64) -> u64 {
        binom(&self.tab, a, b)
    }

    pub fn mono(&self, a: i64, b: i64, c: u64) -> DivPoly {
        let mut m = BTreeMap::new();
        if c % self.p != 0 {
            m.insert((a, b), c % self.p);
        }
        DivPoly(m)
    }

    fn push(&self, out: &mut BTreeMap<(i64, i64), u64>, k: (i64, i64), c: u64) {
        let e = out.entry(k).or_insert(0);
        *e = (*e + c) % self.p;
        if *e == 0 {
            out.remove(&k);
        }
    }

    pub fn mul(&self, f: &DivPoly, g: &DivPoly) -> DivPoly {
        let mut out = BTreeMap::new();
        for (&(a, b), &c) in &f.0 {
            for (&(x, y), &d) in &g.0 {
                let coef = self.binom(a + x, a) * self.binom(b + y, b) % self.p * c % self.p * d % self.p;
                self.push(&mut out, (a + x, b + y), coef);
            }
        }
        DivPoly(out)
    }

    pub fn sub(&self, f: &DivPoly, g: &DivPoly) -> DivPoly {
        let mut out = f.0.clone();
        for (&k, &c) in &g.0 {
            self.push(&mut out, k, self.p - c);
        }
        DivPoly(out)
    }

    pub fn add(&self, f: &DivPoly, g: &DivPoly) -> DivPoly {
        let mut out = f.0.clone();
        for (&k, &c) in &g.0 {
            self.push(&mut out, k, c);
        }
        DivPoly(out)
    }

    pub fn scale(&self, f: &DivPoly, c: u64) -> DivPoly {
        let mut out = BTreeMap::new();
        for (&k, &d) in &f.0 {
            self.push(&mut out, k, c * d);
        }
        DivPoly(out)
    }

    pub fn d1(&self, f: &DivPoly) -> DivPoly {
        DivPoly(f.0.iter().filter(|(k, _)| k.0 > 0).map(|(&(a, b), &c)| ((a - 1, b), c)).collect())
    }

    pub fn d2(&self, f: &DivPoly) -> DivPoly {
        DivPoly(f.0.iter().filter(|(k, _)| k.1 > 0).map(|(&(a, b), &c)| ((a, b - 1), c)).collect())
    }

    /// `D_H(f)(g) = d2(f) d1(g) - d1(f) d2(g)`.
    pub fn poisson(&self, f: &DivPoly, g: &DivPoly) -> DivPoly {
        self.sub(&self.mul(&self.d2(f), &self.d1(g)), &self.mul(&self.d1(f), &self.d2(g)))
    }

    /// `D_H(f)(g) + eps xbar (d2(f) g - f d2(g))`.
    pub fn poisson_phi1(&self, f: &DivPoly, g: &DivPoly, xbar: i64, eps: u64) -> DivPoly {
        let extra = self.sub(&self.mul(&self.d2(f), g), &self.mul(f, &self.d2(g)));
        let extra = self.mul(&self.mono(xbar, 0, 1), &extra);
        self.add(&self.poisson(f, g), &self.scale(&extra, eps))
    }

    /// `(1 + xbar ybar) D_H(f)(g)` with the constant term dropped.
    pub fn poisson_phi_tau(&self, f: &DivPoly, g: &DivPoly, tau: (i64, i64)) -> DivPoly {
        let b = self.poisson(f, g);
        let mut out = self.add(&b, &self.mul(&self.mono(tau.0, tau.1, 1), &b));
        out.0.remove(&(0, 0));
        out
    }

    /// `[x^(a) d, x^(b) d]` in the Witt algebra, as the coefficient of `x^(a+b-1) d`.
    pub fn witt(&self, a: i64, b: i64) -> u64 {
        let f = self.mul(&self.mono(a, 0, 1), &self.d1(&self.mono(b, 0, 1)));
        let g = self.mul(&self.mono(b, 0, 1), &self.d1(&self.mono(a, 0, 1)));
        self.sub(&f, &g).0.get(&(a + b - 1, 0)).copied().unwrap_or(0)
    }
}

/// Naive `F_p[t]/(m)` arithmetic on coefficient vectors, constant term first.
pub struct NaiveField {
    pub p: u64,
    pub modulus: Vec<u64>,
}

impl NaiveField {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn digits(&self, mut idx: u64) -> Vec<u64> {
        (0..self.degree())
            .map(|_| {
                let d = idx % self.p;
                idx /= self.p;
                d
            })
            .collect()
    }

    pub fn index(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        let k = self.degree();
        let mut prod = vec![0u64; 2 * k];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        for i in (k..2 * k).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..=k {
                prod[i - k + j] = (prod[i - k + j] + self.p * self.p - c * self.modulus[j] % self.p) % self.p;
            }
        }
        self.index(&prod[..k])
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        self.index(&x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect::<Vec<_>>())
    }
}
