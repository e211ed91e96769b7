//! Cyclic gradings of `H(2;n;Phi(1))`: the monomial (mixed) grading and the
//! finite grading by eigenspaces of a toral element.

use crate::cartan::{binom_mod_p, HamiltonianKind, MonomialAlgebra};
use crate::ffield::{combine_residues, Field, FieldElement};
use crate::liealg::{DegreeMap, LieError, StructureTable};
use crate::linalg::{self, Subspace, Vector};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("expected a table built as H(2;n;Phi(1))")]
    WrongAlgebra,
    #[error("q = {q} and r = {r} do not match the algebra (p^n2, p^n1)")]
    ParameterMismatch { q: u64, r: u64 },
    #[error("the finite grading needs n1 = 1")]
    NeedsSmallX,
    #[error("rho is not a root of Z^p - sigma^(p-1) Z - eps")]
    NotARoot,
    #[error("mu3 lies in the prime field")]
    Mu3InPrimeField,
    #[error("mu3 + 1 or mu3^p + 1 vanishes")]
    DenominatorZero,
    #[error("generators X and Y land in different degrees ({0} and {1})")]
    Unnormalizable(u64, u64),
    #[error("eigenvector relation fails for {0}")]
    NotEigen(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Parameters of the toral element `y + pi x-bar y`, `pi = sigma^(p-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ToralParams {
    pub sigma: FieldElement,
    pub rho: FieldElement,
    pub pi: FieldElement,
    pub eps: FieldElement,
}

impl ToralParams {
    pub fn new(f: &Field, sigma: FieldElement, rho: FieldElement, eps: FieldElement) -> Result<Self, GradingError> {
        let p = f.characteristic() as u64;
        let pi = f.pow(sigma, p - 1);
        let lhs = f.sub(f.sub(f.pow(rho, p), f.mul(pi, rho)), eps);
        if !lhs.is_zero() {
            return Err(GradingError::NotARoot);
        }
        Ok(ToralParams { sigma, rho, pi, eps })
    }

    /// `sigma / rho`, when `rho != 0`.
    pub fn ratio(&self, f: &Field) -> Option<FieldElement> {
        f.div(self.sigma, self.rho)
    }

    /// `mu3 = -1 + sigma / rho`.
    pub fn mu3(&self, f: &Field) -> Option<FieldElement> {
        self.ratio(f).map(|r| f.sub(r, f.one()))
    }
}

/// Recover `sigma` and `rho` from an assigned third diamond type:
/// `sigma^p (1/(mu3^p + 1) - 1/(mu3 + 1)) = 1` and `rho (mu3 + 1) = sigma`.
pub fn params_from_mu3(f: &Field, mu3: FieldElement) -> Result<ToralParams, GradingError> {
    let a = f.add(mu3, f.one());
    let b = f.add(f.frobenius(mu3), f.one());
    if a.is_zero() || b.is_zero() {
        return Err(GradingError::DenominatorZero);
    }
    if f.in_prime_field(mu3) {
        return Err(GradingError::Mu3InPrimeField);
    }
    let d = f.sub(f.inv(b).unwrap(), f.inv(a).unwrap());
    let sigma = f.pth_root(f.inv(d).unwrap());
    let rho = f.div(sigma, a).unwrap();
    ToralParams::new(f, sigma, rho, f.one())
}

fn require_phi_one(alg: &MonomialAlgebra) -> Result<(), GradingError> {
    if alg.kind != HamiltonianKind::PhiOne {
        return Err(GradingError::WrongAlgebra);
    }
    Ok(())
}

/// Degree of `x^(i)y^(j)` is `(1-q)i - j + q` modulo `(q-1)r`.
pub fn grade_mixed(alg: &MonomialAlgebra, q: u64, r: u64) -> Result<DegreeMap, GradingError> {
    require_phi_one(alg)?;
    if q != (alg.p as u64).pow(alg.n2) || r != (alg.p as u64).pow(alg.n1) {
        return Err(GradingError::ParameterMismatch { q, r });
    }
    let (q, r) = (q as i64, r as i64);
    Ok(DegreeMap::new(((q - 1) * r) as u64, alg.monomials().iter().map(|&(i, j)| (1 - q) * i as i64 - j as i64 + q)))
}

/// `y + pi x-bar y`.
pub fn toral_element(alg: &MonomialAlgebra, params: &ToralParams) -> Result<Vector, GradingError> {
    require_phi_one(alg)?;
    let f = alg.table.field();
    let (t1, _) = alg.tau();
    let mut v = alg.monomial(0, 1).unwrap();
    v[alg.index(t1, 1).unwrap()] = f.add(v[alg.index(t1, 1).unwrap()], params.pi);
    Ok(v)
}

/// Eigenvectors `e_{r,alpha}` of the toral element, `r = 1-j`,
/// `alpha = r rho + s sigma`.
#[derive(Clone, Debug)]
pub struct EigenBasis {
    pub params: ToralParams,
    pub p: u32,
    pub q: u64,
    pub vectors: Vec<Vector>,
    pub labels: Vec<String>,
    pub r: Vec<i64>,
    /// `s` in `0..p`; always 0 when `sigma = 0`.
    pub s: Vec<u32>,
    pub alpha: Vec<FieldElement>,
}

impl EigenBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Whether this is the partial basis of the `sigma = 0` degeneration.
    pub fn is_partial(&self) -> bool {
        self.params.sigma.is_zero()
    }

    pub fn position(&self, r: i64, s: u32) -> Option<usize> {
        (0..self.len()).find(|&k| self.r[k] == r && self.s[k] == s)
    }

    /// `e_{r,alpha}` located by its eigenvalue.
    pub fn position_of_alpha(&self, r: i64, alpha: FieldElement) -> Option<usize> {
        (0..self.len()).find(|&k| self.r[k] == r && self.alpha[k] == alpha)
    }

    /// Index of `X = e_{1, rho+sigma}`.
    pub fn x_index(&self) -> usize {
        self.position(1, if self.is_partial() { 0 } else { 1 % self.p }).unwrap()
    }

    /// Index of `Y = e_{2-q, 2rho+sigma}`.
    pub fn y_index(&self) -> usize {
        let r = 2 - self.q as i64;
        self.position(r, if self.is_partial() { 0 } else { 1 % self.p }).unwrap()
    }
}

/// The eigenbasis for `n1 = 1`. With `sigma = 0` only the `q` vectors
/// `e_{r, r rho}` are returned; they span a Zassenhaus subalgebra.
pub fn eigenbasis(alg: &MonomialAlgebra, params: &ToralParams) -> Result<EigenBasis, GradingError> {
    require_phi_one(alg)?;
    if alg.n1 != 1 {
        return Err(GradingError::NeedsSmallX);
    }
    let f = alg.table.field().clone();
    let p = alg.p;
    let q = (p as u64).pow(alg.n2);
    let ss: Vec<u32> = if params.sigma.is_zero() { vec![0] } else { (0..p).collect() };
    let mut out =
        EigenBasis { params: *params, p, q, vectors: vec![], labels: vec![], r: vec![], s: vec![], alpha: vec![] };
    for j in 0..q as u32 {
        let r = 1 - j as i64;
        for &s in &ss {
            let alpha = f.add(f.mul(f.int(r), params.rho), f.mul(f.int(s as i64), params.sigma));
            let mut v = linalg::zero_vector(alg.table.dim());
            for i in 0..p {
                v[alg.index(i, j).unwrap()] = f.pow(alpha, i as u64);
            }
            let top = alg.index(p - 1, j).unwrap();
            v[top] = f.add(v[top], f.mul(params.pi, f.int(j as i64)));
            out.vectors.push(v);
            out.labels.push(format!("e[{r},{}]", f.format(alpha)));
            out.r.push(r);
            out.s.push(s);
            out.alpha.push(alpha);
        }
    }
    let e0 = toral_element(alg, params)?;
    for (k, v) in out.vectors.iter().enumerate() {
        let lhs = alg.table.bracket_vec(&e0, v);
        if lhs != linalg::scale(&f, out.alpha[k], v) {
            return Err(GradingError::NotEigen(out.labels[k].clone()));
        }
    }
    Ok(out)
}

/// The structure table of `alg` (or of the Zassenhaus subalgebra, for a
/// partial basis) in the eigenbasis.
pub fn eigen_table(alg: &MonomialAlgebra, basis: &EigenBasis) -> Result<StructureTable, GradingError> {
    Ok(alg.table.restrict(&basis.vectors, basis.labels.clone())?)
}

/// Check `{e_{1-j,a}, e_{1-l,b}} = (b C(j+l-1,l) - a C(j+l-1,j)) e_{2-j-l,a+b}`
/// on every pair, in the eigen table.
pub fn eigen_bracket_check(table: &StructureTable, basis: &EigenBasis) -> Result<(), GradingError> {
    let f = table.field();
    let p = basis.p;
    let n = basis.len();
    for a in 0..n {
        for b in 0..n {
            let (j, l) = (1 - basis.r[a], 1 - basis.r[b]);
            let mut want = linalg::zero_vector(n);
            let r = 2 - j - l;
            if r >= 2 - basis.q as i64 && r <= 1 {
                let c = f.sub(
                    f.mul(basis.alpha[b], f.int(binom_mod_p(j + l - 1, l, p) as i64)),
                    f.mul(basis.alpha[a], f.int(binom_mod_p(j + l - 1, j, p) as i64)),
                );
                let sum = f.add(basis.alpha[a], basis.alpha[b]);
                if !c.is_zero() {
                    let k = basis
                        .position_of_alpha(r, sum)
                        .ok_or_else(|| GradingError::NotEigen(format!("{} x {}", basis.labels[a], basis.labels[b])))?;
                    want[k] = c;
                }
            }
            let mut got = linalg::zero_vector(n);
            for &(k, c) in table.basis_bracket(a, b) {
                got[k] = c;
            }
            if got != want {
                return Err(GradingError::NotEigen(format!("{} x {}", basis.labels[a], basis.labels[b])));
            }
        }
    }
    Ok(())
}

/// The cyclic grading of the eigenbasis: `e_{r, r rho + s sigma}` has the
/// degree `k mod (q-1)p` with `k = r mod (q-1)` and `k = s mod p`, shifted
/// so that `X` and `Y` have degree 1. For `sigma = 0` the grading is by
/// `r mod (q-1)`.
pub fn grade_finite(basis: &EigenBasis) -> Result<DegreeMap, GradingError> {
    let q = basis.q;
    let p = basis.p as u64;
    if basis.is_partial() {
        return Ok(DegreeMap::new(q - 1, basis.r.iter().copied()));
    }
    let modulus = (q - 1) * p;
    let raw: Vec<u64> = (0..basis.len()).map(|k| combine_residues(basis.r[k], basis.s[k] as i64, q, p)).collect();
    let (dx, dy) = (raw[basis.x_index()], raw[basis.y_index()]);
    if dx != dy {
        return Err(GradingError::Unnormalizable(dx, dy));
    }
    let shift = (1 + modulus - dx) % modulus;
    Ok(DegreeMap { modulus, degrees: raw.iter().map(|d| (d + shift) % modulus).collect() })
}

/// Span of the basis vectors of `t` of degree `d`.
pub fn component(t: &StructureTable, d: &DegreeMap, degree: i64) -> Subspace {
    Subspace::span(t.field(), t.dim(), d.component(degree).into_iter().map(|i| linalg::unit_vector(t.dim(), i)))
}
