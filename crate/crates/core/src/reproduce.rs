//! Ready-made graded algebras whose loop algebras are thin with k = q,
//! together with the diamond pattern each one is predicted to have.

use crate::cartan::{build_h2_phi1, CartanError, MonomialAlgebra};
use crate::ffield::{Field, FieldElement, FieldError};
use crate::grading::{eigen_table, eigenbasis, grade_finite, grade_mixed, EigenBasis, GradingError, ToralParams};
use crate::liealg::{center, quotient_by_ideal, DegreeMap, LieError, Quotient, StructureTable};
use crate::linalg::{self, Subspace};
use crate::thinloop::{thin_report, DiamondKind, DiamondType, GeneratorHint, ThinError, ThinReport};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReproError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Thin(#[from] ThinError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug)]
pub enum Pattern {
    /// Type -1 in degrees `q mod (q-1)r`, infinite elsewhere.
    Mixed { r: usize },
    /// `mu_t = -1 + (t-2) step`; values 0 and 1 show up as fake diamonds.
    Progression { step: FieldElement },
}

#[derive(Clone, Debug)]
pub struct Reproduction {
    pub title: String,
    pub p: u32,
    pub q: usize,
    pub table: StructureTable,
    pub degmap: DegreeMap,
    pub hint: GeneratorHint,
    pub pattern: Pattern,
}

impl Reproduction {
    pub fn field(&self) -> &Arc<Field> {
        self.table.field()
    }

    /// Three periods of the grading, and at least `3q` so that `k` can be
    /// computed.
    pub fn default_depth(&self) -> usize {
        (3 * self.degmap.modulus as usize).max(3 * self.q + 1)
    }

    pub fn run(&self, depth: usize) -> Result<ThinReport, ThinError> {
        thin_report(&self.table, &self.degmap, self.q, depth, Some(&self.hint))
    }

    /// Predicted kind of the `t`-th diamond.
    pub fn expected(&self, ordinal: usize) -> DiamondKind {
        let f = self.field();
        if ordinal == 1 {
            return DiamondKind::Genuine(None);
        }
        let degree = (ordinal - 1) * (self.q - 1) + 1;
        let mu = match self.pattern {
            Pattern::Mixed { r } => {
                if degree % ((self.q - 1) * r) == self.q % ((self.q - 1) * r) {
                    DiamondType::Finite(f.int(-1))
                } else {
                    DiamondType::Infinity
                }
            }
            Pattern::Progression { step } => {
                DiamondType::Finite(f.add(f.int(-1), f.mul(f.int(ordinal as i64 - 2), step)))
            }
        };
        match mu {
            DiamondType::Finite(m) if m.is_zero() => DiamondKind::Fake0,
            DiamondType::Finite(m) if m == f.one() => DiamondKind::Fake1,
            _ => DiamondKind::Genuine(Some(mu)),
        }
    }

    /// Disagreements between a report and the predicted pattern.
    pub fn compare(&self, report: &ThinReport) -> Vec<String> {
        let f = self.field();
        let mut out = Vec::new();
        if let Some(d) = report.covering.failure {
            out.push(format!("covering fails at degree {d}"));
        }
        if !report.scan.anomalies.is_empty() {
            out.push(format!("components of unexpected dimension at {:?}", report.scan.anomalies));
        }
        for r in &report.scan.records {
            let want = self.expected(r.ordinal);
            if r.kind != want {
                out.push(format!(
                    "diamond {} (degree {}): found {}, expected {}",
                    r.ordinal,
                    r.degree,
                    describe(f, r.kind),
                    describe(f, want)
                ));
            }
        }
        out
    }
}

pub fn describe(f: &Field, k: DiamondKind) -> String {
    match k {
        DiamondKind::Genuine(Some(mu)) => format!("genuine of type {}", mu.format(f)),
        other => other.name().to_string(),
    }
}

/// Monomial grading of `H(2;(n1,n2);Phi(1))` with `X = x`, `Y = y-bar`.
pub fn mixed(p: u32, n1: u32, n2: u32) -> Result<Reproduction, ReproError> {
    let f = Field::prime(p)?;
    let alg = build_h2_phi1(&f, n1, n2, f.one())?;
    let (q, r) = (p.pow(n2) as u64, p.pow(n1) as u64);
    let degmap = grade_mixed(&alg, q, r)?;
    let (_, t2) = alg.tau();
    let hint = GeneratorHint { x: alg.monomial(1, 0).unwrap(), y: alg.monomial(0, t2).unwrap() };
    Ok(Reproduction {
        title: format!("mixed grading p={p} n=({n1},{n2})"),
        p,
        q: q as usize,
        table: alg.table,
        degmap,
        hint,
        pattern: Pattern::Mixed { r: r as usize },
    })
}

/// Data of the finite grading on `H(2;(1,n2);Phi(1))` before it is turned
/// into a [`Reproduction`].
#[derive(Clone, Debug)]
pub struct FiniteSetup {
    pub alg: MonomialAlgebra,
    pub basis: EigenBasis,
    pub table: StructureTable,
    pub degmap: DegreeMap,
}

pub fn finite_setup(field: &Arc<Field>, n2: u32, params: &ToralParams) -> Result<FiniteSetup, ReproError> {
    let alg = build_h2_phi1(field, 1, n2, params.eps)?;
    let basis = eigenbasis(&alg, params)?;
    let table = eigen_table(&alg, &basis)?;
    let degmap = grade_finite(&basis)?;
    Ok(FiniteSetup { alg, basis, table, degmap })
}

fn unit_hint(basis: &EigenBasis) -> GeneratorHint {
    let n = basis.len();
    GeneratorHint { x: linalg::unit_vector(n, basis.x_index()), y: linalg::unit_vector(n, basis.y_index()) }
}

/// Finite grading with `X = e_{1,rho+sigma}`, `Y = e_{2-q,2rho+sigma}`.
pub fn finite(field: &Arc<Field>, n2: u32, params: &ToralParams) -> Result<Reproduction, ReproError> {
    if params.eps != field.one() {
        return Err(ReproError::Invalid("the finite grading reproduction needs eps = 1".into()));
    }
    let s = finite_setup(field, n2, params)?;
    let step = if params.sigma.is_zero() {
        FieldElement::ZERO
    } else {
        params.ratio(field).ok_or_else(|| ReproError::Invalid("rho = 0".into()))?
    };
    let title = if params.sigma.is_zero() {
        format!("sigma = 0 degeneration p={} q={}", field.characteristic(), s.basis.q)
    } else {
        format!(
            "finite grading p={} q={} mu3={}",
            field.characteristic(),
            s.basis.q,
            field.format(params.mu3(field).unwrap())
        )
    };
    Ok(Reproduction {
        title,
        p: field.characteristic(),
        q: s.basis.q as usize,
        hint: unit_hint(&s.basis),
        table: s.table,
        degmap: s.degmap,
        pattern: Pattern::Progression { step },
    })
}

/// `sigma = 0`, `rho = 1`: the Zassenhaus subalgebra spanned by `e_{r, r}`.
pub fn sigma_zero(p: u32, n2: u32) -> Result<Reproduction, ReproError> {
    let f = Field::prime(p)?;
    let params = ToralParams::new(&f, f.zero(), f.one(), f.one())?;
    finite(&f, n2, &params)
}

/// `eps = 0` over the prime field with `rho = 1`, `sigma = ratio`, after
/// factoring out the one-dimensional centre.
#[derive(Clone, Debug)]
pub struct EpsZero {
    pub setup: FiniteSetup,
    pub center: Subspace,
    pub quotient: Quotient,
    pub reproduction: Reproduction,
}

pub fn eps_zero(p: u32, n2: u32, ratio: i64) -> Result<EpsZero, ReproError> {
    let f = Field::prime(p)?;
    let sigma = f.int(ratio);
    if sigma.is_zero() || f.add(sigma, f.one()).is_zero() {
        return Err(ReproError::Invalid(format!("ratio {ratio} must be nonzero and different from -1")));
    }
    let params = ToralParams::new(&f, sigma, f.one(), f.zero())?;
    let setup = finite_setup(&f, n2, &params)?;
    let z = center(&setup.table, &Subspace::full(setup.table.dim()))?;
    let quotient = quotient_by_ideal(&setup.table, &z)?;
    let degmap = DegreeMap {
        modulus: setup.degmap.modulus,
        degrees: quotient.representatives.iter().map(|&i| setup.degmap.degrees[i]).collect(),
    };
    let hint = unit_hint(&setup.basis);
    let hint = GeneratorHint { x: quotient.project(&hint.x), y: quotient.project(&hint.y) };
    let reproduction = Reproduction {
        title: format!("eps = 0 degeneration p={p} q={} sigma/rho={}", setup.basis.q, sigma.index()),
        p,
        q: setup.basis.q as usize,
        table: quotient.table.clone(),
        degmap,
        hint,
        pattern: Pattern::Progression { step: sigma },
    };
    Ok(EpsZero { setup, center: z, quotient, reproduction })
}
