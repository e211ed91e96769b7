//! Loop algebras of cyclically graded Lie algebras and their thinness data:
//! diamonds, diamond types, covering, centralizer chains and parameter `k`.

use crate::ffield::{Field, FieldElement};
use crate::liealg::{centralizer_in, subalgebra_generated, DegreeMap, LieError, StructureTable};
use crate::linalg::{self, Subspace, Vector};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

/// Fields up to this order are checked for covering by enumerating every
/// projective point of a diamond.
pub const ENUMERATION_LIMIT: u32 = 729;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThinError {
    #[error("depth must be at least {0}")]
    InsufficientDepth(usize),
    #[error("degree map does not match the table")]
    DegreeMapMismatch,
    #[error("centralizer of M_2 in M_1 has dimension {0}, expected 1")]
    NoAnnihilator(usize),
    #[error("declared generator does not lie in M_1")]
    BadHint,
    #[error("malformed diamond at degree {0}: {1}")]
    MalformedDiamond(usize, String),
    #[error("consecutive diamonds at degrees {0} and {}", .0 + 1)]
    ConsecutiveDiamonds(usize),
    #[error("loop algebra vanishes in degree {0}")]
    FiniteExpansion(usize),
    #[error("second derived subalgebra has not stabilised by depth {0}")]
    NotStabilized(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Homogeneous components `M_d`, `d = 1..depth`, of the loop algebra
/// generated by the degree-one component of a cyclic grading.
#[derive(Clone, Debug)]
pub struct LoopExpansion {
    pub table: StructureTable,
    pub degmap: DegreeMap,
    pub depth: usize,
    components: Vec<Subspace>,
    /// `M_1` generates the whole base algebra.
    pub generates_base: bool,
    /// `M_{N+1} = M_1`.
    pub periodic: bool,
}

impl LoopExpansion {
    /// `M_d` for `1 <= d <= depth`.
    pub fn component(&self, d: usize) -> &Subspace {
        &self.components[d - 1]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components[..self.depth].iter().map(|c| c.dim()).collect()
    }

    pub fn field(&self) -> &Field {
        self.table.field()
    }

    /// The loop algebra agrees with the one built from the whole base.
    pub fn coincidence(&self) -> bool {
        self.generates_base && self.periodic
    }
}

pub fn loop_expand(table: &StructureTable, degmap: &DegreeMap, depth: usize) -> Result<LoopExpansion, ThinError> {
    if depth < 2 {
        return Err(ThinError::InsufficientDepth(2));
    }
    if degmap.degrees.len() != table.dim() {
        return Err(ThinError::DegreeMapMismatch);
    }
    let f = table.field();
    let n = table.dim();
    let m1 = Subspace::span(f, n, degmap.component(1).into_iter().map(|i| linalg::unit_vector(n, i)));
    let total = depth.max(degmap.modulus as usize + 1);
    let mut components = vec![m1.clone()];
    while components.len() < total {
        let last = components.last().unwrap();
        let next = bracket_spaces(table, last, &m1);
        components.push(next);
    }
    let generates_base = subalgebra_generated(table, m1.basis()).dim() == n;
    let periodic = components[degmap.modulus as usize] == m1;
    Ok(LoopExpansion { table: table.clone(), degmap: degmap.clone(), depth, components, generates_base, periodic })
}

fn bracket_spaces(t: &StructureTable, a: &Subspace, b: &Subspace) -> Subspace {
    let vs = a.basis().iter().flat_map(|u| b.basis().iter().map(move |v| t.bracket_vec(u, v)));
    Subspace::span(t.field(), t.dim(), vs.collect::<Vec<_>>())
}

fn line(f: &Field, v: &[FieldElement]) -> Subspace {
    Subspace::span(f, v.len(), [v.to_vec()])
}

/// Coefficient of `v` along the single basis vector of a line `w`.
fn along(f: &Field, w: &Subspace, v: &[FieldElement]) -> Option<FieldElement> {
    w.coordinates(f, v).map(|c| c[0])
}

/// Generators offered by the caller, used when `C_{M_1}(M_2)` does not single
/// out `Y` (the case `q = 3`) and to fix scalars.
#[derive(Clone, Debug)]
pub struct GeneratorHint {
    pub x: Vector,
    pub y: Vector,
}

#[derive(Clone, Debug, Serialize)]
pub enum YSource {
    Centralizer,
    Declared,
}

/// Values of `[V,X,X], [V,Y,Y], [V,X,Y], [V,Y,X]` along `M_{q+1}` after
/// the correction `X <- X + alpha Y`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub alpha: FieldElement,
    pub vxx: FieldElement,
    pub vyy: FieldElement,
    pub vxy: FieldElement,
    pub vyx: FieldElement,
    pub y_source: YSource,
}

#[derive(Clone, Debug)]
pub struct Generators {
    pub x: Vector,
    pub y: Vector,
    pub certificate: Certificate,
}

/// `Y` spans `C_{M_1}(M_2)`; `X` is a complement corrected by a multiple of
/// `Y` so that `[V,X,X] = 0`, where `V` spans `M_{q-1}`.
pub fn choose_generators(exp: &LoopExpansion, q: usize, hint: Option<&GeneratorHint>) -> Result<Generators, ThinError> {
    let t = &exp.table;
    let f = t.field();
    if exp.depth < q + 1 {
        return Err(ThinError::InsufficientDepth(q + 1));
    }
    let m1 = exp.component(1);
    if let Some(h) = hint {
        if !m1.contains(f, &h.x) || !m1.contains(f, &h.y) || linalg::is_zero(&h.y) {
            return Err(ThinError::BadHint);
        }
    }
    let c = centralizer_in(t, m1, exp.component(2));
    let (y, y_source) = if c.dim() == 1 {
        let y = match hint {
            Some(h) if c.contains(f, &h.y) => h.y.clone(),
            _ => c.basis()[0].clone(),
        };
        (y, YSource::Centralizer)
    } else if let Some(h) = hint {
        (h.y.clone(), YSource::Declared)
    } else {
        return Err(ThinError::NoAnnihilator(c.dim()));
    };
    let yl = line(f, &y);
    let x0 = match hint {
        Some(h) if !yl.contains(f, &h.x) => h.x.clone(),
        Some(_) => return Err(ThinError::BadHint),
        None => m1.basis().iter().find(|b| !yl.contains(f, b)).cloned().ok_or(ThinError::NoAnnihilator(m1.dim()))?,
    };
    let v = single(exp, q - 1)?;
    let w = exp.component(q + 1);
    if w.dim() != 1 {
        return Err(ThinError::MalformedDiamond(q + 1, format!("M_{} has dimension {}", q + 1, w.dim())));
    }
    let coeff = |a: &Vector, b: &Vector| along(f, w, &t.bracket_chain(&v, &[a, b])).unwrap();
    let (cxx, cyy, cxy, cyx) = (coeff(&x0, &x0), coeff(&y, &y), coeff(&x0, &y), coeff(&y, &x0));
    // [V, X+aY, X+aY] = cxx + a (cxy + cyx) + a^2 cyy
    let lin = f.add(cxy, cyx);
    let alpha = if cxx.is_zero() {
        FieldElement::ZERO
    } else if cyy.is_zero() && !lin.is_zero() {
        f.neg(f.div(cxx, lin).unwrap())
    } else {
        return Err(ThinError::MalformedDiamond(q, "no correction of X annihilates [V,X,X]".into()));
    };
    let x = linalg::add(f, &x0, &linalg::scale(f, alpha, &y));
    let certificate =
        Certificate { alpha, vxx: coeff(&x, &x), vyy: coeff(&y, &y), vxy: coeff(&x, &y), vyx: coeff(&y, &x), y_source };
    Ok(Generators { x, y, certificate })
}

fn single(exp: &LoopExpansion, d: usize) -> Result<Vector, ThinError> {
    let c = exp.component(d);
    if c.dim() != 1 {
        return Err(ThinError::MalformedDiamond(d + 1, format!("M_{d} has dimension {}", c.dim())));
    }
    Ok(c.basis()[0].clone())
}

fn covers(t: &StructureTable, u: &[FieldElement], g: &Generators, next: &Subspace) -> bool {
    let s = Subspace::span(t.field(), t.dim(), [t.bracket_vec(u, &g.x), t.bracket_vec(u, &g.y)]);
    s == *next
}

/// Covering at degree `d` by checking every projective point of `M_d`.
pub fn covering_by_enumeration(exp: &LoopExpansion, g: &Generators, d: usize) -> bool {
    let t = &exp.table;
    let f = t.field();
    let (cur, next) = (exp.component(d), exp.component(d + 1));
    match cur.basis() {
        [] => true,
        [u] => covers(t, u, g, next),
        [u, v] => {
            covers(t, u, g, next)
                && f.elements().all(|c| covers(t, &linalg::add(f, &linalg::scale(f, c, u), v), g, next))
        }
        basis => {
            // Enumerate projective points by their leading coordinate.
            let k = basis.len();
            let q = f.order() as u64;
            (0..k).all(|lead| {
                (0..q.pow((k - lead - 1) as u32)).all(|mut code| {
                    let mut u = basis[lead].clone();
                    for b in &basis[lead + 1..] {
                        let c = f.elements().nth((code % q) as usize).unwrap();
                        code /= q;
                        linalg::axpy(f, &mut u, c, b);
                    }
                    covers(t, &u, g, next)
                })
            })
        }
    }
}

/// Sufficient criterion at a diamond `M_d = <[V,X],[V,Y]>`: with
/// `[V,X,X] = [V,Y,Y] = 0`, covering holds iff `[V,X,Y]` and `[V,Y,X]` are
/// both nonzero. `None` if the criterion does not apply.
pub fn covering_by_criterion(exp: &LoopExpansion, g: &Generators, d: usize) -> Option<bool> {
    let t = &exp.table;
    let f = t.field();
    if d < 2 || exp.component(d).dim() != 2 || exp.component(d - 1).dim() != 1 || exp.component(d + 1).dim() != 1 {
        return None;
    }
    let v = &exp.component(d - 1).basis()[0];
    let vx = t.bracket_vec(v, &g.x);
    let vy = t.bracket_vec(v, &g.y);
    if Subspace::span(f, t.dim(), [vx.clone(), vy.clone()]) != *exp.component(d) {
        return None;
    }
    let zero = |u: &Vector| linalg::is_zero(u);
    if !zero(&t.bracket_vec(&vx, &g.x)) || !zero(&t.bracket_vec(&vy, &g.y)) {
        return None;
    }
    Some(!zero(&t.bracket_vec(&vx, &g.y)) && !zero(&t.bracket_vec(&vy, &g.x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CoveringMethod {
    Enumeration,
    Criterion,
}

#[derive(Clone, Debug)]
pub struct CoveringReport {
    pub checked: usize,
    pub failure: Option<usize>,
    pub methods: Vec<(usize, CoveringMethod)>,
}

impl CoveringReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Covering for every `d < depth`.
pub fn check_covering(exp: &LoopExpansion, g: &Generators) -> CoveringReport {
    let small = exp.field().order() <= ENUMERATION_LIMIT;
    let mut methods = Vec::new();
    for d in 1..exp.depth {
        let ok = if exp.component(d).dim() == 2 && !small {
            match covering_by_criterion(exp, g, d) {
                Some(ok) => {
                    methods.push((d, CoveringMethod::Criterion));
                    ok
                }
                None => covering_by_enumeration(exp, g, d),
            }
        } else {
            if exp.component(d).dim() == 2 {
                methods.push((d, CoveringMethod::Enumeration));
            }
            covering_by_enumeration(exp, g, d)
        };
        if !ok {
            return CoveringReport { checked: d, failure: Some(d), methods };
        }
    }
    CoveringReport { checked: exp.depth - 1, failure: None, methods }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiamondType {
    Finite(FieldElement),
    Infinity,
}

impl DiamondType {
    pub fn format(&self, f: &Field) -> String {
        match self {
            DiamondType::Finite(a) => f.format(*a),
            DiamondType::Infinity => "inf".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiamondKind {
    /// A two-dimensional component; the first diamond carries no type.
    Genuine(Option<DiamondType>),
    /// One-dimensional slot with `[V,X] = 0` and `[V,Y,Y] = 0`.
    Fake0,
    /// One-dimensional slot with `[V,Y] = 0` and `[V,X,X] = 0`.
    Fake1,
    Absent,
}

impl DiamondKind {
    pub fn name(&self) -> &'static str {
        match self {
            DiamondKind::Genuine(_) => "genuine",
            DiamondKind::Fake0 => "fake0",
            DiamondKind::Fake1 => "fake1",
            DiamondKind::Absent => "none",
        }
    }
}

/// Type of the diamond following `V`: `(1-mu)[V,X,Y] = mu [V,Y,X]`.
pub fn classify_type(
    t: &StructureTable,
    v: &[FieldElement],
    g: &Generators,
    next: &Subspace,
    degree: usize,
) -> Result<DiamondKind, ThinError> {
    let f = t.field();
    let vx = t.bracket_vec(v, &g.x);
    let vy = t.bracket_vec(v, &g.y);
    let slot = Subspace::span(f, t.dim(), [vx.clone(), vy.clone()]);
    let vxx = t.bracket_vec(&vx, &g.x);
    let vyy = t.bracket_vec(&vy, &g.y);
    match slot.dim() {
        2 => {
            if next.dim() == 2 {
                return Err(ThinError::ConsecutiveDiamonds(degree));
            }
            if next.dim() != 1 {
                return Err(ThinError::MalformedDiamond(
                    degree,
                    format!("next component has dimension {}", next.dim()),
                ));
            }
            if !linalg::is_zero(&vxx) || !linalg::is_zero(&vyy) {
                return Err(ThinError::MalformedDiamond(degree, "[V,X,X] or [V,Y,Y] is nonzero".into()));
            }
            let c1 = along(f, next, &t.bracket_vec(&vx, &g.y)).unwrap();
            let c2 = along(f, next, &t.bracket_vec(&vy, &g.x)).unwrap();
            let s = f.add(c1, c2);
            let mu = if s.is_zero() { DiamondType::Infinity } else { DiamondType::Finite(f.div(c1, s).unwrap()) };
            Ok(DiamondKind::Genuine(Some(mu)))
        }
        1 if linalg::is_zero(&vx) && linalg::is_zero(&vyy) => Ok(DiamondKind::Fake0),
        1 if linalg::is_zero(&vy) && linalg::is_zero(&vxx) => Ok(DiamondKind::Fake1),
        _ => Ok(DiamondKind::Absent),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondRecord {
    pub degree: usize,
    /// `t`, for the slot in degree `(t-1)(q-1) + 1`.
    pub ordinal: usize,
    pub kind: DiamondKind,
}

#[derive(Clone, Debug)]
pub struct DiamondScan {
    pub records: Vec<DiamondRecord>,
    /// Degrees outside the slots whose component is not one-dimensional.
    pub anomalies: Vec<usize>,
}

/// Classify every slot `d = 1 mod (q-1)` with `d < depth`.
pub fn detect_diamonds(exp: &LoopExpansion, g: &Generators, q: usize) -> Result<DiamondScan, ThinError> {
    let mut records = Vec::new();
    let mut anomalies = Vec::new();
    for d in 1..exp.depth {
        let slot = (d - 1) % (q - 1) == 0;
        if !slot {
            if exp.component(d).dim() != 1 {
                anomalies.push(d);
            }
            continue;
        }
        let ordinal = (d - 1) / (q - 1) + 1;
        let kind = if d == 1 {
            if exp.component(1).dim() == 2 {
                DiamondKind::Genuine(None)
            } else {
                DiamondKind::Absent
            }
        } else {
            let v = single(exp, d - 1)?;
            let kind = classify_type(&exp.table, &v, g, exp.component(d + 1), d)?;
            let expected_dim = if matches!(kind, DiamondKind::Genuine(_)) { 2 } else { 1 };
            if exp.component(d).dim() != expected_dim && kind != DiamondKind::Absent {
                return Err(ThinError::MalformedDiamond(d, "slot differs from the loop component".into()));
            }
            kind
        };
        records.push(DiamondRecord { degree: d, ordinal, kind });
    }
    Ok(DiamondScan { records, anomalies })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChainStatus {
    Pass,
    Fail(usize),
    /// The range of degrees is empty or beyond the depth.
    Vacuous,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainVerdict {
    pub first: ChainStatus,
    pub second: ChainStatus,
    pub proviso: Vec<String>,
}

fn chain(exp: &LoopExpansion, g: &Generators, range: std::ops::RangeInclusive<usize>) -> ChainStatus {
    let f = exp.field();
    let y = line(f, &g.y);
    if range.is_empty() || *range.end() > exp.depth {
        return ChainStatus::Vacuous;
    }
    for d in range {
        if centralizer_in(&exp.table, exp.component(1), exp.component(d)) != y {
            return ChainStatus::Fail(d);
        }
    }
    ChainStatus::Pass
}

/// `C_{M_1}(M_d) = <Y>` for `2 <= d <= q-2` and for `q+1 <= d <= 2q-3`.
pub fn centralizer_chain(exp: &LoopExpansion, g: &Generators, q: usize, p: u32) -> ChainVerdict {
    let mut proviso = Vec::new();
    if q <= 3 {
        proviso.push("first chain is empty for q <= 3".to_string());
    }
    if p <= 3 || q == 5 {
        proviso.push("second chain is only expected for p > 3 and q != 5".to_string());
    }
    ChainVerdict {
        first: chain(exp, g, 2..=q.saturating_sub(2)),
        second: chain(exp, g, q + 1..=(2 * q).saturating_sub(3)),
        proviso,
    }
}

#[derive(Clone, Debug)]
pub struct ParameterK {
    pub k: usize,
    pub dim_at_k: usize,
    /// `dim M_d - dim (L^(2))_d` for `d = 1..depth`.
    pub codims: Vec<usize>,
}

/// `k = dim(L / L^(2)) - 1`, with `(L^(2))_d = sum_{a+b=d, a,b>=2} [M_a, M_b]`.
pub fn parameter_k(exp: &LoopExpansion, q: usize) -> Result<ParameterK, ThinError> {
    let t = &exp.table;
    let f = t.field();
    let depth = exp.depth;
    if depth < 3 * q {
        return Err(ThinError::InsufficientDepth(3 * q));
    }
    if let Some(d) = (1..=depth).find(|&d| exp.component(d).dim() == 0) {
        return Err(ThinError::FiniteExpansion(d));
    }
    let mut codims = Vec::with_capacity(depth);
    for d in 1..=depth {
        let target = exp.component(d).dim();
        let mut span = Subspace::zero(t.dim());
        for a in 2..=d.saturating_sub(2) {
            if span.dim() == target {
                break;
            }
            let b = d - a;
            if b < a {
                break;
            }
            span = span.sum(f, &bracket_spaces(t, exp.component(a), exp.component(b)));
        }
        codims.push(target - span.dim());
    }
    if codims[depth - q..].iter().any(|&c| c != 0) {
        return Err(ThinError::NotStabilized(depth));
    }
    let total: usize = codims.iter().sum();
    let k = total - 1;
    Ok(ParameterK { k, dim_at_k: exp.component(k).dim(), codims })
}

#[derive(Clone, Debug)]
pub struct ThinReport {
    pub q: usize,
    pub dims: Vec<usize>,
    pub generators: Generators,
    pub covering: CoveringReport,
    pub scan: DiamondScan,
    pub chains: ChainVerdict,
    pub k: Result<ParameterK, ThinError>,
    pub coincidence: bool,
    pub notes: Vec<String>,
}

impl ThinReport {
    /// Types of the genuine diamonds, by ordinal.
    pub fn record(&self, ordinal: usize) -> Option<&DiamondRecord> {
        self.scan.records.iter().find(|r| r.ordinal == ordinal)
    }

    pub fn to_json(&self, f: &Field) -> Value {
        let coords = |v: &Vector| v.iter().map(|&c| f.coeffs(c)).collect::<Vec<_>>();
        let chain = |c: &ChainStatus| match c {
            ChainStatus::Pass => "PASS".to_string(),
            ChainStatus::Fail(d) => format!("FAIL at degree {d}"),
            ChainStatus::Vacuous => "vacuous".to_string(),
        };
        let cert = &self.generators.certificate;
        json!({
            "dims": self.dims,
            "diamonds": self.scan.records.iter().map(|r| json!({
                "degree": r.degree,
                "kind": r.kind.name(),
                "type": match r.kind {
                    DiamondKind::Genuine(Some(mu)) => Some(mu.format(f)),
                    DiamondKind::Fake0 => Some("0".to_string()),
                    DiamondKind::Fake1 => Some("1".to_string()),
                    _ => None,
                },
                "ordinal": r.ordinal,
            })).collect::<Vec<_>>(),
            "k": self.k.as_ref().ok().map(|k| k.k),
            "covering": match self.covering.failure {
                None => "PASS".to_string(),
                Some(d) => format!("FAIL at degree {d}"),
            },
            "chains": {
                "first": chain(&self.chains.first),
                "second": chain(&self.chains.second),
                "proviso": self.chains.proviso,
            },
            "generators": {
                "x": coords(&self.generators.x),
                "y": coords(&self.generators.y),
                "alpha": f.coeffs(cert.alpha),
                "y_source": format!("{:?}", cert.y_source),
                "certificate": {
                    "vxx": f.coeffs(cert.vxx),
                    "vyy": f.coeffs(cert.vyy),
                    "vxy": f.coeffs(cert.vxy),
                    "vyx": f.coeffs(cert.vyx),
                },
            },
            "coincidence": self.coincidence,
            "notes": self.notes,
        })
    }
}

/// Run the whole pipeline on a graded base algebra.
pub fn thin_report(
    table: &StructureTable,
    degmap: &DegreeMap,
    q: usize,
    depth: usize,
    hint: Option<&GeneratorHint>,
) -> Result<ThinReport, ThinError> {
    let exp = loop_expand(table, degmap, depth)?;
    let generators = choose_generators(&exp, q, hint)?;
    let covering = check_covering(&exp, &generators);
    let scan = detect_diamonds(&exp, &generators, q)?;
    let p = table.field().characteristic();
    let chains = centralizer_chain(&exp, &generators, q, p);
    let k = parameter_k(&exp, q);
    let mut notes = Vec::new();
    if p == 2 {
        notes.push("characteristic 2: types are read modulo 2, so -1 = 1 and a fake type-1 slot may stand for a type -1 diamond".to_string());
    }
    if matches!(generators.certificate.y_source, YSource::Declared) {
        notes.push("Y taken from the declared generators since C_{M_1}(M_2) is not a line".to_string());
    }
    Ok(ThinReport { q, dims: exp.dims(), generators, covering, scan, chains, k, coincidence: exp.coincidence(), notes })
}
