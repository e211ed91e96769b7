//! Lie algebras given by structure constants on a basis.

use crate::ffield::{Field, FieldElement, FieldError, FieldSpec};
use crate::linalg::{self, Subspace, Vector};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("elements belong to different structure tables")]
    TableMismatch,
    #[error("basis index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("bracket of basis element {0} with itself must vanish")]
    NonAlternating(usize),
    #[error("vector length {0} does not match dimension {1}")]
    LengthMismatch(usize, usize),
    #[error("subspace is not closed under the bracket")]
    NotASubalgebra,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("{0} labels supplied for dimension {1}")]
    LabelCount(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

static NEXT_TABLE_ID: AtomicU64 = AtomicU64::new(1);

type Terms = Vec<(usize, FieldElement)>;

/// Sparse structure constants `[b_i, b_j] = sum_k c_ijk b_k`, stored for
/// `i < j` and extended by antisymmetry.
#[derive(Clone)]
pub struct StructureTable {
    id: u64,
    field: Arc<Field>,
    labels: Vec<String>,
    upper: Arc<BTreeMap<(usize, usize), Terms>>,
    dense: Arc<Vec<Terms>>,
}

impl std::fmt::Debug for StructureTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StructureTable")
            .field("field", &self.field)
            .field("dim", &self.dim())
            .field("nonzero_brackets", &self.upper.len())
            .finish()
    }
}

/// An element of a particular table, as a sparse coordinate vector with no
/// stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    table: u64,
    terms: Terms,
}

impl Element {
    pub fn terms(&self) -> &[(usize, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.terms.binary_search_by_key(&i, |t| t.0).map_or(FieldElement::ZERO, |pos| self.terms[pos].1)
    }
}

impl StructureTable {
    /// Build a table from bracket entries `(i, j, terms)`. Entries with
    /// `i > j` are negated and flipped; repeated entries accumulate.
    pub fn new<I>(field: Arc<Field>, labels: Vec<String>, entries: I) -> Result<Self, LieError>
    where
        I: IntoIterator<Item = (usize, usize, Terms)>,
    {
        let n = labels.len();
        let mut acc: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (i, j, terms) in entries {
            for &idx in [i, j].iter().chain(terms.iter().map(|t| &t.0)) {
                if idx >= n {
                    return Err(LieError::IndexOutOfRange(idx, n));
                }
            }
            if i == j {
                if terms.iter().any(|t| !t.1.is_zero()) {
                    return Err(LieError::NonAlternating(i));
                }
                continue;
            }
            let (key, sign) = if i < j { ((i, j), false) } else { ((j, i), true) };
            let v = acc.entry(key).or_insert_with(|| linalg::zero_vector(n));
            for (k, c) in terms {
                let c = if sign { field.neg(c) } else { c };
                v[k] = field.add(v[k], c);
            }
        }
        let upper: BTreeMap<(usize, usize), Terms> =
            acc.into_iter().map(|(key, v)| (key, dense_to_terms(&v))).filter(|(_, t)| !t.is_empty()).collect();
        Ok(Self::assemble(field, labels, upper))
    }

    fn assemble(field: Arc<Field>, labels: Vec<String>, upper: BTreeMap<(usize, usize), Terms>) -> Self {
        let n = labels.len();
        let mut dense = vec![Terms::new(); n * n];
        for (&(i, j), terms) in &upper {
            dense[i * n + j] = terms.clone();
            dense[j * n + i] = terms.iter().map(|&(k, c)| (k, field.neg(c))).collect();
        }
        StructureTable {
            id: NEXT_TABLE_ID.fetch_add(1, Ordering::Relaxed),
            field,
            labels,
            upper: Arc::new(upper),
            dense: Arc::new(dense),
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Nonzero brackets `[b_i, b_j]` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &[(usize, FieldElement)])> {
        self.upper.iter().map(|(&(i, j), t)| (i, j, t.as_slice()))
    }

    /// `[b_i, b_j]` as sparse terms.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, FieldElement)] {
        &self.dense[i * self.dim() + j]
    }

    pub fn basis(&self, i: usize) -> Element {
        Element { table: self.id, terms: vec![(i, FieldElement::ONE)] }
    }

    pub fn zero(&self) -> Element {
        Element { table: self.id, terms: vec![] }
    }

    pub fn element(&self, v: &[FieldElement]) -> Result<Element, LieError> {
        if v.len() != self.dim() {
            return Err(LieError::LengthMismatch(v.len(), self.dim()));
        }
        Ok(Element { table: self.id, terms: dense_to_terms(v) })
    }

    pub fn element_from_terms(&self, terms: &[(usize, FieldElement)]) -> Result<Element, LieError> {
        let mut v = linalg::zero_vector(self.dim());
        for &(i, c) in terms {
            if i >= self.dim() {
                return Err(LieError::IndexOutOfRange(i, self.dim()));
            }
            v[i] = self.field.add(v[i], c);
        }
        self.element(&v)
    }

    pub fn to_dense(&self, u: &Element) -> Result<Vector, LieError> {
        self.check(u)?;
        let mut v = linalg::zero_vector(self.dim());
        for &(i, c) in &u.terms {
            v[i] = c;
        }
        Ok(v)
    }

    fn check(&self, u: &Element) -> Result<(), LieError> {
        if u.table != self.id {
            return Err(LieError::TableMismatch);
        }
        Ok(())
    }

    pub fn add(&self, u: &Element, v: &Element) -> Result<Element, LieError> {
        let a = self.to_dense(u)?;
        let b = self.to_dense(v)?;
        self.element(&linalg::add(&self.field, &a, &b))
    }

    pub fn scale(&self, c: FieldElement, u: &Element) -> Result<Element, LieError> {
        self.check(u)?;
        let terms =
            if c.is_zero() { vec![] } else { u.terms.iter().map(|&(i, x)| (i, self.field.mul(c, x))).collect() };
        Ok(Element { table: self.id, terms })
    }

    pub fn bracket(&self, u: &Element, v: &Element) -> Result<Element, LieError> {
        self.check(u)?;
        self.check(v)?;
        let mut out = linalg::zero_vector(self.dim());
        for &(i, a) in &u.terms {
            for &(j, b) in &v.terms {
                let ab = self.field.mul(a, b);
                for &(k, c) in self.basis_bracket(i, j) {
                    out[k] = self.field.add(out[k], self.field.mul(ab, c));
                }
            }
        }
        self.element(&out)
    }

    /// Bracket of dense coordinate vectors.
    pub fn bracket_vec(&self, u: &[FieldElement], v: &[FieldElement]) -> Vector {
        let f = &*self.field;
        let mut out = linalg::zero_vector(self.dim());
        for (i, &a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in self.basis_bracket(i, j) {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    /// Left-normed bracket `[u, v_1, .., v_n]`.
    pub fn bracket_chain(&self, u: &[FieldElement], vs: &[&[FieldElement]]) -> Vector {
        vs.iter().fold(u.to_vec(), |acc, v| self.bracket_vec(&acc, v))
    }

    /// The table in a new basis spanning a subalgebra. `vectors` are given
    /// in current coordinates and must be independent and closed.
    pub fn restrict(&self, vectors: &[Vector], labels: Vec<String>) -> Result<StructureTable, LieError> {
        if labels.len() != vectors.len() {
            return Err(LieError::LabelCount(labels.len(), vectors.len()));
        }
        let f = &*self.field;
        let n = vectors.len();
        let span = Subspace::span(f, self.dim(), vectors.iter().cloned());
        if span.dim() != n {
            return Err(LieError::Dependent);
        }
        // coordinates of span basis rows in terms of `vectors`
        let to_new = coordinates_solver(f, vectors, &span);
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket_vec(&vectors[i], &vectors[j]);
                let rc = span.coordinates(f, &b).ok_or(LieError::NotASubalgebra)?;
                let mut c = linalg::zero_vector(n);
                for (r, &x) in rc.iter().enumerate() {
                    linalg::axpy(f, &mut c, x, &to_new[r]);
                }
                let terms = dense_to_terms(&c);
                if !terms.is_empty() {
                    entries.push((i, j, terms));
                }
            }
        }
        StructureTable::new(self.field.clone(), labels, entries)
    }

    /// Change to a full basis given by `vectors` (rows in old coordinates).
    pub fn change_basis(&self, vectors: &[Vector], labels: Vec<String>) -> Result<StructureTable, LieError> {
        if vectors.len() != self.dim() {
            return Err(LieError::LengthMismatch(vectors.len(), self.dim()));
        }
        self.restrict(vectors, labels)
    }

    /// The subalgebra table on the reduced echelon basis of `s`. Labels are
    /// inherited for unit-vector rows.
    pub fn subalgebra_table(&self, s: &Subspace) -> Result<StructureTable, LieError> {
        let labels = s
            .basis()
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let support: Vec<usize> = (0..row.len()).filter(|&i| !row[i].is_zero()).collect();
                if support.len() == 1 && row[support[0]] == FieldElement::ONE {
                    self.labels[support[0]].clone()
                } else {
                    format!("v{r}")
                }
            })
            .collect();
        self.restrict(s.basis(), labels)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            field: self.field.spec().clone(),
            labels: self.labels.clone(),
            brackets: self
                .upper
                .iter()
                .map(|(&(i, j), t)| (i, j, t.iter().map(|&(k, c)| (k, self.field.coeffs(c))).collect()))
                .collect(),
        }
    }

    pub fn from_json(json: &TableJson) -> Result<Self, LieError> {
        let field = Field::from_spec(&json.field)?;
        let mut entries = Vec::new();
        for (i, j, terms) in &json.brackets {
            let mut t = Vec::new();
            for (k, c) in terms {
                t.push((*k, field.from_coeffs(c)?));
            }
            entries.push((*i, *j, t));
        }
        StructureTable::new(field, json.labels.clone(), entries)
    }
}

fn coordinates_solver(f: &Field, vectors: &[Vector], span: &Subspace) -> Vec<Vector> {
    // Row r of the result expresses echelon row r in terms of `vectors`:
    // invert the coordinate matrix of `vectors` by reducing [C | I].
    let n = vectors.len();
    let mut m: Vec<Vector> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row = span.coordinates(f, v).unwrap();
            row.extend(linalg::unit_vector(n, i));
            row
        })
        .collect();
    linalg::rref(f, &mut m);
    m.iter().map(|row| row[n..].to_vec()).collect()
}

pub fn dense_to_terms(v: &[FieldElement]) -> Terms {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub field: FieldSpec,
    pub labels: Vec<String>,
    pub brackets: Vec<(usize, usize, Vec<(usize, Vec<u32>)>)>,
}

/// Degrees of the basis vectors in `Z/NZ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMap {
    pub modulus: u64,
    pub degrees: Vec<u64>,
}

impl DegreeMap {
    pub fn new(modulus: u64, degrees: impl IntoIterator<Item = i64>) -> Self {
        let m = modulus as i64;
        DegreeMap { modulus, degrees: degrees.into_iter().map(|d| d.rem_euclid(m) as u64).collect() }
    }

    /// Indices of basis vectors of degree `d mod N`.
    pub fn component(&self, d: i64) -> Vec<usize> {
        let r = d.rem_euclid(self.modulus as i64) as u64;
        (0..self.degrees.len()).filter(|&i| self.degrees[i] == r).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub antisymmetry: bool,
    pub jacobi: bool,
    pub triples_checked: u64,
    pub violations: Vec<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry && self.jacobi
    }
}

const MAX_REPORTED_VIOLATIONS: usize = 10;

/// Check antisymmetry of the realised bracket and the Jacobi identity on all
/// basis triples `i < j < k`.
pub fn validate_table(t: &StructureTable) -> ValidationReport {
    let f = &*t.field;
    let n = t.dim();
    let mut antisymmetry = true;
    for i in 0..n {
        if !t.basis_bracket(i, i).is_empty() {
            antisymmetry = false;
        }
        for j in i + 1..n {
            let a = t.basis_bracket(i, j);
            let b = t.basis_bracket(j, i);
            if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.0 != y.0 || f.add(x.1, y.1) != f.zero()) {
                antisymmetry = false;
            }
        }
    }
    let mut scratch = linalg::zero_vector(n);
    let mut touched = Vec::new();
    let mut violations = Vec::new();
    let mut checked = 0u64;
    let mut failed = false;
    let acc = |scratch: &mut Vector, touched: &mut Vec<usize>, a: usize, b: usize, c: usize| {
        for &(m, x) in t.basis_bracket(a, b) {
            for &(k, y) in t.basis_bracket(m, c) {
                if scratch[k].is_zero() {
                    touched.push(k);
                }
                scratch[k] = f.add(scratch[k], f.mul(x, y));
            }
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                checked += 1;
                acc(&mut scratch, &mut touched, i, j, k);
                acc(&mut scratch, &mut touched, j, k, i);
                acc(&mut scratch, &mut touched, k, i, j);
                let bad = touched.iter().any(|&m| !scratch[m].is_zero());
                for &m in &touched {
                    scratch[m] = FieldElement::ZERO;
                }
                touched.clear();
                if bad {
                    failed = true;
                    if violations.len() < MAX_REPORTED_VIOLATIONS {
                        violations.push((i, j, k));
                    }
                }
            }
        }
    }
    ValidationReport { antisymmetry, jacobi: !failed, triples_checked: checked, violations }
}

fn span_of(t: &StructureTable, vs: impl IntoIterator<Item = Vector>) -> Subspace {
    Subspace::span(&t.field, t.dim(), vs)
}

pub fn is_subalgebra(t: &StructureTable, s: &Subspace) -> bool {
    let b = s.basis();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| s.contains(&t.field, &t.bracket_vec(&b[i], &b[j]))))
}

/// Smallest subalgebra containing `gens`.
pub fn subalgebra_generated(t: &StructureTable, gens: &[Vector]) -> Subspace {
    let f = &*t.field;
    let mut span = span_of(t, gens.iter().cloned());
    let mut basis: Vec<Vector> = span.basis().to_vec();
    let mut frontier = 0;
    while frontier < basis.len() {
        let v = basis[frontier].clone();
        frontier += 1;
        for i in 0..frontier {
            let w = t.bracket_vec(&basis[i], &v);
            let r = span.reduce(f, &w);
            if !linalg::is_zero(&r) {
                basis.push(r);
                span = span_of(t, basis.iter().cloned());
            }
        }
    }
    span
}

/// `[S, S]` for a subalgebra `S`.
pub fn derived_subalgebra(t: &StructureTable, s: &Subspace) -> Result<Subspace, LieError> {
    if !is_subalgebra(t, s) {
        return Err(LieError::NotASubalgebra);
    }
    let b = s.basis();
    let mut vs = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            vs.push(t.bracket_vec(&b[i], &b[j]));
        }
    }
    Ok(span_of(t, vs))
}

/// `{a in ambient : [a, target] = 0}`.
pub fn centralizer_in(t: &StructureTable, ambient: &Subspace, target: &Subspace) -> Subspace {
    let f = &*t.field;
    let a = ambient.basis();
    if a.is_empty() {
        return Subspace::zero(t.dim());
    }
    // Column i of the system is the stacked vector ([a_i, s_j])_j.
    let columns: Vec<Vector> =
        a.iter().map(|ai| target.basis().iter().flat_map(|s| t.bracket_vec(ai, s)).collect()).collect();
    let nrows = columns[0].len();
    if nrows == 0 {
        return ambient.clone();
    }
    let rows: Vec<Vector> = (0..nrows).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    let ker = linalg::kernel(f, &rows, a.len());
    span_of(
        t,
        ker.into_iter().map(|x| {
            let mut v = linalg::zero_vector(t.dim());
            for (i, ai) in a.iter().enumerate() {
                linalg::axpy(f, &mut v, x[i], ai);
            }
            v
        }),
    )
}

/// Center of a subalgebra.
pub fn center(t: &StructureTable, s: &Subspace) -> Result<Subspace, LieError> {
    if !is_subalgebra(t, s) {
        return Err(LieError::NotASubalgebra);
    }
    Ok(centralizer_in(t, s, s))
}

pub fn is_ideal(t: &StructureTable, ideal: &Subspace) -> bool {
    (0..t.dim()).all(|i| {
        let e = linalg::unit_vector(t.dim(), i);
        ideal.basis().iter().all(|v| ideal.contains(&t.field, &t.bracket_vec(&e, v)))
    })
}

/// Quotient by an ideal. The returned table uses the standard basis vectors
/// outside the pivot columns of `ideal` as representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub table: StructureTable,
    /// Original basis index of each quotient basis vector.
    pub representatives: Vec<usize>,
    pub ideal: Subspace,
}

impl Quotient {
    /// Image of a vector of the original algebra.
    pub fn project(&self, v: &[FieldElement]) -> Vector {
        let r = self.ideal.reduce(self.table.field(), v);
        self.representatives.iter().map(|&i| r[i]).collect()
    }
}

pub fn quotient_by_ideal(t: &StructureTable, ideal: &Subspace) -> Result<Quotient, LieError> {
    if !is_ideal(t, ideal) {
        return Err(LieError::NotAnIdeal);
    }
    let f = &*t.field;
    let reps: Vec<usize> = (0..t.dim()).filter(|c| !ideal.pivots().contains(c)).collect();
    let mut entries = Vec::new();
    for (a, &i) in reps.iter().enumerate() {
        for (b, &j) in reps.iter().enumerate().skip(a + 1) {
            let mut v = linalg::zero_vector(t.dim());
            for &(k, c) in t.basis_bracket(i, j) {
                v[k] = c;
            }
            let r = ideal.reduce(f, &v);
            let terms: Terms =
                reps.iter().enumerate().filter(|(_, &k)| !r[k].is_zero()).map(|(m, &k)| (m, r[k])).collect();
            if !terms.is_empty() {
                entries.push((a, b, terms));
            }
        }
    }
    let labels = reps.iter().map(|&i| t.labels[i].clone()).collect();
    Ok(Quotient {
        table: StructureTable::new(t.field.clone(), labels, entries)?,
        representatives: reps,
        ideal: ideal.clone(),
    })
}

/// Check that every nonzero bracket is homogeneous of the expected degree.
pub fn validate_grading(t: &StructureTable, d: &DegreeMap) -> bool {
    if d.degrees.len() != t.dim() {
        return false;
    }
    t.entries().all(|(i, j, terms)| {
        let want = (d.degrees[i] + d.degrees[j]) % d.modulus;
        terms.iter().all(|&(k, _)| d.degrees[k] == want)
    })
}

/// `map[i]` is the image of source basis vector `i` in target coordinates.
/// True iff the map has full rank and preserves brackets of basis pairs.
pub fn check_structure_map(src: &StructureTable, dst: &StructureTable, map: &[Vector]) -> bool {
    if map.len() != src.dim() || map.iter().any(|v| v.len() != dst.dim()) || src.field() != dst.field() {
        return false;
    }
    let f = &*src.field;
    if Subspace::span(f, dst.dim(), map.iter().cloned()).dim() != src.dim() {
        return false;
    }
    for i in 0..src.dim() {
        for j in i + 1..src.dim() {
            let mut lhs = linalg::zero_vector(dst.dim());
            for &(k, c) in src.basis_bracket(i, j) {
                linalg::axpy(f, &mut lhs, c, &map[k]);
            }
            if lhs != dst.bracket_vec(&map[i], &map[j]) {
                return false;
            }
        }
    }
    true
}
