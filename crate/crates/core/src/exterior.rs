//! Differential forms with exact rational-function coefficients: wedge
//! product, exterior derivative, operator pullback on 1-forms, the
//! degree-preserving insertion operator `i_A`, and the derived differential
//! `d_A = i_A d - d i_A`.
//!
//! Forms are capped at degree 3; the deepest computation anywhere in the
//! toolkit is closedness of a 2-form.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::symkernel::{parse_scalar, Chart, ScalarError, ScalarField, SfMatrix};

pub const MAX_DEGREE: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExteriorError {
    #[error("forms of degree above {MAX_DEGREE} are not supported (got {0})")]
    DegreeOverflow(usize),
    #[error("expected a form of degree {expected}, got degree {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("charts differ: {0} vs {1}")]
    ChartMismatch(String, String),
    #[error("coefficient matrix is not skew-symmetric at entry ({0}, {1})")]
    NotSkew(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A field of endomorphisms of the tangent bundle in fixed coordinates:
/// entry `(i, j)` is the component `A^i_j` (row = upper index).
#[derive(Clone, PartialEq, Eq)]
pub struct OperatorField {
    mat: SfMatrix,
}

impl OperatorField {
    pub fn new(mat: SfMatrix) -> Self {
        assert!(mat.is_square(), "operator field must be square");
        assert_eq!(
            mat.rows(),
            mat.chart().dim(),
            "operator size must match chart dimension"
        );
        OperatorField { mat }
    }

    pub fn from_rows(chart: &Chart, rows: Vec<Vec<ScalarField>>) -> Self {
        OperatorField::new(SfMatrix::from_rows(chart, rows))
    }

    pub fn from_exprs(chart: &Chart, rows: &[Vec<&str>]) -> Result<Self, crate::symkernel::ParseError> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let mut row = Vec::with_capacity(r.len());
            for e in r {
                row.push(parse_scalar(e, chart)?);
            }
            out.push(row);
        }
        Ok(OperatorField::from_rows(chart, out))
    }

    pub fn identity(chart: &Chart) -> Self {
        OperatorField::new(SfMatrix::identity(chart, chart.dim()))
    }

    /// Conformal multiple `f * Id`.
    pub fn scalar(f: &ScalarField) -> Self {
        let chart = f.chart();
        let n = chart.dim();
        let mut m = SfMatrix::zero(chart, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = f.clone();
        }
        OperatorField::new(m)
    }

    pub fn diagonal(chart: &Chart, entries: Vec<ScalarField>) -> Self {
        let n = chart.dim();
        assert_eq!(entries.len(), n);
        let mut m = SfMatrix::zero(chart, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            *m.at_mut(i, i) = e;
        }
        OperatorField::new(m)
    }

    pub fn chart(&self) -> &Chart {
        self.mat.chart()
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &SfMatrix {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarField {
        self.mat.at(i, j)
    }

    pub fn compose(&self, other: &OperatorField) -> OperatorField {
        OperatorField::new(self.mat.mul(&other.mat))
    }

    pub fn pow(&self, e: u32) -> OperatorField {
        OperatorField::new(self.mat.pow(e))
    }

    pub fn transpose(&self) -> OperatorField {
        OperatorField::new(self.mat.transpose())
    }

    pub fn add(&self, other: &OperatorField) -> OperatorField {
        OperatorField::new(self.mat.add(&other.mat))
    }

    pub fn sub(&self, other: &OperatorField) -> OperatorField {
        OperatorField::new(self.mat.sub(&other.mat))
    }

    pub fn scale(&self, c: &ScalarField) -> OperatorField {
        OperatorField::new(self.mat.scale(c))
    }

    pub fn trace(&self) -> ScalarField {
        self.mat.trace()
    }
}

impl fmt::Display for OperatorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

impl fmt::Debug for OperatorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorField on {}\n{}", self.chart(), self.mat)
    }
}

// {"chart": [...], "entries": [["expr", ...], ...]}
#[derive(Serialize, Deserialize)]
struct OperatorJson {
    chart: Vec<String>,
    entries: Vec<Vec<String>>,
}

impl Serialize for OperatorField {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = self.dim();
        OperatorJson {
            chart: self.chart().names().to_vec(),
            entries: (0..n)
                .map(|i| (0..n).map(|j| self.entry(i, j).to_string()).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OperatorField {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = OperatorJson::deserialize(deserializer)?;
        let chart = Chart::new(raw.chart).map_err(D::Error::custom)?;
        let n = chart.dim();
        if raw.entries.len() != n || raw.entries.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom(format!(
                "operator must be {n}x{n} to match its chart"
            )));
        }
        let mut rows = Vec::with_capacity(n);
        for r in &raw.entries {
            let mut row = Vec::with_capacity(n);
            for e in r {
                row.push(parse_scalar(e, &chart).map_err(D::Error::custom)?);
            }
            rows.push(row);
        }
        Ok(OperatorField::from_rows(&chart, rows))
    }
}

/// Antisymmetric k-linear field, k in 0..=3. Components are stored on
/// strictly increasing index tuples only; values on arbitrary tuples follow
/// by the sign of the sorting permutation.
#[derive(Clone, PartialEq, Eq)]
pub struct KForm {
    degree: usize,
    chart: Chart,
    comps: BTreeMap<Vec<usize>, ScalarField>,
}

impl KForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree above cap");
        KForm {
            degree,
            chart: chart.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn from_scalar(f: ScalarField) -> Self {
        let chart = f.chart().clone();
        let mut out = KForm::zero(&chart, 0);
        out.add_comp(vec![], f);
        out
    }

    /// The coordinate 1-form `dx_i`.
    pub fn dx(chart: &Chart, i: usize) -> Self {
        let mut out = KForm::zero(chart, 1);
        out.add_comp(vec![i], ScalarField::one(chart));
        out
    }

    pub fn one_form(chart: &Chart, coeffs: Vec<ScalarField>) -> Self {
        assert_eq!(coeffs.len(), chart.dim());
        let mut out = KForm::zero(chart, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            out.add_comp(vec![i], c);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comps(&self) -> impl Iterator<Item = (&Vec<usize>, &ScalarField)> {
        self.comps.iter()
    }

    /// Component on a strictly increasing tuple.
    pub fn comp(&self, idx: &[usize]) -> ScalarField {
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| ScalarField::zero(&self.chart))
    }

    /// As a 0-form, the underlying scalar.
    pub fn scalar_part(&self) -> ScalarField {
        assert_eq!(self.degree, 0);
        self.comp(&[])
    }

    fn add_comp(&mut self, idx: Vec<usize>, c: ScalarField) {
        debug_assert_eq!(idx.len(), self.degree);
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(idx.iter().all(|&i| i < self.chart.dim()));
        if c.is_zero() {
            return;
        }
        match self.comps.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Value on an arbitrary index tuple: zero on repeats, otherwise the
    /// stored component times the sign of the sorting permutation.
    pub fn eval_indices(&self, idx: &[usize]) -> ScalarField {
        assert_eq!(idx.len(), self.degree);
        match sort_with_sign(idx) {
            None => ScalarField::zero(&self.chart),
            Some((sorted, sign)) => {
                let c = self.comp(&sorted);
                if sign < 0 {
                    -&c
                } else {
                    c
                }
            }
        }
    }

    fn assert_chart(&self, other: &KForm) -> Result<(), ExteriorError> {
        if self.chart != other.chart {
            return Err(ExteriorError::ChartMismatch(
                self.chart.to_string(),
                other.chart.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &KForm) -> Result<KForm, ExteriorError> {
        self.assert_chart(other)?;
        if self.degree != other.degree {
            return Err(ExteriorError::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for (idx, c) in &other.comps {
            out.add_comp(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm, ExteriorError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KForm {
        KForm {
            degree: self.degree,
            chart: self.chart.clone(),
            comps: self
                .comps
                .iter()
                .map(|(i, c)| (i.clone(), -c))
                .collect(),
        }
    }

    pub fn scale(&self, f: &ScalarField) -> KForm {
        let mut out = KForm::zero(&self.chart, self.degree);
        for (idx, c) in &self.comps {
            out.add_comp(idx.clone(), c * f);
        }
        out
    }
}

fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// Standard antisymmetrized product.
pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm, ExteriorError> {
    a.assert_chart(b)?;
    let degree = a.degree() + b.degree();
    if degree > MAX_DEGREE {
        return Err(ExteriorError::DegreeOverflow(degree));
    }
    let mut out = KForm::zero(a.chart(), degree);
    for (ia, ca) in a.comps() {
        for (ib, cb) in b.comps() {
            let mut joined = ia.clone();
            joined.extend_from_slice(ib);
            if let Some((sorted, sign)) = sort_with_sign(&joined) {
                let mut c = ca * cb;
                if sign < 0 {
                    c = -&c;
                }
                out.add_comp(sorted, c);
            }
        }
    }
    Ok(out)
}

/// Exterior derivative. On 0-forms this is the coordinate differential.
pub fn d(a: &KForm) -> Result<KForm, ExteriorError> {
    let degree = a.degree() + 1;
    if degree > MAX_DEGREE {
        return Err(ExteriorError::DegreeOverflow(degree));
    }
    let chart = a.chart().clone();
    let mut out = KForm::zero(&chart, degree);
    for (idx, c) in a.comps() {
        for m in 0..chart.dim() {
            if idx.contains(&m) {
                continue;
            }
            let dc = c.partial(m);
            if dc.is_zero() {
                continue;
            }
            let mut joined = vec![m];
            joined.extend_from_slice(idx);
            if let Some((sorted, sign)) = sort_with_sign(&joined) {
                let v = if sign < 0 { -&dc } else { dc };
                out.add_comp(sorted, v);
            }
        }
    }
    Ok(out)
}

/// Pullback `A*` on 1-forms: `(A*α)_j = Σ_i α_i A^i_j`.
pub fn pullback(a_op: &OperatorField, alpha: &KForm) -> Result<KForm, ExteriorError> {
    if alpha.degree() != 1 {
        return Err(ExteriorError::DegreeMismatch {
            expected: 1,
            got: alpha.degree(),
        });
    }
    if a_op.chart() != alpha.chart() {
        return Err(ExteriorError::ChartMismatch(
            a_op.chart().to_string(),
            alpha.chart().to_string(),
        ));
    }
    let chart = alpha.chart().clone();
    let n = chart.dim();
    let mut out = KForm::zero(&chart, 1);
    for j in 0..n {
        let mut acc = ScalarField::zero(&chart);
        for (idx, c) in alpha.comps() {
            let i = idx[0];
            let a_ij = a_op.entry(i, j);
            if a_ij.is_zero() {
                continue;
            }
            acc += &(c * a_ij);
        }
        out.add_comp(vec![j], acc);
    }
    Ok(out)
}

/// Insertion of the operator into one argument at a time, summed over slots.
/// On 0-forms the result is zero by convention.
pub fn i_a(a_op: &OperatorField, alpha: &KForm) -> Result<KForm, ExteriorError> {
    if a_op.chart() != alpha.chart() {
        return Err(ExteriorError::ChartMismatch(
            a_op.chart().to_string(),
            alpha.chart().to_string(),
        ));
    }
    let chart = alpha.chart().clone();
    let k = alpha.degree();
    if k == 0 {
        return Ok(KForm::zero(&chart, 0));
    }
    let n = chart.dim();
    let mut out = KForm::zero(&chart, k);
    for (idx, _) in alpha.comps() {
        let _ = idx;
    }
    // (i_A α)_{I} = Σ_s Σ_m A^m_{i_s} α(i_1, .., m, .., i_k)
    for target in increasing_tuples(n, k) {
        let mut acc = ScalarField::zero(&chart);
        for s in 0..k {
            for m in 0..n {
                let a_mi = a_op.entry(m, target[s]);
                if a_mi.is_zero() {
                    continue;
                }
                let mut probe = target.clone();
                probe[s] = m;
                let v = alpha.eval_indices(&probe);
                if v.is_zero() {
                    continue;
                }
                acc += &(&v * a_mi);
            }
        }
        out.add_comp(target, acc);
    }
    Ok(out)
}

fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// The differential `d_A = i_A ∘ d − d ∘ i_A`.
pub fn d_a(a_op: &OperatorField, alpha: &KForm) -> Result<KForm, ExteriorError> {
    if alpha.degree() + 1 > MAX_DEGREE {
        return Err(ExteriorError::DegreeOverflow(alpha.degree() + 1));
    }
    let first = i_a(a_op, &d(alpha)?)?;
    let second = d(&i_a(a_op, alpha)?)?;
    first.sub(&second)
}

/// A 2-form from a skew-symmetric coefficient matrix: the component on
/// `(i, j)`, `i < j`, is entry `(i, j)`.
pub fn two_form_from_matrix(m: &SfMatrix) -> Result<KForm, ExteriorError> {
    assert!(m.is_square());
    let n = m.rows();
    for i in 0..n {
        for j in i..n {
            if !(m.at(i, j) + m.at(j, i)).is_zero() {
                return Err(ExteriorError::NotSkew(i, j));
            }
        }
    }
    let mut out = KForm::zero(m.chart(), 2);
    for i in 0..n {
        for j in i + 1..n {
            out.add_comp(vec![i, j], m.at(i, j).clone());
        }
    }
    Ok(out)
}

/// Full skew coefficient matrix of a 2-form.
pub fn two_form_to_matrix(a: &KForm) -> SfMatrix {
    assert_eq!(a.degree(), 2);
    let n = a.chart().dim();
    let mut m = SfMatrix::zero(a.chart(), n, n);
    for (idx, c) in a.comps() {
        let (i, j) = (idx[0], idx[1]);
        *m.at_mut(i, j) = c.clone();
        *m.at_mut(j, i) = -c;
    }
    m
}

/// The 2-form `(ξ, η) ↦ β(Mξ, Mη)`.
pub fn two_form_on_transformed(beta: &KForm, m_op: &OperatorField) -> KForm {
    assert_eq!(beta.degree(), 2);
    let b = two_form_to_matrix(beta);
    let m = m_op.matrix();
    // components: Σ_{a,b} M^a_i B_{ab} M^b_j = (Mᵀ B M)_{ij}
    let full = m.transpose().mul(&b).mul(m);
    two_form_from_matrix(&full).expect("congruence of a skew matrix is skew")
}

// {"degree": k, "chart": [...], "comps": {"i,j": scalar-json, ...}}
#[derive(Serialize, Deserialize)]
struct KFormJson {
    degree: usize,
    chart: Vec<String>,
    comps: BTreeMap<String, serde_json::Value>,
}

fn key_of(idx: &[usize]) -> String {
    idx.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl Serialize for KForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let comps = self
            .comps
            .iter()
            .map(|(idx, c)| {
                (
                    key_of(idx),
                    serde_json::to_value(c).expect("scalar serializes"),
                )
            })
            .collect();
        KFormJson {
            degree: self.degree,
            chart: self.chart.names().to_vec(),
            comps,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = KFormJson::deserialize(deserializer)?;
        if raw.degree > MAX_DEGREE {
            return Err(D::Error::custom(format!(
                "form degree {} above cap {MAX_DEGREE}",
                raw.degree
            )));
        }
        let chart = Chart::new(raw.chart).map_err(D::Error::custom)?;
        let mut out = KForm::zero(&chart, raw.degree);
        for (key, val) in raw.comps {
            let idx: Vec<usize> = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| D::Error::custom(format!("bad component key `{key}`")))?
            };
            if idx.len() != raw.degree
                || idx.windows(2).any(|w| w[0] >= w[1])
                || idx.iter().any(|&i| i >= chart.dim())
            {
                return Err(D::Error::custom(format!(
                    "component key `{key}` is not a strictly increasing tuple of degree {}",
                    raw.degree
                )));
            }
            // scalars may be given structurally or as grammar strings
            let scalar = match &val {
                serde_json::Value::String(s) => {
                    parse_scalar(s, &chart).map_err(D::Error::custom)?
                }
                _ => serde_json::from_value::<ScalarField>(val.clone())
                    .map_err(D::Error::custom)?,
            };
            if scalar.chart() != &chart {
                return Err(D::Error::custom("component chart mismatch"));
            }
            out.add_comp(idx, scalar);
        }
        Ok(out)
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.degree == 0 {
            return write!(f, "{}", self.scalar_part());
        }
        let mut parts = Vec::new();
        for (idx, c) in &self.comps {
            let basis = idx
                .iter()
                .map(|&i| format!("d{}", self.chart.name(i)))
                .collect::<Vec<_>>()
                .join("^");
            parts.push(format!("({c}) {basis}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm[deg {}]({self})", self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::parse_scalar;

    fn chart() -> Chart {
        Chart::new(["x1", "x2", "p1", "p2"]).unwrap()
    }

    #[test]
    fn wedge_antisymmetry() {
        let c = chart();
        let dx1 = KForm::dx(&c, 0);
        let dx2 = KForm::dx(&c, 1);
        assert!(wedge(&dx1, &dx1).unwrap().is_zero());
        let ab = wedge(&dx1, &dx2).unwrap();
        let ba = wedge(&dx2, &dx1).unwrap();
        assert_eq!(ab, ba.neg());
        // scalar bilinearity: (p2 dx1) ∧ dx2 = p2 dx1∧dx2
        let p2 = ScalarField::var(&c, 3);
        let left = wedge(&dx1.scale(&p2), &dx2).unwrap();
        assert_eq!(left, ab.scale(&p2));
    }

    #[test]
    fn exterior_derivative_of_product() {
        let c = chart();
        let f = parse_scalar("x1*x2", &c).unwrap();
        let df = d(&KForm::from_scalar(f)).unwrap();
        let expect = KForm::dx(&c, 0)
            .scale(&ScalarField::var(&c, 1))
            .add(&KForm::dx(&c, 1).scale(&ScalarField::var(&c, 0)))
            .unwrap();
        assert_eq!(df, expect);
    }

    #[test]
    fn d_squared_is_zero() {
        let c = chart();
        let f = parse_scalar("x1^2*p1 - x2*p2 + 3", &c).unwrap();
        let ddf = d(&d(&KForm::from_scalar(f)).unwrap()).unwrap();
        assert!(ddf.is_zero());
        // and on a 1-form
        let alpha = KForm::one_form(
            &c,
            vec![
                parse_scalar("x1*x2", &c).unwrap(),
                parse_scalar("p1", &c).unwrap(),
                parse_scalar("x2^2", &c).unwrap(),
                ScalarField::zero(&c),
            ],
        );
        assert!(d(&d(&alpha).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn pullback_by_identity() {
        let c = chart();
        let alpha = KForm::one_form(
            &c,
            vec![
                parse_scalar("x1", &c).unwrap(),
                parse_scalar("p2", &c).unwrap(),
                ScalarField::zero(&c),
                ScalarField::one(&c),
            ],
        );
        let id = OperatorField::identity(&c);
        assert_eq!(pullback(&id, &alpha).unwrap(), alpha);
    }

    #[test]
    fn insertion_of_identity_doubles_two_forms() {
        let c = chart();
        let omega = wedge(&KForm::dx(&c, 0), &KForm::dx(&c, 2))
            .unwrap()
            .scale(&parse_scalar("x2", &c).unwrap());
        let id = OperatorField::identity(&c);
        let doubled = i_a(&id, &omega).unwrap();
        assert_eq!(doubled, omega.add(&omega).unwrap());
    }

    #[test]
    fn insertion_on_functions_is_zero() {
        let c = chart();
        let f = KForm::from_scalar(parse_scalar("x1*p1", &c).unwrap());
        let id = OperatorField::identity(&c);
        assert!(i_a(&id, &f).unwrap().is_zero());
    }

    #[test]
    fn insertion_eigenvalue_sum_on_diagonal() {
        let c = Chart::new(["x1", "x2"]).unwrap();
        let l1 = parse_scalar("x1^2", &c).unwrap();
        let l2 = parse_scalar("x2 + 1", &c).unwrap();
        let a = OperatorField::diagonal(&c, vec![l1.clone(), l2.clone()]);
        let omega = wedge(&KForm::dx(&c, 0), &KForm::dx(&c, 1)).unwrap();
        let out = i_a(&a, &omega).unwrap();
        assert_eq!(out, omega.scale(&(&l1 + &l2)));
    }

    #[test]
    fn d_a_on_functions_is_pullback_of_differential() {
        let c = chart();
        let a = OperatorField::from_exprs(
            &c,
            &[
                vec!["-x1", "1", "0", "0"],
                vec!["-x2", "0", "0", "0"],
                vec!["p1", "0", "-x1", "-x2"],
                vec!["0", "p2", "1", "0"],
            ],
        )
        .unwrap();
        let f = parse_scalar("x1^2*p2 - x2", &c).unwrap();
        let lhs = d_a(&a, &KForm::from_scalar(f.clone())).unwrap();
        let rhs = pullback(&a, &d(&KForm::from_scalar(f)).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let c = chart();
        let three = wedge(
            &wedge(&KForm::dx(&c, 0), &KForm::dx(&c, 1)).unwrap(),
            &KForm::dx(&c, 2),
        )
        .unwrap();
        assert_eq!(three.degree(), 3);
        assert!(matches!(
            wedge(&three, &KForm::dx(&c, 3)),
            Err(ExteriorError::DegreeOverflow(4))
        ));
        assert!(matches!(d(&three), Err(ExteriorError::DegreeOverflow(4))));
    }

    #[test]
    fn form_json_round_trip() {
        let c = chart();
        let omega = wedge(&KForm::dx(&c, 0), &KForm::dx(&c, 2))
            .unwrap()
            .scale(&parse_scalar("x1/(x2+1)", &c).unwrap());
        let js = serde_json::to_string(&omega).unwrap();
        let back: KForm = serde_json::from_str(&js).unwrap();
        assert_eq!(back, omega);
    }

    #[test]
    fn operator_json_round_trip() {
        let c = chart();
        let a = OperatorField::from_exprs(
            &c,
            &[
                vec!["-x1", "1", "0", "0"],
                vec!["-x2", "0", "0", "0"],
                vec!["0", "-p2", "-x1", "-x2"],
                vec!["p2", "0", "1", "0"],
            ],
        )
        .unwrap();
        let js = serde_json::to_string(&a).unwrap();
        let back: OperatorField = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
    }
}
