//! Operator-field analysis: torsion in its vector-field and form
//! formulations, companion forms, characteristic polynomials, trace
//! differentials, and exact point-wise diagnostics (invariant factors,
//! gl-regularity, differential non-degeneracy).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exterior::{
    d, i_a, pullback, two_form_on_transformed, ExteriorError, KForm, OperatorField,
};
use crate::symkernel::{qmatrix_rank, Chart, QPoly, ScalarError, ScalarField, SfMatrix, UniPoly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NijenhuisError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("sigma list is empty")]
    EmptySigma,
    #[error("sigma entries must live on a chart of dimension {expected}, got {got}")]
    SigmaChart { expected: usize, got: usize },
}

/// The torsion tensor `N^k_{ij}`, antisymmetric in the lower pair; only
/// components with `i < j` are stored. Zero iff the map is empty.
#[derive(Clone, PartialEq, Eq)]
pub struct TorsionTensor {
    chart: Chart,
    comps: BTreeMap<(usize, usize, usize), ScalarField>,
}

impl TorsionTensor {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Component `N^k_{ij}` for arbitrary `i, j`.
    pub fn comp(&self, k: usize, i: usize, j: usize) -> ScalarField {
        if i == j {
            return ScalarField::zero(&self.chart);
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        match self.comps.get(&(k, a, b)) {
            None => ScalarField::zero(&self.chart),
            Some(c) if sign < 0 => -c,
            Some(c) => c.clone(),
        }
    }

    pub fn nonzero_components(
        &self,
    ) -> impl Iterator<Item = (&(usize, usize, usize), &ScalarField)> {
        self.comps.iter()
    }

    /// The 2-form `(ξ, η) ↦ dx_a(N(ξ, η))`.
    pub fn contracted_with_coordinate(&self, a: usize) -> KForm {
        let n = self.chart.dim();
        let mut out = KForm::zero(&self.chart, 2);
        for i in 0..n {
            for j in i + 1..n {
                let c = self.comp(a, i, j);
                if c.is_zero() {
                    continue;
                }
                let term = crate::exterior::wedge(
                    &KForm::dx(&self.chart, i).scale(&c),
                    &KForm::dx(&self.chart, j),
                )
                .expect("degree 2 within cap");
                out = out.add(&term).expect("same chart");
            }
        }
        out
    }
}

impl fmt::Debug for TorsionTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "TorsionTensor(0)");
        }
        writeln!(f, "TorsionTensor:")?;
        for ((k, i, j), c) in &self.comps {
            writeln!(f, "  N^{k}_{{{i},{j}}} = {c}")?;
        }
        Ok(())
    }
}

/// Coordinate formula for the torsion of an operator field:
/// `N^k_{ij} = Σ_s ( L^s_i ∂_s L^k_j − L^s_j ∂_s L^k_i − L^k_s ∂_i L^s_j + L^k_s ∂_j L^s_i )`.
pub fn torsion(l: &OperatorField) -> TorsionTensor {
    let chart = l.chart().clone();
    let n = chart.dim();
    let mut dl = vec![vec![vec![ScalarField::zero(&chart); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            let e = l.entry(a, b);
            if e.is_zero() {
                continue;
            }
            for s in 0..n {
                dl[s][a][b] = e.partial(s);
            }
        }
    }
    let mut comps = BTreeMap::new();
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                let mut acc = ScalarField::zero(&chart);
                for s in 0..n {
                    let l_si = l.entry(s, i);
                    if !l_si.is_zero() && !dl[s][k][j].is_zero() {
                        acc += &(l_si * &dl[s][k][j]);
                    }
                    let l_sj = l.entry(s, j);
                    if !l_sj.is_zero() && !dl[s][k][i].is_zero() {
                        acc -= &(l_sj * &dl[s][k][i]);
                    }
                    let l_ks = l.entry(k, s);
                    if !l_ks.is_zero() {
                        if !dl[i][s][j].is_zero() {
                            acc -= &(l_ks * &dl[i][s][j]);
                        }
                        if !dl[j][s][i].is_zero() {
                            acc += &(l_ks * &dl[j][s][i]);
                        }
                    }
                }
                if !acc.is_zero() {
                    comps.insert((k, i, j), acc);
                }
            }
        }
    }
    TorsionTensor { chart, comps }
}

/// Torsion as a map from 1-forms to 2-forms:
/// `α ↦ d(A*²α) + dα(A·, A·) − i_A d(A*α)`. Tensorial in `α`; agrees with the
/// coordinate formula by `torsion_via_forms(L, dx_a) = dx_a(N(·,·))`.
pub fn torsion_via_forms(l: &OperatorField, alpha: &KForm) -> Result<KForm, NijenhuisError> {
    let a_star = pullback(l, alpha)?;
    let a_star2 = pullback(l, &a_star)?;
    let term1 = d(&a_star2)?;
    let term2 = two_form_on_transformed(&d(alpha)?, l);
    let term3 = i_a(l, &d(&a_star)?)?;
    Ok(term1.add(&term2)?.sub(&term3)?)
}

/// First companion form: first column `-σ_1..-σ_n`, shifted identity above
/// the diagonal.
pub fn first_companion(sigma: &[ScalarField]) -> Result<OperatorField, NijenhuisError> {
    let n = sigma.len();
    if n == 0 {
        return Err(NijenhuisError::EmptySigma);
    }
    let chart = sigma[0].chart().clone();
    if chart.dim() != n {
        return Err(NijenhuisError::SigmaChart {
            expected: chart.dim(),
            got: n,
        });
    }
    let mut m = SfMatrix::zero(&chart, n, n);
    for i in 0..n {
        *m.at_mut(i, 0) = -&sigma[i];
        if i + 1 < n {
            *m.at_mut(i, i + 1) = ScalarField::one(&chart);
        }
    }
    Ok(OperatorField::new(m))
}

/// Second companion form: shifted identity, last row `(-σ_n, ..., -σ_1)`.
pub fn second_companion(sigma: &[ScalarField]) -> Result<OperatorField, NijenhuisError> {
    let n = sigma.len();
    if n == 0 {
        return Err(NijenhuisError::EmptySigma);
    }
    let chart = sigma[0].chart().clone();
    if chart.dim() != n {
        return Err(NijenhuisError::SigmaChart {
            expected: chart.dim(),
            got: n,
        });
    }
    let mut m = SfMatrix::zero(&chart, n, n);
    for i in 0..n - 1 {
        *m.at_mut(i, i + 1) = ScalarField::one(&chart);
    }
    for j in 0..n {
        *m.at_mut(n - 1, j) = -&sigma[n - 1 - j];
    }
    Ok(OperatorField::new(m))
}

/// Certificate of the two closedness conditions on a second companion form:
/// `d(A* dy_n) = 0` (linear in σ) and `d(A*² dy_n) = 0` (nonlinear). Together
/// they are equivalent to vanishing torsion of the operator.
#[derive(Debug, Clone, Serialize)]
pub struct SecondCompanionCheck {
    pub holds: bool,
    pub linear_condition: bool,
    pub nonlinear_condition: bool,
    /// Violated coefficient identities as (condition, i, j, value).
    pub violations: Vec<(String, usize, usize, String)>,
}

pub fn check_second_companion_nijenhuis(
    sigma: &[ScalarField],
) -> Result<SecondCompanionCheck, NijenhuisError> {
    let a = second_companion(sigma)?;
    let chart = a.chart().clone();
    let n = chart.dim();
    let dy_n = KForm::dx(&chart, n - 1);
    let first = d(&pullback(&a, &dy_n)?)?;
    let second = d(&pullback(&a, &pullback(&a, &dy_n)?)?)?;
    let mut violations = Vec::new();
    for (idx, c) in first.comps() {
        violations.push(("linear".to_string(), idx[0], idx[1], c.to_string()));
    }
    for (idx, c) in second.comps() {
        violations.push(("nonlinear".to_string(), idx[0], idx[1], c.to_string()));
    }
    Ok(SecondCompanionCheck {
        holds: first.is_zero() && second.is_zero(),
        linear_condition: first.is_zero(),
        nonlinear_condition: second.is_zero(),
        violations,
    })
}

/// Characteristic polynomial `det(t·Id − L)` by the Faddeev-LeVerrier
/// recurrence, exact over the scalar field. Monic of degree `dim`.
pub fn char_poly(l: &OperatorField) -> UniPoly {
    let chart = l.chart().clone();
    let n = l.dim();
    let mut coeffs = vec![ScalarField::zero(&chart); n + 1];
    coeffs[n] = ScalarField::one(&chart);
    let mut m = l.matrix().clone();
    for k in 1..=n {
        let tr = m.trace();
        let c_k = tr.scale(&BigRational::new((-1).into(), (k as i64).into()));
        coeffs[n - k] = c_k.clone();
        if k == n {
            break;
        }
        let mut shifted = m;
        for i in 0..n {
            *shifted.at_mut(i, i) = shifted.at(i, i) + &c_k;
        }
        m = l.matrix().mul(&shifted);
    }
    UniPoly::new(&chart, coeffs)
}

/// The exact 1-forms `d tr L^k` for `k = 1..=k_max`.
pub fn trace_power_differentials(l: &OperatorField, k_max: usize) -> Vec<KForm> {
    let mut out = Vec::with_capacity(k_max);
    let mut power = l.matrix().clone();
    for _ in 1..=k_max {
        let f = KForm::from_scalar(power.trace());
        out.push(d(&f).expect("differential of a function"));
        power = power.mul(l.matrix());
    }
    out
}

/// Rank at a rational point of the coefficient matrix of the given 1-forms.
pub fn one_forms_rank_at(forms: &[KForm], point: &[BigRational]) -> Result<usize, ScalarError> {
    let mut rows = Vec::with_capacity(forms.len());
    for f in forms {
        assert_eq!(f.degree(), 1);
        let dim = f.chart().dim();
        let mut row = vec![BigRational::zero(); dim];
        for (idx, c) in f.comps() {
            row[idx[0]] = c.eval(point)?;
        }
        rows.push(row);
    }
    Ok(qmatrix_rank(&rows))
}

/// Exact check of `(1/k) d tr(A^k) = (1/(k-1)) A* d tr(A^{k-1})`, valid for
/// every operator with vanishing torsion, k >= 2.
pub fn trace_identity_holds(a: &OperatorField, k: usize) -> bool {
    assert!(k >= 2);
    let diffs = trace_power_differentials(a, k);
    let lhs = diffs[k - 1].scale(&crate::symkernel::sf_rat(a.chart(), 1, k as i64));
    let rhs = pullback(a, &diffs[k - 2])
        .expect("1-form pullback")
        .scale(&crate::symkernel::sf_rat(a.chart(), 1, (k - 1) as i64));
    lhs == rhs
}

/// Point-wise algebraic diagnostics, JSON-facing shape.
#[derive(Debug, Clone, Serialize)]
pub struct PointDiagnostics {
    pub point: Vec<String>,
    pub gl_regular: bool,
    pub diff_nondegenerate_half: bool,
    pub char_poly_at_point: String,
    pub invariant_factors: Vec<String>,
    pub trace_rank: usize,
}

pub struct PointDiagnosticsData {
    pub gl_regular: bool,
    pub diff_nondegenerate_half: bool,
    pub char_poly_at_point: QPoly,
    pub invariant_factors: Vec<QPoly>,
    pub trace_rank: usize,
    pub half: usize,
}

fn rational_string(c: &BigRational) -> String {
    use num_traits::One;
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Evaluates the operator at a rational point and reports the similarity
/// invariant factors of `t·Id − L(point)` (a divisibility chain whose product
/// is the characteristic polynomial), gl-regularity (exactly one nontrivial
/// factor), and independence of the trace-power differentials. The count of
/// trace powers is `dim/2` on even-dimensional charts and `dim` otherwise.
pub fn point_diagnostics(
    l: &OperatorField,
    point: &[BigRational],
) -> Result<PointDiagnosticsData, ScalarError> {
    let n = l.dim();
    let value = l.matrix().eval(point)?;
    let char_at = char_poly_of_qmatrix(&value);
    let factors = invariant_factors(&value);
    let nontrivial = factors.iter().filter(|f| !f.is_one()).count();
    let gl_regular = nontrivial == 1;
    let half = if n % 2 == 0 { n / 2 } else { n }.max(1);
    let diffs = trace_power_differentials(l, half);
    let trace_rank = one_forms_rank_at(&diffs, point)?;
    Ok(PointDiagnosticsData {
        gl_regular,
        diff_nondegenerate_half: trace_rank == half,
        char_poly_at_point: char_at,
        invariant_factors: factors,
        trace_rank,
        half,
    })
}

impl PointDiagnosticsData {
    pub fn report(&self, point: &[BigRational]) -> PointDiagnostics {
        PointDiagnostics {
            point: point.iter().map(rational_string).collect(),
            gl_regular: self.gl_regular,
            diff_nondegenerate_half: self.diff_nondegenerate_half,
            char_poly_at_point: self.char_poly_at_point.to_string(),
            invariant_factors: self
                .invariant_factors
                .iter()
                .filter(|f| !f.is_one())
                .map(|f| f.to_string())
                .collect(),
            trace_rank: self.trace_rank,
        }
    }
}

/// Characteristic polynomial of a rational matrix (Faddeev-LeVerrier).
pub fn char_poly_of_qmatrix(m: &[Vec<BigRational>]) -> QPoly {
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::from_integer(1.into());
    let mut cur = m.to_vec();
    for k in 1..=n {
        let tr: BigRational = (0..n).map(|i| cur[i][i].clone()).sum();
        let c_k = -tr / BigRational::from_integer((k as i64).into());
        coeffs[n - k] = c_k.clone();
        if k == n {
            break;
        }
        let mut shifted = cur.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] += &c_k;
        }
        cur = qmat_mul(m, &shifted);
    }
    QPoly::new(coeffs)
}

fn qmat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

/// Similarity invariant factors of a rational matrix: the monic diagonal of
/// the Smith normal form of `t·Id − M` over Q[t], sorted into the
/// divisibility chain. Their product is the characteristic polynomial.
pub fn invariant_factors(m: &[Vec<BigRational>]) -> Vec<QPoly> {
    let n = m.len();
    let mut a: Vec<Vec<QPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = vec![-m[i][j].clone()];
                    if i == j {
                        c.push(BigRational::from_integer(1.into()));
                    }
                    QPoly::new(c)
                })
                .collect()
        })
        .collect();
    smith_diagonalize(&mut a);
    let mut diag: Vec<QPoly> = (0..n).map(|i| a[i][i].monic()).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 1..n {
                if !diag[i].divides(&diag[j]) {
                    let g = diag[i].gcd(&diag[j]);
                    let l = diag[i].mul(&diag[j]).div_rem(&g).0.monic();
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    diag.sort_by_key(|f| f.degree().unwrap_or(0));
    diag
}

fn smith_diagonalize(a: &mut [Vec<QPoly>]) {
    let n = a.len();
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if let Some(d) = a[i][j].degree() {
                        if best.map(|(_, _, bd)| d < bd).unwrap_or(true) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let (pi, pj, _) = match best {
                Some(b) => b,
                None => return,
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&a[t][t]);
                for j in t..n {
                    let sub = q.mul(&a[t][j]);
                    a[i][j] = a[i][j].sub(&sub);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&a[t][t]);
                for i in t..n {
                    let sub = q.mul(&a[i][t]);
                    a[i][j] = a[i][j].sub(&sub);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            let cleared = (t + 1..n).all(|i| a[i][t].is_zero())
                && (t + 1..n).all(|j| a[t][j].is_zero());
            if cleared {
                break;
            }
        }
    }
}

/// First companion form with `σ_i = x_i` on the chart `x1..xn`.
pub fn canonical_block(n: usize) -> OperatorField {
    let chart = Chart::numbered("x", n);
    let sigma: Vec<ScalarField> = (0..n).map(|i| ScalarField::var(&chart, i)).collect();
    first_companion(&sigma).expect("valid sigma list")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::{parse_scalar, rat_int, sf_rat};

    #[test]
    fn conformal_identity_has_zero_torsion() {
        let chart = Chart::new(["x", "p"]).unwrap();
        let f = parse_scalar("x^2*p + p - 1", &chart).unwrap();
        let l = OperatorField::scalar(&f);
        assert!(torsion(&l).is_zero());
    }

    #[test]
    fn companion_blocks_have_zero_torsion() {
        for n in 1..=4 {
            assert!(torsion(&canonical_block(n)).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn swapped_diagonal_has_torsion() {
        let chart = Chart::numbered("x", 2);
        let l = OperatorField::diagonal(
            &chart,
            vec![ScalarField::var(&chart, 1), ScalarField::var(&chart, 0)],
        );
        assert!(!torsion(&l).is_zero());
    }

    #[test]
    fn form_route_vanishes_for_companion() {
        let l = canonical_block(2);
        let alpha = KForm::dx(l.chart(), 0);
        assert!(torsion_via_forms(&l, &alpha).unwrap().is_zero());
    }

    #[test]
    fn form_route_matches_contraction() {
        let chart = Chart::numbered("x", 2);
        let l = OperatorField::diagonal(
            &chart,
            vec![ScalarField::var(&chart, 1), ScalarField::var(&chart, 0)],
        );
        let t = torsion(&l);
        for a in 0..2 {
            let via_forms = torsion_via_forms(&l, &KForm::dx(&chart, a)).unwrap();
            assert_eq!(via_forms, t.contracted_with_coordinate(a));
        }
        let zero = KForm::zero(&chart, 1);
        assert!(torsion_via_forms(&l, &zero).unwrap().is_zero());
    }

    #[test]
    fn char_poly_of_companion_is_generic() {
        let chart = Chart::new(["s1", "s2", "s3"]).unwrap();
        let sigma: Vec<ScalarField> = (0..3).map(|i| ScalarField::var(&chart, i)).collect();
        let a = first_companion(&sigma).unwrap();
        let chi = char_poly(&a);
        assert_eq!(chi.coeff(3), ScalarField::one(&chart));
        assert_eq!(chi.coeff(2), sigma[0]);
        assert_eq!(chi.coeff(1), sigma[1]);
        assert_eq!(chi.coeff(0), sigma[2]);
        let a2 = second_companion(&sigma).unwrap();
        assert_eq!(char_poly(&a2), chi);
    }

    #[test]
    fn char_poly_of_scalar_multiple() {
        let chart = Chart::numbered("x", 2);
        let l = OperatorField::scalar(&sf_rat(&chart, 5, 1));
        let chi = char_poly(&l);
        assert_eq!(chi.coeff(2), ScalarField::one(&chart));
        assert_eq!(chi.coeff(1), sf_rat(&chart, -10, 1));
        assert_eq!(chi.coeff(0), sf_rat(&chart, 25, 1));
    }

    #[test]
    fn trace_identity_for_companion_block() {
        for n in 2..=4 {
            let a = canonical_block(n);
            for k in 2..=n {
                assert!(trace_identity_holds(&a, k), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn constant_operator_trace_rank_zero() {
        let chart = Chart::numbered("x", 2);
        let l = OperatorField::scalar(&sf_rat(&chart, 3, 1));
        let diffs = trace_power_differentials(&l, 2);
        assert!(diffs.iter().all(|f| f.is_zero()));
        let r = one_forms_rank_at(&diffs, &[rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(r, 0);
    }

    #[test]
    fn invariant_factors_of_nilpotent_block() {
        let m = vec![vec![rat_int(0), rat_int(1)], vec![rat_int(0), rat_int(0)]];
        let f = invariant_factors(&m);
        let nontrivial: Vec<&QPoly> = f.iter().filter(|q| !q.is_one()).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0], &QPoly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn invariant_factors_of_scalar_matrix() {
        let m = vec![vec![rat_int(5), rat_int(0)], vec![rat_int(0), rat_int(5)]];
        let f = invariant_factors(&m);
        let nontrivial: Vec<&QPoly> = f.iter().filter(|q| !q.is_one()).collect();
        assert_eq!(nontrivial.len(), 2);
        assert_eq!(nontrivial[0], nontrivial[1]);
        let prod = f.iter().fold(QPoly::one(), |acc, q| acc.mul(q));
        assert_eq!(prod, char_poly_of_qmatrix(&m));
    }

    #[test]
    fn point_diagnostics_of_companion_block() {
        let a = canonical_block(3);
        let d = point_diagnostics(&a, &[rat_int(0), rat_int(0), rat_int(0)]).unwrap();
        assert!(d.gl_regular);
        assert_eq!(d.half, 3);
        assert!(d.diff_nondegenerate_half);
        assert_eq!(d.char_poly_at_point, QPoly::from_ints(&[0, 0, 0, 1]));
    }

    #[test]
    fn second_companion_check_matches_torsion() {
        let chart = Chart::numbered("y", 2);
        let sigma = vec![sf_rat(&chart, 1, 1), sf_rat(&chart, -2, 1)];
        let check = check_second_companion_nijenhuis(&sigma).unwrap();
        assert!(check.holds);
        assert!(torsion(&second_companion(&sigma).unwrap()).is_zero());

        let sigma = vec![ScalarField::var(&chart, 1), ScalarField::var(&chart, 0)];
        let check = check_second_companion_nijenhuis(&sigma).unwrap();
        let t = torsion(&second_companion(&sigma).unwrap());
        assert_eq!(check.holds, t.is_zero());
    }

    #[test]
    fn shift_invariance_of_torsion() {
        let chart = Chart::numbered("x", 2);
        let l = OperatorField::from_exprs(&chart, &[vec!["x1*x2", "x2^2"], vec!["1 - x1", "x1"]])
            .unwrap();
        let c = sf_rat(&chart, 7, 3);
        let shifted = l.add(&OperatorField::scalar(&c));
        let t1 = torsion(&l);
        let t2 = torsion(&shifted);
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(t1.comp(k, i, j), t2.comp(k, i, j));
                }
            }
        }
    }
}
