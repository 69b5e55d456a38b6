//! Compatible pairs of a symplectic form and an operator field: the two
//! compatibility conditions, recursion operators, the canonical pair at a
//! differentially non-degenerate singular point, semisimple block
//! recognition, and the generating-function transformation.

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::exterior::{
    d, two_form_from_matrix, two_form_to_matrix, ExteriorError, KForm, OperatorField,
};
use crate::nijenhuis::{char_poly, invariant_factors, torsion, NijenhuisError};
use crate::symkernel::{Chart, MatrixError, QPoly, ScalarError, ScalarField, SfMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PnError {
    #[error("the symplectic form is degenerate (zero determinant)")]
    DegenerateOmega,
    #[error("chart must have even dimension, got {0}")]
    OddDimension(usize),
    #[error("operator and form live on different charts")]
    ChartMismatch,
    #[error("row {row} does not match the expected block shape: {detail}")]
    ShapeMismatch { row: usize, detail: String },
    #[error("the generating function depends on momentum variable `{0}`")]
    DependsOnMomentum(String),
    #[error("operator is not semisimple at the point (minimal polynomial `{0}` is not squarefree)")]
    NotSemisimpleAtPoint(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Nijenhuis(#[from] NijenhuisError),
}

/// A candidate pair on a 2n-dimensional chart. Construction checks only the
/// structural facts (even dimension, shared chart, non-degenerate form);
/// the compatibility conditions are checked by [`check_compatibility`] and
/// enforced by [`PNPair::certified`].
#[derive(Clone, PartialEq)]
pub struct PNPair {
    omega: KForm,
    l: OperatorField,
}

impl PNPair {
    pub fn new(omega: KForm, l: OperatorField) -> Result<Self, PnError> {
        if omega.chart() != l.chart() {
            return Err(PnError::ChartMismatch);
        }
        if omega.chart().dim() % 2 != 0 {
            return Err(PnError::OddDimension(omega.chart().dim()));
        }
        assert_eq!(omega.degree(), 2, "omega must be a 2-form");
        if two_form_to_matrix(&omega).det().is_zero() {
            return Err(PnError::DegenerateOmega);
        }
        Ok(PNPair { omega, l })
    }

    /// Construction that insists on both compatibility conditions exactly.
    pub fn certified(omega: KForm, l: OperatorField) -> Result<Self, PnError> {
        let pair = PNPair::new(omega, l)?;
        let report = check_compatibility(&pair);
        if !report.all_hold() {
            return Err(PnError::ShapeMismatch {
                row: 0,
                detail: format!("compatibility failed: {report:?}"),
            });
        }
        Ok(pair)
    }

    pub fn omega(&self) -> &KForm {
        &self.omega
    }

    pub fn operator(&self) -> &OperatorField {
        &self.l
    }

    pub fn chart(&self) -> &Chart {
        self.omega.chart()
    }

    pub fn half_dim(&self) -> usize {
        self.chart().dim() / 2
    }
}

impl std::fmt::Debug for PNPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PNPair(omega = {}, L =\n{})", self.omega, self.l)
    }
}

/// The matrix `M_{ij} = ω(L e_i, e_j)`.
pub fn omega_l_matrix(omega: &KForm, l: &OperatorField) -> SfMatrix {
    let w = two_form_to_matrix(omega);
    l.matrix().transpose().mul(&w)
}

/// Reads the strictly upper triangle of `ω(L·,·)` as a 2-form (exact when
/// condition (I) holds; the upper-triangle reading otherwise).
pub fn omega_l_form(omega: &KForm, l: &OperatorField) -> KForm {
    let m = omega_l_matrix(omega, l);
    let n = m.rows();
    let chart = m.chart().clone();
    let mut skew = SfMatrix::zero(&chart, n, n);
    for i in 0..n {
        for j in i + 1..n {
            *skew.at_mut(i, j) = m.at(i, j).clone();
            *skew.at_mut(j, i) = -m.at(i, j);
        }
    }
    two_form_from_matrix(&skew).expect("explicitly skew")
}

/// Exact compatibility report: skewness of `ω(L·,·)` (condition I),
/// closedness of the induced 2-form (condition II), and closedness of ω
/// itself, with the violated component identities.
#[derive(Debug, Clone, Serialize)]
pub struct CompatibilityReport {
    pub omega_nondegenerate: bool,
    pub skew: bool,
    pub skew_violations: Vec<(usize, usize, String)>,
    pub omega_tilde_closed: bool,
    pub omega_tilde_violations: Vec<(usize, usize, usize, String)>,
    pub omega_closed: bool,
    pub omega_violations: Vec<(usize, usize, usize, String)>,
}

impl CompatibilityReport {
    pub fn all_hold(&self) -> bool {
        self.omega_nondegenerate && self.skew && self.omega_tilde_closed && self.omega_closed
    }
}

pub fn check_compatibility(pair: &PNPair) -> CompatibilityReport {
    let m = omega_l_matrix(&pair.omega, &pair.l);
    let n = m.rows();
    let mut skew_violations = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s = m.at(i, j) + m.at(j, i);
            if !s.is_zero() {
                skew_violations.push((i, j, s.to_string()));
            }
        }
    }
    let omega_tilde = omega_l_form(&pair.omega, &pair.l);
    let d_tilde = d(&omega_tilde).expect("2-form differential");
    let omega_tilde_violations: Vec<(usize, usize, usize, String)> = d_tilde
        .comps()
        .map(|(idx, c)| (idx[0], idx[1], idx[2], c.to_string()))
        .collect();
    let d_omega = d(&pair.omega).expect("2-form differential");
    let omega_violations: Vec<(usize, usize, usize, String)> = d_omega
        .comps()
        .map(|(idx, c)| (idx[0], idx[1], idx[2], c.to_string()))
        .collect();
    CompatibilityReport {
        omega_nondegenerate: true,
        skew: skew_violations.is_empty(),
        skew_violations,
        omega_tilde_closed: omega_tilde_violations.is_empty(),
        omega_tilde_violations,
        omega_closed: omega_violations.is_empty(),
        omega_violations,
    }
}

/// Solves `ω(L·,·) = ω̃` for the operator, exactly over the scalar field.
pub fn recursion_operator(omega: &KForm, omega_tilde: &KForm) -> Result<OperatorField, PnError> {
    assert_eq!(omega.degree(), 2);
    assert_eq!(omega_tilde.degree(), 2);
    if omega.chart() != omega_tilde.chart() {
        return Err(PnError::ChartMismatch);
    }
    let w = two_form_to_matrix(omega);
    if w.det().is_zero() {
        return Err(PnError::DegenerateOmega);
    }
    let w_inv = w.inverse().map_err(|_| PnError::DegenerateOmega)?;
    let tilde = two_form_to_matrix(omega_tilde);
    // Lᵀ W = Ω̃
    let l = tilde.mul(&w_inv).transpose();
    Ok(OperatorField::new(l))
}

/// The canonical symplectic form `Σ dx_i ∧ dp_i` on a 2n chart.
pub fn canonical_omega(chart: &Chart) -> KForm {
    let n = chart.dim() / 2;
    let mut omega = KForm::zero(chart, 2);
    for i in 0..n {
        let term = crate::exterior::wedge(&KForm::dx(chart, i), &KForm::dx(chart, n + i))
            .expect("degree 2");
        omega = omega.add(&term).expect("same chart");
    }
    omega
}

/// The momentum coupling block of the canonical pair: first row
/// `(0, -p_2, ..., -p_n)`, first column `(0, p_2, ..., p_n)`, zero elsewhere.
pub fn canonical_s_matrix(chart: &Chart) -> SfMatrix {
    let n = chart.dim() / 2;
    let mut s = SfMatrix::zero(chart, n, n);
    for j in 1..n {
        *s.at_mut(0, j) = -&ScalarField::var(chart, n + j);
        *s.at_mut(j, 0) = ScalarField::var(chart, n + j);
    }
    s
}

/// The companion block with `σ_i = x_i` written on the 2n chart.
pub fn canonical_a_matrix(chart: &Chart) -> SfMatrix {
    let n = chart.dim() / 2;
    let mut a = SfMatrix::zero(chart, n, n);
    for i in 0..n {
        *a.at_mut(i, 0) = -&ScalarField::var(chart, i);
        if i + 1 < n {
            *a.at_mut(i, i + 1) = ScalarField::one(chart);
        }
    }
    a
}

fn block_lower_triangular(
    chart: &Chart,
    a: &SfMatrix,
    s: &SfMatrix,
) -> OperatorField {
    let n = a.rows();
    let at = a.transpose();
    let mut l = SfMatrix::zero(chart, 2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            *l.at_mut(i, j) = a.at(i, j).clone();
            *l.at_mut(n + i, j) = s.at(i, j).clone();
            *l.at_mut(n + i, n + j) = at.at(i, j).clone();
        }
    }
    OperatorField::new(l)
}

/// The canonical pair at a differentially non-degenerate point: block
/// lower-triangular operator with companion block, its transpose, and the
/// momentum coupling, against the canonical symplectic form.
#[derive(Clone)]
pub struct CanonicalPN {
    n: usize,
    pair: PNPair,
}

impl CanonicalPN {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pair(&self) -> &PNPair {
        &self.pair
    }

    pub fn into_pair(self) -> PNPair {
        self.pair
    }

    pub fn a_block(&self) -> SfMatrix {
        canonical_a_matrix(self.pair.chart())
    }

    pub fn s_block(&self) -> SfMatrix {
        canonical_s_matrix(self.pair.chart())
    }
}

/// Builds and self-certifies the canonical pair: vanishing torsion and both
/// compatibility conditions are rechecked exactly before returning.
pub fn build_canonical(n: usize) -> CanonicalPN {
    assert!(n >= 1, "n must be positive");
    let chart = Chart::canonical(n);
    let a = canonical_a_matrix(&chart);
    let s = canonical_s_matrix(&chart);
    let l = block_lower_triangular(&chart, &a, &s);
    let omega = canonical_omega(&chart);
    assert!(
        torsion(&l).is_zero(),
        "canonical operator must have zero torsion"
    );
    let pair = PNPair::certified(omega, l).expect("canonical pair certifies");
    CanonicalPN { n, pair }
}

/// Block tags for semisimple points, following the four elementary types:
/// non-constant real pair, constant real, non-constant complex pair,
/// constant complex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockType {
    Type1,
    Type2,
    Type3,
    Type4,
    /// A squarefree factor mixing real and complex roots; the split into
    /// elementary blocks needs algebraic-number arithmetic.
    Mixed,
    /// A non-constant eigenvalue whose multiplicity is not two; such a point
    /// admits no compatible elementary-block decomposition.
    NonElementary,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockTag {
    pub factor: String,
    pub multiplicity: u32,
    pub constant: bool,
    pub real_roots: usize,
    pub complex_pairs: usize,
    pub blocks: usize,
    pub tag: BlockType,
}

/// Tags each squarefree rational factor of the characteristic polynomial at
/// the point. Structural only: no normalizing coordinates are produced.
pub fn classify_semisimple_block(
    pair: &PNPair,
    point: &[BigRational],
) -> Result<Vec<BlockTag>, PnError> {
    let l = pair.operator();
    let value = l.matrix().eval(point)?;
    let factors = invariant_factors(&value);
    let minimal = factors.last().cloned().unwrap_or_else(QPoly::one);
    if !minimal.is_squarefree() {
        return Err(PnError::NotSemisimpleAtPoint(minimal.to_string()));
    }
    let chi_at = crate::nijenhuis::char_poly_of_qmatrix(&value);
    let chi_field = char_poly(l);
    let chart = l.chart();
    let mut out = Vec::new();
    for (q, mult) in chi_at.squarefree_decomposition() {
        let deg = q.degree().unwrap_or(0);
        // the eigenvalues of this factor are constant near the point iff the
        // factor divides the characteristic polynomial, as functions, to its
        // full multiplicity
        let lifted = q.lift(chart);
        let mut power = lifted.clone();
        for _ in 1..mult {
            power = power.mul(&lifted);
        }
        let constant = chi_field.div_rem(&power).1.is_zero();
        let real_roots = q.real_root_count();
        let complex_pairs = (deg - real_roots) / 2;
        let tag = if real_roots == deg {
            if constant {
                BlockType::Type2
            } else if mult == 2 {
                BlockType::Type1
            } else {
                BlockType::NonElementary
            }
        } else if real_roots == 0 {
            if constant {
                BlockType::Type4
            } else if mult == 2 {
                BlockType::Type3
            } else {
                BlockType::NonElementary
            }
        } else {
            BlockType::Mixed
        };
        let blocks = match tag {
            BlockType::Type1 | BlockType::Type2 => real_roots,
            BlockType::Type3 | BlockType::Type4 => complex_pairs,
            _ => 0,
        };
        out.push(BlockTag {
            factor: q.to_string(),
            multiplicity: mult,
            constant,
            real_roots,
            complex_pairs,
            blocks,
            tag,
        });
    }
    Ok(out)
}

/// Checks the canonical block shape of an operator on a 2n chart: companion
/// upper-left block with `σ_i = x_i`, zero upper-right block, transposed
/// companion lower-right block, and a skew lower-left block, which is
/// extracted and returned.
pub fn jacobi_row_structure(l: &OperatorField) -> Result<SfMatrix, PnError> {
    let chart = l.chart().clone();
    let dim = chart.dim();
    if dim % 2 != 0 {
        return Err(PnError::OddDimension(dim));
    }
    let n = dim / 2;
    let a = canonical_a_matrix(&chart);
    for i in 0..n {
        for j in 0..n {
            if l.entry(i, j) != a.at(i, j) {
                return Err(PnError::ShapeMismatch {
                    row: i,
                    detail: format!(
                        "upper-left entry ({i}, {j}) is {} but the companion pattern requires {}",
                        l.entry(i, j),
                        a.at(i, j)
                    ),
                });
            }
            if !l.entry(i, n + j).is_zero() {
                return Err(PnError::ShapeMismatch {
                    row: i,
                    detail: format!("upper-right entry ({i}, {j}) must vanish"),
                });
            }
            if l.entry(n + i, n + j) != a.at(j, i) {
                return Err(PnError::ShapeMismatch {
                    row: n + i,
                    detail: format!(
                        "lower-right entry ({i}, {j}) is {} but must equal the transposed block",
                        l.entry(n + i, n + j)
                    ),
                });
            }
        }
    }
    let mut s_hat = SfMatrix::zero(&chart, n, n);
    for i in 0..n {
        for j in 0..n {
            *s_hat.at_mut(i, j) = l.entry(n + i, j).clone();
        }
    }
    if !s_hat.is_skew_symmetric() {
        return Err(PnError::ShapeMismatch {
            row: n,
            detail: "lower-left block is not skew-symmetric".to_string(),
        });
    }
    Ok(s_hat)
}

/// Result of a generating-function transformation: the transformed pair plus
/// the exact certificate that the symplectic form was preserved.
pub struct GeneratingTransform {
    pub pair: PNPair,
    pub s_hat_before: SfMatrix,
    pub s_hat_after: SfMatrix,
}

/// Applies the momentum shift `p_i ↦ p_i + ∂U/∂x_i` to a pair in canonical
/// block shape. `u` must live on the pair's chart and be independent of the
/// momentum variables. The form is recomputed through the transformation and
/// certified unchanged.
pub fn generating_transform(u: &ScalarField, pair: &PNPair) -> Result<GeneratingTransform, PnError> {
    let chart = pair.chart().clone();
    if u.chart() != &chart {
        return Err(PnError::ChartMismatch);
    }
    let n = pair.half_dim();
    for k in n..2 * n {
        if u.depends_on(k) {
            return Err(PnError::DependsOnMomentum(chart.name(k).to_string()));
        }
    }
    let s_hat_before = jacobi_row_structure(pair.operator())?;

    // Hessian of U in the position variables
    let grad: Vec<ScalarField> = (0..n).map(|i| u.partial(i)).collect();
    let mut hess = SfMatrix::zero(&chart, n, n);
    for i in 0..n {
        for j in 0..n {
            *hess.at_mut(i, j) = grad[i].partial(j);
        }
    }
    let mut jac = SfMatrix::identity(&chart, 2 * n);
    let mut jac_inv = SfMatrix::identity(&chart, 2 * n);
    for i in 0..n {
        for j in 0..n {
            *jac.at_mut(n + i, j) = hess.at(i, j).clone();
            *jac_inv.at_mut(n + i, j) = -hess.at(i, j);
        }
    }

    let conjugated = jac.mul(pair.operator().matrix()).mul(&jac_inv);
    // express in the new coordinates: old p_i = P_i - ∂U/∂x_i
    let mut l_new = conjugated;
    for i in 0..n {
        let repl = &ScalarField::var(&chart, n + i) - &grad[i];
        l_new = l_new.substitute(n + i, &repl)?;
    }

    // the form transported the same way must come back canonical
    let w = two_form_to_matrix(pair.omega());
    let mut w_new = jac_inv.transpose().mul(&w).mul(&jac_inv);
    for i in 0..n {
        let repl = &ScalarField::var(&chart, n + i) - &grad[i];
        w_new = w_new.substitute(n + i, &repl)?;
    }
    assert_eq!(
        w_new, w,
        "generating transformation must preserve the symplectic form exactly"
    );

    let l_new = OperatorField::new(l_new);
    let s_hat_after = jacobi_row_structure(&l_new)?;
    let pair_new = PNPair::new(pair.omega().clone(), l_new)?;
    Ok(GeneratingTransform {
        pair: pair_new,
        s_hat_before,
        s_hat_after,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::{parse_scalar, rat_int};

    #[test]
    fn canonical_pairs_certify_small() {
        for n in 1..=3 {
            let c = build_canonical(n);
            let report = check_compatibility(c.pair());
            assert!(report.all_hold(), "n = {n}: {report:?}");
            assert!(torsion(c.pair().operator()).is_zero());
        }
    }

    #[test]
    fn canonical_n2_matrices_are_exact() {
        let c = build_canonical(2);
        let chart = c.pair().chart().clone();
        let a = c.a_block();
        assert_eq!(a.at(0, 0), &parse_scalar("-x1", &chart).unwrap());
        assert_eq!(a.at(0, 1), &ScalarField::one(&chart));
        assert_eq!(a.at(1, 0), &parse_scalar("-x2", &chart).unwrap());
        assert!(a.at(1, 1).is_zero());
        let s = c.s_block();
        assert!(s.at(0, 0).is_zero());
        assert_eq!(s.at(0, 1), &parse_scalar("-p2", &chart).unwrap());
        assert_eq!(s.at(1, 0), &parse_scalar("p2", &chart).unwrap());
        assert!(s.at(1, 1).is_zero());
    }

    #[test]
    fn canonical_n1_is_conformal_identity() {
        let c = build_canonical(1);
        let chart = c.pair().chart().clone();
        let l = c.pair().operator();
        let minus_x1 = parse_scalar("-x1", &chart).unwrap();
        assert_eq!(l.entry(0, 0), &minus_x1);
        assert_eq!(l.entry(1, 1), &minus_x1);
        assert!(l.entry(0, 1).is_zero());
        assert!(l.entry(1, 0).is_zero());
    }

    #[test]
    fn recursion_operator_round_trip() {
        let c = build_canonical(2);
        let omega = c.pair().omega();
        let tilde = omega_l_form(omega, c.pair().operator());
        let l = recursion_operator(omega, &tilde).unwrap();
        assert_eq!(&l, c.pair().operator());
    }

    #[test]
    fn recursion_operator_scalar_case() {
        let chart = Chart::new(["x", "p"]).unwrap();
        let omega = canonical_omega(&chart);
        let x = ScalarField::var(&chart, 0);
        let tilde = omega.scale(&x);
        let l = recursion_operator(&omega, &tilde).unwrap();
        assert_eq!(l, OperatorField::scalar(&x));
        // identity for equal forms
        let id = recursion_operator(&omega, &omega).unwrap();
        assert_eq!(id, OperatorField::identity(&chart));
    }

    #[test]
    fn degenerate_omega_rejected() {
        let chart = Chart::new(["x", "p"]).unwrap();
        let omega = KForm::zero(&chart, 2);
        let err = recursion_operator(&omega, &omega);
        assert!(matches!(err, Err(PnError::DegenerateOmega)));
    }

    #[test]
    fn perturbed_skewness_is_reported() {
        let c = build_canonical(2);
        let chart = c.pair().chart().clone();
        let mut l = c.pair().operator().matrix().clone();
        // add 1 to entry (1,1) of the momentum block
        *l.at_mut(2, 0) = l.at(2, 0) + &ScalarField::one(&chart);
        let pair = PNPair::new(c.pair().omega().clone(), OperatorField::new(l)).unwrap();
        let report = check_compatibility(&pair);
        assert!(!report.skew);
        assert!(!report.skew_violations.is_empty());
    }

    #[test]
    fn momentum_dependent_coupling_breaks_closedness() {
        let c = build_canonical(2);
        let chart = c.pair().chart().clone();
        let mut l = c.pair().operator().matrix().clone();
        // add p1 to the (1,2)-coupling entry, keeping it skew
        let p1 = ScalarField::var(&chart, 2);
        *l.at_mut(2, 1) = l.at(2, 1) + &(-&p1);
        *l.at_mut(3, 0) = l.at(3, 0) + &p1;
        let pair = PNPair::new(c.pair().omega().clone(), OperatorField::new(l)).unwrap();
        let report = check_compatibility(&pair);
        assert!(report.skew);
        assert!(!report.omega_tilde_closed);
    }

    #[test]
    fn shape_extraction_and_perturbation() {
        let c = build_canonical(2);
        let s_hat = jacobi_row_structure(c.pair().operator()).unwrap();
        assert_eq!(s_hat, c.s_block());
        // generic operator fails
        let chart = c.pair().chart().clone();
        let bad = OperatorField::identity(&chart);
        assert!(matches!(
            jacobi_row_structure(&bad),
            Err(PnError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn generating_transform_identity() {
        let c = build_canonical(2);
        let chart = c.pair().chart().clone();
        let zero = ScalarField::zero(&chart);
        let out = generating_transform(&zero, c.pair()).unwrap();
        assert_eq!(out.pair.operator(), c.pair().operator());
        assert_eq!(out.s_hat_before, out.s_hat_after);
    }

    #[test]
    fn generating_transform_momentum_block_shift() {
        // S̃ - Ŝ must equal d²U·A - Aᵀ·d²U for x-only U (the momentum
        // substitution does not touch the x-only part of the shift)
        let c = build_canonical(2);
        let chart = c.pair().chart().clone();
        let u = parse_scalar("x1*x2", &chart).unwrap();
        let out = generating_transform(&u, c.pair()).unwrap();
        let grad: Vec<ScalarField> = (0..2).map(|i| u.partial(i)).collect();
        let mut hess = SfMatrix::zero(&chart, 2, 2);
        for i in 0..2 {
            for j in 0..2 {
                *hess.at_mut(i, j) = grad[i].partial(j);
            }
        }
        let a = c.a_block();
        let expected_shift = hess.mul(&a).sub(&a.transpose().mul(&hess));
        // the shift also feeds the momentum substitution through S's p-entries
        let mut s_sub = c.s_block();
        for i in 0..2 {
            let repl = &ScalarField::var(&chart, 2 + i) - &grad[i];
            s_sub = s_sub.substitute(2 + i, &repl).unwrap();
        }
        let expected = s_sub.add(&expected_shift);
        assert_eq!(out.s_hat_after, expected);
    }

    #[test]
    fn generating_transform_preserves_torsion() {
        let c = build_canonical(2);
        let chart = c.pair().chart().clone();
        let u = parse_scalar("x1^2*x2 - x2^3", &chart).unwrap();
        let out = generating_transform(&u, c.pair()).unwrap();
        assert!(torsion(out.pair.operator()).is_zero());
        let report = check_compatibility(&out.pair);
        assert!(report.all_hold());
    }

    #[test]
    fn generating_transform_rejects_momentum_dependence() {
        let c = build_canonical(2);
        let chart = c.pair().chart().clone();
        let u = parse_scalar("p1*x1", &chart).unwrap();
        assert!(matches!(
            generating_transform(&u, c.pair()),
            Err(PnError::DependsOnMomentum(_))
        ));
    }

    #[test]
    fn classify_two_nonconstant_real_blocks() {
        // diag(x1, x2, x1, x2) against the canonical form, at a generic point
        let chart = Chart::canonical(2);
        let x1 = ScalarField::var(&chart, 0);
        let x2 = ScalarField::var(&chart, 1);
        let l = OperatorField::diagonal(&chart, vec![x1.clone(), x2.clone(), x1, x2]);
        let pair = PNPair::new(canonical_omega(&chart), l).unwrap();
        let tags =
            classify_semisimple_block(&pair, &[rat_int(1), rat_int(2), rat_int(0), rat_int(0)])
                .unwrap();
        assert_eq!(tags.len(), 1);
        assert_eq!(tags[0].tag, BlockType::Type1);
        assert_eq!(tags[0].blocks, 2);
        assert!(!tags[0].constant);
    }

    #[test]
    fn classify_constant_real_and_complex() {
        let chart = Chart::canonical(2);
        // constant real eigenvalue of multiplicity 4
        let l = OperatorField::scalar(&crate::symkernel::sf_rat(&chart, 3, 1));
        let pair = PNPair::new(canonical_omega(&chart), l).unwrap();
        let origin = vec![rat_int(0); 4];
        let tags = classify_semisimple_block(&pair, &origin).unwrap();
        assert_eq!(tags.len(), 1);
        assert_eq!(tags[0].tag, BlockType::Type2);
        assert!(tags[0].constant);

        // constant complex pair: chi = (t^2+1)^2
        let j = OperatorField::from_exprs(
            &chart,
            &[
                vec!["0", "-1", "0", "0"],
                vec!["1", "0", "0", "0"],
                vec!["0", "0", "0", "-1"],
                vec!["0", "0", "1", "0"],
            ],
        )
        .unwrap();
        let pair = PNPair::new(canonical_omega(&chart), j).unwrap();
        let tags = classify_semisimple_block(&pair, &origin).unwrap();
        assert_eq!(tags.len(), 1);
        assert_eq!(tags[0].tag, BlockType::Type4);
        assert_eq!(tags[0].complex_pairs, 1);
    }

    #[test]
    fn classify_rejects_nonsemisimple() {
        let c = build_canonical(2);
        // at the origin the canonical operator is nilpotent with two blocks
        let origin = vec![rat_int(0); 4];
        assert!(matches!(
            classify_semisimple_block(c.pair(), &origin),
            Err(PnError::NotSemisimpleAtPoint(_))
        ));
    }
}
