//! Univariate polynomials in an abstract indeterminate `t`:
//! [`UniPoly`] over the rational-function field (characteristic polynomials,
//! square roots of full squares) and [`QPoly`] over plain rationals
//! (point-wise invariant factors, squarefree splitting, real root counts).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::chart::Chart;
use super::scalar::ScalarField;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UniPolyError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree {0} is odd, cannot be a full square")]
    OddDegree(u32),
    #[error("not a full square: coefficient of t^{power} requires {expected} but q has {found}")]
    NotAFullSquare {
        power: usize,
        expected: String,
        found: String,
    },
}

/// Dense univariate polynomial with rational-function coefficients,
/// `coeffs[k]` multiplying `t^k`. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    chart: Chart,
    coeffs: Vec<ScalarField>,
}

impl UniPoly {
    pub fn new(chart: &Chart, mut coeffs: Vec<ScalarField>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly {
            chart: chart.clone(),
            coeffs,
        }
    }

    pub fn zero(chart: &Chart) -> Self {
        UniPoly {
            chart: chart.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(chart: &Chart, degree: usize, c: ScalarField) -> Self {
        let mut coeffs = vec![ScalarField::zero(chart); degree + 1];
        coeffs[degree] = c;
        UniPoly::new(chart, coeffs)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> ScalarField {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| ScalarField::zero(&self.chart))
    }

    pub fn coeffs(&self) -> &[ScalarField] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&ScalarField> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) + &other.coeff(k));
        }
        UniPoly::new(&self.chart, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) - &other.coeff(k));
        }
        UniPoly::new(&self.chart, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.chart);
        }
        let mut out = vec![ScalarField::zero(&self.chart); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(&self.chart, out)
    }

    pub fn scale(&self, c: &ScalarField) -> Self {
        UniPoly::new(
            &self.chart,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    /// Euclidean division over the rational-function field.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        let mut q = vec![ScalarField::zero(&self.chart); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let f = r.leading().unwrap() / &lc;
            q[dr - dd] = f.clone();
            let shifted = UniPoly::monomial(&self.chart, dr - dd, f);
            r = r.sub(&shifted.mul(d));
        }
        (UniPoly::new(&self.chart, q), r)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inverse().expect("leading coefficient nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.chart);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&BigRational::from_integer(BigInt::from(k))))
            .collect();
        UniPoly::new(&self.chart, out)
    }

    /// Substitutes a scalar value for `t`.
    pub fn eval_scalar(&self, t: &ScalarField) -> ScalarField {
        let mut acc = ScalarField::zero(&self.chart);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// Evaluates coefficient-wise at a chart point, producing a [`QPoly`].
    pub fn eval_coeffs(&self, point: &[BigRational]) -> Result<QPoly, super::scalar::ScalarError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.eval(point)?);
        }
        Ok(QPoly::new(out))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = if k == 0 {
                format!("({c})")
            } else if k == 1 {
                format!("({c})*t")
            } else {
                format!("({c})*t^{k}")
            };
            parts.push(body);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

/// Monic square root of an even-degree monic polynomial by triangular
/// coefficient matching; the remaining coefficients are verified exactly and
/// the first violated identity is reported on failure.
pub fn poly_square_root(q: &UniPoly) -> Result<UniPoly, UniPolyError> {
    if !q.is_monic() {
        return Err(UniPolyError::NotMonic);
    }
    let deg = q.degree().expect("monic polynomial is nonzero") as u32;
    if deg % 2 != 0 {
        return Err(UniPolyError::OddDegree(deg));
    }
    let n = (deg / 2) as usize;
    let chart = q.chart().clone();
    let two_inv = ScalarField::constant(&chart, BigRational::new(1.into(), 2.into()));

    // r = t^n + h_1 t^{n-1} + ... + h_n, determined from the top coefficients
    let mut h = vec![ScalarField::zero(&chart); n + 1];
    h[0] = ScalarField::one(&chart);
    for k in 1..=n {
        // coefficient of t^{2n-k} in r^2: 2 h_k + sum_{i+j=k, 0<i,j<k} h_i h_j
        let mut cross = ScalarField::zero(&chart);
        for i in 1..k {
            let j = k - i;
            cross = &cross + &(&h[i] * &h[j]);
        }
        let target = q.coeff(2 * n - k);
        h[k] = (&target - &cross) * &two_inv;
    }
    let r = UniPoly::new(&chart, {
        let mut c = h.clone();
        c.reverse();
        c
    });
    let square = r.mul(&r);
    for k in (0..=2 * n).rev() {
        let expected = square.coeff(k);
        let found = q.coeff(k);
        if expected != found {
            return Err(UniPolyError::NotAFullSquare {
                power: k,
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// univariate polynomials over the plain rationals
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&n| BigRational::from_integer(n.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let f = r.leading().unwrap() / &lc;
            q[dr - dd] = f.clone();
            let mut sub = vec![BigRational::zero(); dr + 1];
            for (k, c) in d.coeffs.iter().enumerate() {
                sub[dr - dd + k] = c * &f;
            }
            r = r.sub(&QPoly::new(sub));
        }
        (QPoly::new(q), r)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => QPoly::zero(),
            Some(lc) => {
                let inv = BigRational::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        if self.degree().unwrap_or(0) <= 1 {
            return true;
        }
        self.gcd(&self.derivative()).is_one()
    }

    /// Yun's squarefree decomposition: returns `(q_i, i)` with
    /// `self = lc * prod q_i^i`, each `q_i` monic squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, u32)> {
        let p = self.monic();
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let mut a = p.gcd(&dp);
        let mut b = p.div_rem(&a).0;
        let mut c = dp.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1u32;
        loop {
            let q = b.gcd(&d);
            if q.degree().unwrap_or(0) > 0 {
                out.push((q.clone(), i));
            }
            b = b.div_rem(&q).0;
            c = d.div_rem(&q).0;
            d = c.sub(&b.derivative());
            i += 1;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            a = q;
            let _ = &a;
        }
        out
    }

    /// Number of distinct real roots, by Sturm's theorem over the whole line.
    pub fn real_root_count(&self) -> usize {
        let p = self.monic();
        let deg = match p.degree() {
            None | Some(0) => return 0,
            Some(d) => d,
        };
        if deg == 1 {
            return 1;
        }
        // Sturm chain
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let last = &chain[chain.len() - 1];
            let prev = &chain[chain.len() - 2];
            if last.is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = prev.div_rem(last);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        let sign_at_inf = |q: &QPoly, positive: bool| -> i32 {
            match q.leading() {
                None => 0,
                Some(lc) => {
                    let d = q.degree().unwrap();
                    let mut s = if lc.is_positive() { 1 } else { -1 };
                    if !positive && d % 2 == 1 {
                        s = -s;
                    }
                    s
                }
            }
        };
        let variations = |positive: bool| -> usize {
            let mut count = 0;
            let mut last = 0i32;
            for q in &chain {
                let s = sign_at_inf(q, positive);
                if s == 0 {
                    continue;
                }
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
            count
        };
        variations(false) - variations(true)
    }

    /// Lifts to a [`UniPoly`] with constant coefficients on a chart.
    pub fn lift(&self, chart: &Chart) -> UniPoly {
        UniPoly::new(
            chart,
            self.coeffs
                .iter()
                .map(|c| ScalarField::constant(chart, c.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff = if abs.denom().is_one() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            match k {
                0 => write!(f, "{coeff}")?,
                1 if abs.is_one() => write!(f, "t")?,
                1 => write!(f, "{coeff}*t")?,
                _ if abs.is_one() => write!(f, "t^{k}")?,
                _ => write!(f, "{coeff}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::new(["x1", "x2"]).unwrap()
    }

    #[test]
    fn square_root_of_perfect_square() {
        let c = chart();
        // q = t^2 - 2t + 1 -> r = t - 1
        let q = UniPoly::new(
            &c,
            vec![
                ScalarField::int(&c, 1),
                ScalarField::int(&c, -2),
                ScalarField::int(&c, 1),
            ],
        );
        let r = poly_square_root(&q).unwrap();
        assert_eq!(
            r,
            UniPoly::new(&c, vec![ScalarField::int(&c, -1), ScalarField::int(&c, 1)])
        );
    }

    #[test]
    fn square_root_failure_reported() {
        let c = chart();
        // t^2 + 1 is not a square: matching forces r = t, and the constant
        // coefficient identity fails.
        let q = UniPoly::new(
            &c,
            vec![
                ScalarField::int(&c, 1),
                ScalarField::int(&c, 0),
                ScalarField::int(&c, 1),
            ],
        );
        match poly_square_root(&q) {
            Err(UniPolyError::NotAFullSquare { power, .. }) => assert_eq!(power, 0),
            other => panic!("expected NotAFullSquare, got {other:?}"),
        }
    }

    #[test]
    fn square_root_with_field_coefficients() {
        let c = chart();
        let x1 = ScalarField::var(&c, 0);
        let x2 = ScalarField::var(&c, 1);
        // r = t^2 + x1 t + x2
        let r = UniPoly::new(&c, vec![x2, x1, ScalarField::one(&c)]);
        let q = r.mul(&r);
        assert_eq!(poly_square_root(&q).unwrap(), r);
    }

    #[test]
    fn qpoly_gcd_and_squarefree() {
        // p = (t-1)^2 (t+2)
        let t1 = QPoly::from_ints(&[-1, 1]);
        let t2 = QPoly::from_ints(&[2, 1]);
        let p = t1.mul(&t1).mul(&t2);
        let dec = p.squarefree_decomposition();
        assert_eq!(dec, vec![(t2.clone(), 1), (t1.clone(), 2)]);
        assert!(!p.is_squarefree());
        assert!(t1.mul(&t2).is_squarefree());
    }

    #[test]
    fn sturm_counts_real_roots() {
        // (t^2+1): 0 real roots
        assert_eq!(QPoly::from_ints(&[1, 0, 1]).real_root_count(), 0);
        // (t^2-2): 2 real roots
        assert_eq!(QPoly::from_ints(&[-2, 0, 1]).real_root_count(), 2);
        // (t-1)(t-2)(t-3)
        let p = QPoly::from_ints(&[-1, 1])
            .mul(&QPoly::from_ints(&[-2, 1]))
            .mul(&QPoly::from_ints(&[-3, 1]));
        assert_eq!(p.real_root_count(), 3);
        // t^3 - 2: one real root
        assert_eq!(QPoly::from_ints(&[-2, 0, 0, 1]).real_root_count(), 1);
    }
}
