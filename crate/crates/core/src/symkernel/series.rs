//! Multivariate formal power series truncated at a total degree, with exact
//! rational coefficients. Arithmetic stays closed under the truncation order.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::chart::Chart;
use super::poly::{Monomial, Poly};
use super::scalar::{parse_rational, ScalarField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("denominator vanishes at the expansion point")]
    DenominatorVanishes,
    #[error("series have different truncation data")]
    Incompatible,
}

/// Taylor coefficients of an expansion at `base`: the monomial `e` stands for
/// the product of `(x_i - base_i)^{e_i}`. Only total degrees `<= order` are
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    chart: Chart,
    base: Vec<BigRational>,
    order: u32,
    coeffs: BTreeMap<Monomial, BigRational>,
}

impl TruncatedSeries {
    pub fn zero(chart: &Chart, base: Vec<BigRational>, order: u32) -> Self {
        assert_eq!(base.len(), chart.dim());
        TruncatedSeries {
            chart: chart.clone(),
            base,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn base(&self) -> &[BigRational] {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn set_coeff(&mut self, m: Monomial, c: BigRational) {
        assert!(m.total_degree() <= self.order, "coefficient beyond order");
        if c.is_zero() {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, c);
        }
    }

    pub fn add_coeff(&mut self, m: Monomial, c: BigRational) {
        if m.total_degree() > self.order || c.is_zero() {
            return;
        }
        let cur = self.coeff(&m);
        self.set_coeff(m, cur + c);
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.chart != other.chart || self.base != other.base {
            return Err(SeriesError::Incompatible);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = TruncatedSeries::zero(&self.chart, self.base.clone(), order);
        for (m, c) in &self.coeffs {
            out.add_coeff(m.clone(), c.clone());
        }
        for (m, c) in &other.coeffs {
            out.add_coeff(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            chart: self.chart.clone(),
            base: self.base.clone(),
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = TruncatedSeries::zero(&self.chart, self.base.clone(), order);
        for (ma, ca) in &self.coeffs {
            if ma.total_degree() > order {
                continue;
            }
            for (mb, cb) in &other.coeffs {
                if ma.total_degree() + mb.total_degree() > order {
                    continue;
                }
                out.add_coeff(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = TruncatedSeries::zero(&self.chart, self.base.clone(), self.order);
        for (m, a) in &self.coeffs {
            out.add_coeff(m.clone(), a * c);
        }
        out
    }

    /// Term-wise derivative; the result is reliable one order lower.
    pub fn partial(&self, index: usize) -> Self {
        let order = self.order.saturating_sub(1);
        let mut out = TruncatedSeries::zero(&self.chart, self.base.clone(), order);
        for (m, c) in &self.coeffs {
            let e = m.degree_of(index);
            if e == 0 {
                continue;
            }
            let mut v = m.0.clone();
            v[index] = e - 1;
            out.add_coeff(Monomial(v), c * BigRational::from_integer(e.into()));
        }
        out
    }

    /// Term-wise antiderivative with zero constant slice; raises the order.
    pub fn integrate(&self, index: usize) -> Self {
        let mut out = TruncatedSeries::zero(&self.chart, self.base.clone(), self.order + 1);
        for (m, c) in &self.coeffs {
            let e = m.degree_of(index);
            let mut v = m.0.clone();
            v[index] = e + 1;
            out.add_coeff(Monomial(v), c / BigRational::from_integer((e + 1).into()));
        }
        out
    }

    pub fn truncate(&self, order: u32) -> Self {
        let mut out = TruncatedSeries::zero(&self.chart, self.base.clone(), order.min(self.order));
        for (m, c) in &self.coeffs {
            out.add_coeff(m.clone(), c.clone());
        }
        out
    }

    /// The truncation as an exact polynomial in the chart coordinates
    /// (re-centred away from the base point).
    pub fn to_polynomial(&self) -> Poly {
        let chart = &self.chart;
        let mut acc = Poly::zero(chart);
        for (m, c) in &self.coeffs {
            let mut term = Poly::constant(chart, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let shifted =
                    &Poly::var(chart, i) - &Poly::constant(chart, self.base[i].clone());
                term = &term * &shifted.pow(e);
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn to_scalar(&self) -> ScalarField {
        ScalarField::from_poly(self.to_polynomial())
    }
}

/// Taylor expansion of a rational function at `base` through total degree
/// `order`. Fails when the denominator vanishes at the base point.
pub fn series_from_scalar(
    f: &ScalarField,
    base: &[BigRational],
    order: u32,
) -> Result<TruncatedSeries, SeriesError> {
    let chart = f.chart().clone();
    assert_eq!(base.len(), chart.dim(), "base point dimension mismatch");
    let num_shifted = f.num().shift(base);
    let den_shifted = f.den().shift(base);
    let c0 = den_shifted.eval(&vec![BigRational::zero(); chart.dim()]);
    if c0.is_zero() {
        return Err(SeriesError::DenominatorVanishes);
    }

    let num_series = poly_to_series(&num_shifted, base, order);
    if f.is_polynomial() {
        let inv = BigRational::one() / c0;
        return Ok(num_series.scale(&inv));
    }

    // 1/den = (1/c0) * sum_k e^k with e = 1 - den/c0 (no constant term)
    let inv_c0 = BigRational::one() / c0;
    let mut e = poly_to_series(&den_shifted, base, order).scale(&inv_c0).neg();
    e.add_coeff(Monomial::constant(chart.dim()), BigRational::one());
    let mut inv_den = TruncatedSeries::zero(&chart, base.to_vec(), order);
    inv_den.add_coeff(Monomial::constant(chart.dim()), BigRational::one());
    let mut power = e.clone();
    for _ in 1..=order {
        inv_den = inv_den.add(&power).unwrap();
        power = power.mul(&e).unwrap();
        if power.is_zero() {
            break;
        }
    }
    let inv_den = inv_den.scale(&inv_c0);
    num_series.mul(&inv_den)
}

fn poly_to_series(shifted: &Poly, base: &[BigRational], order: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(shifted.chart(), base.to_vec(), order);
    for (m, c) in shifted.terms() {
        out.add_coeff(m.clone(), c.clone());
    }
    out
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg {})", self.to_polynomial(), self.order + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

fn rational_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    chart: Vec<String>,
    base_point: Vec<String>,
    order: u32,
    coeffs: Vec<(String, Vec<u32>)>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            chart: self.chart.names().to_vec(),
            base_point: self.base.iter().map(rational_string).collect(),
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (rational_string(c), m.0.clone()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        let chart = Chart::new(raw.chart).map_err(D::Error::custom)?;
        let base: Option<Vec<BigRational>> =
            raw.base_point.iter().map(|s| parse_rational(s)).collect();
        let base = base.ok_or_else(|| D::Error::custom("bad rational in base point"))?;
        if base.len() != chart.dim() {
            return Err(D::Error::custom("base point dimension mismatch"));
        }
        let mut out = TruncatedSeries::zero(&chart, base, raw.order);
        for (c, e) in raw.coeffs {
            let coeff = parse_rational(&c)
                .ok_or_else(|| D::Error::custom(format!("bad rational coefficient `{c}`")))?;
            if e.len() != chart.dim() {
                return Err(D::Error::custom("exponent vector length mismatch"));
            }
            let m = Monomial(e);
            if m.total_degree() > raw.order {
                return Err(D::Error::custom("coefficient beyond truncation order"));
            }
            out.add_coeff(m, coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::poly::{rat_int, Poly};

    fn zeros(n: usize) -> Vec<BigRational> {
        vec![BigRational::zero(); n]
    }

    #[test]
    fn geometric_series() {
        let c = Chart::new(["x"]).unwrap();
        let one = ScalarField::one(&c);
        let x = ScalarField::var(&c, 0);
        let f = &one / &(&one - &x);
        let s = series_from_scalar(&f, &zeros(1), 3).unwrap();
        for k in 0..=3u32 {
            assert_eq!(s.coeff(&Monomial(vec![k])), rat_int(1));
        }
    }

    #[test]
    fn truncation_drops_high_degree() {
        let c = Chart::new(["x1", "x2"]).unwrap();
        let f = &ScalarField::var(&c, 0) * &ScalarField::var(&c, 1);
        let s = series_from_scalar(&f, &zeros(2), 1).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn rational_expansion_certified_by_multiplication() {
        let c = Chart::new(["x1", "x2"]).unwrap();
        let x1 = ScalarField::var(&c, 0);
        let x2 = ScalarField::var(&c, 1);
        let f = &x1 / &(&x2 - &ScalarField::one(&c));
        let s = series_from_scalar(&f, &zeros(2), 2).unwrap();
        // expected: -x1 - x1*x2 truncated at degree 2
        assert_eq!(s.coeff(&Monomial(vec![1, 0])), rat_int(-1));
        assert_eq!(s.coeff(&Monomial(vec![0, 1])), rat_int(0));
        assert_eq!(s.coeff(&Monomial(vec![2, 0])), rat_int(0));
        // oracle: (x2 - 1) * series == x1 modulo degree > 2... the product of
        // the degree-2 truncation with the exact factor reproduces x1 in all
        // degrees <= 2.
        let den_series = series_from_scalar(&(&x2 - &ScalarField::one(&c)), &zeros(2), 2).unwrap();
        let prod = s.mul(&den_series).unwrap();
        let expect = series_from_scalar(&x1, &zeros(2), 2).unwrap();
        assert_eq!(prod, expect);
        let _ = Poly::zero(&c);
    }

    #[test]
    fn denominator_vanishing_is_reported() {
        let c = Chart::new(["x"]).unwrap();
        let x = ScalarField::var(&c, 0);
        let f = &ScalarField::one(&c) / &x;
        assert_eq!(
            series_from_scalar(&f, &zeros(1), 2),
            Err(SeriesError::DenominatorVanishes)
        );
    }

    #[test]
    fn expansion_at_nonzero_base() {
        let c = Chart::new(["x"]).unwrap();
        let x = ScalarField::var(&c, 0);
        let f = &ScalarField::one(&c) / &x;
        // 1/x at x=1: 1 - (x-1) + (x-1)^2 - ...
        let s = series_from_scalar(&f, &[rat_int(1)], 2).unwrap();
        assert_eq!(s.coeff(&Monomial(vec![0])), rat_int(1));
        assert_eq!(s.coeff(&Monomial(vec![1])), rat_int(-1));
        assert_eq!(s.coeff(&Monomial(vec![2])), rat_int(1));
        // to_polynomial re-centres exactly
        let p = s.to_polynomial();
        assert_eq!(p.eval(&[rat_int(1)]), rat_int(1));
    }

    #[test]
    fn json_round_trip() {
        let c = Chart::new(["x", "y"]).unwrap();
        let f = &ScalarField::var(&c, 0) * &ScalarField::var(&c, 1);
        let s = series_from_scalar(&f, &zeros(2), 4).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        let back: TruncatedSeries = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
    }
}
