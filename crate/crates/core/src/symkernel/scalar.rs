//! Exact rational functions: quotients of multivariate polynomials kept in a
//! canonical reduced form, so structural equality coincides with equality of
//! rational functions.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::chart::Chart;
use super::poly::{poly_gcd, rat_int, Monomial, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("substitution produced an identically zero denominator")]
    SubstitutionDegenerate,
    #[error("value uses coordinate `{0}` outside the target chart")]
    OutsideChart(String),
}

/// Canonical quotient `num/den`: gcd(num, den) = 1 and den has leading
/// coefficient one in graded-lex order. Equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarField {
    num: Poly,
    den: Poly,
}

impl ScalarField {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return ScalarField {
                den: Poly::one(num.chart()),
                num,
            };
        }
        if let Some(c) = den.as_constant() {
            let inv = BigRational::one() / c;
            return ScalarField {
                num: num.scale(&inv),
                den: Poly::one(num.chart()),
            };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        ScalarField { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        ScalarField {
            den: Poly::one(p.chart()),
            num: p,
        }
    }

    pub fn zero(chart: &Chart) -> Self {
        ScalarField::from_poly(Poly::zero(chart))
    }

    pub fn one(chart: &Chart) -> Self {
        ScalarField::from_poly(Poly::one(chart))
    }

    pub fn constant(chart: &Chart, c: BigRational) -> Self {
        ScalarField::from_poly(Poly::constant(chart, c))
    }

    pub fn int(chart: &Chart, n: i64) -> Self {
        ScalarField::from_poly(Poly::int(chart, n))
    }

    pub fn var(chart: &Chart, index: usize) -> Self {
        ScalarField::from_poly(Poly::var(chart, index))
    }

    pub fn chart(&self) -> &Chart {
        self.num.chart()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.as_constant().map(|c| c.is_one()).unwrap_or(false)
            && self.num.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&Poly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn depends_on(&self, index: usize) -> bool {
        self.num.depends_on(index) || self.den.depends_on(index)
    }

    fn assert_chart(&self, other: &ScalarField) {
        assert!(
            self.chart() == other.chart(),
            "chart mismatch: {} vs {}",
            self.chart(),
            other.chart()
        );
    }

    pub fn try_div(&self, rhs: &ScalarField) -> Result<ScalarField, ScalarError> {
        self.assert_chart(rhs);
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(ScalarField::reduced(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    pub fn inverse(&self) -> Result<ScalarField, ScalarError> {
        ScalarField::one(self.chart()).try_div(self)
    }

    pub fn pow(&self, e: u32) -> ScalarField {
        ScalarField::reduced(self.num.pow(e), self.den.pow(e))
    }

    pub fn scale(&self, c: &BigRational) -> ScalarField {
        ScalarField::reduced(self.num.scale(c), self.den.clone())
    }

    /// Exact quotient-rule partial derivative.
    pub fn partial(&self, index: usize) -> ScalarField {
        if self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            return ScalarField::from_poly(self.num.partial(index));
        }
        let num = &(&self.num.partial(index) * &self.den) - &(&self.num * &self.den.partial(index));
        ScalarField::reduced(num, &self.den * &self.den)
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Substitutes a rational function for one variable.
    pub fn substitute(&self, v: usize, value: &ScalarField) -> Result<ScalarField, ScalarError> {
        self.assert_chart(value);
        if !self.depends_on(v) {
            return Ok(self.clone());
        }
        let num = substitute_poly(&self.num, v, value);
        let den = substitute_poly(&self.den, v, value);
        let out_num = &num.num * &den.den;
        let out_den = &num.den * &den.num;
        if out_den.is_zero() {
            return Err(ScalarError::SubstitutionDegenerate);
        }
        Ok(ScalarField::reduced(out_num, out_den))
    }

    /// Composes with a full substitution: variable `i` is replaced by
    /// `images[i]`. The images live on a common chart, which becomes the
    /// chart of the result.
    pub fn compose(&self, images: &[ScalarField]) -> Result<ScalarField, ScalarError> {
        assert_eq!(images.len(), self.chart().dim(), "one image per variable");
        let target = images
            .first()
            .map(|f| f.chart().clone())
            .expect("chart is nonempty");
        assert!(
            images.iter().all(|f| f.chart() == &target),
            "images must share a chart"
        );
        let num = compose_poly(&self.num, images, &target);
        let den = compose_poly(&self.den, images, &target);
        let out_num = &num.num * &den.den;
        let out_den = &num.den * &den.num;
        if out_den.is_zero() {
            return Err(ScalarError::SubstitutionDegenerate);
        }
        Ok(ScalarField::reduced(out_num, out_den))
    }

    /// Maps the value onto another chart by coordinate names. Fails when the
    /// value depends on a coordinate absent from the target chart.
    pub fn map_chart(&self, chart: &Chart) -> Result<ScalarField, ScalarError> {
        let src = self.chart();
        let index_map: Vec<Option<usize>> =
            src.names().iter().map(|n| chart.index_of(n)).collect();
        for (i, m) in index_map.iter().enumerate() {
            if m.is_none() && self.depends_on(i) {
                return Err(ScalarError::OutsideChart(src.name(i).to_string()));
            }
        }
        let num = self.num.map_chart(chart, &index_map).unwrap();
        let den = self.den.map_chart(chart, &index_map).unwrap();
        Ok(ScalarField::reduced(num, den))
    }
}

fn compose_poly(p: &Poly, images: &[ScalarField], target: &Chart) -> ScalarField {
    let mut acc = ScalarField::zero(target);
    for (m, c) in p.terms() {
        let mut term = ScalarField::constant(target, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            term = &term * &images[i].pow(e);
        }
        acc += &term;
    }
    acc
}

/// Horner evaluation of a polynomial at a rational-function value of one
/// variable.
fn substitute_poly(p: &Poly, v: usize, value: &ScalarField) -> ScalarField {
    if !p.depends_on(v) {
        return ScalarField::from_poly(p.clone());
    }
    let coeffs = p.as_univariate(v);
    let mut acc = ScalarField::zero(p.chart());
    for c in coeffs.iter().rev() {
        acc = &(&acc * value) + &ScalarField::from_poly(c.clone());
    }
    acc
}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        self.assert_chart(rhs);
        if self.den == rhs.den {
            return ScalarField::reduced(&self.num + &rhs.num, self.den.clone());
        }
        ScalarField::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        self.assert_chart(rhs);
        if self.den == rhs.den {
            return ScalarField::reduced(&self.num - &rhs.num, self.den.clone());
        }
        ScalarField::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &ScalarField {
    type Output = ScalarField;
    fn mul(self, rhs: &ScalarField) -> ScalarField {
        self.assert_chart(rhs);
        if self.is_zero() || rhs.is_zero() {
            return ScalarField::zero(self.chart());
        }
        ScalarField::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on a zero divisor; use [`ScalarField::try_div`] on fallible paths.
impl Div for &ScalarField {
    type Output = ScalarField;
    fn div(self, rhs: &ScalarField) -> ScalarField {
        self.try_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: ScalarField) -> ScalarField {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $method(self, rhs: &ScalarField) -> ScalarField {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        -&self
    }
}

impl AddAssign<&ScalarField> for ScalarField {
    fn add_assign(&mut self, rhs: &ScalarField) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ScalarField> for ScalarField {
    fn sub_assign(&mut self, rhs: &ScalarField) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&ScalarField> for ScalarField {
    fn mul_assign(&mut self, rhs: &ScalarField) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarField({self})")
    }
}

// ---------------------------------------------------------------------------
// JSON: {"chart": [...], "num": [["p/q", [e..]], ...], "den": [...]}
// ---------------------------------------------------------------------------

fn rational_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().ok()?;
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: num_bigint::BigInt = s.parse().ok()?;
            Some(BigRational::from(n))
        }
    }
}

fn poly_to_terms(p: &Poly) -> Vec<(String, Vec<u32>)> {
    // descending graded-lex for stable output
    p.terms()
        .map(|(m, c)| (rational_string(c), m.0.clone()))
        .rev()
        .collect()
}

fn poly_from_terms(
    chart: &Chart,
    terms: &[(String, Vec<u32>)],
) -> Result<Poly, String> {
    let mut acc = Vec::new();
    for (c, e) in terms {
        let coeff =
            parse_rational(c).ok_or_else(|| format!("bad rational coefficient `{c}`"))?;
        if e.len() != chart.dim() {
            return Err(format!(
                "exponent vector length {} does not match chart dimension {}",
                e.len(),
                chart.dim()
            ));
        }
        acc.push((Monomial(e.clone()), coeff));
    }
    Ok(Poly::from_terms(chart, acc))
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    chart: Vec<String>,
    num: Vec<(String, Vec<u32>)>,
    den: Vec<(String, Vec<u32>)>,
}

impl Serialize for ScalarField {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ScalarJson {
            chart: self.chart().names().to_vec(),
            num: poly_to_terms(&self.num),
            den: poly_to_terms(&self.den),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ScalarField {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ScalarJson::deserialize(deserializer)?;
        let chart = Chart::new(raw.chart).map_err(D::Error::custom)?;
        let num = poly_from_terms(&chart, &raw.num).map_err(D::Error::custom)?;
        let den = poly_from_terms(&chart, &raw.den).map_err(D::Error::custom)?;
        ScalarField::new(num, den).map_err(D::Error::custom)
    }
}

/// Convenience: `n/d` as a constant on the chart.
pub fn sf_rat(chart: &Chart, n: i64, d: i64) -> ScalarField {
    ScalarField::constant(chart, BigRational::new(n.into(), d.into()))
}

/// Sum of scalars, zero on empty input.
pub fn sf_sum<'a, I: IntoIterator<Item = &'a ScalarField>>(chart: &Chart, items: I) -> ScalarField {
    let mut acc = ScalarField::zero(chart);
    for s in items {
        acc += s;
    }
    acc
}

pub use super::poly::rat;

#[allow(unused)]
pub fn sf_int(chart: &Chart, n: i64) -> ScalarField {
    ScalarField::constant(chart, rat_int(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::new(["x", "y"]).unwrap()
    }

    #[test]
    fn reduction_is_canonical() {
        let c = chart();
        let x = Poly::var(&c, 0);
        let y = Poly::var(&c, 1);
        // (x^2 - y^2) / (x - y) == x + y
        let f = ScalarField::new(&(&x * &x) - &(&y * &y), &x - &y).unwrap();
        assert_eq!(f, ScalarField::from_poly(&x + &y));
        assert!(f.is_polynomial());
    }

    #[test]
    fn x_over_x_is_one() {
        let c = chart();
        let x = Poly::var(&c, 0);
        let f = ScalarField::new(x.clone(), x).unwrap();
        assert!(f.is_one());
    }

    #[test]
    fn denominator_leading_coeff_normalized() {
        let c = chart();
        let x = Poly::var(&c, 0);
        // 1 / (2x) stores den = x, num = 1/2
        let f = ScalarField::new(Poly::one(&c), x.scale(&rat_int(2))).unwrap();
        assert_eq!(f.den().leading_coeff(), num_traits::One::one());
        assert_eq!(f.to_string(), "(1/2)/(x)");
    }

    #[test]
    fn quotient_rule() {
        let c = chart();
        let x = ScalarField::var(&c, 0);
        let y = ScalarField::var(&c, 1);
        // d/dy (x/y) = -x/y^2
        let f = &x / &y;
        let expect = &(-&x) / &(&y * &y);
        assert_eq!(f.partial(1), expect);
    }

    #[test]
    fn substitution() {
        let c = chart();
        let x = ScalarField::var(&c, 0);
        let y = ScalarField::var(&c, 1);
        // (x/y) with x -> y+1
        let f = &x / &y;
        let g = f.substitute(0, &(&y + &ScalarField::one(&c))).unwrap();
        let expect = &(&y + &ScalarField::one(&c)) / &y;
        assert_eq!(g, expect);
    }

    #[test]
    fn json_round_trip() {
        let c = chart();
        let x = ScalarField::var(&c, 0);
        let y = ScalarField::var(&c, 1);
        let f = &(&x * &y) / &(&x + &(&y * &y));
        let s = serde_json::to_string(&f).unwrap();
        let back: ScalarField = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
