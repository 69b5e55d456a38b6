//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are kept in a `BTreeMap` ordered by graded lexicographic monomial
//! order, so iteration order (and therefore printing and hashing) is
//! canonical for a fixed chart. No zero coefficient is ever stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::chart::Chart;

/// Exponent vector of length equal to the chart dimension.
///
/// `Ord` is graded lexicographic: total degree first, then lexicographic on
/// the exponent vector. The maximum of a term set is its leading monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, index: usize) -> Self {
        let mut e = vec![0; dim];
        e[index] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn degree_of(&self, index: usize) -> u32 {
        self.0[index]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    chart: Chart,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

impl Poly {
    pub fn zero(chart: &Chart) -> Self {
        Poly {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(chart: &Chart) -> Self {
        Poly::constant(chart, BigRational::one())
    }

    pub fn constant(chart: &Chart, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::constant(chart.dim()), c);
        }
        Poly {
            chart: chart.clone(),
            terms,
        }
    }

    pub fn int(chart: &Chart, n: i64) -> Self {
        Poly::constant(chart, rat_int(n))
    }

    pub fn var(chart: &Chart, index: usize) -> Self {
        assert!(index < chart.dim(), "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(chart.dim(), index), BigRational::one());
        Poly {
            chart: chart.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(chart: &Chart, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Poly::zero(chart);
        for (m, c) in terms {
            assert_eq!(m.0.len(), chart.dim(), "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Monomial, BigRational> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_of(&self, index: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_of(index))
            .max()
            .unwrap_or(0)
    }

    pub fn depends_on(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.degree_of(index) > 0)
    }

    /// Leading term in graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_chart(&self, other: &Poly) {
        assert!(
            self.chart == other.chart,
            "chart mismatch: {} vs {}",
            self.chart,
            other.chart
        );
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.chart);
        }
        Poly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.chart);
        }
        Poly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.chart);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative.
    pub fn partial(&self, index: usize) -> Poly {
        let mut out = Poly::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.degree_of(index);
            if e == 0 {
                continue;
            }
            let mut v = m.0.clone();
            v[index] = e - 1;
            out.add_term(Monomial(v), c * rat_int(e as i64));
        }
        out
    }

    /// Term-wise antiderivative in one variable. Always exists for polynomials.
    pub fn integrate(&self, index: usize) -> Poly {
        let mut out = Poly::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.degree_of(index);
            let mut v = m.0.clone();
            v[index] = e + 1;
            out.add_term(Monomial(v), c / rat_int((e + 1) as i64));
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.chart.dim(), "point dimension mismatch");
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Views the polynomial as univariate in variable `v` with polynomial
    /// coefficients (the returned polynomials have `v`-degree zero).
    pub fn as_univariate(&self, v: usize) -> Vec<Poly> {
        let d = self.degree_of(v) as usize;
        let mut coeffs = vec![Poly::zero(&self.chart); d + 1];
        for (m, c) in &self.terms {
            let e = m.degree_of(v) as usize;
            let mut stripped = m.0.clone();
            stripped[v] = 0;
            coeffs[e].add_term(Monomial(stripped), c.clone());
        }
        coeffs
    }

    pub fn from_univariate(chart: &Chart, v: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(chart);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut vexp = m.0.clone();
                vexp[v] += e as u32;
                out.add_term(Monomial(vexp), a.clone());
            }
        }
        out
    }

    /// Substitutes a polynomial for one variable (Horner in that variable).
    pub fn substitute(&self, v: usize, value: &Poly) -> Poly {
        self.assert_chart(value);
        if !self.depends_on(v) {
            return self.clone();
        }
        let coeffs = self.as_univariate(v);
        let mut acc = Poly::zero(&self.chart);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Re-centres the polynomial at `point`: returns q with
    /// q(t) = p(t + point) exactly.
    pub fn shift(&self, point: &[BigRational]) -> Poly {
        assert_eq!(point.len(), self.chart.dim());
        let mut out = self.clone();
        for (i, b) in point.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let repl = &Poly::var(&self.chart, i) + &Poly::constant(&self.chart, b.clone());
            out = out.substitute(i, &repl);
        }
        out
    }

    /// Exact division; `None` when the divisor does not divide exactly.
    pub fn try_div_exact(&self, d: &Poly) -> Option<Poly> {
        self.assert_chart(d);
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.clone();
        let mut q = Poly::zero(&self.chart);
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !r.is_zero() {
            let (rm, rc) = {
                let (m, c) = r.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            r = &r - &d.mul_monomial(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        self.try_div_exact(d)
            .expect("exact polynomial division failed")
    }

    /// Maps the polynomial onto another chart. `index_map[i]` is the position
    /// of this chart's variable `i` in the new chart; returns `None` if a
    /// variable actually used has no image.
    pub fn map_chart(&self, chart: &Chart, index_map: &[Option<usize>]) -> Option<Poly> {
        let mut out = Poly::zero(chart);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; chart.dim()];
            for (i, &exp) in m.0.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match index_map[i] {
                    Some(j) => e[j] += exp,
                    None => return None,
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Some(out)
    }

    /// Monic normalization: leading coefficient scaled to one.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = BigRational::one() / c.clone();
                self.scale(&inv)
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_chart(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_chart(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            chart: self.chart.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_chart(rhs);
        let mut out = Poly::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.assert_chart(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.assert_chart(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, rhs: &Poly) {
        *self = &*self * rhs;
    }
}

fn format_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // descending graded-lex order
        for (m, c) in self.terms.iter().rev() {
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
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_constant() {
                factors.push(format_rational(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.chart.name(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.chart.name(i), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// ---------------------------------------------------------------------------
// multivariate gcd (primitive pseudo-remainder sequence)
// ---------------------------------------------------------------------------

fn lowest_used_var(a: &Poly, b: &Poly) -> Option<usize> {
    let dim = a.chart().dim();
    (0..dim).find(|&v| a.depends_on(v) || b.depends_on(v))
}

/// Content of `p` viewed as univariate in `v`: gcd of its coefficients.
fn content_in_var(p: &Poly, v: usize) -> Poly {
    let coeffs = p.as_univariate(v);
    let mut g = Poly::zero(p.chart());
    for c in &coeffs {
        if !c.is_zero() {
            g = poly_gcd(&g, c);
            if g.is_constant() && !g.is_zero() {
                return Poly::one(p.chart());
            }
        }
    }
    g
}

/// Pseudo-remainder of univariate coefficient vectors in variable `v`.
fn pseudo_rem(f: &[Poly], g: &[Poly], chart: &Chart) -> Vec<Poly> {
    let dg = g.len() - 1;
    let lc_g = g[dg].clone();
    let mut r: Vec<Poly> = f.to_vec();
    loop {
        while r.last().map(|p| p.is_zero()).unwrap_or(false) {
            r.pop();
        }
        if r.len() <= dg {
            return r;
        }
        let dr = r.len() - 1;
        let lc_r = r[dr].clone();
        // r := lc_g * r - lc_r * x^(dr-dg) * g
        for p in r.iter_mut() {
            *p = &*p * &lc_g;
        }
        for (k, gc) in g.iter().enumerate() {
            let idx = dr - dg + k;
            r[idx] = &r[idx] - &(&lc_r * gc);
        }
        debug_assert!(r[dr].is_zero());
        r.truncate(dr);
        let _ = chart;
    }
}

fn gcd_univariate_view(pa: &[Poly], pb: &[Poly], v: usize, chart: &Chart) -> Poly {
    let mut f: Vec<Poly> = pa.to_vec();
    let mut g: Vec<Poly> = pb.to_vec();
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, chart);
        if r.is_empty() {
            let gp = Poly::from_univariate(chart, v, &g);
            let cont = content_in_var(&gp, v);
            return gp.div_exact(&cont);
        }
        let rp = Poly::from_univariate(chart, v, &r);
        let cont = content_in_var(&rp, v);
        let prim = rp.div_exact(&cont);
        f = g;
        g = prim.as_univariate(v);
    }
}

/// Multivariate gcd over the rationals, normalized monic in graded-lex order.
/// `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.chart());
    }
    let chart = a.chart().clone();
    let v = lowest_used_var(a, b).expect("nonconstant polynomials use a variable");
    let (da, db) = (a.degree_of(v), b.degree_of(v));
    if da == 0 {
        return poly_gcd(a, &content_in_var(b, v)).monic();
    }
    if db == 0 {
        return poly_gcd(&content_in_var(a, v), b).monic();
    }
    let ca = content_in_var(a, v);
    let cb = content_in_var(b, v);
    let pa = a.div_exact(&ca);
    let pb = b.div_exact(&cb);
    let cd = poly_gcd(&ca, &cb);
    let pp = gcd_univariate_view(&pa.as_univariate(v), &pb.as_univariate(v), v, &chart);
    (&cd * &pp).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart2() -> Chart {
        Chart::new(["x", "y"]).unwrap()
    }

    fn x(c: &Chart) -> Poly {
        Poly::var(c, 0)
    }

    fn y(c: &Chart) -> Poly {
        Poly::var(c, 1)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let c = chart2();
        let p = &x(&c) + &y(&c);
        let q = &x(&c) - &y(&c);
        let prod = &p * &q;
        let expect = &(&x(&c) * &x(&c)) - &(&y(&c) * &y(&c));
        assert_eq!(prod, expect);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn partial_derivative() {
        let c = chart2();
        // d/dx (x^2 y) = 2 x y
        let p = &(&x(&c) * &x(&c)) * &y(&c);
        let expect = (&x(&c) * &y(&c)).scale(&rat_int(2));
        assert_eq!(p.partial(0), expect);
    }

    #[test]
    fn exact_division() {
        let c = chart2();
        let p = &x(&c) + &y(&c);
        let q = &x(&c) - &y(&c);
        let prod = &p * &q;
        assert_eq!(prod.div_exact(&p), q);
        assert!(prod.try_div_exact(&(&p + &Poly::one(&c))).is_none());
    }

    #[test]
    fn gcd_simple() {
        let c = chart2();
        let p = &x(&c) + &y(&c);
        let a = &p * &x(&c);
        let b = &p * &y(&c);
        assert_eq!(poly_gcd(&a, &b), p.monic());
        // coprime
        assert_eq!(poly_gcd(&x(&c), &y(&c)), Poly::one(&c));
    }

    #[test]
    fn gcd_with_multiplicity() {
        let c = chart2();
        let p = &x(&c) - &y(&c);
        let a = &p.pow(3) * &x(&c);
        let b = &p.pow(2) * &(&x(&c) + &y(&c));
        assert_eq!(poly_gcd(&a, &b), p.pow(2).monic());
    }

    #[test]
    fn shift_recenters() {
        let c = chart2();
        // p = x^2, shifted at x=1: (x+1)^2
        let p = x(&c).pow(2);
        let s = p.shift(&[rat_int(1), rat_int(0)]);
        let expect = &(&x(&c) + &Poly::one(&c)) * &(&x(&c) + &Poly::one(&c));
        assert_eq!(s, expect);
    }

    #[test]
    fn display_descending_grlex() {
        let c = chart2();
        let p = &(&x(&c) * &y(&c)) + &(&x(&c) + &Poly::constant(&c, rat(-1, 2)));
        assert_eq!(p.to_string(), "x*y + x - 1/2");
    }
}
