use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::ToPrimitive;

use super::{gamma_ratio, Exponent, FracOrders};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Tolerance on the numeric branch decisions of [`FracSeries::caputo_dx`].
pub const BRANCH_TOL: f64 = 1e-12;

/// One term `coeff · x^xexp · t^texp`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Monomial<T> {
    pub coeff: T,
    pub xexp: Exponent,
    pub texp: Exponent,
}

impl<T: Scalar> Monomial<T> {
    pub fn new(coeff: T, xexp: Exponent, texp: Exponent) -> Self {
        Monomial { coeff, xexp, texp }
    }
}

/// Canonical finite sum of monomials, keyed by `(x-exponent, t-exponent)`.
///
/// Terms with equal keys are merged on insertion and exact zeros are dropped,
/// so structural equality is equality of canonical forms.
#[derive(Clone, PartialEq, Default)]
pub struct FracSeries<T> {
    terms: BTreeMap<(Exponent, Exponent), T>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Branch {
    Zero,
    Power,
}

impl<T: Scalar> FracSeries<T> {
    pub fn zero() -> Self {
        FracSeries { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, Exponent::ZERO, Exponent::ZERO)
    }

    pub fn monomial(coeff: T, xexp: Exponent, texp: Exponent) -> Self {
        let mut s = Self::zero();
        s.push(coeff, xexp, texp);
        s
    }

    /// `x^xexp`.
    pub fn x_pow(xexp: Exponent) -> Self {
        Self::monomial(T::one(), xexp, Exponent::ZERO)
    }

    /// `t^texp`.
    pub fn t_pow(texp: Exponent) -> Self {
        Self::monomial(T::one(), Exponent::ZERO, texp)
    }

    pub fn from_terms<I: IntoIterator<Item = Monomial<T>>>(terms: I) -> Self {
        let mut s = Self::zero();
        for m in terms {
            s.push(m.coeff, m.xexp, m.texp);
        }
        s
    }

    /// Adds one term, merging with an existing term of the same key.
    pub fn push(&mut self, coeff: T, xexp: Exponent, texp: Exponent) {
        if coeff == T::zero() {
            return;
        }
        let key = (xexp, texp);
        let merged = match self.terms.get(&key) {
            Some(&c) => c + coeff,
            None => coeff,
        };
        if merged == T::zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: ascending x-exponent, then t-exponent.
    pub fn iter(&self) -> impl Iterator<Item = Monomial<T>> + '_ {
        self.terms
            .iter()
            .map(|(&(xexp, texp), &coeff)| Monomial { coeff, xexp, texp })
    }

    /// Coefficient of the term with the given key, zero when absent.
    pub fn coeff(&self, xexp: Exponent, texp: Exponent) -> T {
        self.terms.get(&(xexp, texp)).copied().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<Monomial<T>> {
        self.iter().next()
    }

    /// Terms whose x-exponent is exactly `xexp`, with that x factor removed.
    pub fn x_slice(&self, xexp: Exponent) -> FracSeries<T> {
        FracSeries::from_terms(
            self.iter()
                .filter(|m| m.xexp == xexp)
                .map(|m| Monomial::new(m.coeff, Exponent::ZERO, m.texp)),
        )
    }

    pub fn max_abs_coeff(&self) -> T {
        self.terms.values().fold(T::zero(), |acc, c| acc.max(c.abs()))
    }

    pub fn scale(&self, k: T) -> Self {
        if k == T::zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for m in self.iter() {
            out.push(m.coeff * k, m.xexp, m.texp);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for m in other.iter() {
            self.push(m.coeff, m.xexp, m.texp);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for m in other.iter() {
            out.push(-m.coeff, m.xexp, m.texp);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-T::one())
    }

    /// Distributive product; exponents add exactly.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in self.iter() {
            for b in other.iter() {
                out.push(a.coeff * b.coeff, a.xexp + b.xexp, a.texp + b.texp);
            }
        }
        out
    }

    /// Multiplies every term by `x^xexp · t^texp`.
    pub fn shift(&self, xexp: Exponent, texp: Exponent) -> Self {
        FracSeries::from_terms(
            self.iter()
                .map(|m| Monomial::new(m.coeff, m.xexp + xexp, m.texp + texp)),
        )
    }

    /// Caputo partial derivative in `x` of the given order.
    ///
    /// A term `x^γ` is annihilated when `γ` is a nonnegative integer below
    /// `⌈order⌉`, or (non-integer orders) when `γ < order − 1`; otherwise its
    /// coefficient is scaled by `Γ(γ+1)/Γ(γ−order+1)`. Integer orders are the
    /// classical derivative.
    pub fn caputo_dx(&self, order: Exponent, orders: &FracOrders<T>) -> Result<Self> {
        self.caputo_dx_traced(order, orders).map(|(s, _)| s)
    }

    /// Like [`caputo_dx`](Self::caputo_dx), also returning how many terms
    /// were annihilated.
    pub fn caputo_dx_traced(&self, order: Exponent, orders: &FracOrders<T>) -> Result<(Self, usize)> {
        let nu = order.value(orders);
        if !(nu > T::zero()) {
            return Err(Error::Domain(format!(
                "Caputo order {order} evaluates to {nu}, must be positive"
            )));
        }
        let tol = T::of(BRANCH_TOL);
        let nu_round = nu.round();
        let integer_order = (nu - nu_round).abs() <= tol;
        let ceil = if integer_order { nu_round } else { nu.ceil() };

        let mut out = Self::zero();
        let mut annihilated = 0;
        for m in self.iter() {
            let gamma = m.xexp.value(orders);
            let g_round = gamma.round();
            let integer_gamma = (gamma - g_round).abs() <= tol && g_round >= T::zero();
            let branch = if integer_gamma && g_round < ceil {
                Branch::Zero
            } else if integer_order {
                Branch::Power
            } else {
                let edge = nu - T::one();
                if (gamma - edge).abs() <= tol {
                    return Err(Error::AmbiguousBranch(format!(
                        "x^({}) under order {order}: exponent {gamma} is within {BRANCH_TOL:e} of order - 1",
                        m.xexp
                    )));
                }
                if gamma < edge {
                    Branch::Zero
                } else {
                    Branch::Power
                }
            };
            match branch {
                Branch::Zero => annihilated += 1,
                Branch::Power => {
                    let factor = if integer_order {
                        falling_factorial(gamma, nu_round.as_f64() as u32)
                    } else {
                        gamma_ratio(gamma + T::one(), gamma - nu + T::one())?
                    };
                    out.push(m.coeff * factor, m.xexp - order, m.texp);
                }
            }
        }
        Ok((out, annihilated))
    }

    /// Riemann–Liouville integral in `x`: `x^γ ↦ Γ(γ+1)/Γ(γ+order+1) · x^(γ+order)`.
    pub fn rl_integral_x(&self, order: Exponent, orders: &FracOrders<T>) -> Result<Self> {
        let nu = order.value(orders);
        if nu < T::zero() || nu.is_nan() {
            return Err(Error::Domain(format!(
                "integral order {order} evaluates to {nu}, must be nonnegative"
            )));
        }
        if order.is_zero() {
            return Ok(self.clone());
        }
        let mut out = Self::zero();
        for m in self.iter() {
            let gamma = m.xexp.value(orders);
            if !(gamma > -T::one()) {
                return Err(Error::Domain(format!(
                    "cannot integrate x^({}) = x^{gamma}: exponent must exceed -1",
                    m.xexp
                )));
            }
            let factor = gamma_ratio(gamma + T::one(), gamma + nu + T::one())?;
            out.push(m.coeff * factor, m.xexp + order, m.texp);
        }
        Ok(out)
    }

    /// `n`-fold classical partial derivative in `t`.
    pub fn dt(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Ok(self.clone());
        }
        let mut out = Self::zero();
        for m in self.iter() {
            let factor = match m.texp.as_integer() {
                Some(k) if k >= 0 && k < i64::from(n) => continue,
                Some(k) if k >= 0 => falling_factorial(T::of(k as f64), n),
                _ => {
                    let b = T::of(m.texp.p.to_f64().unwrap_or(f64::NAN));
                    if !m.texp.is_pure() || !(b > T::of(f64::from(n) - 1.0)) {
                        return Err(Error::Domain(format!(
                            "d^{n}/dt^{n} of t^({}) is outside the supported class",
                            m.texp
                        )));
                    }
                    falling_factorial(b, n)
                }
            };
            out.push(m.coeff * factor, m.xexp, m.texp - Exponent::int(i64::from(n)));
        }
        Ok(out)
    }

    /// Point evaluation. Requires `x, t ≥ 0`; zero to a negative power is an
    /// error.
    pub fn eval(&self, x: T, t: T, orders: &FracOrders<T>) -> Result<T> {
        if x < T::zero() || t < T::zero() || x.is_nan() || t.is_nan() {
            return Err(Error::Domain(format!(
                "evaluation point ({x}, {t}) must be in the closed first quadrant"
            )));
        }
        let mut acc = T::zero();
        for m in self.iter() {
            acc = acc + m.coeff * pow(x, m.xexp.value(orders))? * pow(t, m.texp.value(orders))?;
        }
        Ok(acc)
    }

    /// `∫₀¹∫₀¹ s dx dt` in closed form.
    pub fn integrate_unit_square(&self, orders: &FracOrders<T>) -> Result<T> {
        let mut acc = T::zero();
        for m in self.iter() {
            let a = m.xexp.value(orders);
            let b = m.texp.value(orders);
            if !(a > -T::one()) || !(b > -T::one()) {
                return Err(Error::Domain(format!(
                    "x^({}) t^({}) is not integrable over the unit square",
                    m.xexp, m.texp
                )));
            }
            acc = acc + m.coeff / ((a + T::one()) * (b + T::one()));
        }
        Ok(acc)
    }

    /// Converts coefficients to another scalar type.
    pub fn cast<U: Scalar>(&self) -> FracSeries<U> {
        FracSeries::from_terms(
            self.iter()
                .map(|m| Monomial::new(U::of(m.coeff.as_f64()), m.xexp, m.texp)),
        )
    }
}

fn falling_factorial<T: Scalar>(b: T, n: u32) -> T {
    (0..n).fold(T::one(), |acc, i| acc * (b - T::of(f64::from(i))))
}

pub(crate) fn pow<T: Scalar>(base: T, e: T) -> Result<T> {
    if base == T::zero() {
        return if e > T::zero() {
            Ok(T::zero())
        } else if e == T::zero() {
            Ok(T::one())
        } else {
            Err(Error::Domain(format!("0 raised to negative power {e}")))
        };
    }
    if e == T::zero() {
        return Ok(T::one());
    }
    if e == e.round() && e.abs() <= T::of(64.0) {
        return Ok(base.powi(e.as_f64() as i32));
    }
    Ok(base.powf(e))
}

impl<T: Scalar> fmt::Debug for FracSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FracSeries({self})")
    }
}

/// Problem-file syntax: `0.5 * t^(2) - 1 * x^(2 + 2*a)`. Coefficients use the
/// shortest representation that parses back to the same value.
impl<T: Scalar> fmt::Display for FracSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, m) in self.iter().enumerate() {
            let c = m.coeff.as_f64();
            let mag = c.abs();
            match (i, c.is_sign_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{mag:?}")?;
            if !m.xexp.is_zero() {
                write!(f, " * x^({})", m.xexp)?;
            }
            if !m.texp.is_zero() {
                write!(f, " * t^({})", m.texp)?;
            }
        }
        Ok(())
    }
}

/// Error from [`FracSeries::from_str`], with the byte offset of the problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for SeriesParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (offset {})", self.message, self.offset)
    }
}

impl std::error::Error for SeriesParseError {}

struct SeriesParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> SeriesParser<'a> {
    fn err<R>(&self, offset: usize, message: impl Into<String>) -> Result<R, SeriesParseError> {
        Err(SeriesParseError {
            offset,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<f64, SeriesParseError> {
        let bytes = self.src.as_bytes();
        let start = self.pos;
        let digits = |p: &mut usize| {
            let s = *p;
            while *p < bytes.len() && bytes[*p].is_ascii_digit() {
                *p += 1;
            }
            *p > s
        };
        let mut p = self.pos;
        let int = digits(&mut p);
        let mut frac = false;
        if p < bytes.len() && bytes[p] == b'.' {
            p += 1;
            frac = digits(&mut p);
        }
        if !int && !frac {
            return self.err(start, "expected a number");
        }
        if p < bytes.len() && (bytes[p] == b'e' || bytes[p] == b'E') {
            let mut q = p + 1;
            if q < bytes.len() && (bytes[q] == b'+' || bytes[q] == b'-') {
                q += 1;
            }
            if digits(&mut q) {
                p = q;
            }
        }
        self.pos = p;
        match self.src[start..p].parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => self.err(start, format!("invalid number '{}'", &self.src[start..p])),
        }
    }

    fn exponent(&mut self) -> Result<Exponent, SeriesParseError> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(Exponent::int(1));
        }
        self.pos += 1;
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                let close = match self.src[open..].find(')') {
                    Some(i) => open + i,
                    None => return self.err(open, "unclosed '('"),
                };
                let inner = &self.src[open + 1..close];
                self.pos = close + 1;
                inner.parse::<Exponent>().map_err(|e| SeriesParseError {
                    offset: open + 1 + e.offset,
                    message: format!("bad exponent: {}", e.message),
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                self.src[start..self.pos]
                    .parse::<i64>()
                    .map(Exponent::int)
                    .or_else(|_| self.err(start, "exponent overflow"))
            }
            _ => self.err(self.pos, "expected '(' or an integer after '^'"),
        }
    }

    fn term(&mut self) -> Result<(f64, Exponent, Exponent), SeriesParseError> {
        let mut coeff = 1.0;
        let mut xexp = Exponent::ZERO;
        let mut texp = Exponent::ZERO;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    xexp = xexp + self.exponent()?;
                }
                Some(b't') => {
                    self.pos += 1;
                    texp = texp + self.exponent()?;
                }
                Some(c) if c.is_ascii_digit() || c == b'.' => coeff *= self.number()?,
                Some(_) => return self.err(self.pos, "expected a number, 'x' or 't'"),
                None => return self.err(self.pos, "unexpected end of series"),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((coeff, xexp, texp));
            }
        }
    }
}

/// Parses the syntax produced by [`Display`](fmt::Display). Factors within a
/// term are joined by `*`; `x` and `t` take `^(exponent)` or `^integer`.
impl<T: Scalar> FromStr for FracSeries<T> {
    type Err = SeriesParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = SeriesParser { src: s, pos: 0 };
        let mut out = FracSeries::zero();
        let mut first = true;
        loop {
            p.skip_ws();
            if p.peek().is_none() {
                if first {
                    return p.err(p.pos, "empty series");
                }
                return Ok(out);
            }
            let mut sign = 1.0;
            match p.peek() {
                Some(b'+') => p.pos += 1,
                Some(b'-') => {
                    sign = -1.0;
                    p.pos += 1;
                }
                _ if first => {}
                _ => return p.err(p.pos, "expected '+' or '-' between terms"),
            }
            first = false;
            let (c, xe, te) = p.term()?;
            out.push(T::of(sign * c), xe, te);
        }
    }
}

/// Builds `1/Γ(γ+1) · x^γ` for an exponent `γ`.
pub fn normalized_x_power<T: Scalar>(xexp: Exponent, orders: &FracOrders<T>) -> Result<FracSeries<T>> {
    let g = xexp.value(orders);
    let c = super::gamma::recip_gamma(g + T::one())?;
    Ok(FracSeries::monomial(c, xexp, Exponent::ZERO))
}

/// Shorthand for rational literals in exponent construction.
pub fn ratio(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(a: f64) -> FracOrders<f64> {
        FracOrders::new(a, 1.0).unwrap()
    }

    fn x(e: Exponent) -> FracSeries<f64> {
        FracSeries::x_pow(e)
    }

    fn t(e: Exponent) -> FracSeries<f64> {
        FracSeries::t_pow(e)
    }

    #[test]
    fn canonical_merge_drops_zeros() {
        let mut s = FracSeries::<f64>::zero();
        s.push(1.0, Exponent::int(1), Exponent::ZERO);
        s.push(-1.0, Exponent::int(1), Exponent::ZERO);
        assert!(s.is_zero());
        s.push(0.0, Exponent::int(3), Exponent::ZERO);
        assert!(s.is_zero());
    }

    #[test]
    fn caputo_classical_and_fractional() {
        let d = x(Exponent::int(2)).caputo_dx(Exponent::int(1), &o(1.0)).unwrap();
        assert_eq!(d, FracSeries::monomial(2.0, Exponent::int(1), Exponent::ZERO));

        // constants vanish for every order in (0, 1)
        for a in [0.1, 0.5, 0.9] {
            let d = FracSeries::constant(3.0).caputo_dx(Exponent::alpha(1), &o(a)).unwrap();
            assert!(d.is_zero());
        }

        let ord = o(0.9);
        let s = normalized_x_power(Exponent::alpha(2), &ord).unwrap();
        let d = s.caputo_dx(Exponent::alpha(2), &ord).unwrap();
        assert_eq!(d.len(), 1);
        assert!((d.coeff(Exponent::ZERO, Exponent::ZERO) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn caputo_branch_rules() {
        // order 1.8: x^1 is a polynomial of degree < 2, annihilated
        let ord = o(0.9);
        let d = x(Exponent::int(1)).caputo_dx(Exponent::alpha(2), &ord).unwrap();
        assert!(d.is_zero());
        // x^0.5 under order 1.8 sits below order - 1: annihilated
        let half = Exponent::new(ratio(1, 2), ratio(0, 1), ratio(0, 1));
        assert!(x(half).caputo_dx(Exponent::alpha(2), &ord).unwrap().is_zero());
        // integer order: classical derivative even for fractional powers
        let d = x(half).caputo_dx(Exponent::int(2), &ord).unwrap();
        assert!((d.coeff(half - Exponent::int(2), Exponent::ZERO) + 0.25).abs() < 1e-15);
        // boundary: x^(a - 1/5) ... choose γ = order - 1 exactly
        let edge = Exponent::alpha(2) - Exponent::int(1);
        let err = x(edge).caputo_dx(Exponent::alpha(2), &ord).unwrap_err();
        assert!(matches!(err, Error::AmbiguousBranch(_)));
        assert!(x(Exponent::int(1)).caputo_dx(Exponent::ZERO, &ord).is_err());
    }

    #[test]
    fn rl_integral_rules() {
        let ord = o(0.8);
        let one = FracSeries::<f64>::constant(1.0);
        assert_eq!(one.rl_integral_x(Exponent::int(1), &ord).unwrap(), x(Exponent::int(1)));
        let j = one.rl_integral_x(Exponent::alpha(2), &ord).unwrap();
        let expect = 1.0 / libm::tgamma(2.6);
        assert!((j.coeff(Exponent::alpha(2), Exponent::ZERO) - expect).abs() < 1e-14);

        let j = x(Exponent::int(2)).rl_integral_x(Exponent::alpha(2), &ord).unwrap();
        let key = Exponent::int(2) + Exponent::alpha(2);
        assert!((j.coeff(key, Exponent::ZERO) - 2.0 / libm::tgamma(4.6)).abs() < 1e-14);

        assert_eq!(one.rl_integral_x(Exponent::ZERO, &ord).unwrap(), one);
        let bad = x(Exponent::int(-1));
        assert!(bad.rl_integral_x(Exponent::int(1), &ord).is_err());
    }

    #[test]
    fn time_derivatives() {
        let t2 = t(Exponent::int(2));
        assert_eq!(t2.dt(2).unwrap(), FracSeries::constant(2.0));
        let mixed = t2.mul(&x(Exponent::alpha(2)));
        assert_eq!(
            mixed.dt(2).unwrap(),
            FracSeries::monomial(2.0, Exponent::alpha(2), Exponent::ZERO)
        );
        assert!(FracSeries::constant(5.0).dt(1).unwrap().is_zero());
        assert_eq!(t2.dt(0).unwrap(), t2);
        assert!(t(Exponent::alpha(1)).dt(1).is_err());
    }

    #[test]
    fn products() {
        let p = x(Exponent::int(1)).mul(&t(Exponent::int(1)));
        assert_eq!(p, FracSeries::monomial(1.0, Exponent::int(1), Exponent::int(1)));
        let a = FracSeries::constant(1.0).add(&x(Exponent::alpha(2)));
        let b = FracSeries::constant(1.0).sub(&x(Exponent::alpha(2)));
        let expect = FracSeries::constant(1.0).sub(&x(Exponent::alpha(4)));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn evaluation() {
        let s = x(Exponent::int(2)).add(&t(Exponent::int(2)));
        assert_eq!(s.eval(0.5, 0.5, &o(1.0)).unwrap(), 0.5);
        let ord = o(1.0);
        let n = normalized_x_power(Exponent::alpha(2), &ord).unwrap();
        assert!((n.eval(1.0, 0.3, &ord).unwrap() - 0.5).abs() < 1e-15);
        assert!(s.eval(-0.1, 0.5, &ord).is_err());
        let neg = x(Exponent::int(-1));
        assert!(neg.eval(0.0, 1.0, &ord).is_err());
        assert_eq!(neg.eval(2.0, 1.0, &ord).unwrap(), 0.5);
    }

    #[test]
    fn closed_form_integration() {
        let ord = o(0.75);
        assert_eq!(FracSeries::constant(1.0).integrate_unit_square(&ord).unwrap(), 1.0);
        let xt = x(Exponent::int(1)).mul(&t(Exponent::int(1)));
        assert_eq!(xt.integrate_unit_square(&ord).unwrap(), 0.25);
        assert!((x(Exponent::alpha(2)).integrate_unit_square(&ord).unwrap() - 0.4).abs() < 1e-15);
        assert!(x(Exponent::int(-1)).integrate_unit_square(&ord).is_err());
    }

    #[test]
    fn display_round_trip() {
        let s: FracSeries<f64> = "1 - 0.5 * x^(2) - 0.5*t^2 + 0.1 * x^(2 + 2*a) * t^(2)".parse().unwrap();
        assert_eq!(s.len(), 4);
        let text = s.to_string();
        assert_eq!(text.parse::<FracSeries<f64>>().unwrap(), s);
        assert_eq!("0".parse::<FracSeries<f64>>().unwrap(), FracSeries::zero());
        assert_eq!("-x".parse::<FracSeries<f64>>().unwrap(), x(Exponent::int(1)).neg());
        let e = "1 + y".parse::<FracSeries<f64>>().unwrap_err();
        assert_eq!(e.offset, 4);
        assert!("1e400".parse::<FracSeries<f64>>().is_err());
        assert!("x^(2 + c)".parse::<FracSeries<f64>>().is_err());
    }
}
