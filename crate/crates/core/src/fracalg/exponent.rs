use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FracOrders;
use crate::scalar::Scalar;

/// Exact affine exponent `p + q·α + r·β` with rational coefficients.
///
/// Equality and ordering are exact, so two monomials merge only when their
/// exponents are the same affine form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent {
    pub p: Rational64,
    pub q: Rational64,
    pub r: Rational64,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent {
        p: Rational64::new_raw(0, 1),
        q: Rational64::new_raw(0, 1),
        r: Rational64::new_raw(0, 1),
    };

    pub fn new(p: Rational64, q: Rational64, r: Rational64) -> Self {
        Exponent { p, q, r }
    }

    /// Pure integer exponent.
    pub fn int(n: i64) -> Self {
        Exponent {
            p: Rational64::from_integer(n),
            ..Self::ZERO
        }
    }

    /// `k·α`.
    pub fn alpha(k: i64) -> Self {
        Exponent {
            q: Rational64::from_integer(k),
            ..Self::ZERO
        }
    }

    /// `k·β`.
    pub fn beta(k: i64) -> Self {
        Exponent {
            r: Rational64::from_integer(k),
            ..Self::ZERO
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }

    /// True when the exponent does not depend on the fractional orders.
    pub fn is_pure(&self) -> bool {
        self.q.is_zero() && self.r.is_zero()
    }

    /// The exponent as an exact integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        (self.is_pure() && self.p.is_integer()).then(|| self.p.to_integer())
    }

    pub fn value<T: Scalar>(&self, orders: &FracOrders<T>) -> T {
        rat::<T>(self.p) + rat::<T>(self.q) * orders.alpha + rat::<T>(self.r) * orders.beta
    }

    pub fn scale(&self, k: Rational64) -> Self {
        Exponent {
            p: self.p * k,
            q: self.q * k,
            r: self.r * k,
        }
    }
}

fn rat<T: Scalar>(x: Rational64) -> T {
    T::of(x.to_f64().expect("rational fits in f64"))
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, o: Exponent) -> Exponent {
        Exponent {
            p: self.p + o.p,
            q: self.q + o.q,
            r: self.r + o.r,
        }
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, o: Exponent) -> Exponent {
        self + (-o)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent {
            p: -self.p,
            q: -self.q,
            r: -self.r,
        }
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: Rational64, first: bool, symbol: Option<char>) -> fmt::Result {
    let mag = c.abs();
    if first {
        if c.is_negative() {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if c.is_negative() { " - " } else { " + " })?;
    }
    match symbol {
        Some(s) if mag.is_one() => write!(f, "{s}"),
        Some(s) => write!(f, "{mag}*{s}"),
        None => write!(f, "{mag}"),
    }
}

/// Renders as e.g. `2 + 2*a`, `-1/2*b`, `0`; `a` is α and `b` is β.
impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (c, sym) in [(self.p, None), (self.q, Some('a')), (self.r, Some('b'))] {
            if !c.is_zero() {
                write_coeff(f, c, first, sym)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Exponent({self})")
    }
}

/// Error from [`Exponent::from_str`], with the byte offset of the problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ExponentParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (offset {})", self.message, self.offset)
    }
}

impl std::error::Error for ExponentParseError {}

/// Accepts sums of terms `c`, `c*a`, `c*b`, `a`, `b` where `c` is an integer
/// or a fraction `n/d`, e.g. `2 + 2*a`, `-3/2*b + 1`.
impl FromStr for Exponent {
    type Err = ExponentParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |offset: usize, message: &str| ExponentParseError {
            offset,
            message: message.to_string(),
        };
        let bytes = s.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut out = Exponent::ZERO;
        let mut first = true;
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                if first {
                    return Err(err(pos, "empty exponent"));
                }
                break;
            }
            let mut sign = Rational64::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(err(pos, "expected '+' or '-'"));
            }
            first = false;

            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff = None;
            if pos > start {
                let num: i64 = s[start..pos].parse().map_err(|_| err(start, "integer overflow"))?;
                let mut c = Rational64::from_integer(num);
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'/' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let dstart = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == dstart {
                        return Err(err(pos, "expected denominator"));
                    }
                    let den: i64 = s[dstart..pos].parse().map_err(|_| err(dstart, "integer overflow"))?;
                    if den == 0 {
                        return Err(err(dstart, "zero denominator"));
                    }
                    c = Rational64::new(num, den);
                }
                coeff = Some(c);
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                    skip_ws(&mut pos);
                } else {
                    out.p += sign * c;
                    continue;
                }
            }
            match bytes.get(pos) {
                Some(b'a') => out.q += sign * coeff.unwrap_or_else(Rational64::one),
                Some(b'b') => out.r += sign * coeff.unwrap_or_else(Rational64::one),
                _ => return Err(err(pos, "expected a number, 'a' or 'b'")),
            }
            pos += 1;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_arithmetic_is_exact() {
        let e = Exponent::int(2) + Exponent::alpha(2);
        assert_eq!(e - Exponent::alpha(2), Exponent::int(2));
        assert_eq!(e.scale(Rational64::new(1, 2)), Exponent::int(1) + Exponent::alpha(1));
        assert_ne!(Exponent::alpha(2), Exponent::int(2));
    }

    #[test]
    fn value_resolves_orders() {
        let o = FracOrders::new(0.75, 0.5).unwrap();
        let e = Exponent::int(2) + Exponent::alpha(2) - Exponent::beta(1);
        assert_eq!(e.value(&o), 3.0);
    }

    #[test]
    fn display_and_parse() {
        let cases = [
            ("0", Exponent::ZERO),
            ("2", Exponent::int(2)),
            ("2 + 2*a", Exponent::int(2) + Exponent::alpha(2)),
            ("-1/2*b", Exponent::beta(-1).scale(Rational64::new(1, 2))),
            ("a - b", Exponent::alpha(1) - Exponent::beta(1)),
        ];
        for (text, e) in cases {
            assert_eq!(e.to_string(), text);
            assert_eq!(text.parse::<Exponent>().unwrap(), e);
        }
        assert_eq!("3/2 *a+1".parse::<Exponent>().unwrap().to_string(), "1 + 3/2*a");
        assert!("2 + c".parse::<Exponent>().is_err());
        assert!("".parse::<Exponent>().is_err());
        assert!("1/0".parse::<Exponent>().is_err());
    }
}
