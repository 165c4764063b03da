//! Text format for problem declarations.
//!
//! ```text
//! [problem]
//! name = example1
//! witness = 0.2, 0.5
//! basis.u = x-first
//!
//! [orders]
//! alpha = 0.9
//! beta = 1.0
//!
//! [forcing.u]
//! f = 1.0 - 0.5 * x^(2) - 0.5 * t^(2)
//!
//! [nonlinearity]
//! u = -1.0 * u*u_tt
//!
//! [ic.u]
//! 0 = 0.5 * t^(2)
//! 1 = 0
//!
//! [exact]
//! u = 0.5 * x^(2) + 0.5 * t^(2)
//! ```
//!
//! Series terms are `coeff * x^(exponent) * t^(exponent)` with exponents
//! affine in `a` (α) and `b` (β), e.g. `x^(2 + 2*a)`. `#` starts a comment.
//! Keys under `[ic.w]` are x-derivative orders at `x = 0`; keys under
//! `[nonlinearity]` name the equation the term belongs to, and the tag is
//! one of `u*u_tt`, `v*u_tt`, `u*v_tt`, `v*v_tt`. Basis orders are
//! `x-first` or `t-first`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::fracalg::{FracOrders, FracSeries};
use crate::problems::{EquationSpec, InitialCondition, NonlinearTerm, ProblemSpec, Product, Unknown};
use crate::scalar::Scalar;
use crate::wronskian::FunctionOrder;

fn err<R>(line: usize, column: usize, message: impl Into<String>) -> Result<R> {
    Err(Error::Parse {
        line,
        column,
        message: message.into(),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Problem,
    Orders,
    Forcing(Unknown),
    Nonlinearity,
    Ic(Unknown),
    Exact,
}

fn section(name: &str) -> Option<Section> {
    Some(match name {
        "problem" => Section::Problem,
        "orders" => Section::Orders,
        "nonlinearity" => Section::Nonlinearity,
        "exact" => Section::Exact,
        _ => {
            let (kind, w) = name.split_once('.')?;
            let u = Unknown::from_name(w)?;
            match kind {
                "forcing" => Section::Forcing(u),
                "ic" => Section::Ic(u),
                _ => return None,
            }
        }
    })
}

fn order_name(o: FunctionOrder) -> &'static str {
    match o {
        FunctionOrder::XFirst => "x-first",
        FunctionOrder::TFirst => "t-first",
    }
}

#[derive(Default)]
struct Draft<T: Scalar> {
    forcing: Option<FracSeries<T>>,
    nonlinearity: Vec<NonlinearTerm<T>>,
    ics: Vec<InitialCondition<T>>,
    basis: Option<FunctionOrder>,
    exact: Option<FracSeries<T>>,
}

impl<T: Scalar> Draft<T> {
    fn touched(&self) -> bool {
        self.forcing.is_some()
            || !self.nonlinearity.is_empty()
            || !self.ics.is_empty()
            || self.basis.is_some()
            || self.exact.is_some()
    }
}

struct Value<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Value<'_> {
    fn real<T: Scalar>(&self) -> Result<T> {
        match self.text.parse::<f64>() {
            Ok(v) => Ok(T::of(v)),
            Err(_) => err(
                self.line,
                self.column,
                format!("expected a number, found '{}'", self.text),
            ),
        }
    }

    fn series<T: Scalar>(&self) -> Result<FracSeries<T>> {
        self.text
            .parse()
            .or_else(|e: crate::fracalg::SeriesParseError| err(self.line, self.column + e.offset, e.message))
    }

    fn term<T: Scalar>(&self) -> Result<NonlinearTerm<T>> {
        let pieces: Vec<&str> = self.text.split('*').map(str::trim).collect();
        let (coeff, first, second) = match pieces[..] {
            [c, a, b] => (self.real_of(c)?, a, b),
            [a, b] => match a.strip_prefix('-') {
                Some(rest) => (-1.0, rest.trim(), b),
                None => (1.0, a.strip_prefix('+').unwrap_or(a).trim(), b),
            },
            _ => {
                return err(
                    self.line,
                    self.column,
                    format!("expected 'coeff * a*b_tt', found '{}'", self.text),
                )
            }
        };
        let tag = format!("{first}*{second}");
        let product = tag.parse::<Product>().or_else(|m| err(self.line, self.column, m))?;
        Ok(NonlinearTerm {
            coeff: T::of(coeff),
            product,
        })
    }

    fn real_of(&self, s: &str) -> Result<f64> {
        s.parse()
            .or_else(|_| err(self.line, self.column, format!("expected a number, found '{s}'")))
    }
}

/// Parses a problem declaration and validates it.
pub fn parse_problem<T: Scalar>(src: &str) -> Result<ProblemSpec<T>> {
    let mut name = None;
    let mut witness = None;
    let (mut alpha, mut beta) = (None, None);
    let mut drafts: [Draft<T>; 2] = [Draft::default(), Draft::default()];
    let mut current = None;

    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len() + 1;
        if let Some(inner) = trimmed.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return err(line, indent, "unterminated section header");
            };
            current = match section(inner.trim()) {
                Some(s) => Some(s),
                None => return err(line, indent + 1, format!("unknown section '{}'", inner.trim())),
            };
            continue;
        }
        let Some(eq) = body.find('=') else {
            return err(line, indent, "expected 'key = value'");
        };
        let key = body[..eq].trim();
        let rhs = &body[eq + 1..];
        let value = Value {
            text: rhs.trim(),
            line,
            column: eq + 2 + (rhs.len() - rhs.trim_start().len()),
        };
        let Some(sec) = current else {
            return err(line, indent, "key outside of any section");
        };
        let unknown_key = || err(line, indent, format!("unknown key '{key}'"));
        match sec {
            Section::Problem => match key {
                "name" => name = Some(value.text.to_string()),
                "witness" => {
                    let parts: Vec<&str> = value.text.split(',').map(str::trim).collect();
                    let [x, t] = parts[..] else {
                        return err(line, value.column, "witness must be 'x, t'");
                    };
                    witness = Some((T::of(value.real_of(x)?), T::of(value.real_of(t)?)));
                }
                _ => {
                    let Some(u) = key.strip_prefix("basis.").and_then(Unknown::from_name) else {
                        return unknown_key();
                    };
                    drafts[u.index()].basis = Some(match value.text {
                        "x-first" => FunctionOrder::XFirst,
                        "t-first" => FunctionOrder::TFirst,
                        other => return err(line, value.column, format!("unknown basis order '{other}'")),
                    });
                }
            },
            Section::Orders => match key {
                "alpha" => alpha = Some(value.real()?),
                "beta" => beta = Some(value.real()?),
                _ => return unknown_key(),
            },
            Section::Forcing(u) => match key {
                "f" => drafts[u.index()].forcing = Some(value.series()?),
                _ => return unknown_key(),
            },
            Section::Nonlinearity => match Unknown::from_name(key) {
                Some(u) => drafts[u.index()].nonlinearity.push(value.term()?),
                None => return unknown_key(),
            },
            Section::Ic(u) => match key.parse::<u32>() {
                Ok(order) => drafts[u.index()].ics.push(InitialCondition {
                    order,
                    series: value.series()?,
                }),
                Err(_) => {
                    return err(
                        line,
                        indent,
                        format!("initial-condition key must be a derivative order, found '{key}'"),
                    )
                }
            },
            Section::Exact => match Unknown::from_name(key) {
                Some(u) => drafts[u.index()].exact = Some(value.series()?),
                None => return unknown_key(),
            },
        }
    }

    let last = src.lines().count().max(1);
    let orders = FracOrders::unchecked(
        alpha.ok_or_else(|| Error::Parse {
            line: last,
            column: 1,
            message: "missing 'alpha' in [orders]".into(),
        })?,
        beta.unwrap_or_else(T::one),
    );
    let mut equations = Vec::new();
    for (u, d) in [Unknown::U, Unknown::V].into_iter().zip(drafts) {
        if !d.touched() {
            continue;
        }
        let Some(forcing) = d.forcing else {
            return err(last, 1, format!("missing [forcing.{u}]"));
        };
        equations.push(EquationSpec {
            unknown: u,
            forcing,
            nonlinearity: d.nonlinearity,
            ics: d.ics,
            basis_order: d.basis.unwrap_or(FunctionOrder::XFirst),
            exact: d.exact,
        });
    }
    let spec = ProblemSpec {
        name: name.unwrap_or_else(|| "problem".into()),
        orders,
        equations,
        witness: witness.unwrap_or((T::of(0.2), T::of(0.5))),
    };
    let diagnostics = spec.validate();
    if diagnostics.is_empty() {
        Ok(spec)
    } else {
        Err(Error::Invalid(diagnostics))
    }
}

/// Writes `spec` in the format read by [`parse_problem`].
pub fn write_problem<T: Scalar>(spec: &ProblemSpec<T>) -> String {
    let mut s = String::new();
    let num = |v: T| format!("{:?}", v.as_f64());
    let _ = writeln!(s, "[problem]\nname = {}", spec.name);
    let _ = writeln!(s, "witness = {}, {}", num(spec.witness.0), num(spec.witness.1));
    for e in &spec.equations {
        let _ = writeln!(s, "basis.{} = {}", e.unknown, order_name(e.basis_order));
    }
    let _ = writeln!(
        s,
        "\n[orders]\nalpha = {}\nbeta = {}",
        num(spec.orders.alpha),
        num(spec.orders.beta)
    );
    for e in &spec.equations {
        let _ = writeln!(s, "\n[forcing.{}]\nf = {}", e.unknown, e.forcing);
    }
    if spec.equations.iter().any(|e| !e.nonlinearity.is_empty()) {
        let _ = writeln!(s, "\n[nonlinearity]");
        for e in &spec.equations {
            for term in &e.nonlinearity {
                let _ = writeln!(s, "{} = {} * {}", e.unknown, num(term.coeff), term.product);
            }
        }
    }
    for e in &spec.equations {
        let _ = writeln!(s, "\n[ic.{}]", e.unknown);
        for ic in &e.ics {
            let _ = writeln!(s, "{} = {}", ic.order, ic.series);
        }
    }
    if spec.equations.iter().any(|e| e.exact.is_some()) {
        let _ = writeln!(s, "\n[exact]");
        for e in &spec.equations {
            if let Some(x) = &e.exact {
                let _ = writeln!(s, "{} = {}", e.unknown, x);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::example;

    #[test]
    fn builtins_round_trip() {
        for n in 1..=3 {
            let p = example::<f64>(n)
                .unwrap()
                .with_orders(FracOrders::new(0.93, 0.7).unwrap());
            let text = write_problem(&p);
            let back: ProblemSpec<f64> = parse_problem(&text).unwrap();
            assert_eq!(back, p, "{text}");
        }
    }

    #[test]
    fn zero_alpha_fails_validation() {
        let text = write_problem(&example::<f64>(1).unwrap()).replace("alpha = 1.0", "alpha = 0.0");
        match parse_problem::<f64>(&text) {
            Err(Error::Invalid(d)) => assert!(d[0].contains("alpha")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_tag_is_named() {
        let text = write_problem(&example::<f64>(1).unwrap()).replace("u*u_tt", "u*w_tt");
        match parse_problem::<f64>(&text) {
            Err(Error::Parse { message, line, .. }) => {
                assert!(message.contains("u*w_tt"));
                assert_eq!(text.lines().nth(line - 1).unwrap(), "u = -1.0 * u*w_tt");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hand_written_file() {
        let src = "\
# single equation
[orders]
alpha = 0.9

[forcing.u]
f = 2 - 2*x^2 - 2*t^2   # trailing comment

[nonlinearity]
u = - u*u_tt

[ic.u]
0 = t^2
";
        let p: ProblemSpec<f64> = parse_problem(src).unwrap();
        assert_eq!(p.equations.len(), 1);
        assert_eq!(p.equations[0].nonlinearity[0].coeff, -1.0);
        assert_eq!(p.orders.beta, 1.0);
        let e2 = example::<f64>(2).unwrap();
        assert_eq!(p.equations[0].forcing, e2.equations[0].forcing);
    }

    #[test]
    fn error_positions() {
        let cases = [
            ("[orders]\nalpha = x\n", 2, 9),
            ("[orders]\nalpha = 1\n[forcing.u]\nf = 1 + x^(c)\n", 4, 12),
            ("[weird]\n", 1, 2),
            ("alpha = 1\n", 1, 1),
            ("[orders]\n  gamma = 1\n", 2, 3),
        ];
        for (src, line, column) in cases {
            match parse_problem::<f64>(src) {
                Err(Error::Parse {
                    line: l,
                    column: c,
                    message,
                }) => {
                    assert_eq!((l, c), (line, column), "{src:?}: {message}")
                }
                other => panic!("{src:?}: {other:?}"),
            }
        }
    }
}
