use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::functional::{gradient, hessian, Functional};
use super::poly::Polynomial;
use crate::error::Result;
use crate::linalg::{cholesky, cholesky_solve};
use crate::scalar::Scalar;

/// Default multi-start seed.
pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinimizeOptions<T> {
    /// Stop once `‖∇J‖` is at most this.
    pub grad_tol: T,
    pub max_iter: usize,
    pub random_starts: usize,
    /// Random starts are uniform in `[-range, range]^m`.
    pub range: T,
    pub seed: u64,
}

impl<T: Scalar> Default for MinimizeOptions<T> {
    fn default() -> Self {
        MinimizeOptions {
            grad_tol: T::of(1e-12),
            max_iter: 200,
            random_starts: 8,
            range: T::of(3.0),
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartKind {
    /// Coefficients read from the zeroth-order guess.
    Hpm,
    Zero,
    Random(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult<T> {
    pub params: Vec<T>,
    pub jvalue: T,
    pub grad_norm: T,
    pub iterations: usize,
    pub converged: bool,
    pub start: StartKind,
}

struct Derivatives<T> {
    grad: Vec<Polynomial<T>>,
    hess: Vec<Vec<Polynomial<T>>>,
}

impl<T: Scalar> Derivatives<T> {
    fn grad_at(&self, p: &[T]) -> Vec<T> {
        self.grad.iter().map(|g| g.eval(p)).collect()
    }

    fn hess_at(&self, p: &[T]) -> Vec<Vec<T>> {
        self.hess
            .iter()
            .map(|row| row.iter().map(|h| h.eval(p)).collect())
            .collect()
    }
}

fn norm<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt()
}

fn axpy<T: Scalar>(p: &[T], step: &[T], k: T) -> Vec<T> {
    p.iter().zip(step).map(|(&a, &b)| a + k * b).collect()
}

/// Single damped Newton descent from `start`.
pub fn descend<T: Scalar>(
    f: &Functional<T>,
    start: &[T],
    kind: StartKind,
    opts: &MinimizeOptions<T>,
) -> Result<FitResult<T>> {
    let d = Derivatives {
        grad: gradient(f),
        hess: hessian(f),
    };
    descend_with(f, &d, start, kind, opts)
}

fn descend_with<T: Scalar>(
    f: &Functional<T>,
    d: &Derivatives<T>,
    start: &[T],
    kind: StartKind,
    opts: &MinimizeOptions<T>,
) -> Result<FitResult<T>> {
    let n = start.len();
    let mut p = start.to_vec();
    let mut j = f.value(&p)?;
    let mut g = d.grad_at(&p);
    let mut gn = norm(&g);
    let mut lambda = T::of(1e-8);
    let ten = T::of(10.0);
    let slack = T::of(1e-12);
    let mut iterations = 0;

    while iterations < opts.max_iter && gn > opts.grad_tol {
        iterations += 1;
        let h = d.hess_at(&p);
        let mut moved = false;
        while lambda < T::of(1e16) {
            let mut damped = h.clone();
            for (i, row) in damped.iter_mut().enumerate() {
                row[i] = row[i] + lambda;
            }
            let candidate = match cholesky(&damped) {
                Some(l) => {
                    let neg: Vec<T> = g.iter().map(|&v| -v).collect();
                    Some(axpy(&p, &cholesky_solve(&l, &neg), T::one()))
                }
                None => None,
            };
            match candidate {
                Some(q) => {
                    let jq = f.value(&q)?;
                    let gq = d.grad_at(&q);
                    let gqn = norm(&gq);
                    let accept = jq < j || (jq <= j + slack * j.abs() && gqn < gn);
                    if accept {
                        (p, j, g, gn) = (q, jq, gq, gqn);
                        lambda = lambda / ten;
                        moved = true;
                        break;
                    }
                    lambda = lambda * ten;
                }
                None => {
                    lambda = lambda * ten;
                    let mut eta = T::one();
                    for _ in 0..60 {
                        let q = axpy(&p, &g, -eta);
                        let jq = f.value(&q)?;
                        if jq < j {
                            g = d.grad_at(&q);
                            gn = norm(&g);
                            (p, j) = (q, jq);
                            moved = true;
                            break;
                        }
                        eta = eta / T::of(2.0);
                    }
                    if moved {
                        break;
                    }
                }
            }
        }
        if !moved {
            log::debug!("descent from {kind:?} stalled at |grad| = {gn}");
            break;
        }
    }
    debug_assert_eq!(p.len(), n);
    Ok(FitResult {
        params: p,
        jvalue: j,
        grad_norm: gn,
        iterations,
        converged: gn <= opts.grad_tol,
        start: kind,
    })
}

/// `true` when `a` ranks before `b`: lower `J`, then smaller `‖params‖`.
fn ranks_before<T: Scalar>(a: &FitResult<T>, b: &FitResult<T>) -> bool {
    let tol = T::of(1e-12) * a.jvalue.abs().max(b.jvalue.abs()) + T::min_positive_value();
    if a.jvalue < b.jvalue - tol {
        return true;
    }
    if b.jvalue < a.jvalue - tol {
        return false;
    }
    norm(&a.params) < norm(&b.params)
}

/// Multi-start minimization of `J` from the HPM start (when given), the
/// zero vector and `opts.random_starts` seeded random points. Returns the
/// best converged descent, or the best overall with `converged = false`.
pub fn minimize<T: Scalar>(
    f: &Functional<T>,
    hpm_start: Option<&[T]>,
    opts: &MinimizeOptions<T>,
) -> Result<FitResult<T>> {
    let n = f.nvars();
    let d = Derivatives {
        grad: gradient(f),
        hess: hessian(f),
    };
    let mut starts: Vec<(StartKind, Vec<T>)> = Vec::new();
    if let Some(s) = hpm_start {
        assert_eq!(s.len(), n, "start vector length");
        starts.push((StartKind::Hpm, s.to_vec()));
    }
    starts.push((StartKind::Zero, vec![T::zero(); n]));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let r = opts.range.as_f64();
    for k in 0..opts.random_starts {
        let v = (0..n).map(|_| T::of(rng.gen_range(-r..=r))).collect();
        starts.push((StartKind::Random(k), v));
    }

    let mut best: Option<FitResult<T>> = None;
    for (kind, s) in starts {
        let fit = descend_with(f, &d, &s, kind, opts)?;
        log::debug!(
            "start {kind:?}: J = {:e}, |grad| = {:e}, {} iterations",
            fit.jvalue.as_f64(),
            fit.grad_norm.as_f64(),
            fit.iterations
        );
        best = Some(match best {
            None => fit,
            Some(b) => {
                let wins = match (fit.converged, b.converged) {
                    (true, false) => true,
                    (false, true) => false,
                    _ => ranks_before(&fit, &b),
                };
                if wins {
                    fit
                } else {
                    b
                }
            }
        });
    }
    Ok(best.expect("at least the zero start"))
}
