//! End-to-end fit: zeroth-order guess, basis extraction and certification,
//! initial-condition elimination, exact functional assembly, minimization.

use crate::error::{Error, Result};
use crate::fracalg::{FracSeries, NumericSeries};
use crate::hpm::{bootstrap, certify, extract_basis, start_coefficients, BasisSet, InitialGuess};
use crate::lsq::{
    apply_ics, assemble_functional, build_residual, classify_epsilon, minimize, Ansatz, EpsilonClass, FitResult,
    Functional, MinimizeOptions, ParamPoly,
};
use crate::problems::{ProblemSpec, Unknown};
use crate::scalar::Scalar;
use crate::wronskian::{WronskianReport, DEFAULT_THRESHOLD};

#[derive(Clone, Debug)]
pub struct SolveOptions<T> {
    pub minimize: MinimizeOptions<T>,
    /// Wronskian point; the problem's witness when `None`.
    pub witness: Option<(T, T)>,
    pub threshold: T,
    /// Run the ε-classification at this tolerance.
    pub epsilon: Option<T>,
    pub grid: usize,
}

impl<T: Scalar> Default for SolveOptions<T> {
    fn default() -> Self {
        SolveOptions {
            minimize: MinimizeOptions::default(),
            witness: None,
            threshold: T::of(DEFAULT_THRESHOLD),
            epsilon: None,
            grid: 101,
        }
    }
}

/// Per-unknown data of a solved problem.
#[derive(Clone, Debug)]
pub struct UnknownFit<T: Scalar> {
    pub guess: InitialGuess<T>,
    pub wronskian: WronskianReport<T>,
    pub ansatz: Ansatz<T>,
    /// Free coefficients read from the guess.
    pub hpm_start: Vec<T>,
    /// Full coefficient vector at the optimum.
    pub coefficients: Vec<T>,
    pub series: FracSeries<T>,
}

impl<T: Scalar> UnknownFit<T> {
    pub fn unknown(&self) -> Unknown {
        self.ansatz.unknown
    }

    pub fn basis(&self) -> &BasisSet<T> {
        &self.ansatz.basis
    }
}

#[derive(Clone, Debug)]
pub struct Solution<T: Scalar> {
    pub problem: ProblemSpec<T>,
    pub unknowns: Vec<UnknownFit<T>>,
    pub residuals: Vec<ParamPoly<T>>,
    pub functional: Functional<T>,
    pub fit: FitResult<T>,
    /// `J` at the HPM start vector.
    pub j_hpm: T,
    /// `Σ ∬ R²` of the unmodified zeroth-order guesses.
    pub j_guess: T,
    pub classification: Option<EpsilonClass<T>>,
}

impl<T: Scalar> Solution<T> {
    pub fn hpm_start(&self) -> Vec<T> {
        self.unknowns.iter().flat_map(|u| u.hpm_start.iter().copied()).collect()
    }

    pub fn param_names(&self) -> Vec<String> {
        self.unknowns.iter().flat_map(|u| u.ansatz.param_names()).collect()
    }

    /// Fitted series, `u` first.
    pub fn series(&self) -> Vec<&FracSeries<T>> {
        self.unknowns.iter().map(|u| &u.series).collect()
    }

    /// Values of the fitted unknowns at `(x, t)`.
    pub fn eval(&self, x: T, t: T) -> Result<Vec<T>> {
        self.unknowns
            .iter()
            .map(|u| u.series.eval(x, t, &self.problem.orders))
            .collect()
    }
}

pub fn solve<T: Scalar>(problem: &ProblemSpec<T>, opts: &SolveOptions<T>) -> Result<Solution<T>> {
    let diagnostics = problem.validate();
    if !diagnostics.is_empty() {
        return Err(Error::Invalid(diagnostics));
    }
    let orders = problem.orders;
    let point = opts.witness.unwrap_or(problem.witness);

    let mut staged = Vec::new();
    for (i, e) in problem.equations.iter().enumerate() {
        let guess = bootstrap(problem, i)?;
        let basis = extract_basis(&guess, &orders, e.basis_order)?;
        let wronskian = certify(&basis, e.unknown, &orders, point, opts.threshold)?;
        let ansatz = apply_ics(&Ansatz::new(e.unknown, basis), e)?;
        let start = start_coefficients(&guess, &ansatz.basis);
        let hpm_start: Vec<T> = ansatz.free.iter().map(|&k| start[k]).collect();
        log::info!(
            "{}: basis [{}], fixed {:?}",
            e.unknown,
            ansatz.basis.labels.join(", "),
            ansatz.fixed
        );
        staged.push((guess, wronskian, ansatz, hpm_start));
    }

    let ansatze: Vec<_> = staged.iter().map(|s| s.2.clone()).collect();
    let residuals = build_residual(problem, &ansatze)?;
    let functional = assemble_functional(&residuals, &orders)?;
    let start: Vec<T> = staged.iter().flat_map(|s| s.3.iter().copied()).collect();
    let j_hpm = functional.value(&start)?;
    let fit = minimize(&functional, Some(&start), &opts.minimize)?;
    log::info!(
        "J_hpm = {:e}, J = {:e}, |grad| = {:e}",
        j_hpm.as_f64(),
        fit.jvalue.as_f64(),
        fit.grad_norm.as_f64()
    );

    let guesses: Vec<FracSeries<T>> = staged.iter().map(|s| s.0.series.clone()).collect();
    let mut j_guess = T::zero();
    for i in 0..problem.equations.len() {
        let r = problem.residual(i, &guesses)?;
        j_guess = j_guess + NumericSeries::collapse(&r, &orders).integral_of_square()?;
    }

    let mut unknowns = Vec::new();
    let mut offset = 0;
    for (guess, wronskian, ansatz, hpm_start) in staged {
        let m = ansatz.free.len();
        let vals = &fit.params[offset..offset + m];
        offset += m;
        unknowns.push(UnknownFit {
            coefficients: ansatz.coefficients(vals),
            series: ansatz.reconstruct(vals),
            guess,
            wronskian,
            ansatz,
            hpm_start,
        });
    }

    let classification = match opts.epsilon {
        Some(eps) => Some(classify_epsilon(&residuals, &fit.params, &orders, eps, opts.grid)?),
        None => None,
    };

    Ok(Solution {
        problem: problem.clone(),
        unknowns,
        residuals,
        functional,
        fit,
        j_hpm,
        j_guess,
        classification,
    })
}
