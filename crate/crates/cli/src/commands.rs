use std::fs;
use std::io::Write;
use std::path::Path;

use glshp::hpm::{bootstrap, extract_basis};
use glshp::problems::Unknown;
use glshp::wronskian::{wronskian_at, DEFAULT_THRESHOLD};
use glshp::{example, parse_problem, solve, Exponent, FracOrders64, ProblemSpec64, SolveOptions64};

use crate::args::{CompareArgs, Format, ProblemArgs, SolveArgs, WronskianArgs};
use crate::report::{self, SolveReport, WronskianOutput};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;
pub const EXIT_NOT_CERTIFIED: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug)]
pub struct Failure(pub String);

impl From<glshp::Error> for Failure {
    fn from(e: glshp::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

struct Loaded {
    spec: ProblemSpec64,
    builtin: bool,
}

fn load(args: &ProblemArgs, alpha_override: Option<f64>) -> Result<Loaded, Failure> {
    let (mut spec, builtin) = match (&args.source.example, &args.source.problem) {
        (Some(n), _) => (example(*n).expect("range checked by clap"), true),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            (parse_problem(&text)?, false)
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let alpha = alpha_override
        .or(args.alpha)
        .unwrap_or(if builtin { 1.0 } else { spec.orders.alpha });
    let beta = args.beta.unwrap_or(if builtin { alpha } else { spec.orders.beta });
    spec.orders = FracOrders64::new(alpha, beta)?;
    Ok(Loaded { spec, builtin })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn point(x: Option<f64>, t: Option<f64>) -> Result<Option<(f64, f64)>, Failure> {
    match (x, t) {
        (Some(x), Some(t)) => {
            let unit = |v: f64| (0.0..=1.0).contains(&v);
            if !unit(x) || !unit(t) {
                return Err(Failure(format!("point ({x}, {t}) lies outside the unit square")));
            }
            Ok(Some((x, t)))
        }
        _ => Ok(None),
    }
}

fn closed_form_key(builtin: bool, spec: &ProblemSpec64, u: Unknown) -> Option<(f64, glshp::wronskian::FunctionOrder)> {
    if !builtin {
        return None;
    }
    let e = spec.equation(u)?;
    let order = match u {
        Unknown::U => spec.orders.alpha,
        Unknown::V => spec.orders.beta,
    };
    Some((order, e.basis_order))
}

pub fn cmd_solve(args: &SolveArgs) -> Outcome {
    let Loaded { spec, builtin } = load(&args.problem, None)?;
    if let Some(eps) = args.epsilon {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Failure("--epsilon must be positive and finite".into()));
        }
    }
    let mut opts = SolveOptions64::default();
    opts.minimize.seed = args.seed;
    opts.witness = point(args.x, args.t)?;
    opts.epsilon = args.epsilon;
    let sol = solve(&spec, &opts)?;

    let format = args
        .format
        .unwrap_or(if args.grid.is_some() { Format::Csv } else { Format::Json });
    let text = match format {
        Format::Csv => {
            let grid = args.grid.unwrap_or(crate::args::Grid { nx: 101, nt: 101 });
            report::csv(&report::grid_columns(&sol), &report::grid_rows(&sol, grid)?)
        }
        Format::Json => {
            let grid = match args.grid {
                Some(g) => Some(report::GridReport {
                    columns: report::grid_columns(&sol),
                    rows: report::grid_rows(&sol, g)?,
                }),
                None => None,
            };
            let r = SolveReport {
                problem: spec.name.clone(),
                alpha: spec.orders.alpha,
                beta: spec.orders.beta,
                converged: sol.fit.converged,
                coefficients: report::coefficients(&sol),
                jvalue: sol.fit.jvalue,
                j_hpm: sol.j_hpm,
                j_guess: sol.j_guess,
                grad_norm: sol.fit.grad_norm,
                iterations: sol.fit.iterations,
                start: report::start_name(sol.fit.start),
                wronskian: sol
                    .unknowns
                    .iter()
                    .map(|u| {
                        report::certificate(
                            u.unknown().name(),
                            &u.wronskian,
                            closed_form_key(builtin, &spec, u.unknown()),
                        )
                    })
                    .collect(),
                epsilon: sol.classification.as_ref().map(report::epsilon),
                grid,
            };
            let mut s = serde_json::to_string_pretty(&r)?;
            s.push('\n');
            s
        }
    };
    emit(args.out.as_deref(), &text)?;
    if sol.fit.converged {
        Ok(EXIT_OK)
    } else {
        log::error!(
            "no start reached |grad J| <= {:e}; best |grad J| = {:e}",
            opts.minimize.grad_tol,
            sol.fit.grad_norm
        );
        Ok(EXIT_NO_CONVERGENCE)
    }
}

pub fn cmd_wronskian(args: &WronskianArgs) -> Outcome {
    let Loaded { spec, builtin } = load(&args.problem, None)?;
    let diagnostics = spec.validate();
    if !diagnostics.is_empty() {
        return Err(glshp::Error::Invalid(diagnostics).into());
    }
    let (x, t) = point(args.x, args.t)?.unwrap_or(spec.witness);
    let mut certificates = Vec::new();
    for (i, e) in spec.equations.iter().enumerate() {
        let basis = extract_basis(&bootstrap(&spec, i)?, &spec.orders, e.basis_order)?;
        let order = match e.unknown {
            Unknown::U => Exponent::alpha(1),
            Unknown::V => Exponent::beta(1),
        };
        let r = wronskian_at(&basis.functions, x, t, order, &spec.orders, DEFAULT_THRESHOLD)?;
        certificates.push(report::certificate(
            e.unknown.name(),
            &r,
            closed_form_key(builtin, &spec, e.unknown),
        ));
    }
    let all = certificates.iter().all(|c| c.independent);
    let out = WronskianOutput {
        problem: spec.name.clone(),
        alpha: spec.orders.alpha,
        beta: spec.orders.beta,
        certificates,
    };
    let mut s = serde_json::to_string_pretty(&out)?;
    s.push('\n');
    emit(args.out.as_deref(), &s)?;
    if all {
        Ok(EXIT_OK)
    } else {
        log::error!("basis independence is not certified at ({x}, {t})");
        Ok(EXIT_NOT_CERTIFIED)
    }
}

pub fn cmd_compare(args: &CompareArgs) -> Outcome {
    let mut rows = Vec::new();
    let mut breach = false;
    let mut unconverged = false;
    for alpha in args.sweep.values() {
        let Loaded { spec, .. } = load(&args.problem, Some(alpha))?;
        let mut opts = SolveOptions64::default();
        opts.minimize.seed = args.seed;
        let sol = solve(&spec, &opts)?;
        let (jh, jg) = (sol.j_hpm, sol.fit.jvalue);
        let ratio = if jh > 0.0 { jg / jh } else { 0.0 };
        if jg > jh + 1e-12 {
            log::error!("alpha = {alpha}: fitted J = {jg:e} exceeds J at the HPM start = {jh:e}");
            breach = true;
        }
        if !sol.fit.converged {
            log::warn!("alpha = {alpha}: minimization did not converge");
            unconverged = true;
        }
        rows.push(vec![alpha, jh, jg, ratio]);
    }
    let cols: Vec<String> = ["alpha", "J_hpm", "J_glshp", "ratio"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    emit(args.out.as_deref(), &report::csv(&cols, &rows))?;
    Ok(if breach {
        EXIT_INVARIANT
    } else if unconverged {
        EXIT_NO_CONVERGENCE
    } else {
        EXIT_OK
    })
}
