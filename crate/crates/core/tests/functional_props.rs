use glshp::fracalg::NumericSeries;
use glshp::lsq::{classify_epsilon, gradient, quadrature_oracle};
use glshp::{example, solve, FracOrders64, Solution64, SolveOptions64};
use proptest::prelude::*;

fn solved(n: u32, alpha: f64, beta: f64) -> Solution64 {
    let p = example(n).unwrap().with_orders(FracOrders64::new(alpha, beta).unwrap());
    solve(&p, &SolveOptions64::default()).unwrap()
}

fn params(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..=3.0, n)
}

fn nvars(n: u32) -> usize {
    if n == 3 {
        4
    } else {
        2
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn exact_functional_matches_quadrature(n in 1u32..=3, a in 0.7f64..=1.0, b in 0.7f64..=1.0, p in params(4)) {
        let s = solved(n, a, b);
        let p = &p[..nvars(n)];
        let exact = s.functional.poly_value(p);
        let quad = quadrature_oracle(&s.residuals, p, &s.problem.orders, 64).unwrap();
        prop_assert!((exact - quad).abs() <= 1e-9, "{exact} vs {quad}");
        prop_assert!((s.functional.value(p).unwrap() - exact).abs() <= 1e-9);
        prop_assert!(exact >= -1e-10);
    }

    #[test]
    fn gradient_matches_central_differences(n in 1u32..=3, a in 0.7f64..=1.0, p in params(4)) {
        let s = solved(n, a, a);
        let p = &p[..nvars(n)];
        let h = 1e-6;
        for (i, g) in gradient(&s.functional).iter().enumerate() {
            let (mut up, mut dn) = (p.to_vec(), p.to_vec());
            up[i] += h;
            dn[i] -= h;
            let fd = (s.functional.poly_value(&up) - s.functional.poly_value(&dn)) / (2.0 * h);
            let exact = g.eval(p);
            prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0), "d{i}: {fd} vs {exact}");
        }
    }

    #[test]
    fn fit_dominates_hpm_start(n in 1u32..=3, a in 0.6f64..=1.0, b in 0.6f64..=1.0) {
        let s = solved(n, a, b);
        prop_assert!(s.fit.converged);
        prop_assert!(s.fit.jvalue <= s.j_hpm);
    }

    #[test]
    fn pointwise_bound_implies_weak_bound(n in 1u32..=3, a in 0.6f64..=1.0) {
        let s = solved(n, a, a);
        let c = classify_epsilon(&s.residuals, &s.fit.params, &s.problem.orders, 1.0, 21).unwrap();
        let eqs = s.problem.equations.len() as f64;
        prop_assert!(c.weak_value <= eqs * c.sup * c.sup);
    }
}

#[test]
fn classical_fits_leave_no_residual() {
    for n in 1..=3 {
        let s = solved(n, 1.0, 1.0);
        for r in &s.residuals {
            let series = r.eval(&s.fit.params);
            let m = NumericSeries::collapse(&series, &s.problem.orders).max_abs_coeff();
            assert!(m <= 1e-9, "example {n}: {series}");
        }
    }
}

#[test]
fn solving_is_deterministic() {
    let a = solved(3, 0.9, 0.8);
    let b = solved(3, 0.9, 0.8);
    assert_eq!(a.fit, b.fit);
    assert_eq!(a.series(), b.series());
}
