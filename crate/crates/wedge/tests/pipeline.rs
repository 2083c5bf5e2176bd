use std::f64::consts::PI;
use wedge::io::{read_line_column, write_line_csv};
use wedge::{
    face_traction, rayleigh_coefficients, solve, tip_exponents, Complex64 as C64, ContourOptions, Incidence,
    LineSolution, Symmetry, Wave, WedgeProblem,
};

fn p_wave(angle: f64, deg: f64) -> WedgeProblem {
    WedgeProblem::new(angle, 0.25, Incidence { wave: Wave::P, theta_inc: deg.to_radians() })
}

fn near(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn zero_index(l: &LineSolution) -> usize {
    l.eta.iter().position(|e| e.abs() < 1e-12).unwrap()
}

#[test]
fn bisectrix_p_defects_are_frozen() {
    let sol = solve(&p_wave(70.0, 0.0)).unwrap();
    assert_eq!(sol.parts.len(), 1);
    let l = &sol.part(Symmetry::Plus).unwrap().sol;
    assert!(near(l.lambda[0], C64::new(0.0, 0.588234), 1e-5), "{}", l.lambda[0]);
    assert!(near(l.lambda[1], C64::new(1.085932, 0.0), 1e-5), "{}", l.lambda[1]);
    assert!(near(l.c1, C64::new(0.0, -0.541686), 1e-5), "{}", l.c1);
    assert!(l.residual <= 1e-5);
    let k = zero_index(l);
    assert!(near(l.x[k], l.rhs.r1[k] - l.c1 * sol.mat.gamma, 1e-12));
}

#[test]
fn antisymmetric_line_identity_at_origin() {
    let p = WedgeProblem::new(70.0, 0.25, Incidence { wave: Wave::S, theta_inc: 0.0 });
    let sol = solve(&p).unwrap();
    let l = &sol.part(Symmetry::Minus).unwrap().sol;
    let k = zero_index(l);
    assert!(near(l.y[k], l.rhs.r2[k] + l.c1, 1e-12));
    assert!(l.residual <= 1e-5);
}

#[test]
fn line_solution_persists_exactly() {
    let sol = solve(&p_wave(70.0, 10.0)).unwrap();
    let l = &sol.parts[0].sol;
    let text = serde_json::to_string(l).unwrap();
    let back: LineSolution = serde_json::from_str(&text).unwrap();
    assert_eq!(back.u, l.u);
    assert_eq!(back.lambda, l.lambda);
    assert_eq!(back.eta, l.eta);
    let mut buf = Vec::new();
    write_line_csv(l, &mut buf).unwrap();
    let (eta, u) = read_line_column(&buf[..], "u").unwrap();
    assert_eq!(eta, l.eta);
    assert_eq!(u, l.u);
}

#[test]
fn coefficients_continuous_in_poisson_ratio() {
    let c = |nu| rayleigh_coefficients(&solve(&WedgeProblem::rayleigh(120.0, nu)).unwrap()).unwrap();
    let (a, b) = (c(0.25), c(0.26));
    assert!((a.r_ref - b.r_ref).norm() < 0.05 && (a.r_tran - b.r_tran).norm() < 0.05);
}

#[test]
fn flat_limit_trend() {
    let rows: Vec<_> = [150.0, 165.0, 178.0]
        .iter()
        .map(|&a| rayleigh_coefficients(&solve(&WedgeProblem::rayleigh(a, 0.234)).unwrap()).unwrap())
        .collect();
    for w in rows.windows(2) {
        assert!(w[1].ref_abs < w[0].ref_abs);
        assert!(w[1].tran_abs > w[0].tran_abs);
        assert!(w[1].tran_arg_deg.abs() < w[0].tran_arg_deg.abs());
    }
    let last = rows.last().unwrap();
    assert!(last.ref_abs < 0.01 && (last.tran_abs - 1.0).abs() < 0.02 && last.tran_arg_deg.abs() < 5.0);
}

#[test]
fn faces_are_traction_free() {
    let sol = solve(&p_wave(70.0, 0.0)).unwrap();
    let t = face_traction(&sol, &[1.0, 2.0], &ContourOptions::default()).unwrap();
    assert!(t.relative <= 1e-3, "{t:?}");
}

#[test]
fn tip_double_root() {
    let t = tip_exponents(0.8 * PI);
    let d = t
        .plus
        .iter()
        .find(|e| e.multiplicity == 2)
        .expect("double root");
    assert!((d.p.re - 0.76).abs() < 0.01 && d.residual <= 1e-10, "{d:?}");
}
