//! Rayleigh reflection and transmission at one wedge angle.
//!
//! `cargo run --release --example rayleigh -- 150`

use wedge::{rayleigh_coefficients, solve, WedgeProblem};

fn main() -> wedge::Result<()> {
    let angle = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(150.0);
    let sol = solve(&WedgeProblem::rayleigh(angle, 0.25))?;
    for part in &sol.parts {
        println!("{}: c1 = {:.6}, residual {:.1e}", part.sym.label(), part.sol.c1, part.sol.residual);
    }
    let c = rayleigh_coefficients(&sol)?;
    println!("R_ref  = {:.5} at {:7.2} deg", c.ref_abs, c.ref_arg_deg);
    println!("R_tran = {:.5} at {:7.2} deg", c.tran_abs, c.tran_arg_deg);
    Ok(())
}
