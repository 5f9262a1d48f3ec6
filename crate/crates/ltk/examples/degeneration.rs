//! Degenerating a non-closed orbit onto the unique closed orbit in its
//! closure: split each column as z = u + ω with ω in the radical,
//! scale the radical component by t, and follow the curve to t = 0.
//! The Gram quotient never moves while the exhaustion value drops.
//!
//! Run with `cargo run --example degeneration`.

use ltk::kaehler::rho;
use ltk::minkowski::{eta, in_future_tube, CMat, C64, MinkowskiVector, Tolerance};
use ltk::quotient::{gamma_scale, gram_quotient, is_orbit_closed, isotropic_split};
use ltk::sample;
use ltk::ConfigPoint;

fn main() -> ltk::Result<()> {
    let tol = Tolerance::default();

    // Worked two-column point at n = 2: columns (2i, 1, i), (i, 0, 0).
    // The vector (1, 0, 1) spans the radical between the two columns.
    let mut m = CMat::zeros(3, 2);
    m[(0, 0)] = C64::new(0.0, 2.0);
    m[(1, 0)] = C64::new(1.0, 0.0);
    m[(2, 0)] = C64::new(0.0, 1.0);
    m[(0, 1)] = C64::new(0.0, 1.0);
    let z = ConfigPoint::new(m)?;

    let split = isotropic_split(&z, tol)?;
    println!("worked example, n = 2, N = 2:");
    println!("  radical dimension   {}", split.radical().len());
    println!("  pairing condition   {:.4}", split.pairing_condition());
    println!("  ρ(z) = {:.12}  (4/3 = {:.12})", rho(&z)?, 4.0 / 3.0);
    println!("  ρ(u) = {:.12}  (5/4 = {:.12})", rho(split.u_part())?, 1.25);

    // The split never moves the invariant quotient.
    let drift = (gram_quotient(split.u_part()).entries() - gram_quotient(&z).entries())
        .map(|v| v.norm())
        .max();
    println!("  Gram drift ‖π(u) − π(z)‖_max = {drift:.2e}");
    let chk = is_orbit_closed(split.u_part(), tol);
    println!("  u on a closed orbit: {}", chk.closed);

    // γ(t) = u + t·ω interpolates the degeneration. For this point
    // η(Im γ(t)₁) = 4 − t², so the curve lives in the open tube for
    // |t| < 2 and touches the boundary exactly at t = ±2.
    println!("\n  t      η(Im γ(t)₁)   in T^N");
    for &t in &[0.0, 0.5, 1.0, 1.5, 1.99, 2.0] {
        let gt = gamma_scale(&split, C64::new(t, 0.0));
        let e = eta(&MinkowskiVector::real(gt.column(0).im())?).re;
        println!("  {t:<5}  {e:>12.6}   {}", if in_future_tube(&gt, tol) { "yes" } else { "no" });
    }

    // The planted family used by the verification suites keeps its
    // radical coefficients small, so the whole grid |t| ≤ 2 stays
    // strictly inside the tube.
    let mut rng = sample::rng_for(12);
    let planted = sample::planted_radical_point(&mut rng, 4, 2, 3);
    let split = isotropic_split(&planted, tol)?;
    println!("\nplanted d = 2 point at n = 4, N = 3:");
    println!("  ρ(z) = {:.6}, ρ(u) = {:.6}", rho(&planted)?, rho(split.u_part())?);
    print!("  γ(t) in T^N at t ∈ {{0, ±0.5, ±1, ±2}}:");
    let all_in = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0]
        .iter()
        .all(|&t| in_future_tube(&gamma_scale(&split, C64::new(t, 0.0)), tol));
    println!(" {}", if all_in { "all inside" } else { "left the tube" });
    Ok(())
}
