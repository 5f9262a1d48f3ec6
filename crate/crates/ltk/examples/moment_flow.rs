//! The exhaustion ρ(z) = Σ 1/η(Im z_j), its strictly positive Levi
//! form, the moment map along imaginary group directions, and the
//! descent flow that drives a point to the balanced representative of
//! its orbit.
//!
//! Run with `cargo run --example moment_flow`.

use ltk::group::{random_group_element, Realness};
use ltk::kaehler::{levi_spectrum, minimize_rho_on_orbit, moment_map, rho, FlowOptions};
use ltk::minkowski::{CMat, C64};
use ltk::sample;
use ltk::ConfigPoint;

fn main() -> ltk::Result<()> {
    // At z = i·e₀ (n = 2) the Levi form has eigenvalues 3/2, 1/2, 1/2.
    let mut m = CMat::zeros(3, 1);
    m[(0, 0)] = C64::new(0.0, 1.0);
    let e0 = ConfigPoint::new(m)?;
    let mut spec = levi_spectrum(&e0)?;
    spec.sort_by(|a, b| a.partial_cmp(b).unwrap());
    println!("Levi spectrum at i·e₀: {spec:?}");
    println!("ρ(i·e₀) = {}", rho(&e0)?);

    // Purely imaginary points are balanced: the moment map vanishes
    // identically, coefficient by coefficient, with no rounding.
    let mu = moment_map(&e0)?;
    println!("μ(i·e₀) coefficients: {:?}  (‖μ‖ = {})", mu.coefficients(), mu.norm());

    // Scramble a balanced point with a complex group element, then let
    // the flow find its way back down. ρ is invariant under the real
    // group and strictly convex along imaginary directions, so the
    // minimum over the orbit is the balanced value. Complex elements
    // do not preserve the tube, so shrink the scramble until the
    // image stays inside (the flow needs a tube start).
    let mut rng = sample::rng_for(2);
    let y1 = sample::sample_cone_vector_with_margin(&mut rng, 3, 1.0, (0.5, 2.0));
    let y2 = sample::sample_cone_vector_with_margin(&mut rng, 3, 1.0, (0.5, 2.0));
    let mut m = CMat::zeros(4, 2);
    for i in 0..4 {
        m[(i, 0)] = C64::new(0.0, y1.re()[i]);
        m[(i, 1)] = C64::new(0.0, y2.re()[i]);
    }
    let base = ConfigPoint::new(m)?;
    let mut scale = 0.4;
    let scrambled = loop {
        let g = random_group_element(17, 3, scale, Realness::Complex);
        let gz = g.apply(&base)?;
        if ltk::minkowski::in_future_tube(&gz, ltk::Tolerance::default()) {
            break gz;
        }
        scale *= 0.8;
    };

    println!("\nflow from g·z₀ back to the balanced level:");
    println!("  ρ(z₀)    = {:.12}", rho(&base)?);
    println!("  ρ(g·z₀)  = {:.12}", rho(&scrambled)?);

    let result = minimize_rho_on_orbit(&scrambled, FlowOptions::default())?;
    println!("  converged: {} after {} iterations", result.converged, result.iterations);
    println!("  ρ(final) = {:.12}", rho(&result.final_point)?);
    if let Some((it, r, mu_norm)) = result.trace.last() {
        println!("  last trace entry: iteration {it}, ρ = {r:.12}, ‖μ‖ = {mu_norm:.2e}");
    }
    println!(
        "  recovered the base value to {:.2e}",
        (rho(&result.final_point)? - rho(&base)?).abs()
    );
    Ok(())
}
