//! Orbit connectedness through Cartan subgroups: for a tube point w
//! and an admissible Cartan element h, the straight-line parameter
//! path from the identity to h keeps w inside the tube the whole way.
//! The ε-component of the group never contributes.
//!
//! Run with `cargo run --example orbit_paths`.

use ltk::connect::{cartan_path, hi_monotonicity_check, sigma_contains, MonotonicityGrid};
use ltk::group::{cartan_element, epsilon, CartanParams, CartanVariant};
use ltk::minkowski::{eta, MinkowskiVector, Tolerance};
use ltk::sample;

fn main() -> ltk::Result<()> {
    let tol = Tolerance::default();
    let n = 3;

    // A comfortable tube point, and an H0 element shrunk until it
    // keeps the point inside the tube; the identity always qualifies,
    // so the loop terminates.
    let mut rng = sample::rng_for(8);
    let w = sample::sample_tube_point(&mut rng, n, 2, 0.5, 0.5);
    let mut scale: f64 = 0.4;
    let (params, h) = loop {
        let p = CartanParams::new(
            CartanVariant::H0,
            Some((scale.cos(), scale.sin())),
            vec![(scale.cosh(), scale.sinh())],
        )?;
        let h = cartan_element(&p, n)?;
        if sigma_contains(&h, &w, tol)? {
            break (p, h);
        }
        scale *= 0.7;
    };
    println!("admissible H0 element at parameter scale {scale:.4}");

    // Sample the path; every point is revalidated against Σ(w).
    let path = cartan_path(&params, &w, 9, tol)?;
    println!("\n  t       min_j η(Im (g(t)·w)_j)");
    for s in path.samples() {
        let gw = s.element.apply(&w)?;
        let margin = (0..gw.copies())
            .map(|j| eta(&MinkowskiVector::real(gw.column(j).im()).unwrap()).re)
            .fold(f64::INFINITY, f64::min);
        println!("  {:<6.3}  {margin:.6}", s.t);
    }
    let end = path.samples().last().unwrap();
    let gap = (end.element.matrix() - h.matrix()).map(|c| c.norm()).max();
    println!("  endpoint matches h to {gap:.2e}");

    // Along each block the tube margin responds monotonically to
    // shrinking or stretching the parameters; the grid check probes
    // that structure at random scalings.
    let report = hi_monotonicity_check(&params, &w, 81, &MonotonicityGrid::default())?;
    println!(
        "\nmonotonicity grid: {} comparisons, {} violations",
        report.checks,
        report.violations.len()
    );

    // No element of the ε-coset maps any tube point into the tube:
    // the admissible set never meets the second component. ε lives at
    // even n, so probe it at n = 2 where the identity itself is the
    // simplest admissible element.
    let w2 = sample::sample_tube_point(&mut rng, 2, 2, 0.5, 0.5);
    let id2 = cartan_element(&CartanParams::identity_for(CartanVariant::H1, 2)?, 2)?;
    let eps_h = id2.compose(&epsilon(2)?, tol)?;
    println!("\nidentity admissible for w (n = 2): {}", sigma_contains(&id2, &w2, tol)?);
    println!("ε·identity admissible:            {}", sigma_contains(&eps_h, &w2, tol)?);
    Ok(())
}
