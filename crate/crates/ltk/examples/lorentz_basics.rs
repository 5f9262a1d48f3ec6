//! The bilinear Lorentz form, cone and tube membership, the reverse
//! Cauchy-Schwarz inequality on the forward cone, and the boost that
//! lands a cone vector on the time axis.
//!
//! Run with `cargo run --example lorentz_basics`.

use ltk::minkowski::{
    cauchy_schwarz_defect, cone_boost, eta, in_forward_cone, in_future_tube, lorentz_product,
    MinkowskiVector, RVec, Tolerance,
};
use ltk::sample;
use ltk::ConfigPoint;

fn main() -> ltk::Result<()> {
    let tol = Tolerance::default();

    // x•y = x₀y₀ − x₁y₁ − … − xₙyₙ, bilinear, no conjugation.
    let x = MinkowskiVector::real(RVec::from_vec(vec![2.0, 1.0, 0.0]))?;
    let y = MinkowskiVector::real(RVec::from_vec(vec![1.0, 0.0, 1.0]))?;
    println!("x = (2, 1, 0), y = (1, 0, 1)");
    println!("  x•y   = {}", lorentz_product(&x, &y)?.re);
    println!("  η(x)  = {}  (timelike: inside the cone)", eta(&x).re);
    println!("  η(y)  = {}  (lightlike: on the boundary, outside the open cone)", eta(&y).re);
    println!("  x in C: {}", in_forward_cone(&x, tol)?);
    println!("  y in C: {}", in_forward_cone(&y, tol)?);

    // On the cone the Cauchy-Schwarz inequality reverses:
    // (x•y)² ≥ η(x)η(y) whenever η(y) > 0.
    let mut rng = sample::rng_for(42);
    let mut min_defect = f64::INFINITY;
    for _ in 0..10_000 {
        let a = sample::sample_real_vector(&mut rng, 3, 2.0);
        let b = sample::sample_cone_vector(&mut rng, 3, 2.0);
        min_defect = min_defect.min(cauchy_schwarz_defect(&a, &b)?);
    }
    println!("\nreverse Cauchy-Schwarz over 10000 random pairs with η(y) > 0:");
    println!("  min (x•y)² − η(x)η(y) = {min_defect:.6e}  (never negative)");

    // A dependent pair sits exactly on the equality case.
    let z = sample::sample_cone_vector(&mut rng, 3, 1.0);
    let w = MinkowskiVector::real(z.re() * 1.75)?;
    println!("  defect at y = 1.75·x       = {:.6e}", cauchy_schwarz_defect(&z, &w)?);

    // Every cone vector is a boost away from √η(y)·e₀.
    let v = MinkowskiVector::real(RVec::from_vec(vec![2.0, 0.6, -0.3]))?;
    let g = cone_boost(&v, tol)?;
    let image = g.apply_vector(&v)?;
    println!("\ncone_boost moves (2, 0.6, -0.3) to the time axis:");
    println!("  image      = ({:.6}, {:.2e}, {:.2e})", image.re()[0], image.re()[1], image.re()[2]);
    println!("  √η(v)      = {:.6}", eta(&v).re.sqrt());
    println!("  g residual = {:.2e}  (ᵗgJg = J)", g.residual());

    // The future tube T^N: every column's imaginary part in the cone.
    let inside = sample::sample_tube_point(&mut rng, 3, 2, 1.0, 1.0);
    println!("\ntube membership (n = 3, N = 2):");
    println!("  sampled tube point in T^N:    {}", in_future_tube(&inside, tol));
    let real_only = ConfigPoint::new(inside.matrix().map(|c| ltk::minkowski::C64::new(c.re, 0.0)))?;
    println!("  its real part alone in T^N:   {}", in_future_tube(&real_only, tol));
    Ok(())
}
