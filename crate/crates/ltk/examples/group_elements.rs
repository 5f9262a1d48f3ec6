//! Building blocks of SO_C(1,n): the boost/rotation algebra basis,
//! validated matrix exponentials, random group elements, and the
//! Cartan elements used by the connectivity machinery.
//!
//! Run with `cargo run --example group_elements`.

use ltk::group::{
    algebra_basis, basis_labels, cartan_element, epsilon, exp_algebra, random_group_element,
    CartanParams, CartanVariant, Realness,
};
use ltk::minkowski::{eta, C64};
use ltk::sample;

fn main() -> ltk::Result<()> {
    let n = 3;

    // so(1,n) splits into n boosts and n(n−1)/2 rotations.
    println!("algebra basis at n = {n}: {}", basis_labels(n).join(", "));

    // exp of a real boost is a real Lorentz matrix; exp of i·(boost)
    // is complex but still satisfies ᵗgJg = J and det g = 1.
    let basis = algebra_basis(n);
    let real_boost = exp_algebra(&basis[0], C64::new(0.8, 0.0))?;
    let complex_boost = exp_algebra(&basis[0], C64::new(0.0, 0.8))?;
    println!("\nexp(0.8·B1):   classification {:?}", real_boost.classification());
    println!("exp(0.8i·B1):  classification {:?}", complex_boost.classification());
    println!("  cosh(0.8) = {:.12}", 0.8f64.cosh());
    println!("  entry 00  = {:.12}", real_boost.matrix()[(0, 0)].re);

    // Group elements preserve every pairwise Lorentz product, real
    // elements additionally preserve the tube.
    let mut rng = sample::rng_for(7);
    let z = sample::sample_tube_point(&mut rng, n, 2, 1.0, 1.0);
    let g = random_group_element(11, n, 0.7, Realness::Complex);
    let gz = g.apply(&z)?;
    let before = eta(&z.column(0));
    let after = eta(&gz.column(0));
    println!("\nrandom complex element (seed 11, scale 0.7):");
    println!("  residual ᵗgJg − J = {:.2e}, det error = {:.2e}", g.residual(), g.det_error());
    println!("  η(z₁)  = {:.12} + {:.12}i", before.re, before.im);
    println!("  η(gz₁) = {:.12} + {:.12}i  (invariant)", after.re, after.im);

    // Cartan elements of the complex torus H_I: a circle pair acting
    // on the (time, first-spatial) coordinates with imaginary
    // off-diagonal, and hyperbolic pairs on later spatial pairs.
    let params = CartanParams::new(
        CartanVariant::H0,
        Some((0.6f64.cos(), 0.6f64.sin())),
        vec![(1.2f64.cosh(), 1.2f64.sinh())],
    )?;
    let h = cartan_element(&params, n)?;
    println!("\nCartan element, variant H0 at n = 3 (circle angle 0.6, boost 1.2):");
    for i in 0..=n {
        let row: Vec<String> = (0..=n)
            .map(|j| {
                let e = h.matrix()[(i, j)];
                format!("{:+.3}{:+.3}i", e.re, e.im)
            })
            .collect();
        println!("  [{}]", row.join("  "));
    }
    println!("  residual ᵗhJh − J = {:.2e}", h.residual());

    // ε flips the time direction while keeping det = 1, so it lies in
    // the second component of the complexified group (even n only).
    // No element of its coset maps any tube point into the tube.
    let eps = epsilon(4)?;
    let mut rng4 = sample::rng_for(19);
    let z4 = sample::sample_tube_point(&mut rng4, 4, 1, 0.5, 0.5);
    let flipped = eps.apply(&z4)?;
    println!("\nε at n = 4 flips the forward cone:");
    println!("  Im(z₁)₀  = {:+.4}", z4.column(0).im()[0]);
    println!("  Im(εz₁)₀ = {:+.4}", flipped.column(0).im()[0]);
    println!("  ε valid in SO_C(1,n): {}", eps.is_valid());
    Ok(())
}
