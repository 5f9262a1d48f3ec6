//! The closed-orbit criterion: an orbit of the complex Lorentz group
//! is closed exactly when the column span of the point meets its
//! Lorentz-orthocomplement trivially, which the library decides by
//! comparing the numeric rank of the point with the rank of its Gram
//! matrix of pairwise products.
//!
//! Run with `cargo run --example closed_orbits`.

use ltk::minkowski::{eta, lorentz_product, CMat, C64, MinkowskiVector, Tolerance};
use ltk::quotient::{is_orbit_closed, radical_basis, rank_decision};
use ltk::sample;
use ltk::ConfigPoint;

fn main() -> ltk::Result<()> {
    let tol = Tolerance::default();

    // A single lightlike column: the span is one-dimensional but every
    // pairwise product vanishes, so the orbit is not closed. Its
    // closure contains the zero point.
    let mut m = CMat::zeros(3, 1);
    m[(0, 0)] = C64::new(1.0, 0.0);
    m[(1, 0)] = C64::new(1.0, 0.0);
    let iso = ConfigPoint::new(m)?;
    let chk = is_orbit_closed(&iso, tol);
    println!("z = ((1, 1, 0)), a lightlike line:");
    println!("  span rank {}, Gram rank {}, closed: {}", chk.span_dim, chk.gram_rank, chk.closed);

    // A planted non-degenerate point: span rank = Gram rank.
    let mut rng = sample::rng_for(3);
    let clean = sample::planted_radical_point(&mut rng, 4, 0, 3);
    let chk = is_orbit_closed(&clean, tol);
    println!("\nplanted d = 0 point at n = 4, N = 3:");
    println!("  span rank {}, Gram rank {}, closed: {}", chk.span_dim, chk.gram_rank, chk.closed);

    // Planting a radical of dimension d splits the two ranks by
    // exactly d, and radical_basis recovers the planted subspace.
    for d in [1usize, 2] {
        let z = sample::planted_radical_point(&mut rng, 4, d, 3);
        let rad = radical_basis(&z, tol);
        println!("\nplanted d = {d} point at n = 4, N = 3:");
        println!(
            "  span rank {}, Gram rank {}, radical dimension {}",
            rad.span_dim,
            rad.gram_rank,
            rad.basis.len()
        );
        println!("  marginal rank decision: {}", rad.marginal);
        // Radical vectors are isotropic and Lorentz-orthogonal to the
        // whole span, so their product with every column vanishes.
        let r = MinkowskiVector::new(rad.basis[0].clone())?;
        let worst: f64 = (0..z.copies())
            .map(|j| lorentz_product(&z.column(j), &r).map(|p| p.norm()).unwrap_or(f64::NAN))
            .fold(0.0, f64::max);
        println!("  |η(r)| of a radical basis vector: {:.2e} (isotropic)", eta(&r).norm());
        println!("  max_j |z_j•r| = {worst:.2e} (orthogonal to the span)");
    }

    // The rank decision itself carries its evidence: the threshold it
    // compared against and the spectral gap around it.
    let z = sample::sample_tube_point(&mut rng, 3, 2, 1.0, 1.0);
    let d = rank_decision(z.matrix(), tol);
    println!("\nrank evidence for a generic tube point (n = 3, N = 2):");
    println!("  rank {}, threshold {:.2e}, gap ratio {:.2e}", d.rank, d.threshold, d.gap_ratio);
    println!("  η(z₁) = {:.4} + {:.4}i", eta(&z.column(0)).re, eta(&z.column(0)).im);
    Ok(())
}
