//! Certified membership in the extended future tube ∪ g·T^N: a
//! verdict of "member" always carries a concrete group element g whose
//! image g·z is re-checked against the tube, so false positives cannot
//! slip through a sloppy search.
//!
//! Run with `cargo run --example membership`.

use ltk::group::{random_group_element, Realness};
use ltk::kaehler::{membership_certify, CertifyOptions, MembershipStatus};
use ltk::minkowski::{in_future_tube, CMat, Tolerance};
use ltk::sample;
use ltk::ConfigPoint;

fn main() -> ltk::Result<()> {
    let tol = Tolerance::default();
    let mut rng = sample::rng_for(23);

    // A tube point pushed out of the tube by a complex group element
    // is still a member of the extended tube, by construction.
    let inside = sample::sample_tube_point(&mut rng, 2, 2, 0.5, 0.5);
    let g = random_group_element(31, 2, 0.5, Realness::Complex);
    let hidden = g.apply(&inside)?;
    println!("scrambled tube point (n = 2, N = 2):");
    println!("  still visibly in T^N: {}", in_future_tube(&hidden, tol));

    let verdict = membership_certify(&hidden, CertifyOptions { seed: 5, ..Default::default() });
    match verdict.status {
        MembershipStatus::Member => {
            let w = verdict.witness.as_ref().expect("member verdicts carry a witness");
            let image = w.apply(&hidden)?;
            println!("  verdict: member (residual {:.2e})", verdict.residual);
            println!("  witness checks out: g·z in T^N = {}", in_future_tube(&image, tol));
        }
        MembershipStatus::Unknown => println!("  verdict: unknown"),
    }

    // The zero point is in every orbit closure but no group element
    // can move it into the open tube, so the honest answer is
    // "unknown", never "member".
    let zero = ConfigPoint::new(CMat::zeros(3, 2))?;
    let verdict = membership_certify(&zero, CertifyOptions { seed: 5, ..Default::default() });
    println!("\nz = 0:");
    println!("  verdict: {:?} (residual {:.4})", verdict.status, verdict.residual);

    // A spacelike real vector can still be a member: η is the only
    // single-column invariant, and a complex rotation carries any
    // η < 0 vector into the tube (e₁ ↦ i·e₀ under the complexified
    // boost at imaginary angle). The verdict is trusted only because
    // the witness image is re-checked.
    let x = loop {
        let v = sample::sample_real_vector(&mut rng, 2, 1.5);
        if ltk::minkowski::eta(&v).re < -0.1 {
            break v;
        }
    };
    println!("\nspacelike real column (η = {:.4}):", ltk::minkowski::eta(&x).re);
    let z = ConfigPoint::from_columns(&[x])?;
    let verdict = membership_certify(&z, CertifyOptions { seed: 5, ..Default::default() });
    match verdict.status {
        MembershipStatus::Member => {
            let w = verdict.witness.as_ref().unwrap();
            let image = w.apply(&z)?;
            println!("  verdict: member, witness image in T^N: {}", in_future_tube(&image, tol));
        }
        MembershipStatus::Unknown => println!("  verdict: unknown"),
    }

    // A lightlike vector is different: η(z) = 0 is impossible for a
    // one-column tube point (x•y = 0 with y in the cone forces
    // η(x) < 0), so the lightlike line admits no witness at all.
    let mut m = CMat::zeros(3, 1);
    m[(0, 0)] = ltk::minkowski::C64::new(1.0, 0.0);
    m[(1, 0)] = ltk::minkowski::C64::new(1.0, 0.0);
    let light = ConfigPoint::new(m)?;
    let verdict = membership_certify(&light, CertifyOptions { seed: 5, ..Default::default() });
    println!("\nlightlike column (1, 1, 0), η = 0:");
    println!("  verdict: {:?}", verdict.status);
    Ok(())
}
