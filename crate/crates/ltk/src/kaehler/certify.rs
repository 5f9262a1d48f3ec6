//! Extended-tube membership certification.
//!
//! A point `z` belongs to the extended tube when some `g` in the
//! complex group maps it into `T^N`. The certifier searches over
//! `g = exp(iA)·exp(B)` with `A`, `B` real combinations of the fixed
//! algebra basis, minimizing the violation functional
//!
//! `V(g) = Σ_j [ h(ε₀ − η(Im(g·z)_j)) + h(ε₀ − (Im(g·z)_j)₀) ]`,
//!
//! `h(s) = max(0, s)²`, by multi-start finite-difference descent.
//! `V = 0` certifies membership with witness `g` (double-checked by
//! the tube predicate); a failed search yields `unknown`, never
//! "non-member": the parametrization only covers a neighborhood of
//! the identity cosets, so absence of a witness proves nothing.

use rand::Rng;

use crate::group::{algebra_combination, expm, GroupElement};
use crate::minkowski::{C64, CMat, ConfigPoint, Tolerance};
use crate::sample;

/// Knobs of the certification search; defaults are the contract.
#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    /// Number of descent starts (first is always the identity).
    pub starts: usize,
    /// Interior margin `ε₀` demanded of every cone inequality.
    pub margin: f64,
    /// Seed for the random restarts.
    pub seed: u64,
    /// Iteration budget per start.
    pub max_iter: usize,
    /// Initial line-search step.
    pub step0: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { starts: 16, margin: 1e-3, seed: 0, max_iter: 250, step0: 0.25 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipStatus {
    Member,
    Unknown,
}

/// Search outcome. `witness` is present exactly for members, and the
/// witnessed image `witness·z` lies in the future tube.
#[derive(Clone, Debug)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    pub witness: Option<GroupElement>,
    /// Best violation value found (0 for members).
    pub residual: f64,
}

/// Abandon a start after this many non-improving iterations.
const STALL_LIMIT: usize = 40;
/// Finite-difference half-step for the violation gradient.
const FD_STEP: f64 = 1e-6;
/// Coordinate box beyond which the exponential search is pointless.
const PARAM_BOX: f64 = 6.0;

fn h(s: f64) -> f64 {
    let p = s.max(0.0);
    p * p
}

struct Objective<'a> {
    z: &'a CMat,
    n: usize,
    dim: usize,
    margin: f64,
}

impl Objective<'_> {
    fn group_matrix(&self, theta: &[f64]) -> CMat {
        let a: Vec<C64> = theta[..self.dim].iter().map(|&t| C64::new(0.0, t)).collect();
        let b: Vec<C64> = theta[self.dim..].iter().map(|&t| C64::new(t, 0.0)).collect();
        let ia = algebra_combination(&a, self.n);
        let bb = algebra_combination(&b, self.n);
        expm(ia.matrix()) * expm(bb.matrix())
    }

    fn violation(&self, theta: &[f64]) -> f64 {
        if theta.iter().any(|t| t.abs() > PARAM_BOX) {
            return f64::INFINITY;
        }
        let w = self.group_matrix(theta) * self.z;
        let mut v = 0.0;
        for j in 0..w.ncols() {
            let y0 = w[(0, j)].im;
            let mut eta = y0 * y0;
            for i in 1..w.nrows() {
                let yi = w[(i, j)].im;
                eta -= yi * yi;
            }
            v += h(self.margin - eta) + h(self.margin - y0);
        }
        v
    }
}

/// Multi-start search for a group element pulling `z` into the tube.
pub fn membership_certify(z: &ConfigPoint, opts: CertifyOptions) -> MembershipVerdict {
    let tol = Tolerance::default();
    let n = z.dim_n();
    let dim = n * (n + 1) / 2;
    let obj = Objective { z: z.matrix(), n, dim, margin: opts.margin };

    let finish_member = |theta: &[f64], residual: f64| -> Option<MembershipVerdict> {
        let g = GroupElement::validate(obj.group_matrix(theta), tol);
        if !g.is_valid() {
            return None;
        }
        match g.apply(z) {
            Ok(image) if crate::minkowski::in_future_tube(&image, tol) => {
                Some(MembershipVerdict {
                    status: MembershipStatus::Member,
                    witness: Some(g),
                    residual,
                })
            }
            _ => None,
        }
    };

    // The identity short-circuit: z already in the tube.
    if obj.violation(&vec![0.0; 2 * dim]) == 0.0 {
        if let Some(v) = finish_member(&vec![0.0; 2 * dim], 0.0) {
            return v;
        }
    }

    let mut rng = sample::rng_for(opts.seed);
    let mut best_residual = f64::INFINITY;
    let starts = opts.starts.max(1);
    for start in 0..starts {
        let mut theta: Vec<f64> = if start == 0 {
            vec![0.0; 2 * dim]
        } else {
            let spread = 0.05 + 0.45 * start as f64 / (starts - 1).max(1) as f64;
            (0..2 * dim).map(|_| rng.random_range(-spread..=spread)).collect()
        };
        let mut v = obj.violation(&theta);
        if !v.is_finite() {
            continue;
        }
        let mut stall = 0usize;
        let mut marker = v;
        for _ in 0..opts.max_iter {
            if v == 0.0 {
                break;
            }
            // Central-difference gradient of V.
            let mut grad = vec![0.0; theta.len()];
            for i in 0..theta.len() {
                let keep = theta[i];
                theta[i] = keep + FD_STEP;
                let vp = obj.violation(&theta);
                theta[i] = keep - FD_STEP;
                let vm = obj.violation(&theta);
                theta[i] = keep;
                grad[i] = (vp - vm) / (2.0 * FD_STEP);
            }
            let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
            if gnorm == 0.0 || !gnorm.is_finite() {
                break;
            }
            let mut s = opts.step0;
            let mut improved = false;
            while s > 1e-12 {
                let cand: Vec<f64> = theta
                    .iter()
                    .zip(&grad)
                    .map(|(&t, &g)| t - s * g / gnorm.max(1.0))
                    .collect();
                let vc = obj.violation(&cand);
                if vc < v {
                    theta = cand;
                    v = vc;
                    improved = true;
                    break;
                }
                s *= 0.5;
            }
            if !improved {
                break;
            }
            if v == 0.0 {
                break;
            }
            // Give up on starts that crawl: demand a 10% reduction of
            // the violation at least every STALL_LIMIT iterations.
            if v < 0.9 * marker {
                marker = v;
                stall = 0;
            } else {
                stall += 1;
                if stall >= STALL_LIMIT {
                    break;
                }
            }
        }
        best_residual = best_residual.min(v);
        if v == 0.0 {
            if let Some(verdict) = finish_member(&theta, 0.0) {
                return verdict;
            }
        }
    }

    MembershipVerdict {
        status: MembershipStatus::Unknown,
        witness: None,
        residual: best_residual,
    }
}
