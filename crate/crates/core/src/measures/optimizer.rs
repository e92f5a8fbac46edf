//! Minimisation of the measurement-conditioned entropy over rank-one
//! projective measurements `Π± = (1 ± n̂·σ)/2` on one qubit.
//!
//! A deterministic Fibonacci grid over the sphere locates the basin, then
//! alternating golden-section searches along two orthogonal great circles
//! through the current best direction polish it.

use std::cmp::Ordering;

use super::{MeasureResult, OptimizerDiagnostics, OptimizerSettings};
use crate::error::Result;
use crate::linalg::{binary_entropy, Subsystem, C64};
use crate::states::DensityMatrix;

/// Outcome probabilities below this contribute nothing.
const MIN_PROBABILITY: f64 = 1e-14;
/// Bracket width at which a line search stops, in radians.
const LINE_TOLERANCE: f64 = 1e-10;
const GOLDEN: f64 = 0.618_033_988_749_894_8;

type Vec3 = [f64; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(v: Vec3) -> Vec3 {
    let n = dot(v, v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn rotate_towards(n: Vec3, e: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    normalize([c * n[0] + s * e[0], c * n[1] + s * e[1], c * n[2] + s * e[2]])
}

/// Some unit vector orthogonal to `n`.
fn orthogonal(n: Vec3) -> Vec3 {
    let helper = if n[0].abs() < 0.6 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    normalize(cross(n, helper))
}

/// `count` quasi-uniform unit vectors on the golden-angle spiral.
pub fn fibonacci_sphere(count: usize) -> Vec<Vec3> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * k as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// `Σ± p± S(ρ_other | ±)` for the projective measurement along `n` on
/// `measured`.
pub fn conditional_entropy(rho: &DensityMatrix, measured: Subsystem, n: Vec3) -> f64 {
    Conditioner::new(rho, measured).entropy(n)
}

/// Contracts the measured qubit of `ρ` against a projector without forming
/// four-qubit products: the unnormalised post-measurement state of the other
/// qubit is `tr_m[(Π⊗1) ρ]`, i.e. `Σ_{ij} Π_{ji} ρ_{(i,u),(j,v)}`.
struct Conditioner {
    rho: [[C64; 4]; 4],
    measured: Subsystem,
}

impl Conditioner {
    fn new(rho: &DensityMatrix, measured: Subsystem) -> Self {
        let m = rho.matrix();
        let mut dense = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, row) in dense.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = m[(i, j)];
            }
        }
        Self { rho: dense, measured }
    }

    /// Basis index of (measured qubit `i`, other qubit `u`).
    #[inline]
    fn index(&self, i: usize, u: usize) -> usize {
        match self.measured {
            Subsystem::A => 2 * i + u,
            Subsystem::B => 2 * u + i,
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn conditional(&self, proj: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for (u, row) in out.iter_mut().enumerate() {
            for (v, entry) in row.iter_mut().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..2 {
                    for j in 0..2 {
                        acc += proj[j][i] * self.rho[self.index(i, u)][self.index(j, v)];
                    }
                }
                *entry = acc;
            }
        }
        out
    }

    fn entropy(&self, n: Vec3) -> f64 {
        let mut total = 0.0;
        for sign in [1.0, -1.0] {
            // (1 ± n·σ)/2
            let proj = [
                [
                    C64::new(0.5 * (1.0 + sign * n[2]), 0.0),
                    C64::new(0.5 * sign * n[0], -0.5 * sign * n[1]),
                ],
                [
                    C64::new(0.5 * sign * n[0], 0.5 * sign * n[1]),
                    C64::new(0.5 * (1.0 - sign * n[2]), 0.0),
                ],
            ];
            let cond = self.conditional(&proj);
            let p = cond[0][0].re + cond[1][1].re;
            if p < MIN_PROBABILITY {
                continue;
            }
            total += p * qubit_entropy(&cond, p);
        }
        total
    }
}

/// Entropy of the normalised qubit state `m / p` from its Bloch radius.
fn qubit_entropy(m: &[[C64; 2]; 2], p: f64) -> f64 {
    let dz = (m[0][0] - m[1][1]).re / p;
    let off = m[0][1] / p;
    let r = (dz * dz + 4.0 * off.norm_sqr()).sqrt().min(1.0);
    binary_entropy(0.5 * (1.0 + r)).expect("probability in range")
}

fn better(a: (f64, Vec3), b: (f64, Vec3)) -> bool {
    match a.0.partial_cmp(&b.0) {
        Some(Ordering::Less) => true,
        Some(Ordering::Equal) => a.1.partial_cmp(&b.1) == Some(Ordering::Less),
        _ => false,
    }
}

/// Golden-section minimisation of `f` on `[lo, hi]`.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > LINE_TOLERANCE {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `min over n̂ of Σ± p± S(ρ_other | ±)`, the measurement-optimised
/// conditional entropy in bits, with the optimal direction in the
/// diagnostics.
pub fn optimal_conditional_entropy(
    rho: &DensityMatrix,
    measured: Subsystem,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    settings.validate()?;
    let cond = Conditioner::new(rho, measured);

    let mut best = (f64::INFINITY, [0.0, 0.0, 1.0]);
    for n in fibonacci_sphere(settings.grid_points) {
        let candidate = (cond.entropy(n), n);
        if better(candidate, best) {
            best = candidate;
        }
    }

    // twice the typical nearest-neighbour spacing of the grid
    let span = 2.0 * (4.0 * std::f64::consts::PI / settings.grid_points as f64).sqrt();
    let mut iterations = 0;
    let mut last_improvement = 0.0;
    let (mut value, mut n) = best;
    let mut e1 = orthogonal(n);
    while iterations < settings.max_refinements {
        iterations += 1;
        let start = value;
        for _ in 0..2 {
            let (angle, v) = golden_section(|a| cond.entropy(rotate_towards(n, e1, a)), -span, span);
            if v < value {
                let moved = rotate_towards(n, e1, angle);
                // tangent of the great circle at the new point
                e1 = rotate_towards(e1, [-n[0], -n[1], -n[2]], angle);
                n = moved;
                value = v;
            }
            e1 = normalize(cross(n, e1));
        }
        last_improvement = start - value;
        if last_improvement < settings.final_tolerance {
            break;
        }
    }

    Ok(MeasureResult {
        value: value.max(0.0),
        method: super::Method::Oracle,
        optimizer: Some(OptimizerDiagnostics {
            best_direction: n,
            grid_points: settings.grid_points,
            refinement_iterations: iterations,
            final_tolerance: last_improvement,
        }),
    })
}
