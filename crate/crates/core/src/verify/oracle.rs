//! Reference quadrature written independently of the transform code.
//!
//! Nothing here calls the kernel, chirp or FFT routines of the library: the
//! kernel is re-derived from its closed form, the normalization root is built
//! from its polar form, and the sum is a plain double loop in quaternion
//! arithmetic.

use std::f64::consts::{FRAC_PI_4, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{Grid, Sampled};
use crate::params::OlctParams;
use crate::qolct::{SampledSignal, Spectrum};
use crate::quaternion::Quaternion;

/// Largest input or output length the oracle accepts; it is `O(N·M)` by design.
pub const ORACLE_MAX_SAMPLES: usize = 2048;

/// `Δt·Σₙ f(tₙ)·K(tₙ, w)` for every `w` in `wgrid`, kernel on the right.
pub fn oracle_quadrature<K>(f: &SampledSignal, wgrid: &Grid, kernel: K) -> Result<Spectrum>
where
    K: Fn(f64, f64) -> Quaternion + Sync,
{
    let (n, m) = (f.len(), wgrid.count());
    if n > ORACLE_MAX_SAMPLES || m > ORACLE_MAX_SAMPLES {
        return Err(Error::Domain(format!(
            "oracle quadrature is limited to {ORACLE_MAX_SAMPLES} samples (got {n} inputs, {m} outputs)"
        )));
    }
    let tgrid = *f.grid();
    let samples = (0..m)
        .into_par_iter()
        .map(|j| {
            let w = wgrid.at(j);
            let mut acc = Quaternion::ZERO;
            for (i, fv) in f.samples().iter().enumerate() {
                acc += *fv * kernel(tgrid.at(i), w);
            }
            acc * tgrid.step()
        })
        .collect();
    Sampled::new(*wgrid, samples)
}

/// Unit quaternion `cos φ + e₂ sin φ`.
fn e2_exp(phi: f64) -> Quaternion {
    Quaternion::new(phi.cos(), 0.0, phi.sin(), 0.0)
}

/// `1/√(e₂·2πB)` on the principal branch.
///
/// `e₂·2πB` has modulus `2π|B|` and argument `±π/2` (sign of `B`), so its
/// principal root has modulus `√(2π|B|)` and argument `±π/4`.
pub(crate) fn inverse_root_e2_2pi(b: f64) -> Quaternion {
    let arg = if b > 0.0 { FRAC_PI_4 } else { -FRAC_PI_4 };
    e2_exp(-arg) * (1.0 / (2.0 * PI * b.abs()).sqrt())
}

/// The transform evaluated straight from its integral definition
/// `∫ f(t)·(1/√(e₂2πB))·exp{e₂(At² − 2t(w−p) − 2w(Dp−Bq) + D(w²+p²))/2B} dt`.
pub fn oracle_transform(f: &SampledSignal, params: &OlctParams, wgrid: &Grid) -> Result<Spectrum> {
    let OlctParams { a, b, d, p, q, .. } = *params;
    if b == 0.0 || params.is_degenerate() {
        return Err(Error::DegenerateComposition(b));
    }
    let norm = inverse_root_e2_2pi(b);
    oracle_quadrature(f, wgrid, |t, w| {
        let exponent = a * t * t - 2.0 * t * (w - p) - 2.0 * w * (d * p - b * q) + d * (w * w + p * p);
        norm * e2_exp(exponent / (2.0 * b))
    })
}
