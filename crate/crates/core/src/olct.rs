//! The scalar offset linear canonical transform on one complex plane.
//!
//! All integrals use the rectangle rule on uniform grids, so each transform is
//! a linear map of the samples. The direct path evaluates every kernel value;
//! the fast path factors the kernel into a time chirp, a fractional-frequency
//! DFT and an output chirp.

use crate::czt::fractional_dft;
use crate::error::{Error, Result};
use crate::grid::{Grid, Sampled};
use crate::params::OlctParams;
use crate::quaternion::ComplexE2;

pub type ComplexSignal = Sampled<ComplexE2>;
pub type ComplexSpectrum = Sampled<ComplexE2>;

/// Quadrature strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// `O(N·M)` sum with one kernel evaluation per term.
    Direct,
    /// `O((N+M) log(N+M))` chirp–DFT–chirp factorization.
    #[default]
    Fast,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "fast" => Ok(Method::Fast),
            other => Err(Error::Usage(format!("unknown method '{other}' (expected direct|fast)"))),
        }
    }
}

/// `Δt·Σₙ f(tₙ)·K_Λ(tₙ, w)` on every point of `wgrid`.
pub fn olct_direct(f: &ComplexSignal, params: &OlctParams, wgrid: &Grid) -> Result<ComplexSpectrum> {
    params.check_transformable()?;
    let tgrid = f.grid();
    let dt = tgrid.step();
    let samples = wgrid
        .points()
        .map(|w| {
            let acc: ComplexE2 = f
                .samples()
                .iter()
                .enumerate()
                .map(|(n, &fv)| fv * params.kernel(tgrid.at(n), w))
                .sum();
            acc * dt
        })
        .collect();
    Sampled::new(*wgrid, samples)
}

/// Same sum as [`olct_direct`], evaluated through the chirp–DFT–chirp factorization.
///
/// With `tₙ = t₀ + nΔt` and `w_m = w₀ + mΔw`,
/// `tₙw_m = tₙw₀ + t₀(w_m − w₀) + nm·ΔtΔw`, so the cross term is a
/// fractional DFT with `β = ΔtΔw/B`.
pub fn olct_fast(f: &ComplexSignal, params: &OlctParams, wgrid: &Grid) -> Result<ComplexSpectrum> {
    params.check_transformable()?;
    let tgrid = f.grid();
    let (t0, w0) = (tgrid.start(), wgrid.start());
    let b = params.b;
    let pre: Vec<ComplexE2> = f
        .samples()
        .iter()
        .enumerate()
        .map(|(n, &fv)| {
            let t = tgrid.at(n);
            fv * ComplexE2::cis(params.time_chirp_phase(t) - t * w0 / b)
        })
        .collect();
    let beta = tgrid.step() * wgrid.step() / b;
    let core = fractional_dft(&pre, beta, wgrid.count());
    let scale = params.kernel_constant() * tgrid.step();
    let samples = core
        .into_iter()
        .enumerate()
        .map(|(m, y)| {
            let w = wgrid.at(m);
            y * scale * ComplexE2::cis(params.output_chirp_phase(w) - t0 * (w - w0) / b)
        })
        .collect();
    Sampled::new(*wgrid, samples)
}

pub fn olct(f: &ComplexSignal, params: &OlctParams, wgrid: &Grid, method: Method) -> Result<ComplexSpectrum> {
    match method {
        Method::Direct => olct_direct(f, params, wgrid),
        Method::Fast => olct_fast(f, params, wgrid),
    }
}

/// `Δw·Σ_m F(w_m)·conj(K_Λ(t, w_m))` on every point of `tgrid`.
pub fn olct_inverse_direct(spec: &ComplexSpectrum, params: &OlctParams, tgrid: &Grid) -> Result<ComplexSignal> {
    params.check_transformable()?;
    let wgrid = spec.grid();
    let dw = wgrid.step();
    let samples = tgrid
        .points()
        .map(|t| {
            let acc: ComplexE2 = spec
                .samples()
                .iter()
                .enumerate()
                .map(|(m, &fv)| fv * params.kernel(t, wgrid.at(m)).conj())
                .sum();
            acc * dw
        })
        .collect();
    Sampled::new(*tgrid, samples)
}

/// Inverse transform `f(t) = ∫ F(w)·conj(K_Λ(t, w)) dw`, fast path.
///
/// When `tgrid` is matched to the spectrum grid (see
/// [`OlctParams::default_tgrid`]) this exactly undoes [`olct_fast`] on the
/// matched output grid.
pub fn olct_inverse(spec: &ComplexSpectrum, params: &OlctParams, tgrid: &Grid) -> Result<ComplexSignal> {
    params.check_transformable()?;
    let wgrid = spec.grid();
    let (t0, w0) = (tgrid.start(), wgrid.start());
    let b = params.b;
    // conj kernel phase: −time(t) − output(w) + t·w/B, with
    // t_k w_m = w_m t0 + w0 (t_k − t0) + km·ΔtΔw.
    let pre: Vec<ComplexE2> = spec
        .samples()
        .iter()
        .enumerate()
        .map(|(m, &fv)| {
            let w = wgrid.at(m);
            fv * ComplexE2::cis(-params.output_chirp_phase(w) + w * t0 / b)
        })
        .collect();
    let beta = -tgrid.step() * wgrid.step() / b;
    let core = fractional_dft(&pre, beta, tgrid.count());
    let scale = params.kernel_constant().conj() * wgrid.step();
    let samples = core
        .into_iter()
        .enumerate()
        .map(|(k, y)| {
            let t = tgrid.at(k);
            y * scale * ComplexE2::cis(-params.time_chirp_phase(t) + w0 * (t - t0) / b)
        })
        .collect();
    Sampled::new(*tgrid, samples)
}

/// Output-domain phase of the convolution theorem,
/// `exp{i(2w(Dp − Bq) − D(w² + p²)) / 2B}`.
#[inline]
pub fn convolution_phase(params: &OlctParams, w: f64) -> ComplexE2 {
    ComplexE2::cis(-params.output_chirp_phase(w))
}

/// The same factor without the constant `p²` term, `exp{i(2w(Dp − Bq) − Dw²) / 2B}`.
///
/// Differs from [`convolution_phase`] by `e^{iDp²/2B}`; kept for reporting.
#[inline]
pub fn convolution_phase_w2_only(params: &OlctParams, w: f64) -> ComplexE2 {
    let OlctParams { b, d, p, q, .. } = *params;
    ComplexE2::cis((2.0 * w * (d * p - b * q) - d * w * w) / (2.0 * b))
}

/// Chirp-weighted convolution
/// `(f ⊛ g)(t) = (1/√(i2πB))·∫ f(τ)·g(t − τ)·e^{i(A/B)τ(τ − t)} dτ`.
///
/// It satisfies `O_Λ[f ⊛ g] = O_Λ[f]·O_Λ[g]·conj(e^{i·output_chirp})`, i.e.
/// the product times [`convolution_phase`]. The result lives on the input
/// grid, which must contain the origin on its lattice so that `t − τ` is a
/// sample point; terms with `t − τ` outside the grid are dropped.
pub fn olct_convolve(f: &ComplexSignal, g: &ComplexSignal, params: &OlctParams) -> Result<ComplexSignal> {
    params.check_transformable()?;
    f.grid().ensure_matches(g.grid(), "convolution")?;
    let grid = *f.grid();
    let origin = grid.origin_index().ok_or_else(|| {
        Error::Shape(format!("convolution requires the origin on the sample lattice, grid {grid:?}"))
    })?;
    let n = grid.count() as i64;
    let slope = params.a / params.b;
    let scale = params.kernel_constant() * grid.step();
    let (fs, gs) = (f.samples(), g.samples());
    let samples = (0..n)
        .map(|k| {
            let t = grid.at(k as usize);
            // g index j for τ_i: t_k − τ_i = t_j  ⇔  j = k − i + origin
            let lo = (k + origin - n + 1).max(0);
            let hi = (k + origin).min(n - 1);
            let mut acc = ComplexE2::new(0.0, 0.0);
            for i in lo..=hi {
                let tau = grid.at(i as usize);
                let j = (k - i + origin) as usize;
                acc += fs[i as usize] * gs[j] * ComplexE2::cis(slope * tau * (tau - t));
            }
            acc * scale
        })
        .collect();
    Sampled::new(grid, samples)
}

/// `O_Λ⁻¹[conj(O_Λ[v])]` on the matched grids of `v`: the signal whose
/// transform is the complex conjugate of the transform of `v`.
///
/// In the continuum this is `O_Λ⁻¹·O_Λ̃` applied to `v̄` (a transform with
/// matrix `M⁻¹M̃`); when `Λ̃ = Λ⁻¹` it is the `O_{Λ⁻²}` operator that appears in
/// the quaternion convolution. Exact on the discrete level.
pub fn spectral_conjugate_preimage(v: &ComplexSignal, params: &OlctParams) -> Result<ComplexSignal> {
    let wgrid = params.default_wgrid(v.grid());
    let spec = olct_fast(v, params, &wgrid)?;
    let conj = spec.map(|c| c.conj());
    olct_inverse(&conj, params, v.grid())
}
