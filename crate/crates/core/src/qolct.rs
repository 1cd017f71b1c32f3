//! The quaternion transform: a quaternion-valued signal integrated against the
//! `span{1, e₂}` kernel placed on the right.
//!
//! Because the kernel sits on the right, left multiplication by a quaternion
//! constant commutes with the transform. The fast path uses the symplectic
//! split `f = u + e₁v` (`u, v ∈ span{1, e₂}`): `f·K = u·K + e₁·(v·K)`, so the
//! quaternion transform is two complex transforms rejoined.

use crate::error::{Error, Result};
use crate::grid::{Grid, Sampled};
use crate::olct::{self, ComplexSignal, Method};
use crate::params::OlctParams;
use crate::quaternion::{ComplexE2, Quaternion};
use crate::report::VerificationReport;

pub type SampledSignal = Sampled<Quaternion>;
pub type Spectrum = Sampled<Quaternion>;

/// `x` and `z` components above this disqualify a signal from being `e₂`-complex.
pub const E2_COMPLEX_TOL: f64 = 1e-14;

/// Splits every sample as `u + e₁v`.
pub fn split(f: &Sampled<Quaternion>) -> (ComplexSignal, ComplexSignal) {
    (f.map(|q| q.symplectic_split().0), f.map(|q| q.symplectic_split().1))
}

/// Rejoins `u + e₁v` sample by sample.
pub fn join(u: &ComplexSignal, v: &ComplexSignal) -> Result<Sampled<Quaternion>> {
    u.zip_with(v, |a, b| Quaternion::symplectic_join(*a, *b))
}

/// Embeds a complex series into `span{1, e₂}`.
pub fn embed(u: &ComplexSignal) -> Sampled<Quaternion> {
    u.map(|c| Quaternion::from_e2(*c))
}

/// Forward transform `Δt·Σₙ f(tₙ)·K_Λ(tₙ, w)` on `wgrid`.
pub fn qolct_forward(f: &SampledSignal, params: &OlctParams, wgrid: &Grid, method: Method) -> Result<Spectrum> {
    params.check_transformable()?;
    match method {
        Method::Direct => {
            let tgrid = f.grid();
            let dt = tgrid.step();
            let samples = wgrid
                .points()
                .map(|w| {
                    let acc: Quaternion = f
                        .samples()
                        .iter()
                        .enumerate()
                        .map(|(n, &fv)| fv * Quaternion::from_e2(params.kernel(tgrid.at(n), w)))
                        .sum();
                    acc * dt
                })
                .collect();
            Sampled::new(*wgrid, samples)
        }
        Method::Fast => {
            let (u, v) = split(f);
            join(&olct::olct_fast(&u, params, wgrid)?, &olct::olct_fast(&v, params, wgrid)?)
        }
    }
}

/// Inverse transform `∫ F(w)·conj(K_Λ(t, w)) dw` on `tgrid`.
pub fn qolct_inverse(spec: &Spectrum, params: &OlctParams, tgrid: &Grid) -> Result<SampledSignal> {
    qolct_inverse_with(spec, params, tgrid, Method::Fast)
}

pub fn qolct_inverse_with(spec: &Spectrum, params: &OlctParams, tgrid: &Grid, method: Method) -> Result<SampledSignal> {
    let (u, v) = split(spec);
    let inv = |s: &ComplexSignal| match method {
        Method::Direct => olct::olct_inverse_direct(s, params, tgrid),
        Method::Fast => olct::olct_inverse(s, params, tgrid),
    };
    join(&inv(&u)?, &inv(&v)?)
}

/// Discrete inner product `⟨f, g⟩ = Δ·Σ f(tₙ)·g(tₙ)ᶜ`.
pub fn qdot(f: &Sampled<Quaternion>, g: &Sampled<Quaternion>) -> Result<Quaternion> {
    f.grid().ensure_matches(g.grid(), "inner product")?;
    let s: Quaternion = f.samples().iter().zip(g.samples()).map(|(a, b)| *a * b.conj()).sum();
    Ok(s * f.grid().step())
}

/// `‖f‖₂ = √(Δ·Σ|f(tₙ)|²)`.
pub fn qnorm(f: &Sampled<Quaternion>) -> f64 {
    (f.samples().iter().map(|q| q.norm_sqr()).sum::<f64>() * f.grid().step()).sqrt()
}

pub fn is_e2_complex(f: &SampledSignal) -> bool {
    f.samples().iter().all(|q| q.is_e2_complex(E2_COMPLEX_TOL))
}

/// `O_Λ[f̄]` for an `e₂`-complex `f`, on the matched output grid.
///
/// For such signals `O_Λ[f̄] = conj(O_Λ̃[f])` with `Λ̃ = (A, −B, −C, D | p, −q)`,
/// which reduces to `conj(O_Λ⁻¹[f])` when `Λ̃ = Λ⁻¹`.
pub fn qolct_conjugate_transform(f: &SampledSignal, params: &OlctParams) -> Result<Spectrum> {
    if !is_e2_complex(f) {
        return Err(Error::Domain(
            "conjugation identity is defined for e2-complex signals (x = z = 0)".into(),
        ));
    }
    let wgrid = params.default_wgrid(f.grid());
    qolct_forward(&f.map(|q| q.conj()), params, &wgrid, Method::Fast)
}

/// Inner-product preservation `⟨f, g⟩ = ⟨O_Λ[f], O_Λ[g]⟩` on the matched grid.
///
/// The residual is the quaternion modulus of the difference over `‖f‖‖g‖`.
pub fn qmoyal(f: &SampledSignal, g: &SampledSignal, params: &OlctParams) -> Result<VerificationReport> {
    f.grid().ensure_matches(g.grid(), "moyal")?;
    let wgrid = params.default_wgrid(f.grid());
    let ff = qolct_forward(f, params, &wgrid, Method::Fast)?;
    let gg = qolct_forward(g, params, &wgrid, Method::Fast)?;
    let time_side = qdot(f, g)?;
    let spec_side = qdot(&ff, &gg)?;
    let scale = qnorm(f) * qnorm(g);
    let diff = (time_side - spec_side).norm();
    let residual = if scale > 1e-12 { diff / scale } else { diff };
    let mut report = VerificationReport::new("moyal", crate::report::QUADRATURE_TOL);
    report.record(residual);
    report.note(format!("time-side inner product {time_side}"));
    report.note(format!("transform-side inner product {spec_side}"));
    Ok(report)
}

/// Quaternion convolution `f ∗ g` built so that
/// `O_Λ[f ∗ g](w) = O_Λ[f](w)·O_Λ[g](w)·exp{e₂(2w(Dp − Bq) − D(w² + p²))/2B}`.
///
/// With `f = u_f + e₁v_f`, `g = u_g + e₁v_g` and the rule `z·e₁ = e₁·z̄` for
/// `z ∈ span{1, e₂}`, the product of transforms is
/// `(F_u·G_u − F̄_v·G_v) + e₁(F̄_u·G_v + F_v·G_u)`. Each term is realized with
/// the scalar chirp convolution `⊛`; the conjugated factors `F̄` come from
/// [`olct::spectral_conjugate_preimage`].
pub fn qconvolve(f: &SampledSignal, g: &SampledSignal, params: &OlctParams) -> Result<SampledSignal> {
    f.grid().ensure_matches(g.grid(), "convolution")?;
    let (uf, vf) = split(f);
    let (ug, vg) = split(g);
    let conv = |a: &ComplexSignal, b: &ComplexSignal| olct::olct_convolve(a, b, params);
    let rv = olct::spectral_conjugate_preimage(&vf, params)?;
    let ru = olct::spectral_conjugate_preimage(&uf, params)?;
    let hu = conv(&uf, &ug)?.zip_with(&conv(&rv, &vg)?, |a, b| a - b)?;
    let hv = conv(&ru, &vg)?.zip_with(&conv(&vf, &ug)?, |a, b| a + b)?;
    join(&hu, &hv)
}

/// `O_Λ[f̄·g]` on the matched output grid, with the pointwise quaternion product `f(t)ᶜ·g(t)`.
pub fn qproduct(f: &SampledSignal, g: &SampledSignal, params: &OlctParams) -> Result<Spectrum> {
    let fg = f.zip_with(g, |a, b| a.conj() * *b)?;
    let wgrid = params.default_wgrid(f.grid());
    qolct_forward(&fg, params, &wgrid, Method::Fast)
}

/// Scalar spectral product `X ⊗ Y = O_Λ[O_Λ⁻¹[X]·O_Λ⁻¹[Y]]`, so that
/// `O_Λ[a]⊗O_Λ[b] = O_Λ[a·b]`.
pub fn spectral_product(
    x: &Sampled<ComplexE2>,
    y: &Sampled<ComplexE2>,
    params: &OlctParams,
    tgrid: &Grid,
) -> Result<Sampled<ComplexE2>> {
    x.grid().ensure_matches(y.grid(), "spectral product")?;
    let a = olct::olct_inverse(x, params, tgrid)?;
    let b = olct::olct_inverse(y, params, tgrid)?;
    olct::olct_fast(&a.zip_with(&b, |s, t| s * t)?, params, x.grid())
}

/// `O_Λ[ū]` from `X = O_Λ[u]` via the conjugation identity
/// `O_Λ[ū] = conj(O_Λ̃[u])`.
pub fn spectral_conjugate(x: &Sampled<ComplexE2>, params: &OlctParams, tgrid: &Grid) -> Result<Sampled<ComplexE2>> {
    let u = olct::olct_inverse(x, params, tgrid)?;
    let mirrored = olct::olct_fast(&u, &params.conjugate(), x.grid())?;
    Ok(mirrored.map(|c| c.conj()))
}

/// Quaternion spectral product `F ⊗ G` with `O_Λ[f]⊗O_Λ[g] = O_Λ[f̄·g]`,
/// assembled from the `span{1, e₂}` components of `F` and `G` only.
///
/// `f̄g = (ū_f·u_g + v̄_f·v_g) + e₁(u_f·v_g − v_f·u_g)`, so
/// `F ⊗ G = (C[F_u]⊗G_u + C[F_v]⊗G_v) + e₁(F_u⊗G_v − F_v⊗G_u)` where `C` is
/// [`spectral_conjugate`].
pub fn qspectral_product(f_spec: &Spectrum, g_spec: &Spectrum, params: &OlctParams, tgrid: &Grid) -> Result<Spectrum> {
    f_spec.grid().ensure_matches(g_spec.grid(), "spectral product")?;
    let (fu, fv) = split(f_spec);
    let (gu, gv) = split(g_spec);
    let prod = |x: &Sampled<ComplexE2>, y: &Sampled<ComplexE2>| spectral_product(x, y, params, tgrid);
    let cfu = spectral_conjugate(&fu, params, tgrid)?;
    let cfv = spectral_conjugate(&fv, params, tgrid)?;
    let re = prod(&cfu, &gu)?.zip_with(&prod(&cfv, &gv)?, |a, b| a + b)?;
    let im = prod(&fu, &gv)?.zip_with(&prod(&fv, &gu)?, |a, b| a - b)?;
    join(&re, &im)
}

/// Right-multiplies every spectrum sample by the matching mask sample.
pub fn apply_mask(spec: &Spectrum, mask: &Sampled<Quaternion>) -> Result<Spectrum> {
    spec.grid().ensure_matches(mask.grid(), "mask")?;
    spec.zip_with(mask, |s, m| *s * *m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Preset;
    use std::f64::consts::PI;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel_l2(a: &[Quaternion], b: &[Quaternion]) -> f64 {
        let num: f64 = a.iter().zip(b).map(|(x, y)| (*x - *y).norm_sqr()).sum();
        let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
        if den < 1e-24 {
            num.sqrt()
        } else {
            (num / den).sqrt()
        }
    }

    fn grid(n: usize) -> Grid {
        Grid::centered((2.0 * PI / n as f64).sqrt(), n).unwrap()
    }

    fn quaternion_gaussian(g: Grid, rng: &mut ChaCha8Rng) -> SampledSignal {
        let comps: Vec<(f64, f64, f64)> = (0..4)
            .map(|_| (rng.random_range(-2.0..2.0), rng.random_range(0.8..2.0), rng.random_range(-1.0..1.0)))
            .collect();
        Sampled::from_fn(g, |t| {
            let v: Vec<f64> = comps.iter().map(|(c, s, a)| a * (-(t - c) * (t - c) / (2.0 * s * s)).exp()).collect();
            Quaternion::new(v[0], v[1], v[2], v[3])
        })
    }

    #[test]
    fn e2_complex_signal_matches_scalar_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = grid(128);
        let l = OlctParams::new(1.0, 2.0, 0.0, 1.0, 0.3, -0.1).unwrap();
        let f = quaternion_gaussian(g, &mut rng).map(|q| Quaternion::new(q.w, 0.0, q.y, 0.0));
        let w = l.default_wgrid(&g);
        let scalar = olct::olct_fast(&f.map(|q| q.e2_part()), &l, &w).unwrap();
        let quat = qolct_forward(&f, &l, &w, Method::Fast).unwrap();
        for (q, c) in quat.samples().iter().zip(scalar.samples()) {
            assert_eq!(*q, Quaternion::from_e2(*c));
        }
    }

    #[test]
    fn real_signal_kernel_side_is_irrelevant() {
        let g = grid(64);
        let l = Preset::Qft.params().unwrap();
        let f = Sampled::from_fn(g, |t| Quaternion::real((-t * t).exp() * (1.0 + t)));
        let w = l.default_wgrid(&g);
        let right = qolct_forward(&f, &l, &w, Method::Direct).unwrap();
        for (m, r) in right.samples().iter().enumerate() {
            let left: Quaternion = f
                .samples()
                .iter()
                .enumerate()
                .map(|(n, fv)| Quaternion::from_e2(l.kernel(g.at(n), w.at(m))) * *fv)
                .sum::<Quaternion>()
                * g.step();
            assert!((*r - left).norm() < 1e-14);
        }
    }

    #[test]
    fn fast_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = grid(512);
        let l = OlctParams::new(0.7, -1.3, (0.7 * 0.4 - 1.0) / -1.3, 0.4, 0.5, 0.2).unwrap();
        let f = quaternion_gaussian(g, &mut rng);
        let w = Grid::new(-7.0, 0.031, 300).unwrap();
        let a = qolct_forward(&f, &l, &w, Method::Fast).unwrap();
        let b = qolct_forward(&f, &l, &w, Method::Direct).unwrap();
        assert!(rel_l2(a.samples(), b.samples()) < 1e-9);
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = grid(1024);
        let cases = [
            // (1, 2, 0, 0.5) has AD − BC = 0.5; D = 1 restores unimodularity
            OlctParams::new(1.0, 2.0, 0.0, 1.0, 0.3, -0.1).unwrap(),
            Preset::Qfrft { theta: PI / 3.0 }.params().unwrap(),
        ];
        for l in cases {
            let f = quaternion_gaussian(g, &mut rng);
            let w = l.default_wgrid(&g);
            let back = qolct_inverse(&qolct_forward(&f, &l, &w, Method::Fast).unwrap(), &l, &g).unwrap();
            assert!(rel_l2(back.samples(), f.samples()) <= 1e-6);
        }
        let zero = Sampled::new(g, vec![Quaternion::ZERO; 1024]).unwrap();
        let l = cases[0];
        let back = qolct_inverse(&zero, &l, &g).unwrap();
        assert!(back.samples().iter().all(|q| *q == Quaternion::ZERO));
    }

    #[test]
    fn inner_product_basics() {
        let g = Grid::new(0.0, 1.0, 5).unwrap();
        let mut f = Sampled::new(g, vec![Quaternion::ZERO; 5]).unwrap();
        f.samples_mut()[2] = Quaternion::ONE;
        assert_eq!(qdot(&f, &f).unwrap(), Quaternion::ONE);

        // ∫ e^{−2t²} dt = √(π/2)
        let wide = Grid::centered(0.01, 2001).unwrap();
        let gauss = Sampled::from_fn(wide, |t| Quaternion::real((-t * t).exp()));
        let v = qdot(&gauss, &gauss).unwrap();
        assert!((v.w - (PI / 2.0).sqrt()).abs() < 1e-12);
        assert_eq!((v.x, v.y, v.z), (0.0, 0.0, 0.0));

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = quaternion_gaussian(wide, &mut rng);
        let b = quaternion_gaussian(wide, &mut rng);
        let ab = qdot(&a, &b).unwrap();
        let ba = qdot(&b, &a).unwrap();
        assert!((ab.conj() - ba).norm() < 1e-12);
        let aa = qdot(&a, &a).unwrap();
        assert!(aa.x.abs() + aa.y.abs() + aa.z.abs() < 1e-14 && aa.w >= 0.0);

        let other = Sampled::new(Grid::new(0.0, 2.0, 5).unwrap(), vec![Quaternion::ONE; 5]).unwrap();
        assert!(matches!(qdot(&f, &other), Err(Error::Shape(_))));
    }

    #[test]
    fn conjugate_transform_rejects_full_quaternions() {
        let g = grid(32);
        let l = Preset::Qft.params().unwrap();
        let f = Sampled::from_fn(g, |t| Quaternion::new(t, 1e-3, 0.0, 0.0));
        assert!(matches!(qolct_conjugate_transform(&f, &l), Err(Error::Domain(_))));
    }

    #[test]
    fn conjugation_identity_for_symmetric_params() {
        let g = grid(256);
        // chirped Gaussian e^{e2 t²} e^{−t²}
        let f = Sampled::from_fn(g, |t| Quaternion::from_e2(ComplexE2::cis(t * t) * (-t * t).exp()));
        for l in [Preset::Qft.params().unwrap(), Preset::Qfrft { theta: 0.4 }.params().unwrap()] {
            assert!(l.is_conjugation_symmetric(1e-12));
            let lhs = qolct_conjugate_transform(&f, &l).unwrap();
            let w = l.default_wgrid(&g);
            let rhs = qolct_forward(&f, &l.inverse(), &w, Method::Direct).unwrap().map(|q| q.conj());
            assert!(rel_l2(lhs.samples(), rhs.samples()) < 1e-8);
        }
    }

    #[test]
    fn moyal_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = grid(1024);
        let l = OlctParams::new(1.0, 2.0, 0.0, 1.0, 0.3, -0.1).unwrap();
        let f = quaternion_gaussian(g, &mut rng);
        let h = quaternion_gaussian(g, &mut rng);
        let r = qmoyal(&f, &h, &l).unwrap();
        assert!(r.passed(), "{}", r.summary());
        let gauss = Sampled::from_fn(g, |t| Quaternion::real((-t * t).exp()));
        let r = qmoyal(&gauss, &gauss, &l).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn convolution_reduces_to_scalar_for_e2_signals() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let g = grid(128);
        let l = OlctParams::new(1.0, 1.0, 0.0, 1.0, 0.2, 0.1).unwrap();
        let e2 = |q: &Quaternion| Quaternion::new(q.w, 0.0, q.y, 0.0);
        let f = quaternion_gaussian(g, &mut rng).map(e2);
        let h = quaternion_gaussian(g, &mut rng).map(e2);
        let quat = qconvolve(&f, &h, &l).unwrap();
        let scalar = olct::olct_convolve(&f.map(|q| q.e2_part()), &h.map(|q| q.e2_part()), &l).unwrap();
        for (q, c) in quat.samples().iter().zip(scalar.samples()) {
            assert_eq!(*q, Quaternion::from_e2(*c));
        }
    }

    #[test]
    fn convolution_with_delta_is_componentwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = grid(128);
        let l = OlctParams::new(0.0, 1.0, -1.0, 0.0, 0.0, 0.0).unwrap();
        let f = quaternion_gaussian(g, &mut rng);
        let mut delta = Sampled::new(g, vec![Quaternion::ZERO; 128]).unwrap();
        delta.samples_mut()[g.origin_index().unwrap() as usize] = Quaternion::real(3.0);
        let h = qconvolve(&f, &delta, &l).unwrap();
        let c = l.kernel_constant() * 3.0 * g.step();
        for (hv, fv) in h.samples().iter().zip(f.samples()) {
            let (u, v) = fv.symplectic_split();
            let want = Quaternion::symplectic_join(u * c, v * c);
            assert!((*hv - want).norm() < 1e-13);
        }
    }

    #[test]
    fn mask_multiplies_on_the_right() {
        let g = Grid::new(0.0, 1.0, 2).unwrap();
        let s = Sampled::new(g, vec![Quaternion::E1; 2]).unwrap();
        let m = Sampled::new(g, vec![Quaternion::E2; 2]).unwrap();
        assert_eq!(apply_mask(&s, &m).unwrap().samples()[0], Quaternion::E3);
    }
}
