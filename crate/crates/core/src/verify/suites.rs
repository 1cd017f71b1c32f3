//! The individual suites.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{Grid, Sampled};
use crate::olct::{self, Method};
use crate::params::{OlctParams, Preset};
use crate::qolct::{self, SampledSignal, Spectrum};
use crate::quaternion::Quaternion;
use crate::report::{VerificationReport, ALGEBRAIC_TOL, QUADRATURE_TOL};

use super::oracle::{inverse_root_e2_2pi, oracle_quadrature, oracle_transform, ORACLE_MAX_SAMPLES};
use super::signals::{SignalKind, SignalModel};
use super::{residual, Suite, TrialConfig};

/// Result of one trial: the headline residual, named secondary checks
/// `(name, residual, tolerance)`, and named diagnostics that are only reported.
#[derive(Debug, Default)]
struct Outcome {
    residual: f64,
    checks: Vec<(&'static str, f64, f64)>,
    metrics: Vec<(&'static str, f64)>,
}

impl Outcome {
    fn new(residual: f64) -> Self {
        Outcome { residual, ..Default::default() }
    }

    fn check(mut self, name: &'static str, residual: f64, tolerance: f64) -> Self {
        self.checks.push((name, residual, tolerance));
        self
    }

    fn metric(mut self, name: &'static str, value: f64) -> Self {
        self.metrics.push((name, value));
        self
    }
}

pub(super) fn run(suite: Suite, cfg: &TrialConfig) -> Result<VerificationReport> {
    let (tolerance, outcomes, notes): (f64, Vec<Outcome>, &[&str]) = match suite {
        Suite::Roundtrip => (QUADRATURE_TOL, trials(cfg, roundtrip)?, &[]),
        Suite::Linearity => (
            1e-12,
            trials(cfg, linearity)?,
            &["scalars multiply from the left; right_scalar_residual shows right scalars do not factor out"],
        ),
        Suite::Moyal => (QUADRATURE_TOL, trials(cfg, moyal)?, &[]),
        Suite::Conjugation => (
            1e-8,
            trials(cfg, conjugation)?,
            &[
                "headline: O_L[conj f] = conj(O_L~[f]) with L~ = (A,-B,-C,D|p,-q), general L",
                "literal/remark checks: O_L[conj f] = conj(O_L^-1[f]) and O_L^-1[conj f] = conj(O_L[f]) on the class L~ = L^-1",
                "literal_general_residual: the literal form on general L (not expected to vanish)",
            ],
        ),
        Suite::Convolution => {
            let mut all = trials(cfg, |rng, _| convolution(rng, cfg, false))?;
            let shifted = TrialConfig { seed: cfg.seed.wrapping_add(0x9e37_79b9), ..cfg.clone() };
            all.extend(trials(&shifted, |rng, _| convolution(rng, cfg, true))?);
            (
                QUADRATURE_TOL,
                all,
                &[
                    "half the trials use p = q = 0 against the w^2-only phase, half use p != 0 against the (w^2+p^2) phase",
                    "w2_only_phase_residual: the w^2-only phase applied to the p != 0 trials",
                    "reversed_order_residual: the product taken as G*F instead of F*G",
                ],
            )
        }
        Suite::Product => (
            QUADRATURE_TOL,
            trials(cfg, product)?,
            &["headline: f real, g e2-complex; quaternion check: general f, g through the componentwise spectral product"],
        ),
        Suite::Composition => (
            1e-5,
            trials(cfg, composition)?,
            &["O_L[O_G f] compared with O_LG[f]*c, c estimated at the peak sample"],
        ),
        Suite::SpecialCases => (
            1e-10,
            trials(cfg, special_cases)?,
            &["headline: Fourier preset against an independent quaternion Fourier quadrature"],
        ),
        Suite::FastVsDirect => {
            if cfg.n_samples > ORACLE_MAX_SAMPLES {
                return Err(Error::Usage(format!(
                    "fast_vs_direct runs the O(N^2) paths and is limited to N <= {ORACLE_MAX_SAMPLES}"
                )));
            }
            (ALGEBRAIC_TOL, trials(cfg, fast_vs_direct)?, &["oracle_vs_direct: independent quadrature vs the direct path"])
        }
    };

    let mut report = VerificationReport::new(suite.name(), cfg.tolerance.unwrap_or(tolerance));
    let mut metrics: Vec<(&str, f64)> = Vec::new();
    for o in &outcomes {
        report.record(o.residual);
        for &(name, r, tol) in &o.checks {
            report.check(name, r, tol);
        }
        for &(name, v) in &o.metrics {
            match metrics.iter_mut().find(|(n, _)| *n == name) {
                Some((_, m)) => *m = m.max(v),
                None => metrics.push((name, v)),
            }
        }
    }
    report.note(format!("seed={} n_samples={}", cfg.seed, cfg.n_samples));
    for n in notes {
        report.note(*n);
    }
    for (name, v) in metrics {
        report.note(format!("max {name} = {v:.3e}"));
    }
    Ok(report)
}

/// Runs `cfg.n_trials` trials in parallel, each on its own random stream.
fn trials<F>(cfg: &TrialConfig, trial: F) -> Result<Vec<Outcome>>
where
    F: Fn(&mut ChaCha8Rng, &TrialConfig) -> Result<Outcome> + Sync,
{
    (0..cfg.n_trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.rng(i);
            trial(&mut rng, cfg)
        })
        .collect()
}

fn kind(rng: &mut impl Rng) -> SignalKind {
    SignalKind::ALL[rng.random_range(0..SignalKind::ALL.len())]
}

fn model(rng: &mut impl Rng, grid: &Grid) -> SignalModel {
    let k = kind(rng);
    SignalModel::random(rng, k, grid.span())
}

/// A random signal that is guaranteed not to vanish.
fn nonzero(f: SampledSignal) -> Result<SampledSignal> {
    if qolct::qnorm(&f) > 0.0 {
        Ok(f)
    } else {
        Err(Error::Domain("random signal has zero energy".into()))
    }
}

fn random_quaternion(rng: &mut impl Rng) -> Quaternion {
    let mut c = || rng.random_range(-1.0..=1.0);
    Quaternion::new(c(), c(), c(), c())
}

fn conj_all(s: &Spectrum) -> Spectrum {
    s.map(|q| q.conj())
}

fn right_phase(s: &Spectrum, phase: impl Fn(f64) -> Quaternion) -> Spectrum {
    let grid = *s.grid();
    let samples = s.samples().iter().enumerate().map(|(j, v)| *v * phase(grid.at(j))).collect();
    Sampled::new(grid, samples).expect("length preserved")
}

fn roundtrip(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> Result<Outcome> {
    let grid = cfg.grid();
    let params = cfg.ranges.draw(rng)?;
    let f = nonzero(model(rng, &grid).sample(&grid))?;
    let spec = qolct::qolct_forward(&f, &params, &params.default_wgrid(&grid), Method::Fast)?;
    let back = qolct::qolct_inverse(&spec, &params, &grid)?;
    Ok(Outcome::new(residual(back.samples(), f.samples())))
}

fn linearity(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> Result<Outcome> {
    let grid = cfg.grid();
    let params = cfg.ranges.draw(rng)?;
    let f = nonzero(model(rng, &grid).sample(&grid))?;
    let g = nonzero(model(rng, &grid).sample(&grid))?;
    let (alpha, beta) = (random_quaternion(rng), random_quaternion(rng));
    let wgrid = params.default_wgrid(&grid);
    let mix = f.zip_with(&g, |a, b| alpha * *a + beta * *b)?;

    let mut worst: f64 = 0.0;
    for method in [Method::Direct, Method::Fast] {
        let ff = qolct::qolct_forward(&f, &params, &wgrid, method)?;
        let gg = qolct::qolct_forward(&g, &params, &wgrid, method)?;
        let lhs = qolct::qolct_forward(&mix, &params, &wgrid, method)?;
        let rhs = ff.zip_with(&gg, |a, b| alpha * *a + beta * *b)?;
        worst = worst.max(residual(lhs.samples(), rhs.samples()));
    }

    let fr = f.map(|a| *a * alpha);
    let lhs = qolct::qolct_forward(&fr, &params, &wgrid, Method::Fast)?;
    let rhs = qolct::qolct_forward(&f, &params, &wgrid, Method::Fast)?.map(|a| *a * alpha);
    Ok(Outcome::new(worst).metric("right_scalar_residual", residual(lhs.samples(), rhs.samples())))
}

fn moyal(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> Result<Outcome> {
    let grid = cfg.grid();
    let params = cfg.ranges.draw(rng)?;
    let f = nonzero(model(rng, &grid).sample(&grid))?;
    let g = nonzero(model(rng, &grid).sample(&grid))?;
    let report = qolct::qmoyal(&f, &g, &params)?;
    let spec = qolct::qolct_forward(&f, &params, &params.default_wgrid(&grid), Method::Fast)?;
    let (e_t, e_w) = (qolct::qnorm(&f), qolct::qnorm(&spec));
    Ok(Outcome::new(report.max_residual).check("energy", (e_t - e_w).abs() / e_t, QUADRATURE_TOL))
}

fn conjugation(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> Result<Outcome> {
    let grid = cfg.grid();
    let f = nonzero(model(rng, &grid).e2_complex().sample(&grid))?;
    let fbar = f.map(|q| q.conj());

    // general Λ: corrected identity, and the literal one for reference
    let params = cfg.ranges.draw(rng)?;
    let wgrid = params.default_wgrid(&grid);
    let lhs = qolct::qolct_conjugate_transform(&f, &params)?;
    let mirrored = conj_all(&qolct::qolct_forward(&f, &params.conjugate(), &wgrid, Method::Direct)?);
    let headline = residual(lhs.samples(), mirrored.samples());
    let literal = conj_all(&qolct::qolct_forward(&f, &params.inverse(), &wgrid, Method::Direct)?);
    let literal_general = residual(lhs.samples(), literal.samples());

    // Λ with Λ̃ = Λ⁻¹: literal statement and its remark form
    let sym = cfg.ranges.draw_conjugation_symmetric(rng)?;
    let inv = sym.inverse();
    let wgrid = sym.default_wgrid(&grid);
    let lhs = qolct::qolct_conjugate_transform(&f, &sym)?;
    let rhs = conj_all(&qolct::qolct_forward(&f, &inv, &wgrid, Method::Direct)?);
    let lemma = residual(lhs.samples(), rhs.samples());
    let lhs = qolct::qolct_forward(&fbar, &inv, &wgrid, Method::Fast)?;
    let rhs = conj_all(&qolct::qolct_forward(&f, &sym, &wgrid, Method::Direct)?);
    let remark = residual(lhs.samples(), rhs.samples());

    Ok(Outcome::new(headline)
        .check("literal", lemma, 1e-8)
        .check("remark", remark, 1e-8)
        .metric("literal_general_residual", literal_general))
}

/// Whether `f`, `g` (extents `(T, Ω)`) and `f ∗ g` are resolved under `Λ`.
///
/// Each transform has to stay below the Nyquist frequency `H = π/Δt`, and every
/// scalar convolution inside `f ∗ g` has to fit in the window `|t| ≤ H`. The
/// components of `f` enter both directly and through the conjugate-spectrum
/// preimage, which is a transform with matrix `[[AD+BC, −2BD], [−2AC, AD+BC]]`
/// and time offset `2Bq`, so it spreads `f` to `|t| ≤ |AD+BC|·T + 2|Bq| + 2|BD|·Ω`.
fn convolution_resolved(params: &OlctParams, f: (f64, f64), g: (f64, f64), h: f64) -> bool {
    const MARGIN: f64 = 0.9;
    let OlctParams { a, b, c, d, q, .. } = *params;
    let fits = |(t, omega): (f64, f64)| (a / b).abs() * t + (params.p / b).abs() + omega <= MARGIN * h;
    let spread = (a * d + b * c).abs() * f.0 + 2.0 * (b * q).abs() + 2.0 * (b * d).abs() * f.1;
    fits(f) && fits(g) && f.0.max(spread) + g.0 <= MARGIN * h
}

fn convolution(rng: &mut ChaCha8Rng, cfg: &TrialConfig, offsets: bool) -> Result<Outcome> {
    let grid = cfg.grid();
    let h = PI / grid.step();
    let ranges = if offsets { cfg.ranges } else { cfg.ranges.without_offsets() };
    let mut attempts = 0;
    let (params, f, g) = loop {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::Usage("no parameter draw resolves the convolution on this grid".into()));
        }
        let params = ranges.draw(rng)?;
        let (mf, mg) = (model(rng, &grid), model(rng, &grid));
        if offsets && params.p.abs() < 0.1 {
            continue;
        }
        if convolution_resolved(&params, mf.extent(), mg.extent(), h) {
            break (params, nonzero(mf.sample(&grid))?, nonzero(mg.sample(&grid))?);
        }
    };
    let wgrid = params.default_wgrid(&grid);
    let h = qolct::qconvolve(&f, &g, &params)?;
    let hh = qolct::qolct_forward(&h, &params, &wgrid, Method::Fast)?;
    let ff = qolct::qolct_forward(&f, &params, &wgrid, Method::Fast)?;
    let gg = qolct::qolct_forward(&g, &params, &wgrid, Method::Fast)?;
    let fg = ff.zip_with(&gg, |a, b| *a * *b)?;
    let gf = gg.zip_with(&ff, |a, b| *a * *b)?;

    let derived = right_phase(&fg, |w| Quaternion::from_e2(olct::convolution_phase(&params, w)));
    let w2_only = right_phase(&fg, |w| Quaternion::from_e2(olct::convolution_phase_w2_only(&params, w)));
    let reversed = right_phase(&gf, |w| Quaternion::from_e2(olct::convolution_phase(&params, w)));

    let mut out = if offsets {
        Outcome::new(residual(hh.samples(), derived.samples()))
            .metric("w2_only_phase_residual", residual(hh.samples(), w2_only.samples()))
    } else {
        Outcome::new(residual(hh.samples(), w2_only.samples()))
    };
    out = out
        .metric("reversed_order_residual", residual(hh.samples(), reversed.samples()))
        .metric("rejected_draws", (attempts - 1) as f64);
    Ok(out)
}

fn product(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> Result<Outcome> {
    let grid = cfg.grid();
    let params = cfg.ranges.draw(rng)?;
    let wgrid = params.default_wgrid(&grid);
    let forward = |s: &SampledSignal| qolct::qolct_forward(s, &params, &wgrid, Method::Fast);

    // commuting subcase through the scalar pipeline
    let f = nonzero(model(rng, &grid).real().sample(&grid))?;
    let g = nonzero(model(rng, &grid).e2_complex().sample(&grid))?;
    let lhs = qolct::qproduct(&f, &g, &params)?;
    let (fu, _) = qolct::split(&forward(&f)?);
    let (gu, _) = qolct::split(&forward(&g)?);
    let rhs = qolct::embed(&qolct::spectral_product(&fu, &gu, &params, &grid)?);
    let commuting = residual(lhs.samples(), rhs.samples());

    // general quaternion signals
    let f = nonzero(model(rng, &grid).sample(&grid))?;
    let g = nonzero(model(rng, &grid).sample(&grid))?;
    let lhs = qolct::qproduct(&f, &g, &params)?;
    let rhs = qolct::qspectral_product(&forward(&f)?, &forward(&g)?, &params, &grid)?;
    Ok(Outcome::new(commuting).check("quaternion", residual(lhs.samples(), rhs.samples()), 1e-5))
}

/// Half-width of the window on which `O_Λ[O_Γ f]` and `O_ΛΓ[f]` are compared,
/// or `None` when the sampled grids cannot resolve them.
///
/// `f` is confined to `|t| ≤ T` with bandwidth `Ω`, and `H = π/Δt` is both the
/// Nyquist frequency of the time grid and the half-width of a matched `|B| = 1`
/// output grid. A transform maps a component at time `t` and frequency `ν` to
/// `w = At + p + Bν` with local frequency `(Dw − Dp + Bq − t)/B`, and each
/// local frequency met along the way has to stay below the Nyquist frequency
/// of the grid it is sampled on. Both discrete results are periodic in `w`
/// (periods `2H|B_ΛΓ|` and `2H|B_Λ/B_Γ|`), so the comparison window is kept
/// within half of each period.
fn composition_window(gamma: &OlctParams, lambda: &OlctParams, (t, omega): (f64, f64), h: f64) -> Option<f64> {
    const MARGIN: f64 = 0.9;
    let (g, l) = (gamma, lambda);
    let c = lambda.compose(gamma);
    if c.is_degenerate() {
        return None;
    }
    // Γ on the time grid: the image must fit the matched window H·|B_Γ|
    let w1 = g.a.abs() * t + g.p.abs() + g.b.abs() * omega;
    // Λ on the intermediate grid (Nyquist H/|B_Γ|); the chirps D_Γ/B_Γ and
    // A_Λ/B_Λ combine into B_ΛΓ/(B_Γ·B_Λ)
    let inner = (c.b / (g.b * l.b)).abs() * w1 + ((g.b * g.q - g.d * g.p) / g.b + l.p / l.b).abs() + t / g.b.abs();
    let w2 = c.a.abs() * t + c.p.abs() + c.b.abs() * omega;
    let window = h * c.b.abs().min((l.b / g.b).abs());
    (w1 <= MARGIN * h * g.b.abs() && inner <= MARGIN * h / g.b.abs() && w2 <= MARGIN * window).then_some(window)
}

fn composition(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> Result<Outcome> {
    let grid = cfg.grid();
    let h = PI / grid.step();
    let mut attempts = 0;
    let (gamma, lambda, f, window) = loop {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::Usage("no composable parameter pair resolves on this grid".into()));
        }
        let gamma = cfg.ranges.draw(rng)?;
        let lambda = cfg.ranges.draw(rng)?;
        let m = model(rng, &grid);
        if let Some(window) = composition_window(&gamma, &lambda, m.extent(), h) {
            break (gamma, lambda, nonzero(m.sample(&grid))?, window);
        }
    };
    let composed = lambda.compose(&gamma);
    let n = grid.count();
    let w1 = gamma.default_wgrid(&grid);
    let w2 = Grid::centered(2.0 * window / n as f64, n)?;
    let inner = qolct::qolct_forward(&f, &gamma, &w1, Method::Fast)?;
    let x = qolct::qolct_forward(&inner, &lambda, &w2, Method::Fast)?;
    let y = qolct::qolct_forward(&f, &composed, &w2, Method::Fast)?;

    let peak = y
        .samples()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
        .map(|(k, _)| k)
        .expect("non-empty");
    let c = y.samples()[peak].inv()? * x.samples()[peak];
    let scaled = y.map(|v| *v * c);
    Ok(Outcome::new(residual(x.samples(), scaled.samples()))
        .check("unit_modulus", (1.0 - c.norm()).abs(), 1e-6)
        .metric("rejected_draws", (attempts - 1) as f64))
}

fn special_cases(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> Result<Outcome> {
    let grid = cfg.grid();
    let f = nonzero(model(rng, &grid).sample(&grid))?;
    let e2_exp = |phi: f64| Quaternion::new(phi.cos(), 0.0, phi.sin(), 0.0);

    // Fourier: e^{−e₂π/4}·e^{−e₂tw}/√(2π)
    let qft = Preset::Qft.params()?;
    let wgrid = qft.default_wgrid(&grid);
    let fast = qolct::qolct_forward(&f, &qft, &wgrid, Method::Fast)?;
    let norm = e2_exp(-PI / 4.0) * (1.0 / (2.0 * PI).sqrt());
    let reference = oracle_quadrature(&f, &wgrid, |t, w| e2_exp(-t * w) * norm)?;
    let fourier = residual(fast.samples(), reference.samples());

    // linear canonical: (1/√(e₂2πB))·e^{e₂(At² − 2tw + Dw²)/2B}
    let lct = cfg.ranges.without_offsets().draw(rng)?;
    let (a, b, d) = (lct.a, lct.b, lct.d);
    let wgrid = lct.default_wgrid(&grid);
    let preset = Preset::Qlct { a: lct.a, b: lct.b, c: lct.c, d: lct.d }.params()?;
    let fast = qolct::qolct_forward(&f, &preset, &wgrid, Method::Fast)?;
    let norm = inverse_root_e2_2pi(b);
    let reference = oracle_quadrature(&f, &wgrid, |t, w| norm * e2_exp((a * t * t - 2.0 * t * w + d * w * w) / (2.0 * b)))?;
    let canonical = residual(fast.samples(), reference.samples());

    // fractional: (1/√(e₂2π sin θ))·e^{e₂(cot θ (t² + w²)/2 − csc θ·tw)}
    let theta = rng.random_range(0.2..=PI - 0.2) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let frac = Preset::Qfrft { theta }.params()?;
    let wgrid = frac.default_wgrid(&grid);
    let fast = qolct::qolct_forward(&f, &frac, &wgrid, Method::Fast)?;
    let (s, cot) = (theta.sin(), theta.cos() / theta.sin());
    let norm = inverse_root_e2_2pi(s);
    let reference =
        oracle_quadrature(&f, &wgrid, |t, w| norm * e2_exp(cot * (t * t + w * w) / 2.0 - t * w / s))?;
    let fractional = residual(fast.samples(), reference.samples());

    let same = Preset::Qfrft { theta: FRAC_PI_2 }.params()? == qft;
    Ok(Outcome::new(fourier)
        .check("qlct", canonical, 1e-8)
        .check("qfrft", fractional, 1e-8)
        .check("qfrft_half_pi_is_qft", if same { 0.0 } else { f64::INFINITY }, 0.0))
}

fn fast_vs_direct(rng: &mut ChaCha8Rng, cfg: &TrialConfig) -> Result<Outcome> {
    let grid = cfg.grid();
    let params = cfg.ranges.draw(rng)?;
    let f = nonzero(model(rng, &grid).sample(&grid))?;
    let matched = params.default_wgrid(&grid);
    let step = matched.step() * rng.random_range(0.5..=1.5);
    let count = rng.random_range(grid.count() / 2..=grid.count());
    let start = -(count as f64) * step / 2.0 + rng.random_range(-1.0..=1.0);
    let wgrid = Grid::new(start, step, count)?;
    let direct = qolct::qolct_forward(&f, &params, &wgrid, Method::Direct)?;
    let fast = qolct::qolct_forward(&f, &params, &wgrid, Method::Fast)?;
    let oracle = oracle_transform(&f, &params, &wgrid)?;
    Ok(Outcome::new(residual(fast.samples(), direct.samples())).check(
        "oracle_vs_direct",
        residual(oracle.samples(), direct.samples()),
        1e-12,
    ))
}
