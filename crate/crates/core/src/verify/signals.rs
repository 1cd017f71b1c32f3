//! Random smooth test signals that are well contained in the sampling window.

use std::str::FromStr;

use rand::Rng;

use crate::error::Error;
use crate::grid::Grid;
use crate::qolct::SampledSignal;
use crate::quaternion::Quaternion;

use super::TrialConfig;

/// Family of random signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalKind {
    /// One Gaussian per quaternion component.
    GaussianMix,
    /// Three modulated Gaussians per component.
    Bandlimited,
    /// One linearly chirped Gaussian per component.
    Chirped,
}

impl SignalKind {
    pub const ALL: [SignalKind; 3] = [SignalKind::GaussianMix, SignalKind::Bandlimited, SignalKind::Chirped];
}

impl FromStr for SignalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "gaussian_mix" => Ok(SignalKind::GaussianMix),
            "bandlimited" => Ok(SignalKind::Bandlimited),
            "chirped" => Ok(SignalKind::Chirped),
            other => Err(Error::Usage(format!("unknown signal kind '{other}'"))),
        }
    }
}

/// `amp·exp(−(t−c)²/2σ²)·cos(αt² + νt + φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Atom {
    amp: f64,
    center: f64,
    sigma: f64,
    chirp: f64,
    freq: f64,
    phase: f64,
}

impl Atom {
    fn random(rng: &mut impl Rng, kind: SignalKind, span: f64) -> Self {
        let (freq, chirp) = match kind {
            SignalKind::GaussianMix => (0.0, 0.0),
            SignalKind::Bandlimited => (rng.random_range(-2.0..=2.0), 0.0),
            SignalKind::Chirped => (rng.random_range(-1.0..=1.0), rng.random_range(-0.3..=0.3)),
        };
        Atom {
            amp: rng.random_range(0.2..=1.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 },
            center: rng.random_range(-span / 16.0..=span / 16.0),
            sigma: rng.random_range(span / 80.0..=span / 40.0),
            chirp,
            freq,
            phase: rng.random_range(0.0..std::f64::consts::TAU),
        }
    }

    fn eval(&self, t: f64) -> f64 {
        let x = (t - self.center) / self.sigma;
        self.amp * (-0.5 * x * x).exp() * (self.chirp * t * t + self.freq * t + self.phase).cos()
    }
}

/// A signal given in closed form, so it can be sampled on any grid.
///
/// Envelope widths lie in `[span/80, span/40]` and centres within `span/16` of
/// the window centre, so every atom sits more than ten widths inside the window.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalModel {
    components: [Vec<Atom>; 4],
}

impl SignalModel {
    /// Random model for a window of width `span` centred on the origin.
    pub fn random(rng: &mut impl Rng, kind: SignalKind, span: f64) -> Self {
        let atoms = match kind {
            SignalKind::Bandlimited => 3,
            SignalKind::GaussianMix | SignalKind::Chirped => 1,
        };
        let mut component = || (0..atoms).map(|_| Atom::random(rng, kind, span)).collect::<Vec<_>>();
        SignalModel { components: [component(), component(), component(), component()] }
    }

    /// Keeps only the real part.
    pub fn real(mut self) -> Self {
        for c in &mut self.components[1..] {
            c.clear();
        }
        self
    }

    /// Keeps only the `span{1, e₂}` part (`x = z = 0`).
    pub fn e2_complex(mut self) -> Self {
        self.components[1].clear();
        self.components[3].clear();
        self
    }

    /// `(T, Ω)`: every atom is below `e^{−40}` of its peak outside `|t| ≤ T`, and
    /// its spectrum likewise outside angular frequencies `|ν| ≤ Ω`.
    pub fn extent(&self) -> (f64, f64) {
        const WIDTHS: f64 = 9.0;
        let atoms = || self.components.iter().flatten();
        let t = atoms().map(|a| a.center.abs() + WIDTHS * a.sigma).fold(0.0, f64::max);
        let omega = atoms()
            .map(|a| a.freq.abs() + 2.0 * a.chirp.abs() * t + WIDTHS / a.sigma)
            .fold(0.0, f64::max);
        (t, omega)
    }

    pub fn eval(&self, t: f64) -> Quaternion {
        let c = |k: usize| self.components[k].iter().map(|a| a.eval(t)).sum::<f64>();
        Quaternion::new(c(0), c(1), c(2), c(3))
    }

    pub fn sample(&self, grid: &Grid) -> SampledSignal {
        SampledSignal::from_fn(*grid, |t| self.eval(t))
    }
}

/// The random signal a configuration generates for `kind` (stream 0 of its seed).
pub fn random_signal(cfg: &TrialConfig, kind: SignalKind) -> SampledSignal {
    let grid = cfg.grid();
    SignalModel::random(&mut cfg.rng(0), kind, grid.span()).sample(&grid)
}
