//! Randomized numerical checks of the transform identities.
//!
//! Every suite draws its parameters and signals from a per-trial random
//! stream derived from the configured seed, so a report is a pure function of
//! the configuration. Trials run in parallel; the reduction (a maximum) does
//! not depend on their order.

mod oracle;
mod signals;
mod suites;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::params::OlctParams;
use crate::quaternion::Quaternion;
use crate::report::VerificationReport;

pub use oracle::{oracle_quadrature, oracle_transform, ORACLE_MAX_SAMPLES};
pub use signals::{random_signal, SignalKind, SignalModel};

/// Closed intervals the random parameters are drawn from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamRanges {
    pub a: (f64, f64),
    /// Range of `|B|`; the sign is drawn separately.
    pub b_abs: (f64, f64),
    pub c: (f64, f64),
    pub d: (f64, f64),
    pub p: (f64, f64),
    pub q: (f64, f64),
}

impl Default for ParamRanges {
    fn default() -> Self {
        ParamRanges {
            a: (-1.5, 1.5),
            b_abs: (0.5, 2.0),
            c: (-1.5, 1.5),
            d: (-2.0, 2.0),
            p: (-1.0, 1.0),
            q: (-1.0, 1.0),
        }
    }
}

fn uniform(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}

fn contains((lo, hi): (f64, f64), v: f64) -> bool {
    lo <= v && v <= hi
}

impl ParamRanges {
    /// Same ranges with `p = q = 0`.
    pub fn without_offsets(self) -> Self {
        ParamRanges { p: (0.0, 0.0), q: (0.0, 0.0), ..self }
    }

    fn validate(&self) -> Result<()> {
        let all = [self.a, self.b_abs, self.c, self.d, self.p, self.q];
        if all.iter().any(|&(lo, hi)| !(lo.is_finite() && hi.is_finite() && lo <= hi)) {
            return Err(Error::Usage(format!("invalid parameter ranges {self:?}")));
        }
        if self.b_abs.0 <= 0.0 {
            return Err(Error::Usage("the |B| range must exclude a neighbourhood of 0".into()));
        }
        Ok(())
    }

    /// Draws a unimodular parameter set.
    ///
    /// `A, B, C, p, q` are uniform; `D = (1 + BC)/A` when `|A| > 0.1`, otherwise
    /// `D` is drawn and `C = (AD − 1)/B`. Draws whose derived entry falls outside
    /// its range are rejected.
    pub fn draw(&self, rng: &mut impl Rng) -> Result<OlctParams> {
        for _ in 0..10_000 {
            let a = uniform(rng, self.a);
            let b = uniform(rng, self.b_abs) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let mut c = uniform(rng, self.c);
            let p = uniform(rng, self.p);
            let q = uniform(rng, self.q);
            let d = if a.abs() > 0.1 {
                let d = (1.0 + b * c) / a;
                if !contains(self.d, d) {
                    continue;
                }
                d
            } else {
                let d = uniform(rng, self.d);
                c = (a * d - 1.0) / b;
                if !contains(self.c, c) {
                    continue;
                }
                d
            };
            return OlctParams::new(a, b, c, d, p, q);
        }
        Err(Error::Usage(format!("parameter ranges {self:?} admit no unimodular matrix")))
    }

    /// Draws from the class with `Λ̃ = Λ⁻¹`: `D = A`, `C = (A² − 1)/B`,
    /// `q = (1 + A)p/B`.
    pub fn draw_conjugation_symmetric(&self, rng: &mut impl Rng) -> Result<OlctParams> {
        let a = uniform(rng, self.a);
        let b = uniform(rng, self.b_abs) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let p = uniform(rng, self.p);
        OlctParams::new(a, b, (a * a - 1.0) / b, a, p, (1.0 + a) * p / b)
    }
}

/// Inputs of one suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub seed: u64,
    pub n_samples: usize,
    pub n_trials: usize,
    pub ranges: ParamRanges,
    /// Replaces the suite's headline tolerance when set.
    pub tolerance: Option<f64>,
}

impl TrialConfig {
    /// Seed 1, `N = 1024`, default ranges and the trial count each suite is designed for.
    pub fn for_suite(suite: Suite) -> Self {
        let n_trials = match suite {
            Suite::Linearity | Suite::Moyal => 100,
            _ => 50,
        };
        TrialConfig { seed: 1, n_samples: 1024, n_trials, ranges: ParamRanges::default(), tolerance: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 16 {
            return Err(Error::Usage(format!("need at least 16 samples, got {}", self.n_samples)));
        }
        if self.n_trials == 0 {
            return Err(Error::Usage("need at least one trial".into()));
        }
        if let Some(tol) = self.tolerance {
            if !(tol >= 0.0) {
                return Err(Error::Usage(format!("tolerance must be non-negative, got {tol}")));
            }
        }
        self.ranges.validate()
    }

    /// The time grid all suites sample on: `N` points centred on the origin
    /// with `Δt = √(2π/N)`, so that matched grids of `|B| = 1` have `Δw = Δt`.
    pub fn grid(&self) -> Grid {
        let n = self.n_samples;
        Grid::centered((std::f64::consts::TAU / n as f64).sqrt(), n).expect("positive step and count")
    }

    /// Independent random stream for one trial.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// The verification suites, one per transform identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Roundtrip,
    Linearity,
    Moyal,
    Conjugation,
    Convolution,
    Product,
    Composition,
    SpecialCases,
    FastVsDirect,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Roundtrip,
        Suite::Linearity,
        Suite::Moyal,
        Suite::Conjugation,
        Suite::Convolution,
        Suite::Product,
        Suite::Composition,
        Suite::SpecialCases,
        Suite::FastVsDirect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Linearity => "linearity",
            Suite::Moyal => "moyal",
            Suite::Conjugation => "conjugation",
            Suite::Convolution => "convolution",
            Suite::Product => "product",
            Suite::Composition => "composition",
            Suite::SpecialCases => "special_cases",
            Suite::FastVsDirect => "fast_vs_direct",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            Error::Usage(format!("unknown suite '{s}' (expected one of {})", names.join("|")))
        })
    }
}

/// Runs one suite. Deterministic given `cfg`.
pub fn run_suite(suite: Suite, cfg: &TrialConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    suites::run(suite, cfg)
}

/// Relative L² distance `‖a − b‖/‖b‖`, or the absolute distance when `‖b‖ < 1e−12`.
pub fn residual(a: &[Quaternion], b: &[Quaternion]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (*x - *y).norm_sqr()).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
    if a.len() != b.len() {
        f64::INFINITY
    } else if den < 1e-12 {
        num
    } else {
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nosuch".parse::<Suite>(), Err(Error::Usage(_))));
    }

    #[test]
    fn drawn_params_are_unimodular_and_in_range() {
        let cfg = TrialConfig::for_suite(Suite::Roundtrip);
        let r = cfg.ranges;
        let mut rng = cfg.rng(0);
        for _ in 0..2000 {
            let p = r.draw(&mut rng).unwrap();
            assert!((p.det() - 1.0).abs() < 1e-12);
            assert!(contains(r.b_abs, p.b.abs()));
            assert!(contains(r.c, p.c) && contains(r.d, p.d) && contains(r.a, p.a));
            let s = r.draw_conjugation_symmetric(&mut rng).unwrap();
            assert!(s.is_conjugation_symmetric(1e-12));
        }
    }

    #[test]
    fn streams_are_independent_and_reproducible() {
        let cfg = TrialConfig::for_suite(Suite::Moyal);
        let x: u64 = cfg.rng(3).random();
        assert_eq!(x, cfg.rng(3).random::<u64>());
        assert_ne!(x, cfg.rng(4).random::<u64>());
    }

    #[test]
    fn config_validation() {
        let mut cfg = TrialConfig::for_suite(Suite::Moyal);
        assert!(cfg.validate().is_ok());
        cfg.n_trials = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = TrialConfig::for_suite(Suite::Moyal);
        cfg.ranges.b_abs = (0.0, 1.0);
        assert!(cfg.validate().is_err());
        let mut cfg = TrialConfig::for_suite(Suite::Moyal);
        cfg.tolerance = Some(f64::NAN);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn residual_falls_back_to_absolute() {
        let z = [Quaternion::ZERO; 3];
        let a = [Quaternion::real(1e-13); 3];
        assert!((residual(&a, &z) - 3f64.sqrt() * 1e-13).abs() < 1e-20);
        let b = [Quaternion::ONE; 3];
        assert_eq!(residual(&b, &b), 0.0);
    }
}
