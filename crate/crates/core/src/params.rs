//! The six-parameter matrix `Λ = (A, B, C, D | p, q)`.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::quaternion::ComplexE2;

/// Tolerance on `AD − BC = 1`.
pub const DET_TOL: f64 = 1e-12;
/// `|B|` at or below this is treated as zero.
pub const B_MIN: f64 = 1e-12;

/// Transform parameters: a unimodular 2×2 matrix `[[A, B], [C, D]]` plus the
/// offset vector `(p, q)`.
///
/// Values built through [`OlctParams::new`] always satisfy `AD − BC = 1` and
/// `B ≠ 0`. Composition may produce a matrix with `B = 0` (the identity is the
/// obvious example); such values are legal composition operands but every
/// transform rejects them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OlctParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub p: f64,
    pub q: f64,
}

impl OlctParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64, p: f64, q: f64) -> Result<Self> {
        let params = OlctParams { a, b, c, d, p, q };
        if ![a, b, c, d, p, q].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite parameter in {params}")));
        }
        if b.abs() <= B_MIN {
            return Err(Error::InvalidParams("B must be nonzero".into()));
        }
        let det = params.det();
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::InvalidParams(format!(
                "determinant AD - BC = {det} must equal 1"
            )));
        }
        Ok(params)
    }

    /// `(A, B, C, D)` only, offsets zero.
    pub fn lct(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        OlctParams::new(a, b, c, d, 0.0, 0.0)
    }

    /// The identity matrix with zero offsets. Only usable as a composition operand.
    pub const fn identity() -> Self {
        OlctParams { a: 1.0, b: 0.0, c: 0.0, d: 1.0, p: 0.0, q: 0.0 }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_degenerate(&self) -> bool {
        self.b.abs() <= B_MIN
    }

    /// Rejects `B = 0`; called by every transform entry point.
    pub fn check_transformable(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateComposition(self.b))
        } else {
            Ok(())
        }
    }

    /// `Λ⁻¹ = (D, −B, −C, A | Bq − Dp, Cp − Aq)`.
    pub fn inverse(&self) -> Self {
        let OlctParams { a, b, c, d, p, q } = *self;
        OlctParams { a: d, b: -b, c: -c, d: a, p: b * q - d * p, q: c * p - a * q }
    }

    /// Augmented-matrix product `self ∘ inner`: first `inner`, then `self`.
    ///
    /// Matrix part `M_self·M_inner`, offset `M_self·(p_inner, q_inner) + (p_self, q_self)`.
    pub fn compose(&self, inner: &OlctParams) -> Self {
        let (l, g) = (self, inner);
        OlctParams {
            a: l.a * g.a + l.b * g.c,
            b: l.a * g.b + l.b * g.d,
            c: l.c * g.a + l.d * g.c,
            d: l.c * g.b + l.d * g.d,
            p: l.a * g.p + l.b * g.q + l.p,
            q: l.c * g.p + l.d * g.q + l.q,
        }
    }

    /// `Λ̃ = (A, −B, −C, D | p, −q)`, the parameter whose kernel is the complex
    /// conjugate of this one: `K_Λ̃(t, w) = conj(K_Λ(t, w))`.
    ///
    /// Consequently `O_Λ[f̄] = conj(O_Λ̃[f])` for every complex `f`. `Λ̃`
    /// coincides with [`OlctParams::inverse`] exactly when
    /// [`OlctParams::is_conjugation_symmetric`] holds.
    pub fn conjugate(&self) -> Self {
        OlctParams { a: self.a, b: -self.b, c: -self.c, d: self.d, p: self.p, q: -self.q }
    }

    /// `Λ̃ = Λ⁻¹`: `A = D`, `p(1 + A) = Bq` and `q(A − 1) = Cp`, up to `tol`.
    pub fn is_conjugation_symmetric(&self, tol: f64) -> bool {
        let inv = self.inverse();
        let conj = self.conjugate();
        [
            inv.a - conj.a,
            inv.b - conj.b,
            inv.c - conj.c,
            inv.d - conj.d,
            inv.p - conj.p,
            inv.q - conj.q,
        ]
        .iter()
        .all(|v| v.abs() <= tol)
    }

    /// Kernel constant `1/√(i·2πB)` on the principal branch.
    pub fn kernel_constant(&self) -> ComplexE2 {
        ComplexE2::new(0.0, 2.0 * PI * self.b).sqrt().inv()
    }

    /// Exponent of the kernel, `(At² − 2t(w−p) − 2w(Dp−Bq) + D(w²+p²)) / 2B`.
    #[inline]
    pub fn kernel_phase(&self, t: f64, w: f64) -> f64 {
        let OlctParams { a, b, d, p, q, .. } = *self;
        (a * t * t - 2.0 * t * (w - p) - 2.0 * w * (d * p - b * q) + d * (w * w + p * p)) / (2.0 * b)
    }

    /// `K_Λ(t, w)`.
    #[inline]
    pub fn kernel(&self, t: f64, w: f64) -> ComplexE2 {
        self.kernel_constant() * ComplexE2::cis(self.kernel_phase(t, w))
    }

    /// Time-only part of the phase, `(At² + 2tp) / 2B`.
    #[inline]
    pub(crate) fn time_chirp_phase(&self, t: f64) -> f64 {
        (self.a * t * t + 2.0 * t * self.p) / (2.0 * self.b)
    }

    /// Output-only part of the phase, `(Dw² + Dp² − 2w(Dp − Bq)) / 2B`.
    #[inline]
    pub(crate) fn output_chirp_phase(&self, w: f64) -> f64 {
        let OlctParams { b, d, p, q, .. } = *self;
        (d * w * w + d * p * p - 2.0 * w * (d * p - b * q)) / (2.0 * b)
    }

    /// Output grid matched to `tgrid`: same count, centred on the origin, with
    /// `Δw = 2π|B| / (N·Δt)`.
    ///
    /// On this grid the discrete transform is a chirp-modulated DFT and hence
    /// exactly unitary (up to the `Δt`/`Δw` weights).
    pub fn default_wgrid(&self, tgrid: &Grid) -> Grid {
        let n = tgrid.count();
        let dw = 2.0 * PI * self.b.abs() / (n as f64 * tgrid.step());
        Grid::centered(dw, n).expect("positive step and count")
    }

    /// Time grid matched to a spectrum grid; the inverse of [`OlctParams::default_wgrid`]
    /// for centred grids.
    pub fn default_tgrid(&self, wgrid: &Grid) -> Grid {
        let m = wgrid.count();
        let dt = 2.0 * PI * self.b.abs() / (m as f64 * wgrid.step());
        Grid::centered(dt, m).expect("positive step and count")
    }

    /// True when `wgrid` is the matched grid of `tgrid` (count and step; any start).
    pub fn satisfies_sampling_contract(&self, tgrid: &Grid, wgrid: &Grid) -> bool {
        let expected = self.default_wgrid(tgrid);
        wgrid.count() == expected.count()
            && (wgrid.step() - expected.step()).abs() <= crate::grid::GRID_MATCH_TOL * expected.step()
    }
}

impl fmt::Display for OlctParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {} | {}, {})", self.a, self.b, self.c, self.d, self.p, self.q)
    }
}

/// Named special cases of the transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    /// Quaternion Fourier transform, `(0, 1, −1, 0 | 0, 0)`.
    Qft,
    /// Quaternion linear canonical transform, `(A, B, C, D | 0, 0)`.
    Qlct { a: f64, b: f64, c: f64, d: f64 },
    /// Quaternion fractional Fourier transform of angle `θ`,
    /// `(cos θ, sin θ, −sin θ, cos θ | 0, 0)`.
    Qfrft { theta: f64 },
}

impl Preset {
    pub fn params(&self) -> Result<OlctParams> {
        match *self {
            Preset::Qft => OlctParams::new(0.0, 1.0, -1.0, 0.0, 0.0, 0.0),
            Preset::Qlct { a, b, c, d } => OlctParams::lct(a, b, c, d),
            Preset::Qfrft { theta } => {
                let (s, c) = (snap_unit(theta.sin()), snap_unit(theta.cos()));
                OlctParams::new(c, s, -s, c, 0.0, 0.0).map_err(|e| match e {
                    Error::InvalidParams(m) => {
                        Error::InvalidParams(format!("fractional angle {theta} gives sin θ = 0: {m}"))
                    }
                    other => other,
                })
            }
        }
    }
}

/// Rounds trigonometric values within a few ulps of 0 or ±1 onto them, so
/// `θ = π/2` yields exactly the Fourier parameters.
fn snap_unit(v: f64) -> f64 {
    const EPS: f64 = 4.0 * f64::EPSILON;
    if v.abs() < EPS {
        0.0
    } else if (v - 1.0).abs() < EPS {
        1.0
    } else if (v + 1.0).abs() < EPS {
        -1.0
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(a: f64, b: f64, c: f64, d: f64, pp: f64, q: f64) -> OlctParams {
        OlctParams { a, b, c, d, p: pp, q }
    }

    #[test]
    fn validation() {
        let e = OlctParams::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0).unwrap_err();
        assert_eq!(e, Error::InvalidParams("B must be nonzero".into()));
        let e = OlctParams::new(1.0, 1.0, 1.0, 1.0, 0.0, 0.0).unwrap_err();
        assert!(e.to_string().contains("determinant"), "{e}");
        assert!(OlctParams::new(1.0, 2.0, 0.0, 1.0, 0.3, -0.1).is_ok());
        assert!(OlctParams::new(f64::NAN, 1.0, -1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn inverse_examples() {
        let qft = p(0.0, 1.0, -1.0, 0.0, 0.0, 0.0);
        assert_eq!(qft.inverse(), p(0.0, -1.0, 1.0, 0.0, 0.0, 0.0));
        let l = p(1.0, 1.0, 0.0, 1.0, 2.0, 3.0);
        assert_eq!(l.inverse(), p(1.0, -1.0, 0.0, 1.0, 1.0, -3.0));
    }

    #[test]
    fn compose_examples() {
        let l = p(2.0, 0.5, 1.0, 0.75, 0.3, -0.2);
        assert_eq!(l.compose(&OlctParams::identity()), l);
        let qft = p(0.0, 1.0, -1.0, 0.0, 0.0, 0.0);
        let sq = qft.compose(&qft);
        assert_eq!(sq, p(-1.0, 0.0, 0.0, -1.0, 0.0, 0.0));
        assert!(sq.is_degenerate());
        assert!(matches!(sq.check_transformable(), Err(Error::DegenerateComposition(_))));
    }

    #[test]
    fn presets() {
        assert_eq!(Preset::Qft.params().unwrap(), p(0.0, 1.0, -1.0, 0.0, 0.0, 0.0));
        let half = Preset::Qfrft { theta: PI / 2.0 }.params().unwrap();
        assert_eq!(half, Preset::Qft.params().unwrap());
        let quarter = Preset::Qfrft { theta: PI / 4.0 }.params().unwrap();
        let r = 2f64.sqrt() / 2.0;
        for (got, want) in [quarter.a, quarter.b, -quarter.c, quarter.d].iter().zip([r; 4]) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!(Preset::Qfrft { theta: 0.0 }.params().is_err());
        assert!(Preset::Qfrft { theta: PI }.params().is_err());
        assert!(Preset::Qlct { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }.params().is_err());
        assert_eq!(
            Preset::Qlct { a: 2.0, b: 1.0, c: 1.0, d: 1.0 }.params().unwrap(),
            p(2.0, 1.0, 1.0, 1.0, 0.0, 0.0)
        );
    }

    #[test]
    fn qft_kernel_values() {
        let qft = Preset::Qft.params().unwrap();
        let k0 = qft.kernel(0.0, 0.0);
        let want = ComplexE2::cis(-PI / 4.0) / (2.0 * PI).sqrt();
        assert!((k0 - want).norm() < 1e-15);
        for (t, w) in [(0.3, -1.2), (2.0, 0.5), (-3.0, -4.0)] {
            let want = ComplexE2::cis(-PI / 4.0 - t * w) / (2.0 * PI).sqrt();
            assert!((qft.kernel(t, w) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn negative_b_branch() {
        // i·2π·(−1) sits on the negative imaginary axis; principal root is √(2π)·e^{−iπ/4}.
        let l = p(0.0, -1.0, 1.0, 0.0, 0.0, 0.0);
        let want = ComplexE2::cis(PI / 4.0) / (2.0 * PI).sqrt();
        assert!((l.kernel_constant() - want).norm() < 1e-15);
    }

    #[test]
    fn default_grids_are_reciprocal() {
        let l = p(1.0, 2.0, 0.0, 1.0, 0.0, 0.0);
        let t = Grid::centered(0.1, 256).unwrap();
        let w = l.default_wgrid(&t);
        assert!((w.step() * t.step() * 256.0 - 2.0 * PI * 2.0).abs() < 1e-12);
        assert!(l.default_tgrid(&w).matches(&t));
        assert!(l.satisfies_sampling_contract(&t, &w));
    }

    fn arb_params() -> impl Strategy<Value = OlctParams> {
        (
            -2.0f64..2.0,
            prop_oneof![-2.0f64..-0.3, 0.3f64..2.0],
            -2.0f64..2.0,
            -2.0f64..2.0,
            -2.0f64..2.0,
        )
            .prop_map(|(a, b, d, pp, q)| {
                // C chosen so that AD − BC = 1
                let c = (a * d - 1.0) / b;
                p(a, b, c, d, pp, q)
            })
    }

    proptest! {
        #[test]
        fn inverse_is_an_involution(l in arb_params()) {
            let back = l.inverse().inverse();
            for (x, y) in [(back.a, l.a), (back.b, l.b), (back.c, l.c), (back.d, l.d), (back.p, l.p), (back.q, l.q)] {
                prop_assert!((x - y).abs() <= 1e-12 * (1.0 + y.abs()));
            }
            prop_assert!((l.inverse().det() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn compose_with_inverse_is_identity(l in arb_params()) {
            let id = l.compose(&l.inverse());
            for (x, y) in [(id.a, 1.0), (id.b, 0.0), (id.c, 0.0), (id.d, 1.0), (id.p, 0.0), (id.q, 0.0)] {
                prop_assert!((x - y).abs() <= 1e-10, "{}", id);
            }
        }

        #[test]
        fn composition_preserves_determinant(l in arb_params(), g in arb_params()) {
            prop_assert!((l.compose(&g).det() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn kernel_modulus(l in arb_params(), t in -10.0f64..10.0, w in -10.0f64..10.0) {
            let want = 1.0 / (2.0 * PI * l.b.abs()).sqrt();
            prop_assert!((l.kernel(t, w).norm() - want).abs() <= 1e-13);
        }

        #[test]
        fn conjugate_kernel(l in arb_params(), t in -10.0f64..10.0, w in -10.0f64..10.0) {
            let lhs = l.conjugate().kernel(t, w);
            let rhs = l.kernel(t, w).conj();
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }

        // With zero offsets the inverse-parameter kernel, arguments swapped, is
        // the conjugate kernel.
        #[test]
        fn inverse_kernel_is_conjugate_without_offsets(l in arb_params(), t in -5.0f64..5.0, w in -5.0f64..5.0) {
            let l = p(l.a, l.b, l.c, l.d, 0.0, 0.0);
            let lhs = l.inverse().kernel(w, t);
            let rhs = l.kernel(t, w).conj();
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }

        // With offsets the two differ by the constant phase
        // exp(−i(ABq² − 2ADpq + CDp²)/2).
        #[test]
        fn inverse_kernel_offset_phase(l in arb_params(), t in -5.0f64..5.0, w in -5.0f64..5.0) {
            let phase = -(l.a * l.b * l.q * l.q - 2.0 * l.a * l.d * l.p * l.q + l.c * l.d * l.p * l.p) / 2.0;
            let lhs = l.inverse().kernel(w, t);
            let rhs = l.kernel(t, w).conj() * ComplexE2::cis(phase);
            prop_assert!((lhs - rhs).norm() <= 1e-11);
        }
    }
}
