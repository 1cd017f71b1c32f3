//! Fractional-frequency DFT via Bluestein's chirp-z decomposition.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

/// `e^{i·β·k²/2}` with the integer square formed exactly before scaling.
#[inline]
fn half_square_chirp(beta: f64, k: usize) -> Complex64 {
    let k2 = (k as u128 * k as u128) as f64;
    Complex64::cis((0.5 * beta * k2).rem_euclid(TAU))
}

/// Evaluates `y[m] = Σₙ x[n]·e^{−iβnm}` for `m = 0..m_out` in `O((N+M) log(N+M))`.
///
/// `β` is arbitrary, so the output frequencies need not be the DFT bins.
/// Uses `nm = (n² + m² − (m−n)²)/2`, turning the sum into a linear convolution
/// with the chirp `e^{iβk²/2}` that is evaluated by zero-padded FFTs.
pub fn fractional_dft(x: &[Complex64], beta: f64, m_out: usize) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 || m_out == 0 {
        return vec![Complex64::new(0.0, 0.0); m_out];
    }
    let len = (n + m_out - 1).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);

    let mut a = vec![Complex64::new(0.0, 0.0); len];
    for (k, (slot, &xk)) in a.iter_mut().zip(x).enumerate() {
        *slot = xk * half_square_chirp(beta, k).conj();
    }
    let mut b = vec![Complex64::new(0.0, 0.0); len];
    for (k, slot) in b.iter_mut().enumerate().take(m_out) {
        *slot = half_square_chirp(beta, k);
    }
    for k in 1..n {
        b[len - k] = half_square_chirp(beta, k);
    }

    fwd.process(&mut a);
    fwd.process(&mut b);
    let scale = 1.0 / len as f64;
    for (ak, bk) in a.iter_mut().zip(&b) {
        *ak *= bk * scale;
    }
    inv.process(&mut a);

    a.truncate(m_out);
    for (m, y) in a.iter_mut().enumerate() {
        *y *= half_square_chirp(beta, m).conj();
    }
    a
}
