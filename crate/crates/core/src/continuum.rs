//! Grid-discretized wave-packet computations: phase/amplitude splitting,
//! spectral momentum moments, estimator correlation coefficients, and the
//! two-quanton Gaussian pair.
//!
//! Momentum acts through the discrete Fourier transform with periodic
//! boundaries; domains are sized so the state decays to numerical zero well
//! before the edges and wrap-around error stays below the grid tolerances.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{CoreError, Result};
use crate::inequalities::{geometric_report_from_overlaps, InequalityReport};
use crate::measures::OverlapGeometry;
use crate::tol::{self, Tolerances};

const MIN_POINTS_PER_SIGMA: f64 = 8.0;
/// Relative amplitude below which a grid point counts as a node.
const NODE_FLOOR: f64 = 1e-10;

fn fft_wavenumber(j: usize, n: usize, dx: f64) -> f64 {
    let step = 2.0 * std::f64::consts::PI / (n as f64 * dx);
    if j < n / 2 {
        j as f64 * step
    } else {
        (j as f64 - n as f64) * step
    }
}

fn fft_forward(samples: &[Complex64]) -> Vec<Complex64> {
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

fn fft_inverse_normalized(mut buf: Vec<Complex64>) -> Vec<Complex64> {
    let n = buf.len();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    for z in &mut buf {
        *z *= scale;
    }
    buf
}

/// A normalized wavefunction sampled on a uniform 1D grid with a
/// power-of-two number of points.
#[derive(Clone, Debug)]
pub struct GridWavefunction {
    samples: Vec<Complex64>,
    dx: f64,
    x0: f64,
    hbar: f64,
}

/// Phase/amplitude decomposition `psi = psi_R e^{i phi}` with a signed real
/// amplitude. `valid` is false at masked nodes, where the phase is linearly
/// interpolated for derivative continuity.
#[derive(Clone, Debug)]
pub struct PhaseAmplitude {
    pub psi_r: Vec<f64>,
    pub phi: Vec<f64>,
    pub valid: Vec<bool>,
}

impl GridWavefunction {
    pub fn new(samples: Vec<Complex64>, dx: f64, x0: f64, hbar: f64) -> Result<Self> {
        let n = samples.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(CoreError::NotPowerOfTwo { n });
        }
        if !(dx.is_finite() && dx > 0.0 && hbar.is_finite() && hbar > 0.0) {
            return Err(CoreError::InvalidParameter { what: "dx and hbar must be positive".into() });
        }
        let norm2: f64 = samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx;
        if !norm2.is_finite() || norm2 <= 1e-300 {
            return Err(CoreError::ZeroVector);
        }
        let scale = 1.0 / norm2.sqrt();
        let samples = samples.into_iter().map(|z| z * scale).collect();
        Ok(GridWavefunction { samples, dx, x0, hbar })
    }

    /// Gaussian packet of width `sigma` (so `<x^2> = sigma^2`), optionally
    /// boosted by `k0` and chirped by `c`:
    /// `exp(-(x-center)^2/4 sigma^2) exp(i k0 (x-center) + i c (x-center)^2)`.
    /// The grid spans `center +- 8 sigma`.
    pub fn gaussian(n: usize, sigma: f64, center: f64, k0: f64, chirp: f64, hbar: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(CoreError::InvalidParameter { what: "sigma must be positive".into() });
        }
        let half = 8.0 * sigma;
        let dx = 2.0 * half / n as f64;
        if sigma / dx < MIN_POINTS_PER_SIGMA - 1e-9 {
            return Err(CoreError::GridTooCoarse { points_per_sigma: sigma / dx });
        }
        let x0 = center - (n / 2) as f64 * dx;
        let samples = (0..n)
            .map(|i| {
                let u = x0 + i as f64 * dx - center;
                let amp = (-u * u / (4.0 * sigma * sigma)).exp();
                let phase = k0 * u + chirp * u * u;
                Complex64::from_polar(amp, phase)
            })
            .collect();
        GridWavefunction::new(samples, dx, x0, hbar)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    /// Spectral derivative `d psi / dx`.
    pub fn derivative(&self) -> Vec<Complex64> {
        let n = self.len();
        let mut ft = fft_forward(&self.samples);
        for (j, z) in ft.iter_mut().enumerate() {
            *z *= Complex64::new(0.0, fft_wavenumber(j, n, self.dx));
        }
        fft_inverse_normalized(ft)
    }

    /// `p psi = -i hbar psi'`.
    pub fn apply_momentum(&self) -> Vec<Complex64> {
        self.derivative()
            .into_iter()
            .map(|z| z * Complex64::new(0.0, -self.hbar))
            .collect()
    }

    /// `(<x>, dx_rms)`.
    pub fn position_moments(&self) -> (f64, f64) {
        let mut m = 0.0;
        let mut m2 = 0.0;
        for (i, z) in self.samples.iter().enumerate() {
            let w = z.norm_sqr() * self.dx;
            let x = self.x(i);
            m += w * x;
            m2 += w * x * x;
        }
        (m, (m2 - m * m).max(0.0).sqrt())
    }

    /// `(<p>, dp_rms)` through the momentum representation.
    pub fn momentum_moments(&self) -> (f64, f64) {
        let n = self.len();
        let ft = fft_forward(&self.samples);
        let w_scale = self.dx / n as f64;
        let mut m = 0.0;
        let mut m2 = 0.0;
        for (j, z) in ft.iter().enumerate() {
            let p = self.hbar * fft_wavenumber(j, n, self.dx);
            let w = z.norm_sqr() * w_scale;
            m += w * p;
            m2 += w * p * p;
        }
        (m, (m2 - m * m).max(0.0).sqrt())
    }

    fn node_mask(&self) -> Vec<bool> {
        let max = self.samples.iter().fold(0.0f64, |a, z| a.max(z.norm()));
        self.samples.iter().map(|z| z.norm() > NODE_FLOOR * max).collect()
    }

    /// Splits into a signed real amplitude and an unwrapped phase. Sign
    /// flips land at amplitude nodes; the phase branch is chosen greedily to
    /// minimize the total variation, and masked nodes get linearly
    /// interpolated phase values.
    pub fn phase_amplitude_split(&self) -> PhaseAmplitude {
        let n = self.len();
        let valid = self.node_mask();
        let mut phi = vec![f64::NAN; n];
        let mut psi_r = vec![0.0; n];
        let mut sign = 1.0f64;
        let mut prev: Option<f64> = None;
        for i in 0..n {
            if !valid[i] {
                psi_r[i] = sign * self.samples[i].norm();
                continue;
            }
            let theta = self.samples[i].arg();
            match prev {
                None => {
                    phi[i] = theta;
                }
                Some(p) => {
                    // candidate phases for keeping or flipping the sign
                    let wrap = |d: f64| d - (d / std::f64::consts::TAU).round() * std::f64::consts::TAU;
                    let keep = if sign > 0.0 { theta } else { theta + std::f64::consts::PI };
                    let flip = if sign > 0.0 { theta + std::f64::consts::PI } else { theta };
                    let dk = wrap(keep - p);
                    let df = wrap(flip - p);
                    if df.abs() < dk.abs() {
                        sign = -sign;
                        phi[i] = p + df;
                    } else {
                        phi[i] = p + dk;
                    }
                }
            }
            prev = Some(phi[i]);
            psi_r[i] = sign * self.samples[i].norm();
        }
        // fill masked phases by linear interpolation between valid neighbors
        let mut last_valid: Option<usize> = None;
        let mut i = 0;
        while i < n {
            if valid[i] {
                last_valid = Some(i);
                i += 1;
                continue;
            }
            let start = i;
            while i < n && !valid[i] {
                i += 1;
            }
            let next_valid = if i < n { Some(i) } else { None };
            for j in start..i {
                phi[j] = match (last_valid, next_valid) {
                    (Some(a), Some(b)) => {
                        let t = (j - a) as f64 / (b - a) as f64;
                        phi[a] + t * (phi[b] - phi[a])
                    }
                    (Some(a), None) => phi[a],
                    (None, Some(b)) => phi[b],
                    (None, None) => 0.0,
                };
            }
        }
        PhaseAmplitude { psi_r, phi, valid }
    }

    /// `(phi', psi_R'/psi_R, valid)` from the spectral derivative of the full
    /// complex state: `psi'/psi = psi_R'/psi_R + i phi'` away from nodes.
    pub fn log_derivative_components(&self) -> (Vec<f64>, Vec<f64>, Vec<bool>) {
        let valid = self.node_mask();
        let d = self.derivative();
        let n = self.len();
        let mut phi_p = vec![0.0; n];
        let mut amp = vec![0.0; n];
        for i in 0..n {
            if valid[i] {
                let r = d[i] / self.samples[i];
                amp[i] = r.re;
                phi_p[i] = r.im;
            }
        }
        (phi_p, amp, valid)
    }

    fn weighted_stats(&self, f: &[f64], valid: &[bool]) -> (f64, f64) {
        let mut m = 0.0;
        let mut m2 = 0.0;
        for i in 0..self.len() {
            if valid[i] {
                let w = self.samples[i].norm_sqr() * self.dx;
                m += w * f[i];
                m2 += w * f[i] * f[i];
            }
        }
        (m, (m2 - m * m).max(0.0))
    }

    /// Squared CC between a real estimator `f(x)` (sampled on the grid) and
    /// momentum:
    /// `(<f phi'> - <f><phi'>)^2 / [df^2 (dphi'^2 + <(psi_R'/psi_R)^2>)]`,
    /// cross-validated against the operator-route CC.
    pub fn estimator_cc_squared(&self, f: &[f64]) -> Result<f64> {
        if f.len() != self.len() {
            return Err(CoreError::DimMismatch { expected: self.len(), got: f.len() });
        }
        let (phi_p, amp, valid) = self.log_derivative_components();
        let (mf, var_f) = self.weighted_stats(f, &valid);
        if var_f.sqrt() <= tol::ZERO_DEV {
            return Err(CoreError::ZeroDeviation { label: "f".into() });
        }
        let (mp, var_p) = self.weighted_stats(&phi_p, &valid);
        let (_, _) = (mp, var_p);
        let mut cov = 0.0;
        let mut amp2 = 0.0;
        for i in 0..self.len() {
            if valid[i] {
                let w = self.samples[i].norm_sqr() * self.dx;
                cov += w * f[i] * phi_p[i];
                amp2 += w * amp[i] * amp[i];
            }
        }
        cov -= mf * mp;
        let denom = var_f * (var_p + amp2);
        let k2 = if denom > 0.0 { (cov * cov / denom).min(1.0) } else { 0.0 };

        let k2_op = self.operator_cc_squared(f)?;
        debug_assert!(
            (k2 - k2_op).abs() <= tol::GRID,
            "estimator-route {k2} vs operator-route {k2_op}"
        );
        Ok(k2)
    }

    /// Squared CC between `f(x)` and momentum from the grid operator
    /// moments; independent route used to cross-check the phase form.
    pub fn operator_cc_squared(&self, f: &[f64]) -> Result<f64> {
        if f.len() != self.len() {
            return Err(CoreError::DimMismatch { expected: self.len(), got: f.len() });
        }
        let all = vec![true; self.len()];
        let (mf, var_f) = self.weighted_stats(f, &all);
        if var_f.sqrt() <= tol::ZERO_DEV {
            return Err(CoreError::ZeroDeviation { label: "f".into() });
        }
        let pp = self.apply_momentum();
        let (mp, dp) = self.momentum_moments();
        let mut cov = 0.0;
        for i in 0..self.len() {
            cov += (self.samples[i].conj() * pp[i]).re * f[i] * self.dx;
        }
        cov -= mf * mp;
        let denom = var_f * dp * dp;
        Ok(if denom > 0.0 { (cov * cov / denom).min(1.0) } else { 0.0 })
    }

    /// Maximum squared estimator CC, attained at `f = phi'`:
    /// `dphi'^2 / (dphi'^2 + <(psi_R'/psi_R)^2>)`. Returns zero when the
    /// phase is at most linear.
    pub fn optimal_estimator_cc_squared(&self) -> f64 {
        let (phi_p, amp, valid) = self.log_derivative_components();
        let (_, var_p) = self.weighted_stats(&phi_p, &valid);
        let mut amp2 = 0.0;
        for i in 0..self.len() {
            if valid[i] {
                amp2 += self.samples[i].norm_sqr() * self.dx * amp[i] * amp[i];
            }
        }
        let denom = var_p + amp2;
        if denom <= 0.0 || var_p <= 1e-30 * denom {
            // at most linearly varying phase: the estimator CC vanishes
            // identically, so report an exact zero instead of noise
            0.0
        } else {
            var_p / denom
        }
    }

    /// The estimator-form lower bound on the squared UPR:
    /// `4 dx^2 dp^2 / hbar^2 >= (dphi'^2 + <(psi_R'/psi_R)^2>) / <(psi_R'/psi_R)^2>`.
    pub fn check_estimator_bound(&self, tolerances: &Tolerances) -> InequalityReport {
        let (_, dx_rms) = self.position_moments();
        let (_, dp_rms) = self.momentum_moments();
        let lhs = 4.0 * dx_rms * dx_rms * dp_rms * dp_rms / (self.hbar * self.hbar);
        let k2 = self.optimal_estimator_cc_squared();
        // rhs = 1/(1 - K_max^2)
        let rhs = if k2 < 1.0 { 1.0 / (1.0 - k2) } else { f64::INFINITY };
        InequalityReport::from_sides("estimator_bound", lhs, rhs, tolerances)
            .with_witness("k2_max", k2)
            .with_witness("dx", dx_rms)
            .with_witness("dp", dp_rms)
    }
}

/// A normalized two-coordinate wavefunction on an `n x n` uniform grid
/// (same axis for both coordinates, row-major with the first coordinate
/// major).
#[derive(Clone, Debug)]
pub struct GridWavefunction2D {
    samples: Vec<Complex64>,
    n: usize,
    dx: f64,
    x0: f64,
    hbar: f64,
}

/// Closed forms for the Gaussian pair state: the squared UPR for
/// `(x1, p1)`, the squared cross CC, and `[1 - K^2]^{-1}`.
#[derive(Clone, Copy, Debug)]
pub struct GaussianPairForms {
    pub upr_squared: f64,
    pub k_squared: f64,
    pub inv_one_minus_k2: f64,
}

/// Evaluates the closed forms at widths `(a, b)`.
pub fn gaussian_pair_closed_forms(a: f64, b: f64) -> GaussianPairForms {
    let t = 2.0 * a / b + b / (2.0 * a);
    let d = 2.0 * a / b - b / (2.0 * a);
    let k_squared = (d / t) * (d / t);
    GaussianPairForms {
        upr_squared: t * t / 4.0,
        k_squared,
        inv_one_minus_k2: 1.0 / (1.0 - k_squared),
    }
}

impl GridWavefunction2D {
    /// The two-quanton Gaussian
    /// `N exp[-X^2/4a^2] exp[-r^2/4b^2]`, `X = (x1+x2)/2`, `r = x1-x2`,
    /// on a grid spanning eight per-axis standard deviations
    /// (`sigma_axis = sqrt(a^2 + b^2/4)`) each side of the origin.
    pub fn gaussian_pair_state(a: f64, b: f64, n: usize, hbar: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0 && b.is_finite() && b > 0.0) {
            return Err(CoreError::InvalidParameter { what: "widths must be positive".into() });
        }
        if n == 0 || !n.is_power_of_two() {
            return Err(CoreError::NotPowerOfTwo { n });
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(CoreError::InvalidParameter { what: "hbar must be positive".into() });
        }
        let sigma_axis = (a * a + b * b / 4.0).sqrt();
        let half = 8.0 * sigma_axis;
        let dx = 2.0 * half / n as f64;
        if sigma_axis / dx < MIN_POINTS_PER_SIGMA - 1e-9 {
            return Err(CoreError::GridTooCoarse { points_per_sigma: sigma_axis / dx });
        }
        let x0 = -((n / 2) as f64) * dx;
        let mut samples = vec![Complex64::ZERO; n * n];
        for i1 in 0..n {
            let x1 = x0 + i1 as f64 * dx;
            for i2 in 0..n {
                let x2 = x0 + i2 as f64 * dx;
                let xc = 0.5 * (x1 + x2);
                let r = x1 - x2;
                let amp = (-xc * xc / (4.0 * a * a) - r * r / (4.0 * b * b)).exp();
                samples[i1 * n + i2] = Complex64::new(amp, 0.0);
            }
        }
        let norm2: f64 = samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx * dx;
        let scale = 1.0 / norm2.sqrt();
        for z in &mut samples {
            *z *= scale;
        }
        Ok(GridWavefunction2D { samples, n, dx, x0, hbar })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    fn weight(&self, i1: usize, i2: usize) -> f64 {
        self.samples[i1 * self.n + i2].norm_sqr() * self.dx * self.dx
    }

    /// `p1 psi` through FFTs along the first coordinate.
    fn apply_p1(&self) -> Vec<Complex64> {
        let n = self.n;
        let fft = FftPlanner::new().plan_fft_forward(n);
        let ifft = FftPlanner::new().plan_fft_inverse(n);
        let mut out = vec![Complex64::ZERO; n * n];
        let mut col = vec![Complex64::ZERO; n];
        for i2 in 0..n {
            for (i1, c) in col.iter_mut().enumerate() {
                *c = self.samples[i1 * n + i2];
            }
            fft.process(&mut col);
            for (j, z) in col.iter_mut().enumerate() {
                // p = hbar k in the momentum representation
                *z *= Complex64::new(self.hbar * fft_wavenumber(j, n, self.dx) / n as f64, 0.0);
            }
            ifft.process(&mut col);
            for (i1, c) in col.iter().enumerate() {
                out[i1 * n + i2] = *c;
            }
        }
        out
    }

    /// Position means, deviations, and the cross covariance for `(x1, x2)`.
    pub fn position_moments(&self) -> PairPositionMoments {
        let n = self.n;
        let (mut m1, mut m2, mut s11, mut s22, mut s12) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for i1 in 0..n {
            let x1 = self.x(i1);
            for i2 in 0..n {
                let w = self.weight(i1, i2);
                let x2 = self.x(i2);
                m1 += w * x1;
                m2 += w * x2;
                s11 += w * x1 * x1;
                s22 += w * x2 * x2;
                s12 += w * x1 * x2;
            }
        }
        PairPositionMoments {
            mean_x1: m1,
            mean_x2: m2,
            dev_x1: (s11 - m1 * m1).max(0.0).sqrt(),
            dev_x2: (s22 - m2 * m2).max(0.0).sqrt(),
            cov_x1_x2: s12 - m1 * m2,
        }
    }

    /// `(<p1>, dp1)` via Parseval along the first coordinate.
    pub fn momentum_moments(&self) -> (f64, f64) {
        let n = self.n;
        let fft = FftPlanner::new().plan_fft_forward(n);
        let mut col = vec![Complex64::ZERO; n];
        let w_scale = self.dx * self.dx / n as f64;
        let mut m = 0.0;
        let mut m2 = 0.0;
        for i2 in 0..n {
            for (i1, c) in col.iter_mut().enumerate() {
                *c = self.samples[i1 * n + i2];
            }
            fft.process(&mut col);
            for (j, z) in col.iter().enumerate() {
                let p = self.hbar * fft_wavenumber(j, n, self.dx);
                let w = z.norm_sqr() * w_scale;
                m += w * p;
                m2 += w * p * p;
            }
        }
        (m, (m2 - m * m).max(0.0).sqrt())
    }

    /// Squared CC between the two coordinates.
    pub fn cc_x1_x2_squared(&self) -> f64 {
        let pm = self.position_moments();
        let d = pm.dev_x1 * pm.dev_x2;
        if d <= tol::ZERO_DEV {
            return 0.0;
        }
        (pm.cov_x1_x2 / d).powi(2).min(1.0)
    }

    /// CC between `x1` and `p1` (zero for the Gaussian pair).
    pub fn cc_x1_p1(&self) -> f64 {
        let pm = self.position_moments();
        let (mp, dp) = self.momentum_moments();
        let p1psi = self.apply_p1();
        let n = self.n;
        let mut cov = 0.0;
        for i1 in 0..n {
            let x1 = self.x(i1);
            for i2 in 0..n {
                let idx = i1 * n + i2;
                cov += (self.samples[idx].conj() * p1psi[idx]).re * x1 * self.dx * self.dx;
            }
        }
        cov -= pm.mean_x1 * mp;
        let d = pm.dev_x1 * dp;
        if d <= tol::ZERO_DEV {
            0.0
        } else {
            (cov / d).clamp(-1.0, 1.0)
        }
    }

    /// Squared UPR for `(x1, p1)` on the grid, `4 dx1^2 dp1^2 / hbar^2`.
    pub fn upr_squared_x1_p1(&self) -> f64 {
        let pm = self.position_moments();
        let (_, dp) = self.momentum_moments();
        4.0 * pm.dev_x1 * pm.dev_x1 * dp * dp / (self.hbar * self.hbar)
    }

    /// Deviation-vector overlaps for `A = x1`, `B = p1`, `C = x2`, plus the
    /// `(B, C)` compatibility residual; grid analogue of the matrix-side
    /// overlap geometry.
    pub fn overlap_geometry_x1_p1_x2(&self) -> (OverlapGeometry, f64) {
        let n = self.n;
        let pm = self.position_moments();
        let (mp, dp) = self.momentum_moments();
        let p1psi = self.apply_p1();
        let w2 = self.dx * self.dx;
        // deviation functions dA = (x1-<x1>) psi, dB = (p1-<p1>) psi,
        // dC = (x2-<x2>) psi
        let mut ab = Complex64::ZERO;
        let mut ac = Complex64::ZERO;
        let mut bc = Complex64::ZERO;
        for i1 in 0..n {
            let u1 = self.x(i1) - pm.mean_x1;
            for i2 in 0..n {
                let idx = i1 * n + i2;
                let u2 = self.x(i2) - pm.mean_x2;
                let da = self.samples[idx] * Complex64::new(u1, 0.0);
                let db = p1psi[idx] - self.samples[idx] * Complex64::new(mp, 0.0);
                let dc = self.samples[idx] * Complex64::new(u2, 0.0);
                ab += da.conj() * db * Complex64::new(w2, 0.0);
                ac += da.conj() * dc * Complex64::new(w2, 0.0);
                bc += db.conj() * dc * Complex64::new(w2, 0.0);
            }
        }
        let nab = pm.dev_x1 * dp;
        let nac = pm.dev_x1 * pm.dev_x2;
        let nbc = dp * pm.dev_x2;
        let ab = ab / Complex64::new(nab, 0.0);
        let ac = ac / Complex64::new(nac, 0.0);
        let compat_residual = 2.0 * (bc.im / nbc).abs() * nbc;
        (OverlapGeometry { a: ab.re, b: ab.im, x: ac.re, y: ac.im }, compat_residual)
    }

    /// Geometric (unit-disc + confining-ellipse) report for the grid triple
    /// `(x1, p1, x2)` at a grid-scale slack tolerance.
    pub fn check_geometric_x1_p1_x2(&self) -> Result<InequalityReport> {
        let (g, residual) = self.overlap_geometry_x1_p1_x2();
        let tolerances = Tolerances { slack: tol::GRID_2D, ..Default::default() };
        geometric_report_from_overlaps(g.a, g.b, g.x, g.y, residual, &tolerances)
    }
}

/// Position-moment bundle for the pair state.
#[derive(Clone, Copy, Debug)]
pub struct PairPositionMoments {
    pub mean_x1: f64,
    pub mean_x2: f64,
    pub dev_x1: f64,
    pub dev_x2: f64,
    pub cov_x1_x2: f64,
}

/// Verifies the Gaussian-pair identity: the squared UPR for `(x1, p1)`
/// equals `[1 - K(x1,x2)^2]^{-1}`, exactly in the closed forms and within
/// [`tol::GRID_2D`] on the grid.
pub fn verify_gaussian_saturation(a: f64, b: f64, n: usize, hbar: f64) -> Result<InequalityReport> {
    let forms = gaussian_pair_closed_forms(a, b);
    let wf = GridWavefunction2D::gaussian_pair_state(a, b, n, hbar)?;
    let upr2_grid = wf.upr_squared_x1_p1();
    let k2_grid = wf.cc_x1_x2_squared();
    let inv_grid = 1.0 / (1.0 - k2_grid);
    let k_x1p1 = wf.cc_x1_p1();

    let analytic_delta = (forms.upr_squared - forms.inv_one_minus_k2).abs();
    let grid_upr_delta = (upr2_grid - forms.upr_squared).abs();
    let grid_inv_delta = (inv_grid - forms.inv_one_minus_k2).abs();

    let tolerances = Tolerances { slack: tol::GRID_2D, ..Default::default() };
    let mut report =
        InequalityReport::from_sides("gaussian_pair_saturation", upr2_grid, inv_grid, &tolerances);
    // identity, not a one-sided bound: both directions must agree
    report.satisfied = analytic_delta <= 1e-12 * forms.upr_squared.max(1.0)
        && grid_upr_delta <= tol::GRID_2D * forms.upr_squared.max(1.0)
        && grid_inv_delta <= tol::GRID_2D * forms.inv_one_minus_k2.max(1.0);
    Ok(report
        .with_witness("upr2_analytic", forms.upr_squared)
        .with_witness("inv_analytic", forms.inv_one_minus_k2)
        .with_witness("k2_analytic", forms.k_squared)
        .with_witness("k2_grid", k2_grid)
        .with_witness("k_x1_p1_grid", k_x1p1)
        .with_witness("analytic_delta", analytic_delta))
}
