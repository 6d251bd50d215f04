//! Reservoir memory kernels and their half-line Fourier transforms.
//!
//! Each reservoir has a flat spectral density `|κ(Ω)|² = Γ/2π` on `(0, Λ)`,
//! giving the memory kernel
//!
//! ```text
//! G(τ) = ∫₀^Λ dΩ (Γ/2π) e^{−iΩτ} = (Γ/2π) (1 − e^{−iΛτ}) / (iτ),
//! ```
//!
//! with `G(0) = ΓΛ/2π`, and the half-line transform
//!
//! ```text
//! G(ω)₊ = ∫₀^∞ dτ e^{iωτ} G(τ) = Γ/2·1{0<ω<Λ} + i (Γ/2π) ln|ω/(ω−Λ)|.
//! ```
//!
//! The real part is the decay rate, the imaginary part the Lamb shift; both
//! are kept. The transform is singular at ω = 0 and ω = Λ (principal-value
//! endpoints), which is reported as an error rather than clamped.

use crate::{C64, Error, Result};

/// Reservoir channel attached to the cavity mode (`Photonic`) or to the
/// matter mode (`Excitonic`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Photonic = 0,
    Excitonic = 1,
}

/// Spectral-density shape of the reservoir coupling. Only the flat density
/// evaluated in the reference figures ships; the enum leaves room for others.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelShape {
    Flat,
}

/// Description of one reservoir memory kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub channel: Channel,
    pub shape: KernelShape,
    /// Decay rate Γ in units of ωc (Γ = 2π |κ|²).
    pub gamma: f64,
    /// Spectral cutoff Λ in units of ωc.
    pub cutoff: f64,
}

impl KernelSpec {
    /// Flat kernel with rate `gamma` and cutoff `cutoff`.
    pub fn flat(channel: Channel, gamma: f64, cutoff: f64) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParams(format!("kernel gamma = {gamma}")));
        }
        if !(cutoff > 0.0) || !cutoff.is_finite() {
            return Err(Error::InvalidParams(format!("kernel cutoff = {cutoff}")));
        }
        Ok(KernelSpec { channel, shape: KernelShape::Flat, gamma, cutoff })
    }

    /// Relative tolerance around the singular points ω ∈ {0, Λ}.
    fn singular_eps(&self) -> f64 {
        1e-9 * self.cutoff
    }

    /// Memory kernel `G(τ)` at (possibly negative) time offset τ.
    pub fn time(&self, tau: f64) -> C64 {
        let g = self.gamma / (2.0 * std::f64::consts::PI);
        if tau == 0.0 {
            return C64::new(g * self.cutoff, 0.0);
        }
        // (1 − e^{−iΛτ}) / (iτ)
        let phase = C64::new(0.0, -self.cutoff * tau).exp();
        (C64::new(1.0, 0.0) - phase) / C64::new(0.0, tau) * g
    }

    /// Half-line transform `G(ω)₊ = ∫₀^∞ dτ e^{iωτ} G(τ)` at real ω.
    ///
    /// Errors with [`Error::SingularFrequency`] within `1e−9·Λ` of the
    /// principal-value endpoints ω ∈ {0, Λ}.
    pub fn halfline_fourier(&self, omega: f64) -> Result<C64> {
        let eps = self.singular_eps();
        if omega.abs() < eps || (omega - self.cutoff).abs() < eps {
            return Err(Error::SingularFrequency { omega, cutoff: self.cutoff });
        }
        let re = if omega > 0.0 && omega < self.cutoff { self.gamma / 2.0 } else { 0.0 };
        let im = self.gamma / (2.0 * std::f64::consts::PI)
            * (omega / (omega - self.cutoff)).abs().ln();
        Ok(C64::new(re, im))
    }

    /// Regularized half-line transform for use inside Bohr-frequency filters,
    /// where ω sweeps all level differences of a truncated spectrum and can
    /// land on the principal-value endpoints. Frequencies inside the singular
    /// neighbourhood are nudged to its edge (`1e−8·Λ` away); ω = 0 exactly
    /// takes the two-sided average, whose real part is the spectral-edge
    /// value Γ/4.
    pub fn halfline_fourier_regularized(&self, omega: f64) -> C64 {
        if let Ok(v) = self.halfline_fourier(omega) {
            return v;
        }
        let eps = 1e-8 * self.cutoff;
        if (omega - self.cutoff).abs() < self.singular_eps() {
            let w = if omega >= self.cutoff { self.cutoff + eps } else { self.cutoff - eps };
            self.halfline_fourier(w).expect("nudged frequency is regular")
        } else if omega == 0.0 {
            let plus = self.halfline_fourier(eps).expect("edge offset is regular");
            let minus = self.halfline_fourier(-eps).expect("edge offset is regular");
            (plus + minus) * 0.5
        } else {
            let w = if omega > 0.0 { eps } else { -eps };
            self.halfline_fourier(w).expect("nudged frequency is regular")
        }
    }

    /// Analytic continuation of `G(ω)₊` to complex ω.
    ///
    /// For `Im ω > 0` this is `(iΓ/2π)[Log ω − Log(ω−Λ)]`; approaching the
    /// real axis from above reproduces [`Self::halfline_fourier`]. Continuing
    /// through the branch cut on `(0, Λ)` into the lower half-plane adds one
    /// winding of the `Log(ω−Λ)` term, i.e. a constant `+Γ`.
    pub fn halfline_fourier_complex(&self, omega: C64) -> C64 {
        let g = self.gamma / (2.0 * std::f64::consts::PI);
        let i = C64::new(0.0, 1.0);
        let principal = i * g * (omega.ln() - (omega - self.cutoff).ln());
        if omega.im < 0.0 && omega.re > 0.0 && omega.re < self.cutoff {
            principal + self.gamma
        } else {
            principal
        }
    }

    /// Full Fourier transform `∫ dτ e^{iωτ} G(τ) = Γ·1{0<ω<Λ}`, i.e. the
    /// reservoir spectral density times 2π.
    pub fn full_fourier(&self, omega: f64) -> f64 {
        if omega > 0.0 && omega < self.cutoff {
            self.gamma
        } else {
            0.0
        }
    }

    /// Partial transform `∫₀^u dτ e^{iωτ} G(τ)` by composite Simpson
    /// quadrature on a fixed grid; used by the detection-spectrum assembly.
    pub fn partial_fourier_grid(&self, omega: f64, u_grid: &[f64]) -> Vec<C64> {
        let mut out = Vec::with_capacity(u_grid.len());
        let mut acc = C64::new(0.0, 0.0);
        let mut prev_u = 0.0;
        let integrand = |t: f64| C64::new(0.0, omega * t).exp() * self.time(t);
        let mut prev_f = integrand(0.0);
        for &u in u_grid {
            if u > prev_u {
                let mid = 0.5 * (prev_u + u);
                let f_mid = integrand(mid);
                let f_end = integrand(u);
                acc += (u - prev_u) / 6.0 * (prev_f + 4.0 * f_mid + f_end);
                prev_f = f_end;
                prev_u = u;
            }
            out.push(acc);
        }
        out
    }
}

/// Kernel pair for the photonic and excitonic channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPair {
    pub photonic: KernelSpec,
    pub excitonic: KernelSpec,
}

impl KernelPair {
    pub fn new(photonic: KernelSpec, excitonic: KernelSpec) -> Self {
        KernelPair { photonic, excitonic }
    }

    /// Equal flat kernels on both channels, the configuration of the
    /// reference figures.
    pub fn symmetric(gamma: f64, cutoff: f64) -> Result<Self> {
        Ok(KernelPair {
            photonic: KernelSpec::flat(Channel::Photonic, gamma, cutoff)?,
            excitonic: KernelSpec::flat(Channel::Excitonic, gamma, cutoff)?,
        })
    }

    pub fn channel(&self, c: Channel) -> &KernelSpec {
        match c {
            Channel::Photonic => &self.photonic,
            Channel::Excitonic => &self.excitonic,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn kernel_at_zero_is_rate_times_cutoff_over_2pi() {
        let k = KernelSpec::flat(Channel::Photonic, 2.0 * PI * 1e-2, 1e3).unwrap();
        let g0 = k.time(0.0);
        assert_abs_diff_eq!(g0.re, 10.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g0.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn kernel_vanishes_at_full_cutoff_period() {
        let k = KernelSpec::flat(Channel::Excitonic, 0.37, 251.0).unwrap();
        let tau = 2.0 * PI / k.cutoff;
        assert!(k.time(tau).norm() < 1e-14);
    }

    #[test]
    fn kernel_negative_time_is_conjugate() {
        let k = KernelSpec::flat(Channel::Photonic, 1e-2, 1e3).unwrap();
        for tau in [1e-4, 3e-3, 0.7] {
            let diff = k.time(-tau) - k.time(tau).conj();
            assert!(diff.norm() < 1e-15);
        }
    }

    #[test]
    fn halfline_symmetry_point() {
        let k = KernelSpec::flat(Channel::Photonic, 0.04, 1e3).unwrap();
        let g = k.halfline_fourier(500.0).unwrap();
        assert_abs_diff_eq!(g.re, 0.02, epsilon = 1e-15);
        assert_abs_diff_eq!(g.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn halfline_off_support_is_pure_lamb_shift() {
        let k = KernelSpec::flat(Channel::Photonic, 0.04, 1e3).unwrap();
        let g = k.halfline_fourier(-500.0).unwrap();
        assert_abs_diff_eq!(g.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.im, 0.04 / (2.0 * PI) * (1.0f64 / 3.0).ln(), epsilon = 1e-15);
    }

    #[test]
    fn halfline_rejects_singular_points() {
        let k = KernelSpec::flat(Channel::Photonic, 0.04, 1e3).unwrap();
        assert!(matches!(
            k.halfline_fourier(0.0),
            Err(Error::SingularFrequency { .. })
        ));
        assert!(matches!(
            k.halfline_fourier(1e3 + 1e-8),
            Err(Error::SingularFrequency { .. })
        ));
    }

    #[test]
    fn complex_continuation_matches_real_axis_limit() {
        let k = KernelSpec::flat(Channel::Photonic, 1e-2, 1e3).unwrap();
        for omega in [0.414, 2.414, 731.0, -3.0] {
            let lim = k.halfline_fourier_complex(C64::new(omega, 1e-9));
            let real = k.halfline_fourier(omega).unwrap();
            assert!((lim - real).norm() < 1e-7, "ω = {omega}: {lim} vs {real}");
        }
    }

    #[test]
    fn passivity_of_flat_density() {
        let k = KernelSpec::flat(Channel::Photonic, 1e-2, 1e3).unwrap();
        for omega in [-5.0, -0.3, 0.17, 1.0, 999.0, 1234.5] {
            assert!(k.halfline_fourier(omega).unwrap().re >= 0.0);
        }
    }
}
