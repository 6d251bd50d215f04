//! Stationary correlation functions of the reservoir free fields.
//!
//! Letters are indexed in the channel basis `ℓ = (F_c, F_x, F_c†, F_x†)` with
//! partner system operators `s = (a, b, a†, b†)`, and in the polariton basis
//! `Λ = (F_L, F_U, F_L†, F_U†)` with `F_j = w_j F_c + x_j F_x + y_j F_c† +
//! z_j F_x†`.
//!
//! A correlation `⟨ℓ_m(t+τ) ℓ_n(t)⟩` in a stationary reservoir state factors
//! into a memory kernel times an equal-time moment `⟨s_m s_n⟩`:
//! the kernel is `G_ch(|τ|)` when the *later* operator is an annihilation
//! letter of channel `ch`, and `G_ch(|τ|)*` when it is a creation letter.
//! For the self-channel entries this reproduces the stationary forms derived
//! from the quantum regression theorem, including the sign-split rule for the
//! phase-sensitive pair; the later-operator convention extends them to the
//! cross-channel entries so that the canonical commutators
//! `[F_μ(t), F_ν†(t')] = δ_μν G_μ(t−t')` hold identically for any kernels.
//!
//! Two reservoir states ship: the vacuum (only `⟨s_μ s_ν†⟩`-type moments
//! survive) and the squeezed, correlated state induced by the ground state of
//! the whole interacting system (moments are the closed-system ground-state
//! moments).

use ndarray::Array2;

use crate::hopfield::{ground_state_moments, MomentMatrix, PolaritonBasis};
use crate::kernel::{Channel, KernelPair};
use crate::{C64, Result};

/// Which reservoir state the correlations describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationMode {
    /// Both reservoirs in their own vacuum.
    Vacuum,
    /// Reservoirs traced out of the ground state of the whole system:
    /// squeezed and cross-correlated with the same moments as the modes.
    SqueezedGround,
}

/// Integration window of a half-line transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauWindow {
    /// `∫₀^∞ dτ e^{iωτ} ⟨ℓ_m(+τ) ℓ_n⟩`
    Plus,
    /// `∫₀^∞ dτ e^{iωτ} ⟨ℓ_m(−τ) ℓ_n⟩`
    Minus,
}

/// Channel of a letter index (0, 2 → photonic; 1, 3 → excitonic).
fn letter_channel(m: usize) -> Channel {
    if m % 2 == 0 {
        Channel::Photonic
    } else {
        Channel::Excitonic
    }
}

/// Whether a letter index is a creation letter.
fn is_creation(m: usize) -> bool {
    m >= 2
}

/// Conjugate letter index (F_c ↔ F_c†, ...).
pub fn conjugate_letter(m: usize) -> usize {
    (m + 2) % 4
}

/// Evaluator for reservoir free-field correlations.
#[derive(Debug, Clone)]
pub struct ReservoirCorrelations {
    pub mode: CorrelationMode,
    pub kernels: KernelPair,
    /// Equal-time moments `⟨s_m s_n⟩` of the reference state.
    pub moments: MomentMatrix,
}

/// Vacuum reservoirs: `⟨F⁰_μ(t) F⁰_ν†(t')⟩ = δ_μν G_μ(t−t')`, all other
/// pairings zero.
pub fn vacuum_correlations(kernels: KernelPair) -> ReservoirCorrelations {
    ReservoirCorrelations {
        mode: CorrelationMode::Vacuum,
        kernels,
        moments: MomentMatrix::vacuum(),
    }
}

/// Squeezed and correlated reservoirs induced by the whole-system ground
/// state; the moments are the closed-system ground-state moments.
pub fn squeezed_ground_correlations(
    basis: &PolaritonBasis,
    kernels: KernelPair,
) -> ReservoirCorrelations {
    ReservoirCorrelations {
        mode: CorrelationMode::SqueezedGround,
        kernels,
        moments: ground_state_moments(basis),
    }
}

impl ReservoirCorrelations {
    /// Stationary channel-basis correlation `⟨ℓ_m(t+τ) ℓ_n(t)⟩`.
    pub fn channel_correlation(&self, m: usize, n: usize, tau: f64) -> C64 {
        let moment = self.moments.get(m, n);
        if moment.norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        // Kernel of the later operator.
        let (idx, abs_tau) = if tau >= 0.0 { (m, tau) } else { (n, -tau) };
        let g = self.kernels.channel(letter_channel(idx)).time(abs_tau);
        let kernel = if is_creation(idx) { g.conj() } else { g };
        kernel * moment
    }

    /// Half-line transform of a channel-basis correlation over the given
    /// window, `∫₀^∞ dτ e^{iωτ} ⟨ℓ_m(±τ) ℓ_n⟩`.
    ///
    /// For the `Plus` window the kernel transform is keyed to letter `m`
    /// (`G(ω)₊` for annihilation letters, `G(−ω)₊*` for creation letters);
    /// for the `Minus` window it is keyed to letter `n`.
    pub fn channel_halfline(
        &self,
        m: usize,
        n: usize,
        omega: f64,
        window: TauWindow,
    ) -> Result<C64> {
        let moment = self.moments.get(m, n);
        if moment.norm() == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        let idx = match window {
            TauWindow::Plus => m,
            TauWindow::Minus => n,
        };
        let spec = self.kernels.channel(letter_channel(idx));
        let kernel = if is_creation(idx) {
            spec.halfline_fourier(-omega)?.conj()
        } else {
            spec.halfline_fourier(omega)?
        };
        Ok(kernel * moment)
    }

    /// Regularized variant of [`Self::channel_halfline`] used by the Bohr
    /// frequency filters of the master equation, where ω runs over all energy
    /// differences of the truncated spectrum and can land on the
    /// principal-value endpoints of the kernel transform. Frequencies within
    /// the singular neighbourhood are nudged to its edge; ω = 0 exactly takes
    /// the two-sided average. See the module notes of `liouvillian`.
    pub fn channel_halfline_regularized(
        &self,
        m: usize,
        n: usize,
        omega: f64,
        window: TauWindow,
    ) -> C64 {
        let moment = self.moments.get(m, n);
        if moment.norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        let idx = match window {
            TauWindow::Plus => m,
            TauWindow::Minus => n,
        };
        let spec = self.kernels.channel(letter_channel(idx));
        let kernel = if is_creation(idx) {
            spec.halfline_fourier_regularized(-omega).conj()
        } else {
            spec.halfline_fourier_regularized(omega)
        };
        kernel * moment
    }

    /// Full spectral-density matrix of the channel letters,
    /// `𝒞_mn(ω) = ∫ dτ e^{iωτ} ⟨ℓ_m(t+τ) ℓ_n(t)⟩`.
    pub fn spectral_density(&self, omega: f64) -> Result<Array2<C64>> {
        let mut c = Array2::zeros((4, 4));
        for m in 0..4 {
            for n in 0..4 {
                let plus = self.channel_halfline(m, n, omega, TauWindow::Plus)?;
                // ∫_{−∞}^0 dτ e^{iωτ} ⟨ℓ_m(τ)ℓ_n⟩ = ∫₀^∞ dτ e^{−iωτ} ⟨ℓ_m(−τ)ℓ_n⟩
                let minus = self.channel_halfline(m, n, -omega, TauWindow::Minus)?;
                c[[m, n]] = plus + minus;
            }
        }
        Ok(c)
    }
}

/// Correlations of the polariton-basis letters `Λ = (F_L, F_U, F_L†, F_U†)`,
/// obtained from the channel-basis evaluator by the linear combination with
/// the Bogoliubov coefficients.
#[derive(Debug, Clone)]
pub struct PolaritonCorrelations {
    pub corr: ReservoirCorrelations,
    /// `coeff[p][m]`: channel-letter decomposition of polariton letter `p`.
    coeff: [[C64; 4]; 4],
}

impl PolaritonCorrelations {
    pub fn new(corr: ReservoirCorrelations, basis: &PolaritonBasis) -> Self {
        let mut coeff = [[C64::new(0.0, 0.0); 4]; 4];
        for (p, b) in basis.branches().iter().enumerate() {
            coeff[p] = [b.w, b.x, b.y, b.z];
            // F_j† = y_j* F_c + z_j* F_x + w_j* F_c† + x_j* F_x†
            coeff[p + 2] = [b.y.conj(), b.z.conj(), b.w.conj(), b.x.conj()];
        }
        PolaritonCorrelations { corr, coeff }
    }

    /// `⟨Λ_p(t+τ) Λ_q(t)⟩`
    pub fn correlation(&self, p: usize, q: usize, tau: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for m in 0..4 {
            for n in 0..4 {
                let c = self.coeff[p][m] * self.coeff[q][n];
                if c.norm() > 0.0 {
                    acc += c * self.corr.channel_correlation(m, n, tau);
                }
            }
        }
        acc
    }

    /// Windowed half-line transform, see
    /// [`ReservoirCorrelations::channel_halfline`].
    pub fn halfline(&self, p: usize, q: usize, omega: f64, window: TauWindow) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for m in 0..4 {
            for n in 0..4 {
                let c = self.coeff[p][m] * self.coeff[q][n];
                if c.norm() > 0.0 {
                    acc += c * self.corr.channel_halfline(m, n, omega, window)?;
                }
            }
        }
        Ok(acc)
    }

    /// Regularized variant used to build Bohr-frequency filters.
    pub fn halfline_regularized(&self, p: usize, q: usize, omega: f64, window: TauWindow) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for m in 0..4 {
            for n in 0..4 {
                let c = self.coeff[p][m] * self.coeff[q][n];
                if c.norm() > 0.0 {
                    acc += c * self.corr.channel_halfline_regularized(m, n, omega, window);
                }
            }
        }
        acc
    }
}
