//! System parameters of the closed two-mode Hamiltonian.

use crate::{Error, Result};

/// Parameters of the closed Hamiltonian
/// `H0 = ωc a†a + ωx b†b + iΩ (a+a†)(b−b†) + D (a+a†)²`,
/// all in units of the cavity frequency `ωc`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Cavity mode frequency ωc.
    pub omega_c: f64,
    /// Matter excitation frequency ωx.
    pub omega_x: f64,
    /// Light-matter coupling strength Ω.
    pub rabi: f64,
    /// Diamagnetic coefficient D.
    pub diamag: f64,
}

impl SystemParams {
    /// Creates a validated parameter set.
    ///
    /// All fields must be finite and non-negative and satisfy the
    /// no-phase-transition bound `D >= Ω²/ωx` (a small relative slack is
    /// allowed for the equality case `D = Ω²/ωx` computed in floating point).
    pub fn new(omega_c: f64, omega_x: f64, rabi: f64, diamag: f64) -> Result<Self> {
        let p = SystemParams { omega_c, omega_x, rabi, diamag };
        p.validate()?;
        Ok(p)
    }

    /// Parameter set used in the reference figures: `ωx = ωc`, `Ω = ωc`,
    /// `D = Ω²/ωx`.
    pub fn figure() -> Self {
        SystemParams { omega_c: 1.0, omega_x: 1.0, rabi: 1.0, diamag: 1.0 }
    }

    /// Checks the invariants listed on the type.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega_c", self.omega_c),
            ("omega_x", self.omega_x),
            ("rabi", self.rabi),
            ("diamag", self.diamag),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParams(format!("{name} = {v} must be finite and >= 0")));
            }
        }
        if self.omega_x == 0.0 && self.rabi > 0.0 {
            return Err(Error::InvalidParams("omega_x = 0 with nonzero rabi".into()));
        }
        if self.rabi > 0.0 {
            let bound = self.rabi * self.rabi / self.omega_x;
            if self.diamag < bound * (1.0 - 1e-12) {
                return Err(Error::InvalidParams(format!(
                    "diamag = {} < rabi²/omega_x = {bound} (no-phase-transition condition)",
                    self.diamag
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_figure_params() {
        assert!(SystemParams::figure().validate().is_ok());
    }

    #[test]
    fn rejects_subcritical_diamagnetic_term() {
        let err = SystemParams::new(1.0, 1.0, 1.0, 0.5).unwrap_err();
        assert!(matches!(err, Error::InvalidParams(_)));
    }

    #[test]
    fn rejects_negative_and_non_finite() {
        assert!(SystemParams::new(1.0, -1.0, 0.0, 0.0).is_err());
        assert!(SystemParams::new(f64::NAN, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn accepts_critical_boundary() {
        // D = Ω²/ωx exactly, including a value that is not representable
        // exactly in binary.
        assert!(SystemParams::new(1.0, 0.8, 0.3, 0.09 / 0.8).is_ok());
    }
}
