//! Truncated Fock-space representations of the two-mode system.
//!
//! The default representation truncates the bare photon/excitation modes at
//! `n_a`/`n_b` quanta (ordering `|photon⟩ ⊗ |excitation⟩`), builds `H0` as a
//! dense Hermitian matrix and diagonalizes it numerically; the polariton
//! operators are assembled from the Bogoliubov coefficients. Memory-kernel
//! filters act elementwise in the numerical eigenbasis of `H0`.
//!
//! A second representation truncates the *polariton* modes instead: `H0` is
//! exactly diagonal, `p_L, p_U` are elementary ladder operators, the ground
//! state is the Fock vacuum, and the bare operators follow from the inverse
//! Bogoliubov transform. In this representation the algebraic statements
//! about the dressed ground state (stationarity under the squeezed-reservoir
//! generator, exact decay endpoints) hold to machine precision instead of
//! truncation accuracy.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use std::sync::Arc;

use crate::hopfield::{Branch, PolaritonBasis};
use crate::{C64, Error, Result, SystemParams};

/// Hard cap on the truncated Hilbert-space dimension `n_a · n_b`.
pub const DIM_BUDGET: usize = 4096;

/// Fock truncation of the two-mode space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockConfig {
    pub n_a: usize,
    pub n_b: usize,
}

impl FockConfig {
    pub fn new(n_a: usize, n_b: usize) -> Result<Self> {
        if n_a < 2 || n_b < 2 {
            return Err(Error::InvalidParams(format!(
                "Fock cutoffs must be >= 2, got ({n_a}, {n_b})"
            )));
        }
        if n_a * n_b > DIM_BUDGET {
            return Err(Error::InvalidParams(format!(
                "Fock dimension {} exceeds budget {DIM_BUDGET}",
                n_a * n_b
            )));
        }
        Ok(FockConfig { n_a, n_b })
    }

    pub fn dim(&self) -> usize {
        self.n_a * self.n_b
    }
}

/// Which pair of modes spans the truncated space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Bare photon/excitation Fock space.
    Bare,
    /// Polariton Fock space (H0 exactly diagonal).
    Polariton,
}

/// Dense operator set for one representation, with everything needed by the
/// generators: computational-basis matrices, the `H0` eigenbasis, and the
/// mode operators transformed into that eigenbasis.
#[derive(Debug, Clone)]
pub struct ModeOperators {
    pub rep: Representation,
    pub config: FockConfig,
    pub params: SystemParams,
    pub basis: PolaritonBasis,
    /// Hilbert-space dimension.
    pub dim: usize,
    /// Bare-mode annihilators in the computational basis.
    pub a: Array2<C64>,
    pub b: Array2<C64>,
    /// Polariton annihilators in the computational basis.
    pub p: [Array2<C64>; 2],
    /// `H0` in the computational basis.
    pub h0: Array2<C64>,
    /// Eigenvalues of `H0`, ascending.
    pub energies: Array1<f64>,
    /// Columns are eigenvectors of `H0` in the computational basis.
    pub eigvecs: Array2<C64>,
    /// Polariton annihilators in the eigenbasis.
    pub p_eig: [Array2<C64>; 2],
    /// Bare annihilators in the eigenbasis.
    pub a_eig: Array2<C64>,
    pub b_eig: Array2<C64>,
}

/// Single-mode truncated ladder operator, `a[i-1, i] = √i`.
pub fn ladder(n: usize) -> Array2<C64> {
    let mut m = Array2::zeros((n, n));
    for i in 1..n {
        m[[i - 1, i]] = C64::new((i as f64).sqrt(), 0.0);
    }
    m
}

fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    ndarray::linalg::kron(a, b)
}

fn identity(n: usize) -> Array2<C64> {
    Array2::eye(n)
}

fn adjoint(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|c| c.conj())
}

/// Hermitian eigendecomposition with a residual check on the returned
/// vectors. For complex Hermitian input in row-major layout, LAPACK sees the
/// transposed (= conjugated) matrix and some backend versions return the
/// eigenvectors of `H*`; detect that case on the first column and conjugate.
pub fn hermitian_eig(h: &Array2<C64>) -> Result<(Array1<f64>, Array2<C64>)> {
    let (vals, vecs) = h.eigh(UPLO::Lower)?;
    let v0 = vecs.column(0).to_owned();
    let hv = h.dot(&v0);
    let res: f64 = hv.iter().zip(v0.iter()).map(|(a, b)| (a - b * vals[0]).norm_sqr()).sum();
    let v0c = v0.mapv(|c| c.conj());
    let hvc = h.dot(&v0c);
    let res_c: f64 =
        hvc.iter().zip(v0c.iter()).map(|(a, b)| (a - b * vals[0]).norm_sqr()).sum();
    if res_c < res {
        Ok((vals, vecs.mapv(|c| c.conj())))
    } else {
        Ok((vals, vecs))
    }
}

impl ModeOperators {
    /// Builds the bare-mode representation: truncated `a`, `b`, `H0` from the
    /// system parameters, polaritons from the basis coefficients, and the
    /// numerical eigenbasis of `H0`.
    pub fn bare(params: &SystemParams, basis: &PolaritonBasis, config: FockConfig) -> Result<Arc<Self>> {
        let a = kron(&ladder(config.n_a), &identity(config.n_b));
        let b = kron(&identity(config.n_a), &ladder(config.n_b));
        let ad = adjoint(&a);
        let bd = adjoint(&b);

        let i = C64::new(0.0, 1.0);
        let xa = &a + &ad;
        // H0 = ωc a†a + ωx b†b + iΩ (a+a†)(b−b†) + D (a+a†)²
        let mut h0 = ad.dot(&a).mapv(|c| c * params.omega_c);
        h0 = h0 + bd.dot(&b).mapv(|c| c * params.omega_x);
        let coupling = xa.dot(&(&b - &bd)).mapv(|c| c * (i * params.rabi));
        h0 = h0 + coupling;
        h0 = h0 + xa.dot(&xa).mapv(|c| c * params.diamag);
        // Hermitize against roundoff so the eigensolver sees an exactly
        // Hermitian matrix.
        let h0 = (&h0 + &adjoint(&h0)).mapv(|c| c * 0.5);

        let p = Self::polariton_ops_from(&a, &b, &ad, &bd, basis);
        let (energies, eigvecs) = hermitian_eig(&h0)?;

        let to_eig = |m: &Array2<C64>| -> Array2<C64> {
            adjoint(&eigvecs).dot(m).dot(&eigvecs)
        };
        let p_eig = [to_eig(&p[0]), to_eig(&p[1])];
        let a_eig = to_eig(&a);
        let b_eig = to_eig(&b);

        Ok(Arc::new(ModeOperators {
            rep: Representation::Bare,
            config,
            params: *params,
            basis: *basis,
            dim: config.dim(),
            a,
            b,
            p,
            h0,
            energies,
            eigvecs,
            p_eig,
            a_eig,
            b_eig,
        }))
    }

    /// Builds the polariton-mode representation with `n_a ↦ n_L`, `n_b ↦ n_U`
    /// cutoffs. `H0 = ω_L p_L†p_L + ω_U p_U†p_U` is exactly diagonal (the
    /// constant term of the diagonalized Hamiltonian is dropped) and the bare
    /// operators are assembled from the inverse transform.
    pub fn polariton(params: &SystemParams, basis: &PolaritonBasis, config: FockConfig) -> Result<Arc<Self>> {
        let p_l = kron(&ladder(config.n_a), &identity(config.n_b));
        let p_u = kron(&identity(config.n_a), &ladder(config.n_b));
        let dim = config.dim();

        let w = basis.inverse_matrix();
        let pd_l = adjoint(&p_l);
        let pd_u = adjoint(&p_u);
        // (a, b, a†, b†)ᵀ = W (p_L, p_U, p_L†, p_U†)ᵀ
        let assemble = |row: usize| -> Array2<C64> {
            let mut m = Array2::zeros((dim, dim));
            m.scaled_add(w[[row, 0]], &p_l);
            m.scaled_add(w[[row, 1]], &p_u);
            m.scaled_add(w[[row, 2]], &pd_l);
            m.scaled_add(w[[row, 3]], &pd_u);
            m
        };
        let a = assemble(0);
        let b = assemble(1);

        let wl = basis.omega(Branch::L);
        let wu = basis.omega(Branch::U);
        let mut energies = Array1::zeros(dim);
        let mut h0 = Array2::zeros((dim, dim));
        for nl in 0..config.n_a {
            for nu in 0..config.n_b {
                let idx = nl * config.n_b + nu;
                let e = wl * nl as f64 + wu * nu as f64;
                energies[idx] = e;
                h0[[idx, idx]] = C64::new(e, 0.0);
            }
        }

        let eigvecs = identity(dim);
        let p_eig = [p_l.clone(), p_u.clone()];
        let a_eig = a.clone();
        let b_eig = b.clone();

        Ok(Arc::new(ModeOperators {
            rep: Representation::Polariton,
            config,
            params: *params,
            basis: *basis,
            dim,
            a,
            b,
            p: [p_l, p_u],
            h0,
            energies,
            eigvecs,
            p_eig,
            a_eig,
            b_eig,
        }))
    }

    fn polariton_ops_from(
        a: &Array2<C64>,
        b: &Array2<C64>,
        ad: &Array2<C64>,
        bd: &Array2<C64>,
        basis: &PolaritonBasis,
    ) -> [Array2<C64>; 2] {
        let build = |c: &crate::hopfield::BranchCoefficients| {
            let mut m: Array2<C64> = Array2::zeros(a.raw_dim());
            m.scaled_add(c.w, a);
            m.scaled_add(c.x, b);
            m.scaled_add(c.y, ad);
            m.scaled_add(c.z, bd);
            m
        };
        [build(&basis.lower), build(&basis.upper)]
    }

    /// Adjoint of an operator matrix.
    pub fn dagger(m: &Array2<C64>) -> Array2<C64> {
        adjoint(m)
    }

    /// Ground state of (truncated) `H0` in the computational basis.
    pub fn ground_state(&self) -> Array1<C64> {
        self.eigvecs.column(0).to_owned()
    }

    /// Density matrix `|ψ⟩⟨ψ|` in the computational basis.
    pub fn pure_state(&self, psi: &Array1<C64>) -> Array2<C64> {
        let mut rho = Array2::zeros((self.dim, self.dim));
        for (i, vi) in psi.iter().enumerate() {
            for (j, vj) in psi.iter().enumerate() {
                rho[[i, j]] = vi * vj.conj();
            }
        }
        rho
    }

    /// Basis state `|i⟩⟨i|`.
    pub fn basis_state(&self, i: usize) -> Array2<C64> {
        let mut rho = Array2::zeros((self.dim, self.dim));
        rho[[i, i]] = C64::new(1.0, 0.0);
        rho
    }

    /// Index of the product basis state `|na, nb⟩` in the computational
    /// ordering.
    pub fn product_index(&self, na: usize, nb: usize) -> usize {
        na * self.config.n_b + nb
    }

    /// Transforms a computational-basis matrix into the `H0` eigenbasis.
    pub fn to_eigenbasis(&self, m: &Array2<C64>) -> Array2<C64> {
        if matches!(self.rep, Representation::Polariton) {
            return m.clone();
        }
        adjoint(&self.eigvecs).dot(m).dot(&self.eigvecs)
    }

    /// Transforms an eigenbasis matrix back to the computational basis.
    pub fn from_eigenbasis(&self, m: &Array2<C64>) -> Array2<C64> {
        if matches!(self.rep, Representation::Polariton) {
            return m.clone();
        }
        self.eigvecs.dot(m).dot(&adjoint(&self.eigvecs))
    }

    /// `Tr{O ρ}` for dense matrices.
    pub fn expectation(o: &Array2<C64>, rho: &Array2<C64>) -> C64 {
        let n = rho.nrows();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += o[[i, k]] * rho[[k, i]];
            }
        }
        acc
    }

    /// Number operator expectation `⟨m†m⟩` given `m` in the same basis as ρ.
    pub fn occupation(m: &Array2<C64>, rho: &Array2<C64>) -> f64 {
        let md = adjoint(m);
        let num = md.dot(m);
        Self::expectation(&num, rho).re
    }
}

/// Named initial states for scenario runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    /// Ground state of the truncated `H0`.
    DressedGround,
    /// Bare two-mode vacuum `|0,0⟩` (bare representation only).
    BareVacuum,
    /// Product Fock state `|n_a, n_b⟩` (bare representation only).
    Fock(usize, usize),
}

impl InitialState {
    pub fn density(&self, ops: &ModeOperators) -> Result<Array2<C64>> {
        match self {
            InitialState::DressedGround => {
                let g = ops.ground_state();
                Ok(ops.pure_state(&g))
            }
            InitialState::BareVacuum => {
                if ops.rep != Representation::Bare {
                    return Err(Error::InvalidParams(
                        "bare vacuum initial state requires the bare representation".into(),
                    ));
                }
                Ok(ops.basis_state(0))
            }
            InitialState::Fock(na, nb) => {
                if ops.rep != Representation::Bare {
                    return Err(Error::InvalidParams(
                        "Fock initial state requires the bare representation".into(),
                    ));
                }
                if *na >= ops.config.n_a || *nb >= ops.config.n_b {
                    return Err(Error::InvalidParams(format!(
                        "Fock state ({na},{nb}) outside truncation ({}, {})",
                        ops.config.n_a, ops.config.n_b
                    )));
                }
                Ok(ops.basis_state(ops.product_index(*na, *nb)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfield::diagonalize_polaritons;
    use approx::assert_abs_diff_eq;

    #[test]
    fn decoupled_h0_is_diagonal() {
        let params = SystemParams::new(1.0, 0.7, 0.0, 0.0).unwrap();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops = ModeOperators::bare(&params, &basis, FockConfig::new(2, 2).unwrap()).unwrap();
        let expected = [0.0, 0.7, 1.0, 1.7];
        for (i, e) in expected.iter().enumerate() {
            assert_abs_diff_eq!(ops.h0[[i, i]].re, *e, epsilon = 1e-14);
            for j in 0..4 {
                if j != i {
                    assert!(ops.h0[[i, j]].norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn truncated_commutator_defect_is_last_level_only() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let cfg = FockConfig::new(4, 3).unwrap();
        let ops = ModeOperators::bare(&params, &basis, cfg).unwrap();
        let ad = ModeOperators::dagger(&ops.a);
        let comm = ops.a.dot(&ad) - ad.dot(&ops.a);
        for na in 0..cfg.n_a {
            for nb in 0..cfg.n_b {
                let i = na * cfg.n_b + nb;
                let expected = if na == cfg.n_a - 1 {
                    // truncation artifact on the top photon level
                    1.0 - cfg.n_a as f64
                } else {
                    1.0
                };
                assert_abs_diff_eq!(comm[[i, i]].re, expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn lowest_gap_approaches_lower_polariton() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops =
            ModeOperators::bare(&params, &basis, FockConfig::new(10, 10).unwrap()).unwrap();
        let gap = ops.energies[1] - ops.energies[0];
        assert_abs_diff_eq!(gap, basis.omega(Branch::L), epsilon = 5e-3);
    }

    #[test]
    fn polariton_rep_bare_commutator_holds_in_bulk() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let cfg = FockConfig::new(8, 8).unwrap();
        let ops = ModeOperators::polariton(&params, &basis, cfg).unwrap();
        let ad = ModeOperators::dagger(&ops.a);
        let comm = ops.a.dot(&ad) - ad.dot(&ops.a);
        // Away from the truncation boundary, [a, a†] = 1.
        let i = ops.product_index(2, 2);
        assert_abs_diff_eq!(comm[[i, i]].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(comm[[i, i]].im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn dressed_ground_photon_number_matches_moments() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops =
            ModeOperators::bare(&params, &basis, FockConfig::new(10, 10).unwrap()).unwrap();
        let rho = InitialState::DressedGround.density(&ops).unwrap();
        let na = ModeOperators::occupation(&ops.a, &rho);
        assert_abs_diff_eq!(na, 0.207, epsilon = 2e-3);
        // Polariton occupation of the dressed ground state is ~0.
        let nl = ModeOperators::occupation(&ops.p[0], &rho);
        assert!(nl < 1e-3, "n_L = {nl}");
    }
}
