//! Generators of the reduced dynamics in truncated Fock space.
//!
//! The time-nonlocal Born master equation, with the density operator moved
//! outside the memory integral and the switch-on time sent to −∞, becomes a
//! time-independent superoperator: in the eigenbasis of `H0`, each memory
//! integral turns into an elementwise multiplication of the operand
//! (`p_k ρ`, `ρ p_k†`, ...) by the half-line kernel transform evaluated at
//! the Bohr frequency of that matrix element,
//! `∫₀^∞ dτ C(τ) e^{−i(E_m−E_n)τ} = Ĉ(E_n−E_m)`.
//!
//! The dissipator keeps the eight commutator blocks
//!
//! ```text
//! Σ_jk [D^L_jk, p_j†] + [p_j, D^R_jk] + [C^L_jk, p_j] + [p_j†, C^R_jk]
//!    + [p_j†, B^L_jk] + [B^R_jk, p_j†] + [p_j, A^L_jk] + [A^R_jk, p_j]
//! ```
//!
//! with the correlation of each block supplied by the reservoir state. For
//! vacuum reservoirs all eight blocks are active; for the squeezed-correlated
//! reservoirs only the blocks with annihilation-last orderings survive and
//! the equation reduces to `Σ_jk [D^L+B^R, p_j†] + [p_j, D^R+A^L]`.
//!
//! Two Markov comparison generators are provided: the non-Lindblad form whose
//! coefficients evaluate the same correlations at the sharp polariton
//! frequencies, and the post-trace-RWA Lindblad form with jump rates
//! `Γ_c|w_j|² + Γ_x|x_j|²` on the polariton lowering operators.
//!
//! Bohr frequencies can land on the principal-value endpoints {0, Λ} of the
//! kernel transform (the diagonal of any operand sits at ω = 0 exactly);
//! those filter entries use the edge-regularized transform of
//! [`crate::kernel::KernelSpec::halfline_fourier_regularized`].

use ndarray::linalg::general_mat_mul;
use ndarray::{Array1, Array2};
use ndarray_linalg::{Factorize, Solve};
use rayon::prelude::*;
use std::sync::Arc;

use crate::correlations::{PolaritonCorrelations, ReservoirCorrelations, TauWindow};
use crate::fock::ModeOperators;
use crate::kernel::KernelPair;
use crate::{C64, CorrelationMode, Error, Result};

/// One of the eight dissipator blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Dl,
    Dr,
    Cl,
    Cr,
    Bl,
    Br,
    Al,
    Ar,
}

/// Operand families entering the blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Operand {
    /// `p_k ρ`
    PRho = 0,
    /// `ρ p_k†`
    RhoPd = 1,
    /// `p_k† ρ`
    PdRho = 2,
    /// `ρ p_k`
    RhoP = 3,
}

impl Block {
    fn operand(self) -> Operand {
        match self {
            Block::Dl | Block::Al => Operand::PRho,
            Block::Dr | Block::Br => Operand::RhoPd,
            Block::Cl | Block::Bl => Operand::PdRho,
            Block::Cr | Block::Ar => Operand::RhoP,
        }
    }

    /// Polariton-basis letters (first, second) of the block correlation and
    /// the transform window; letters 0,1 = F_L, F_U and 2,3 = their daggers.
    fn letters(self, j: usize, k: usize) -> (usize, usize, TauWindow) {
        match self {
            Block::Dl => (j, k + 2, TauWindow::Plus),
            Block::Dr => (k, j + 2, TauWindow::Minus),
            Block::Cl => (j + 2, k, TauWindow::Plus),
            Block::Cr => (k + 2, j, TauWindow::Minus),
            Block::Bl => (j, k, TauWindow::Plus),
            Block::Br => (k, j, TauWindow::Minus),
            Block::Al => (j + 2, k + 2, TauWindow::Plus),
            Block::Ar => (k + 2, j + 2, TauWindow::Minus),
        }
    }

    /// Commutator group the block accumulates into:
    /// 0: `[Y, p_j†]`, 1: `[p_j, Y]`, 2: `[Y, p_j]`, 3: `[p_j†, Y]`.
    fn group(self) -> usize {
        match self {
            Block::Dl | Block::Br => 0,
            Block::Dr | Block::Al => 1,
            Block::Cl | Block::Ar => 2,
            Block::Cr | Block::Bl => 3,
        }
    }
}

const ALL_BLOCKS: [Block; 8] = [
    Block::Dl,
    Block::Dr,
    Block::Cl,
    Block::Cr,
    Block::Bl,
    Block::Br,
    Block::Al,
    Block::Ar,
];

/// Bohr-frequency filter of one dissipator term: a full matrix for the
/// filtered Born generator, a scalar for the Markov forms.
#[derive(Debug, Clone)]
enum Filter {
    Scalar(C64),
    Matrix(Array2<C64>),
}

#[derive(Debug, Clone)]
struct Term {
    block: Block,
    j: usize,
    k: usize,
    filter: Filter,
}

/// Flavor of generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Bohr-frequency-filtered Born dissipator.
    BornFiltered,
    /// Markov evaluation at sharp polariton frequencies (squeezed
    /// correlations); not of Lindblad form.
    MarkovNonLindblad,
    /// Pre/post-trace RWA Lindblad form with vacuum reservoirs.
    MarkovRwaLindblad,
}

/// Time-independent generator `L = L0 + L_diss` acting on density matrices
/// expressed in the `H0` eigenbasis.
#[derive(Debug, Clone)]
pub struct Generator {
    pub ops: Arc<ModeOperators>,
    pub kind: GeneratorKind,
    pub mode: CorrelationMode,
    /// `−i(E_m − E_n)` elementwise phases of the coherent part.
    l0_phase: Array2<C64>,
    terms: Vec<Term>,
    needs: [bool; 4],
    pub warnings: Vec<String>,
}

/// Scratch space for one generator application.
#[derive(Debug, Clone)]
pub struct Workspace {
    x: [[Array2<C64>; 2]; 4],
    y: Array2<C64>,
    pd: [Array2<C64>; 2],
}

impl Workspace {
    pub fn new_for(gen: &Generator) -> Self {
        let dim = gen.dim();
        let z = || Array2::<C64>::zeros((dim, dim));
        let pd = [
            gen.ops.p_eig[0].t().mapv(|c| c.conj()),
            gen.ops.p_eig[1].t().mapv(|c| c.conj()),
        ];
        Workspace { x: [[z(), z()], [z(), z()], [z(), z()], [z(), z()]], y: z(), pd }
    }
}

fn elementwise_mul_add(y: &mut Array2<C64>, f: &Array2<C64>, x: &Array2<C64>) {
    ndarray::Zip::from(y).and(f).and(x).for_each(|y, &f, &x| *y += f * x);
}

impl Generator {
    /// Builds the Bohr-frequency-filtered Born dissipator for the given
    /// reservoir correlations.
    pub fn born_filtered(ops: Arc<ModeOperators>, corr: &ReservoirCorrelations) -> Self {
        let pol = PolaritonCorrelations::new(corr.clone(), &ops.basis);
        let n = ops.dim;
        let energies = ops.energies.clone();

        let mut warnings = Vec::new();
        let max_bohr = energies[n - 1] - energies[0];
        for spec in [&corr.kernels.photonic, &corr.kernels.excitonic] {
            if max_bohr > spec.cutoff {
                warnings.push(format!(
                    "truncated spectrum spans Bohr frequencies up to {max_bohr:.3} beyond the kernel cutoff {:.3}; those transitions see zero spectral density",
                    spec.cutoff
                ));
            }
        }

        let mut terms = Vec::new();
        for &block in &ALL_BLOCKS {
            for j in 0..2 {
                for k in 0..2 {
                    let (p, q, window) = block.letters(j, k);
                    // Skip blocks whose correlation vanishes identically by
                    // moment structure (the C blocks and the
                    // annihilation-first B/A blocks in squeezed mode).
                    let probe = pol.halfline_regularized(p, q, 0.7, window).norm()
                        + pol.halfline_regularized(p, q, -1.3, window).norm();
                    if probe == 0.0 {
                        continue;
                    }
                    let mut f = Array2::zeros((n, n));
                    for m in 0..n {
                        for nn in 0..n {
                            let omega = energies[nn] - energies[m];
                            f[[m, nn]] = pol.halfline_regularized(p, q, omega, window);
                        }
                    }
                    terms.push(Term { block, j, k, filter: Filter::Matrix(f) });
                }
            }
        }

        Self::assemble(ops, GeneratorKind::BornFiltered, corr.mode, terms, warnings)
    }

    /// Markov generator evaluated at the sharp polariton frequencies with the
    /// squeezed-correlated reservoirs (the non-Lindblad comparison form).
    pub fn markov_non_lindblad(ops: Arc<ModeOperators>, corr: &ReservoirCorrelations) -> Self {
        let pol = PolaritonCorrelations::new(corr.clone(), &ops.basis);
        let omega = [ops.basis.lower.omega, ops.basis.upper.omega];
        let mut terms = Vec::new();
        for &block in &ALL_BLOCKS {
            for j in 0..2 {
                for k in 0..2 {
                    let (p, q, window) = block.letters(j, k);
                    // Operand rotation under U0: p_k ρ carries e^{+iω_k τ},
                    // ρ p_k† carries e^{−iω_k τ}, and so on.
                    let sharp = match block.operand() {
                        Operand::PRho => omega[k],
                        Operand::RhoPd => -omega[k],
                        Operand::PdRho => -omega[k],
                        Operand::RhoP => omega[k],
                    };
                    let lambda = pol.halfline_regularized(p, q, sharp, window);
                    if lambda.norm() > 0.0 {
                        terms.push(Term { block, j, k, filter: Filter::Scalar(lambda) });
                    }
                }
            }
        }
        Self::assemble(ops, GeneratorKind::MarkovNonLindblad, corr.mode, terms, Vec::new())
    }

    /// RWA-Lindblad comparison generator: jump rates
    /// `Γ_j = Γ_c|w_j|² + Γ_x|x_j|²` on the polariton lowering operators,
    /// delta-approximated kernels, vacuum reservoirs.
    pub fn markov_rwa_lindblad(ops: Arc<ModeOperators>, kernels: &KernelPair) -> Self {
        let mut terms = Vec::new();
        for j in 0..2 {
            let b = ops.basis.branches()[j];
            let rate = kernels.photonic.gamma * b.w.norm_sqr()
                + kernels.excitonic.gamma * b.x.norm_sqr();
            let half = C64::new(0.5 * rate, 0.0);
            terms.push(Term { block: Block::Dl, j, k: j, filter: Filter::Scalar(half) });
            terms.push(Term { block: Block::Dr, j, k: j, filter: Filter::Scalar(half) });
        }
        Self::assemble(
            ops,
            GeneratorKind::MarkovRwaLindblad,
            CorrelationMode::Vacuum,
            terms,
            Vec::new(),
        )
    }

    fn assemble(
        ops: Arc<ModeOperators>,
        kind: GeneratorKind,
        mode: CorrelationMode,
        terms: Vec<Term>,
        warnings: Vec<String>,
    ) -> Self {
        let n = ops.dim;
        let mut l0_phase = Array2::zeros((n, n));
        for m in 0..n {
            for nn in 0..n {
                l0_phase[[m, nn]] = C64::new(0.0, -(ops.energies[m] - ops.energies[nn]));
            }
        }
        let mut needs = [false; 4];
        for t in &terms {
            needs[t.block.operand() as usize] = true;
        }
        Generator { ops, kind, mode, l0_phase, terms, needs, warnings }
    }

    pub fn dim(&self) -> usize {
        self.ops.dim
    }

    /// Applies `L` to a density matrix in the eigenbasis, writing into `out`.
    pub fn apply_into(&self, rho: &Array2<C64>, out: &mut Array2<C64>, ws: &mut Workspace) {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);

        // Coherent part, elementwise in the eigenbasis.
        ndarray::Zip::from(&mut *out)
            .and(&self.l0_phase)
            .and(rho)
            .for_each(|o, &p, &r| *o = p * r);

        // Operand families.
        for k in 0..2 {
            let p = &self.ops.p_eig[k];
            let pd = &ws.pd[k];
            if self.needs[Operand::PRho as usize] {
                general_mat_mul(one, p, rho, zero, &mut ws.x[Operand::PRho as usize][k]);
            }
            if self.needs[Operand::RhoP as usize] {
                general_mat_mul(one, rho, p, zero, &mut ws.x[Operand::RhoP as usize][k]);
            }
            if self.needs[Operand::RhoPd as usize] {
                general_mat_mul(one, rho, pd, zero, &mut ws.x[Operand::RhoPd as usize][k]);
            }
            if self.needs[Operand::PdRho as usize] {
                general_mat_mul(one, pd, rho, zero, &mut ws.x[Operand::PdRho as usize][k]);
            }
        }

        // Accumulate the four commutator groups per branch.
        for j in 0..2 {
            for group in 0..4 {
                let mut any = false;
                for t in &self.terms {
                    if t.j != j || t.block.group() != group {
                        continue;
                    }
                    if !any {
                        ws.y.fill(zero);
                        any = true;
                    }
                    let x = &ws.x[t.block.operand() as usize][t.k];
                    match &t.filter {
                        Filter::Scalar(s) => ws.y.scaled_add(*s, x),
                        Filter::Matrix(f) => elementwise_mul_add(&mut ws.y, f, x),
                    }
                }
                if !any {
                    continue;
                }
                let p = &self.ops.p_eig[j];
                let pd = &ws.pd[j];
                match group {
                    // [Y, p_j†]
                    0 => {
                        general_mat_mul(one, &ws.y, pd, one, out);
                        general_mat_mul(-one, pd, &ws.y, one, out);
                    }
                    // [p_j, Y]
                    1 => {
                        general_mat_mul(one, p, &ws.y, one, out);
                        general_mat_mul(-one, &ws.y, p, one, out);
                    }
                    // [Y, p_j]
                    2 => {
                        general_mat_mul(one, &ws.y, p, one, out);
                        general_mat_mul(-one, p, &ws.y, one, out);
                    }
                    // [p_j†, Y]
                    3 => {
                        general_mat_mul(one, pd, &ws.y, one, out);
                        general_mat_mul(-one, &ws.y, pd, one, out);
                    }
                    _ => unreachable!(),
                }
            }
        }
    }

    /// Allocating form of [`Self::apply_into`].
    pub fn apply(&self, rho: &Array2<C64>) -> Array2<C64> {
        let mut out = Array2::zeros((self.dim(), self.dim()));
        let mut ws = Workspace::new_for(self);
        self.apply_into(rho, &mut out, &mut ws);
        out
    }

    /// Max-norm of `L[ρ]`, used for stationarity checks.
    pub fn residual_norm(&self, rho: &Array2<C64>) -> f64 {
        self.apply(rho).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Dense matrix of the vectorized generator with row-major vectorization
    /// `vec(ρ)[m·N + n] = ρ[m,n]`.
    pub fn to_dense(&self) -> Array2<C64> {
        let n = self.dim();
        let nn = n * n;
        let columns: Vec<Vec<C64>> = (0..nn)
            .into_par_iter()
            .map_init(
                || {
                    (
                        Workspace::new_for(self),
                        Array2::<C64>::zeros((n, n)),
                        Array2::<C64>::zeros((n, n)),
                    )
                },
                |(ws, basis_mat, out), q| {
                    let (m, c) = (q / n, q % n);
                    basis_mat[[m, c]] = C64::new(1.0, 0.0);
                    self.apply_into(basis_mat, out, ws);
                    basis_mat[[m, c]] = C64::new(0.0, 0.0);
                    out.iter().cloned().collect()
                },
            )
            .collect();
        let mut dense = Array2::zeros((nn, nn));
        for (q, col) in columns.into_iter().enumerate() {
            for (r, v) in col.into_iter().enumerate() {
                dense[[r, q]] = v;
            }
        }
        dense
    }
}

/// Runs a closure on a thread with a large stack; the LAPACK LU kernels use
/// stack space proportional to the blocked recursion depth and overflow the
/// 2 MiB default of Rust test threads for dimensions in the thousands.
pub(crate) fn with_big_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(64 * 1024 * 1024)
            .spawn_scoped(s, f)
            .expect("spawn big-stack worker")
            .join()
            .expect("big-stack worker panicked")
    })
}

/// Steady state of a generator: the null vector of the vectorized `L`,
/// reshaped, Hermitized, and trace-normalized (eigenbasis representation).
///
/// Uniqueness is checked by estimating the second-closest generator
/// eigenvalue to zero with a deflated inverse iteration; a modulus below
/// `1e−10` is reported as [`Error::DegenerateSteadyState`].
pub fn steady_state(gen: &Generator) -> Result<Array2<C64>> {
    with_big_stack(|| steady_state_impl(gen))
}

fn steady_state_impl(gen: &Generator) -> Result<Array2<C64>> {
    let n = gen.dim();
    let nn = n * n;
    let mut dense = gen.to_dense();
    // Shift into the resolvent set: the spectrum has the null vector at 0
    // and decaying modes with Re λ < 0.
    let sigma = 1e-8;
    for q in 0..nn {
        dense[[q, q]] -= C64::new(sigma, 0.0);
    }
    let lu = dense.factorize().map_err(Error::from)?;

    // Inverse iteration from the maximally mixed state, which overlaps the
    // steady state.
    let mut v = Array1::from_elem(nn, C64::new(0.0, 0.0));
    for m in 0..n {
        v[m * n + m] = C64::new(1.0 / n as f64, 0.0);
    }
    for _ in 0..4 {
        let w = lu.solve(&v).map_err(Error::from)?;
        let norm = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        v = w.mapv(|c| c / norm);
    }

    // Deflated iteration for the second-closest eigenvalue to zero.
    let mut u = Array1::from_shape_fn(nn, |q| {
        C64::new(((q * 2654435761 + 1013904223) % 1000) as f64 / 1000.0 - 0.5, 0.3)
    });
    for _ in 0..6 {
        let overlap: C64 = v.iter().zip(u.iter()).map(|(a, b)| a.conj() * b).sum();
        for (ui, vi) in u.iter_mut().zip(v.iter()) {
            *ui -= overlap * vi;
        }
        let w = lu.solve(&u).map_err(Error::from)?;
        let norm = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        u = w.mapv(|c| c / norm);
    }
    let lu_u = {
        let mut rho = Array2::zeros((n, n));
        for m in 0..n {
            for c in 0..n {
                rho[[m, c]] = u[m * n + c];
            }
        }
        gen.apply(&rho)
    };
    let lambda2: C64 = u.iter().zip(lu_u.iter()).map(|(ui, li)| ui.conj() * li).sum();
    if lambda2.norm() < 1e-10 {
        return Err(Error::DegenerateSteadyState { sigma: lambda2.norm() });
    }

    let mut rho = Array2::zeros((n, n));
    for m in 0..n {
        for c in 0..n {
            rho[[m, c]] = v[m * n + c];
        }
    }
    let rho_h = (&rho + &rho.t().mapv(|c| c.conj())).mapv(|c| c * 0.5);
    let trace: C64 = (0..n).map(|m| rho_h[[m, m]]).sum();
    Ok(rho_h.mapv(|c| c / trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{squeezed_ground_correlations, vacuum_correlations};
    use crate::fock::{FockConfig, InitialState};
    use crate::hopfield::diagonalize_polaritons;
    use crate::SystemParams;
    use approx::assert_abs_diff_eq;

    fn kernels() -> KernelPair {
        KernelPair::symmetric(1e-2, 1e3).unwrap()
    }

    #[test]
    fn decoupled_vacuum_keeps_vacuum_stationary() {
        let params = SystemParams::new(1.0, 1.7, 0.0, 0.0).unwrap();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops = ModeOperators::bare(&params, &basis, FockConfig::new(4, 4).unwrap()).unwrap();
        let gen = Generator::born_filtered(ops.clone(), &vacuum_correlations(kernels()));
        let rho = ops.to_eigenbasis(&ops.basis_state(0));
        assert!(gen.residual_norm(&rho) < 1e-12);
    }

    #[test]
    fn generator_is_trace_free_and_hermiticity_preserving() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops = ModeOperators::bare(&params, &basis, FockConfig::new(4, 4).unwrap()).unwrap();
        for corr in [
            vacuum_correlations(kernels()),
            squeezed_ground_correlations(&basis, kernels()),
        ] {
            let gen = Generator::born_filtered(ops.clone(), &corr);
            let n = ops.dim;
            let mut h = Array2::zeros((n, n));
            for m in 0..n {
                for c in 0..n {
                    let re = ((m * 31 + c * 17) % 13) as f64 / 13.0 - 0.5;
                    let im = ((m * 7 + c * 23) % 11) as f64 / 11.0 - 0.5;
                    h[[m, c]] = C64::new(re, if m == c { 0.0 } else { im });
                }
            }
            let h = (&h + &h.t().mapv(|c: C64| c.conj())).mapv(|c| c * 0.5);
            let lh = gen.apply(&h);
            let trace: C64 = (0..n).map(|m| lh[[m, m]]).sum();
            assert!(trace.norm() < 1e-12, "trace residual {}", trace.norm());
            let herm_dev = (&lh - &lh.t().mapv(|c: C64| c.conj()))
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            assert!(herm_dev < 1e-12, "hermiticity residual {herm_dev}");
        }
    }

    #[test]
    fn squeezed_generator_annihilates_polariton_ground_state() {
        // In the polariton representation the dressed ground state is the
        // Fock vacuum; the reduced squeezed master equation leaves it exactly
        // stationary.
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops =
            ModeOperators::polariton(&params, &basis, FockConfig::new(8, 8).unwrap()).unwrap();
        let corr = squeezed_ground_correlations(&basis, kernels());
        let gen = Generator::born_filtered(ops.clone(), &corr);
        let rho = ops.basis_state(0);
        assert!(gen.residual_norm(&rho) < 1e-8);
    }

    #[test]
    fn squeezed_generator_nearly_annihilates_bare_rep_ground_state() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops = ModeOperators::bare(&params, &basis, FockConfig::new(10, 10).unwrap()).unwrap();
        let corr = squeezed_ground_correlations(&basis, kernels());
        let gen = Generator::born_filtered(ops.clone(), &corr);
        let rho = ops.to_eigenbasis(&InitialState::DressedGround.density(&ops).unwrap());
        // Residual set by the Fock-truncation tail of the dressed ground
        // state, not by the generator structure.
        assert!(gen.residual_norm(&rho) < 1e-3);
    }

    #[test]
    fn rwa_lindblad_steady_state_is_dressed_ground() {
        // In the polariton representation the jump operators annihilate the
        // dressed ground state exactly, so it is the exact dark steady state.
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops =
            ModeOperators::polariton(&params, &basis, FockConfig::new(5, 5).unwrap()).unwrap();
        let gen = Generator::markov_rwa_lindblad(ops.clone(), &kernels());
        let rho_ss = steady_state(&gen).unwrap();
        assert_abs_diff_eq!(rho_ss[[0, 0]].re, 1.0, epsilon = 1e-9);
        let off: f64 =
            rho_ss.iter().map(|c| c.norm()).sum::<f64>() - rho_ss[[0, 0]].norm();
        assert!(off < 1e-8, "off-diagonal weight {off}");
    }

    #[test]
    fn non_lindblad_steady_state_is_polariton_vacuum() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops =
            ModeOperators::polariton(&params, &basis, FockConfig::new(6, 6).unwrap()).unwrap();
        let corr = squeezed_ground_correlations(&basis, kernels());
        let gen = Generator::markov_non_lindblad(ops.clone(), &corr);
        let rho_ss = steady_state(&gen).unwrap();
        let mut dist = 0.0;
        for m in 0..ops.dim {
            for c in 0..ops.dim {
                let target = if m == 0 && c == 0 { 1.0 } else { 0.0 };
                dist += (rho_ss[[m, c]] - C64::new(target, 0.0)).norm_sqr();
            }
        }
        assert!(dist.sqrt() < 1e-6, "deviation {}", dist.sqrt());
    }

    #[test]
    fn non_lindblad_coefficients_match_direct_formula() {
        // The Markov coefficients are the squeezed correlations transformed
        // at the sharp polariton frequencies; check the D^L family against
        // the explicit expansion.
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let corr = squeezed_ground_correlations(&basis, kernels());
        let pol = PolaritonCorrelations::new(corr, &basis);
        let omega = [basis.lower.omega, basis.upper.omega];
        for j in 0..2 {
            for k in 0..2 {
                let (p, q, w) = Block::Dl.letters(j, k);
                let lambda = pol.halfline_regularized(p, q, omega[k], w);
                let bj = basis.branches()[j];
                let bk = basis.branches()[k];
                let ker = kernels();
                let expect = bj.w * bk.w.conj() * ker.photonic.halfline_fourier(omega[k]).unwrap()
                    + bj.x * bk.x.conj() * ker.excitonic.halfline_fourier(omega[k]).unwrap()
                    - bj.y * bk.y.conj()
                        * ker.photonic.halfline_fourier(-omega[k]).unwrap().conj()
                    - bj.z * bk.z.conj()
                        * ker.excitonic.halfline_fourier(-omega[k]).unwrap().conj();
                assert!((lambda - expect).norm() < 1e-12, "j={j} k={k}: {lambda} vs {expect}");
            }
        }
    }
}
