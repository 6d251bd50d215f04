//! Fixed-step propagation of the reduced density operator.
//!
//! Classical fourth-order Runge-Kutta on `dρ/dt = L[ρ]` with a
//! time-independent generator, carried out in the `H0` eigenbasis. Times at
//! the interface are in cavity cycles (units of `2π/ωc`); the generator works
//! in angular units (`1/ωc`).

use ndarray::Array2;

use crate::fock::ModeOperators;
use crate::liouvillian::{Generator, Workspace};
use crate::{C64, Error, Result};

/// One cavity cycle in angular time units.
pub const CYCLE: f64 = 2.0 * std::f64::consts::PI;

/// Default integrator step in cycles.
pub const DEFAULT_DT_CYCLES: f64 = 1e-3;

/// Observables recorded along a trajectory, one entry per output time.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// Output times in cavity cycles.
    pub times: Vec<f64>,
    /// `⟨p_L†p_L⟩`
    pub n_lower: Vec<f64>,
    /// `⟨p_U†p_U⟩`
    pub n_upper: Vec<f64>,
    /// `⟨a†a⟩`
    pub n_photon: Vec<f64>,
    /// `⟨b†b⟩`
    pub n_excitation: Vec<f64>,
    /// Optional density-matrix snapshots (computational basis).
    pub snapshots: Option<Vec<Array2<C64>>>,
}

/// Propagation options.
#[derive(Debug, Clone, Copy)]
pub struct PropagateOptions {
    /// Integrator step in cycles; the actual step divides the output spacing
    /// evenly and never exceeds this value.
    pub dt_cycles: f64,
    /// Keep density-matrix snapshots at every output time.
    pub snapshots: bool,
}

impl Default for PropagateOptions {
    fn default() -> Self {
        PropagateOptions { dt_cycles: DEFAULT_DT_CYCLES, snapshots: false }
    }
}

/// Precomputed number operators in the eigenbasis for trajectory recording.
struct NumberOps {
    n_lower: Array2<C64>,
    n_upper: Array2<C64>,
    n_photon: Array2<C64>,
    n_excitation: Array2<C64>,
}

impl NumberOps {
    fn new(ops: &ModeOperators) -> Self {
        let num = |m: &Array2<C64>| -> Array2<C64> {
            let md = m.t().mapv(|c| c.conj());
            md.dot(m)
        };
        NumberOps {
            n_lower: num(&ops.p_eig[0]),
            n_upper: num(&ops.p_eig[1]),
            n_photon: num(&ops.a_eig),
            n_excitation: num(&ops.b_eig),
        }
    }
}

fn real_expectation(o: &Array2<C64>, rho: &Array2<C64>) -> f64 {
    ModeOperators::expectation(o, rho).re
}

/// Integrates `dρ/dt = L[ρ]` from `rho0` (computational basis) over the
/// uniform output grid `t_grid` (cycles), recording polariton and bare-mode
/// occupations at each output time.
///
/// Fails with [`Error::StepUnstable`] if the trace moves by more than `1e−6`
/// within a single integrator step.
pub fn propagate(
    gen: &Generator,
    rho0: &Array2<C64>,
    t_grid: &[f64],
    opts: &PropagateOptions,
) -> Result<Trajectory> {
    if t_grid.is_empty() {
        return Err(Error::InvalidParams("empty time grid".into()));
    }
    let nums = NumberOps::new(&gen.ops);
    let mut rho = gen.ops.to_eigenbasis(rho0);

    let mut traj = Trajectory {
        times: Vec::with_capacity(t_grid.len()),
        n_lower: Vec::with_capacity(t_grid.len()),
        n_upper: Vec::with_capacity(t_grid.len()),
        n_photon: Vec::with_capacity(t_grid.len()),
        n_excitation: Vec::with_capacity(t_grid.len()),
        snapshots: if opts.snapshots { Some(Vec::with_capacity(t_grid.len())) } else { None },
    };

    let mut stepper = Rk4::new(gen);
    let mut t_now = t_grid[0];
    record(&mut traj, &nums, gen, &rho, t_now);

    for &t_next in &t_grid[1..] {
        let span = (t_next - t_now) * CYCLE;
        if span <= 0.0 {
            return Err(Error::InvalidParams("time grid must be strictly increasing".into()));
        }
        let steps = (span / (opts.dt_cycles * CYCLE)).ceil().max(1.0) as usize;
        let h = span / steps as f64;
        for _ in 0..steps {
            stepper.step(gen, &mut rho, h, t_now)?;
        }
        t_now = t_next;
        record(&mut traj, &nums, gen, &rho, t_now);
    }
    Ok(traj)
}

fn record(traj: &mut Trajectory, nums: &NumberOps, gen: &Generator, rho: &Array2<C64>, t: f64) {
    traj.times.push(t);
    traj.n_lower.push(real_expectation(&nums.n_lower, rho));
    traj.n_upper.push(real_expectation(&nums.n_upper, rho));
    traj.n_photon.push(real_expectation(&nums.n_photon, rho));
    traj.n_excitation.push(real_expectation(&nums.n_excitation, rho));
    if let Some(snaps) = traj.snapshots.as_mut() {
        snaps.push(gen.ops.from_eigenbasis(rho));
    }
}

/// Classical RK4 stepper with preallocated stages, usable for any matrix
/// evolved by the generator (density matrices or regression seeds).
pub struct Rk4 {
    ws: Workspace,
    k1: Array2<C64>,
    k2: Array2<C64>,
    k3: Array2<C64>,
    k4: Array2<C64>,
    stage: Array2<C64>,
}

impl Rk4 {
    pub fn new(gen: &Generator) -> Self {
        let z = || Array2::<C64>::zeros((gen.dim(), gen.dim()));
        Rk4 { ws: Workspace::new_for(gen), k1: z(), k2: z(), k3: z(), k4: z(), stage: z() }
    }

    /// One RK4 step of size `h` (angular units), checking trace stability.
    pub fn step(&mut self, gen: &Generator, rho: &mut Array2<C64>, h: f64, t: f64) -> Result<()> {
        let n = gen.dim();
        let trace_before: C64 = (0..n).map(|m| rho[[m, m]]).sum();
        self.step_unchecked(gen, rho, h);
        let trace_after: C64 = (0..n).map(|m| rho[[m, m]]).sum();
        let drift = (trace_after - trace_before).norm();
        if drift > 1e-6 {
            return Err(Error::StepUnstable { t: t / CYCLE, drift });
        }
        Ok(())
    }

    /// One RK4 step without the trace check, for non-density seeds.
    pub fn step_unchecked(&mut self, gen: &Generator, m: &mut Array2<C64>, h: f64) {
        gen.apply_into(m, &mut self.k1, &mut self.ws);
        self.stage.assign(m);
        self.stage.scaled_add(C64::new(0.5 * h, 0.0), &self.k1);
        gen.apply_into(&self.stage, &mut self.k2, &mut self.ws);
        self.stage.assign(m);
        self.stage.scaled_add(C64::new(0.5 * h, 0.0), &self.k2);
        gen.apply_into(&self.stage, &mut self.k3, &mut self.ws);
        self.stage.assign(m);
        self.stage.scaled_add(C64::new(h, 0.0), &self.k3);
        gen.apply_into(&self.stage, &mut self.k4, &mut self.ws);
        let h6 = C64::new(h / 6.0, 0.0);
        m.scaled_add(h6, &self.k1);
        m.scaled_add(h6 * 2.0, &self.k2);
        m.scaled_add(h6 * 2.0, &self.k3);
        m.scaled_add(h6, &self.k4);
    }
}

/// Uniform grid of `points` times from `t0` to `t1` (cycles, inclusive).
pub fn uniform_grid(t0: f64, t1: f64, points: usize) -> Vec<f64> {
    let n = points.max(2);
    (0..n).map(|i| t0 + (t1 - t0) * i as f64 / (n - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::vacuum_correlations;
    use crate::fock::{FockConfig, InitialState, ModeOperators};
    use crate::hopfield::diagonalize_polaritons;
    use crate::kernel::KernelPair;
    use crate::SystemParams;

    #[test]
    fn closed_system_keeps_occupations_constant() {
        // Γ = 0: ρ(t) = e^{−iH0t} ρ0 e^{iH0t}; polariton numbers constant.
        // Exact conservation requires [H0, p_j†p_j] = 0, which survives
        // truncation only in the polariton representation; in the bare Fock
        // representation boundary defects amplified by near-degenerate level
        // pairs spoil it at any modest cutoff.
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops =
            ModeOperators::polariton(&params, &basis, FockConfig::new(6, 6).unwrap()).unwrap();
        let kernels = KernelPair::symmetric(0.0, 1e3).unwrap();
        let gen = crate::liouvillian::Generator::born_filtered(
            ops.clone(),
            &vacuum_correlations(kernels),
        );
        // Superposition with both polariton branches occupied.
        let mut psi = ndarray::Array1::<C64>::zeros(ops.dim);
        psi[ops.product_index(1, 0)] = C64::new(0.8, 0.0);
        psi[ops.product_index(0, 1)] = C64::new(0.0, 0.6);
        let rho0 = ops.pure_state(&psi);
        let grid = uniform_grid(0.0, 2.0, 21);
        let traj = propagate(&gen, &rho0, &grid, &PropagateOptions::default()).unwrap();
        let first = traj.n_lower[0];
        for v in &traj.n_lower {
            assert!((v - first).abs() < 1e-8, "n_L drifted: {v} vs {first}");
        }
        let first_u = traj.n_upper[0];
        for v in &traj.n_upper {
            assert!((v - first_u).abs() < 1e-8);
        }
    }

    #[test]
    fn vacuum_reservoirs_excite_the_dressed_ground_state() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let ops = ModeOperators::bare(&params, &basis, FockConfig::new(8, 8).unwrap()).unwrap();
        let kernels = KernelPair::symmetric(1e-2, 1e3).unwrap();
        let gen = crate::liouvillian::Generator::born_filtered(
            ops.clone(),
            &vacuum_correlations(kernels),
        );
        let rho0 = InitialState::DressedGround.density(&ops).unwrap();
        let grid = uniform_grid(0.0, 10.0, 11);
        let traj =
            propagate(&gen, &rho0, &grid, &PropagateOptions { dt_cycles: 5e-3, snapshots: false })
                .unwrap();
        assert!(traj.n_lower[0] < 3e-3);
        let last = *traj.n_lower.last().unwrap();
        assert!(last > 5.0 * traj.n_lower[0].max(1e-3), "polaritons not excited: {last}");
    }
}
