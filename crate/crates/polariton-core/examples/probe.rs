// Discretized total-system Gaussian covariance oracle vs filtered master equation.
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Inverse};
use polariton_core::correlations::vacuum_correlations;
use polariton_core::fock::*;
use polariton_core::kernel::KernelPair;
use polariton_core::liouvillian::*;
use polariton_core::propagate::{propagate, uniform_grid, PropagateOptions};
use polariton_core::*;

struct GaussianOracle {
    m: usize, // number of modes
    evals: Array1<C64>,
    x: Array2<C64>,
    xinv: Array2<C64>,
    s0: Array2<C64>,
}

impl GaussianOracle {
    fn new(params: &SystemParams, basis: &PolaritonBasis, gamma: f64, lambda: f64, n_res: usize) -> Self {
        let m = 2 + 2 * n_res; // a, b, alphas, betas
        let dim = 2 * m;
        let dw = lambda / n_res as f64;
        let kappa = (gamma / (2.0 * std::f64::consts::PI) * dw).sqrt();
        let idx_a = 0usize;
        let idx_b = 1usize;
        let alpha = |k: usize| 2 + k;
        let beta = |k: usize| 2 + n_res + k;
        let dag = |i: usize| i + m;
        let i1 = C64::new(0.0, 1.0);

        let mut mm: Array2<C64> = Array2::zeros((dim, dim));
        // da/dt = -i(wc+2D) a + Ω b - Ω b† - 2iD a† - Σ κ α
        mm[[idx_a, idx_a]] = -i1 * (params.omega_c + 2.0 * params.diamag);
        mm[[idx_a, idx_b]] = C64::new(params.rabi, 0.0);
        mm[[idx_a, dag(idx_b)]] = C64::new(-params.rabi, 0.0);
        mm[[idx_a, dag(idx_a)]] = -i1 * (2.0 * params.diamag);
        // db/dt = -i wx b - Ω a - Ω a† - Σ γ β
        mm[[idx_b, idx_b]] = -i1 * params.omega_x;
        mm[[idx_b, idx_a]] = C64::new(-params.rabi, 0.0);
        mm[[idx_b, dag(idx_a)]] = C64::new(-params.rabi, 0.0);
        for k in 0..n_res {
            let om = (k as f64 + 0.5) * dw;
            mm[[idx_a, alpha(k)]] = C64::new(-kappa, 0.0);
            mm[[idx_b, beta(k)]] = C64::new(-kappa, 0.0);
            mm[[alpha(k), alpha(k)]] = -i1 * om;
            mm[[alpha(k), idx_a]] = C64::new(kappa, 0.0);
            mm[[beta(k), beta(k)]] = -i1 * om;
            mm[[beta(k), idx_b]] = C64::new(kappa, 0.0);
        }
        // daggered rows: conjugate, swapped slots
        for r in 0..m {
            for c in 0..dim {
                let v = mm[[r, c]];
                if v.norm() > 0.0 {
                    let c2 = if c < m { c + m } else { c - m };
                    mm[[r + m, c2]] = v.conj();
                }
            }
        }

        let (evals, x) = mm.eig().unwrap();
        let xinv = x.inv().unwrap();

        // initial second moments <v_i v_j>
        let moments = ground_state_moments(basis);
        let mut s0: Array2<C64> = Array2::zeros((dim, dim));
        // system block: s-order (a, b, a†, b†) -> slots (0, 1, m, m+1)
        let slot = [idx_a, idx_b, dag(idx_a), dag(idx_b)];
        for p in 0..4 {
            for q in 0..4 {
                s0[[slot[p], slot[q]]] = moments.get(p, q);
            }
        }
        for k in 0..n_res {
            s0[[alpha(k), dag(alpha(k))]] = C64::new(1.0, 0.0);
            s0[[beta(k), dag(beta(k))]] = C64::new(1.0, 0.0);
        }
        GaussianOracle { m, evals, x, xinv, s0 }
    }

    /// (n_a, n_L, n_U) at angular time t
    fn occupations(&self, basis: &PolaritonBasis, t: f64) -> (f64, f64, f64) {
        let dim = 2 * self.m;
        let phase = Array1::from_shape_fn(dim, |k| (self.evals[k] * t).exp());
        // E = X diag(e^{λt}) X⁻¹
        let mut e = Array2::zeros((dim, dim));
        for r in 0..dim {
            for c in 0..dim {
                e[[r, c]] = self.x[[r, c]] * phase[c];
            }
        }
        let e = e.dot(&self.xinv);
        let s = e.dot(&self.s0).dot(&e.t());
        let na = s[[self.m, 0]].re;
        let mut pol = [0.0; 2];
        for (j, br) in basis.branches().iter().enumerate() {
            // p_j† coefficients over (a,b,a†,b†); p_j coefficients likewise
            let pj = [br.w, br.x, br.y, br.z];
            let pjd = [br.y.conj(), br.z.conj(), br.w.conj(), br.x.conj()];
            let slot = [0usize, 1, self.m, self.m + 1];
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..4 {
                for q in 0..4 {
                    acc += pjd[p] * pj[q] * s[[slot[p], slot[q]]];
                }
            }
            pol[j] = acc.re;
        }
        (na, pol[0], pol[1])
    }
}

fn main() {
    let params = SystemParams::figure();
    let basis = diagonalize_polaritons(&params).unwrap();
    let gamma = 1e-2;
    let lambda = 8.0;
    let oracle = GaussianOracle::new(&params, &basis, gamma, lambda, 60);

    let ops = ModeOperators::bare(&params, &basis, FockConfig::new(8, 8).unwrap()).unwrap();
    let kernels = KernelPair::symmetric(gamma, lambda).unwrap();
    let gen = Generator::born_filtered(ops.clone(), &vacuum_correlations(kernels));
    let rho0 = InitialState::DressedGround.density(&ops).unwrap();
    let grid = uniform_grid(0.0, 5.0, 11);
    let traj = propagate(&gen, &rho0, &grid, &PropagateOptions { dt_cycles: 1e-3, snapshots: false }).unwrap();

    println!("  t[cyc]   oracle n_a    master n_a   oracle n_L   master n_L");
    for (i, &t) in traj.times.iter().enumerate() {
        let (na_o, nl_o, _) = oracle.occupations(&basis, t * 2.0 * std::f64::consts::PI);
        println!("{:7.2} {:12.6} {:12.6} {:12.6} {:12.6}", t, na_o, traj.n_photon[i], nl_o, traj.n_lower[i]);
    }
}
