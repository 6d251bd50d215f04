// Full moment comparison: exact oracle vs moment-ODE, vacuum mode, Λ=8.
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Inverse};
use polariton_core::correlations::vacuum_correlations;
use polariton_core::kernel::KernelPair;
use polariton_core::moments::*;
use polariton_core::*;

fn main() {
    let params = SystemParams::figure();
    let basis = diagonalize_polaritons(&params).unwrap();
    let gamma = 1e-2; let lambda = 40.0; let n_res = 300;

    // ---- oracle ----
    let m = 2 + 2 * n_res;
    let dim = 2 * m;
    let dw = lambda / n_res as f64;
    let kappa = (gamma / (2.0 * std::f64::consts::PI) * dw).sqrt();
    let i1 = C64::new(0.0, 1.0);
    let dag = |i: usize| i + m;
    let mut mm: Array2<C64> = Array2::zeros((dim, dim));
    mm[[0, 0]] = -i1 * (params.omega_c + 2.0 * params.diamag);
    mm[[0, 1]] = C64::new(params.rabi, 0.0);
    mm[[0, dag(1)]] = C64::new(-params.rabi, 0.0);
    mm[[0, dag(0)]] = -i1 * (2.0 * params.diamag);
    mm[[1, 1]] = -i1 * params.omega_x;
    mm[[1, 0]] = C64::new(-params.rabi, 0.0);
    mm[[1, dag(0)]] = C64::new(-params.rabi, 0.0);
    for k in 0..n_res {
        let om = (k as f64 + 0.5) * dw;
        let (al, be) = (2 + k, 2 + n_res + k);
        mm[[0, al]] = C64::new(-kappa, 0.0);
        mm[[1, be]] = C64::new(-kappa, 0.0);
        mm[[al, al]] = -i1 * om;
        mm[[al, 0]] = C64::new(kappa, 0.0);
        mm[[be, be]] = -i1 * om;
        mm[[be, 1]] = C64::new(kappa, 0.0);
    }
    for r in 0..m { for c in 0..dim {
        let v = mm[[r, c]];
        if v.norm() > 0.0 {
            let c2 = if c < m { c + m } else { c - m };
            mm[[r + m, c2]] = v.conj();
        }
    }}
    let (evals, x) = mm.eig().unwrap();
    let xinv = x.inv().unwrap();
    let moments = ground_state_moments(&basis);
    let mut s0: Array2<C64> = Array2::zeros((dim, dim));
    let slot = [0usize, 1, dag(0), dag(1)];
    for p in 0..4 { for q in 0..4 { s0[[slot[p], slot[q]]] = moments.get(p, q); } }
    for k in 0..n_res {
        s0[[2 + k, dag(2 + k)]] = C64::new(1.0, 0.0);
        s0[[2 + n_res + k, dag(2 + n_res + k)]] = C64::new(1.0, 0.0);
    }
    let oracle_moments = |t: f64| -> PolaritonMoments {
        let phase = Array1::from_shape_fn(dim, |k| (evals[k] * t).exp());
        let mut e = Array2::zeros((dim, dim));
        for r in 0..dim { for c in 0..dim { e[[r, c]] = x[[r, c]] * phase[c]; } }
        let e = e.dot(&xinv);
        let s = e.dot(&s0).dot(&e.t());
        let mut out = PolaritonMoments::zero();
        for j in 0..2 { for k in 0..2 {
            let bj = basis.branches()[j]; let bk = basis.branches()[k];
            let pj = [bj.w, bj.x, bj.y, bj.z];
            let pjd = [bj.y.conj(), bj.z.conj(), bj.w.conj(), bj.x.conj()];
            let pk = [bk.w, bk.x, bk.y, bk.z];
            let pkd = [bk.y.conj(), bk.z.conj(), bk.w.conj(), bk.x.conj()];
            for p in 0..4 { for q in 0..4 {
                out.n[j][k] += pjd[p] * pk[q] * s[[slot[p], slot[q]]];
                out.m[j][k] += pj[p] * pk[q] * s[[slot[p], slot[q]]];
                out.mbar[j][k] += pjd[p] * pkd[q] * s[[slot[p], slot[q]]];
            }}
        }}
        out
    };

    // ---- moment ODE ----
    let corr = vacuum_correlations(KernelPair::symmetric(gamma, lambda).unwrap());
    let gen = MomentGenerator::new(&basis, &corr);
    let grid: Vec<f64> = vec![0.0, 1.0, 2.0, 4.0];
    let traj = gen.propagate(PolaritonMoments::zero(), &grid, 5e-4).unwrap();

    for (i, &t) in grid.iter().enumerate() {
        let o = oracle_moments(t * 2.0 * std::f64::consts::PI);
        let s = &traj[i];
        println!("t={t}:");
        println!("  n_LL  oracle {:+.5} {:+.5}i   ode {:+.5} {:+.5}i", o.n[0][0].re, o.n[0][0].im, s.n[0][0].re, s.n[0][0].im);
        println!("  n_LU  oracle {:+.5} {:+.5}i   ode {:+.5} {:+.5}i", o.n[0][1].re, o.n[0][1].im, s.n[0][1].re, s.n[0][1].im);
        println!("  m_LL  oracle {:+.5} {:+.5}i   ode {:+.5} {:+.5}i", o.m[0][0].re, o.m[0][0].im, s.m[0][0].re, s.m[0][0].im);
        println!("  m_LU  oracle {:+.5} {:+.5}i   ode {:+.5} {:+.5}i", o.m[0][1].re, o.m[0][1].im, s.m[0][1].re, s.m[0][1].im);
        println!("  mb_LL oracle {:+.5} {:+.5}i   ode {:+.5} {:+.5}i", o.mbar[0][0].re, o.mbar[0][0].im, s.mbar[0][0].re, s.mbar[0][0].im);
    }
}
