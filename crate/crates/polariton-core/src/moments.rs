//! Closed linear dynamics of the polariton second moments.
//!
//! The generators of this crate are quadratic in the mode operators, so the
//! second moments `n_jk = ⟨p_j†p_k⟩`, `m_jk = ⟨p_j p_k⟩`, `m̄_jk = ⟨p_j†p_k†⟩`
//! close on themselves for *any* state: applying the adjoint generator to a
//! quadratic observable gives a quadratic observable. In the untruncated
//! algebra the Bohr-frequency filter of a polariton monomial is sharp,
//! `Φᵀ(p_α) = Ĉ(−ω_α) p_α` and `Φᵀ(p_α†) = Ĉ(+ω_α) p_α†`, which turns the
//! master equation into a 12-dimensional linear ODE with a constant
//! inhomogeneity. No Fock truncation enters; the only error is time
//! discretization. This provides an independent oracle for the truncated
//! Fock-space propagation.

use ndarray::{Array1, Array2};

use crate::correlations::{PolaritonCorrelations, ReservoirCorrelations, TauWindow};
use crate::hopfield::{MomentMatrix, PolaritonBasis};
use crate::propagate::CYCLE;
use crate::{C64, Result};

/// Second moments in the polariton basis.
#[derive(Debug, Clone, Copy)]
pub struct PolaritonMoments {
    /// `n[j][k] = ⟨p_j†p_k⟩`
    pub n: [[C64; 2]; 2],
    /// `m[j][k] = ⟨p_j p_k⟩`
    pub m: [[C64; 2]; 2],
    /// `mbar[j][k] = ⟨p_j†p_k†⟩`
    pub mbar: [[C64; 2]; 2],
}

impl PolaritonMoments {
    pub fn zero() -> Self {
        let z = [[C64::new(0.0, 0.0); 2]; 2];
        PolaritonMoments { n: z, m: z, mbar: z }
    }

    /// Moments of a Gaussian state given by bare-mode moments `⟨s_m s_n⟩`.
    pub fn from_bare(basis: &PolaritonBasis, bare: &MomentMatrix) -> Self {
        let t = basis.forward_matrix();
        let mut out = Self::zero();
        for j in 0..2 {
            for k in 0..2 {
                let mut n = C64::new(0.0, 0.0);
                let mut m = C64::new(0.0, 0.0);
                let mut mbar = C64::new(0.0, 0.0);
                for s1 in 0..4 {
                    for s2 in 0..4 {
                        let mom = bare.get(s1, s2);
                        if mom.norm() == 0.0 {
                            continue;
                        }
                        n += t[[j + 2, s1]] * t[[k, s2]] * mom;
                        m += t[[j, s1]] * t[[k, s2]] * mom;
                        mbar += t[[j + 2, s1]] * t[[k + 2, s2]] * mom;
                    }
                }
                out.n[j][k] = n;
                out.m[j][k] = m;
                out.mbar[j][k] = mbar;
            }
        }
        out
    }

    /// Bare-mode occupations `(⟨a†a⟩, ⟨b†b⟩)` reconstructed through the
    /// inverse transform, using `⟨p_j p_k†⟩ = δ_jk + ⟨p_k†p_j⟩`.
    pub fn bare_occupations(&self, basis: &PolaritonBasis) -> (f64, f64) {
        let w = basis.inverse_matrix();
        // a = Σ_j w[0][j] p_j + w[0][j+2] p_j†; same rows for b with index 1.
        let occ = |row: usize| -> f64 {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..2 {
                for k in 0..2 {
                    let lj = w[[row, j]];
                    let rj = w[[row, j + 2]];
                    let lk = w[[row, k]];
                    let rk = w[[row, k + 2]];
                    // a†a = Σ (l_j p_j + r_j p_j†)† (l_k p_k + r_k p_k†)
                    acc += lj.conj() * lk * self.n[j][k];
                    acc += lj.conj() * rk * self.mbar[j][k];
                    acc += rj.conj() * lk * self.m[j][k];
                    let ppd = self.n[k][j] + if j == k { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                    acc += rj.conj() * rk * ppd;
                }
            }
            acc.re
        };
        (occ(0), occ(1))
    }

    fn to_vec(self) -> Array1<C64> {
        let mut v = Array1::zeros(12);
        for j in 0..2 {
            for k in 0..2 {
                v[j * 2 + k] = self.n[j][k];
                v[4 + j * 2 + k] = self.m[j][k];
                v[8 + j * 2 + k] = self.mbar[j][k];
            }
        }
        v
    }

    fn from_vec(v: &Array1<C64>) -> Self {
        let mut out = Self::zero();
        for j in 0..2 {
            for k in 0..2 {
                out.n[j][k] = v[j * 2 + k];
                out.m[j][k] = v[4 + j * 2 + k];
                out.mbar[j][k] = v[8 + j * 2 + k];
            }
        }
        out
    }
}

/// Indices into the 12-vector (n, m, m̄ blocks of 4).
fn idx_n(j: usize, k: usize) -> usize {
    j * 2 + k
}
fn idx_m(j: usize, k: usize) -> usize {
    4 + j * 2 + k
}
fn idx_mbar(j: usize, k: usize) -> usize {
    8 + j * 2 + k
}

/// The 12×12 moment generator `dX/dt = A X + b` for the filtered Born master
/// equation with the given reservoir correlations.
#[derive(Debug, Clone)]
pub struct MomentGenerator {
    pub a: Array2<C64>,
    pub b: Array1<C64>,
    pub basis: PolaritonBasis,
}

/// Block filter functions used by the moment system: for block letters
/// `(p, q, window)` the transform is evaluated at the argument dictated by
/// the adjoint action on the sharp polariton monomials.
struct Filters<'a> {
    pol: PolaritonCorrelations,
    omega: [f64; 2],
    _marker: std::marker::PhantomData<&'a ()>,
}

impl Filters<'_> {
    fn d(&self, j: usize, k: usize, w: f64) -> C64 {
        self.pol.halfline_regularized(j, k + 2, w, TauWindow::Plus)
    }
    fn r(&self, j: usize, k: usize, w: f64) -> C64 {
        self.pol.halfline_regularized(k, j + 2, w, TauWindow::Minus)
    }
    fn c(&self, j: usize, k: usize, w: f64) -> C64 {
        self.pol.halfline_regularized(j + 2, k, w, TauWindow::Plus)
    }
    fn cr(&self, j: usize, k: usize, w: f64) -> C64 {
        self.pol.halfline_regularized(k + 2, j, w, TauWindow::Minus)
    }
    fn bl(&self, j: usize, k: usize, w: f64) -> C64 {
        self.pol.halfline_regularized(j, k, w, TauWindow::Plus)
    }
    fn br(&self, j: usize, k: usize, w: f64) -> C64 {
        self.pol.halfline_regularized(k, j, w, TauWindow::Minus)
    }
    fn al(&self, j: usize, k: usize, w: f64) -> C64 {
        self.pol.halfline_regularized(j + 2, k + 2, w, TauWindow::Plus)
    }
    fn ar(&self, j: usize, k: usize, w: f64) -> C64 {
        self.pol.halfline_regularized(k + 2, j + 2, w, TauWindow::Minus)
    }
}

impl MomentGenerator {
    /// Builds the moment generator from the same correlation data as the
    /// Fock-space dissipator.
    pub fn new(basis: &PolaritonBasis, corr: &ReservoirCorrelations) -> Self {
        let f = Filters {
            pol: PolaritonCorrelations::new(corr.clone(), basis),
            omega: [basis.lower.omega, basis.upper.omega],
            _marker: std::marker::PhantomData,
        };
        let om = f.omega;
        let i1 = C64::new(0.0, 1.0);
        let mut a: Array2<C64> = Array2::zeros((12, 12));
        let mut b: Array1<C64> = Array1::zeros(12);

        for al_ in 0..2 {
            for be in 0..2 {
                // ---- d n_{αβ}/dt, O = p_α†p_β ----
                let row = idx_n(al_, be);
                a[[row, row]] += i1 * (om[al_] - om[be]);
                for k in 0..2 {
                    // DL: −Σ_k D_{βk}(ω_α) n_{αk}
                    a[[row, idx_n(al_, k)]] -= f.d(be, k, om[al_]);
                    // DR: −Σ_k R_{αk}(−ω_β) n_{kβ}
                    a[[row, idx_n(k, be)]] -= f.r(al_, k, -om[be]);
                    // CL: +Σ_k C_{αk}(−ω_β)(δ_{βk} + n_{kβ})
                    let clv = f.c(al_, k, -om[be]);
                    a[[row, idx_n(k, be)]] += clv;
                    if k == be {
                        b[row] += clv;
                    }
                    // CR: +Σ_k C'_{βk}(ω_α)(δ_{kα} + n_{αk})
                    let crv = f.cr(be, k, om[al_]);
                    a[[row, idx_n(al_, k)]] += crv;
                    if k == al_ {
                        b[row] += crv;
                    }
                    // BL: +Σ_k B_{βk}(ω_α) m̄_{αk}
                    a[[row, idx_mbar(al_, k)]] += f.bl(be, k, om[al_]);
                    // BR: −Σ_k Br_{βk}(ω_α) m̄_{kα}
                    a[[row, idx_mbar(k, al_)]] -= f.br(be, k, om[al_]);
                    // AL: −Σ_k A_{αk}(−ω_β) m_{βk}
                    a[[row, idx_m(be, k)]] -= f.al(al_, k, -om[be]);
                    // AR: +Σ_k Ar_{αk}(−ω_β) m_{kβ}
                    a[[row, idx_m(k, be)]] += f.ar(al_, k, -om[be]);
                }

                // ---- d m_{αβ}/dt, O = p_α p_β ----
                let row = idx_m(al_, be);
                a[[row, row]] -= i1 * (om[al_] + om[be]);
                for k in 0..2 {
                    // DL: −Σ_k [D_{αk}(−ω_β) m_{βk} + D_{βk}(−ω_α) m_{αk}]
                    a[[row, idx_m(be, k)]] -= f.d(al_, k, -om[be]);
                    a[[row, idx_m(al_, k)]] -= f.d(be, k, -om[al_]);
                    // CR: +Σ_k [C'_{αk}(−ω_β) m_{kβ} + C'_{βk}(−ω_α) m_{kα}]
                    a[[row, idx_m(k, be)]] += f.cr(al_, k, -om[be]);
                    a[[row, idx_m(k, al_)]] += f.cr(be, k, -om[al_]);
                    // BL: +Σ_k [B_{αk}(−ω_β)(δ_{βk} + n_{kβ}) + B_{βk}(−ω_α)(δ_{αk} + n_{kα})]
                    let b1 = f.bl(al_, k, -om[be]);
                    a[[row, idx_n(k, be)]] += b1;
                    if k == be {
                        b[row] += b1;
                    }
                    let b2 = f.bl(be, k, -om[al_]);
                    a[[row, idx_n(k, al_)]] += b2;
                    if k == al_ {
                        b[row] += b2;
                    }
                    // BR: −Σ_k [Br_{αk}(−ω_β) n_{kβ} + Br_{βk}(−ω_α) n_{kα}]
                    a[[row, idx_n(k, be)]] -= f.br(al_, k, -om[be]);
                    a[[row, idx_n(k, al_)]] -= f.br(be, k, -om[al_]);
                }

                // ---- d m̄_{αβ}/dt, O = p_α†p_β† ----
                let row = idx_mbar(al_, be);
                a[[row, row]] += i1 * (om[al_] + om[be]);
                for k in 0..2 {
                    // DR: −Σ_k [R_{βk}(ω_α) m̄_{kα} + R_{αk}(ω_β) m̄_{kβ}]
                    a[[row, idx_mbar(k, al_)]] -= f.r(be, k, om[al_]);
                    a[[row, idx_mbar(k, be)]] -= f.r(al_, k, om[be]);
                    // CL: +Σ_k [C_{αk}(ω_β) m̄_{βk} + C_{βk}(ω_α) m̄_{αk}]
                    a[[row, idx_mbar(be, k)]] += f.c(al_, k, om[be]);
                    a[[row, idx_mbar(al_, k)]] += f.c(be, k, om[al_]);
                    // AL: −Σ_k [A_{βk}(ω_α) n_{αk} + A_{αk}(ω_β) n_{βk}]
                    a[[row, idx_n(al_, k)]] -= f.al(be, k, om[al_]);
                    a[[row, idx_n(be, k)]] -= f.al(al_, k, om[be]);
                    // AR: +Σ_k [Ar_{αk}(ω_β)(δ_{kβ} + n_{βk}) + Ar_{βk}(ω_α)(δ_{kα} + n_{αk})]
                    let a1 = f.ar(al_, k, om[be]);
                    a[[row, idx_n(be, k)]] += a1;
                    if k == be {
                        b[row] += a1;
                    }
                    let a2 = f.ar(be, k, om[al_]);
                    a[[row, idx_n(al_, k)]] += a2;
                    if k == al_ {
                        b[row] += a2;
                    }
                }
            }
        }
        MomentGenerator { a, b, basis: *basis }
    }

    /// Integrates the moment ODE with RK4 over the output grid (cycles).
    pub fn propagate(
        &self,
        moments0: PolaritonMoments,
        t_grid: &[f64],
        dt_cycles: f64,
    ) -> Result<Vec<PolaritonMoments>> {
        let mut x = moments0.to_vec();
        let mut out = Vec::with_capacity(t_grid.len());
        out.push(PolaritonMoments::from_vec(&x));
        let rhs = |x: &Array1<C64>| -> Array1<C64> { self.a.dot(x) + &self.b };
        let mut t_now = t_grid[0];
        for &t_next in &t_grid[1..] {
            let span = (t_next - t_now) * CYCLE;
            let steps = (span / (dt_cycles * CYCLE)).ceil().max(1.0) as usize;
            let h = span / steps as f64;
            for _ in 0..steps {
                let k1 = rhs(&x);
                let k2 = rhs(&(&x + &k1.mapv(|c| c * (0.5 * h))));
                let k3 = rhs(&(&x + &k2.mapv(|c| c * (0.5 * h))));
                let k4 = rhs(&(&x + &k3.mapv(|c| c * h)));
                x = &x
                    + &(k1 + k2.mapv(|c| c * 2.0) + k3.mapv(|c| c * 2.0) + k4)
                        .mapv(|c| c * (h / 6.0));
            }
            t_now = t_next;
            out.push(PolaritonMoments::from_vec(&x));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{squeezed_ground_correlations, vacuum_correlations};
    use crate::hopfield::{diagonalize_polaritons, ground_state_moments};
    use crate::kernel::KernelPair;
    use crate::SystemParams;

    #[test]
    fn squeezed_mode_holds_ground_moments_fixed() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let corr = squeezed_ground_correlations(&basis, KernelPair::symmetric(1e-2, 1e3).unwrap());
        let gen = MomentGenerator::new(&basis, &corr);
        // Ground state: all polariton moments vanish; must be a fixed point.
        let x0 = PolaritonMoments::zero();
        let traj = gen.propagate(x0, &[0.0, 5.0, 20.0], 1e-3).unwrap();
        for mom in &traj {
            for j in 0..2 {
                for k in 0..2 {
                    assert!(mom.n[j][k].norm() < 1e-12);
                    assert!(mom.m[j][k].norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn closed_limit_oscillates_without_decay() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let corr = vacuum_correlations(KernelPair::symmetric(0.0, 1e3).unwrap());
        let gen = MomentGenerator::new(&basis, &corr);
        let mut x0 = PolaritonMoments::zero();
        x0.n[0][0] = C64::new(0.3, 0.0);
        x0.m[0][1] = C64::new(0.1, 0.05);
        x0.m[1][0] = x0.m[0][1];
        x0.mbar[0][1] = x0.m[0][1].conj();
        x0.mbar[1][0] = x0.m[0][1].conj();
        let grid: Vec<f64> = (0..40).map(|i| i as f64 * 0.25).collect();
        let traj = gen.propagate(x0, &grid, 1e-3).unwrap();
        for mom in &traj {
            assert!((mom.n[0][0].re - 0.3).abs() < 1e-8);
            assert!((mom.m[0][1].norm() - x0.m[0][1].norm()).abs() < 1e-8);
        }
    }

    #[test]
    fn bare_vacuum_initial_moments() {
        let params = SystemParams::figure();
        let basis = diagonalize_polaritons(&params).unwrap();
        let x0 = PolaritonMoments::from_bare(&basis, &MomentMatrix::vacuum());
        // ⟨p_j†p_k⟩ = y_j* y_k + z_j* z_k for the bare vacuum.
        for j in 0..2 {
            for k in 0..2 {
                let bj = basis.branches()[j];
                let bk = basis.branches()[k];
                let expect = bj.y.conj() * bk.y + bj.z.conj() * bk.z;
                assert!((x0.n[j][k] - expect).norm() < 1e-13);
                let expect_m = bj.w * bk.y + bj.x * bk.z;
                assert!((x0.m[j][k] - expect_m).norm() < 1e-13);
            }
        }
        // Round trip back to bare occupations.
        let (na, nb) = x0.bare_occupations(&basis);
        assert!((na - 0.0).abs() < 1e-12, "bare vacuum n_a = {na}");
        assert!((nb - 0.0).abs() < 1e-12);
        // And the dressed ground state has the known virtual populations.
        let xg = PolaritonMoments::from_bare(&basis, &ground_state_moments(&basis));
        for j in 0..2 {
            for k in 0..2 {
                assert!(xg.n[j][k].norm() < 1e-12, "ground n[{j}][{k}] = {}", xg.n[j][k]);
            }
        }
        let (na, nb) = xg.bare_occupations(&basis);
        assert!((na - 0.207).abs() < 2e-3);
        assert!((nb - 0.207).abs() < 2e-3);
    }
}
