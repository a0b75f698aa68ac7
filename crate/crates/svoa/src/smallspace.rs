//! Sector bases of the small algebra and its invariant bilinear form.
//!
//! The small algebra is generated by the lattice exponentials with momentum
//! in the spacetime and `psi`/`phi` directions together with `D xi`, `eta`,
//! `b` and `c`.  Its `chi`-sector therefore consists of words in the modes
//! `xi_{-k-1}` (`k >= 1`) and `eta_{-l}` (`l >= 1`), omitting the zero mode
//! of `xi`; the `sigma`-sector is cut down to the kernel of `b_1`.  This
//! module enumerates exact bases of the finite-dimensional graded pieces
//!
//! `C(alpha)_{p,n}` = { weight 0, picture `p`, ghost number `n`, momentum
//! `alpha`, GSO-allowed, killed by `b_1` }
//!
//! and implements the invariant bilinear form normalized by
//! `(e^{3 sigma - 2 phi}, 1) = 1`.

use crate::fields::Fields;
use crate::fock::{grade, osc_monomials, Monomial, State};
use crate::lattice::{LVec, DIM, DIR_CHI, DIR_PHI, DIR_SIGMA};
use crate::linalg::nullspace;
use crate::scalar::{frac, Frac, Scalar};
use crate::SvoaError;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Distinct positive integers summing to `total`, each at most `cap`;
/// used for the fermionic mode multisets of `xi` and `eta` words.
fn distinct_partitions(total: u32, cap: u32) -> Vec<Vec<u32>> {
    fn rec(total: u32, cap: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if total == 0 {
            out.push(acc.clone());
            return;
        }
        let mut k = cap.min(total);
        while k >= 1 {
            // Largest part first, strictly decreasing.
            if k * (k + 1) / 2 >= total {
                acc.push(k);
                rec(total - k, k - 1, acc, out);
                acc.pop();
            }
            k -= 1;
        }
    }
    let mut out = Vec::new();
    rec(total, cap, &mut Vec::new(), &mut out);
    out
}

/// Basis of the `chi`-sector of the small algebra with `chi`-momentum `t` and
/// oscillator degree `d`: the states `xi_{-k_1-1} ... eta_{-l_1} ... 1` with
/// distinct `k_i >= 1`, distinct `l_j >= 1`, `#xi - #eta = t` and total
/// weight `sum k_i + sum l_j = d + t(t-1)/2`.
pub fn chi_words(f: &Fields, t: i64, d: u32) -> Vec<State> {
    let weight = d as i64 + t * (t - 1) / 2;
    if weight < 0 {
        return Vec::new();
    }
    let weight = weight as u32;
    let xi = f.f("xi");
    let eta = f.f("eta");
    let mut out = Vec::new();
    // Split the weight between the xi word and the eta word.
    for wx in 0..=weight {
        let we = weight - wx;
        for ks in distinct_partitions(wx, wx) {
            for ls in distinct_partitions(we, we) {
                if ks.len() as i64 - ls.len() as i64 != t {
                    continue;
                }
                let mut st = State::vacuum();
                for &l in ls.iter().rev() {
                    st = f.alg.mode_product(eta, frac(-(l as i64), 1), &st);
                }
                for &k in ks.iter().rev() {
                    st = f.alg.mode_product(xi, frac(-(k as i64) - 1, 1), &st);
                }
                if !st.is_zero() {
                    out.push(st);
                }
            }
        }
    }
    out
}

/// Basis of the kernel of `b_1` on the `sigma`-Fock piece with momentum
/// `s sigma` and oscillator degree `d`.
pub fn sigma_kernel(f: &Fields, s: i64, d: u32) -> Vec<State> {
    let sd = DIR_SIGMA as u8;
    let source: Vec<Monomial> = osc_monomials(&[sd], d)
        .into_iter()
        .map(|osc| Monomial::with_osc(LVec::unit(DIR_SIGMA) * s as i32, osc))
        .collect();
    // b_1 preserves L_0 and lowers the sigma-momentum by one, so it maps
    // degree d to degree d + s - 2.
    let dt = d as i64 + s - 2;
    if dt < 0 {
        // Zero map: everything is in the kernel.
        return source.into_iter().map(State::from_mono).collect();
    }
    let targets: Vec<Monomial> = osc_monomials(&[sd], dt as u32)
        .into_iter()
        .map(|osc| Monomial::with_osc(LVec::unit(DIR_SIGMA) * (s as i32 - 1), osc))
        .collect();
    let index: BTreeMap<&Monomial, usize> =
        targets.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let b = f.f("b");
    let mut rows: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); source.len()]; targets.len()];
    for (j, m) in source.iter().enumerate() {
        let img = f.alg.mode_product(b, frac(1, 1), &State::from_mono(m.clone()));
        for (tm, cv) in &img.terms {
            rows[index[tm]][j] = cv.clone();
        }
    }
    nullspace(rows, source.len())
        .into_iter()
        .map(|v| {
            let mut st = State::zero();
            for (j, cv) in v.into_iter().enumerate() {
                if !cv.is_zero() {
                    st.add_term(source[j].clone(), cv);
                }
            }
            st
        })
        .collect()
}

/// A graded piece `C(alpha)_{p,n}` with an explicit basis.
pub struct Sector {
    pub alpha: LVec,
    pub picture: Frac,
    pub ghost: Frac,
    pub basis: Vec<State>,
}

impl Sector {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Enumerate `lambda` in the 5-dimensional weight lattice (integral or
/// half-integral entries, doubled coordinates of parity `par`) with
/// `lambda^2 <= cap2` (doubled norm `sum c_i^2 <= 4 * cap2`).
fn enumerate_lambda(par: i32, cap2_eighths: i64) -> Vec<[i32; 5]> {
    fn rec(i: usize, left: i64, par: i32, cur: &mut [i32; 5], out: &mut Vec<[i32; 5]>) {
        if i == 5 {
            out.push(*cur);
            return;
        }
        let mut c = par.rem_euclid(2);
        while (c as i64) * (c as i64) <= left {
            for sign in [1, -1] {
                if c == 0 && sign < 0 {
                    continue;
                }
                cur[i] = sign * c;
                rec(i + 1, left - (c as i64) * (c as i64), par, cur, out);
            }
            c += 2;
        }
    }
    let mut out = Vec::new();
    rec(0, cap2_eighths, par, &mut [0; 5], &mut out);
    out
}

/// Enumerate an exact basis of `C(alpha)_{p, n}`: small-algebra states of
/// weight zero with spacetime momentum `alpha`, ghost picture `p`, ghost
/// number `n`, surviving the GSO projection and killed by `b_1`.
pub fn enumerate_sector(
    f: &Fields,
    alpha: &LVec,
    picture: Frac,
    ghost: Frac,
) -> Result<Sector, SvoaError> {
    let lat = &f.alg.lat;
    if !alpha.is_x_only() {
        return Err(SvoaError::Config(format!(
            "sector momentum must be purely spacetime, got {alpha}"
        )));
    }
    if !lat.contains(alpha) {
        return Err(SvoaError::NotInLattice(format!("{alpha}")));
    }
    if !ghost.is_integer() {
        // Ghost numbers are always integral on the lattice.
        return Ok(Sector { alpha: *alpha, picture, ghost, basis: Vec::new() });
    }
    let n = ghost;
    let p = picture;
    let mut basis: Vec<State> = Vec::new();
    for t in -48..=48i64 {
        // Fixed chi-momentum t determines the sigma- and phi-momenta.
        let s = n + frac(t, 1);
        let m_phi = p - frac(t, 1);
        if !s.is_integer() {
            continue;
        }
        let s = *s.numer();
        // Weight budget for lambda^2/2 plus all oscillator degrees:
        // 0 = alpha^2/2 + lambda^2/2 - m^2/2 - m + t(t-1)/2 + s(s-3)/2 + deg.
        let budget = -alpha.norm() / frac(2, 1) + m_phi * m_phi / frac(2, 1) + m_phi
            - frac(t * (t - 1), 2)
            - frac(s * (s - 3), 2);
        // Minimal chi-word degree is t for t > 0 (smallest xi weights are
        // 1, ..., t above the background).
        if budget < frac(t.max(0), 1) {
            continue;
        }
        // Doubled-coordinate parity of lambda matches that of m_phi.
        let m2 = m_phi * frac(2, 1);
        if !m2.is_integer() {
            continue;
        }
        let m2 = *m2.numer();
        let par = (m2.rem_euclid(2)) as i32;
        // lambda^2/2 <= budget, i.e. sum c_i^2 <= 8 * budget in doubled
        // coordinates.
        let cap = budget * frac(8, 1);
        debug_assert!(cap.is_integer());
        for lam in enumerate_lambda(par, *cap.numer()) {
            let mut mu = *alpha;
            for (i, &c) in lam.iter().enumerate() {
                mu.0[10 + i] = c;
            }
            mu.0[DIR_PHI] = m2 as i32;
            let mu_chi_sigma =
                LVec::unit(DIR_CHI) * t as i32 + LVec::unit(DIR_SIGMA) * s as i32;
            let full = mu + mu_chi_sigma;
            if !lat.contains(&full) {
                continue;
            }
            if lat.coset_class(&full)?.gso_parity().is_none() {
                continue;
            }
            // Remaining integer degree to distribute over the four factors;
            // lambda^2/2 in doubled coordinates is sum c_i^2 / 8.
            let lam2 = lam.iter().map(|&c| (c as i64) * (c as i64)).sum::<i64>();
            let rem = budget - frac(lam2, 8);
            if !rem.is_integer() || rem < Frac::zero() {
                continue;
            }
            let rem = *rem.numer() as u32;
            let tmin = t.max(0) as u32;
            for d_chi in tmin..=rem {
                let chis = chi_words(f, t, d_chi);
                if chis.is_empty() {
                    continue;
                }
                for d_sigma in 0..=(rem - d_chi) {
                    let sigmas = sigma_kernel(f, s, d_sigma);
                    if sigmas.is_empty() {
                        continue;
                    }
                    for d_x in 0..=(rem - d_chi - d_sigma) {
                        let d_pp = rem - d_chi - d_sigma - d_x;
                        let xs = osc_monomials(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9], d_x);
                        let pps =
                            osc_monomials(&[10, 11, 12, 13, 14, 15], d_pp);
                        for xo in &xs {
                            for po in &pps {
                                let mut base = Monomial::momentum(mu);
                                for &(dd, nn, kk) in xo.iter().chain(po.iter()) {
                                    for _ in 0..kk {
                                        base.push(dd, nn);
                                    }
                                }
                                for cst in &chis {
                                    for sst in &sigmas {
                                        basis.push(merge(&base, cst, sst));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for v in &basis {
        debug_assert_eq!(grade(lat, v).unwrap().l0, Frac::zero());
    }
    Ok(Sector { alpha: *alpha, picture, ghost, basis })
}

/// Tensor a base monomial (spacetime and `psi`/`phi` data) with a `chi`-word
/// state and a `sigma`-kernel state; the three live in disjoint directions.
fn merge(base: &Monomial, chi: &State, sigma: &State) -> State {
    let mut out = State::zero();
    for (cm, cc) in &chi.terms {
        for (sm, sc) in &sigma.terms {
            let mut m = base.clone();
            m.mom = m.mom + cm.mom + sm.mom;
            for &(d, nn, k) in cm.osc.iter().chain(sm.osc.iter()) {
                for _ in 0..k {
                    m.push(d, nn);
                }
            }
            out.add_term(m, cc * sc);
        }
    }
    out
}

/// The invariant bilinear form on the small algebra, normalized by
/// `(e^{3 sigma - 2 phi}, 1) = 1`: the coefficient of `e^{3 sigma - 2 phi}`
/// in `(u_{-1})^* v`.
pub fn pairing(f: &Fields, u: &State, v: &State) -> Result<Scalar, SvoaError> {
    if u.is_zero() || v.is_zero() {
        return Ok(Scalar::zero());
    }
    let w = f
        .alg
        .adjoint_mode(u, frac(-1, 1), v, f.f("omega"))?;
    let mut top = [0i32; DIM];
    top[DIR_SIGMA] = 6;
    top[DIR_PHI] = -4;
    Ok(w.coeff(&Monomial::momentum(LVec(top))))
}

/// The twisted form `(u, v)_C = (c_{-2} u, v)` that is nondegenerate on the
/// kernel of `b_1`.
pub fn pairing_c(f: &Fields, u: &State, v: &State) -> Result<Scalar, SvoaError> {
    let cu = f.alg.mode_product(f.f("c"), frac(-2, 1), u);
    pairing(f, &cu, v)
}

/// Expected dimension of the `chi`-sector piece from its character
/// `prod_{k>=1} (1 + u q^k)(1 + u^{-1} q^k)`: the coefficient of
/// `u^t q^{t(t-1)/2 + d}`.
pub fn chi_character_dim(t: i64, d: u32) -> u64 {
    let weight = d as i64 + t * (t - 1) / 2;
    if weight < 0 {
        return 0;
    }
    let mut count = 0u64;
    for wx in 0..=weight as u32 {
        let we = weight as u32 - wx;
        for ks in distinct_partitions(wx, wx) {
            for ls in distinct_partitions(we, we) {
                if ks.len() as i64 - ls.len() as i64 == t {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Expected dimension of the `b_1`-kernel piece from its character
/// `(1 + u q^{-1}) prod_{k>=1} (1 + u q^k) prod_{l>=2} (1 + u^{-1} q^l)`:
/// the coefficient of `u^s q^{s(s-3)/2 + d}`.
pub fn sigma_character_dim(s: i64, d: u32) -> u64 {
    // Charge-weight pairs of the available fermionic modes, truncated at the
    // relevant weight.
    let weight = d as i64 + s * (s - 3) / 2;
    let cutoff = weight.unsigned_abs() as i64 + 4;
    let mut modes: Vec<(i64, i64)> = vec![(1, -1)];
    for k in 1..=cutoff {
        modes.push((1, k));
    }
    for l in 2..=cutoff {
        modes.push((-1, l));
    }
    // Subset-sum count over the fermionic modes.
    let mut table: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    table.insert((0, 0), 1);
    for (q, w) in modes {
        let snapshot: Vec<((i64, i64), u64)> =
            table.iter().map(|(&k, &v)| (k, v)).collect();
        for ((cq, cw), cnt) in snapshot {
            if cw + w <= weight + cutoff {
                *table.entry((cq + q, cw + w)).or_insert(0) += cnt;
            }
        }
    }
    table.get(&(s, weight)).copied().unwrap_or(0)
}
