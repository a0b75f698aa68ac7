//! Vertex operator mode products `a_n b` and their algebraic identities.
//!
//! For a monomial `a = e^alpha g_1(-p_1)...g_r(-p_r)` the vertex operator is
//! the normally ordered product
//!
//! ```text
//! a(z) = e^alpha(z)^+ : g_1(-p_1)(z) ... g_r(-p_r)(z) : e^alpha(z)^-
//! ```
//!
//! with `e^alpha(z)^+ = e^alpha c_alpha sum_s S_s(alpha) z^s` (Schur
//! polynomials in the creation modes `alpha(-m)`), `e^alpha(z)^- =
//! z^{alpha(0)} exp(-sum_{m>0} alpha(m) z^{-m}/m)`, and
//! `g(-p)(z) = d^{p-1} g(z)/(p-1)!`-style derivative fields expanded as
//!
//! ```text
//! g(-p)(z) = sum_l (-1)^{p-1} binom(l, p-1) g(l-p+1) z^{-l-1}.
//! ```
//!
//! `a_n b` is the coefficient of `z^{-n-1}` of `a(z)` applied to `b`,
//! multiplied by the lattice cocycle `epsilon(alpha, beta)`.  The module also
//! provides the translation operator `D`, the Borcherds-identity checker and
//! the adjoint modes with respect to the invariant bilinear form.

use crate::fock::{bg_l0, heis_apply, partitions, Monomial, State};
use crate::lattice::{LVec, Lattice};
use crate::scalar::{binom_frac, frac, Frac, Scalar};
use crate::SvoaError;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// The vertex algebra context: the lattice plus a cache of monomial mode
/// products.
pub struct Algebra {
    pub lat: Lattice,
    cache: Mutex<HashMap<(Monomial, Frac, Monomial), State>>,
    hits: Mutex<(u64, u64)>,
}

impl Algebra {
    pub fn new(lat: Lattice) -> Self {
        Algebra { lat, cache: Mutex::new(HashMap::new()), hits: Mutex::new((0, 0)) }
    }

    /// Cache statistics `(hits, misses)`.
    pub fn cache_stats(&self) -> (u64, u64) {
        *self.hits.lock().unwrap()
    }

    /// Number of cached monomial products.
    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    /// Drop all cached products.  Long sweeps over many distinct states can
    /// accumulate an unbounded cache; clearing it periodically bounds memory
    /// at the cost of recomputing shared subproducts.
    pub fn cache_clear(&self) {
        self.cache.lock().unwrap().clear();
    }

    /// Export the cache keys and values for persistence.
    pub fn cache_dump(&self) -> Vec<((Monomial, Frac, Monomial), State)> {
        self.cache
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    /// Install cached entries (used when loading a persisted cache).
    pub fn cache_load(&self, entries: Vec<((Monomial, Frac, Monomial), State)>) {
        let mut c = self.cache.lock().unwrap();
        for (k, v) in entries {
            c.insert(k, v);
        }
    }

    /// The mode product `a_n b`, bilinear in both states.
    pub fn mode_product(&self, a: &State, n: Frac, b: &State) -> State {
        let mut out = State::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let p = self.mode_product_mono(ma, n, mb);
                if p.is_zero() {
                    continue;
                }
                let c = ca * cb;
                for (m, v) in p.terms {
                    out.add_term(m, &c * &v);
                }
            }
        }
        out
    }

    /// The mode product of two monomials (cached).
    pub fn mode_product_mono(&self, a: &Monomial, n: Frac, b: &Monomial) -> State {
        // The product vanishes unless n + (alpha, beta) is integral.
        let pab = a.mom.pair(&b.mom);
        if !(n + pab).is_integer() {
            return State::zero();
        }
        // Support bound: the result lives at L_0 = L_0(a) + L_0(b) - n - 1,
        // which must be at least the bare value at the combined momentum.
        let target_l0 = a.l0() + b.l0() - n - Frac::one();
        if target_l0 < bg_l0(&(a.mom + b.mom)) {
            return State::zero();
        }
        let key = (a.clone(), n, b.clone());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            self.hits.lock().unwrap().0 += 1;
            return hit.clone();
        }
        self.hits.lock().unwrap().1 += 1;
        let out = self.mode_product_uncached(a, n, b);
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn mode_product_uncached(&self, a: &Monomial, n: Frac, b: &Monomial) -> State {
        let alpha = a.mom;
        let beta = b.mom;
        let pab = alpha.pair(&beta);
        let eps = self
            .lat
            .epsilon(&alpha, &beta)
            .expect("mode product momenta must be lattice points");
        let target_l0 = a.l0() + b.l0() - n - Frac::one();
        // Total oscillator degree of every term of the result; bounds the
        // z-exponent any single creation operator can carry.
        let deg_budget_f = target_l0 - bg_l0(&(alpha + beta));
        debug_assert!(deg_budget_f >= Frac::zero());
        debug_assert!(deg_budget_f.is_integer());
        let deg_budget = *deg_budget_f.numer();

        // Stage 1: apply e^alpha(z)^- = z^{(alpha,beta)} exp(-sum_{m>0}
        // alpha(m) z^-m / m) to b, producing states tagged with the
        // accumulated negative z-shift.
        let mut parts: Vec<(i64, State)> = vec![(0, State::from_mono(b.clone()))];
        let maxmode = b.osc.iter().map(|&(_, m, _)| m).max().unwrap_or(0);
        for m in 1..=maxmode {
            let mut next = Vec::new();
            for (shift, st) in parts {
                let mut cur = st.clone();
                next.push((shift, st));
                let mut coef = Frac::one();
                for j in 1.. {
                    cur = heis_apply(&alpha, m as i64, &cur);
                    if cur.is_zero() {
                        break;
                    }
                    coef *= frac(-1, m as i64 * j);
                    next.push((shift + m as i64 * j, cur.scale_frac(coef)));
                }
            }
            parts = next;
        }

        // Stage 2 + 3: expand the normally ordered oscillator factors and
        // the Schur creation tail of e^alpha(z)^+.
        let mut fac: Vec<(u8, u32)> = Vec::new();
        for &(d, p, k) in &a.osc {
            for _ in 0..k {
                fac.push((d, p));
            }
        }
        let mut out = State::zero();
        for (shift, st) in &parts {
            for (w, c0) in &st.terms {
                self.assign_factors(
                    &alpha,
                    &fac,
                    0,
                    w.clone(),
                    Frac::one(),
                    0,
                    Vec::new(),
                    n,
                    pab,
                    *shift,
                    deg_budget,
                    c0,
                    &eps,
                    &mut out,
                );
            }
        }
        out
    }

    /// Recursive expansion over the oscillator factors of `a`.
    ///
    /// Each factor `g_d(-p)(z)` contributes either a zero/annihilation mode
    /// (applied immediately to `w`; z-exponent `-(k+p)` for mode `k >= 0`) or
    /// a deferred creation operator `g_d(-(e+p))` carrying z-exponent `e`.
    /// `zexp` accumulates the z-exponents of the choices made so far; at the
    /// leaf the Schur index `s` of `e^alpha(z)^+` is fixed by requiring the
    /// total z-exponent `pab - shift + zexp + s = -n-1`.
    #[allow(clippy::too_many_arguments)]
    fn assign_factors(
        &self,
        alpha: &LVec,
        fac: &[(u8, u32)],
        idx: usize,
        w: Monomial,
        coeff: Frac,
        zexp: i64,
        creations: Vec<(u8, u32)>,
        n: Frac,
        pab: Frac,
        shift: i64,
        deg_budget: i64,
        c0: &Scalar,
        eps: &Scalar,
        out: &mut State,
    ) {
        use crate::lattice::METRIC;
        if coeff.is_zero() {
            return;
        }
        if idx == fac.len() {
            let s_f = -n - Frac::one() - pab + frac(shift, 1) - frac(zexp, 1);
            debug_assert!(s_f.is_integer());
            let s = *s_f.numer();
            if s < 0 {
                return;
            }
            let mut mono = w;
            for &(d, m_mode) in &creations {
                mono.push(d, m_mode);
            }
            let schur = self.schur_apply(alpha, s as u32, &mono);
            let shifted = Self::shift_momentum(schur, *alpha);
            let total = eps.times_frac(coeff) * c0.clone();
            for (m2, v) in shifted.terms {
                out.add_term(m2, &total * &v);
            }
            return;
        }
        let (d, p) = fac[idx];
        let g = METRIC[d as usize];
        let sign_p = if (p - 1) % 2 == 0 { Frac::one() } else { -Frac::one() };
        // Option A: zero mode g_d(0), eigenvalue g * beta_d; here l = p-1 so
        // binom(l, p-1) = 1 and the z-exponent is -p.
        {
            let v = w.mom.coord(d as usize) * frac(g, 1);
            if !v.is_zero() {
                self.assign_factors(
                    alpha,
                    fac,
                    idx + 1,
                    w.clone(),
                    coeff * sign_p * v,
                    zexp - p as i64,
                    creations.clone(),
                    n,
                    pab,
                    shift,
                    deg_budget,
                    c0,
                    eps,
                    out,
                );
            }
        }
        // Option B: annihilate an oscillator h_d(-k) present in w
        // (mode k >= 1, l = k+p-1, z-exponent -(k+p)).
        let modes: Vec<(u32, u32)> = w
            .osc
            .iter()
            .filter(|&&(dd, _, _)| dd == d)
            .map(|&(_, k, cnt)| (k, cnt))
            .collect();
        for (k, cnt) in modes {
            let l = (k + p - 1) as i64;
            let c = coeff
                * sign_p
                * binom_frac(frac(l, 1), p - 1)
                * frac(cnt as i64 * k as i64 * g, 1);
            let w2 = w.remove_one(d, k).expect("mode present");
            self.assign_factors(
                alpha,
                fac,
                idx + 1,
                w2,
                c,
                zexp - (k + p) as i64,
                creations.clone(),
                n,
                pab,
                shift,
                deg_budget,
                c0,
                eps,
                out,
            );
        }
        // Option C: creation g_d(-M), M = e+p >= 1, z-exponent e in
        // [1-p, deg_budget]; coefficient binom(-e-1, p-1).
        for e in (1 - p as i64)..=deg_budget {
            let m_mode = e + p as i64;
            if m_mode < 1 {
                continue;
            }
            let c = coeff * sign_p * binom_frac(frac(-e - 1, 1), p - 1);
            if c.is_zero() {
                continue;
            }
            let mut cre = creations.clone();
            cre.push((d, m_mode as u32));
            self.assign_factors(
                alpha,
                fac,
                idx + 1,
                w.clone(),
                c,
                zexp + e,
                cre,
                n,
                pab,
                shift,
                deg_budget,
                c0,
                eps,
                out,
            );
        }
    }

    /// Apply the Schur polynomial `S_s(alpha)` in the creation modes
    /// `alpha(-m)` to a monomial:
    /// `S_s = sum_{partitions of s} prod_m alpha(-m)^{j_m} / (m^{j_m} j_m!)`.
    pub fn schur_apply(&self, alpha: &LVec, s: u32, base: &Monomial) -> State {
        let mut out = State::zero();
        for part in partitions(s) {
            let mut st = State::from_mono(base.clone());
            let mut denom = Frac::one();
            for (m, j) in part {
                for _ in 0..j {
                    st = heis_apply(alpha, -(m as i64), &st);
                }
                for t in 1..=j {
                    denom *= frac(m as i64 * t as i64, 1);
                }
            }
            out = out + st.scale_frac(Frac::one() / denom);
        }
        out
    }

    /// Add `alpha` to the momentum of every monomial.  Mode products produce
    /// the shifted momentum through this helper after the oscillator algebra.
    fn shift_momentum(state: State, alpha: LVec) -> State {
        let mut out = State::zero();
        for (m, c) in state.terms {
            out.add_term(Monomial { mom: m.mom + alpha, osc: m.osc }, c);
        }
        out
    }

    /// The translation operator `D = L_{-1}`.
    pub fn derivation(&self, a: &State) -> State {
        a.map_terms(|m| {
            let mut out = State::zero();
            for &(d, nn, k) in &m.osc {
                let base = m.remove_one(d, nn).unwrap();
                let mut m2 = base;
                m2.push(d, nn + 1);
                out.add_term(m2, Scalar::from_frac(frac(nn as i64 * k as i64, 1)));
            }
            out = out + heis_apply(&m.mom, -1, &State::from_mono(m.clone()));
            out
        })
    }

    /// Divided power `D^j a / j!`.
    pub fn d_pow(&self, a: &State, j: u32) -> State {
        let mut out = a.clone();
        for t in 1..=j {
            out = self.derivation(&out).scale_frac(frac(1, t as i64));
        }
        out
    }

    /// Conformal-weight-shifted "physics" mode: `a_(m) = a_{m - 1 + h}` where
    /// `h` is the conformal weight of `a` (must be homogeneous).
    pub fn mode_operator(&self, a: &State, m: Frac, v: &State) -> Result<State, SvoaError> {
        let g = crate::fock::grade(&self.lat, a)?;
        Ok(self.mode_product(a, m - Frac::one() + g.l0, v))
    }

    /// Evaluate both sides of the Borcherds identity
    ///
    /// ```text
    /// sum_j binom(n,j)(-1)^j { a_{n+k-j}(b_{m+j}c)
    ///     - eta(cl a, cl b) e^{i pi n} b_{m+n-j}(a_{k+j}c) }
    ///   = sum_j binom(k,j) (a_{n+j}b)_{k+m-j} c
    /// ```
    ///
    /// for homogeneous-class states, with `n` in `Z + Delta(cl a, cl b)` and
    /// `k` in `Z + Delta(cl a, cl c)`.
    pub fn check_borcherds(
        &self,
        a: &State,
        b: &State,
        c: &State,
        n: Frac,
        k: Frac,
        m: Frac,
    ) -> Result<BorcherdsReport, SvoaError> {
        let ga = crate::fock::grade(&self.lat, a)?;
        let gb = crate::fock::grade(&self.lat, b)?;
        let eta = self.lat.eta(ga.class, gb.class);
        let phase = Scalar::e_ipi(n);

        let la = a.max_l0().unwrap();
        let lb = b.max_l0().unwrap();
        let lc = c.max_l0().unwrap();
        let bound = |x: Frac| -> i64 {
            if x < Frac::zero() {
                -1
            } else {
                x.floor().to_integer()
            }
        };
        let min_bc = b.min_target_bg(c).unwrap();
        let min_ac = a.min_target_bg(c).unwrap();
        let min_ab = a.min_target_bg(b).unwrap();

        let mut lhs = State::zero();
        let j1 = bound(lb + lc - m - Frac::one() - min_bc);
        for j in 0..=j1.max(-1) {
            let inner = self.mode_product(b, m + frac(j, 1), c);
            if inner.is_zero() {
                continue;
            }
            let term = self.mode_product(a, n + k - frac(j, 1), &inner);
            let coef = binom_frac(n, j as u32) * frac(if j % 2 == 0 { 1 } else { -1 }, 1);
            lhs = lhs + term.scale_frac(coef);
        }
        let j2 = bound(la + lc - k - Frac::one() - min_ac);
        for j in 0..=j2.max(-1) {
            let inner = self.mode_product(a, k + frac(j, 1), c);
            if inner.is_zero() {
                continue;
            }
            let term = self.mode_product(b, m + n - frac(j, 1), &inner);
            let coef = binom_frac(n, j as u32) * frac(if j % 2 == 0 { 1 } else { -1 }, 1);
            let phase_term = (eta.clone() * phase.clone()).times_frac(coef);
            lhs = lhs - term.scale(&phase_term);
        }

        let mut rhs = State::zero();
        let j3 = bound(la + lb - n - Frac::one() - min_ab);
        for j in 0..=j3.max(-1) {
            let inner = self.mode_product(a, n + frac(j, 1), b);
            if inner.is_zero() {
                continue;
            }
            let term = self.mode_product(&inner, k + m - frac(j, 1), c);
            rhs = rhs + term.scale_frac(binom_frac(k, j as u32));
        }

        let equal = lhs == rhs;
        Ok(BorcherdsReport { lhs, rhs, equal, n, k, m })
    }

    /// The adjoint mode action `a_n^* b` with respect to the invariant form:
    /// `a_n^* = (-1)^h sum_{i >= 0} (L_1^i a / i!)_{2h - n - i - 2}` for `a`
    /// of integral conformal weight `h`; `omega` is the total conformal
    /// vector providing `L_1 = omega_2`.
    pub fn adjoint_mode(
        &self,
        a: &State,
        n: Frac,
        b: &State,
        omega: &State,
    ) -> Result<State, SvoaError> {
        let g = crate::fock::grade(&self.lat, a)?;
        if !g.l0.is_integer() {
            return Err(SvoaError::Infeasible(format!(
                "adjoint mode requires integral conformal weight, got {}",
                g.l0
            )));
        }
        let h = g.l0.to_integer();
        let sign = if h % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        let mut out = State::zero();
        let mut u = a.clone();
        let mut i: i64 = 0;
        while !u.is_zero() {
            let idx = frac(2 * h - i - 2, 1) - n;
            out = out + self.mode_product(&u, idx, b);
            i += 1;
            u = self.mode_product(omega, frac(2, 1), &u).scale_frac(frac(1, i));
        }
        Ok(out.scale(&sign))
    }
}

/// Result of a single Borcherds identity check.
pub struct BorcherdsReport {
    pub lhs: State,
    pub rhs: State,
    pub equal: bool,
    pub n: Frac,
    pub k: Frac,
    pub m: Frac,
}

impl std::fmt::Display for BorcherdsReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "Borcherds identity at (n, k, m) = ({}, {}, {}): {}",
            self.n,
            self.k,
            self.m,
            if self.equal { "holds" } else { "FAILS" }
        )?;
        writeln!(f, "  lhs = {}", self.lhs)?;
        write!(f, "  rhs = {}", self.rhs)
    }
}
