//! The standard field dictionary: matter and ghost Virasoro / N=2 structures,
//! spin fields, the BRST current, and OPE verification.
//!
//! All composite fields are built from lattice exponentials and Heisenberg
//! oscillators through the mode products of [`crate::vertexop`], exactly as
//! they are defined analytically; no operator product is ever entered by
//! hand.  The expected singular OPEs live in [`standard_ope_table`] and are
//! verified coefficient by coefficient by [`Fields::verify_ope`].

use crate::fock::{grade, Monomial, State};
use crate::lattice::{LVec, Lattice, DIM, DIR_CHI, DIR_PHI, DIR_SIGMA};
use crate::scalar::{frac, Frac, Scalar};
use crate::vertexop::Algebra;
use crate::SvoaError;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// The field registry: an [`Algebra`] plus named composite states.
pub struct Fields {
    pub alg: Algebra,
    map: BTreeMap<String, State>,
}

/// Spinor index bookkeeping: the 16 weights `lambda` with all entries
/// `+-1/2`; bit `i` of `mask` set means entry `i` is `-1/2`.  Dotted spinors
/// carry an odd number of minus signs, undotted an even number; both lists
/// are ordered by increasing mask.
pub fn spinor_masks(dotted: bool) -> Vec<u32> {
    (0u32..32)
        .filter(|m| (m.count_ones() % 2 == 1) == dotted)
        .collect()
}

/// The weight vector `lambda` (coordinates 10..=14) for a mask.
pub fn spinor_lambda(mask: u32) -> LVec {
    let mut v = [0i32; DIM];
    for i in 0..5 {
        v[10 + i] = if mask & (1 << i) != 0 { -1 } else { 1 };
    }
    LVec(v)
}

impl Fields {
    /// Build the full registry over the `II_{9,1}` lattice.
    pub fn new(y: i64) -> Self {
        let alg = Algebra::new(Lattice::new(y));
        let mut f = Fields { alg, map: BTreeMap::new() };
        f.build();
        f
    }

    fn put(&mut self, name: &str, st: State) {
        self.map.insert(name.to_string(), st);
    }

    /// Look up a field by name.
    pub fn get(&self, name: &str) -> Result<&State, SvoaError> {
        self.map
            .get(name)
            .ok_or_else(|| SvoaError::UnknownField(name.to_string()))
    }

    /// Convenience: look up a field, panicking on unknown names (internal
    /// names are all statically known).
    pub fn f(&self, name: &str) -> &State {
        self.get(name).unwrap()
    }

    /// All registered names.
    pub fn names(&self) -> Vec<&str> {
        self.map.keys().map(|s| s.as_str()).collect()
    }

    fn mp(&self, a: &State, n: i64, b: &State) -> State {
        self.alg.mode_product(a, frac(n, 1), b)
    }

    fn build(&mut self) {
        let e = |mu: LVec| State::momentum(mu);
        let osc = |d: usize, n: u32| {
            State::from_mono(Monomial::with_osc(LVec::zero(), [(d as u8, n, 1)]))
        };
        let inv_s2 = Scalar::inv_sqrt2();
        let i_unit = Scalar::i();

        // Free matter fields.
        for mu in 0..10usize {
            self.put(&format!("x{}", mu + 1), osc(mu, 1));
        }
        for i in 1..=5usize {
            self.put(&format!("Psi{}", i), e(LVec::unit(9 + i)));
            self.put(&format!("Psi-{}", i), e(-LVec::unit(9 + i)));
        }
        for i in 1..=4usize {
            let p = self.f(&format!("Psi{}", i)).clone();
            let m = self.f(&format!("Psi-{}", i)).clone();
            self.put(
                &format!("psi{}", 2 * i - 1),
                (p.clone() + m.clone()).scale(&inv_s2),
            );
            self.put(
                &format!("psi{}", 2 * i),
                (p - m).scale(&(i_unit.clone() * inv_s2.clone())),
            );
        }
        {
            let p = self.f("Psi5").clone();
            let m = self.f("Psi-5").clone();
            self.put("psi9", (p.clone() + m.clone()).scale(&inv_s2));
            self.put("psi10", (p - m).scale(&inv_s2));
        }

        // Complexified spacetime bosons h^{+-i}.
        for i in 1..=4usize {
            let a = self.f(&format!("x{}", 2 * i - 1)).clone();
            let b = self.f(&format!("x{}", 2 * i)).clone();
            self.put(
                &format!("h{}", i),
                (a.clone() + b.clone().scale(&i_unit)).scale(&inv_s2),
            );
            self.put(
                &format!("h-{}", i),
                (a + b.scale(&-i_unit.clone())).scale(&inv_s2),
            );
        }
        {
            let a = self.f("x9").clone();
            let b = self.f("x10").clone();
            self.put("h5", (a.clone() - b.clone()).scale(&inv_s2));
            self.put("h-5", (a + b).scale(&inv_s2));
        }

        // Matter currents.
        let mut tau_m = State::zero();
        for mu in 0..10usize {
            let g = crate::lattice::METRIC[mu];
            let x = self.f(&format!("x{}", mu + 1)).clone();
            let psi = self.f(&format!("psi{}", mu + 1)).clone();
            tau_m = tau_m + self.mp(&x, -1, &psi).scale_frac(frac(g, 1));
        }
        self.put("tau_M", tau_m.clone());
        self.put("omega_M", self.mp(&tau_m, 0, &tau_m).scale_frac(frac(1, 2)));
        let mut j_m = State::zero();
        for i in 0..5usize {
            j_m = j_m + osc(10 + i, 1);
        }
        self.put("j_M", j_m);
        let mut tau_p = State::zero();
        let mut tau_n = State::zero();
        for i in 1..=5usize {
            let hp = self.f(&format!("h{}", i)).clone();
            let hm = self.f(&format!("h-{}", i)).clone();
            let pp = self.f(&format!("Psi{}", i)).clone();
            let pm = self.f(&format!("Psi-{}", i)).clone();
            tau_p = tau_p + self.mp(&hp, -1, &pp);
            tau_n = tau_n + self.mp(&hm, -1, &pm);
        }
        self.put("tau_M+", tau_p);
        self.put("tau_M-", tau_n);

        // Ghost exponentials.
        let phi = LVec::unit(DIR_PHI);
        let chi = LVec::unit(DIR_CHI);
        let sigma = LVec::unit(DIR_SIGMA);
        self.put("b", e(-sigma));
        self.put("c", e(sigma));
        self.put("xi", e(chi));
        self.put("eta", e(-chi));
        self.put("gamma", e(phi - chi));
        self.put(
            "beta",
            State::from_mono(Monomial::with_osc(chi - phi, [(DIR_CHI as u8, 1, 1)])),
        );
        self.put("Dxi", self.alg.derivation(self.f("xi")));
        self.put("e_phi", e(phi));
        self.put("e_mphi", e(-phi));
        self.put("e_m2phi", e(-phi * 2));

        // Ghost Virasoro pieces (free-boson stress tensors with background
        // charge).
        let mut om_phi = State::zero();
        om_phi.add_term(
            Monomial::with_osc(LVec::zero(), [(DIR_PHI as u8, 1, 2)]),
            Scalar::from_frac(frac(-1, 2)),
        );
        om_phi.add_term(
            Monomial::with_osc(LVec::zero(), [(DIR_PHI as u8, 2, 1)]),
            Scalar::from_int(-1),
        );
        self.put("omega_phi", om_phi);
        let mut om_chi = State::zero();
        om_chi.add_term(
            Monomial::with_osc(LVec::zero(), [(DIR_CHI as u8, 1, 2)]),
            Scalar::from_frac(frac(1, 2)),
        );
        om_chi.add_term(
            Monomial::with_osc(LVec::zero(), [(DIR_CHI as u8, 2, 1)]),
            Scalar::from_frac(frac(1, 2)),
        );
        self.put("omega_chi", om_chi);
        let mut om_sig = State::zero();
        om_sig.add_term(
            Monomial::with_osc(LVec::zero(), [(DIR_SIGMA as u8, 1, 2)]),
            Scalar::from_frac(frac(1, 2)),
        );
        om_sig.add_term(
            Monomial::with_osc(LVec::zero(), [(DIR_SIGMA as u8, 2, 1)]),
            Scalar::from_frac(frac(3, 2)),
        );
        self.put("omega_sigma", om_sig);
        self.put("omega_bc", self.f("omega_sigma").clone());
        self.put(
            "omega_betagamma",
            self.f("omega_phi").clone() + self.f("omega_chi").clone(),
        );

        // Ghost supercurrent and Virasoro field.
        let b = self.f("b").clone();
        let c = self.f("c").clone();
        let beta = self.f("beta").clone();
        let gamma = self.f("gamma").clone();
        let dbeta = self.alg.derivation(&beta);
        let dc = self.alg.derivation(&c);
        // The two U(1)-charge eigenparts: -2 b gamma carries j_Gh charge +1,
        // the c beta part charge -1.
        let tau_gh_p = self.mp(&b, -1, &gamma).scale_frac(frac(-2, 1));
        let tau_gh_m =
            self.mp(&c, -1, &dbeta) + self.mp(&dc, -1, &beta).scale_frac(frac(3, 2));
        self.put("tau_Gh+", tau_gh_p.clone());
        self.put("tau_Gh-", tau_gh_m.clone());
        let tau_gh = tau_gh_p + tau_gh_m;
        self.put("tau_Gh", tau_gh.clone());
        self.put("omega_Gh", self.mp(&tau_gh, 0, &tau_gh).scale_frac(frac(1, 2)));
        let mut j_gh = State::zero();
        j_gh = j_gh + osc(DIR_PHI, 1).scale_frac(frac(-3, 1));
        j_gh = j_gh + osc(DIR_SIGMA, 1).scale_frac(frac(2, 1));
        self.put("j_Gh", j_gh);

        // Totals and the number/picture currents.
        self.put("omega", self.f("omega_M").clone() + self.f("omega_Gh").clone());
        self.put("tau", self.f("tau_M").clone() + self.f("tau_Gh").clone());
        self.put("j_N", osc(DIR_SIGMA, 1) - osc(DIR_CHI, 1));
        self.put("j_P", osc(DIR_CHI, 1) - osc(DIR_PHI, 1));

        // BRST current and the total-derivative witness of Q j_BRST = D v.
        let om_m = self.f("omega_M").clone();
        let om_gh = self.f("omega_Gh").clone();
        let tau_m = self.f("tau_M").clone();
        let j_brst = self.mp(&c, -1, &(om_m + om_gh.scale_frac(frac(1, 2))))
            + self.mp(&gamma, -1, &(tau_m.clone() + tau_gh.scale_frac(frac(1, 2))));
        self.put("j_BRST", j_brst);
        let v = self
            .mp(&c, -1, &self.mp(&gamma, -1, &tau_m))
            .scale_frac(frac(1, 4))
            + self
                .mp(
                    &gamma,
                    -1,
                    &self.mp(&gamma, -1, &self.mp(&gamma, -1, &beta)),
                )
                .scale_frac(frac(1, 4))
            - self
                .mp(&gamma, -1, &self.mp(&gamma, -1, &self.mp(&c, -1, &b)))
                .scale_frac(frac(1, 2))
            + self.mp(&c, -3, &c).scale_frac(frac(3, 2))
            + self.mp(&gamma, -2, &gamma).scale_frac(frac(3, 2));
        self.put("v_witness", v);
        self.put("X", self.mp(self.f("j_BRST"), 0, self.f("xi")));

        // Spin fields and the basic physical-state representatives.
        for (a, &mask) in spinor_masks(true).iter().enumerate() {
            let mut mom = spinor_lambda(mask);
            mom.0[DIR_PHI] = -1;
            self.put(&format!("Sd{}", a), e(mom));
        }
        for (a, &mask) in spinor_masks(false).iter().enumerate() {
            let mut mom = spinor_lambda(mask);
            mom.0[DIR_PHI] = -3;
            self.put(&format!("Su{}", a), e(mom));
        }
        for mu in 0..10usize {
            let psi = self.f(&format!("psi{}", mu + 1)).clone();
            let pt = self.mp(&psi, -1, self.f("e_mphi"));
            self.put(&format!("Pt{}", mu + 1), pt.clone());
            self.put(&format!("P{}", mu + 1), -self.mp(&pt, -1, self.f("c")));
        }
        for a in 0..16usize {
            let sd = self.f(&format!("Sd{}", a)).clone();
            self.put(&format!("Qd{}", a), self.mp(&sd, -1, self.f("c")));
            let su = self.f(&format!("Su{}", a)).clone();
            self.put(&format!("Qu{}", a), self.mp(&su, -1, self.f("c")));
        }
    }

    /// Central charge of a conformal vector `w`: twice the vacuum coefficient
    /// of `w_3 w`.
    pub fn central_charge(&self, w: &State) -> Scalar {
        let p = self.alg.mode_product(w, frac(3, 1), w);
        p.coeff(&Monomial::vacuum()).times_frac(frac(2, 1))
    }

    /// Verify the singular part of `a(z) b` against an expected list of
    /// `(pole order, state)` pairs: the coefficient of `z^{-p}` must equal the
    /// given state for each listed pole and vanish for all other `p >= 1`.
    pub fn verify_ope(&self, a: &State, b: &State, expect: &[(i64, State)]) -> OpeReport {
        let lat = &self.alg.lat;
        let ga = grade(lat, a).expect("homogeneous a");
        let gb = grade(lat, b).expect("homogeneous b");
        let off = lat.index_offset(ga.class, gb.class);
        // Bound on n with possibly nonzero product.
        let la = a.max_l0().unwrap();
        let lb = b.max_l0().unwrap();
        let minbg = a.min_target_bg(b).unwrap();
        let nmax = la + lb - Frac::one() - minbg;
        let mut mismatches = Vec::new();
        let mut n = off;
        while n <= nmax {
            if n >= Frac::zero() {
                let got = self.alg.mode_product(a, n, b);
                // Pole order p corresponds to mode n = p - 1.
                let want = expect
                    .iter()
                    .find(|(p, _)| frac(*p, 1) - Frac::one() == n)
                    .map(|(_, s)| s.clone())
                    .unwrap_or_default();
                if got != want {
                    mismatches.push((n, got, want));
                }
            }
            n += Frac::one();
        }
        // Expected poles beyond the bound must be zero states.
        for (p, s) in expect {
            if frac(*p, 1) - Frac::one() > nmax && !s.is_zero() {
                mismatches.push((frac(*p, 1) - Frac::one(), State::zero(), s.clone()));
            }
        }
        OpeReport { ok: mismatches.is_empty(), mismatches }
    }
}

/// Result of an OPE verification.
pub struct OpeReport {
    pub ok: bool,
    /// Triples `(mode n, computed, expected)` for each disagreement.
    pub mismatches: Vec<(Frac, State, State)>,
}

impl std::fmt::Display for OpeReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok {
            return write!(f, "ope ok");
        }
        writeln!(f, "ope mismatches:")?;
        for (n, got, want) in &self.mismatches {
            writeln!(f, "  mode {}: got {}  want {}", n, got, want)?;
        }
        Ok(())
    }
}

/// One entry of the standard OPE table: field names plus the expected
/// singular coefficients, written as `(pole order, state)`.
pub struct OpeEntry {
    pub a: String,
    pub b: String,
    pub expect: Vec<(i64, State)>,
}

/// The standard table of singular operator products of the named fields.
///
/// Poles are listed as `(order, coefficient state)`; omitted orders are
/// asserted to vanish, and pairs listed with an empty expectation assert a
/// completely regular product.
pub fn standard_ope_table(f: &Fields) -> Vec<OpeEntry> {
    let g = |mu: usize| crate::lattice::METRIC[mu];
    let one = |k: i64| State::vacuum().scale_frac(frac(k, 1));
    let d = |s: &State| f.alg.derivation(s);
    let mut t: Vec<OpeEntry> = Vec::new();
    let mut push = |a: &str, b: &str, expect: Vec<(i64, State)>| {
        t.push(OpeEntry { a: a.into(), b: b.into(), expect });
    };

    // Free fields.
    for mu in 0..10usize {
        for nu in 0..10usize {
            let metric = if mu == nu { one(g(mu)) } else { State::zero() };
            push(
                &format!("x{}", mu + 1),
                &format!("x{}", nu + 1),
                vec![(2, metric.clone())],
            );
            push(
                &format!("psi{}", mu + 1),
                &format!("psi{}", nu + 1),
                vec![(1, metric)],
            );
        }
    }
    for i in 1..=5usize {
        for j in 1..=5usize {
            let delta = if i == j { one(1) } else { State::zero() };
            push(&format!("Psi{}", i), &format!("Psi-{}", j), vec![(1, delta)]);
        }
    }

    // Matter N=2 structure.
    let om = f.f("omega_M").clone();
    let jm = f.f("j_M").clone();
    push(
        "omega_M",
        "omega_M",
        vec![(4, one(15).scale_frac(frac(1, 2))), (2, om.scale_frac(frac(2, 1))), (1, d(&om))],
    );
    for name in ["tau_M+", "tau_M-"] {
        let tt = f.f(name).clone();
        push(
            "omega_M",
            name,
            vec![(2, tt.scale_frac(frac(3, 2))), (1, d(&tt))],
        );
        push("j_M", name, vec![(1, if name == "tau_M+" { tt.clone() } else { -tt.clone() })]);
        push(name, name, vec![]);
    }
    push("omega_M", "j_M", vec![(2, jm.clone()), (1, d(&jm))]);
    push("j_M", "j_M", vec![(2, one(5))]);
    push(
        "tau_M+",
        "tau_M-",
        vec![
            (3, one(5)),
            (2, jm.clone()),
            (1, om.clone() + d(&jm).scale_frac(frac(1, 2))),
        ],
    );
    push(
        "tau_M-",
        "tau_M+",
        vec![
            (3, one(5)),
            (2, -jm.clone()),
            (1, om.clone() - d(&jm).scale_frac(frac(1, 2))),
        ],
    );
    push("tau_M", "tau_M", vec![(3, one(10)), (1, om.scale_frac(frac(2, 1)))]);
    for mu in 0..10usize {
        let x = f.f(&format!("x{}", mu + 1)).clone();
        let psi = f.f(&format!("psi{}", mu + 1)).clone();
        push(
            "omega_M",
            &format!("x{}", mu + 1),
            vec![(2, x.clone()), (1, d(&x))],
        );
        push(
            "tau_M",
            &format!("x{}", mu + 1),
            vec![(2, psi.clone()), (1, d(&psi))],
        );
        push("tau_M", &format!("psi{}", mu + 1), vec![(1, x)]);
        push(
            "omega_M",
            &format!("psi{}", mu + 1),
            vec![(2, psi.scale_frac(frac(1, 2))), (1, d(&psi))],
        );
    }

    // Ghost contractions.
    push("c", "b", vec![(1, one(1))]);
    push("b", "c", vec![(1, one(1))]);
    push("gamma", "beta", vec![(1, one(1))]);
    push("beta", "gamma", vec![(1, one(-1))]);
    push("b", "b", vec![]);
    push("c", "c", vec![]);
    push("beta", "beta", vec![]);
    push("gamma", "gamma", vec![]);
    push("b", "gamma", vec![]);
    push("c", "beta", vec![]);
    push("xi", "eta", vec![(1, one(1))]);
    push("eta", "xi", vec![(1, one(1))]);
    push("Dxi", "eta", vec![(2, one(-1))]);
    push("Dxi", "Dxi", vec![]);
    push("eta", "eta", vec![]);

    // Ghost N=2 structure.
    let omg = f.f("omega_Gh").clone();
    let jg = f.f("j_Gh").clone();
    push(
        "omega_Gh",
        "omega_Gh",
        vec![
            (4, one(-15).scale_frac(frac(1, 2))),
            (2, omg.scale_frac(frac(2, 1))),
            (1, d(&omg)),
        ],
    );
    for name in ["tau_Gh+", "tau_Gh-"] {
        let tt = f.f(name).clone();
        push(
            "omega_Gh",
            name,
            vec![(2, tt.scale_frac(frac(3, 2))), (1, d(&tt))],
        );
        push(
            "j_Gh",
            name,
            vec![(1, if name == "tau_Gh+" { tt.clone() } else { -tt.clone() })],
        );
        push(name, name, vec![]);
    }
    push("omega_Gh", "j_Gh", vec![(2, jg.clone()), (1, d(&jg))]);
    push("j_Gh", "j_Gh", vec![(2, one(-5))]);
    push(
        "tau_Gh+",
        "tau_Gh-",
        vec![
            (3, one(-5)),
            (2, jg.clone()),
            (1, omg.clone() + d(&jg).scale_frac(frac(1, 2))),
        ],
    );
    push(
        "tau_Gh-",
        "tau_Gh+",
        vec![
            (3, one(-5)),
            (2, -jg.clone()),
            (1, omg.clone() - d(&jg).scale_frac(frac(1, 2))),
        ],
    );

    // omega_Gh and tau_Gh on the ghost fields.
    let b = f.f("b").clone();
    let c = f.f("c").clone();
    let be = f.f("beta").clone();
    let ga = f.f("gamma").clone();
    push("omega_Gh", "b", vec![(2, b.scale_frac(frac(2, 1))), (1, d(&b))]);
    push("omega_Gh", "c", vec![(2, -c.clone()), (1, d(&c))]);
    push(
        "omega_Gh",
        "beta",
        vec![(2, be.scale_frac(frac(3, 2))), (1, d(&be))],
    );
    push(
        "omega_Gh",
        "gamma",
        vec![(2, ga.scale_frac(frac(-1, 2))), (1, d(&ga))],
    );
    push(
        "tau_Gh",
        "b",
        vec![
            (2, be.scale_frac(frac(-3, 2))),
            (1, d(&be).scale_frac(frac(-1, 2))),
        ],
    );
    push("tau_Gh", "c", vec![(1, ga.scale_frac(frac(-2, 1)))]);
    push("tau_Gh", "beta", vec![(1, b.scale_frac(frac(-2, 1)))]);
    push(
        "tau_Gh",
        "gamma",
        vec![(2, c.clone()), (1, d(&c).scale_frac(frac(-1, 2)))],
    );

    // Mixed matter/ghost products are regular.
    push("omega_M", "b", vec![]);
    push("tau_M", "c", vec![]);
    push("j_M", "j_Gh", vec![]);
    push("tau_M", "tau_Gh", vec![]);
    t
}
