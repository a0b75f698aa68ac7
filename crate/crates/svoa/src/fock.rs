//! States of the lattice Fock space: monomials in Heisenberg creation
//! operators applied to momentum vectors, with exact scalar coefficients.
//!
//! A monomial is `e^mu h_{d_1}(-n_1) ... h_{d_k}(-n_k)` with `mu` a lattice
//! vector, `d_i` coordinate directions and `n_i >= 1` mode numbers.  All 18
//! directions carry ordinary (bosonic) oscillators; fermionic statistics enter
//! only through the lattice vertex operators.  States are finite linear
//! combinations of monomials over Q(zeta_8), stored in a sorted map so that
//! iteration order — and hence every downstream computation — is
//! deterministic.

use crate::lattice::{CosetClass, LVec, Lattice, DIM, DIR_CHI, DIR_PHI, DIR_SIGMA, METRIC};
use crate::scalar::{frac, Frac, Scalar};
use crate::SvoaError;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Human-readable direction names used in displays.
pub fn dir_name(d: u8) -> String {
    match d {
        0..=9 => format!("x{}", d + 1),
        10..=14 => format!("f{}", d - 9),
        15 => "phi".into(),
        16 => "chi".into(),
        17 => "sigma".into(),
        _ => format!("d{}", d),
    }
}

/// A single Fock monomial: momentum plus a sorted oscillator multiset.
///
/// The oscillator list stores `(direction, mode, multiplicity)` for the
/// creation operator `h_direction(-mode)^multiplicity`, sorted by
/// `(direction, mode)` with no duplicate keys and positive entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub mom: LVec,
    pub osc: Vec<(u8, u32, u32)>,
}

impl Monomial {
    /// The vacuum monomial `e^0`.
    pub fn vacuum() -> Self {
        Monomial { mom: LVec::zero(), osc: Vec::new() }
    }

    /// The pure momentum state `e^mu`.
    pub fn momentum(mu: LVec) -> Self {
        Monomial { mom: mu, osc: Vec::new() }
    }

    /// Build from an arbitrary oscillator list (merged and sorted).
    pub fn with_osc(mu: LVec, osc: impl IntoIterator<Item = (u8, u32, u32)>) -> Self {
        let mut m = Monomial::momentum(mu);
        for (d, n, k) in osc {
            for _ in 0..k {
                m.push(d, n);
            }
        }
        m
    }

    /// Multiply by one creation operator `h_d(-n)`.
    pub fn push(&mut self, d: u8, n: u32) {
        assert!(n >= 1, "creation mode must be >= 1");
        match self.osc.binary_search_by_key(&(d, n), |&(dd, nn, _)| (dd, nn)) {
            Ok(i) => self.osc[i].2 += 1,
            Err(i) => self.osc.insert(i, (d, n, 1)),
        }
    }

    /// Multiplicity of `h_d(-n)`.
    pub fn count(&self, d: u8, n: u32) -> u32 {
        self.osc
            .binary_search_by_key(&(d, n), |&(dd, nn, _)| (dd, nn))
            .map(|i| self.osc[i].2)
            .unwrap_or(0)
    }

    /// Remove one factor `h_d(-n)`; `None` if absent.
    pub fn remove_one(&self, d: u8, n: u32) -> Option<Monomial> {
        let i = self
            .osc
            .binary_search_by_key(&(d, n), |&(dd, nn, _)| (dd, nn))
            .ok()?;
        let mut m = self.clone();
        if m.osc[i].2 == 1 {
            m.osc.remove(i);
        } else {
            m.osc[i].2 -= 1;
        }
        Some(m)
    }

    /// Total oscillator degree (the oscillator contribution to `L_0`).
    pub fn degree(&self) -> i64 {
        self.osc.iter().map(|&(_, n, k)| n as i64 * k as i64).sum()
    }

    /// Conformal weight `L_0` of the monomial.
    pub fn l0(&self) -> Frac {
        frac(self.degree(), 1) + bg_l0(&self.mom)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.mom)?;
        for &(d, n, k) in &self.osc {
            write!(f, " {}(-{})", dir_name(d), n)?;
            if k > 1 {
                write!(f, "^{}", k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial[{}]", self)
    }
}

/// `L_0` eigenvalue of the bare momentum state `e^mu`: the norm term plus the
/// background-charge shifts of the three ghost directions.
pub fn bg_l0(mu: &LVec) -> Frac {
    mu.norm() / frac(2, 1) - mu.coord(DIR_PHI) - mu.coord(DIR_CHI) / frac(2, 1)
        - mu.coord(DIR_SIGMA) * frac(3, 2)
}

/// Ghost number of the bare momentum state `e^mu`.
pub fn ghost_number(mu: &LVec) -> Frac {
    -mu.coord(DIR_CHI) + mu.coord(DIR_SIGMA)
}

/// Picture of the bare momentum state `e^mu`.
pub fn picture(mu: &LVec) -> Frac {
    mu.coord(DIR_PHI) + mu.coord(DIR_CHI)
}

/// A state: a finite linear combination of monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct State {
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl State {
    /// The zero state.
    pub fn zero() -> Self {
        State { terms: BTreeMap::new() }
    }

    /// The vacuum state `1 = e^0`.
    pub fn vacuum() -> Self {
        State::from_mono(Monomial::vacuum())
    }

    /// A single monomial with coefficient 1.
    pub fn from_mono(m: Monomial) -> Self {
        let mut s = State::zero();
        s.terms.insert(m, Scalar::one());
        s
    }

    /// The pure momentum state `e^mu`.
    pub fn momentum(mu: LVec) -> Self {
        State::from_mono(Monomial::momentum(mu))
    }

    /// Add `c * m` to the state, pruning zeros.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// True if there are no terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &Scalar) -> State {
        if c.is_zero() {
            return State::zero();
        }
        let mut out = State::zero();
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), c * v);
        }
        out
    }

    /// Multiply by a small rational.
    pub fn scale_frac(&self, f: Frac) -> State {
        self.scale(&Scalar::from_frac(f))
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Apply a monomial-wise linear map.
    pub fn map_terms(&self, mut f: impl FnMut(&Monomial) -> State) -> State {
        let mut out = State::zero();
        for (m, c) in &self.terms {
            for (m2, c2) in f(m).terms {
                out.add_term(m2, c * &c2);
            }
        }
        out
    }

    /// Largest `L_0` among the monomials (`None` for the zero state).
    pub fn max_l0(&self) -> Option<Frac> {
        self.terms.keys().map(|m| m.l0()).max()
    }

    /// Smallest possible `L_0` of `e^{mu_a + mu_b}`-based monomials over all
    /// pairs of momenta from `self` and `other`; used for support bounds.
    pub fn min_target_bg(&self, other: &State) -> Option<Frac> {
        let mut best: Option<Frac> = None;
        for a in self.terms.keys() {
            for b in other.terms.keys() {
                let v = bg_l0(&(a.mom + b.mom));
                best = Some(match best {
                    None => v,
                    Some(x) => x.min(v),
                });
            }
        }
        best
    }
}

impl Add for State {
    type Output = State;
    fn add(mut self, rhs: State) -> State {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Add<&'a State> for State {
    type Output = State;
    fn add(mut self, rhs: &'a State) -> State {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl Sub for State {
    type Output = State;
    fn sub(mut self, rhs: State) -> State {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for State {
    type Output = State;
    fn neg(self) -> State {
        let mut out = State::zero();
        for (m, c) in self.terms {
            out.terms.insert(m, -c);
        }
        out
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) {}", c, m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State[{}]", self)
    }
}

/// Homogeneous grading data of a state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub l0: Frac,
    pub ghost: Frac,
    pub picture: Frac,
    pub class: CosetClass,
    /// GSO parity of the class, if the class survives the projection.
    pub gso: Option<u8>,
}

/// Compute the grading of a homogeneous state; errors if the state is zero or
/// mixes `L_0`, ghost number, picture or coset class.
pub fn grade(lat: &Lattice, v: &State) -> Result<Grading, SvoaError> {
    let mut it = v.terms.keys();
    let first = it
        .next()
        .ok_or_else(|| SvoaError::Inhomogeneous("zero state has no grading".into()))?;
    let g = Grading {
        l0: first.l0(),
        ghost: ghost_number(&first.mom),
        picture: picture(&first.mom),
        class: lat.coset_class(&first.mom)?,
        gso: lat.coset_class(&first.mom)?.gso_parity(),
    };
    for m in it {
        let cls = lat.coset_class(&m.mom)?;
        if m.l0() != g.l0
            || ghost_number(&m.mom) != g.ghost
            || picture(&m.mom) != g.picture
            || cls != g.class
        {
            return Err(SvoaError::Inhomogeneous(format!(
                "monomials {} and {} have different gradings",
                first, m
            )));
        }
    }
    Ok(g)
}

/// Multiply a state by the creation operator `h_d(-n)`, `n >= 1`.
pub fn create(d: u8, n: u32, v: &State) -> State {
    v.map_terms(|m| {
        let mut m2 = m.clone();
        m2.push(d, n);
        State::from_mono(m2)
    })
}

/// Apply the annihilation operator `h_d(n)`, `n >= 1`, to a state.
pub fn annihilate(d: u8, n: u32, v: &State) -> State {
    let g = METRIC[d as usize];
    v.map_terms(|m| {
        let k = m.count(d, n);
        if k == 0 {
            return State::zero();
        }
        let m2 = m.remove_one(d, n).unwrap();
        let mut s = State::from_mono(m2);
        s = s.scale_frac(frac(k as i64 * n as i64 * g, 1));
        s
    })
}

/// Apply the zero mode `h_d(0)` (eigenvalue `(e_d, mu)`).
pub fn zero_mode(d: u8, v: &State) -> State {
    let g = METRIC[d as usize];
    v.map_terms(|m| State::from_mono(m.clone()).scale_frac(m.mom.coord(d as usize) * frac(g, 1)))
}

/// Apply the Heisenberg mode `h(n)` for the direction vector `h` (a lattice
/// point, possibly scaled), for any integer `n`.
pub fn heis_apply(h: &LVec, n: i64, v: &State) -> State {
    let mut out = State::zero();
    if n < 0 {
        for d in 0..DIM {
            let c = h.coord(d);
            if c.is_zero() {
                continue;
            }
            out = out + create(d as u8, (-n) as u32, v).scale_frac(c);
        }
    } else if n == 0 {
        for d in 0..DIM {
            let c = h.coord(d);
            if c.is_zero() {
                continue;
            }
            out = out + zero_mode(d as u8, v).scale_frac(c);
        }
    } else {
        for d in 0..DIM {
            let c = h.coord(d);
            if c.is_zero() {
                continue;
            }
            out = out + annihilate(d as u8, n as u32, v).scale_frac(c);
        }
    }
    out
}

/// Partitions of `d` as `(part, multiplicity)` lists with parts descending.
pub fn partitions(d: u32) -> Vec<Vec<(u32, u32)>> {
    fn rec(d: u32, maxpart: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if d == 0 {
            out.push(acc.clone());
            return;
        }
        let top = maxpart.min(d);
        for part in (1..=top).rev() {
            let maxk = d / part;
            for k in 1..=maxk {
                acc.push((part, k));
                rec(d - part * k, part - 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    rec(d, d, &mut acc, &mut out);
    out
}

/// All oscillator multisets over the given directions with total degree
/// `degree`, in a deterministic order.
pub fn osc_monomials(dirs: &[u8], degree: u32) -> Vec<Vec<(u8, u32, u32)>> {
    fn rec(dirs: &[u8], degree: u32, acc: &mut Vec<(u8, u32, u32)>, out: &mut Vec<Vec<(u8, u32, u32)>>) {
        if dirs.is_empty() {
            if degree == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let d = dirs[0];
        for take in 0..=degree {
            for p in partitions(take) {
                let len0 = acc.len();
                for (n, k) in p {
                    acc.push((d, n, k));
                }
                rec(&dirs[1..], degree - take, acc, out);
                acc.truncate(len0);
            }
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    rec(dirs, degree, &mut acc, &mut out);
    out
}
