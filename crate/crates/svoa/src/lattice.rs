//! The 18-dimensional rational lattice underlying the algebra, its coset
//! classes, the commutation factor `eta` and the bimultiplicative cocycle
//! `epsilon`.
//!
//! Coordinates are split into three blocks:
//!
//! * `0..=9`   — spacetime block `L_X` of signature (9,1); coordinate 9 is
//!   the timelike direction (metric -1),
//! * `10..=15` — fermionic block: directions `phi^1..phi^5` (metric +1) and
//!   the ghost boson direction `phi` at coordinate 15 (metric -1),
//! * `16..=17` — ghost directions `chi` (metric +1) and `sigma` (metric +1).
//!
//! Vectors are stored with **doubled** integer coordinates so that
//! half-integral entries stay exact in machine integers.

use crate::error::SvoaError;
use crate::scalar::{frac, Frac, Scalar};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Total rank of the lattice.
pub const DIM: usize = 18;
/// Diagonal metric signs per coordinate.
pub const METRIC: [i64; DIM] = [1, 1, 1, 1, 1, 1, 1, 1, 1, -1, 1, 1, 1, 1, 1, -1, 1, 1];
/// Coordinate of the ghost boson `phi`.
pub const DIR_PHI: usize = 15;
/// Coordinate of the ghost fermion boson `chi`.
pub const DIR_CHI: usize = 16;
/// Coordinate of the reparametrization ghost boson `sigma`.
pub const DIR_SIGMA: usize = 17;

/// A lattice vector with doubled integer coordinates: the true coordinate in
/// direction `i` is `self.0[i] / 2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LVec(pub [i32; DIM]);

impl LVec {
    /// The zero vector.
    pub fn zero() -> Self {
        LVec([0; DIM])
    }

    /// Unit vector in direction `i` (true coordinate 1).
    pub fn unit(i: usize) -> Self {
        let mut v = [0; DIM];
        v[i] = 2;
        LVec(v)
    }

    /// `n` times the unit vector in direction `i`.
    pub fn unit_mul(i: usize, n: i32) -> Self {
        let mut v = [0; DIM];
        v[i] = 2 * n;
        LVec(v)
    }

    /// True coordinate in direction `i` as a rational.
    pub fn coord(&self, i: usize) -> Frac {
        frac(self.0[i] as i64, 2)
    }

    /// True if all coordinates vanish.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Indefinite inner product `(self, other)` with the block metric.
    pub fn pair(&self, other: &LVec) -> Frac {
        let mut num: i64 = 0;
        for i in 0..DIM {
            num += METRIC[i] * (self.0[i] as i64) * (other.0[i] as i64);
        }
        frac(num, 4)
    }

    /// Squared norm `(self, self)`.
    pub fn norm(&self) -> Frac {
        self.pair(self)
    }

    /// Restriction to the spacetime block (other coordinates zeroed).
    pub fn x_part(&self) -> LVec {
        let mut v = [0; DIM];
        v[..10].copy_from_slice(&self.0[..10]);
        LVec(v)
    }

    /// True if all coordinates outside the spacetime block vanish.
    pub fn is_x_only(&self) -> bool {
        self.0[10..].iter().all(|&c| c == 0)
    }
}

impl From<[i32; DIM]> for LVec {
    fn from(v: [i32; DIM]) -> Self {
        LVec(v)
    }
}

impl Add for LVec {
    type Output = LVec;
    fn add(self, o: LVec) -> LVec {
        let mut v = self.0;
        for i in 0..DIM {
            v[i] += o.0[i];
        }
        LVec(v)
    }
}

impl Sub for LVec {
    type Output = LVec;
    fn sub(self, o: LVec) -> LVec {
        let mut v = self.0;
        for i in 0..DIM {
            v[i] -= o.0[i];
        }
        LVec(v)
    }
}

impl Neg for LVec {
    type Output = LVec;
    fn neg(self) -> LVec {
        let mut v = self.0;
        for c in &mut v {
            *c = -*c;
        }
        LVec(v)
    }
}

impl Mul<i32> for LVec {
    type Output = LVec;
    fn mul(self, k: i32) -> LVec {
        let mut v = self.0;
        for c in &mut v {
            *c *= k;
        }
        LVec(v)
    }
}

impl fmt::Display for LVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..DIM {
            if i > 0 {
                write!(f, ", ")?;
            }
            if self.0[i] % 2 == 0 {
                write!(f, "{}", self.0[i] / 2)?;
            } else {
                write!(f, "{}/2", self.0[i])?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LVec{}", self)
    }
}

/// The four cosets of the fermionic block lattice modulo its even sublattice,
/// labelled as in the D5xD1 conformal embedding: scalar `O`, vector `V` and
/// the two spinor classes `S`, `C`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum PsiPhiClass {
    O,
    V,
    S,
    C,
}

impl PsiPhiClass {
    fn index(self) -> usize {
        match self {
            PsiPhiClass::O => 0,
            PsiPhiClass::V => 1,
            PsiPhiClass::S => 2,
            PsiPhiClass::C => 3,
        }
    }

    fn from_index(i: usize) -> Self {
        [PsiPhiClass::O, PsiPhiClass::V, PsiPhiClass::S, PsiPhiClass::C][i]
    }
}

/// Coset class of a lattice vector: fermionic class plus the parity of the
/// ghost block `chi + sigma` momentum.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CosetClass {
    pub psiphi: PsiPhiClass,
    /// Parity (0 or 1) of `mu_chi + mu_sigma`.
    pub chisigma: u8,
}

impl CosetClass {
    /// Index in the standard class order
    /// `(O,0),(V,0),(S,0),(C,0),(O,1),(V,1),(S,1),(C,1)`.
    pub fn index(self) -> usize {
        self.psiphi.index() + 4 * self.chisigma as usize
    }

    /// Inverse of [`CosetClass::index`].
    pub fn from_index(i: usize) -> Self {
        CosetClass {
            psiphi: PsiPhiClass::from_index(i % 4),
            chisigma: (i / 4) as u8,
        }
    }

    /// Class of a sum of vectors (the classes form a group `(Z_2)^3`).
    pub fn compose(self, o: CosetClass) -> CosetClass {
        // {O,V,S,C} with O neutral, V+S=C, V+C=S, S+C=V, X+X=O.
        let a = self.psiphi.index();
        let b = o.psiphi.index();
        let p = match (a, b) {
            (x, y) if x == y => 0,
            (0, y) => y,
            (x, 0) => x,
            // Distinct nonzero classes compose to the third nonzero one.
            (x, y) => 6 - x - y,
        };
        CosetClass {
            psiphi: PsiPhiClass::from_index(p),
            chisigma: (self.chisigma + o.chisigma) % 2,
        }
    }

    /// GSO parity: `Some(0)` for the even part `{(O,0),(S,1)}`, `Some(1)` for
    /// the odd part `{(O,1),(S,0)}`, `None` for classes projected out.
    pub fn gso_parity(self) -> Option<u8> {
        match (self.psiphi, self.chisigma) {
            (PsiPhiClass::O, 0) | (PsiPhiClass::S, 1) => Some(0),
            (PsiPhiClass::O, 1) | (PsiPhiClass::S, 0) => Some(1),
            _ => None,
        }
    }

    /// True for Neveu-Schwarz classes (`O` or `V`), false for Ramond.
    pub fn is_ns(self) -> bool {
        matches!(self.psiphi, PsiPhiClass::O | PsiPhiClass::V)
    }

    /// The standard coset representative used for the mode-index offsets.
    pub fn delta(self) -> LVec {
        let mut v = [0i32; DIM];
        match self.psiphi {
            PsiPhiClass::O => {}
            PsiPhiClass::V => v[DIR_PHI] = 2,
            PsiPhiClass::S => {
                for c in v.iter_mut().take(16).skip(10) {
                    *c = 1;
                }
            }
            PsiPhiClass::C => {
                for c in v.iter_mut().take(15).skip(10) {
                    *c = 1;
                }
                v[DIR_PHI] = -1;
            }
        }
        if self.chisigma == 1 {
            v[DIR_SIGMA] = 2;
        }
        LVec(v)
    }
}

/// Result of [`Lattice::structure_maps`]: the commutation factor between two
/// classes and the fractional offset of the allowed mode indices.
#[derive(Clone, Debug)]
pub struct StructureMaps {
    /// `eta(gamma_1, gamma_2)`, equal to `+1` or `-1`.
    pub eta: Scalar,
    /// Offset `Delta` with mode indices in `Z + Delta`; either 0 or 1/2.
    pub delta: Frac,
}

/// Entries of the eta table: `1, -1, y, -y` encoded as `1, -1, 2, -2`.
/// Row index is the **second** argument, column index the **first**.
const ETA_ROWS: [[i8; 8]; 8] = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, -1, 2, -2, -1, 1, -2, 2],
    [1, -2, -1, 2, -1, 2, 1, -2],
    [1, 2, -2, -1, 1, 2, -2, -1],
    [1, -1, -1, 1, -1, 1, 1, -1],
    [1, 1, -2, -2, 1, 1, -2, -2],
    [1, 2, 1, 2, 1, 2, 1, 2],
    [1, -2, 2, -1, -1, 2, -2, 1],
];

/// The lattice together with its discrete structure data: a distinguished
/// basis, the commutation factor on classes and the 2-cocycle `epsilon`.
pub struct Lattice {
    /// Sign choice `y = +1` or `-1` in the eta table.
    pub y: i64,
    /// Ordered basis: 10 spacetime vectors, `phi^1..phi^5`, the half-integral
    /// glue vector `s_6`, `chi`, `sigma`.
    pub basis: [LVec; DIM],
    /// Inverse of the doubled-coordinate basis matrix.
    basis_inv: Vec<Vec<Frac>>,
    /// `eta(class col, class row)` signs after substituting `y`.
    eta_sign: [[i64; 8]; 8],
    /// zeta-exponent (mod 8) of `epsilon(b_i, b_j)` on basis pairs.
    eps_exp: [[i64; DIM]; DIM],
}

impl Lattice {
    /// The standard even unimodular spacetime basis for `II_{9,1}`:
    /// `e_i - e_{i+1}` (i = 1..8), `e_8 + e_9`, and the half-integral glue
    /// vector `(1/2, ..., 1/2; 1/2)`.
    pub fn ii91_basis() -> [LVec; 10] {
        let mut out = [LVec::zero(); 10];
        for (i, v) in out.iter_mut().enumerate().take(8) {
            let mut c = [0; DIM];
            c[i] = 2;
            c[i + 1] = -2;
            *v = LVec(c);
        }
        let mut c = [0; DIM];
        c[7] = 2;
        c[8] = 2;
        out[8] = LVec(c);
        let mut c = [0; DIM];
        for x in c.iter_mut().take(10) {
            *x = 1;
        }
        out[9] = LVec(c);
        out
    }

    /// Build the lattice with the `II_{9,1}` spacetime block.
    pub fn new(y: i64) -> Self {
        Self::with_x_basis(Lattice::ii91_basis(), y).expect("preset basis is valid")
    }

    /// Build the lattice from a custom spacetime basis (doubled coordinates
    /// supported only on the spacetime block).  The basis must span a
    /// non-degenerate even lattice: all norms even, all pairings integral.
    pub fn with_x_basis(xbasis: [LVec; 10], y: i64) -> Result<Self, SvoaError> {
        if y != 1 && y != -1 {
            return Err(SvoaError::Config(format!("y must be +1 or -1, got {y}")));
        }
        for b in &xbasis {
            if !b.is_x_only() {
                return Err(SvoaError::Config(
                    "spacetime basis vectors must be supported on coordinates 0..=9".into(),
                ));
            }
        }
        for a in &xbasis {
            for b in &xbasis {
                let p = a.pair(b);
                if !p.is_integer() {
                    return Err(SvoaError::Config(format!(
                        "non-integral spacetime pairing ({a}, {b}) = {p}"
                    )));
                }
                if std::ptr::eq(a, b) && p.numer() % 2 != 0 {
                    return Err(SvoaError::Config(format!("odd norm {p} for {a}")));
                }
            }
        }
        let mut basis = [LVec::zero(); DIM];
        basis[..10].copy_from_slice(&xbasis);
        for i in 0..5 {
            basis[10 + i] = LVec::unit(10 + i);
        }
        let mut s6 = [0i32; DIM];
        for c in s6.iter_mut().take(16).skip(10) {
            *c = 1;
        }
        basis[15] = LVec(s6);
        basis[16] = LVec::unit(DIR_CHI);
        basis[17] = LVec::unit(DIR_SIGMA);

        let basis_inv = invert_basis(&basis)
            .ok_or_else(|| SvoaError::Config("spacetime basis is degenerate".into()))?;

        // eta table with y substituted.
        let mut eta_sign = [[0i64; 8]; 8];
        for (c2, row) in ETA_ROWS.iter().enumerate() {
            for (c1, &e) in row.iter().enumerate() {
                eta_sign[c1][c2] = match e {
                    1 => 1,
                    -1 => -1,
                    2 => y,
                    -2 => -y,
                    _ => unreachable!(),
                };
            }
        }

        let mut lat = Lattice {
            y,
            basis,
            basis_inv,
            eta_sign,
            eps_exp: [[0; DIM]; DIM],
        };

        // Cocycle on basis pairs: for i <= j take epsilon(b_i, b_j) =
        // (-1)^{(b_i,b_i)/2} on the spacetime diagonal and 1 otherwise; for
        // i > j impose epsilon(b_i, b_j) = B(b_i, b_j) epsilon(b_j, b_i).
        let mut eps = [[0i64; DIM]; DIM];
        for i in 0..DIM {
            for j in i..DIM {
                if i == j && i < 10 {
                    let half_norm = lat.basis[i].norm() / frac(2, 1);
                    debug_assert!(half_norm.is_integer());
                    if half_norm.numer() % 2 != 0 {
                        eps[i][j] = 4;
                    }
                }
            }
        }
        for i in 0..DIM {
            for j in 0..i {
                let b = lat.b_factor_exp(&lat.basis[i], &lat.basis[j]);
                eps[i][j] = (eps[j][i] + b).rem_euclid(8);
            }
        }
        lat.eps_exp = eps;
        Ok(lat)
    }

    /// True if `v` is a lattice point.
    pub fn contains(&self, v: &LVec) -> bool {
        self.basis_coords(v).is_some()
    }

    /// Integer coordinates of `v` on the distinguished basis, if `v` is a
    /// lattice point.
    pub fn basis_coords(&self, v: &LVec) -> Option<[i64; DIM]> {
        let mut out = [0i64; DIM];
        for i in 0..DIM {
            let mut acc = Frac::zero();
            for j in 0..DIM {
                acc += self.basis_inv[i][j] * frac(v.0[j] as i64, 1);
            }
            // basis_inv acts on doubled coordinates.
            if !acc.is_integer() {
                return None;
            }
            out[i] = *acc.numer();
        }
        Some(out)
    }

    /// Coset class of a lattice point.
    pub fn coset_class(&self, v: &LVec) -> Result<CosetClass, SvoaError> {
        if !self.contains(v) {
            return Err(SvoaError::NotInLattice(v.to_string()));
        }
        let f = &v.0[10..16];
        let all_even = f.iter().all(|&c| c % 2 == 0);
        let psiphi = if all_even {
            let s: i32 = f.iter().map(|&c| c / 2).sum();
            if s % 2 == 0 {
                PsiPhiClass::O
            } else {
                PsiPhiClass::V
            }
        } else {
            debug_assert!(f.iter().all(|&c| c % 2 != 0));
            let s: i32 = f.iter().map(|&c| (c - 1) / 2).sum();
            if s % 2 == 0 {
                PsiPhiClass::S
            } else {
                PsiPhiClass::C
            }
        };
        let chisigma = (((v.0[16] / 2) + (v.0[17] / 2)).rem_euclid(2)) as u8;
        Ok(CosetClass { psiphi, chisigma })
    }

    /// Commutation factor `eta(gamma_1, gamma_2)` between two classes.
    pub fn eta(&self, g1: CosetClass, g2: CosetClass) -> Scalar {
        Scalar::from_int(self.eta_sign[g1.index()][g2.index()])
    }

    /// Mode-index offset: vertex operators of class `gamma_1` acting on states
    /// of class `gamma_2` carry mode indices in `Z + delta(gamma_1, gamma_2)`.
    pub fn index_offset(&self, g1: CosetClass, g2: CosetClass) -> Frac {
        let p = g1.delta().pair(&g2.delta());
        let m = -p;
        // Reduce mod 1 into {0, 1/2}.
        let twice = m * frac(2, 1);
        debug_assert!(twice.is_integer());
        frac(twice.numer().rem_euclid(2), 2)
    }

    /// The commutation factor and index offset for a pair of classes.
    pub fn structure_maps(&self, g1: CosetClass, g2: CosetClass) -> StructureMaps {
        StructureMaps {
            eta: self.eta(g1, g2),
            delta: self.index_offset(g1, g2),
        }
    }

    /// zeta-exponent of `B(alpha, beta) = exp(-i pi (alpha,beta))
    /// eta(class alpha, class beta)` for lattice points.
    fn b_factor_exp(&self, a: &LVec, b: &LVec) -> i64 {
        let p = a.pair(b);
        let t = -p * frac(4, 1);
        assert!(t.is_integer(), "non half-integral pairing between lattice points");
        let ga = self.coset_class(a).expect("basis vector in lattice");
        let gb = self.coset_class(b).expect("basis vector in lattice");
        let eta_exp = if self.eta_sign[ga.index()][gb.index()] == 1 { 0 } else { 4 };
        (t.numer() + eta_exp).rem_euclid(8)
    }

    /// `B(alpha, beta)`, the obstruction to symmetry of the cocycle.
    pub fn b_factor(&self, a: &LVec, b: &LVec) -> Result<Scalar, SvoaError> {
        if !self.contains(a) {
            return Err(SvoaError::NotInLattice(a.to_string()));
        }
        if !self.contains(b) {
            return Err(SvoaError::NotInLattice(b.to_string()));
        }
        Ok(Scalar::zeta_pow(self.b_factor_exp(a, b)))
    }

    /// The bimultiplicative 2-cocycle `epsilon(alpha, beta)`.
    pub fn epsilon(&self, a: &LVec, b: &LVec) -> Result<Scalar, SvoaError> {
        let m = self
            .basis_coords(a)
            .ok_or_else(|| SvoaError::NotInLattice(a.to_string()))?;
        let n = self
            .basis_coords(b)
            .ok_or_else(|| SvoaError::NotInLattice(b.to_string()))?;
        let mut exp: i64 = 0;
        for i in 0..DIM {
            if m[i] == 0 {
                continue;
            }
            for j in 0..DIM {
                if n[j] == 0 {
                    continue;
                }
                exp = (exp + m[i].rem_euclid(8) * n[j].rem_euclid(8) % 8 * self.eps_exp[i][j])
                    .rem_euclid(8);
            }
        }
        Ok(Scalar::zeta_pow(exp))
    }
}

/// Invert the doubled-coordinate basis matrix over the rationals.
fn invert_basis(basis: &[LVec; DIM]) -> Option<Vec<Vec<Frac>>> {
    let mut a = vec![vec![Frac::zero(); 2 * DIM]; DIM];
    for (j, b) in basis.iter().enumerate() {
        for i in 0..DIM {
            a[i][j] = frac(b.0[i] as i64, 1);
        }
    }
    for i in 0..DIM {
        a[i][DIM + i] = Frac::one();
    }
    for col in 0..DIM {
        let piv = (col..DIM).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in &mut a[col] {
            *x /= p;
        }
        for r in 0..DIM {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * DIM {
                    let s = f * a[col][c];
                    a[r][c] -= s;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[DIM..].to_vec()).collect())
}
