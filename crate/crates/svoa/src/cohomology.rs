//! BRST cohomology of the small-algebra sectors, gamma matrices from spin
//! field products, and the picture changing isomorphism.
//!
//! For fixed spacetime momentum `alpha` and ghost picture `p` the spaces
//! `C(alpha)_{p,n}` form a complex under `Q`.  All dimensions here are
//! computed exactly: `dim H_n = dim C_n - rank Q|_{C_n} - rank Q|_{C_{n-1}}`.

use crate::brst::q;
use crate::fields::{spinor_masks, Fields};
use crate::fock::{Monomial, State};
use crate::lattice::{LVec, DIM, DIR_PHI};
use crate::linalg::{nullspace, RankAccumulator};
use crate::scalar::{frac, Frac, Scalar};
use crate::smallspace::{enumerate_sector, Sector};
use crate::SvoaError;
use std::collections::BTreeMap;

/// Index a family of states by their joint monomial support.
pub fn coordinatize<'a, I: IntoIterator<Item = &'a State>>(
    states: I,
) -> BTreeMap<Monomial, usize> {
    let mut index = BTreeMap::new();
    for s in states {
        for m in s.terms.keys() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    index
}

/// Coordinate vector of a state with respect to a monomial index; monomials
/// outside the index must not occur.
pub fn coords(state: &State, index: &BTreeMap<Monomial, usize>) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); index.len()];
    for (m, c) in &state.terms {
        v[*index.get(m).expect("monomial in index")] = c.clone();
    }
    v
}

/// Rank of `Q` restricted to a sector.
pub fn q_rank(f: &Fields, sec: &Sector) -> usize {
    let images: Vec<State> = sec.basis.iter().map(|v| q(f, v)).collect();
    let index = coordinatize(images.iter());
    let mut acc = RankAccumulator::new();
    for img in &images {
        if !img.is_zero() {
            acc.insert(coords(img, &index));
        }
    }
    acc.rank()
}

/// Dimensions of a stretch of the complex `C(alpha)_{p,*}` together with the
/// ranks of the differentials, for ghost numbers `n_lo ..= n_hi`.
pub struct ComplexSlice {
    pub n_lo: i64,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
}

impl ComplexSlice {
    /// `dim H_n` for `n` inside the slice; the slice must extend one step
    /// below `n` (or the sector below must be empty).
    pub fn h_dim(&self, n: i64) -> usize {
        let i = (n - self.n_lo) as usize;
        let below = if i == 0 { 0 } else { self.ranks[i - 1] };
        self.dims[i] - self.ranks[i] - below
    }

    /// The Euler characteristic `sum (-1)^n dim C_n` of the slice.
    pub fn euler(&self) -> i64 {
        let mut e = 0i64;
        for (i, &d) in self.dims.iter().enumerate() {
            let n = self.n_lo + i as i64;
            e += if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) };
        }
        e
    }
}

/// Enumerate the complex for ghost numbers `n_lo ..= n_hi` and compute all
/// differential ranks.
pub fn complex_slice(
    f: &Fields,
    alpha: &LVec,
    p: Frac,
    n_lo: i64,
    n_hi: i64,
) -> Result<ComplexSlice, SvoaError> {
    let mut dims = Vec::new();
    let mut ranks = Vec::new();
    for n in n_lo..=n_hi {
        let sec = enumerate_sector(f, alpha, p, frac(n, 1))?;
        ranks.push(q_rank(f, &sec));
        dims.push(sec.dim());
    }
    Ok(ComplexSlice { n_lo, dims, ranks })
}

/// `dim H(alpha)_{p,n}`.
pub fn cohomology_dim(f: &Fields, alpha: &LVec, p: Frac, n: i64) -> Result<usize, SvoaError> {
    let s = complex_slice(f, alpha, p, n - 1, n)?;
    Ok(s.h_dim(n))
}

/// Representatives of `H(alpha)_{p,n}`: kernel vectors of `Q` on
/// `C(alpha)_{p,n}` that are independent modulo the image of the previous
/// differential.
pub fn representatives(
    f: &Fields,
    alpha: &LVec,
    p: Frac,
    n: i64,
) -> Result<Vec<State>, SvoaError> {
    let below = enumerate_sector(f, alpha, p, frac(n - 1, 1))?;
    let sec = enumerate_sector(f, alpha, p, frac(n, 1))?;
    if sec.dim() == 0 {
        return Ok(Vec::new());
    }
    // Kernel of Q on the sector.
    let images: Vec<State> = sec.basis.iter().map(|v| q(f, v)).collect();
    let index = coordinatize(images.iter());
    let mut mat = vec![vec![Scalar::zero(); sec.dim()]; index.len()];
    for (j, img) in images.iter().enumerate() {
        for (m, c) in &img.terms {
            mat[index[m]][j] = c.clone();
        }
    }
    let kernel = nullspace(mat, sec.dim());
    // Image of the previous differential, in the sector's own coordinates.
    let sec_index = coordinatize(sec.basis.iter());
    let mut span = RankAccumulator::new();
    for u in &below.basis {
        let qu = q(f, u);
        if !qu.is_zero() {
            span.insert(coords(&qu, &sec_index));
        }
    }
    let mut reps = Vec::new();
    for kv in kernel {
        let mut st = State::zero();
        for (j, c) in kv.iter().enumerate() {
            if !c.is_zero() {
                st = st + sec.basis[j].scale(c);
            }
        }
        if span.insert(coords(&st, &sec_index)) {
            reps.push(st);
        }
    }
    Ok(reps)
}

/// Test whether a state lies in the image of `Q` on the sector one ghost
/// number below it.
pub fn is_exact(f: &Fields, alpha: &LVec, p: Frac, n: i64, v: &State) -> Result<bool, SvoaError> {
    if v.is_zero() {
        return Ok(true);
    }
    let below = enumerate_sector(f, alpha, p, frac(n - 1, 1))?;
    let images: Vec<State> = below.basis.iter().map(|u| q(f, u)).collect();
    let index = coordinatize(images.iter().chain(std::iter::once(v)));
    let mut span = RankAccumulator::new();
    for img in &images {
        if !img.is_zero() {
            span.insert(coords(img, &index));
        }
    }
    Ok(span.contains(coords(v, &index)))
}

/// The 32x32 Weyl-basis gamma matrices and charge conjugation matrix built
/// from spin field products.  Rows and columns are indexed by the 16 dotted
/// spinor labels followed by the 16 undotted ones.
pub struct GammaData {
    pub gamma: Vec<Vec<Vec<Scalar>>>,
    pub conj: Vec<Vec<Scalar>>,
}

/// Extract gamma and charge conjugation matrices:
/// `(psi^mu_{-1} e^{-phi})(z) S^alphadot = 1/sqrt2 Gamma^{mu alphadot}_beta
/// S^beta z^{-1} + ...`,
/// `(psi^mu_{-1} e^{phi})(z) S^alpha = 1/sqrt2 Gamma^{mu alpha}_betadot
/// S^betadot z + ...`, and
/// `S^alpha(z) S^betadot = C^{alpha betadot} e^{-2 phi} z^{-2} + ...`.
pub fn gamma_matrices(f: &Fields) -> GammaData {
    let sqrt2 = Scalar::sqrt2();
    let dotted = spinor_masks(true);
    let undotted = spinor_masks(false);
    let dot_index: BTreeMap<u32, usize> = dotted.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let undot_index: BTreeMap<u32, usize> =
        undotted.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    // Momentum -> spinor column: strip the phi component.
    let spinor_col = |mom: &LVec| -> usize {
        let mut mask = 0u32;
        for i in 0..5 {
            if mom.0[10 + i] < 0 {
                mask |= 1 << i;
            }
        }
        if mask.count_ones() % 2 == 1 {
            dot_index[&mask]
        } else {
            16 + undot_index[&mask]
        }
    };
    let mut gamma = vec![vec![vec![Scalar::zero(); 32]; 32]; 10];
    for mu in 0..10usize {
        let pt = f.f(&format!("Pt{}", mu + 1)).clone();
        let up = f
            .alg
            .mode_product(f.f(&format!("psi{}", mu + 1)), frac(-1, 1), f.f("e_phi"));
        for (a, _) in dotted.iter().enumerate() {
            let img = f.alg.mode_product(&pt, frac(0, 1), f.f(&format!("Sd{}", a)));
            for (m, c) in &img.terms {
                assert!(m.osc.is_empty(), "spin field image is momentum-only");
                gamma[mu][a][spinor_col(&m.mom)] = c * &sqrt2;
            }
        }
        for (a, _) in undotted.iter().enumerate() {
            let img = f.alg.mode_product(&up, frac(-2, 1), f.f(&format!("Su{}", a)));
            for (m, c) in &img.terms {
                assert!(m.osc.is_empty());
                gamma[mu][16 + a][spinor_col(&m.mom)] = c * &sqrt2;
            }
        }
    }
    // Charge conjugation from the order-2 pole of S^alpha(z) S^betadot and
    // S^alphadot(z) S^beta.
    let mut conj = vec![vec![Scalar::zero(); 32]; 32];
    let mut e2 = [0i32; DIM];
    e2[DIR_PHI] = -4;
    let target = Monomial::momentum(LVec(e2));
    for (a, _) in undotted.iter().enumerate() {
        for (b, _) in dotted.iter().enumerate() {
            let su = f.f(&format!("Su{}", a));
            let sd = f.f(&format!("Sd{}", b));
            conj[16 + a][b] = f.alg.mode_product(su, frac(1, 1), sd).coeff(&target);
            conj[b][16 + a] = f.alg.mode_product(sd, frac(1, 1), su).coeff(&target);
        }
    }
    GammaData { gamma, conj }
}

/// Matrix product helper for the gamma matrix checks.
pub fn matmul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![Scalar::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}
