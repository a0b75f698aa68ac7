//! The Lie superalgebra of physical states.
//!
//! On cohomology classes the product `{u,v} = (-1)^{|u|} (b_0 u)_0 v`
//! induces a bracket; combined with the picture changing operator it makes
//! the physical states in the canonical pictures into a Lie superalgebra.
//! This module implements the bracket, the supersymmetric invariant bilinear
//! form, and exact membership tests for the Lie axioms modulo BRST-exact
//! states.

use crate::brst::{picture_change, q};
use crate::cohomology::{coordinatize, coords, is_exact};
use crate::fields::Fields;
use crate::fock::{grade, State};
use crate::lattice::LVec;
use crate::linalg::Solver;
use crate::scalar::{frac, Frac, Scalar};
use crate::smallspace::{enumerate_sector, pairing_c};
use crate::SvoaError;

/// Parity of a homogeneous state in the GSO-projected vertex superalgebra
/// (`0` for the even part, `1` for the odd part).  The parity as an element
/// of the Lie superalgebra of physical states is the opposite.
pub fn parity(f: &Fields, u: &State) -> Result<u8, SvoaError> {
    let g = grade(&f.alg.lat, u)?;
    g.gso.ok_or_else(|| {
        SvoaError::Inhomogeneous("state does not survive the GSO projection".into())
    })
}

/// The product `{u,v} = (-1)^{|u|} (b_0 u)_0 v` that descends to cohomology.
pub fn half_bracket(f: &Fields, u: &State, v: &State) -> Result<State, SvoaError> {
    if u.is_zero() || v.is_zero() {
        return Ok(State::zero());
    }
    let sign = if parity(f, u)? == 0 { frac(1, 1) } else { frac(-1, 1) };
    let bu = f.alg.mode_product(f.f("b"), frac(0, 1), u);
    Ok(f.alg.mode_product(&bu, frac(0, 1), v).scale_frac(sign))
}

/// The Lie bracket on the physical states in the canonical pictures:
/// `[u,v] = X_{-1}{u,v}` if `u` or `v` is even in the Lie superalgebra
/// (odd in the vertex superalgebra), and `[u,v] = {u,v}` if both are odd.
pub fn lie_bracket(f: &Fields, u: &State, v: &State) -> Result<State, SvoaError> {
    if u.is_zero() || v.is_zero() {
        return Ok(State::zero());
    }
    let hb = half_bracket(f, u, v)?;
    if parity(f, u)? == 1 || parity(f, v)? == 1 {
        Ok(picture_change(f, &hb))
    } else {
        Ok(hb)
    }
}

/// Solve `X_{-1} w = u` modulo the image of `Q`, with `w` in
/// `C(alpha)_{p-1, n}` and `u` in `C(alpha)_{p, n}`.  Returns `None` when no
/// preimage exists (for example at zero momentum in the -1/2 picture).
pub fn x_preimage(
    f: &Fields,
    alpha: &LVec,
    p: Frac,
    n: i64,
    u: &State,
) -> Result<Option<State>, SvoaError> {
    if u.is_zero() {
        return Ok(Some(State::zero()));
    }
    let source = enumerate_sector(f, alpha, p - frac(1, 1), frac(n, 1))?;
    let below = enumerate_sector(f, alpha, p, frac(n - 1, 1))?;
    let ximgs: Vec<State> = source.basis.iter().map(|w| picture_change(f, w)).collect();
    let qimgs: Vec<State> = below.basis.iter().map(|w| q(f, w)).collect();
    let index = coordinatize(ximgs.iter().chain(qimgs.iter()).chain(std::iter::once(u)));
    let dim = index.len();
    let cols: Vec<Vec<Scalar>> = ximgs
        .iter()
        .chain(qimgs.iter())
        .map(|s| coords(s, &index))
        .collect();
    let solver = Solver::from_columns(&cols, dim);
    let Some(x) = solver.solve(&coords(u, &index)) else {
        return Ok(None);
    };
    let mut w = State::zero();
    for (j, c) in x.iter().take(source.dim()).enumerate() {
        if !c.is_zero() {
            w = w + source.basis[j].scale(c);
        }
    }
    Ok(Some(w))
}

/// The invariant supersymmetric bilinear form on the physical states:
/// `(u,v)_C` for two even elements (picture -1), and `-(w,v)_C` with
/// `X_{-1} w = u` for two odd elements (picture -1/2); zero for mixed
/// parities.
pub fn form(f: &Fields, alpha: &LVec, u: &State, v: &State) -> Result<Scalar, SvoaError> {
    if u.is_zero() || v.is_zero() {
        return Ok(Scalar::zero());
    }
    let pu = parity(f, u)?;
    if pu != parity(f, v)? {
        return Ok(Scalar::zero());
    }
    if pu == 1 {
        // Both even in the Lie superalgebra: the twisted small-algebra form.
        pairing_c(f, u, v)
    } else {
        let w = x_preimage(f, alpha, frac(-1, 2), 1, u)?.ok_or_else(|| {
            SvoaError::Infeasible("no picture -3/2 preimage for odd element".into())
        })?;
        Ok(-pairing_c(f, &w, v)?)
    }
}

/// Test that a `Q`-closed state of ghost number 1 is `Q`-exact, raising the
/// picture to the canonical one first when the momentum is nonzero (picture
/// changing is an isomorphism on cohomology there, and the canonical sectors
/// are the small ones).
pub fn is_exact_canonical(
    f: &Fields,
    alpha: &LVec,
    p: Frac,
    n: i64,
    v: &State,
) -> Result<bool, SvoaError> {
    if v.is_zero() {
        return Ok(true);
    }
    if alpha.is_zero() {
        return is_exact(f, alpha, p, n, v);
    }
    let canonical = if p.is_integer() { frac(-1, 1) } else { frac(-1, 2) };
    let mut w = v.clone();
    let mut pic = p;
    while pic < canonical {
        w = picture_change(f, &w);
        pic += frac(1, 1);
        if w.is_zero() {
            return Ok(true);
        }
    }
    is_exact(f, alpha, pic, n, &w)
}

/// Report for one antisymmetry check `{u,v} + (-1)^{(|u|+1)(|v|+1)} {v,u}`.
pub fn antisymmetry_defect(f: &Fields, u: &State, v: &State) -> Result<State, SvoaError> {
    let uv = half_bracket(f, u, v)?;
    let vu = half_bracket(f, v, u)?;
    let sign = (parity(f, u)? as i64 + 1) * (parity(f, v)? as i64 + 1);
    let vu = if sign % 2 == 0 { vu } else { -vu };
    Ok(uv + vu)
}

/// The cyclic Jacobi sum
/// `(-1)^{(|u|+1)(|w|+1)} {u,{v,w}} + (-1)^{(|v|+1)(|u|+1)} {v,{w,u}}
///  + (-1)^{(|w|+1)(|v|+1)} {w,{u,v}}`.
pub fn jacobi_defect(
    f: &Fields,
    u: &State,
    v: &State,
    w: &State,
) -> Result<State, SvoaError> {
    let pu = parity(f, u)? as i64 + 1;
    let pv = parity(f, v)? as i64 + 1;
    let pw = parity(f, w)? as i64 + 1;
    let sgn = |e: i64| if e % 2 == 0 { frac(1, 1) } else { frac(-1, 1) };
    let t1 = half_bracket(f, u, &half_bracket(f, v, w)?)?.scale_frac(sgn(pu * pw));
    let t2 = half_bracket(f, v, &half_bracket(f, w, u)?)?.scale_frac(sgn(pv * pu));
    let t3 = half_bracket(f, w, &half_bracket(f, u, v)?)?.scale_frac(sgn(pw * pv));
    Ok(t1 + t2 + t3)
}
