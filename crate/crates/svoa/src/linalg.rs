//! Exact dense linear algebra over Q(zeta_8).
//!
//! Everything downstream (cohomology dimensions, representatives, exactness
//! tests, bilinear form matrices) reduces to ranks, nullspaces and linear
//! solves of moderately sized matrices with [`Scalar`] entries.  Gaussian
//! elimination with exact arithmetic is used throughout; rows are dense
//! vectors but all inner loops skip zero entries, which keeps the very sparse
//! boundary-operator matrices fast.

use crate::scalar::Scalar;

/// Reduce `mat` (a list of row vectors, all of length `ncols`) to reduced row
/// echelon form in place; returns the pivot column indices.
pub fn rref(mat: &mut [Vec<Scalar>]) -> Vec<usize> {
    let nrows = mat.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = mat[0].len();
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let inv = mat[row][col].inv().expect("pivot nonzero");
        for c in col..ncols {
            if !mat[row][c].is_zero() {
                mat[row][c] = &mat[row][c] * &inv;
            }
        }
        for r in 0..nrows {
            if r != row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..ncols {
                    if !mat[row][c].is_zero() {
                        let sub = &f * &mat[row][c];
                        mat[r][c] -= sub;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of a matrix given as rows.
pub fn rank(mut mat: Vec<Vec<Scalar>>) -> usize {
    rref(&mut mat).len()
}

/// Basis of the right nullspace of the matrix (rows of length `ncols`):
/// vectors `x` with `mat . x = 0`.
pub fn nullspace(mut mat: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    let pivots = rref(&mut mat);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -mat[r][free].clone();
        }
        out.push(v);
    }
    out
}

/// Incremental row-space accumulator: maintains an echelonized basis of the
/// span of inserted vectors, supporting rank queries and membership tests.
#[derive(Clone, Default)]
pub struct RankAccumulator {
    /// Echelon rows, each normalized to a leading 1; parallel pivot columns.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RankAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Current rank.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the accumulated rows.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for (c, rv) in row.iter().enumerate() {
                    if !rv.is_zero() {
                        let sub = &f * rv;
                        v[c] -= sub;
                    }
                }
            }
        }
        v
    }

    /// True if `v` lies in the accumulated span.
    pub fn contains(&self, v: Vec<Scalar>) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert `v`; returns `true` if it was independent (rank grew).
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inv().expect("nonzero");
        let mut row: Vec<Scalar> = v
            .into_iter()
            .map(|x| if x.is_zero() { x } else { &x * &inv })
            .collect();
        // Back-substitute into existing rows to keep reduction cheap.
        for r in 0..self.rows.len() {
            let f = self.rows[r][pc].clone();
            if !f.is_zero() {
                for c in 0..row.len() {
                    if !row[c].is_zero() {
                        let sub = &f * &row[c];
                        self.rows[r][c] -= sub;
                    }
                }
            }
        }
        // Keep rows ordered by pivot column.
        let at = self.pivots.iter().position(|&p| p > pc).unwrap_or(self.pivots.len());
        self.pivots.insert(at, pc);
        self.rows.insert(at, std::mem::take(&mut row));
        true
    }
}

/// Precomputed elimination data for solving `A x = b` repeatedly, with `A`
/// given by its columns.
pub struct Solver {
    /// RREF of `A`.
    r: Vec<Vec<Scalar>>,
    /// Transform with `r = t . A`.
    t: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    ncols: usize,
}

impl Solver {
    /// Build from columns of length `dim`.
    pub fn from_columns(cols: &[Vec<Scalar>], dim: usize) -> Self {
        let ncols = cols.len();
        // Augment A with the identity: eliminate rows of [A | I].
        let mut aug: Vec<Vec<Scalar>> = (0..dim)
            .map(|i| {
                let mut row: Vec<Scalar> = cols.iter().map(|c| c[i].clone()).collect();
                row.extend((0..dim).map(|j| {
                    if i == j {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }));
                row
            })
            .collect();
        // Eliminate only on the first `ncols` columns.
        let nrows = dim;
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..ncols {
            if row >= nrows {
                break;
            }
            let Some(p) = (row..nrows).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(row, p);
            let inv = aug[row][col].inv().expect("pivot nonzero");
            for c in 0..ncols + dim {
                if !aug[row][c].is_zero() {
                    aug[row][c] = &aug[row][c] * &inv;
                }
            }
            for r in 0..nrows {
                if r != row && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in 0..ncols + dim {
                        if !aug[row][c].is_zero() {
                            let sub = &f * &aug[row][c];
                            aug[r][c] -= sub;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let mut r_mat = Vec::with_capacity(dim);
        let mut t_mat = Vec::with_capacity(dim);
        for mut rrow in aug {
            let tail = rrow.split_off(ncols);
            r_mat.push(rrow);
            t_mat.push(tail);
        }
        Solver { r: r_mat, t: t_mat, pivots, ncols }
    }

    /// Rank of `A`.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A particular solution of `A x = b` (free variables set to zero), or
    /// `None` if `b` is outside the column space.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let dim = self.t.len();
        assert_eq!(b.len(), dim);
        let c: Vec<Scalar> = self
            .t
            .iter()
            .map(|trow| {
                let mut acc = Scalar::zero();
                for (j, tv) in trow.iter().enumerate() {
                    if !tv.is_zero() && !b[j].is_zero() {
                        acc += tv * &b[j];
                    }
                }
                acc
            })
            .collect();
        // Rows beyond the rank must have zero right-hand side.
        for (i, ci) in c.iter().enumerate() {
            if i >= self.pivots.len() && !ci.is_zero() {
                return None;
            }
        }
        let mut x = vec![Scalar::zero(); self.ncols];
        for (i, &pc) in self.pivots.iter().enumerate() {
            // RREF rows may still involve free columns; with free vars at 0
            // the pivot value is just c[i] minus nothing.
            x[pc] = c[i].clone();
        }
        // Verify (guards against free-column contributions).
        let mut ok = true;
        'outer: for i in 0..dim {
            let mut acc = Scalar::zero();
            for (j, xv) in x.iter().enumerate() {
                if !xv.is_zero() && !self.r[i][j].is_zero() {
                    acc += &self.r[i][j] * xv;
                }
            }
            let want = c[i].clone();
            if acc != want {
                ok = false;
                break 'outer;
            }
        }
        debug_assert!(ok, "solver postcondition");
        Some(x)
    }

    /// True if `b` lies in the column space of `A`.
    pub fn in_span(&self, b: &[Scalar]) -> bool {
        self.solve(b).is_some()
    }
}
