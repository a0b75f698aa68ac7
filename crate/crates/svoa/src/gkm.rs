//! The fake monster superalgebra as a generalized Kac-Moody superalgebra:
//! root enumeration in the even unimodular Lorentzian lattice of rank 10,
//! the truncated denominator identity, and the Cartan matrix of the
//! norm-zero simple roots.

use crate::qseries::{a_series, c_series};
use crate::SvoaError;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;

/// A vector of the even unimodular Lorentzian lattice of signature (9,1) in
/// doubled coordinates: the actual coordinates are `a_i / 2`, all integral
/// or all half-integral, with integral inner product with the all-halves
/// vector.  The metric is `(+^9, -)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lat10(pub [i16; 10]);

impl Lat10 {
    pub fn zero() -> Self {
        Lat10([0; 10])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Four times the inner product (exact in doubled coordinates).
    pub fn pair4(&self, other: &Self) -> i64 {
        let mut s = 0i64;
        for i in 0..9 {
            s += self.0[i] as i64 * other.0[i] as i64;
        }
        s - self.0[9] as i64 * other.0[9] as i64
    }

    /// The inner product; integral for two lattice vectors.
    pub fn pair(&self, other: &Self) -> i64 {
        let p4 = self.pair4(other);
        assert!(p4 % 4 == 0, "non-integral pairing");
        p4 / 4
    }

    pub fn norm(&self) -> i64 {
        self.pair(self)
    }

    /// Lattice membership: all doubled coordinates of the same parity and
    /// the mod-4 glue condition.
    pub fn contains(a: &[i16; 10]) -> bool {
        let p = a[0].rem_euclid(2);
        if a.iter().any(|&x| x.rem_euclid(2) != p) {
            return false;
        }
        let s: i64 = a[..9].iter().map(|&x| x as i64).sum::<i64>() - a[9] as i64;
        s.rem_euclid(4) == 0
    }

    /// A vector is primitive if it is not a proper lattice multiple.
    pub fn is_primitive(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let mut g = 0i16;
        for &a in &self.0 {
            g = gcd16(g, a.abs());
        }
        for k in 2..=g {
            if g % k == 0 {
                let mut b = [0i16; 10];
                for i in 0..10 {
                    if self.0[i] % k != 0 {
                        return true;
                    }
                    b[i] = self.0[i] / k;
                }
                if Lat10::contains(&b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut b = [0i16; 10];
        for i in 0..10 {
            b[i] = self.0[i] + other.0[i];
        }
        Lat10(b)
    }

    pub fn mul(&self, k: i16) -> Self {
        let mut b = [0i16; 10];
        for i in 0..10 {
            b[i] = self.0[i] * k;
        }
        Lat10(b)
    }
}

fn gcd16(a: i16, b: i16) -> i16 {
    if b == 0 {
        a
    } else {
        gcd16(b, a % b)
    }
}

/// The default reference vector `(1,1,0,...,0;2)`: a norm -2 vector fixing
/// the positive cone; heights `-(r, alpha)` are then positive integers.
pub fn default_r() -> Lat10 {
    let mut a = [0i16; 10];
    a[0] = 2;
    a[1] = 2;
    a[9] = 4;
    Lat10(a)
}

/// A positive root: `alpha^2 <= 0`, height `-(r,alpha)` in `[1, N]`.
#[derive(Clone, Copy, Debug)]
pub struct Root {
    pub alpha: Lat10,
    pub height: i64,
    /// `-alpha^2 / 2`, the index into the multiplicity series.
    pub nn: i64,
}

pub struct RootTable {
    pub r: Lat10,
    pub height_bound: i64,
    pub roots: Vec<Root>,
    /// `c(n)` for all norms occurring in the table.
    pub mult: Vec<BigInt>,
}

impl RootTable {
    pub fn multiplicity(&self, root: &Root) -> &BigInt {
        &self.mult[root.nn as usize]
    }
}

/// Enumerate all positive roots of height at most `n` with respect to `r`.
/// The fast path requires `r` of the shape `(u,u,0,...,0;w)` (in actual
/// coordinates) with negative norm; this covers the default reference
/// vector.  For such `r` the feasible region per height is a compact
/// paraboloid section which is scanned with exact pruning on the remaining
/// sum of squares.
pub fn enumerate_positive_roots(r: &Lat10, n: i64) -> Result<RootTable, SvoaError> {
    if r.norm() >= 0 {
        return Err(SvoaError::Infeasible(
            "reference vector must have negative norm".into(),
        ));
    }
    let du = r.0[0];
    let dw = r.0[9];
    if r.0[1] != du || r.0[2..9].iter().any(|&x| x != 0) || du % 2 != 0 || dw % 2 != 0 {
        return Err(SvoaError::Infeasible(
            "reference vector must have the shape (u,u,0,...,0;w)".into(),
        ));
    }
    let u = (du / 2) as i64;
    let w = (dw / 2) as i64;
    let mut roots = Vec::new();
    let mut max_nn = 0i64;
    for h in 1..=n {
        for p in 0..2i64 {
            scan_height(u, w, h, p, &mut |a| {
                let v = Lat10(a);
                debug_assert!(Lat10::contains(&a));
                let norm = v.norm();
                debug_assert!(norm <= 0 && norm % 2 == 0);
                let nn = -norm / 2;
                max_nn = max_nn.max(nn);
                roots.push(Root {
                    alpha: v,
                    height: h,
                    nn,
                });
            });
        }
    }
    let c = c_series(max_nn as usize);
    let mult: Vec<BigInt> = (0..=max_nn as usize)
        .map(|k| {
            let v = c.coeff(k);
            assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    Ok(RootTable {
        r: *r,
        height_bound: n,
        roots,
        mult,
    })
}

/// Scan one height slice: doubled coordinates `a`, all of parity `p`, with
/// `w a_10 = 2h + u (a_1 + a_2)` and `sum_{1..9} a_i^2 <= a_10^2`.
fn scan_height(u: i64, w: i64, h: i64, p: i64, f: &mut impl FnMut([i16; 10])) {
    // With s = a_1 + a_2, d = a_1 - a_2, Q = sum_{3..9} a_i^2:
    // (s^2 + d^2)/2 + Q <= ((2h + u s)/w)^2.  The quadratic in s has
    // positive leading coefficient 1/2 - u^2/w^2 since r^2 < 0.
    let lead = 0.5 - (u * u) as f64 / (w * w) as f64;
    let b = -2.0 * (2 * h * u) as f64 / (w * w) as f64;
    let c0 = -((2 * h) * (2 * h)) as f64 / (w * w) as f64;
    let disc = b * b - 4.0 * lead * c0;
    if disc < 0.0 {
        return;
    }
    let smin = ((-b - disc.sqrt()) / (2.0 * lead)).floor() as i64 - 2;
    let smax = ((-b + disc.sqrt()) / (2.0 * lead)).ceil() as i64 + 2;
    for s in smin..=smax {
        if s % 2 != 0 {
            continue;
        }
        if (2 * h + u * s) % w != 0 {
            continue;
        }
        let a10 = (2 * h + u * s) / w;
        if a10.rem_euclid(2) != p {
            continue;
        }
        let budget2 = 2 * a10 * a10 - s * s; // 2Q + d^2 <= budget2
        if budget2 < 0 {
            continue;
        }
        let dmax = budget2.isqrt();
        for d in -dmax..=dmax {
            if d % 2 != 0 || d * d > budget2 {
                continue;
            }
            let a1 = (s + d) / 2;
            let a2 = (s - d) / 2;
            if a1.rem_euclid(2) != p {
                continue;
            }
            let q_budget = (budget2 - d * d) / 2;
            let mut a = [0i16; 10];
            a[0] = a1 as i16;
            a[1] = a2 as i16;
            a[9] = a10 as i16;
            scan_tail(p, q_budget, 2, &mut a, a1 + a2, a10, f);
        }
    }
}

fn scan_tail(
    p: i64,
    budget: i64,
    i: usize,
    a: &mut [i16; 10],
    sum9: i64,
    a10: i64,
    f: &mut impl FnMut([i16; 10]),
) {
    if i == 9 {
        if (sum9 - a10).rem_euclid(4) == 0 {
            f(*a);
        }
        return;
    }
    let r = budget.isqrt();
    let mut v = -r;
    if v.rem_euclid(2) != p {
        v += 1;
    }
    while v <= r {
        let vv = v * v;
        if vv <= budget {
            a[i] = v as i16;
            scan_tail(p, budget - vv, i + 1, a, sum9 + v, a10, f);
        }
        v += 2;
    }
    a[i] = 0;
}

/// Brute-force box-scan oracle over an explicit coordinate box
/// (`|a_i| <= bound` for the spacelike coordinates, `|a_10| <= bound10`);
/// used to cross-check the pruned enumeration at small heights.  The only
/// shortcut is discarding subtrees whose partial sum of squares already
/// exceeds `a_10^2`, which cannot change the output.
pub fn box_scan(r: &Lat10, n: i64, bound: i16, bound10: i16) -> Vec<Lat10> {
    let mut out = Vec::new();
    let mut a = [0i16; 10];
    fn rec(
        r: &Lat10,
        n: i64,
        bound: i16,
        i: usize,
        sq: i64,
        a: &mut [i16; 10],
        out: &mut Vec<Lat10>,
    ) {
        if i == 9 {
            if !Lat10::contains(a) {
                return;
            }
            let v = Lat10(*a);
            if v.norm() > 0 {
                return;
            }
            let h4 = -v.pair4(r);
            if h4 % 4 != 0 {
                return;
            }
            let h = h4 / 4;
            if h >= 1 && h <= n {
                out.push(v);
            }
            return;
        }
        for x in -bound..=bound {
            let sq2 = sq + (x as i64) * (x as i64);
            if sq2 > (a[9] as i64) * (a[9] as i64) {
                continue;
            }
            a[i] = x;
            rec(r, n, bound, i + 1, sq2, a, out);
        }
        a[i] = 0;
    }
    for a10 in -bound10..=bound10 {
        a[9] = a10;
        rec(r, n, bound, 0, 0, &mut a, &mut out);
    }
    out
}

/// A truncated element of the group algebra of the rank-10 lattice: a
/// sparse map from lattice vectors of height at most the bound (plus the
/// constant term at zero) to exact integer coefficients, bucketed by
/// height.
pub struct GradedSeries {
    pub r: Lat10,
    pub height_bound: i64,
    /// `buckets[h]` holds the coefficients of all terms of height `h`.
    pub buckets: Vec<HashMap<Lat10, i128>>,
}

impl GradedSeries {
    pub fn one(r: &Lat10, n: i64) -> Self {
        let mut buckets: Vec<HashMap<Lat10, i128>> = (0..=n).map(|_| HashMap::new()).collect();
        buckets[0].insert(Lat10::zero(), 1);
        GradedSeries {
            r: *r,
            height_bound: n,
            buckets,
        }
    }

    pub fn height_of(&self, v: &Lat10) -> i64 {
        let h4 = -v.pair4(&self.r);
        assert!(h4 % 4 == 0);
        h4 / 4
    }

    pub fn coeff(&self, v: &Lat10) -> i128 {
        let h = self.height_of(v);
        if h < 0 || h > self.height_bound {
            return 0;
        }
        *self.buckets[h as usize].get(v).unwrap_or(&0)
    }

    pub fn add_term(&mut self, v: Lat10, c: i128) {
        let h = self.height_of(&v);
        if h < 0 || h > self.height_bound || c == 0 {
            return;
        }
        let e = self.buckets[h as usize].entry(v).or_insert(0);
        *e = e.checked_add(c).expect("coefficient overflow");
        if *e == 0 {
            self.buckets[h as usize].remove(&v);
        }
    }

    pub fn num_terms(&self) -> usize {
        self.buckets.iter().map(|b| b.len()).sum()
    }

    /// General truncated product (used for the ring-law tests; the big
    /// denominator product goes through `mul_root_factor`).
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.height_bound;
        let mut out = GradedSeries::one(&self.r, n);
        out.buckets[0].clear();
        for (h1, b1) in self.buckets.iter().enumerate() {
            for h2 in 0..=(n as usize - h1) {
                for (v1, c1) in b1 {
                    for (v2, c2) in &other.buckets[h2] {
                        let prod = c1.checked_mul(*c2).expect("coefficient overflow");
                        out.add_term(v1.add(v2), prod);
                    }
                }
            }
        }
        out
    }

    /// Multiply in one factor `((1 - e(alpha)) / (1 + e(alpha)))^c`
    /// expanded by truncated binomials: the coefficient of `e(alpha)^k` is
    /// `t_k = sum_j (-1)^k binom(c,j) binom(c+k-j-1, k-j)`.
    pub fn mul_root_factor(&mut self, alpha: &Lat10, h: i64, c: &BigInt) {
        let n = self.height_bound;
        let kmax = n / h;
        if kmax == 0 || c.is_zero() {
            return;
        }
        let ts = factor_coefficients(c, kmax as usize);
        // Collect the updates first: terms of height <= n - h feed terms of
        // strictly larger height, so no term both reads and writes.
        let mut updates: Vec<(Lat10, i128)> = Vec::new();
        for hb in 0..=(n - h) as usize {
            for (v, coeff) in &self.buckets[hb] {
                let room = (n - hb as i64) / h;
                let mut shift = *alpha;
                for t in ts.iter().take(room as usize) {
                    let prod = coeff.checked_mul(*t).expect("coefficient overflow");
                    updates.push((v.add(&shift), prod));
                    shift = shift.add(alpha);
                }
            }
        }
        for (v, c) in updates {
            self.add_term(v, c);
        }
    }
}

/// Coefficients `t_1 .. t_kmax` of `((1-x)/(1+x))^c` as exact integers.
fn factor_coefficients(c: &BigInt, kmax: usize) -> Vec<i128> {
    let mut out = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let mut t = BigInt::zero();
        for j in 0..=k {
            // (-1)^j binom(c, j) * (-1)^{k-j} binom(c+k-j-1, k-j)
            t += binom_big(c, j) * binom_big(&(c + BigInt::from((k - j) as i64) - 1), k - j);
        }
        if k % 2 == 1 {
            t = -t;
        }
        out.push(t.to_i128().expect("factor coefficient overflow"));
    }
    out
}

fn binom_big(c: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= c - BigInt::from(i as i64);
        den *= BigInt::from((i + 1) as i64);
    }
    num / den
}

/// The truncated denominator-identity left-hand side: the product of
/// `(1-e(alpha))^{c}/(1+e(alpha))^{c}` over all positive roots, with
/// `c = c(-alpha^2/2)`, folded in order of increasing height so that every
/// factor only interacts with the low-height part of the accumulator.
pub fn denominator_lhs(table: &RootTable) -> GradedSeries {
    let mut s = GradedSeries::one(&table.r, table.height_bound);
    for root in &table.roots {
        s.mul_root_factor(&root.alpha, root.height, table.multiplicity(root));
    }
    s
}

/// The right-hand side `1 + sum a(n) e(n lambda_0)` over primitive norm-zero
/// vectors `lambda_0` in the closure of the positive cone.
pub fn denominator_rhs(table: &RootTable) -> GradedSeries {
    let n = table.height_bound;
    let a = a_series(n as usize);
    let mut s = GradedSeries::one(&table.r, n);
    for root in &table.roots {
        if root.nn != 0 || !root.alpha.is_primitive() {
            continue;
        }
        let mut k = 1i64;
        while k * root.height <= n {
            let v = a.coeff(k as usize);
            assert!(v.is_integer());
            s.add_term(
                root.alpha.mul(k as i16),
                v.to_integer().to_i128().expect("a(n) overflow"),
            );
            k += 1;
        }
    }
    s
}

/// Coefficient-by-coefficient comparison of the two sides.
pub struct DenominatorReport {
    pub height_bound: i64,
    pub num_roots: usize,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub mismatches: Vec<(Lat10, i128, i128)>,
}

pub fn denominator_check(r: &Lat10, n: i64) -> Result<DenominatorReport, SvoaError> {
    let table = enumerate_positive_roots(r, n)?;
    let lhs = denominator_lhs(&table);
    let rhs = denominator_rhs(&table);
    let mut mismatches = Vec::new();
    for h in 0..=n as usize {
        let mut keys: Vec<&Lat10> = lhs.buckets[h].keys().chain(rhs.buckets[h].keys()).collect();
        keys.sort();
        keys.dedup();
        for v in keys {
            let a = lhs.coeff(v);
            let b = rhs.coeff(v);
            if a != b {
                mismatches.push((*v, a, b));
            }
        }
    }
    Ok(DenominatorReport {
        height_bound: n,
        num_roots: table.roots.len(),
        lhs_terms: lhs.num_terms(),
        rhs_terms: rhs.num_terms(),
        mismatches,
    })
}

/// The Cartan matrix over the norm-zero simple roots of height at most `n`,
/// each carrying multiplicity 8 even plus 8 odd.  Validates the generalized
/// Kac-Moody conditions: vanishing diagonal, non-positive off-diagonal
/// entries, and vanishing pairing exactly for proportional roots.
pub struct CartanData {
    pub simple_roots: Vec<Lat10>,
    pub matrix: Vec<Vec<i64>>,
    pub multiplicity: (u32, u32),
}

pub fn cartan_matrix(table: &RootTable) -> CartanData {
    let simple_roots: Vec<Lat10> = table
        .roots
        .iter()
        .filter(|root| root.nn == 0)
        .map(|root| root.alpha)
        .collect();
    let matrix = simple_roots
        .iter()
        .map(|a| simple_roots.iter().map(|b| a.pair(b)).collect())
        .collect();
    CartanData {
        simple_roots,
        matrix,
        multiplicity: (8, 8),
    }
}
