//! Orbit-counting coefficients for the symmetry-reduced program.
//!
//! A pair `(w, s)` of subsets of the `N` nodes is described up to
//! permutation by the triple `(d, e, f) = (|w∖s|, |w∩s|, |s∖w|)`.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

/// `binom(n, k)`, zero when `k < 0`, `n < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// `n! / (Π parts! · (n − Σ parts)!)`, zero if the parts exceed `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> BigInt {
    let mut rest = n as i64;
    let mut acc = BigInt::one();
    for &p in parts {
        acc *= binom(rest, p as i64);
        rest -= p as i64;
    }
    if rest < 0 {
        BigInt::zero()
    } else {
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple {
    pub d: usize,
    pub e: usize,
    pub f: usize,
}

impl Triple {
    pub fn new(d: usize, e: usize, f: usize) -> Self {
        Triple { d, e, f }
    }

    /// Orbit of the pair of node sets given as bit masks.
    pub fn of_masks(w: u64, s: u64) -> Self {
        Triple {
            d: (w & !s).count_ones() as usize,
            e: (w & s).count_ones() as usize,
            f: (s & !w).count_ones() as usize,
        }
    }

    pub fn total(self) -> usize {
        self.d + self.e + self.f
    }

    pub fn mirrored(self) -> Self {
        Triple::new(self.f, self.e, self.d)
    }

    /// Number of `(w, s)` pairs in this orbit.
    pub fn orbit_size(self, n: usize) -> BigInt {
        multinomial(n, &[self.d, self.e, self.f])
    }

    /// All triples with `d + e + f ≤ n`, lexicographic.
    pub fn all(n: usize) -> Vec<Triple> {
        let mut out = Vec::new();
        for d in 0..=n {
            for e in 0..=n - d {
                for f in 0..=n - d - e {
                    out.push(Triple::new(d, e, f));
                }
            }
        }
        out
    }
}

/// Sum over 4×4 tables `ζ` with row sums `(d, e, f, rest)` and column sums
/// `(d', e', f', rest')` of `U(ζ)(q−1)^σ₁(−1)^σ₂`. Rows index the classes
/// `w∖s, w∩s, s∖w, rest` of the output pair, columns those of the input.
pub fn delta1(out: Triple, inp: Triple, n: usize, q: u32) -> BigInt {
    if out.total() > n || inp.total() > n {
        return BigInt::zero();
    }
    let rows = [out.d, out.e, out.f, n - out.total()];
    let cols = [inp.d, inp.e, inp.f, n - inp.total()];
    let qm1 = BigInt::from(q as i64 - 1);
    let mut total = BigInt::zero();
    let mut zeta = [[0usize; 4]; 4];
    fill_row(0, &rows, cols, &mut zeta, &mut |z| {
        // σ₁ = |w∖w'| + |s∖s'|, σ₂ = |w∩w'| + |s∩s'|
        let s1 = z[0][2] + z[0][3] + z[1][2] + z[1][3] + z[1][0] + z[1][3] + z[2][0] + z[2][3];
        let s2 = z[0][0] + z[0][1] + z[1][0] + z[1][1] + z[1][1] + z[1][2] + z[2][1] + z[2][2];
        let mut u = BigInt::one();
        for (row, &r) in z.iter().zip(&rows) {
            u *= multinomial(r, &row[..3]);
        }
        let term = u * Pow::pow(&qm1, s1 as u32);
        if s2 % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    });
    total
}

fn fill_row(
    r: usize,
    rows: &[usize; 4],
    left: [usize; 4],
    zeta: &mut [[usize; 4]; 4],
    visit: &mut impl FnMut(&[[usize; 4]; 4]),
) {
    if r == 3 {
        // last row is forced to the remaining column capacity
        if left.iter().sum::<usize>() == rows[3] {
            zeta[3] = left;
            visit(zeta);
        }
        return;
    }
    let need = rows[r];
    for a in 0..=need.min(left[0]) {
        for b in 0..=(need - a).min(left[1]) {
            for c in 0..=(need - a - b).min(left[2]) {
                let dcell = need - a - b - c;
                if dcell > left[3] {
                    continue;
                }
                zeta[r] = [a, b, c, dcell];
                let next = [left[0] - a, left[1] - b, left[2] - c, left[3] - dcell];
                fill_row(r + 1, rows, next, zeta, visit);
            }
        }
    }
}

/// `|{w : i ∈ w, w ∩ γ = ∅, |w| = d}|` for `|γ| = Γ₁`.
pub fn delta2(d: usize, n: usize, gamma1: usize) -> BigInt {
    binom(n as i64 - gamma1 as i64 - 1, d as i64 - 1)
}

/// `|{(w, s) : i ∈ w, w ∩ γ = ∅, orbit (d, e, f)}|` for `|γ| = Γ₂`, split by
/// whether `i ∈ s`.
pub fn delta3(t: Triple, n: usize, gamma2: usize) -> BigInt {
    if t.total() > n {
        return BigInt::zero();
    }
    let (n, g) = (n as i64, gamma2 as i64);
    let (d, e, f) = (t.d as i64, t.e as i64, t.f as i64);
    let with_i = binom(n - g - 1, e - 1) * binom(n - g - e, d) * binom(n - e - d, f);
    let without_i = binom(n - g - 1, e) * binom(n - g - e - 1, d - 1) * binom(n - e - d, f);
    with_i + without_i
}
