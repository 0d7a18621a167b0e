//! Floating-point simplex used only to guess an optimal basis. The exact
//! solver re-derives everything from the guess, so a wrong guess costs time,
//! never correctness.

use num_rational::BigRational;
use num_traits::ToPrimitive;

const EPS: f64 = 1e-9;
const DEGENERATE_STREAK: usize = 20;

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

struct Dict {
    t: Vec<Vec<f64>>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

impl Dict {
    fn rhs(&self) -> usize {
        self.nonbasic.len()
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let p = self.t[r][s];
        let width = self.t[r].len();
        for j in 0..width {
            if j != s {
                self.t[r][j] /= p;
            }
        }
        self.t[r][s] = 1.0 / p;
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[s];
            if f == 0.0 {
                continue;
            }
            for j in 0..width {
                if j != s {
                    row[j] -= f * pivot_row[j];
                }
            }
            row[s] = -f * pivot_row[s];
        }
        std::mem::swap(&mut self.basic[r - 1], &mut self.nonbasic[s]);
    }

    fn run(&mut self, limit: usize) -> Option<()> {
        let mut streak = 0;
        for _ in 0..limit {
            let rhs = self.rhs();
            let candidates = (0..rhs).filter(|&j| self.t[0][j] < -EPS);
            let s = if streak >= DEGENERATE_STREAK {
                candidates.min_by_key(|&j| self.nonbasic[j])
            } else {
                candidates.min_by(|&a, &b| self.t[0][a].total_cmp(&self.t[0][b]))
            };
            let Some(s) = s else { return Some(()) };
            let mut best: Option<(usize, f64)> = None;
            for i in 1..self.t.len() {
                let a = self.t[i][s];
                if a <= EPS {
                    continue;
                }
                let ratio = self.t[i][rhs].max(0.0) / a;
                best = match best {
                    Some((b, v)) if v < ratio - EPS || (v <= ratio + EPS && self.basic[b - 1] < self.basic[i - 1]) => {
                        Some((b, v))
                    }
                    _ => Some((i, ratio)),
                };
            }
            let (r, ratio) = best?;
            self.pivot(r, s);
            streak = if ratio <= EPS { streak + 1 } else { 0 };
            if !self.t.iter().all(|row| row.iter().all(|v| v.is_finite())) {
                return None;
            }
        }
        None
    }
}

/// Labels (`< n` structural, `n + i` slack of row `i`) of a basis the
/// floating-point method believes optimal for `max c·x, rows, x ≥ 0`.
pub(crate) fn guess_basis(
    n: usize,
    rows: &[(Vec<(usize, BigRational)>, BigRational)],
    c: &[(usize, BigRational)],
) -> Option<Vec<usize>> {
    let m = rows.len();
    let aux = n + m;
    let limit = 50 * (n + m) + 1000;
    let mut t = vec![vec![0.0; n + 2]];
    for (terms, b) in rows {
        let mut row = vec![0.0; n + 2];
        for (j, v) in terms {
            row[*j] = to_f64(v);
        }
        row[n] = -1.0;
        row[n + 1] = to_f64(b);
        t.push(row);
    }
    let mut d = Dict { t, basic: (n..n + m).collect(), nonbasic: (0..n).chain([aux]).collect() };
    if let Some(r) = (1..=m).filter(|&i| d.t[i][n + 1] < 0.0).min_by(|&a, &b| d.t[a][n + 1].total_cmp(&d.t[b][n + 1])) {
        d.t[0][n] = 1.0;
        d.pivot(r, n);
        d.run(limit)?;
        if d.t[0][d.rhs()].abs() > 1e-7 {
            return None;
        }
        if let Some(i) = d.basic.iter().position(|&b| b == aux) {
            let row = &d.t[i + 1];
            let s = (0..d.rhs())
                .filter(|&j| d.nonbasic[j] != aux)
                .max_by(|&a, &b| row[a].abs().total_cmp(&row[b].abs()))?;
            if row[s].abs() <= EPS {
                return None;
            }
            d.pivot(i + 1, s);
        }
    }
    let s = d.nonbasic.iter().position(|&v| v == aux)?;
    for row in &mut d.t {
        row.remove(s);
    }
    d.nonbasic.remove(s);

    let mut cost = vec![0.0; n];
    for (j, v) in c {
        cost[*j] = to_f64(v);
    }
    let cost_of = |l: usize| if l < n { cost[l] } else { 0.0 };
    let rhs = d.rhs();
    let mut obj = vec![0.0; rhs + 1];
    for (j, o) in obj.iter_mut().enumerate().take(rhs) {
        *o = -cost_of(d.nonbasic[j]);
    }
    for (i, &b) in d.basic.iter().enumerate() {
        let cb = cost_of(b);
        if cb != 0.0 {
            for (j, o) in obj.iter_mut().enumerate() {
                *o += cb * d.t[i + 1][j];
            }
        }
    }
    d.t[0] = obj;
    d.run(limit)?;
    Some(d.basic)
}
