//! Exact simplex: equality presolve followed by an integer-preserving
//! tableau method.
//!
//! The tableau holds integers `T` and a common denominator `D > 0`; the
//! true dictionary coefficients are `T / D`. Pivoting on `p = T[r][s]` sets
//! `T[i][j] ← (p·T[i][j] − T[i][s]·T[r][j]) / D` for `i ≠ r, j ≠ s`, and
//! every division is exact because each entry is a subdeterminant of the
//! scaled input. This avoids the gcd work of rational arithmetic.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::guide::guess_basis;
use super::problem::{LpProblem, LpSolution, LpStatus, Relation};
use crate::error::{Error, Result};

const DEGENERATE_STREAK: usize = 20;
const MAX_PIVOTS: usize = 5_000_000;

type Terms = BTreeMap<usize, BigRational>;

/// `constant + Σ terms`.
#[derive(Clone, Debug)]
struct Affine {
    terms: Terms,
    constant: BigRational,
}

struct Presolved {
    /// Surviving variables, in column order.
    alive: Vec<usize>,
    /// `Σ coeffs ≤ rhs` over surviving variables.
    rows: Vec<(Terms, BigRational)>,
    objective: Affine,
    /// `(variable, value)` in elimination order.
    eliminated: Vec<(usize, Affine)>,
}

enum PresolveOutcome {
    Reduced(Presolved),
    Infeasible,
}

struct RowStore {
    rows: Vec<Option<(Terms, Relation, BigRational)>>,
    rows_of: Vec<BTreeSet<usize>>,
}

impl RowStore {
    fn push(&mut self, terms: Terms, rel: Relation, rhs: BigRational) {
        let id = self.rows.len();
        for &j in terms.keys() {
            self.rows_of[j].insert(id);
        }
        self.rows.push(Some((terms, rel, rhs)));
    }

    fn take(&mut self, id: usize) -> (Terms, Relation, BigRational) {
        let row = self.rows[id].take().expect("row present");
        for &j in row.0.keys() {
            self.rows_of[j].remove(&id);
        }
        row
    }

    /// Replaces variable `p` by `expr` in every row that mentions it.
    fn substitute(&mut self, p: usize, expr: &Affine) {
        let ids: Vec<usize> = self.rows_of[p].iter().copied().collect();
        for id in ids {
            let (terms, _, rhs) = self.rows[id].as_mut().expect("indexed row present");
            let a = terms.remove(&p).expect("indexed term present");
            self.rows_of[p].remove(&id);
            *rhs -= &a * &expr.constant;
            for (&k, c) in &expr.terms {
                let entry = terms.entry(k).or_insert_with(BigRational::zero);
                let was_zero = entry.is_zero();
                *entry += &a * c;
                if entry.is_zero() {
                    terms.remove(&k);
                    if !was_zero {
                        self.rows_of[k].remove(&id);
                    }
                } else if was_zero {
                    self.rows_of[k].insert(id);
                }
            }
        }
    }
}

fn substitute_affine(target: &mut Affine, p: usize, expr: &Affine) {
    if let Some(a) = target.terms.remove(&p) {
        target.constant += &a * &expr.constant;
        for (&k, c) in &expr.terms {
            let entry = target.terms.entry(k).or_insert_with(BigRational::zero);
            *entry += &a * c;
            if entry.is_zero() {
                target.terms.remove(&k);
            }
        }
    }
}

/// Eliminates every equality by substitution, sparsest row first. Removing
/// a non-negative variable leaves behind the row `expr ≥ 0` unless that is
/// implied by the signs alone.
fn presolve(p: &LpProblem) -> PresolveOutcome {
    let n = p.num_vars();
    let mut store = RowStore { rows: Vec::with_capacity(p.constraints.len()), rows_of: vec![BTreeSet::new(); n] };
    for c in &p.constraints {
        store.push(c.coeffs.iter().cloned().collect(), c.rel, c.rhs.clone());
    }
    let mut objective = Affine { terms: p.objective.iter().cloned().collect(), constant: BigRational::zero() };
    let mut alive = vec![true; n];
    let mut eliminated = Vec::new();

    loop {
        let next = store
            .rows
            .iter()
            .enumerate()
            .filter_map(|(id, r)| match r {
                Some((t, Relation::Eq, _)) => Some((t.len(), id)),
                _ => None,
            })
            .min();
        let Some((_, id)) = next else { break };
        let (terms, _, rhs) = store.take(id);
        if terms.is_empty() {
            if !rhs.is_zero() {
                return PresolveOutcome::Infeasible;
            }
            continue;
        }
        let pivot = *terms
            .keys()
            .min_by_key(|&&j| (p.nonneg[j], store.rows_of[j].len(), !terms[&j].abs().is_one(), j))
            .expect("nonempty row");
        let a = terms[&pivot].clone();
        let expr = Affine {
            constant: &rhs / &a,
            terms: terms.iter().filter(|(&k, _)| k != pivot).map(|(&k, c)| (k, -(c / &a))).collect(),
        };
        store.substitute(pivot, &expr);
        substitute_affine(&mut objective, pivot, &expr);
        alive[pivot] = false;
        if p.nonneg[pivot] {
            if expr.terms.is_empty() {
                if expr.constant.is_negative() {
                    return PresolveOutcome::Infeasible;
                }
            } else {
                let implied =
                    !expr.constant.is_negative() && expr.terms.iter().all(|(&k, c)| p.nonneg[k] && c.is_positive());
                if !implied {
                    store.push(expr.terms.clone(), Relation::Ge, -expr.constant.clone());
                }
            }
        }
        eliminated.push((pivot, expr));
    }

    // Remaining rows as `≤`, normalised to primitive integer coefficients so
    // duplicates collapse to the tightest right-hand side.
    let mut best: HashMap<Vec<(usize, BigInt)>, BigRational> = HashMap::new();
    let mut order = Vec::new();
    for (terms, rel, rhs) in store.rows.into_iter().flatten() {
        let (terms, rhs) = match rel {
            Relation::Le => (terms, rhs),
            Relation::Ge => (terms.into_iter().map(|(k, c)| (k, -c)).collect(), -rhs),
            Relation::Eq => unreachable!("equalities eliminated"),
        };
        if terms.is_empty() {
            if rhs.is_negative() {
                return PresolveOutcome::Infeasible;
            }
            continue;
        }
        if !rhs.is_negative() && terms.iter().all(|(&k, c)| p.nonneg[k] && !c.is_positive()) {
            continue;
        }
        let lcm = terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<(usize, BigInt)> =
            terms.iter().map(|(&k, c)| (k, (c * BigRational::from_integer(lcm.clone())).to_integer())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
        let key: Vec<(usize, BigInt)> = ints.into_iter().map(|(k, c)| (k, c / &g)).collect();
        let scaled = rhs * BigRational::new(lcm, g);
        match best.get_mut(&key) {
            Some(old) => {
                if scaled < *old {
                    *old = scaled;
                }
            }
            None => {
                order.push(key.clone());
                best.insert(key, scaled);
            }
        }
    }
    let rows = order
        .into_iter()
        .map(|key| {
            let rhs = best[&key].clone();
            let terms = key.into_iter().map(|(k, c)| (k, BigRational::from_integer(c))).collect();
            (terms, rhs)
        })
        .collect();
    PresolveOutcome::Reduced(Presolved { alive: (0..n).filter(|&j| alive[j]).collect(), rows, objective, eliminated })
}

/// Dictionary in integer form. Column `j < width` holds nonbasic variable
/// `nonbasic[j]`; the last column is the right-hand side. Row 0 is the
/// objective `z + Σ T[0][j] x_j = T[0][rhs]` (all over `D`).
struct Tableau {
    t: Vec<Vec<BigInt>>,
    d: BigInt,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    pivots: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.nonbasic.len()
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let p = self.t[r][s].clone();
        let d = std::mem::replace(&mut self.d, p.clone());
        let pivot_row = self.t[r].clone();
        let width = pivot_row.len();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = std::mem::take(&mut row[s]);
            for j in 0..width {
                if j == s {
                    continue;
                }
                let v = &mut row[j];
                *v *= &p;
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    *v -= &f * &pivot_row[j];
                }
                debug_assert!((&*v % &d).is_zero(), "inexact division in pivot");
                *v /= &d;
            }
            row[s] = -f;
        }
        self.t[r][s] = d;
        std::mem::swap(&mut self.basic[r - 1], &mut self.nonbasic[s]);
        if self.d.is_negative() {
            for row in &mut self.t {
                for v in row.iter_mut() {
                    *v = -std::mem::take(v);
                }
            }
            self.d = -std::mem::take(&mut self.d);
        }
        self.pivots += 1;
    }

    /// Leaving row for entering column `s` by the minimum-ratio test, ties
    /// broken by smallest basic label.
    fn ratio_row(&self, s: usize) -> Option<usize> {
        let rhs = self.rhs();
        let mut best: Option<usize> = None;
        for i in 1..self.t.len() {
            let a = &self.t[i][s];
            if !a.is_positive() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    // t[i][rhs]/a  vs  t[b][rhs]/t[b][s]
                    let lhs = &self.t[i][rhs] * &self.t[b][s];
                    let rhs_v = &self.t[b][rhs] * a;
                    if lhs < rhs_v || (lhs == rhs_v && self.basic[i - 1] < self.basic[b - 1]) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    /// Primal simplex on the current objective row. Columns in `skip` never
    /// enter.
    fn run(&mut self, skip: Option<usize>) -> Result<Phase> {
        let mut streak = 0usize;
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(Error::MalformedProblem("simplex pivot limit exceeded".into()));
            }
            let bland = streak >= DEGENERATE_STREAK;
            let candidates = (0..self.rhs()).filter(|&j| Some(self.nonbasic[j]) != skip && self.t[0][j].is_negative());
            let entering = if bland {
                candidates.min_by_key(|&j| self.nonbasic[j])
            } else {
                candidates
                    .min_by(|&a, &b| self.t[0][a].cmp(&self.t[0][b]).then(self.nonbasic[a].cmp(&self.nonbasic[b])))
            };
            let Some(s) = entering else {
                return Ok(Phase::Optimal);
            };
            let Some(r) = self.ratio_row(s) else {
                return Ok(Phase::Unbounded);
            };
            let degenerate = self.t[r][self.rhs()].is_zero();
            self.pivot(r, s);
            streak = if degenerate { streak + 1 } else { 0 };
        }
    }

    fn remove_column(&mut self, s: usize) {
        for row in &mut self.t {
            row.remove(s);
        }
        self.nonbasic.remove(s);
    }
}

fn lcm_of_denoms<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigInt {
    it.fold(BigInt::one(), |l, c| l.lcm(c.denom()))
}

fn scaled(c: &BigRational, lcm: &BigInt) -> BigInt {
    (c * BigRational::from_integer(lcm.clone())).to_integer()
}

type Outcome = std::result::Result<Vec<BigRational>, LpStatus>;

/// Slack-basis tableau with each row scaled to integers. With `with_aux`
/// the phase-one column `x0` (label `n + m`) sits at column `n`.
fn initial_tableau(n: usize, rows: &[(Vec<(usize, BigRational)>, BigRational)], with_aux: bool) -> Tableau {
    let m = rows.len();
    let width = n + usize::from(with_aux);
    let mut t = Vec::with_capacity(m + 1);
    t.push(vec![BigInt::zero(); width + 1]);
    for (terms, b) in rows {
        let lcm = lcm_of_denoms(terms.iter().map(|(_, v)| v).chain(std::iter::once(b)));
        let mut row = vec![BigInt::zero(); width + 1];
        for (j, v) in terms {
            row[*j] = scaled(v, &lcm);
        }
        if with_aux {
            row[n] = -lcm.clone();
        }
        row[width] = scaled(b, &lcm);
        t.push(row);
    }
    let mut nonbasic: Vec<usize> = (0..n).collect();
    if with_aux {
        nonbasic.push(n + m);
    }
    Tableau { t, d: BigInt::one(), basic: (n..n + m).collect(), nonbasic, pivots: 0 }
}

impl Tableau {
    /// Objective row for the current basis:
    /// `T0[j] = Σ_i c_B(i) T[i][j] − D c_j`.
    fn install_objective(&mut self, cost: &[BigInt]) {
        let n = cost.len();
        let rhs = self.rhs();
        let cost_of = |label: usize| if label < n { cost[label].clone() } else { BigInt::zero() };
        let mut obj = vec![BigInt::zero(); rhs + 1];
        for (j, o) in obj.iter_mut().enumerate().take(rhs) {
            *o = -(&self.d * cost_of(self.nonbasic[j]));
        }
        for (i, &b) in self.basic.iter().enumerate() {
            let cb = cost_of(b);
            if cb.is_zero() {
                continue;
            }
            for (j, o) in obj.iter_mut().enumerate() {
                *o += &cb * &self.t[i + 1][j];
            }
        }
        self.t[0] = obj;
    }

    /// Pivots the labels of `target` into the basis. Fails when they are
    /// not a basis of the exact system.
    fn crash(&mut self, target: &[usize]) -> bool {
        let want: BTreeSet<usize> = target.iter().copied().collect();
        loop {
            let Some(i) = self.basic.iter().position(|b| !want.contains(b)) else {
                return true;
            };
            let r = i + 1;
            let Some(s) = (0..self.rhs()).find(|&j| want.contains(&self.nonbasic[j]) && !self.t[r][j].is_zero()) else {
                return false;
            };
            self.pivot(r, s);
        }
    }

    fn primal_feasible(&self) -> bool {
        let rhs = self.rhs();
        self.t[1..].iter().all(|row| !row[rhs].is_negative())
    }

    fn finish(mut self, cost: &[BigInt]) -> Result<(Outcome, usize)> {
        self.install_objective(cost);
        if let Phase::Unbounded = self.run(None)? {
            return Ok((Err(LpStatus::Unbounded), self.pivots));
        }
        let n = cost.len();
        let mut x = vec![BigRational::zero(); n];
        let rhs = self.rhs();
        for (i, &b) in self.basic.iter().enumerate() {
            if b < n {
                x[b] = BigRational::new(self.t[i + 1][rhs].clone(), self.d.clone());
            }
        }
        Ok((Ok(x), self.pivots))
    }
}

/// Solves `max c·x` subject to `rows`, `x ≥ 0`. A basis guessed in floating
/// point is tried first; if it is not exactly primal feasible the method
/// restarts from the slack basis with a phase one.
fn solve_standard(
    n: usize,
    rows: &[(Vec<(usize, BigRational)>, BigRational)],
    c: &[(usize, BigRational)],
) -> Result<(Outcome, usize)> {
    let m = rows.len();
    let c_lcm = lcm_of_denoms(c.iter().map(|(_, v)| v));
    let mut cost = vec![BigInt::zero(); n];
    for (j, v) in c {
        cost[*j] = scaled(v, &c_lcm);
    }

    let mut wasted = 0;
    if let Some(basis) = guess_basis(n, rows, c) {
        let mut tab = initial_tableau(n, rows, false);
        if tab.crash(&basis) && tab.primal_feasible() {
            return tab.finish(&cost);
        }
        wasted = tab.pivots;
    }

    let needs_phase1 = rows.iter().any(|(_, b)| b.is_negative());
    let mut tab = initial_tableau(n, rows, needs_phase1);
    tab.pivots = wasted;
    if needs_phase1 {
        let aux = n + m;
        tab.t[0][n] = BigInt::one();
        let rhs = tab.rhs();
        // most negative b_i = t[i][rhs] / −t[i][aux]
        let mut r = 0;
        for i in 1..=m {
            if tab.t[i][rhs].is_negative()
                && (r == 0 || &tab.t[i][rhs] * -&tab.t[r][n] < &tab.t[r][rhs] * -&tab.t[i][n])
            {
                r = i;
            }
        }
        tab.pivot(r, n);
        match tab.run(None)? {
            Phase::Optimal => {}
            Phase::Unbounded => unreachable!("phase one is bounded by zero"),
        }
        if !tab.t[0][tab.rhs()].is_zero() {
            return Ok((Err(LpStatus::Infeasible), tab.pivots));
        }
        if let Some(i) = tab.basic.iter().position(|&b| b == aux) {
            let r = i + 1;
            let rhs = tab.rhs();
            match (0..rhs).find(|&j| !tab.t[r][j].is_zero()) {
                Some(s) => tab.pivot(r, s),
                None => {
                    tab.t.remove(r);
                    tab.basic.remove(i);
                }
            }
        }
        let s = tab.nonbasic.iter().position(|&v| v == aux).expect("aux is nonbasic");
        tab.remove_column(s);
    }
    tab.finish(&cost)
}

/// Exact optimum of `p`. An optimal assignment is re-checked against every
/// original constraint before it is returned.
pub fn simplex_solve(p: &LpProblem) -> Result<LpSolution> {
    let fail = |status| LpSolution { status, value: None, assignment: Vec::new(), pivots: 0 };
    let pre = match presolve(p) {
        PresolveOutcome::Infeasible => return Ok(fail(LpStatus::Infeasible)),
        PresolveOutcome::Reduced(r) => r,
    };

    // Columns: one per surviving variable, plus a negative part for free ones.
    let mut col_of = HashMap::new();
    let mut neg_col_of = HashMap::new();
    let mut ncols = 0;
    for &v in &pre.alive {
        col_of.insert(v, ncols);
        ncols += 1;
        if !p.nonneg[v] {
            neg_col_of.insert(v, ncols);
            ncols += 1;
        }
    }
    let expand = |terms: &Terms| -> Vec<(usize, BigRational)> {
        let mut out = Vec::with_capacity(terms.len());
        for (v, c) in terms {
            out.push((col_of[v], c.clone()));
            if let Some(&nc) = neg_col_of.get(v) {
                out.push((nc, -c.clone()));
            }
        }
        out
    };
    let rows: Vec<_> = pre.rows.iter().map(|(t, b)| (expand(t), b.clone())).collect();
    let c = expand(&pre.objective.terms);
    let (outcome, pivots) = solve_standard(ncols, &rows, &c)?;
    let cols = match outcome {
        Ok(cols) => cols,
        Err(status) => return Ok(LpSolution { pivots, ..fail(status) }),
    };

    let mut x = vec![BigRational::zero(); p.num_vars()];
    for &v in &pre.alive {
        let mut val = cols[col_of[&v]].clone();
        if let Some(&nc) = neg_col_of.get(&v) {
            val -= &cols[nc];
        }
        x[v] = val;
    }
    for (v, expr) in pre.eliminated.iter().rev() {
        let val = expr.terms.iter().fold(expr.constant.clone(), |acc, (k, c)| acc + c * &x[*k]);
        x[*v] = val;
    }
    if let Some(bad) = p.first_violation(&x) {
        return Err(Error::MalformedProblem(format!("optimal assignment failed exact verification at {bad}")));
    }
    let value = p.objective_value(&x);
    Ok(LpSolution { status: LpStatus::Optimal, value: Some(value), assignment: x, pivots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::problem::int;

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn single_bound() {
        let mut p = LpProblem::new();
        let x = p.add_var("x", true);
        p.set_objective([(x, int(1))]);
        p.add_constraint("ub", [(x, int(1))], Relation::Le, int(3));
        let s = simplex_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, Some(int(3)));
    }

    #[test]
    fn simplex_face() {
        let mut p = LpProblem::new();
        let x = p.add_var("x", true);
        let y = p.add_var("y", true);
        p.set_objective([(x, int(1)), (y, int(1))]);
        p.add_constraint("sum", [(x, int(1)), (y, int(1))], Relation::Le, int(1));
        assert_eq!(simplex_solve(&p).unwrap().value, Some(int(1)));
    }

    #[test]
    fn fractional_optimum() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3  -> (3, 1), value 11
        let mut p = LpProblem::new();
        let x = p.add_var("x", true);
        let y = p.add_var("y", true);
        p.set_objective([(x, int(3)), (y, int(2))]);
        p.add_constraint("a", [(x, int(1)), (y, int(1))], Relation::Le, int(4));
        p.add_constraint("b", [(x, int(1)), (y, int(3))], Relation::Le, int(6));
        p.add_constraint("c", [(x, int(1))], Relation::Le, int(3));
        let s = simplex_solve(&p).unwrap();
        assert_eq!(s.value, Some(int(11)));
        assert_eq!(s.assignment, vec![int(3), int(1)]);

        p.add_constraint("d", [(x, int(2)), (y, int(1))], Relation::Le, frac(13, 2));
        let s = simplex_solve(&p).unwrap();
        // vertex of b and d: x = 27/10, y = 11/10 -> 103/10
        assert_eq!(s.value, Some(frac(103, 10)));
        assert_eq!(s.assignment, vec![frac(27, 10), frac(11, 10)]);
    }

    #[test]
    fn phase_one_and_equalities() {
        // max x + y, x + y >= 2, x - y = 1, x <= 5 -> x = 5, y = 4
        let mut p = LpProblem::new();
        let x = p.add_var("x", true);
        let y = p.add_var("y", true);
        p.set_objective([(x, int(1)), (y, int(1))]);
        p.add_constraint("ge", [(x, int(1)), (y, int(1))], Relation::Ge, int(2));
        p.add_constraint("eq", [(x, int(1)), (y, int(-1))], Relation::Eq, int(1));
        p.add_constraint("ub", [(x, int(1))], Relation::Le, int(5));
        let s = simplex_solve(&p).unwrap();
        assert_eq!(s.value, Some(int(9)));

        // min x  (max −x) with x >= 3/2 needs phase one
        let mut p = LpProblem::new();
        let x = p.add_var("x", true);
        p.set_objective([(x, int(-1))]);
        p.add_constraint("lb", [(x, int(2))], Relation::Ge, int(3));
        assert_eq!(simplex_solve(&p).unwrap().value, Some(frac(-3, 2)));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = LpProblem::new();
        let x = p.add_var("x", true);
        p.set_objective([(x, int(1))]);
        p.add_constraint("a", [(x, int(1))], Relation::Le, int(1));
        p.add_constraint("b", [(x, int(1))], Relation::Ge, int(2));
        assert_eq!(simplex_solve(&p).unwrap().status, LpStatus::Infeasible);

        let mut p = LpProblem::new();
        let x = p.add_var("x", true);
        let y = p.add_var("y", true);
        p.set_objective([(x, int(1))]);
        p.add_constraint("a", [(x, int(1)), (y, int(-1))], Relation::Le, int(1));
        assert_eq!(simplex_solve(&p).unwrap().status, LpStatus::Unbounded);

        // equality forcing a negative value on a non-negative variable
        let mut p = LpProblem::new();
        let x = p.add_var("x", true);
        p.add_constraint("e", [(x, int(1))], Relation::Eq, int(-1));
        assert_eq!(simplex_solve(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn free_variables() {
        // max −|x − 2| style: max t s.t. t <= x − 2, t <= 2 − x, x free, t free
        let mut p = LpProblem::new();
        let x = p.add_var("x", false);
        let t = p.add_var("t", false);
        p.set_objective([(t, int(1))]);
        p.add_constraint("a", [(t, int(1)), (x, int(-1))], Relation::Le, int(-2));
        p.add_constraint("b", [(t, int(1)), (x, int(1))], Relation::Le, int(2));
        let s = simplex_solve(&p).unwrap();
        assert_eq!(s.value, Some(int(0)));
        assert_eq!(s.assignment[x], int(2));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook rule without anti-cycling.
        let mut p = LpProblem::new();
        let v: Vec<usize> = (0..4).map(|i| p.add_var(format!("x{i}"), true)).collect();
        p.set_objective([(v[0], frac(3, 4)), (v[1], int(-150)), (v[2], frac(1, 50)), (v[3], int(-6))]);
        p.add_constraint(
            "r1",
            [(v[0], frac(1, 4)), (v[1], int(-60)), (v[2], frac(-1, 25)), (v[3], int(9))],
            Relation::Le,
            int(0),
        );
        p.add_constraint(
            "r2",
            [(v[0], frac(1, 2)), (v[1], int(-90)), (v[2], frac(-1, 50)), (v[3], int(3))],
            Relation::Le,
            int(0),
        );
        p.add_constraint("r3", [(v[2], int(1))], Relation::Le, int(1));
        let s = simplex_solve(&p).unwrap();
        assert_eq!(s.value, Some(frac(1, 20)));
    }

    #[test]
    fn duplicate_rows_collapse() {
        let mut p = LpProblem::new();
        let x = p.add_var("x", true);
        p.set_objective([(x, int(1))]);
        p.add_constraint("a", [(x, int(2))], Relation::Le, int(8));
        p.add_constraint("b", [(x, int(1))], Relation::Le, int(3));
        p.add_constraint("c", [(x, int(-1))], Relation::Ge, int(-5));
        let PresolveOutcome::Reduced(r) = presolve(&p) else { panic!() };
        assert_eq!(r.rows.len(), 1);
        assert_eq!(simplex_solve(&p).unwrap().value, Some(int(3)));
    }
}
