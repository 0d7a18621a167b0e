use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rackcode::lp::problem::int;
use rackcode::lp::{simplex_solve, LpProblem, LpStatus, Relation};

/// Gaussian elimination over the rationals; `None` if singular.
fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Maximum over all basic feasible points of a bounded polytope.
fn vertex_optimum(p: &LpProblem) -> Option<BigRational> {
    let n = p.num_vars();
    // every row as `a·x (rel) b`, plus x_j >= 0
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for c in &p.constraints {
        let mut a = vec![BigRational::zero(); n];
        for (j, v) in &c.coeffs {
            a[*j] = v.clone();
        }
        rows.push((a, c.rhs.clone()));
    }
    for j in 0..n {
        let mut a = vec![BigRational::zero(); n];
        a[j] = BigRational::one();
        rows.push((a, BigRational::zero()));
    }
    let mut best: Option<BigRational> = None;
    let m = rows.len();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let chosen: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let a = chosen.iter().map(|&i| rows[i].0.clone()).collect();
        let b = chosen.iter().map(|&i| rows[i].1.clone()).collect();
        let Some(x) = solve_square(a, b) else { continue };
        if p.is_feasible(&x) {
            let v = p.objective_value(&x);
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
    }
    best
}

fn coeff() -> impl Strategy<Value = i64> {
    -4i64..=4
}

fn small_lp() -> impl Strategy<Value = LpProblem> {
    (2usize..=3)
        .prop_flat_map(|n| {
            let row = (proptest::collection::vec(coeff(), n), -6i64..=8, 0u8..3);
            (Just(n), proptest::collection::vec(coeff(), n), proptest::collection::vec(row, 1..=3))
        })
        .prop_map(|(n, obj, rows)| {
            let mut p = LpProblem::new();
            let vars: Vec<usize> = (0..n).map(|j| p.add_var(format!("x{j}"), true)).collect();
            p.set_objective(vars.iter().zip(&obj).map(|(&v, &c)| (v, int(c))));
            for (i, (a, b, rel)) in rows.into_iter().enumerate() {
                let rel = [Relation::Le, Relation::Ge, Relation::Eq][rel as usize];
                p.add_constraint(format!("r{i}"), vars.iter().zip(&a).map(|(&v, &c)| (v, int(c))), rel, int(b));
            }
            // a box keeps every instance bounded
            for &v in &vars {
                p.add_constraint(format!("box{v}"), [(v, int(1))], Relation::Le, int(5));
            }
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_vertex_enumeration(p in small_lp()) {
        let s = simplex_solve(&p).unwrap();
        match vertex_optimum(&p) {
            None => prop_assert_eq!(s.status, LpStatus::Infeasible),
            Some(best) => {
                prop_assert_eq!(s.status, LpStatus::Optimal);
                prop_assert!(p.is_feasible(&s.assignment));
                prop_assert_eq!(s.value, Some(best));
            }
        }
    }

    #[test]
    fn free_shift_invariance(p in small_lp(), shift in 0i64..4) {
        // substitute x0 = y + shift with y free and bounded below by -shift
        let s = simplex_solve(&p).unwrap();
        let mut q = LpProblem::new();
        let n = p.num_vars();
        for j in 0..n {
            q.add_var(p.names[j].clone(), j != 0);
        }
        q.set_objective(p.objective.clone());
        for c in &p.constraints {
            let a0 = c.coeffs.iter().find(|(j, _)| *j == 0).map(|(_, a)| a.clone()).unwrap_or_else(BigRational::zero);
            q.add_constraint(c.name.clone(), c.coeffs.clone(), c.rel, &c.rhs - &a0 * int(shift));
        }
        q.add_constraint("lb", [(0, int(1))], Relation::Ge, int(-shift));
        let t = simplex_solve(&q).unwrap();
        prop_assert_eq!(s.status, t.status);
        if let (Some(a), Some(b)) = (s.value, t.value) {
            let c0 = p.objective.iter().find(|(j, _)| *j == 0).map(|(_, a)| a.clone()).unwrap_or_else(BigRational::zero);
            prop_assert_eq!(a, b + c0 * int(shift));
            prop_assert!(!t.assignment[0].is_negative() || shift > 0);
        }
    }
}
