//! The full program over support-pair variables `A_{w,s}` and their
//! transforms `C_{w,s}`, `2·4^N` variables in all.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use super::problem::{big, int, LpProblem, Relation};
use crate::enumerator::{in_theta1, in_theta2, kappa_transform, phi, CodeClassParams, EnumeratorTable};
use crate::error::{Error, Result};

pub const LP1_MAX_N: usize = 6;

fn mask_name(m: usize, n: usize) -> String {
    (0..n).map(|j| if m >> j & 1 == 1 { '1' } else { '0' }).collect()
}

/// Column of `A_{w,s}`; `C_{w,s}` sits `4^N` further on.
pub fn a_index(n: usize, w: usize, s: usize) -> usize {
    w | s << n
}

pub fn c_index(n: usize, w: usize, s: usize) -> usize {
    (1 << (2 * n)) + a_index(n, w, s)
}

pub(crate) fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParams(format!("alphabet size {q} must be at least 2")));
    }
    Ok(())
}

pub fn build_lp1(n: usize, q: u32, params: &CodeClassParams, o1: &BigInt) -> Result<LpProblem> {
    if n > LP1_MAX_N {
        return Err(Error::ProblemTooLarge(format!(
            "LP1 with N={n} needs {} variables; limit is N={LP1_MAX_N}",
            2u64 << (2 * n)
        )));
    }
    check_q(q)?;
    params.validate(n)?;
    let cells = 1usize << (2 * n);
    let full = (1usize << n) - 1;
    let mut p = LpProblem::new();
    for idx in 0..cells {
        p.add_var(format!("A_{}_{}", mask_name(idx & full, n), mask_name(idx >> n, n)), true);
    }
    for idx in 0..cells {
        p.add_var(format!("C_{}_{}", mask_name(idx & full, n), mask_name(idx >> n, n)), true);
    }
    let all_a: Vec<(usize, BigRational)> = (0..cells).map(|j| (j, int(1))).collect();
    p.set_objective(all_a.clone());

    for w in 0..=full {
        for s in w + 1..=full {
            p.add_constraint(
                format!("C2[{w},{s}]"),
                [(a_index(n, w, s), int(1)), (a_index(n, s, w), int(-1))],
                Relation::Eq,
                int(0),
            );
        }
    }

    // Π_j κ(w'_j, w_j) κ(s'_j, s_j) = (q−1)^{|w∖w'|+|s∖s'|} (−1)^{|w∩w'|+|s∩s'|}
    let qm1 = BigInt::from(q - 1);
    let powers: Vec<BigRational> = (0..=2 * n).map(|k| big(Pow::pow(&qm1, k as u32))).collect();
    for w in 0..=full {
        for s in 0..=full {
            let mut coeffs = vec![(c_index(n, w, s), int(1))];
            for wp in 0..=full {
                for sp in 0..=full {
                    let up = ((w & !wp).count_ones() + (s & !sp).count_ones()) as usize;
                    let sign = ((w & wp).count_ones() + (s & sp).count_ones()) % 2;
                    let c = &powers[up];
                    if c.is_zero() {
                        continue;
                    }
                    coeffs.push((a_index(n, wp, sp), if sign == 0 { -c.clone() } else { c.clone() }));
                }
            }
            p.add_constraint(format!("C3[{w},{s}]"), coeffs, Relation::Eq, int(0));
        }
    }

    p.add_constraint("C5", [(a_index(n, 0, 0), int(1))], Relation::Eq, int(1));
    for w in 1..=full {
        let size = w.count_ones() as usize;
        if size <= params.beta1 {
            for s in 0..=full {
                p.add_constraint(format!("C6[{w},{s}]"), [(a_index(n, w, s), int(1))], Relation::Eq, int(0));
            }
        }
        if size <= params.beta2 {
            p.add_constraint(format!("C7[{w}]"), [(a_index(n, w, 0), int(1))], Relation::Eq, int(0));
        }
    }

    let neg_mass: Vec<(usize, BigRational)> = all_a.iter().map(|(j, _)| (*j, -big(qm1.clone()))).collect();
    if params.intra_locality_active(n) {
        for (i, gamma) in phi(n, params.gamma1) {
            let mut coeffs = neg_mass.clone();
            for w in 0..=full {
                if in_theta1(w as u32, i, gamma, params.r1) {
                    coeffs.push((c_index(n, w, 0), int(1)));
                }
            }
            p.add_constraint(format!("C8[{},{gamma}]", i + 1), coeffs, Relation::Ge, int(0));
        }
    }
    if params.inter_locality_active(n) {
        for (i, gamma) in phi(n, params.gamma2) {
            let mut coeffs = neg_mass.clone();
            for w in 0..=full {
                for s in 0..=full {
                    if in_theta2(w as u32, s as u32, i, gamma, params.r2, params.a) {
                        coeffs.push((c_index(n, w, s), int(1)));
                    }
                }
            }
            p.add_constraint(format!("C9[{},{gamma}]", i + 1), coeffs, Relation::Ge, int(0));
        }
    }

    p.add_constraint("C10", (0..=full).map(|w| (a_index(n, w, 0), int(1))), Relation::Eq, big(o1.clone()));
    Ok(p)
}

/// The point `A = Λ`, `C = raw transform of Λ` for a real code's enumerator.
pub fn lp1_point(table: &EnumeratorTable) -> Result<Vec<BigRational>> {
    let n = table.n();
    if n > LP1_MAX_N {
        return Err(Error::ProblemTooLarge(format!("LP1 point for N={n}")));
    }
    let cells = 1usize << (2 * n);
    let mut x = vec![BigRational::zero(); 2 * cells];
    for (w, s, count) in table.nonzero() {
        x[a_index(n, w as usize, s as usize)] = big(BigInt::from(count));
    }
    for (idx, v) in kappa_transform(table)?.into_iter().enumerate() {
        x[cells + idx] = big(BigInt::from(v));
    }
    Ok(x)
}

/// Average of `x` over all permutations of the node positions. Two pairs
/// share an orbit exactly when their `(|w∖s|, |w∩s|, |s∖w|)` agree, so this
/// is a per-orbit mean.
pub fn orbit_average(n: usize, x: &[BigRational]) -> Vec<BigRational> {
    use super::delta::Triple;
    use std::collections::HashMap;
    let cells = 1usize << (2 * n);
    let full = (1usize << n) - 1;
    let mut out = vec![BigRational::zero(); x.len()];
    for block in [0, cells] {
        let mut sums: HashMap<Triple, (BigRational, u64)> = HashMap::new();
        for idx in 0..cells {
            let t = Triple::of_masks((idx & full) as u64, (idx >> n) as u64);
            let e = sums.entry(t).or_insert_with(|| (BigRational::zero(), 0));
            e.0 += &x[block + idx];
            e.1 += 1;
        }
        for idx in 0..cells {
            let t = Triple::of_masks((idx & full) as u64, (idx >> n) as u64);
            let (sum, count) = &sums[&t];
            out[block + idx] = sum / big(BigInt::from(*count));
        }
    }
    out
}

pub(crate) fn power(q: u32, i: usize) -> BigInt {
    Pow::pow(&BigInt::from(q), i as u32)
}
