//! Rate upper bound from the optimum `O*(i)` at `O₁ = q^i`, `i = 0..N`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use super::lp1::{build_lp1, power};
use super::lp2::{build_lp2, D8Start};
use super::problem::{ratio_string, LpStatus};
use super::simplex::simplex_solve;
use crate::enumerator::CodeClassParams;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Program {
    Lp1,
    Lp2(D8Start),
    /// Both programs; rows record whether they agree.
    Both(D8Start),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub i: usize,
    pub status: LpStatus,
    pub o_star: Option<BigRational>,
    pub bound: Option<f64>,
    /// Set with [`Program::Both`]: LP1 and LP2 reached the same status and value.
    pub agree: Option<bool>,
}

impl Serialize for BoundRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            i: usize,
            status: LpStatus,
            #[serde(rename = "O_star")]
            o_star: Option<String>,
            bound: Option<f64>,
            #[serde(skip_serializing_if = "Option::is_none")]
            agree: Option<bool>,
        }
        Out {
            i: self.i,
            status: self.status,
            o_star: self.o_star.as_ref().map(ratio_string),
            bound: self.bound,
            agree: self.agree,
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateBound {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub q: u32,
    pub params: CodeClassParams,
    pub rows: Vec<BoundRow>,
    /// Largest per-row bound; `None` if no `i` is feasible.
    pub best: Option<f64>,
    pub best_i: Option<usize>,
}

/// Natural log of a positive big integer, good to double precision.
fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().expect("64-bit prefix").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log_q r` for positive rational `r`, evaluated in floating point.
pub fn log_q(r: &BigRational, q: u32) -> f64 {
    assert!(r.is_positive(), "log of non-positive value");
    (ln_big(r.numer()) - ln_big(r.denom())) / (q as f64).ln()
}

/// `i/N + (M−L)/(MN)·(log_q O* − 2i)`.
pub fn rate_bound_value(i: usize, o_star: &BigRational, n: usize, m: usize, l: usize, q: u32) -> f64 {
    let (nf, mf, lf) = (n as f64, m as f64, l as f64);
    i as f64 / nf + (mf - lf) / (mf * nf) * (log_q(o_star, q) - 2.0 * i as f64)
}

fn solve_one(
    program: Program,
    n: usize,
    q: u32,
    params: &CodeClassParams,
    o1: &BigInt,
) -> Result<(LpStatus, Option<BigRational>, Option<bool>)> {
    let lp2 = |start| -> Result<_> {
        let s = simplex_solve(&build_lp2(n, q, params, o1, start)?.problem)?;
        Ok((s.status, s.value))
    };
    Ok(match program {
        Program::Lp1 => {
            let s = simplex_solve(&build_lp1(n, q, params, o1)?)?;
            (s.status, s.value, None)
        }
        Program::Lp2(start) => {
            let (st, v) = lp2(start)?;
            (st, v, None)
        }
        Program::Both(start) => {
            let a = simplex_solve(&build_lp1(n, q, params, o1)?)?;
            let (st, v) = lp2(start)?;
            let agree = a.status == st && a.value == v;
            (st, v, Some(agree))
        }
    })
}

pub fn rate_upper_bound(
    n: usize,
    m: usize,
    l: usize,
    q: u32,
    params: &CodeClassParams,
    program: Program,
) -> Result<RateBound> {
    if m == 0 || l > m {
        return Err(Error::InvalidParams(format!("need 0 ≤ L ≤ M and M ≥ 1, got M={m}, L={l}")));
    }
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let (status, o_star, agree) = solve_one(program, n, q, params, &power(q, i))?;
        let bound = o_star.as_ref().map(|o| rate_bound_value(i, o, n, m, l, q));
        rows.push(BoundRow { i, status, o_star, bound, agree });
    }
    let best =
        rows.iter().filter_map(|r| r.bound.map(|b| (b, r.i))).fold(
            None,
            |acc: Option<(f64, usize)>, (b, i)| match acc {
                Some((v, _)) if v >= b => acc,
                _ => Some((b, i)),
            },
        );
    Ok(RateBound { n, m, l, q, params: *params, rows, best: best.map(|b| b.0), best_i: best.map(|b| b.1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::problem::int;

    #[test]
    fn logs() {
        assert!((log_q(&int(8), 2) - 3.0).abs() < 1e-12);
        assert!((log_q(&BigRational::new(1.into(), 9.into()), 3) + 2.0).abs() < 1e-12);
        let huge = BigRational::from_integer(BigInt::from(3).pow(2000u32));
        assert!((log_q(&huge, 3) - 2000.0).abs() < 1e-9);
    }

    #[test]
    fn unconstrained_bound_is_one() {
        let r = rate_upper_bound(3, 2, 1, 2, &CodeClassParams::default(), Program::Lp2(D8Start::One)).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.rows[3].o_star, Some(int(64)));
        assert!((r.best.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(r.best_i, Some(3));
    }

    #[test]
    fn full_resilience_leaves_only_zero() {
        let params = CodeClassParams { beta2: 3, ..Default::default() };
        let r = rate_upper_bound(3, 2, 1, 2, &params, Program::Both(D8Start::One)).unwrap();
        assert_eq!(r.rows[0].status, LpStatus::Optimal);
        assert!(r.rows[1..].iter().all(|row| row.status == LpStatus::Infeasible));
        assert!(r.rows.iter().all(|row| row.agree == Some(true)));
        assert_eq!(r.best_i, Some(0));
    }

    #[test]
    fn json_rows() {
        let row = BoundRow {
            i: 2,
            status: LpStatus::Optimal,
            o_star: Some(BigRational::new(1088.into(), 77.into())),
            bound: Some(0.5),
            agree: None,
        };
        let v = serde_json::to_value(&row).unwrap();
        assert_eq!(v, serde_json::json!({"i": 2, "status": "optimal", "O_star": "1088/77", "bound": 0.5}));
    }
}
