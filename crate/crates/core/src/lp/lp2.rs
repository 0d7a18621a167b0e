//! The symmetry-reduced program over orbit variables `X_{d,e,f}` and
//! `Y_{d,e,f}`, `2·binom(N+3, 3)` variables.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::delta::{binom, delta1, delta2, delta3, Triple};
use super::lp1::check_q;
use super::problem::{big, int, LpProblem, Relation};
use crate::enumerator::CodeClassParams;
use crate::error::Result;

/// Lower summation limit of the single intra-locality row. `One` keeps the
/// weight-one term `w = {i}` that the unreduced family contains; `Two`
/// starts the sum at `d = 2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum D8Start {
    #[default]
    One,
    Two,
}

impl D8Start {
    fn first(self) -> usize {
        match self {
            D8Start::One => 1,
            D8Start::Two => 2,
        }
    }
}

pub struct Lp2 {
    pub problem: LpProblem,
    pub triples: Vec<Triple>,
}

impl Lp2 {
    pub fn x(&self, t: Triple) -> usize {
        self.triples.binary_search(&t).expect("valid triple")
    }

    pub fn y(&self, t: Triple) -> usize {
        self.triples.len() + self.x(t)
    }
}

pub fn build_lp2(n: usize, q: u32, params: &CodeClassParams, o1: &BigInt, start: D8Start) -> Result<Lp2> {
    check_q(q)?;
    params.validate(n)?;
    let triples = Triple::all(n);
    let nt = triples.len();
    let index: HashMap<Triple, usize> = triples.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let mut p = LpProblem::new();
    for t in &triples {
        p.add_var(format!("X_{}_{}_{}", t.d, t.e, t.f), true);
    }
    for t in &triples {
        p.add_var(format!("Y_{}_{}_{}", t.d, t.e, t.f), true);
    }
    let x = |t: &Triple| index[t];
    let y = |t: &Triple| nt + index[t];
    let weighted: Vec<(usize, BigRational)> = triples.iter().map(|t| (x(t), big(t.orbit_size(n)))).collect();
    p.set_objective(weighted.clone());

    for t in triples.iter().filter(|t| t.d < t.f) {
        p.add_constraint(
            format!("D2[{},{},{}]", t.d, t.e, t.f),
            [(x(t), int(1)), (x(&t.mirrored()), int(-1))],
            Relation::Eq,
            int(0),
        );
    }
    for t in &triples {
        let mut coeffs = vec![(y(t), int(1))];
        for tp in &triples {
            let c = delta1(*t, *tp, n, q);
            if !c.is_zero() {
                coeffs.push((x(tp), -big(c)));
            }
        }
        p.add_constraint(format!("D3[{},{},{}]", t.d, t.e, t.f), coeffs, Relation::Eq, int(0));
    }
    let origin = Triple::new(0, 0, 0);
    p.add_constraint("D5", [(x(&origin), int(1))], Relation::Eq, int(1));
    for t in &triples {
        let de = t.d + t.e;
        if de >= 1 && de <= params.beta1 {
            p.add_constraint(format!("D6[{},{},{}]", t.d, t.e, t.f), [(x(t), int(1))], Relation::Eq, int(0));
        }
        if t.e == 0 && t.f == 0 && t.d >= 1 && t.d <= params.beta2 {
            p.add_constraint(format!("D7[{}]", t.d), [(x(t), int(1))], Relation::Eq, int(0));
        }
    }

    let qm1 = int(q as i64 - 1);
    let neg_mass: Vec<(usize, BigRational)> = weighted.iter().map(|(j, c)| (*j, -(c * &qm1))).collect();
    if params.intra_locality_active(n) {
        let mut coeffs = neg_mass.clone();
        for d in start.first()..=params.r1 + 1 {
            let t = Triple::new(d, 0, 0);
            if d <= n {
                coeffs.push((y(&t), big(delta2(d, n, params.gamma1))));
            }
        }
        p.add_constraint("D8", coeffs, Relation::Ge, int(0));
    }
    if params.inter_locality_active(n) {
        let mut coeffs = neg_mass;
        for t in triples.iter().filter(|t| t.d + t.e <= params.r2 + 1 && t.e + t.f <= params.a) {
            coeffs.push((y(t), big(delta3(*t, n, params.gamma2))));
        }
        p.add_constraint("D9", coeffs, Relation::Ge, int(0));
    }
    p.add_constraint(
        "D10",
        (0..=n).map(|d| (x(&Triple::new(d, 0, 0)), big(binom(n as i64, d as i64)))),
        Relation::Eq,
        big(o1.clone()),
    );
    Ok(Lp2 { problem: p, triples })
}

/// Collapses an LP1 point that is constant on orbits to LP2 coordinates.
pub fn lp2_point_from_lp1(n: usize, lp2: &Lp2, x1: &[BigRational]) -> Vec<BigRational> {
    use super::lp1::{a_index, c_index};
    let mut out = vec![BigRational::zero(); 2 * lp2.triples.len()];
    for t in &lp2.triples {
        // representative: w = first d+e nodes, s = the e shared plus the next f
        let w = (1usize << (t.d + t.e)) - 1;
        let s = ((1usize << (t.e + t.f)) - 1) << t.d;
        out[lp2.x(*t)] = x1[a_index(n, w, s)].clone();
        out[lp2.y(*t)] = x1[c_index(n, w, s)].clone();
    }
    out
}
