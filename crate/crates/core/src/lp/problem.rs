use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    fn holds(self, lhs: &BigRational, rhs: &BigRational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    /// Sparse row; a variable may appear at most once.
    pub coeffs: Vec<(usize, BigRational)>,
    pub rel: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn lhs(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, (j, a)| acc + a * &x[*j])
    }
}

/// A maximisation problem over exact rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LpProblem {
    pub names: Vec<String>,
    pub nonneg: Vec<bool>,
    pub objective: Vec<(usize, BigRational)>,
    pub constraints: Vec<Constraint>,
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn big(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

impl LpProblem {
    pub fn new() -> Self {
        LpProblem::default()
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn add_var(&mut self, name: impl Into<String>, nonneg: bool) -> usize {
        self.names.push(name.into());
        self.nonneg.push(nonneg);
        self.names.len() - 1
    }

    /// Adds a row, merging repeated variables and dropping zero terms.
    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        coeffs: impl IntoIterator<Item = (usize, BigRational)>,
        rel: Relation,
        rhs: BigRational,
    ) {
        let coeffs = merge_terms(coeffs);
        debug_assert!(coeffs.iter().all(|(j, _)| *j < self.names.len()));
        self.constraints.push(Constraint { name: name.into(), coeffs, rel, rhs });
    }

    pub fn set_objective(&mut self, coeffs: impl IntoIterator<Item = (usize, BigRational)>) {
        self.objective = merge_terms(coeffs);
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn objective_value(&self, x: &[BigRational]) -> BigRational {
        self.objective.iter().fold(BigRational::zero(), |acc, (j, c)| acc + c * &x[*j])
    }

    /// Name of the first constraint or bound `x` violates, if any.
    pub fn first_violation(&self, x: &[BigRational]) -> Option<String> {
        if x.len() != self.num_vars() {
            return Some(format!("assignment has {} values for {} variables", x.len(), self.num_vars()));
        }
        if let Some(j) = (0..x.len()).find(|&j| self.nonneg[j] && x[j].is_negative()) {
            return Some(format!("{} >= 0", self.names[j]));
        }
        self.constraints.iter().find(|c| !c.rel.holds(&c.lhs(x), &c.rhs)).map(|c| c.name.clone())
    }

    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        self.first_violation(x).is_none()
    }

    /// CPLEX LP text format.
    pub fn to_lp_format(&self) -> String {
        let mut out = String::from("\\ exact rational coefficients are written as num/den\nMaximize\n obj:");
        write_terms(&mut out, &self.objective, &self.names);
        out.push_str("\nSubject To\n");
        for (i, c) in self.constraints.iter().enumerate() {
            let _ = write!(out, " {}:", lp_name(&c.name, i));
            write_terms(&mut out, &c.coeffs, &self.names);
            let _ = writeln!(out, " {} {}", c.rel.symbol(), c.rhs);
        }
        out.push_str("Bounds\n");
        for (j, name) in self.names.iter().enumerate() {
            if !self.nonneg[j] {
                let _ = writeln!(out, " {name} free");
            }
        }
        out.push_str("End\n");
        out
    }
}

fn lp_name(name: &str, i: usize) -> String {
    let cleaned: String =
        name.chars().map(|c| if c.is_ascii_alphanumeric() || "_.".contains(c) { c } else { '_' }).collect();
    format!("r{i}_{cleaned}")
}

fn write_terms(out: &mut String, terms: &[(usize, BigRational)], names: &[String]) {
    if terms.is_empty() {
        out.push_str(" 0");
        return;
    }
    for (j, c) in terms {
        let sign = if c.is_negative() { '-' } else { '+' };
        let _ = write!(out, " {sign} {} {}", c.abs(), names[*j]);
    }
}

fn merge_terms(coeffs: impl IntoIterator<Item = (usize, BigRational)>) -> Vec<(usize, BigRational)> {
    let mut map = std::collections::BTreeMap::<usize, BigRational>::new();
    for (j, c) in coeffs {
        *map.entry(j).or_insert_with(BigRational::zero) += c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal value; `None` unless optimal.
    pub value: Option<BigRational>,
    pub assignment: Vec<BigRational>,
    pub pivots: usize,
}

pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Serialize for LpSolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            status: LpStatus,
            value: Option<String>,
            assignment: Vec<String>,
            pivots: usize,
            #[serde(skip)]
            _p: std::marker::PhantomData<&'a ()>,
        }
        Out {
            status: self.status,
            value: self.value.as_ref().map(ratio_string),
            assignment: self.assignment.iter().map(ratio_string).collect(),
            pivots: self.pivots,
            _p: std::marker::PhantomData,
        }
        .serialize(s)
    }
}
