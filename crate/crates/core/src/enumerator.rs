//! Support enumerators of two-rack codes, the MacWilliams transform and
//! certification of the code-class properties.
//!
//! A support pair `(w, s)` is stored as two bitmasks over the `N` node
//! positions (bit `i-1` is node `i`). Dense tables index cell `w | s << N`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::code::{two_rack_parity, TwoRackCode};
use crate::error::{Error, Result};
use crate::gf::{support_mask, Matrix};

/// Largest `N` stored densely (`4^N` cells).
pub const DENSE_MAX_N: usize = 10;

/// The MacWilliams kernel: `1` if `v = 0`, `q − 1` if `u = 0, v = 1`,
/// `−1` otherwise.
pub fn kappa(q: u32, u: bool, v: bool) -> i64 {
    match (u, v) {
        (_, false) => 1,
        (false, true) => q as i64 - 1,
        (true, true) => -1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Cells {
    Dense(Vec<u128>),
    Sparse(BTreeMap<(u32, u32), u128>),
}

/// Counts indexed by support pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratorTable {
    n: usize,
    q: u32,
    cells: Cells,
}

impl EnumeratorTable {
    pub fn new(n: usize, q: u32) -> Self {
        assert!(n <= 16, "support pairs use 32-bit masks");
        let cells = if n <= DENSE_MAX_N { Cells::Dense(vec![0; 1 << (2 * n)]) } else { Cells::Sparse(BTreeMap::new()) };
        EnumeratorTable { n, q, cells }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    fn index(&self, w: u32, s: u32) -> usize {
        (w as usize) | (s as usize) << self.n
    }

    pub fn get(&self, w: u32, s: u32) -> u128 {
        match &self.cells {
            Cells::Dense(v) => v[self.index(w, s)],
            Cells::Sparse(m) => m.get(&(w, s)).copied().unwrap_or(0),
        }
    }

    pub fn set(&mut self, w: u32, s: u32, count: u128) {
        let idx = self.index(w, s);
        match &mut self.cells {
            Cells::Dense(v) => v[idx] = count,
            Cells::Sparse(m) => {
                if count == 0 {
                    m.remove(&(w, s));
                } else {
                    m.insert((w, s), count);
                }
            }
        }
    }

    pub fn add(&mut self, w: u32, s: u32, count: u128) {
        let c = self.get(w, s);
        self.set(w, s, c + count);
    }

    /// Nonzero cells in `(s, w)`-major order for dense tables and `(w, s)`
    /// order for sparse ones.
    pub fn nonzero(&self) -> Vec<(u32, u32, u128)> {
        match &self.cells {
            Cells::Dense(v) => {
                let mask = (1u32 << self.n) - 1;
                v.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i as u32 & mask, (i >> self.n) as u32, c))
                    .collect()
            }
            Cells::Sparse(m) => m.iter().map(|(&(w, s), &c)| (w, s, c)).collect(),
        }
    }

    pub fn total(&self) -> u128 {
        match &self.cells {
            Cells::Dense(v) => v.iter().sum(),
            Cells::Sparse(m) => m.values().sum(),
        }
    }

    /// `Σ_w Λ(w, ∅)`.
    pub fn x_only_total(&self) -> u128 {
        (0..1u32 << self.n).map(|w| self.get(w, 0)).sum()
    }

    fn dense(&self) -> Result<Vec<u128>> {
        match &self.cells {
            Cells::Dense(v) => Ok(v.clone()),
            Cells::Sparse(_) => Err(Error::ProblemTooLarge(format!(
                "MacWilliams transform needs N <= {DENSE_MAX_N}, got N = {}",
                self.n
            ))),
        }
    }
}

impl Serialize for EnumeratorTable {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            w: Vec<usize>,
            s: Vec<usize>,
            count: u128,
        }
        let bits = |m: u32| (0..self.n).filter(|&i| m >> i & 1 == 1).map(|i| i + 1).collect();
        let entries: Vec<Entry> =
            self.nonzero().into_iter().map(|(w, s, count)| Entry { w: bits(w), s: bits(s), count }).collect();
        let mut st = ser.serialize_struct("EnumeratorTable", 4)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("total", &self.total())?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Tallies supports of every vector in the row space of `basis`, whose
/// `2N` columns are `(x, y)`.
fn tally_span(basis: &Matrix, n: usize) -> Result<EnumeratorTable> {
    let mut t = EnumeratorTable::new(n, basis.field().q() as u32);
    let low = (1u64 << n) - 1;
    basis.row_space()?.visit(|_, v| {
        let m = support_mask(v);
        t.add((m & low) as u32, (m >> n) as u32, 1);
    });
    Ok(t)
}

pub fn support_enumerator(code: &TwoRackCode) -> EnumeratorTable {
    let n = code.len();
    let mut t = EnumeratorTable::new(n, code.field().q() as u32);
    for (x, y) in &code.codebook {
        t.add(support_mask(x) as u32, support_mask(y) as u32, 1);
    }
    t
}

/// Support enumerator straight from `(H, K)` without materialising the
/// codebook.
pub fn support_enumerator_of(h: &Matrix, k: &Matrix) -> Result<EnumeratorTable> {
    let basis = two_rack_parity(h, k)?.kernel_basis();
    tally_span(&basis, h.cols())
}

/// Enumerates the dual code spanned by `(h,0), (0,h), (k,−k)`.
pub fn dual_bruteforce(h: &Matrix, k: &Matrix) -> Result<EnumeratorTable> {
    tally_span(&two_rack_parity(h, k)?, h.cols())
}

/// The unnormalised transform `Σ_{w',s'} Λ(w',s') Π_j κ(w'_j,w_j) κ(s'_j,s_j)`,
/// computed one bit position at a time.
pub fn kappa_transform(table: &EnumeratorTable) -> Result<Vec<i128>> {
    let q = table.q as i128;
    let overflow = || Error::ProblemTooLarge("MacWilliams transform overflows i128".into());
    let mut v: Vec<i128> =
        table.dense()?.into_iter().map(|c| i128::try_from(c).map_err(|_| overflow())).collect::<Result<_>>()?;
    for bit in 0..2 * table.n {
        let step = 1usize << bit;
        for base in (0..v.len()).step_by(2 * step) {
            for i in base..base + step {
                let (x0, x1) = (v[i], v[i + step]);
                v[i] = x0.checked_add(x1).ok_or_else(overflow)?;
                v[i + step] = (q - 1).checked_mul(x0).and_then(|t| t.checked_sub(x1)).ok_or_else(overflow)?;
            }
        }
    }
    Ok(v)
}

/// `C_{w,s} = |C|·Λ_{C⊥}(w,s)`, the raw transform.
pub fn scaled_dual(table: &EnumeratorTable) -> Result<EnumeratorTable> {
    let raw = kappa_transform(table)?;
    from_raw(table, raw, 1)
}

/// `Λ_{C⊥}` from `Λ_C`. Fails with `NonIntegerDual` when some entry is
/// negative or not divisible by `|C|`.
pub fn macwilliams_dual(table: &EnumeratorTable) -> Result<EnumeratorTable> {
    let total =
        i128::try_from(table.total()).map_err(|_| Error::ProblemTooLarge("enumerator total overflows i128".into()))?;
    if total == 0 {
        return Err(Error::NonIntegerDual { w: 0, s: 0 });
    }
    let raw = kappa_transform(table)?;
    from_raw(table, raw, total)
}

fn from_raw(like: &EnumeratorTable, raw: Vec<i128>, divisor: i128) -> Result<EnumeratorTable> {
    let n = like.n;
    let mask = (1u32 << n) - 1;
    let mut out = EnumeratorTable::new(n, like.q);
    for (i, x) in raw.into_iter().enumerate() {
        let (w, s) = (i as u32 & mask, (i >> n) as u32);
        if x < 0 || x % divisor != 0 {
            return Err(Error::NonIntegerDual { w, s });
        }
        out.set(w, s, (x / divisor) as u128);
    }
    Ok(out)
}

/// Integer `log_q(x)` when `x` is an exact power of `q`.
fn exact_log(q: u32, mut x: u128) -> Option<u32> {
    let mut e = 0;
    while x > 1 {
        if !x.is_multiple_of(q as u128) {
            return None;
        }
        x /= q as u128;
        e += 1;
    }
    (x == 1).then_some(e)
}

/// Rate of an `M`-rack code with `L` helper rows, from its two-rack
/// enumerator: `log_q(O₁)/N + (M−L)/(MN)·(log_q |C| − 2 log_q O₁)` with
/// `O₁ = Σ_w Λ(w, ∅)`. `None` if the sums are not powers of `q`.
pub fn rate_from_enumerator(table: &EnumeratorTable, m: usize, l: usize) -> Option<Ratio<i64>> {
    let (n, q) = (table.n as i64, table.q);
    let e1 = exact_log(q, table.x_only_total())? as i64;
    let et = exact_log(q, table.total())? as i64;
    let (m, l) = (m as i64, l as i64);
    Some(Ratio::new(e1, n) + Ratio::new((m - l) * (et - 2 * e1), m * n))
}

/// Parameters of the code class: intra resilience `beta1`, intra locality
/// `(gamma1, r1)`, inter resilience `beta2`, inter locality
/// `(gamma2, r2, a)`.
///
/// A locality property with `r = 0` is treated as absent: it would demand a
/// weight-one dual word through every node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeClassParams {
    pub beta1: usize,
    #[serde(rename = "Gamma1")]
    pub gamma1: usize,
    pub r1: usize,
    pub beta2: usize,
    #[serde(rename = "Gamma2")]
    pub gamma2: usize,
    pub r2: usize,
    pub a: usize,
}

impl CodeClassParams {
    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |what: &str, v: usize, max: usize| Err(Error::InvalidParams(format!("{what} = {v} exceeds {max}")));
        if n == 0 {
            return Err(Error::InvalidParams("N must be positive".into()));
        }
        if self.beta1 > n {
            return bad("beta1", self.beta1, n);
        }
        if self.beta2 > n {
            return bad("beta2", self.beta2, n);
        }
        if self.r1 > n - 1 {
            return bad("r1", self.r1, n - 1);
        }
        if self.r2 > n - 1 {
            return bad("r2", self.r2, n - 1);
        }
        if self.a > n {
            return bad("a", self.a, n);
        }
        Ok(())
    }

    /// Whether the intra-locality constraint is imposed for length `n`.
    pub fn intra_locality_active(&self, n: usize) -> bool {
        self.r1 >= 1 && self.gamma1 < n
    }

    pub fn inter_locality_active(&self, n: usize) -> bool {
        self.r2 >= 1 && self.gamma2 < n
    }
}

/// All `(i, γ)` with `i ∉ γ` and `|γ| = size`, as `(i, mask)`.
pub fn phi(n: usize, size: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for gamma in 0u32..1 << n {
        if gamma.count_ones() as usize != size {
            continue;
        }
        for i in (0..n).filter(|&i| gamma >> i & 1 == 0) {
            out.push((i, gamma));
        }
    }
    out
}

/// `w ∈ Θ₁(i, γ, r₁)`.
pub fn in_theta1(w: u32, i: usize, gamma: u32, r1: usize) -> bool {
    w >> i & 1 == 1 && w & gamma == 0 && w.count_ones() as usize <= r1 + 1
}

/// `(w, s) ∈ Θ₂(i, γ, r₂, a)`.
pub fn in_theta2(w: u32, s: u32, i: usize, gamma: u32, r2: usize, a: usize) -> bool {
    in_theta1(w, i, gamma, r2) && s.count_ones() as usize <= a
}

/// A pair of supports, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportWitness {
    pub w: Vec<usize>,
    pub s: Vec<usize>,
    pub count: u128,
}

/// A locality witness: node `i` and failed set `γ` whose dual sum falls
/// short of `q − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityWitness {
    pub i: usize,
    pub gamma: Vec<usize>,
    pub sum: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Support(SupportWitness),
    Locality(LocalityWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub property: u8,
    pub name: &'static str,
    pub passed: bool,
    /// False when the property is switched off by the parameters.
    pub active: bool,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub params: CodeClassParams,
    pub passed: bool,
    pub properties: Vec<PropertyVerdict>,
}

impl CertificationReport {
    pub fn property(&self, id: u8) -> &PropertyVerdict {
        self.properties.iter().find(|p| p.property == id).expect("properties 2 to 6 are always reported")
    }
}

fn bits1(n: usize, m: u32) -> Vec<usize> {
    (0..n).filter(|&i| m >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Checks symmetry, both resilience and both locality properties of a
/// two-rack code.
pub fn certify(code: &TwoRackCode, params: &CodeClassParams) -> Result<CertificationReport> {
    let n = code.len();
    params.validate(n)?;
    let table = support_enumerator(code);
    let dual = dual_bruteforce(&code.h, &code.k)?;
    Ok(certify_tables(&table, &dual, params))
}

/// Certification from precomputed code and dual enumerators.
pub fn certify_tables(
    table: &EnumeratorTable,
    dual: &EnumeratorTable,
    params: &CodeClassParams,
) -> CertificationReport {
    let (n, q) = (table.n, table.q);
    let nonzero = table.nonzero();
    let support =
        |w: u32, s: u32, count: u128| Some(Witness::Support(SupportWitness { w: bits1(n, w), s: bits1(n, s), count }));
    let verdict = |property, name, active, witness: Option<Witness>, note| PropertyVerdict {
        property,
        name,
        passed: witness.is_none(),
        active,
        witness,
        note,
    };

    // Cells are visited in index order so the first witness is the one
    // with the smallest (s, w).
    let sym = nonzero.iter().find(|&&(w, s, c)| table.get(s, w) != c).and_then(|&(w, s, c)| support(w, s, c));
    let res1 = nonzero
        .iter()
        .find(|&&(w, _, _)| (1..=params.beta1).contains(&(w.count_ones() as usize)))
        .and_then(|&(w, s, c)| support(w, s, c));
    let res2 = nonzero
        .iter()
        .find(|&&(w, s, _)| s == 0 && (1..=params.beta2).contains(&(w.count_ones() as usize)))
        .and_then(|&(w, s, c)| support(w, s, c));

    let dual_nonzero = dual.nonzero();
    let need = q as u128 - 1;
    let locality = |size: usize, accept: &dyn Fn(u32, u32, usize, u32) -> bool| {
        phi(n, size).into_iter().find_map(|(i, gamma)| {
            let sum: u128 = dual_nonzero.iter().filter(|&&(w, s, _)| accept(w, s, i, gamma)).map(|&(_, _, c)| c).sum();
            (sum < need).then(|| Witness::Locality(LocalityWitness { i: i + 1, gamma: bits1(n, gamma), sum }))
        })
    };
    let act1 = params.intra_locality_active(n);
    let loc1 = if act1 { locality(params.gamma1, &|w, s, i, g| s == 0 && in_theta1(w, i, g, params.r1)) } else { None };
    let act2 = params.inter_locality_active(n);
    let loc2 =
        if act2 { locality(params.gamma2, &|w, s, i, g| in_theta2(w, s, i, g, params.r2, params.a)) } else { None };

    let properties = vec![
        verdict(2, "symmetry", true, sym, None),
        verdict(3, "intra-rack resilience", params.beta1 > 0, res1, None),
        verdict(4, "intra-rack locality", act1, loc1, (!act1).then_some("inactive: requires r1 >= 1 and Gamma1 < N")),
        verdict(5, "inter-rack resilience", params.beta2 > 0, res2, None),
        verdict(
            6,
            "inter-rack locality",
            act2,
            loc2,
            Some(if act2 {
                "ranges over all (i, gamma) with i not in gamma and |gamma| = Gamma2"
            } else {
                "inactive: requires r2 >= 1 and Gamma2 < N"
            }),
        ),
    ];
    CertificationReport { params: *params, passed: properties.iter().all(|p| p.passed), properties }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn gf(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn example_hk() -> (Matrix, Matrix) {
        let f = gf(2);
        let h = Matrix::from_rows(
            f,
            8,
            &[[1, 1, 1, 0, 1, 0, 0, 0], [1, 1, 0, 1, 0, 1, 0, 0], [0, 1, 1, 1, 0, 0, 1, 0], [1, 0, 1, 1, 0, 0, 0, 1]],
        )
        .unwrap();
        let k = Matrix::from_rows(f, 8, &[[1, 1, 0, 1, 1, 0, 0, 1], [0, 1, 1, 0, 1, 0, 1, 1]]).unwrap();
        (h, k)
    }

    /// Direct evaluation of the defining sum, one output cell at a time.
    fn naive_transform(t: &EnumeratorTable) -> Vec<i128> {
        let n = t.n();
        let q = t.q();
        let cells = 1usize << (2 * n);
        (0..cells)
            .map(|out| {
                (0..cells)
                    .map(|inp| {
                        let c = t.get(inp as u32 & ((1 << n) - 1), (inp >> n) as u32) as i128;
                        let k: i64 = (0..2 * n).map(|b| kappa(q, inp >> b & 1 == 1, out >> b & 1 == 1)).product();
                        c * k as i128
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn kappa_cases() {
        for q in [2, 3, 5] {
            assert_eq!(kappa(q, false, false), 1);
            assert_eq!(kappa(q, true, false), 1);
        }
        assert_eq!(kappa(2, false, true), 1);
        assert_eq!(kappa(3, false, true), 2);
        assert_eq!(kappa(3, true, true), -1);
    }

    #[test]
    fn zero_and_full_codes() {
        let f = gf(2);
        // zero code: H = identity
        let h = Matrix::identity(f, 2);
        let k = Matrix::zeros(f, 0, 2);
        let code = TwoRackCode::new(h.clone(), k.clone()).unwrap();
        let t = support_enumerator(&code);
        assert_eq!(t.nonzero(), vec![(0, 0, 1)]);
        let d = macwilliams_dual(&t).unwrap();
        assert_eq!(d.total(), 16);
        for w in 0..4 {
            for s in 0..4 {
                assert_eq!(d.get(w, s), 1);
            }
        }
        // full space
        let full = TwoRackCode::new(Matrix::zeros(f, 0, 2), k).unwrap();
        let t = support_enumerator(&full);
        assert_eq!(t.total(), 16);
        assert_eq!(macwilliams_dual(&t).unwrap().nonzero(), vec![(0, 0, 1)]);
    }

    #[test]
    fn explicit_small_code() {
        let f = gf(2);
        let code =
            TwoRackCode::new(Matrix::from_rows(f, 2, &[[1, 1]]).unwrap(), Matrix::from_rows(f, 2, &[[1, 0]]).unwrap())
                .unwrap();
        let t = support_enumerator(&code);
        assert_eq!(t.nonzero(), vec![(0, 0, 1), (3, 3, 1)]);
    }

    #[test]
    fn dual_bruteforce_small() {
        let f = gf(2);
        let e = Matrix::zeros(f, 0, 2);
        assert_eq!(dual_bruteforce(&e, &e).unwrap().nonzero(), vec![(0, 0, 1)]);
        let h = Matrix::from_rows(f, 2, &[[1, 1]]).unwrap();
        let d = dual_bruteforce(&h, &e).unwrap();
        assert_eq!(d.nonzero(), vec![(0, 0, 1), (3, 0, 1), (0, 3, 1), (3, 3, 1)]);
    }

    #[test]
    fn example_code_tables() {
        let (h, k) = example_hk();
        let code = TwoRackCode::new(h.clone(), k.clone()).unwrap();
        let t = support_enumerator(&code);
        assert_eq!(t.total(), 64);
        assert_eq!(t, support_enumerator_of(&h, &k).unwrap());
        let d = dual_bruteforce(&h, &k).unwrap();
        assert_eq!(d.total(), 1024);
        assert_eq!(macwilliams_dual(&t).unwrap(), d);
        assert_eq!(macwilliams_dual(&d).unwrap(), t);
        for (w, s, c) in t.nonzero() {
            assert_eq!(t.get(s, w), c);
        }
    }

    #[test]
    fn fast_transform_matches_naive() {
        let f = gf(3);
        let h = Matrix::from_rows(f, 3, &[[1, 2, 0]]).unwrap();
        let k = Matrix::from_rows(f, 3, &[[0, 1, 1]]).unwrap();
        let t = support_enumerator_of(&h, &k).unwrap();
        assert_eq!(kappa_transform(&t).unwrap(), naive_transform(&t));
    }

    #[test]
    fn non_code_table_is_rejected() {
        let mut t = EnumeratorTable::new(1, 2);
        t.set(0, 0, 1);
        t.set(1, 0, 1);
        t.set(0, 1, 1);
        assert!(matches!(macwilliams_dual(&t), Err(Error::NonIntegerDual { .. })));
    }

    #[test]
    fn rate_reconstruction() {
        let (h, k) = example_hk();
        let t = support_enumerator_of(&h, &k).unwrap();
        assert_eq!(t.x_only_total(), 4);
        assert_eq!(rate_from_enumerator(&t, 2, 1), Some(Ratio::new(6, 16)));
    }

    #[test]
    fn certify_parity_code() {
        let f = gf(2);
        let code = TwoRackCode::new(Matrix::from_rows(f, 4, &[[1, 1, 1, 1]]).unwrap(), Matrix::zeros(f, 0, 4)).unwrap();
        let p = CodeClassParams { beta1: 1, ..Default::default() };
        let r = certify(&code, &p).unwrap();
        assert!(r.property(2).passed);
        assert!(r.property(3).passed);
        assert!(r.passed);
        let r = certify(&code, &CodeClassParams { beta1: 2, ..p }).unwrap();
        assert!(!r.property(3).passed);
    }

    #[test]
    fn certify_example_code_resilience_edge() {
        let (h, k) = example_hk();
        let code = TwoRackCode::new(h, k).unwrap();
        let ok = certify(&code, &CodeClassParams { beta1: 3, ..Default::default() }).unwrap();
        assert!(ok.property(3).passed);
        let bad = certify(&code, &CodeClassParams { beta1: 4, ..Default::default() }).unwrap();
        let v = bad.property(3);
        assert!(!v.passed);
        match &v.witness {
            Some(Witness::Support(w)) => assert_eq!(w.w.len(), 4),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(certify(&code, &CodeClassParams::default()).unwrap().passed);
    }

    #[test]
    fn params_validation() {
        assert!(CodeClassParams { r1: 4, ..Default::default() }.validate(4).is_err());
        assert!(CodeClassParams { a: 4, ..Default::default() }.validate(4).is_ok());
        assert!(CodeClassParams { beta2: 5, ..Default::default() }.validate(4).is_err());
    }

    #[test]
    fn phi_counts() {
        // N·binom(N−1, Γ)
        assert_eq!(phi(4, 1).len(), 12);
        assert_eq!(phi(5, 2).len(), 30);
        assert_eq!(phi(3, 0).len(), 3);
        assert_eq!(phi(3, 3).len(), 0);
    }

    #[test]
    fn json_export() {
        let f = gf(2);
        let code =
            TwoRackCode::new(Matrix::from_rows(f, 2, &[[1, 1]]).unwrap(), Matrix::from_rows(f, 2, &[[1, 0]]).unwrap())
                .unwrap();
        let v = serde_json::to_value(support_enumerator(&code)).unwrap();
        assert_eq!(v["N"], 2);
        assert_eq!(v["total"], 2);
        assert_eq!(v["entries"][1], serde_json::json!({"w":[1,2],"s":[1,2],"count":1}));
    }

    #[test]
    fn sparse_tables_above_dense_limit() {
        let mut t = EnumeratorTable::new(11, 2);
        t.add(5, 3, 2);
        t.add(5, 3, 1);
        assert_eq!(t.get(5, 3), 3);
        assert_eq!(t.total(), 3);
        assert!(macwilliams_dual(&t).is_err());
    }
}
