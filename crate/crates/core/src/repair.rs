//! Minimum distance, repair groups, intra- and inter-rack repair plans and
//! their transmission costs.
//!
//! Node and rack indices are 0-based in the API and 1-based in JSON and
//! error messages.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::code::{CodeSpec, CodewordMatrix};
use crate::error::{Error, Result};
use crate::gf::{support_mask, weight, Matrix};

/// A set of node (or rack) indices, at most 64 of them.
///
/// Ordered by size-agnostic lexicographic comparison of the sorted index
/// lists, so `{1,5} < {2,3}` and `{1} < {1,2}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_mask(mask: u64) -> Self {
        NodeSet(mask)
    }

    pub fn single(i: usize) -> Self {
        NodeSet(1 << i)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    /// Supports of vectors longer than 64 are not supported.
    pub fn support(v: &[u16]) -> Self {
        debug_assert!(v.len() <= 64);
        NodeSet(support_mask(v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn without(self, i: usize) -> Self {
        NodeSet(self.0 & !(1 << i))
    }

    pub fn union(self, o: NodeSet) -> Self {
        NodeSet(self.0 | o.0)
    }

    pub fn minus(self, o: NodeSet) -> Self {
        NodeSet(self.0 & !o.0)
    }

    pub fn is_disjoint(self, o: NodeSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_subset(self, o: NodeSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    /// Builds a set from 1-based indices, checking each is in `1..=bound`.
    pub fn from_one_based(indices: &[usize], bound: usize, what: &str) -> Result<Self> {
        let mut s = NodeSet::EMPTY;
        for &i in indices {
            if i == 0 || i > bound {
                return Err(Error::InvalidIndex(format!("{what} {i} is outside 1..={bound}")));
            }
            s.insert(i - 1);
        }
        Ok(s)
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets of `self` with `k` elements, in lexicographic order.
    pub fn subsets_of_size(self, k: usize) -> Vec<NodeSet> {
        let items: Vec<usize> = self.iter().collect();
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(k);
        fn rec(items: &[usize], start: usize, k: usize, pick: &mut Vec<usize>, out: &mut Vec<NodeSet>) {
            if pick.len() == k {
                out.push(pick.iter().fold(NodeSet::EMPTY, |mut s, &i| {
                    s.insert(i);
                    s
                }));
                return;
            }
            for idx in start..items.len() {
                pick.push(items[idx]);
                rec(items, idx + 1, k, pick, out);
                pick.pop();
            }
        }
        if k <= items.len() {
            rec(&items, 0, k, &mut pick, &mut out);
        }
        out
    }
}

impl Ord for NodeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for NodeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_one_based()).finish()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

fn one_based<S: Serializer>(i: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    (i + 1).serialize(s)
}

/// Minimum Hamming weight of a nonzero vector in the kernel of `h`;
/// `None` when the kernel is trivial.
pub fn min_distance(h: &Matrix) -> Result<Option<usize>> {
    let mut best: Option<usize> = None;
    h.kernel_basis().row_space()?.visit(|_, v| {
        let w = weight(v);
        if w > 0 && best.is_none_or(|b| w < b) {
            best = Some(w);
        }
    });
    Ok(best)
}

/// For each repair group `β` of node `j` in `⟨basis⟩`, the first row-space
/// vector `u` (scaled so `u_j = 1`) with `λ(u) ∖ {j} = β`.
fn groups_with_witness(basis: &Matrix, j: usize) -> Result<BTreeMap<NodeSet, Vec<u16>>> {
    let f = basis.field();
    let mut out: BTreeMap<NodeSet, Vec<u16>> = BTreeMap::new();
    basis.row_space()?.visit(|_, v| {
        if v[j] == 0 {
            return;
        }
        let beta = NodeSet::support(v).without(j);
        out.entry(beta).or_insert_with(|| {
            let inv = f.inv(v[j]).expect("nonzero");
            f.scale(inv, v)
        });
    });
    Ok(out)
}

fn check_node(j: usize, n: usize) -> Result<()> {
    if j >= n {
        return Err(Error::InvalidIndex(format!("node {} is outside 1..={n}", j + 1)));
    }
    Ok(())
}

/// `Ω(H, r, j)`: supports minus `j` of vectors in `⟨H, r⟩` that are
/// nonzero at `j`.
pub fn repair_groups(h: &Matrix, r: Option<&[u16]>, j: usize) -> Result<BTreeSet<NodeSet>> {
    check_node(j, h.cols())?;
    let basis = match r {
        Some(r) => h.with_row(r)?,
        None => h.clone(),
    };
    Ok(groups_with_witness(&basis, j)?.into_keys().collect())
}

/// Fixed choices for one node, overriding the default search order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pin {
    pub r: Option<Vec<u16>>,
    pub beta: Option<NodeSet>,
    pub tau: Option<NodeSet>,
}

/// Plan-selection policy. By default repair groups are chosen by size, then
/// lexicographically; inter-rack plans minimise `|τ|·|μ| + |β|`, then `|τ|`,
/// then `(β, τ, r)` lexicographically. Pins fix individual choices.
///
/// With `reduce_helpers`, helper racks read the lightest vector of the coset
/// `r + ⟨H⟩` instead of `r` itself. Every rack satisfies `H·X_mᵀ = 0`, so
/// the helper symbols are unchanged while `μ` may shrink.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepairPolicy {
    pub pins: BTreeMap<usize, Pin>,
    pub alpha: Option<NodeSet>,
    pub reduce_helpers: bool,
}

impl RepairPolicy {
    fn pin(&self, j: usize) -> Option<&Pin> {
        self.pins.get(&j)
    }
}

fn group_key(b: &NodeSet) -> (usize, NodeSet) {
    (b.len(), *b)
}

/// Regenerates `X[rack][j]` from surviving nodes of the same rack.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntraRepairPlan {
    #[serde(serialize_with = "one_based")]
    pub rack: usize,
    #[serde(serialize_with = "one_based")]
    pub j: usize,
    pub beta: NodeSet,
    /// `c[n]` multiplies `X[rack][n]`; zero outside `beta`.
    pub c: Vec<u16>,
}

pub fn plan_intra_repair(
    h: &Matrix,
    rack: usize,
    gamma: NodeSet,
    j: usize,
    policy: &RepairPolicy,
) -> Result<IntraRepairPlan> {
    check_node(j, h.cols())?;
    let f = h.field();
    let groups = groups_with_witness(h, j)?;
    let usable = |b: &NodeSet| b.is_disjoint(gamma);
    let chosen = match policy.pin(j).and_then(|p| p.beta) {
        Some(b) => {
            if !groups.contains_key(&b) {
                return Err(Error::Unrepairable {
                    rack: rack + 1,
                    j: j + 1,
                    reason: format!("pinned group {b} is not a repair group"),
                });
            }
            if !usable(&b) {
                return Err(Error::Unrepairable {
                    rack: rack + 1,
                    j: j + 1,
                    reason: format!("pinned group {b} meets the failed nodes"),
                });
            }
            b
        }
        None => {
            *groups.keys().filter(|b| usable(b)).min_by_key(|b| group_key(b)).ok_or(Error::NoLocalGroup { j: j + 1 })?
        }
    };
    let u = &groups[&chosen];
    let mut c = vec![0u16; h.cols()];
    for n in chosen.iter() {
        c[n] = f.neg(u[n]);
    }
    Ok(IntraRepairPlan { rack, j, beta: chosen, c })
}

/// Regenerates `X[rack][j]` from surviving nodes `β` of its own rack and
/// nodes `μ = λ(r)` of helper racks `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterRepairPlan {
    #[serde(serialize_with = "one_based")]
    pub rack: usize,
    #[serde(serialize_with = "one_based")]
    pub j: usize,
    pub r: Vec<u16>,
    pub mu: NodeSet,
    pub beta: NodeSet,
    pub tau: NodeSet,
    pub c: Vec<u16>,
    /// `d[m][n]` multiplies `X[m][n]`; zero outside `τ × μ`.
    pub d: Matrix,
    /// Weight of `r` in the decomposition `u = yH + a·r`.
    pub a: u16,
    /// The vector `g ∈ ⟨G⟩` with `g_rack = 1` and `λ(g) ∖ {rack} = τ`.
    pub g: Vec<u16>,
    /// The vector helper racks actually read, when it differs from `r`
    /// (see [`RepairPolicy::reduce_helpers`]); `μ` is its support.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub helper: Option<Vec<u16>>,
}

impl InterRepairPlan {
    /// The vector applied to each helper rack.
    pub fn read_vector(&self) -> &[u16] {
        self.helper.as_deref().unwrap_or(&self.r)
    }
}

/// Lightest vector of `r + ⟨h⟩`; ties go to the smaller support, then the
/// smaller vector.
fn lightest_in_coset(h: &Matrix, r: &[u16]) -> Result<Vec<u16>> {
    let f = h.field();
    let mut best: Option<(usize, NodeSet, Vec<u16>)> = None;
    h.row_space()?.visit(|_, v| {
        let w: Vec<u16> = r.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect();
        let s = NodeSet::support(&w);
        let key = (s.len(), s, w);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    Ok(best.map(|b| b.2).unwrap_or_else(|| r.to_vec()))
}

/// Projective representatives of `⟨K⟩ ∖ {0}`: first nonzero entry is 1.
fn projective_points(k: &Matrix) -> Result<Vec<Vec<u16>>> {
    let mut out = Vec::new();
    k.row_space()?.visit(|_, v| {
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v.to_vec());
        }
    });
    Ok(out)
}

fn in_row_space(m: &Matrix, v: &[u16]) -> Result<bool> {
    Ok(m.with_row(v)?.rank() == m.rank())
}

pub fn plan_inter_repair(
    spec: &CodeSpec,
    rack: usize,
    gamma: NodeSet,
    j: usize,
    policy: &RepairPolicy,
) -> Result<InterRepairPlan> {
    let (n, m) = (spec.nodes(), spec.racks());
    check_node(j, n)?;
    if rack >= m {
        return Err(Error::InvalidIndex(format!("rack {} is outside 1..={m}", rack + 1)));
    }
    let unrepairable = |reason: String| Error::Unrepairable { rack: rack + 1, j: j + 1, reason };
    let pin = policy.pin(j).cloned().unwrap_or_default();

    let candidates = match &pin.r {
        Some(r) => {
            if r.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "pinned r for node {} has {} entries, expected {n}",
                    j + 1,
                    r.len()
                )));
            }
            let r: Vec<u16> = r.iter().map(|&v| spec.field().reduce(v as i64)).collect();
            if !in_row_space(spec.k(), &r)? {
                return Err(unrepairable("pinned r is not in the row space of K".into()));
            }
            vec![r]
        }
        // r = 0 degenerates to an intra-rack repair
        None => std::iter::once(vec![0; n]).chain(projective_points(spec.k())?).collect(),
    };

    let helper_groups = groups_with_witness(spec.g(), rack)?;

    struct Choice {
        r: Vec<u16>,
        read: Vec<u16>,
        beta: NodeSet,
        u: Vec<u16>,
        tau: NodeSet,
    }
    type Key = (usize, usize, NodeSet, NodeSet, Vec<u16>);
    let mut best: Option<(Key, Choice)> = None;
    let mut saw_beta = false;
    for r in candidates {
        let read = if policy.reduce_helpers { lightest_in_coset(spec.h(), &r)? } else { r.clone() };
        let mu = NodeSet::support(&read);
        let groups = groups_with_witness(&spec.h().with_row(&r)?, j)?;
        let beta = match pin.beta {
            Some(b) if groups.contains_key(&b) && b.is_disjoint(gamma) => Some(b),
            Some(_) => None,
            None => groups.keys().filter(|b| b.is_disjoint(gamma)).min_by_key(|b| group_key(b)).copied(),
        };
        let Some(beta) = beta else { continue };
        saw_beta = true;
        let tau = if mu.is_empty() {
            Some(NodeSet::EMPTY)
        } else {
            match pin.tau {
                Some(t) if helper_groups.contains_key(&t) => Some(t),
                Some(_) => None,
                None => helper_groups.keys().min_by_key(|t| group_key(t)).copied(),
            }
        };
        let Some(tau) = tau else { continue };
        let key = (tau.len() * mu.len() + beta.len(), tau.len(), beta, tau, r.clone());
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            let u = groups[&beta].clone();
            best = Some((key, Choice { r, read, beta, u, tau }));
        }
    }
    let Some((_, choice)) = best else {
        let reason = if !saw_beta {
            "no r in the row space of K yields a repair group avoiding the failed nodes"
        } else {
            "no helper-rack set in the repair groups of G matches"
        };
        return Err(unrepairable(reason.into()));
    };

    let f = spec.field();
    let Choice { r, read, beta, u, tau } = choice;
    let mu = NodeSet::support(&read);
    let helper = (read != r).then(|| read.clone());
    let mut c = vec![0u16; n];
    for i in beta.iter() {
        c[i] = f.neg(u[i]);
    }
    // u = yH + a·r: the last unknown is a.
    let a = if mu.is_empty() {
        0
    } else {
        let sys = spec.h().with_row(&r)?.transpose();
        let sol = sys.solve(&u)?;
        *sol.particular.last().expect("r contributes one unknown")
    };
    let mut d = Matrix::zeros(f, m, n);
    let g = if tau.is_empty() && mu.is_empty() {
        let mut g = vec![0u16; m];
        g[rack] = 1;
        g
    } else {
        helper_groups[&tau].clone()
    };
    if a != 0 {
        for hr in tau.iter() {
            let z = f.neg(g[hr]);
            for i in mu.iter() {
                d.set(hr, i, f.mul(f.mul(a, z), read[i]));
            }
        }
    }
    Ok(InterRepairPlan { rack, j, r, mu, beta, tau, c, d, a, g, helper })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepairPlan {
    Intra(IntraRepairPlan),
    Inter(InterRepairPlan),
}

impl RepairPlan {
    pub fn j(&self) -> usize {
        match self {
            RepairPlan::Intra(p) => p.j,
            RepairPlan::Inter(p) => p.j,
        }
    }

    pub fn rack(&self) -> usize {
        match self {
            RepairPlan::Intra(p) => p.rack,
            RepairPlan::Inter(p) => p.rack,
        }
    }

    pub fn beta(&self) -> NodeSet {
        match self {
            RepairPlan::Intra(p) => p.beta,
            RepairPlan::Inter(p) => p.beta,
        }
    }

    /// Every symbol the plan reads, as `(rack, node)` pairs.
    pub fn inputs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self.beta().iter().map(|n| (self.rack(), n)).collect();
        if let RepairPlan::Inter(p) = self {
            for hr in p.tau.iter() {
                out.extend(p.mu.iter().map(|n| (hr, n)));
            }
        }
        out
    }
}

/// Stored symbols together with a presence mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservedCodeword {
    symbols: CodewordMatrix,
    present: Vec<bool>,
    nodes: usize,
}

impl ObservedCodeword {
    pub fn complete(x: CodewordMatrix) -> Self {
        let (rows, cols) = (x.0.rows(), x.0.cols());
        ObservedCodeword { symbols: x, present: vec![true; rows * cols], nodes: cols }
    }

    /// Erases nodes `failed` of `rack`; their values are zeroed.
    pub fn erase(x: &CodewordMatrix, rack: usize, failed: NodeSet) -> Self {
        let mut o = ObservedCodeword::complete(x.clone());
        for n in failed.iter() {
            o.present[rack * o.nodes + n] = false;
            o.symbols.set(rack, n, 0);
        }
        o
    }

    pub fn get(&self, rack: usize, node: usize) -> Option<u16> {
        self.present[rack * self.nodes + node].then(|| self.symbols.get(rack, node))
    }

    pub fn fill(&mut self, rack: usize, node: usize, v: u16) {
        self.present[rack * self.nodes + node] = true;
        self.symbols.set(rack, node, v);
    }

    pub fn is_complete(&self) -> bool {
        self.present.iter().all(|&p| p)
    }

    pub fn symbols(&self) -> &CodewordMatrix {
        &self.symbols
    }
}

/// Evaluates the plan's reconstruction formula.
pub fn execute_repair(observed: &ObservedCodeword, plan: &RepairPlan) -> Result<u16> {
    let f = observed.symbols.0.field();
    let read = |rack: usize, node: usize| {
        observed.get(rack, node).ok_or(Error::MissingHelperSymbol { rack: rack + 1, node: node + 1 })
    };
    let mut acc = 0u16;
    let (rack, beta, c) = match plan {
        RepairPlan::Intra(p) => (p.rack, p.beta, &p.c),
        RepairPlan::Inter(p) => (p.rack, p.beta, &p.c),
    };
    for n in beta.iter() {
        acc = f.add(acc, f.mul(c[n], read(rack, n)?));
    }
    if let RepairPlan::Inter(p) = plan {
        for hr in p.tau.iter() {
            for n in p.mu.iter() {
                acc = f.add(acc, f.mul(p.d.get(hr, n), read(hr, n)?));
            }
        }
    }
    Ok(acc)
}

/// Runs plans in order, writing each recovered symbol back so later plans
/// may read it.
pub fn execute_schedule(observed: &ObservedCodeword, plans: &[RepairPlan]) -> Result<ObservedCodeword> {
    let mut o = observed.clone();
    for p in plans {
        let v = execute_repair(&o, p)?;
        o.fill(p.rack(), p.j(), v);
    }
    Ok(o)
}

/// Failed nodes, all in one rack.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FailurePattern {
    #[serde(serialize_with = "one_based")]
    pub rack: usize,
    pub failed: NodeSet,
}

/// Actual transmissions next to their upper bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub theta_intra: usize,
    pub theta_inter: usize,
    pub bound_intra: usize,
    pub bound_inter: usize,
}

/// Transmission counts for a set of plans repairing `gamma`, of which
/// `alpha` are repaired intra-rack.
///
/// Actual counts: each helper rack sends the union of the `μ_j` it is asked
/// for within the rack and `dim⟨r_j⟩` symbols across racks; the failed rack
/// gathers every surviving `β_j` member once and delivers `|γ|` results.
/// Bounds use `τ = ∪ τ_j`.
pub fn cost_bounds(plans: &[RepairPlan], gamma: NodeSet, alpha: NodeSet) -> CostReport {
    let inter: Vec<&InterRepairPlan> = plans
        .iter()
        .filter_map(|p| match p {
            RepairPlan::Inter(p) if alpha.is_empty() || !alpha.contains(p.j) => Some(p),
            _ => None,
        })
        .collect();
    let beta_union = plans.iter().fold(NodeSet::EMPTY, |s, p| s.union(p.beta()));
    let mu_union = inter.iter().fold(NodeSet::EMPTY, |s, p| s.union(p.mu));
    let tau_union = inter.iter().fold(NodeSet::EMPTY, |s, p| s.union(p.tau));

    let r_dim = |ps: &[&&InterRepairPlan]| -> usize {
        let Some(first) = ps.first() else { return 0 };
        let f = first.d.field();
        let rows: Vec<Vec<u16>> = ps.iter().map(|p| p.read_vector().to_vec()).collect();
        Matrix::from_vectors(f, first.r.len(), &rows).map(|m| m.rank()).unwrap_or(0)
    };

    let mut theta_intra = beta_union.minus(gamma).len() + gamma.len();
    let mut theta_inter = 0;
    for hr in tau_union.iter() {
        let using: Vec<&&InterRepairPlan> = inter.iter().filter(|p| p.tau.contains(hr)).collect();
        theta_intra += using.iter().fold(NodeSet::EMPTY, |s, p| s.union(p.mu)).len();
        theta_inter += r_dim(&using);
    }
    let all: Vec<&&InterRepairPlan> = inter.iter().collect();
    CostReport {
        theta_intra,
        theta_inter,
        bound_intra: tau_union.len() * mu_union.len() + beta_union.len() + gamma.len(),
        bound_inter: tau_union.len() * r_dim(&all),
    }
}

/// A full repair of one failure pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepairSchedule {
    pub failure: FailurePattern,
    /// `Dist(H)`, `None` when `H` admits only the zero vector.
    pub dist: Option<usize>,
    /// Nodes repaired intra-rack.
    pub alpha: NodeSet,
    pub plans: Vec<RepairPlan>,
    pub cost: CostReport,
}

/// Repairs every failed node. Below `Dist(H)` failures all repairs are
/// intra-rack; otherwise `γ ∖ α` is repaired across racks first and the
/// `Dist(H) − 1` nodes of `α` are then repaired within the rack.
pub fn repair_all(spec: &CodeSpec, failure: FailurePattern, policy: &RepairPolicy) -> Result<RepairSchedule> {
    let FailurePattern { rack, failed: gamma } = failure;
    if rack >= spec.racks() {
        return Err(Error::InvalidIndex(format!("rack {} is outside 1..={}", rack + 1, spec.racks())));
    }
    if gamma.is_empty() {
        return Err(Error::InvalidSpec("no failed nodes".into()));
    }
    if gamma.iter().any(|j| j >= spec.nodes()) {
        return Err(Error::InvalidIndex(format!("failed nodes {gamma} exceed N = {}", spec.nodes())));
    }
    let dist = min_distance(spec.h())?;
    let h = spec.h();

    if dist.is_none_or(|d| gamma.len() < d) {
        let plans = gamma
            .iter()
            .map(|j| plan_intra_repair(h, rack, gamma, j, policy).map(RepairPlan::Intra))
            .collect::<Result<Vec<_>>>()?;
        let cost = cost_bounds(&plans, gamma, gamma);
        return Ok(RepairSchedule { failure, dist, alpha: gamma, plans, cost });
    }
    let local = dist.expect("finite distance") - 1;
    let alphas = match policy.alpha {
        Some(a) => {
            if a.len() != local || !a.is_subset(gamma) {
                return Err(Error::InvalidSpec(format!(
                    "alpha {a} must be a subset of the failed nodes of size {local}"
                )));
            }
            vec![a]
        }
        None => gamma.subsets_of_size(local),
    };

    let mut inter_cache: BTreeMap<usize, Result<InterRepairPlan>> = BTreeMap::new();
    let mut last_err = None;
    'alpha: for alpha in alphas {
        let mut plans = Vec::with_capacity(gamma.len());
        for j in gamma.minus(alpha).iter() {
            let planned = inter_cache.entry(j).or_insert_with(|| plan_inter_repair(spec, rack, gamma, j, policy));
            match planned {
                Ok(p) => plans.push(RepairPlan::Inter(p.clone())),
                Err(e) => {
                    last_err = Some(clone_err(e));
                    continue 'alpha;
                }
            }
        }
        for j in alpha.iter() {
            match plan_intra_repair(h, rack, alpha, j, policy) {
                Ok(p) => plans.push(RepairPlan::Intra(p)),
                Err(e) => {
                    last_err = Some(e);
                    continue 'alpha;
                }
            }
        }
        let cost = cost_bounds(&plans, gamma, alpha);
        return Ok(RepairSchedule { failure, dist, alpha, plans, cost });
    }
    Err(last_err.unwrap_or(Error::Unrepairable {
        rack: rack + 1,
        j: gamma.iter().next().map_or(0, |j| j + 1),
        reason: "no choice of intra-repaired subset admits a full schedule".into(),
    }))
}

fn clone_err(e: &Error) -> Error {
    match e {
        Error::Unrepairable { rack, j, reason } => Error::Unrepairable { rack: *rack, j: *j, reason: reason.clone() },
        other => Error::Unrepairable { rack: 0, j: 0, reason: other.to_string() },
    }
}

/// Failure scenario as read from JSON (1-based indices).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioDoc {
    pub rack: usize,
    pub failed: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pins: BTreeMap<String, PinDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reduce_helpers: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<usize>>,
}

impl ScenarioDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Checks indices against `spec` and converts to the internal form.
    pub fn resolve(&self, spec: &CodeSpec) -> Result<(FailurePattern, RepairPolicy)> {
        let (m, n) = (spec.racks(), spec.nodes());
        if self.rack == 0 || self.rack > m {
            return Err(Error::InvalidIndex(format!("rack {} is outside 1..={m}", self.rack)));
        }
        let failed = NodeSet::from_one_based(&self.failed, n, "node")?;
        if failed.is_empty() {
            return Err(Error::InvalidSpec("scenario lists no failed nodes".into()));
        }
        let mut policy = RepairPolicy { reduce_helpers: self.reduce_helpers, ..Default::default() };
        if let Some(a) = &self.alpha {
            policy.alpha = Some(NodeSet::from_one_based(a, n, "node")?);
        }
        for (key, p) in &self.pins {
            let j: usize =
                key.parse().map_err(|_| Error::InvalidIndex(format!("pin key {key:?} is not a node index")))?;
            if j == 0 || j > n {
                return Err(Error::InvalidIndex(format!("pinned node {j} is outside 1..={n}")));
            }
            let r = match &p.r {
                Some(r) if r.len() != n => {
                    return Err(Error::DimensionMismatch(format!(
                        "pinned r for node {j} has {} entries, expected {n}",
                        r.len()
                    )))
                }
                Some(r) => Some(r.iter().map(|&v| spec.field().reduce(v)).collect()),
                None => None,
            };
            let pin = Pin {
                r,
                beta: p.beta.as_deref().map(|b| NodeSet::from_one_based(b, n, "node")).transpose()?,
                tau: p.tau.as_deref().map(|t| NodeSet::from_one_based(t, m, "rack")).transpose()?,
            };
            policy.pins.insert(j - 1, pin);
        }
        Ok((FailurePattern { rack: self.rack - 1, failed }, policy))
    }
}
