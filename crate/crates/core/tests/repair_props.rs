use proptest::prelude::*;
use rackcode::repair::{
    execute_repair, execute_schedule, min_distance, plan_inter_repair, plan_intra_repair, repair_all, repair_groups,
    FailurePattern, NodeSet, ObservedCodeword, RepairPlan, RepairPolicy,
};
use rackcode::{CodeSpec, Field, Matrix};

fn matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(0..q as u16, cols), rows)
        .prop_map(move |r| Matrix::from_vectors(Field::new(q).unwrap(), cols, &r).unwrap())
}

fn parity(max_n: usize) -> impl Strategy<Value = Matrix> {
    (prop_oneof![Just(2u32), Just(3)], 3..=max_n).prop_flat_map(|(q, n)| (1..n).prop_flat_map(move |s| matrix(q, s, n)))
}

/// Multi-rack specs small enough to enumerate their codebook.
fn spec() -> impl Strategy<Value = CodeSpec> {
    (prop_oneof![Just(2u32), Just(3)], 2..=3usize, 3..=5usize)
        .prop_flat_map(|(q, m, n)| {
            (1..n, 1..n, 1..m).prop_flat_map(move |(s1, s2, l)| {
                (matrix(q, s1, n), matrix(q, s2, n), matrix(q, l, m))
                    .prop_map(move |(h, k, g)| CodeSpec::new(h.field(), m, n, h, k, g).unwrap())
            })
        })
        .prop_filter("codebook too large to enumerate", |s| s.dimension() <= 10)
}

fn row_space(h: &Matrix) -> Vec<Vec<u16>> {
    h.row_space().unwrap().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn groups_have_row_space_witnesses(h in parity(7), j in 0usize..7) {
        let j = j % h.cols();
        let space = row_space(&h);
        for beta in repair_groups(&h, None, j).unwrap() {
            let witness = space.iter().any(|u| u[j] != 0 && NodeSet::support(u).without(j) == beta);
            prop_assert!(witness, "no witness for {}", beta);
        }
        // and every witness-bearing support shows up as a group or contains one
        let groups = repair_groups(&h, None, j).unwrap();
        for u in space.iter().filter(|u| u[j] != 0) {
            let b = NodeSet::support(u).without(j);
            prop_assert!(groups.iter().any(|g| g.is_subset(b)));
        }
    }

    #[test]
    fn intra_repair_below_distance(h in parity(7)) {
        let n = h.cols();
        let Some(dist) = min_distance(&h).unwrap() else { return Ok(()) };
        let all = NodeSet::from_mask((1u64 << n) - 1);
        for size in 1..dist {
            for gamma in all.subsets_of_size(size) {
                for j in gamma.iter() {
                    let plan = plan_intra_repair(&h, 0, gamma, j, &RepairPolicy::default());
                    prop_assert!(plan.is_ok(), "gamma {} node {}: {:?}", gamma, j + 1, plan.err());
                    prop_assert!(plan.unwrap().beta.is_disjoint(gamma));
                }
            }
        }
    }

    #[test]
    fn plans_recover_every_codeword(spec in spec(), rack in 0usize..3, mask in 1u64..32, reduce in any::<bool>()) {
        let rack = rack % spec.racks();
        let failed = NodeSet::from_mask(mask & ((1 << spec.nodes()) - 1));
        prop_assume!(!failed.is_empty());
        let policy = RepairPolicy { reduce_helpers: reduce, ..Default::default() };
        let Ok(schedule) = repair_all(&spec, FailurePattern { rack, failed }, &policy) else {
            return Ok(());
        };
        prop_assert!(schedule.cost.theta_intra <= schedule.cost.bound_intra);
        prop_assert!(schedule.cost.theta_inter <= schedule.cost.bound_inter);
        for x in spec.enumerate_codebook().unwrap() {
            let o = ObservedCodeword::erase(&x, rack, failed);
            let done = execute_schedule(&o, &schedule.plans).unwrap();
            prop_assert_eq!(done.symbols(), &x);
        }
    }

    #[test]
    fn inter_plans_cancel_helper_terms(spec in spec(), rack in 0usize..3, mask in 1u64..32, j in 0usize..5, reduce in any::<bool>()) {
        let (n, f) = (spec.nodes(), spec.field());
        let rack = rack % spec.racks();
        let j = j % n;
        let failed = NodeSet::from_mask(mask & ((1 << n) - 1)).union(NodeSet::single(j));
        let policy = RepairPolicy { reduce_helpers: reduce, ..Default::default() };
        let Ok(plan) = plan_inter_repair(&spec, rack, failed, j, &policy) else { return Ok(()) };
        prop_assert!(plan.mu.len() <= NodeSet::support(&plan.r).len());
        prop_assert_eq!(plan.g[rack], 1);
        prop_assert!(plan.beta.is_disjoint(failed));
        for x in spec.enumerate_codebook().unwrap() {
            // Σ_m g_m (X_m · r) vanishes on every codeword; helpers reading
            // a reduced vector see the same symbols
            for m in 0..spec.racks() {
                prop_assert_eq!(f.dot(x.rack(m), &plan.r), f.dot(x.rack(m), plan.read_vector()));
            }
            let total = (0..spec.racks()).fold(0u16, |acc, m| {
                let xr = f.dot(x.rack(m), &plan.r);
                f.add(acc, f.mul(plan.g[m], xr))
            });
            prop_assert_eq!(total, 0);
            let o = ObservedCodeword::erase(&x, rack, failed);
            prop_assert_eq!(execute_repair(&o, &RepairPlan::Inter(plan.clone())).unwrap(), x.get(rack, j));
        }
    }
}
