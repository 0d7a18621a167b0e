use num_rational::Ratio;
use proptest::prelude::*;
use rackcode::enumerator::{
    certify, dual_bruteforce, macwilliams_dual, rate_from_enumerator, support_enumerator, CodeClassParams,
};
use rackcode::repair::{plan_inter_repair, plan_intra_repair, NodeSet, Pin, RepairPolicy};
use rackcode::{CodeSpec, Field, Matrix, TwoRackCode};

fn matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(0..q as u16, cols), rows)
        .prop_map(move |r| Matrix::from_vectors(Field::new(q).unwrap(), cols, &r).unwrap())
}

fn hk(max_n: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
    (prop_oneof![Just(2u32), Just(3)], 1..=max_n)
        .prop_flat_map(|(q, n)| (Just(q), Just(n), 0..=n, 0..=n))
        .prop_flat_map(|(q, n, s1, s2)| (matrix(q, s1, n), matrix(q, s2, n)))
}

/// Pairs with at most `N` rows in total, so independence is likely.
fn hk_narrow(max_n: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
    (prop_oneof![Just(2u32), Just(3)], 1..=max_n)
        .prop_flat_map(|(q, n)| (Just(q), Just(n), 0..=n))
        .prop_flat_map(|(q, n, s1)| (Just(q), Just(n), Just(s1), 0..=n - s1))
        .prop_flat_map(|(q, n, s1, s2)| (matrix(q, s1, n), matrix(q, s2, n)))
}

fn params(n: usize) -> impl Strategy<Value = CodeClassParams> {
    (0..=n, 0..n, 0..n, 0..=n, 0..n, 0..n, 0..=n).prop_map(|(beta1, gamma1, r1, beta2, gamma2, r2, a)| {
        CodeClassParams { beta1, gamma1, r1, beta2, gamma2, r2, a }
    })
}

fn two_rack_spec(h: &Matrix, k: &Matrix) -> CodeSpec {
    let f = h.field();
    let g = Matrix::from_rows(f, 2, &[[1, -1]]).unwrap();
    CodeSpec::new(f, 2, h.cols(), h.clone(), k.clone(), g).unwrap()
}

fn all_nodes(n: usize) -> NodeSet {
    NodeSet::from_mask((1u64 << n) - 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn macwilliams_matches_bruteforce((h, k) in hk(6)) {
        let code = TwoRackCode::new(h.clone(), k.clone()).unwrap();
        let table = support_enumerator(&code);
        let dual = macwilliams_dual(&table).unwrap();
        prop_assert_eq!(dual.nonzero(), dual_bruteforce(&h, &k).unwrap().nonzero());
        prop_assert_eq!(macwilliams_dual(&dual).unwrap().nonzero(), table.nonzero());
    }

    #[test]
    fn zero_y_mass_counts_the_x_code((h, k) in hk_narrow(6)) {
        let n = h.cols();
        let independent = h.stack(&k).unwrap().rank() == h.rows() + k.rows();
        prop_assume!(independent);
        let table = support_enumerator(&TwoRackCode::new(h.clone(), k.clone()).unwrap());
        let q = h.field().q() as u128;
        prop_assert_eq!(table.x_only_total(), q.pow((n - h.rows() - k.rows()) as u32));
    }

    #[test]
    fn rate_from_enumerator_matches_code_rate((h, k) in hk(5)) {
        let spec = two_rack_spec(&h, &k);
        let code = TwoRackCode::from_spec(&spec).unwrap();
        let from_table = rate_from_enumerator(&support_enumerator(&code), 2, 1).unwrap();
        prop_assert_eq!(from_table, spec.rate().exact);
        prop_assert_eq!(spec.rate().exact, Ratio::new(spec.dimension() as i64, 2 * h.cols() as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// What a passing certificate promises is built by the repair engine.
    #[test]
    fn certified_properties_are_constructible(((h, k), p) in hk(5).prop_flat_map(|(h, k)| {
        let n = h.cols();
        (Just((h, k)), params(n))
    })) {
        let n = h.cols();
        prop_assume!(n >= 2);
        let code = TwoRackCode::new(h.clone(), k.clone()).unwrap();
        let report = certify(&code, &p).unwrap();
        let spec = two_rack_spec(&h, &k);
        let default = RepairPolicy::default();
        let holds = |id: u8| report.property(id).active && report.property(id).passed;

        if holds(3) {
            for size in 1..=p.beta1 {
                for gamma in all_nodes(n).subsets_of_size(size) {
                    for j in gamma.iter() {
                        prop_assert!(plan_intra_repair(&h, 0, gamma, j, &default).is_ok(), "intra {} {}", gamma, j + 1);
                    }
                }
            }
        }
        if holds(4) {
            for i in 0..n {
                for others in all_nodes(n).without(i).subsets_of_size(p.gamma1) {
                    let gamma = others.union(NodeSet::single(i));
                    let plan = plan_intra_repair(&h, 0, gamma, i, &default);
                    prop_assert!(plan.as_ref().is_ok_and(|pl| pl.beta.len() <= p.r1), "locality {} {}", gamma, i + 1);
                }
            }
        }
        if holds(5) {
            for size in 1..=p.beta2 {
                for gamma in all_nodes(n).subsets_of_size(size) {
                    for j in gamma.iter() {
                        prop_assert!(plan_inter_repair(&spec, 0, gamma, j, &default).is_ok(), "inter {} {}", gamma, j + 1);
                    }
                }
            }
        }
        if holds(6) {
            let rs: Vec<Vec<u16>> = k.row_space().unwrap().collect();
            for i in 0..n {
                for others in all_nodes(n).without(i).subsets_of_size(p.gamma2) {
                    let gamma = others.union(NodeSet::single(i));
                    let found = rs.iter().any(|r| {
                        let mut policy = RepairPolicy { reduce_helpers: true, ..Default::default() };
                        policy.pins.insert(i, Pin { r: Some(r.clone()), ..Default::default() });
                        plan_inter_repair(&spec, 0, gamma, i, &policy)
                            .is_ok_and(|pl| pl.beta.len() <= p.r2 && pl.mu.len() <= p.a)
                    });
                    prop_assert!(found, "inter locality {} {}", gamma, i + 1);
                }
            }
        }
    }
}
