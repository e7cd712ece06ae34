use hetcong::atomic::{best_response_dynamics, find_pne, is_pne, poa_atomic, Order, Outcome};
use hetcong::bounds::generators::{gen_fig1, gen_fig2, gen_fig4, gen_fig6};
use hetcong::bounds::{mediant_partition_check, poa_root, root_polynomial};
use hetcong::nonatomic::{poa_nonatomic, verify_wardrop, NeConfig, PoaConfig};
use hetcong::tolerance::DEFAULT_PROFILE_CAP;
use hetcong::{EdgeDelaySpec, Instance, Monomial, Poa, PolynomialDelay, Routing};
use proptest::prelude::*;

/// Up to three parallel links and two commodities; unused slots are ignored.
#[derive(Debug, Clone)]
struct Parallel {
    k: usize,
    links: usize,
    theta: u32,
    coeffs: Vec<f64>,
    constants: Vec<f64>,
    demands: Vec<f64>,
}

impl Parallel {
    fn routing(&self) -> Routing {
        let mut builder = Instance::builder().nodes(["s", "t"]);
        for e in 0..self.links {
            let terms = (0..self.k)
                .map(|j| Monomial::pure(self.k, j, self.coeffs[e * 2 + j], self.theta).unwrap())
                .collect();
            let delay = PolynomialDelay::new(self.k, terms, self.constants[e]).unwrap();
            builder = builder.edge(format!("e{e}"), "s", "t", EdgeDelaySpec::shared(delay));
        }
        for i in 0..self.k {
            builder = builder.commodity("s", "t", self.demands[i]);
        }
        Routing::new(builder.build().unwrap()).unwrap()
    }
}

fn parallel(max_k: usize, max_theta: u32) -> impl Strategy<Value = Parallel> {
    (
        1..=max_k,
        2..=3usize,
        1..=max_theta,
        prop::collection::vec(0.5..4.0f64, 6),
        prop::collection::vec(prop_oneof![Just(0.0), 0.0..3.0f64], 3),
        prop::collection::vec(0.5..2.0f64, 2),
    )
        .prop_map(|(k, links, theta, coeffs, constants, demands)| Parallel {
            k,
            links,
            theta,
            coeffs,
            constants,
            demands,
        })
}

fn quick() -> PoaConfig {
    PoaConfig {
        ne: NeConfig {
            max_iter: 4_000,
            ..NeConfig::default()
        },
        random_seeds: 3,
        ..PoaConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reported_equilibria_pass_independent_verification(p in parallel(2, 2)) {
        let routing = p.routing();
        let result = poa_nonatomic(&routing, &quick()).unwrap();
        if let Some(ne) = &result.worst_ne {
            let again = verify_wardrop(&routing, &ne.flow, NeConfig::default().eps).unwrap();
            prop_assert!(again.converged);
            prop_assert!((again.cost - ne.cost).abs() <= 1e-9 * ne.cost.max(1.0));
            prop_assert!(result.so.cost <= ne.cost + 1e-9 * ne.cost.max(1.0));
        }
    }

    #[test]
    fn nonatomic_search_is_deterministic(p in parallel(2, 2)) {
        let routing = p.routing();
        prop_assert_eq!(poa_nonatomic(&routing, &quick()).unwrap(), poa_nonatomic(&routing, &quick()).unwrap());
    }

    #[test]
    fn single_commodity_affine_respects_pigou(p in parallel(1, 1)) {
        let result = poa_nonatomic(&p.routing(), &quick()).unwrap();
        if let Poa::Finite(poa) = result.poa {
            prop_assert!(poa <= 4.0 / 3.0 + 1e-3, "PoA {}", poa);
        }
    }

    #[test]
    fn dynamics_stop_only_at_enumerated_equilibria(p in parallel(2, 1), start in prop::collection::vec(0..3usize, 2)) {
        let routing = p.routing();
        let pne = find_pne(&routing).unwrap();
        prop_assert!(pne.iter().all(|profile| is_pne(&routing, profile)));
        let start: Vec<usize> = start[..p.k].iter().map(|&s| s % p.links).collect();
        let trace = best_response_dynamics(&routing, &start, Order::RoundRobin, 1_000).unwrap();
        if trace.outcome == Outcome::ReachedPne {
            let end = trace.last();
            prop_assert!(pne.iter().any(|profile| profile.choices == end.choices));
        }
        let atomic = poa_atomic(&routing, DEFAULT_PROFILE_CAP).unwrap();
        prop_assert_eq!(atomic.equilibria, pne.len());
    }

    #[test]
    fn generators_round_trip_through_json(a in 1.0..20.0f64, theta in 1..4u32, r in 0.5..3.0f64, k in 2..5usize) {
        for instance in [
            gen_fig1(a, theta, r).unwrap(),
            gen_fig2(k, theta, a).unwrap(),
            gen_fig4(a).unwrap(),
            gen_fig6(a).unwrap(),
        ] {
            prop_assert_eq!(Instance::from_json(&instance.to_json()).unwrap(), instance);
        }
    }
}

proptest! {
    #[test]
    fn mediant_holds_for_singletons_and_pairs(
        pairs in prop::collection::vec((0.0..100.0f64, 1e-3..100.0f64), 1..16),
        split in prop::collection::vec(any::<bool>(), 16),
    ) {
        let mut partition = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            if split[i] && i + 1 < pairs.len() {
                partition.push(vec![i, i + 1]);
                i += 2;
            } else {
                partition.push(vec![i]);
                i += 1;
            }
        }
        prop_assert!(mediant_partition_check(&pairs, &partition).unwrap());
    }

    #[test]
    fn root_lies_in_its_bracket(t in 1.0..10.0f64, theta in 1..=5u32) {
        let x = poa_root(t, theta, 1e-10).unwrap();
        prop_assert!(x >= t && x <= 2.0 * t);
        prop_assert!(root_polynomial(x, t, theta).abs() <= 1e-8);
    }
}
