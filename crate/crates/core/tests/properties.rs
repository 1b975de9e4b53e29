//! Randomised checks against brute-force oracles on small dual complexes.

mod support;

use proptest::prelude::*;
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn median_is_the_unique_interval_meet(x in complex(), s in prop::collection::vec(any::<usize>(), 3)) {
        support::median_is_the_unique_interval_meet(&x, &s)?;
    }

    #[test]
    fn hull_is_the_least_halfspace_intersection(x in complex(), s in prop::collection::vec(any::<usize>(), 1..4)) {
        support::hull_is_the_least_halfspace_intersection(&x, &s)?;
    }

    #[test]
    fn gate_is_the_unique_nearest_point(x in complex(), s in prop::collection::vec(any::<usize>(), 1..4), t in any::<usize>()) {
        support::gate_is_the_unique_nearest_point(&x, &s, t)?;
    }

    #[test]
    fn inseparable_closure_laws(x in complex(), a in any::<u32>(), b in any::<u32>()) {
        support::inseparable_closure_laws(&x, a, b)?;
    }

    #[test]
    fn restriction_quotient_preserves_crossing(x in complex(), a in any::<u32>()) {
        support::restriction_quotient_preserves_crossing(&x, a)?;
    }

    #[test]
    fn boundary_cliques_span_simplices(x in complex(), theta in 0usize..2) {
        support::boundary_cliques_span_simplices(&x, theta)?;
    }
}

#[test]
fn dual_round_trip() {
    support::dual_round_trip();
}

#[test]
fn products_are_detected_and_rebuilt() {
    support::products_are_detected_and_rebuilt();
}
