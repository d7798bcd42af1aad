use bernkit::identities::{carlitz_residual, generalized_residual};
use bernkit::umbral::replay_proof;
use bernkit::{BernoulliCache, IdentityParams};
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generalized_identity_beyond_the_grids(m in 0usize..40, n in 0usize..40, q in 0usize..12) {
        let pr = IdentityParams::new(m, n, q);
        let cache = BernoulliCache::up_to(pr.max_bernoulli_index());
        prop_assert!(generalized_residual(pr, &cache).unwrap().is_zero());
        if q == 0 {
            prop_assert!(carlitz_residual(m, n, &cache).unwrap().is_zero());
        }
    }

    #[test]
    fn proof_replay_holds(m in 0usize..18, n in 0usize..18, q in 0usize..9) {
        let pr = IdentityParams::new(m, n, q);
        let cache = BernoulliCache::up_to(pr.max_bernoulli_index());
        let trace = replay_proof(pr, &cache).unwrap();
        prop_assert!(trace.holds(), "{}", pr);
        prop_assert_eq!(trace.is_degenerate(), m == n && q.is_multiple_of(2));
    }
}
