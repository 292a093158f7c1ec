mod common;

use common::{binary_game, small_game};
use pot_core::game::{expected_sender_payoff, posterior_from_structure};
use pot_core::numeric::{int, sum};
use pot_core::persuasion::{concavify_binary, solve_op, u_hat};
use pot_core::tsb::{babbling_pbe, solve_cs};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn concavification_matches_lp(game in binary_game()) {
        let op = solve_op(&game).unwrap();
        prop_assert_eq!(concavify_binary(&game).unwrap(), op.value);
    }

    #[test]
    fn persuasion_dominates(game in small_game()) {
        let op = solve_op(&game).unwrap();
        prop_assert!(op.is_obedient(&game));
        prop_assert!(op.joint.entries().all(|z| *z >= int(0)));
        prop_assert_eq!(sum(&op.joint.entries().cloned().collect::<Vec<_>>()), int(1));
        prop_assert_eq!(&expected_sender_payoff(&game, &op.pi, &op.a).unwrap(), &op.value);

        let (no_info, _) = u_hat(&game, game.prior()).unwrap();
        prop_assert!(no_info <= op.value);
        prop_assert!(babbling_pbe(&game, 1).sender_preferred <= op.value);

        let cs = solve_cs(&game).unwrap();
        for sol in cs.tsb_max.iter().chain(&cs.tsb_min) {
            prop_assert!(sol.value <= op.value);
        }
    }

    #[test]
    fn recommendations_are_sender_preferred_best_replies(game in small_game()) {
        let op = solve_op(&game).unwrap();
        let beliefs = posterior_from_structure(&game, &op.pi).unwrap();
        for (n, &k) in op.recommended.iter().enumerate() {
            let lambda = pot_core::SimplexVector::new(beliefs.beliefs.matrix().column(n)).unwrap();
            let v = game.receiver_payoff();
            let best = (0..game.num_actions())
                .map(|j| pot_core::numeric::dot(v.row(j), lambda.entries()))
                .max()
                .unwrap();
            prop_assert_eq!(pot_core::numeric::dot(v.row(k), lambda.entries()), best);
        }
    }
}
