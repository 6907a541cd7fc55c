mod common;

use common::*;
use politrigon::search::angles_to_scene;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn side_count_and_score_survive_similarities(s in scene_strategy(4), g in similarity_strategy()) {
        check_similarity(&s, &g)?;
    }

    #[test]
    fn inscribed_scenes_survive_similarities(c in config_strategy(4), g in similarity_strategy()) {
        check_similarity(&angles_to_scene(&c).unwrap(), &g)?;
    }

    #[test]
    fn scene_text_round_trips(s in scene_strategy(6)) {
        check_round_trip(&s)?;
    }

    #[test]
    fn inscribed_scene_text_round_trips(c in config_strategy(5)) {
        check_round_trip(&angles_to_scene(&c).unwrap())?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn seeded_search_is_reproducible(n in 1usize..=3, seed in any::<u64>()) {
        check_search_determinism(n, seed)?;
    }
}

#[test]
fn generators_are_deterministic() {
    assert!(generators_deterministic());
}
