//! Provenance of the shipped switch-demo fixture: the deterministic
//! seed-indexed search must reproduce data/switch_fixture.json exactly.

use splitdec_core::io::{discrete_ic_to_json, parse_discrete_ic};
use splitdec_core::switchsplit::{search_demo_fixture, FIXTURE_SEARCH_MARGIN, FIXTURE_SEARCH_SEED};
use std::path::Path;

#[test]
fn shipped_fixture_matches_the_deterministic_search() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/switch_fixture.json");
    let shipped = parse_discrete_ic(&std::fs::read_to_string(path).unwrap()).unwrap();
    let (idx, searched) = search_demo_fixture(FIXTURE_SEARCH_SEED, 10_000, FIXTURE_SEARCH_MARGIN)
        .expect("search succeeds");
    assert_eq!(idx, 2, "first accepted candidate index changed");
    assert_eq!(
        discrete_ic_to_json(&searched),
        discrete_ic_to_json(&shipped),
        "shipped fixture drifted from the search output; regenerate with \
         `cargo run -p splitdec-core --example gen_data`"
    );
}
