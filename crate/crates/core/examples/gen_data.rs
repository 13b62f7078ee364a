//! Regenerates the JSON fixtures shipped in the repository's data/
//! directory. Run from the workspace root:
//!
//! ```text
//! cargo run -p splitdec-core --example gen_data
//! ```

use splitdec_core::io::{channel_to_json, discrete_ic_to_json, probvec_to_json};
use splitdec_core::prob::{broken_typewriter, msb_channel, Channel, ProbVec};
use splitdec_core::switchsplit::{search_demo_fixture, FIXTURE_SEARCH_MARGIN, FIXTURE_SEARCH_SEED};
use std::fs;

fn main() {
    fs::create_dir_all("data").expect("create data dir");
    fs::write(
        "data/uniform4.json",
        probvec_to_json(&ProbVec::uniform_numeric(4)),
    )
    .expect("write");
    fs::write(
        "data/typewriter.json",
        channel_to_json(&broken_typewriter()),
    )
    .expect("write");
    fs::write("data/msb.json", channel_to_json(&msb_channel())).expect("write");
    fs::write(
        "data/bsc11.json",
        channel_to_json(&Channel::bsc(0.11).expect("valid crossover")),
    )
    .expect("write");
    let (idx, ic) = search_demo_fixture(FIXTURE_SEARCH_SEED, 10_000, FIXTURE_SEARCH_MARGIN)
        .expect("search succeeds");
    println!("switch fixture found at candidate index {idx}");
    fs::write("data/switch_fixture.json", discrete_ic_to_json(&ic)).expect("write");
    println!(
        "wrote data/uniform4.json, typewriter.json, msb.json, bsc11.json, switch_fixture.json"
    );
}
