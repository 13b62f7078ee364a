//! Calibration sweeps for the deterministic experiment configurations
//! shipped with the test suite: prints Monte Carlo error rates across
//! candidate seeds and the region-comparison gap at several grids.
//!
//! ```text
//! cargo run --release -p splitdec-core --example calibrate
//! ```

use splitdec_core::gaussian::{hk_strong_region, region_compare, sdrs_region, GaussianIC};
use splitdec_core::mcsim::{simulate_successive, CodebookSpec, DecodeOrder};
use splitdec_core::prob::{broken_typewriter, msb_channel, Channel, ProbVec};
use splitdec_core::split::{min_split_spec, RatePair};

fn main() {
    let ic = GaussianIC::figure1();
    let hk = hk_strong_region(&ic).unwrap();
    for grid in [11, 201, 401] {
        let sd = sdrs_region(&ic, grid, false).unwrap();
        let cmp = region_compare(&sd, &hk);
        println!(
            "region grid={grid}: contained={} max_gap={:.6} witness=({:.4}, {:.4})",
            cmp.contained, cmp.max_gap, cmp.witness.0, cmp.witness.1
        );
    }
    let sd = sdrs_region(&ic, 201, true).unwrap();
    let cmp = region_compare(&sd, &hk);
    println!("region grid=201 mirror: max_gap={:.6}", cmp.max_gap);

    let bsc = Channel::bsc(0.11).unwrap();
    let p2 = ProbVec::uniform_numeric(2);
    println!("\nBSC(0.11) unsplit R=0.25 trend, 2000 trials:");
    for seed in 1..=6u64 {
        let mut line = format!("  cb_seed={seed}:");
        let mut ok = true;
        let mut prev: Option<(f64, f64)> = None;
        for n in [8usize, 16, 24] {
            let spec = CodebookSpec::unsplit(n, 0.25, p2.clone(), seed).unwrap();
            let r =
                simulate_successive(&bsc, &spec, DecodeOrder::AThenB, 2000, seed + 100).unwrap();
            line.push_str(&format!(" n={n}: {:.4} (ci {:.4})", r.err_any, r.ci95_any));
            if let Some((pe, pci)) = prev {
                if r.err_any > pe + pci + r.ci95_any {
                    ok = false;
                }
            }
            prev = Some((r.err_any, r.ci95_any));
        }
        println!("{line}  non-increasing within ci: {ok}");
    }
    println!("\nBSC(0.11) unsplit R=0.9 n=16, 2000 trials:");
    for seed in 1..=6u64 {
        let spec = CodebookSpec::unsplit(16, 0.9, p2.clone(), seed).unwrap();
        let r = simulate_successive(&bsc, &spec, DecodeOrder::AThenB, 2000, seed + 200).unwrap();
        println!(
            "  cb_seed={seed}: err_any={:.4} (>= 0.5: {})",
            r.err_any,
            r.err_any >= 0.5
        );
    }

    println!("\nsplit codebook stage-b error gap, n=16, 2000 trials, rates (0.2708, 0.7291):");
    let p4 = ProbVec::uniform_numeric(4);
    let rates = RatePair::new(0.2708, 0.7291).unwrap();
    for seed in 1..=10u64 {
        let split = min_split_spec(&p4, 0.5).unwrap();
        let spec = CodebookSpec::split(16, rates, split, seed);
        let r1 = simulate_successive(
            &broken_typewriter(),
            &spec,
            DecodeOrder::AThenB,
            2000,
            seed + 300,
        )
        .unwrap();
        let r2 = simulate_successive(&msb_channel(), &spec, DecodeOrder::AThenB, 2000, seed + 300)
            .unwrap();
        let gap = r2.err_b - r1.err_b;
        let ci_sum = r1.ci95_b + r2.ci95_b;
        println!(
            "  seed={seed}: rx1 err_a={:.4} err_b={:.4} | rx2 err_a={:.4} err_b={:.4} | gap={gap:+.4} ci_sum={ci_sum:.4} pass={}",
            r1.err_a, r1.err_b, r2.err_a, r2.err_b, gap > ci_sum
        );
    }
}
