#!/usr/bin/env python3
"""Smoke test for the splitdec Python extension.

Builds the extension with cargo, loads it, and exercises the main
operations end to end. Run from anywhere:

    python3 python/smoke_test.py
"""
import json
import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_extension() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "splitdec-py"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "libsplitdec.so"
    if not built.exists():  # e.g. macOS
        built = ROOT / "target" / "release" / "libsplitdec.dylib"
    stage = Path(tempfile.mkdtemp(prefix="splitdec-py-"))
    shutil.copy(built, stage / "splitdec.so")
    return stage


def approx(a: float, b: float, tol: float = 1e-9) -> bool:
    return abs(a - b) <= tol


def main() -> None:
    sys.path.insert(0, str(build_extension()))
    import splitdec

    # exact information measures
    assert splitdec.entropy([0.5, 0.5]) == 1.0
    assert splitdec.entropy([0.25] * 4) == 2.0
    assert approx(splitdec.mutual_information([[0.5, 0.0], [0.0, 0.5]]), 1.0)

    # min construction and its decodability bundle
    p_a, p_b = splitdec.min_split([0.25] * 4, 0.5)
    assert p_a == [0.125, 0.125, 0.125, 0.625], p_a
    assert approx(p_b[0], 1 / 7, 1e-12) and approx(p_b[3], 0.4, 1e-12)
    typewriter = [
        [0.5, 0.5, 0.0, 0.0],
        [0.0, 0.5, 0.5, 0.0],
        [0.0, 0.0, 0.5, 0.5],
        [0.5, 0.0, 0.0, 0.5],
    ]
    q = splitdec.split_quantities([0.25] * 4, 0.5, typewriter)
    assert approx(q["i_a_y"], 0.270838, 1e-4), q
    assert approx(q["i_x_y"], 1.0, 1e-10)

    report = splitdec.example1_report()
    assert report["all_confirmed"] is True
    assert report["conditional_bound_matches"] == "y1"
    assert report["receiver1"]["verdict"]["order_ab_ok"] is True
    assert report["receiver2"]["verdict"]["any_strategy_possible"] is False
    assert splitdec.example1_report(0.4)["all_confirmed"] is False

    verdict = splitdec.decode_verdict(
        [0.25] * 4, 0.5, typewriter, 0.270837, 0.729160
    )
    assert verdict["order_ab_ok"] is True

    # Gaussian interference channel regions
    assert splitdec.gaussian_capacity(1.0) == 0.5
    assert approx(splitdec.gaussian_capacity(2.0), 0.5 * math.log2(3.0), 1e-12)
    fig1 = dict(
        p1=2.0, p2=2.0, n1=0.35, n2=0.3,
        g11=math.sqrt(0.3), g12=math.sqrt(0.6),
        g21=math.sqrt(0.6), g22=math.sqrt(0.3),
    )
    assert splitdec.strong_interference_check(**fig1) is True
    hk = splitdec.hk_strong_region(**fig1)
    assert approx(max(r1 for r1, _ in hk), 0.5 * math.log2(1 + 12 / 7), 1e-12)
    sd = splitdec.sdrs_region(**fig1, grid=41)
    assert max(r1 for r1, _ in sd) < max(r1 for r1, _ in hk) + 1e-9
    cmp = splitdec.figure1_compare(grid=41)
    assert cmp["contained"] is True and cmp["max_gap"] > 0.01
    quad = splitdec.sdrs_constraints(**fig1, beta=0.0, gamma=0.5)
    assert quad[0] == 0.0

    # switch split
    fa, fb, fc, fd = splitdec.stage_fractions(0.3, 0.6)
    assert approx(fa + fb + fc + fd, 1.0, 1e-12)
    fixture = (ROOT / "data" / "switch_fixture.json").read_text()
    feas = splitdec.switch_feasibility(fixture)
    assert feas["feasible"] is False
    assert feas["first_failure_rx1"] == "R2b vs Rx1"
    feas0 = splitdec.switch_feasibility(fixture, rates=(0, 0, 0, 0, 0))
    assert feas0["feasible"] is True

    # Monte Carlo determinism
    config = json.dumps(
        {
            "channel": {
                "support_in": ["0", "1"],
                "support_out": ["0", "1"],
                "rows": [[0.89, 0.11], [0.11, 0.89]],
            },
            "n_list": [8, 16],
            "rate_a": 0.25,
            "unsplit": {"support": ["0", "1"], "probs": [0.5, 0.5]},
            "trials": 300,
            "codebook_seed": 7,
            "sim_seed": 8,
        }
    )
    t1 = splitdec.simulate_trend(config)
    t2 = splitdec.simulate_trend(config)
    assert t1 == t2
    assert [row["n"] for row in t1] == [8, 16]
    assert all(0.0 <= row["result"]["err_any"] <= 1.0 for row in t1)

    print("smoke test passed")


if __name__ == "__main__":
    main()
