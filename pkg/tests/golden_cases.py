"""CLI invocations with checked-in expected output under tests/golden/.

Run ``python3 tests/golden_cases.py`` from the repository root to rewrite the
golden files after an intended output change.
"""

import io
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"
DATA = ROOT / "data"

CASES = {
    "pseudo_shape_figure": ["pseudo-shape", "--R", "1", "--sigma", "0.5", "--samples", "5", "--paper-figure-mode"],
    "pseudo_shape_figure_41": ["pseudo-shape", "--R", "1", "--sigma", "0.5", "--samples", "41", "--paper-figure-mode"],
    "pseudo_shape_general": ["pseudo-shape", "--R", "1", "--sigma", "0.5", "--samples", "41"],
    "angle_shape": ["angle-shape", "--R", "2", "--samples", "9"],
    "lorentz_events": ["lorentz", "--v", "0.6", "--event", "1,2,3,0", "--event", "0,0,0,1"],
    "lorentz_csv": ["lorentz", "--v", "1e8", "--c", "299792458", "--input", str(DATA / "events.csv")],
    "velocity_add": ["velocity-add", "--ux", "0.5", "--uy", "0.5", "--v", "0.5"],
    "velocity_add_light": ["velocity-add", "--ux", "1", "--v", "-0.9"],
    "friedmann_closed": ["friedmann", "--K", "1", "--r", "0.5", "--dr", "1"],
    "friedmann_flat": ["friedmann", "--law", "power", "--a0", "2", "--rate", "0", "--dr", "1", "--dt", "0.5"],
    "classify_expanding": ["classify", "--law", "exp", "--rate", "1", "--t", "0"],
    "classify_contracting": ["classify", "--law", "exp", "--rate", "-1", "--t", "0"],
    "classify_static": ["classify", "--law", "power", "--rate", "0"],
    "kasner_m7_minus": ["kasner", "--m", "7", "--branch", "minus"],
    "kasner_m3_plus": ["kasner", "--m", "3", "--branch", "plus"],
    "time_shift": ["time-shift", "--m", "7", "--branch", "minus"],
    "tw_state_sinh": ["tw-state"],
    "tw_state_sin": ["tw-state", "--kind", "sin", "--t-start", "0.1", "--t-end", "1.5", "--samples", "15"],
    "tw_window": ["tw-window", "--m", "7", "--lambda0", "1", "--rc", "1", "--t1", "0"],
    "graph_transform_k4": ["graph-transform", "--input", str(DATA / "k4_phase.json"), "--n", "2", "--omega-scale", "2"],
    "graph_transform_path_line": ["graph-transform", "--input", str(DATA / "path_phase.json"), "--n", "1"],
    "cosmos_check_product": ["cosmos-check", "--input", str(DATA / "cosmos_product.json")],
    "cosmos_check_broken": ["cosmos-check", "--input", str(DATA / "cosmos_broken.json"), "--trials", "20"],
    "cosmos_check_chain": ["cosmos-check", "--input", str(DATA / "cosmos_chain.json"), "--trials", "0"],
}


def render(argv):
    from multispace.cli import run_cli

    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES.items():
        code, text, err = render(argv)
        if code != 0:
            sys.exit(f"{name}: exit {code}: {err}")
        (GOLDEN / f"{name}.txt").write_text(text)
        print(f"wrote {name}.txt")


if __name__ == "__main__":
    main()
