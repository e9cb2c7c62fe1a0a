"""Run the worked examples end to end and print a one-line summary of each.

    python scripts/reproduce_examples.py [--out DIR]

With --out, the full JSON report of every example is written to DIR.
"""

import argparse
import io
import json
from pathlib import Path

from chargedcodes.cli import run

EXAMPLES = [
    ("fibonacci", ["analyze-substitution", "--rules", "a->ab;b->a", "--L", "20"],
     lambda r: f"det {r['determinant']}, primitive exponent {r['primitive']['witness_exponent']}, "
               f"stable k={r['stable']['witness_k']}, p(0..8)={r['complexity'][:9]}"),
    ("fibonacci-prefix-code", ["check-code", "--rules", "a->ab;b->a", "--code", "a,ba", "--L", "20"],
     lambda r: f"right {r['right_F_complete']}, left {r['left_F_complete']}"),
    ("fibonacci-finite-decoding", ["decode", "--rules", "a->ab;b->a", "--code", "aa,bb", "--Lx", "6"],
     lambda r: f"members {r['members_shown']}"),
    ("periodic-counterexample", ["decode", "--periodic", "ab", "--code", "ab,ba", "--Lx", "6", "--L", "20"],
     lambda r: f"recurrent {r['recurrence']['recurrent_up_to']} "
               f"(fails at order {r['recurrence']['failing_order']})"),
    ("012-A3", ["charge", "--rules", "0->012;1->0122;2->0121012", "--code", "A^3"],
     lambda r: f"{r['verdict']} via {r['certificate']}"),
    ("0001-A2", ["charge", "--rules", "0->01;1->0001", "--code", "A^2"],
     lambda r: f"{r['verdict']} via {r['certificate']}"),
    ("0001-A3", ["charge", "--rules", "0->01;1->0001", "--code", "A^3"],
     lambda r: f"{r['verdict']} via {r['certificate']}, omega image {r['omega_image']['values']}"),
    ("0001-fingerprint", ["fingerprint", "--rules", "0->01;1->0001"],
     lambda r: f"d(n) = {r['fingerprint']}"),
    ("compare", ["compare", "--rules", "0->01;1->0001", "--rules2", "0->01;1->0"],
     lambda r: f"{r['verdict']} (witness n={r['witness_n']})"),
    ("012-consistency", ["verify-theorems", "--rules", "0->012;1->0122;2->0121012", "--code", "A^3",
                         "--L", "120", "--Lx", "40", "--k-max", "1"],
     lambda r: f"{r['status']}"),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    for name, argv, summary in EXAMPLES:
        path = (args.out or Path("/tmp")) / f"{name}.json"
        code = run(argv + ["--json", str(path)], stdout=io.StringIO())
        if code != 0:
            print(f"{name:28s} exit {code}")
            continue
        report = json.loads(path.read_text(encoding="utf-8"))
        print(f"{name:28s} {summary(report)}")
        if not args.out:
            path.unlink()


if __name__ == "__main__":
    main()
