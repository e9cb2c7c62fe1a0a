"""Regenerate (or check) every file under tests/golden/.

Two kinds of golden file live there:

* oracle goldens (fingerprint_*.json, compare_*.json): computed here from the
  incidence matrix alone, without importing the package.  For Z/nZ with every
  letter sent to 1, the omega-image is the row vector 1^T M^e mod n at the
  stabilising exponent e, and d(n) = gcd(n, entries).
* CLI goldens (cli_*.json): a recorded argv plus the exact JSON report the CLI
  writes for it.

    python scripts/make_golden.py          # rewrite
    python scripts/make_golden.py --check  # exit 1 if anything would change
"""

import argparse
import json
import math
import sys
import tempfile
from pathlib import Path

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

ORACLE_FINGERPRINTS = {
    "fingerprint_0001": "0->01; 1->0001",
    "fingerprint_fibonacci": "a->ab; b->a",
    "fingerprint_012": "0->012; 1->0122; 2->0121012",
}
COMPARE = ("compare_0001_fibonacci", "0->01; 1->0001", "0->01; 1->0")
N_MAX = 8

CLI_REQUESTS = {
    "cli_analyze_fibonacci": ["analyze-substitution", "--rules", "a->ab;b->a", "--L", "20"],
    "cli_charge_0001_A2": ["charge", "--rules", "0->01;1->0001", "--code", "A^2"],
    "cli_charge_0001_A3": ["charge", "--rules", "0->01;1->0001", "--code", "A^3"],
    "cli_decode_fibonacci_aa_bb": ["decode", "--rules", "a->ab;b->a", "--code", "aa,bb", "--Lx", "6"],
    "cli_higher_power_ab": ["higher-power", "--periodic", "ab", "--n", "2", "--Lx", "6", "--L", "20"],
    "cli_check_code_fibonacci": ["check-code", "--rules", "a->ab;b->a", "--code", "a,ba", "--L", "20"],
    "cli_monoid_a_ba": ["monoid", "--alphabet", "ab", "--code", "a,ba"],
    "cli_fingerprint_0001": ["fingerprint", "--rules", "0->01;1->0001"],
    "cli_compare_0001_fibonacci": ["compare", "--rules", "0->01;1->0001", "--rules2", "0->01;1->0"],
    "cli_verify_012_A3": ["verify-theorems", "--rules", "0->012;1->0122;2->0121012", "--code", "A^3",
                          "--L", "120", "--Lx", "40", "--k-max", "1"],
}


# -- matrix oracle (self-contained) --------------------------------------------------

def parse_rules(text):
    pairs = [r.split("->") for r in text.replace(" ", "").split(";") if r]
    letters = [a for a, _ in pairs]
    return letters, [[letters.index(c) for c in img] for _, img in pairs]


def incidence(letters, images):
    return [[img.count(a) for img in images] for a in range(len(letters))]


def row_times(v, m, n):
    return tuple(sum(v[t] * m[t][j] for t in range(len(v))) % n for j in range(len(m)))


def omega_residues(m, n):
    seen, history = {}, []
    v = tuple(1 % n for _ in m)
    while v not in seen:
        seen[v] = len(history)
        history.append(v)
        v = row_times(v, m, n)
    q = seen[v]
    p = len(history) - q
    e = max(q, 1)
    while e % p:
        e += 1
    return history[q + (e - q) % p]


def oracle_fingerprint(rules, n_max):
    letters, images = parse_rules(rules)
    m = incidence(letters, images)
    return {str(n): math.gcd(n, *omega_residues(m, n)) for n in range(1, n_max + 1)}


def oracle_goldens():
    out = {}
    for name, rules in ORACLE_FINGERPRINTS.items():
        out[name] = {"rules": rules, "n_max": N_MAX, "fingerprint": oracle_fingerprint(rules, N_MAX)}
    name, r1, r2 = COMPARE
    f1, f2 = oracle_fingerprint(r1, N_MAX), oracle_fingerprint(r2, N_MAX)
    diff = [int(n) for n in f1 if f1[n] != f2[n]]
    out[name] = {
        "rules": [r1, r2],
        "n_max": N_MAX,
        "entries": {n: [f1[n], f2[n]] for n in f1},
        "verdict": "NotConjugate" if diff else "Inconclusive",
        "witness_n": min(diff) if diff else None,
    }
    return {k: json.dumps(v, indent=2, sort_keys=True) + "\n" for k, v in out.items()}


# -- CLI goldens ----------------------------------------------------------------------

def cli_goldens():
    from chargedcodes.cli import run

    out = {}
    with tempfile.TemporaryDirectory() as tmp:
        for name, argv in CLI_REQUESTS.items():
            path = Path(tmp) / f"{name}.json"
            with open(Path(tmp) / "stdout.txt", "w", encoding="utf-8") as sink:
                code = run(argv + ["--json", str(path)], stdout=sink)
            if code != 0:
                raise SystemExit(f"{name}: exit code {code}")
            report = json.loads(path.read_text(encoding="utf-8"))
            body = {"request": argv, "report": report}
            out[name] = json.dumps(body, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    ap.add_argument("--oracle-only", action="store_true")
    args = ap.parse_args()
    files = oracle_goldens()
    if not args.oracle_only:
        files.update(cli_goldens())
    GOLDEN.mkdir(parents=True, exist_ok=True)
    stale = []
    for name, text in sorted(files.items()):
        path = GOLDEN / f"{name}.json"
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                stale.append(name)
        else:
            path.write_text(text, encoding="utf-8")
    if stale:
        print("stale golden files: " + ", ".join(stale))
        sys.exit(1)
    print(("checked " if args.check else "wrote ") + f"{len(files)} golden files")


if __name__ == "__main__":
    main()
