"""Command-line front end.

Every report is a JSON-serialisable dict echoing the bounds it was computed
under; stdout gets an indented text rendering, ``--json PATH`` the exact JSON.
Exit codes: 0 success, 2 invalid input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .charging import (
    SubstitutionAnalysis,
    charged_verdict,
    compare_fingerprints,
    fingerprint_json,
    group_of,
    is_G_invertible,
    procyclic_fingerprint,
)
from .code import (
    FiniteCode,
    PowerCode,
    classify_code,
    intersect_with_F,
    is_F_complete_bifix,
    is_F_maximal_prefix,
    is_left_F_complete,
    is_right_F_complete,
    parse_code_spec,
)
from .decoding import check_decoding_recurrence, decode, higher_power, theorem_consistency_report
from .errors import AnalysisError, InvalidInput, NotApplicable, ResourceLimit
from .language import FactorSet, complexity
from .monoid import dfa_of_star, egg_box, egg_box_text, green_summary, transition_monoid
from .substitution import (
    ASSERTED_APERIODIC,
    Substitution,
    boundary_maps,
    determinant,
    factor_language,
    incidence_matrix,
    is_primitive,
    is_proper,
    is_stable,
    periodicity,
)
from .words import Alphabet

DEFAULTS = {"L": 40, "Lx": 10, "k_max": 8, "n_max": 8}


# -- request parsing ---------------------------------------------------------------

def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--L", type=int, default=DEFAULTS["L"], help="factor window length")
    p.add_argument("--Lx", type=int, default=DEFAULTS["Lx"], help="decoded window length")
    p.add_argument("--k-max", type=int, default=DEFAULTS["k_max"], dest="k_max")
    p.add_argument("--n-max", type=int, default=DEFAULTS["n_max"], dest="n_max")
    p.add_argument("--assert-aperiodic", action="store_true", dest="assert_aperiodic")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled property checks")
    return p


def _source_flags(p, language=True):
    p.add_argument("--rules", help='substitution rules, e.g. "a->ab;b->a"')
    p.add_argument("--rules-json", dest="rules_json", metavar="PATH")
    if language:
        p.add_argument("--factors", metavar="PATH", help="FactorSet JSON file")
        p.add_argument("--periodic", metavar="WORD", help="factors of the periodic word WORD^inf")


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="chargedcodes", parents=[common],
                                     description="Substitution subshifts, bifix codes and charged decodings.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze-substitution", parents=[common])
    _source_flags(p, language=False)

    p = sub.add_parser("factors", parents=[common])
    _source_flags(p)

    p = sub.add_parser("check-code", parents=[common])
    _source_flags(p)
    p.add_argument("--code", required=True)

    p = sub.add_parser("monoid", parents=[common])
    _source_flags(p, language=False)
    p.add_argument("--alphabet", help="letters, when no substitution is given")
    p.add_argument("--code", required=True)

    p = sub.add_parser("charge", parents=[common])
    _source_flags(p, language=False)
    p.add_argument("--code", required=True)

    p = sub.add_parser("fingerprint", parents=[common])
    _source_flags(p, language=False)

    p = sub.add_parser("compare", parents=[common])
    _source_flags(p, language=False)
    p.add_argument("--rules2", required=True)

    p = sub.add_parser("decode", parents=[common])
    _source_flags(p)
    p.add_argument("--code", required=True)

    p = sub.add_parser("higher-power", parents=[common])
    _source_flags(p)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify-theorems", parents=[common])
    _source_flags(p, language=False)
    p.add_argument("--code", required=True)
    p.add_argument("--samples", type=int, default=20, help="sampled prefix codes for the maximality check")
    return parser


def _check_bounds(args):
    for name in ("L", "Lx", "k_max", "n_max"):
        if getattr(args, name) < 1:
            raise InvalidInput(f"--{name.replace('_', '-')} must be positive")


def _substitution(args, required=True):
    if getattr(args, "rules", None):
        return Substitution.parse(args.rules)
    if getattr(args, "rules_json", None):
        with open(args.rules_json, encoding="utf-8") as fh:
            return Substitution.from_json(json.load(fh))
    if required:
        raise InvalidInput("a substitution is required (--rules or --rules-json)")
    return None


def _language(args):
    """(substitution or None, FactorSet) from whichever source flag was given."""
    phi = _substitution(args, required=False)
    if phi is not None:
        return phi, factor_language(phi, args.L)
    if getattr(args, "factors", None):
        with open(args.factors, encoding="utf-8") as fh:
            return None, FactorSet.from_json(json.load(fh))
    if getattr(args, "periodic", None):
        names = []
        for c in args.periodic:
            if c not in names:
                names.append(c)
        alphabet = Alphabet.of(sorted(names))
        return None, FactorSet.from_periodic(alphabet, alphabet.word(args.periodic), args.L)
    raise InvalidInput("a language source is required (--rules, --rules-json, --factors or --periodic)")


def _bounds(args) -> dict:
    return {"L": args.L, "Lx": args.Lx, "k_max": args.k_max, "n_max": args.n_max,
            "assert_aperiodic": args.assert_aperiodic}


def _nonperiodicity(args):
    return ASSERTED_APERIODIC if args.assert_aperiodic else None


# -- commands ------------------------------------------------------------------------

def cmd_analyze_substitution(args) -> dict:
    phi = _substitution(args)
    A = phi.alphabet
    m = incidence_matrix(phi)
    report = {"substitution": phi.to_json(), "rules": phi.rules(), "incidence_matrix": m,
              "determinant": determinant(m)}
    prop = is_proper(phi)
    report["proper"] = {"proper": prop.proper,
                        "first": A.symbols[prop.first] if prop.proper else None,
                        "last": A.symbols[prop.last] if prop.proper else None}
    bm = boundary_maps(phi)
    report["boundary_maps"] = {
        "first": {A.symbols[a]: A.symbols[b] for a, b in enumerate(bm.first)},
        "last": {A.symbols[a]: A.symbols[b] for a, b in enumerate(bm.last)},
        "preperiod": bm.preperiod, "period": bm.period,
    }
    if A.size >= 2:
        pr = is_primitive(phi)
        report["primitive"] = {"primitive": pr.primitive, "witness_exponent": pr.witness_exponent}
    else:
        report["primitive"] = {"primitive": None, "note": "not applicable for one letter"}
    if A.size >= 2 and pr.primitive:
        st = is_stable(phi)
        report["stable"] = {"stable": st.stable, "witness_k": st.witness_k,
                            "window": list(st.window), "note": st.note}
        report["G_invertible"] = is_G_invertible(phi)
        F = factor_language(phi, args.L)
        report["complexity"] = [complexity(F, k) for k in range(args.L + 1)]
        per = periodicity(F, args.assert_aperiodic)
        report["periodicity"] = str(per)
    report["bounds"] = _bounds(args)
    return report


def cmd_factors(args) -> dict:
    _, F = _language(args)
    return {"factor_set": F.to_json(), "complexity": [complexity(F, k) for k in range(F.max_length + 1)],
            "bounds": _bounds(args)}


def cmd_check_code(args) -> dict:
    phi, F = _language(args)
    A = F.alphabet
    X = parse_code_spec(args.code, A)
    if isinstance(X, PowerCode):
        X = intersect_with_F(X, F)
    flags = classify_code(X)
    report = {
        "code": X.to_json(),
        "flags": {"code": flags.is_code, "prefix": flags.is_prefix, "suffix": flags.is_suffix,
                  "bifix": flags.is_bifix},
    }
    if flags.counterexample is not None:
        w, p1, p2 = flags.counterexample
        report["flags"]["double_factorization"] = {
            "word": A.show(w), "parses": [[A.show(x) for x in p1], [A.show(x) for x in p2]]}
    right = is_right_F_complete(X, F)
    left = is_left_F_complete(X, F)
    report["right_F_complete"] = right.describe(A)
    report["left_F_complete"] = left.describe(A)
    inside = all(len(w) <= F.max_length and w in F for w in X.words)
    report["contained_in_F"] = inside
    if flags.is_prefix and inside:
        mx = is_F_maximal_prefix(X, F)
        report["F_maximal_prefix"] = (f"MaximalUpTo({mx.bound})" if mx.maximal
                                      else f"Extension({A.show(mx.extension)})")
    if flags.is_bifix and inside:
        both = is_F_complete_bifix(X, F)
        report["F_complete_bifix"] = {"complete": both.complete, "consistency_alarm": both.consistency_alarm}
    report["bounds"] = _bounds(args)
    return report


def cmd_monoid(args) -> dict:
    phi = _substitution(args, required=False)
    if phi is not None:
        A = phi.alphabet
    elif args.alphabet:
        A = Alphabet.of(list(args.alphabet))
    else:
        raise InvalidInput("monoid needs --rules or --alphabet")
    X = parse_code_spec(args.code, A)
    dfa = dfa_of_star(X, A)
    M = transition_monoid(dfa)
    G = green_summary(M)
    group = all(M.is_permutation(g) for g in M.generators)
    return {
        "code": str(X) if isinstance(X, PowerCode) else X.to_json(),
        "dfa": dfa.to_json(),
        "monoid_order": len(M),
        "elements": [M.show(i) for i in range(len(M))],
        "group_code": group,
        "idempotents": [M.show(i) for i in G.idempotents],
        "minimal_ideal": [M.show(i) for i in G.minimal_ideal],
        "maximal_subgroup": [M.show(i) for i in G.max_subgroup],
        "class_counts": {"R": len(G.R), "L": len(G.L), "J": len(G.J), "H": len(G.H)},
        "egg_box": egg_box(M, G),
        "egg_box_text": egg_box_text(M, G),
        "bounds": _bounds(args),
    }


def cmd_charge(args) -> dict:
    phi = _substitution(args)
    Z = parse_code_spec(args.code, phi.alphabet)
    ctx = SubstitutionAnalysis(phi, args.L, args.k_max, _nonperiodicity(args))
    v = charged_verdict(phi, Z, analysis=ctx)
    G = group_of(Z, phi.alphabet)
    return {"substitution": phi.rules(), "code": str(Z) if isinstance(Z, PowerCode) else Z.to_json(),
            **v.to_json(G, phi.alphabet), "bounds": _bounds(args)}


def cmd_fingerprint(args) -> dict:
    phi = _substitution(args)
    fp = procyclic_fingerprint(phi, args.n_max, args.L, args.k_max, _nonperiodicity(args))
    return {
        "substitution": phi.rules(),
        "fingerprint": fingerprint_json(fp),
        "entries": [{"n": e.n, "d": e.d, "exact": e.exact, "branch": e.branch}
                    for _, e in sorted(fp.items())],
        "bounds": _bounds(args),
    }


def cmd_compare(args) -> dict:
    phi1 = _substitution(args)
    phi2 = Substitution.parse(args.rules2)
    nonper = (_nonperiodicity(args), _nonperiodicity(args))
    c = compare_fingerprints(phi1, phi2, args.n_max, args.L, args.k_max, nonper)
    return {"substitutions": [phi1.rules(), phi2.rules()], **c.to_json(), "bounds": _bounds(args)}


def _decoded_report(D, args) -> dict:
    members = [D.show(m) or "ε" for m in D.members()]
    out = {"code": D.code.to_json(), "decoded": D.to_json(), "members_shown": members[:200],
           "member_count": len(members), "finite_in_window": not D.factors.levels[-1]}
    k = min(args.k_max, D.factors.max_length - 1)
    if k >= 1:
        rec = check_decoding_recurrence(D, k)
        out["recurrence"] = rec.to_json(D.alphabet)
    out["bounds"] = _bounds(args)
    return out


def cmd_decode(args) -> dict:
    _, F = _language(args)
    X = parse_code_spec(args.code, F.alphabet)
    if isinstance(X, PowerCode):
        X = intersect_with_F(X, F)
    return _decoded_report(decode(F, X, args.Lx), args)


def cmd_higher_power(args) -> dict:
    _, F = _language(args)
    return _decoded_report(higher_power(F, args.n, args.Lx), args)


def cmd_verify_theorems(args) -> dict:
    phi = _substitution(args)
    Z = parse_code_spec(args.code, phi.alphabet)
    ctx = SubstitutionAnalysis(phi, args.L, args.k_max, _nonperiodicity(args))
    rep = theorem_consistency_report(phi, Z, args.L, args.Lx, args.k_max, analysis=ctx)
    out = {"substitution": phi.rules(), **rep.to_json()}
    out["prefix_maximality_samples"] = _sample_maximality(ctx.F, args.seed, args.samples)
    out["bounds"] = _bounds(args)
    return out


def _sample_maximality(F: FactorSet, seed: int, count: int) -> dict:
    """Random prefix codes inside F: F-maximal iff right F-complete."""
    rng = random.Random(seed)
    pool = [w for k in range(1, min(4, F.max_length) + 1) for w in F.words(k)]
    agree = checked = 0
    mismatches = []
    for _ in range(count):
        picked = rng.sample(pool, min(len(pool), rng.randint(1, 4)))
        code = []
        for w in sorted(picked, key=lambda u: (len(u), u)):
            if not any(w[: len(x)] == x or x[: len(w)] == w for x in code):
                code.append(w)
        X = FiniteCode(F.alphabet, tuple(code))
        maximal = is_F_maximal_prefix(X, F).maximal
        complete = is_right_F_complete(X, F).holds
        checked += 1
        if maximal == complete:
            agree += 1
        else:
            mismatches.append(X.to_json())
    return {"seed": seed, "checked": checked, "agree": agree, "mismatches": mismatches}


COMMANDS = {
    "analyze-substitution": cmd_analyze_substitution,
    "factors": cmd_factors,
    "check-code": cmd_check_code,
    "monoid": cmd_monoid,
    "charge": cmd_charge,
    "fingerprint": cmd_fingerprint,
    "compare": cmd_compare,
    "decode": cmd_decode,
    "higher-power": cmd_higher_power,
    "verify-theorems": cmd_verify_theorems,
}


# -- output -----------------------------------------------------------------------------

def dumps(report: dict) -> str:
    return json.dumps(report, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def render_text(report, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for key in sorted(report):
        value = report[key]
        if key == "egg_box":
            continue
        if key == "egg_box_text":
            lines.append(f"{pad}egg-box:")
            lines.extend(pad + "  " + line for line in value.splitlines())
        elif isinstance(value, dict) and value:
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list) and len(value) > 12:
            shown = json.dumps(value[:12], ensure_ascii=False)
            lines.append(f"{pad}{key}: {shown[:-1]}, ... ({len(value)} items)]")
        else:
            lines.append(f"{pad}{key}: {json.dumps(value, ensure_ascii=False)}")
    return "\n".join(lines)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_bounds(args)
        report = {"command": args.command, **COMMANDS[args.command](args)}
    except (InvalidInput, NotApplicable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimit as exc:
        msg = f"resource limit: {exc}"
        if exc.required is not None:
            msg += f" (required bound {exc.required})"
        print(msg, file=sys.stderr)
        return 3
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(render_text(report), file=stdout)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dumps(report))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
