"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

All comparisons are exact.  The per-criterion lines are also repeated in the
pytest terminal summary (see conftest.py).
"""

import random
import time
from itertools import combinations

import oracles
from chargedcodes.charging import (
    SubstitutionAnalysis,
    charged_verdict,
    compare_fingerprints,
    cyclic_group,
    fingerprint_json,
    is_G_invertible,
    is_nilpotent_pi_invertible,
    omega_image,
    procyclic_fingerprint,
    residue,
)
from chargedcodes.code import (
    FiniteCode,
    PowerCode,
    classify_code,
    concatenate,
    is_F_complete_bifix,
    is_F_maximal_prefix,
    is_right_F_complete,
    parse,
)
from chargedcodes.decoding import check_decoding_recurrence, decode, higher_power, theorem_consistency_report
from chargedcodes.language import FactorSet, classify_words, complexity, extension_graph
from chargedcodes.monoid import green_summary, is_group_code, syntactic_monoid
from chargedcodes.substitution import (
    Substitution,
    determinant,
    factor_language,
    incidence_matrix,
    is_primitive,
    is_proper,
    is_stable,
)
from chargedcodes.words import Alphabet

RESULTS = []

FIB = Substitution.parse("a->ab; b->a")
TM = Substitution.parse("a->ab; b->ba")
S012 = Substitution.parse("0->012; 1->0122; 2->0121012")
S0001 = Substitution.parse("0->01; 1->0001")
AB = Alphabet.of("ab")


def report(number, title, checks):
    """Record and print one line; return the names of failed checks."""
    failed = [name for name, ok in checks if not ok]
    status = "PASS" if not failed else "FAIL"
    line = f"[{status}] criterion {number}: {title}"
    if failed:
        line += " (failed: " + ", ".join(failed) + ")"
    RESULTS.append(line)
    print(line)
    return failed


def test_criterion_1_fibonacci_suite():
    prim = is_primitive(FIB)
    stab = is_stable(FIB)
    F = factor_language(FIB, 20)
    right = is_right_F_complete(FiniteCode.parse("a,ba", AB), F)
    D = decode(F, FiniteCode.parse("aa,bb", AB), 6)
    checks = [
        ("primitive with witness 2", prim.primitive and prim.witness_exponent == 2),
        ("not proper", not is_proper(FIB).proper),
        ("stable with witness <= 2", stab.stable and stab.witness_k <= 2),
        ("det M = -1", determinant(incidence_matrix(FIB)) == -1),
        ("p(k) = k+1 for k <= 12", [complexity(F, k) for k in range(13)] == list(range(1, 14))),
        ("dendric up to center length 8", classify_words(F, 8).dendric),
        ("{a,ba} right F-complete up to 20", right.holds and right.bound == 20),
        ("{aa,bb} decoding = {ε, ⟨aa⟩}", sorted(D.show(m) for m in D.members()) == ["", "⟨aa⟩"]),
    ]
    assert not report(1, "Fibonacci suite", checks)


def test_criterion_2_periodic_counterexample():
    F = FactorSet.from_periodic(AB, AB.word("ab"), 24)
    D = decode(F, FiniteCode.parse("ab,ba", AB), 10)
    unary = all({D.show(m) for m in D.factors.words(k)} == {"⟨ab⟩" * k, "⟨ba⟩" * k} for k in range(1, 11))
    rec = check_decoding_recurrence(D, 4)
    checks = [
        ("decoding is z^* ∪ t^*", unary),
        ("not recurrent at order 1", not rec.recurrent_up_to and rec.recurrence.failing_order == 1),
    ]
    assert not report(2, "(ab)^inf decoded by {ab,ba}", checks)


def test_criterion_3_012_suite():
    start = time.perf_counter()
    A = S012.alphabet
    prop = is_proper(S012)
    F = factor_language(S012, 440)
    ctx = SubstitutionAnalysis(S012, F=F)
    central = {A.show(w) for w in F.words(3) if w[1] == 1}
    charged = all(charged_verdict(S012, PowerCode(n), analysis=ctx).charged for n in range(2, 7))
    uniform = {}
    for n in (2, 3):
        rec = check_decoding_recurrence(higher_power(F, n, 146), 6)
        uniform[n] = rec.recurrent_up_to and rec.uniformly_recurrent_up_to
    consistency = theorem_consistency_report(S012, PowerCode(3), Lx=40, k_max=1, analysis=ctx)
    checks = [
        ("proper (0,2)", prop.proper and (A.symbols[prop.first], A.symbols[prop.last]) == ("0", "2")),
        ("primitive", is_primitive(S012).primitive),
        ("det M = -1", determinant(incidence_matrix(S012)) == -1),
        ("G-invertible", is_G_invertible(S012)),
        ("F ∩ A1A = {012, 210}", central == {"012", "210"}),
        ("extension graph of 1 disconnected", extension_graph(F, A.word("1")).shape() == "disconnected"),
        ("A^n charged for n = 2..6", charged),
        ("higher power n=2 uniformly recurrent to order 6", uniform[2]),
        ("higher power n=3 uniformly recurrent to order 6", uniform[3]),
        ("no contradiction alarm", consistency.status == "CONSISTENT"),
        ("under one minute", time.perf_counter() - start < 60),
    ]
    assert not report(3, "012 substitution suite", checks)


def test_criterion_4_0001_suite():
    A = S0001.alphabet
    prop = is_proper(S0001)
    ctx = SubstitutionAnalysis(S0001)
    v2 = charged_verdict(S0001, PowerCode(2), analysis=ctx)
    v3 = charged_verdict(S0001, PowerCode(3), analysis=ctx)
    G3 = cyclic_group(3, A)
    fp = procyclic_fingerprint(S0001, 3, analysis=ctx)
    consistency = theorem_consistency_report(S0001, PowerCode(3), L=90, Lx=28, k_max=2)
    checks = [
        ("proper (0,1)", prop.proper and (A.symbols[prop.first], A.symbols[prop.last]) == ("0", "1")),
        ("det M = -2", determinant(incidence_matrix(S0001)) == -2),
        ("nilpotent-π invertible for {3,5,7}", is_nilpotent_pi_invertible(S0001, (3, 5, 7)).invertible),
        ("not nilpotent-π invertible for {2}", not is_nilpotent_pi_invertible(S0001, (2,)).invertible),
        ("A^2 NotCharged", v2.verdict == "NotCharged"),
        ("A^3 Charged", v3.verdict == "Charged"),
        ("ω-image of A^3 is (1,1)", tuple(residue(G3, g) for g in v3.omega_image.values) == (1, 1)),
        ("exact branch agrees on A^3", dict(v3.cross_checks).get("ProperNonperiodicExact") == "Charged"),
        ("d(2) = 2 and d(3) = 1", (fp[2].d, fp[3].d) == (2, 1)),
        ("no contradiction alarm", consistency.status == "CONSISTENT"),
    ]
    assert not report(4, "01/0001 suite", checks)


def test_criterion_5_monoid_suite():
    M2 = syntactic_monoid(PowerCode(2), AB)
    words = [w for w in oracles.all_words(2, 3) if w]
    green_ok, checked = True, 0
    for r in (1, 2, 3):
        for ws in combinations(words, r):
            X = FiniteCode(AB, ws)
            if not classify_code(X).is_code:
                continue
            M = syntactic_monoid(X)
            if len(M) > 60:
                continue
            G = green_summary(M)
            ref = oracles.naive_green(M.mul, len(M))
            for name in ("R", "L", "J", "H"):
                green_ok &= frozenset(map(frozenset, getattr(G, name))) == ref[name]
            checked += 1
    checks = [
        ("(A^2)^* monoid is a group of order 2", len(M2) == 2 and green_summary(M2).is_group),
        ("A^n group codes for n <= 8", all(is_group_code(PowerCode(n), AB).group for n in range(1, 9))),
        (f"Green relations match oracle on {checked} monoids", green_ok and checked > 0),
    ]
    assert not report(5, "monoid suite", checks)


def _random_prefix_code(F, rng):
    X = list(F.words(1))
    for _ in range(rng.randint(0, 6)):
        x = rng.choice(X)
        kids = [x + (a,) for a in range(F.alphabet.size) if x + (a,) in F]
        if kids and len(x) + 1 < F.max_length:
            X.remove(x)
            X.extend(kids)
    if rng.random() < 0.5 and len(X) > 1:
        X.remove(rng.choice(X))
    return FiniteCode(F.alphabet, tuple(X))


def test_criterion_6_property_suites():
    rng = random.Random(20240601)

    sp_ok = True
    for _ in range(500):
        ws = {tuple(rng.randrange(2) for _ in range(rng.randint(1, 4))) for _ in range(rng.randint(1, 4))}
        X = FiniteCode(AB, tuple(ws))
        f = classify_code(X)
        if f.is_code:
            sp_ok &= oracles.brute_double_factorization(X.words, 8) is None
        else:
            w, p1, p2 = f.counterexample
            sp_ok &= p1 != p2 and concatenate(p1) == concatenate(p2) == w

    fib_F, tm_F = factor_language(FIB, 16), factor_language(TM, 16)
    prefix_ok = True
    for i in range(100):
        F = (fib_F, tm_F)[i % 2]
        X = _random_prefix_code(F, rng)
        prefix_ok &= is_F_maximal_prefix(X, F).maximal == is_right_F_complete(X, F).holds

    bifix_ok, bifix_n = True, 0
    for F in (fib_F, tm_F, factor_language(S012, 16)):
        for n in (1, 2, 3, 4):
            full = F.words(n)
            for _ in range(8):
                subset = full if rng.random() < 0.3 else rng.sample(full, rng.randint(1, len(full)))
                r = is_F_complete_bifix(FiniteCode(F.alphabet, tuple(subset)), F, recurrent=True)
                bifix_ok &= r.left.holds == r.right.holds
                bifix_n += 1

    parse_ok = True
    codes = [FiniteCode.parse(t, AB) for t in ("a,ba", "aa,ab,ba,bb", "a,ab", "b,ab,aab,aaa")]
    for _ in range(1000):
        X = rng.choice(codes)
        seq = [rng.choice(X.words) for _ in range(rng.randint(0, 12))]
        parse_ok &= parse(X, concatenate(seq)) == seq

    omega_ok = True
    for phi in (FIB, TM, S012, S0001):
        for n in range(2, 13):
            G = cyclic_group(n, phi.alphabet)
            values = tuple(residue(G, g) for g in omega_image(phi, G).values)
            omega_ok &= values == oracles.length_omega_mod(incidence_matrix(phi), n)[0]

    checks = [
        ("Sardinas-Patterson vs brute force (500 codes)", sp_ok),
        ("F-maximal iff right F-complete (100 prefix codes)", prefix_ok),
        (f"left iff right completeness ({bifix_n} bifix codes)", bifix_ok),
        ("parse/concatenate round trip (1000 sequences)", parse_ok),
        ("ω-image vs matrix oracle (n <= 12)", omega_ok),
    ]
    assert not report(6, "property suites", checks)


def test_criterion_7_invariance():
    import json
    from pathlib import Path

    same_F = all(factor_language(phi, 20) == factor_language(phi.power(2), 20)
                 for phi in (FIB, TM, S012, S0001))
    same_fp = all(fingerprint_json(procyclic_fingerprint(phi, 8)) ==
                  fingerprint_json(procyclic_fingerprint(phi.power(2), 8))
                  for phi in (FIB, TM, S012, S0001))
    golden = json.loads((Path(__file__).parent / "golden" / "compare_0001_fibonacci.json").read_text())
    c = compare_fingerprints(S0001, Substitution.parse("0->01; 1->0"), 8)
    table = {str(n): [d1, d2] for n, d1, d2, _ in c.table}
    checks = [
        ("φ and φ² give equal FactorSets up to 20", same_F),
        ("φ and φ² give equal fingerprints up to 8", same_fp),
        ("comparison entries match matrix-oracle golden", table == golden["entries"]),
        ("verdict matches golden", (c.verdict, c.witness) == (golden["verdict"], golden["witness_n"])),
    ]
    assert not report(7, "invariance sanity", checks)
