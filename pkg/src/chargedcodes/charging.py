"""Chargedness of group codes relative to substitution languages.

For a group code Z with syntactic group G and letter map eta: A -> G, the
code is charged when the image of a maximal subgroup of the minimal J-class
of F_phi is all of G.  That image is computed here through finite quotients:
the eta-images of phi^m(a) stabilise along the sequence m -> m! and generate
the relevant subgroup.  Verdicts always name the certificate they rest on.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .code import FiniteCode, PowerCode
from .errors import InvalidInput
from .freegroup import generates_free_group
from .language import (
    FactorSet,
    classify_words,
    is_uniformly_recurrent_up_to,
)
from .monoid import FiniteMonoid, is_group_code
from .substitution import (
    PeriodicityVerdict,
    Substitution,
    determinant,
    factor_language,
    incidence_matrix,
    is_primitive,
    is_proper,
    is_stable,
    periodicity,
)
from .words import Alphabet

CERTIFICATES = (
    "HChargingByStableInvertible",
    "GChargingByConnectedness",
    "ProperNonperiodicExact",
    "PeriodicShortcut",
    "StableLowerBound",
)

DEFAULT_L = 40
DEFAULT_SCALE = 8


# -- group code specifications ------------------------------------------------------

@dataclass(frozen=True)
class SyntacticGroup:
    """A finite group given as a permutation monoid, with a letter map into it."""

    monoid: FiniteMonoid
    eta: tuple  # eta[a] = element index
    cyclic: bool = False  # built from A^n: element i is the residue len(rep) mod n

    def label(self, i: int) -> str:
        if self.cyclic:
            return str(len(self.monoid.representatives[i]) % self.order)
        return self.monoid.show(i)

    def __post_init__(self):
        if not all(self.monoid.is_permutation(i) for i in range(len(self.monoid))):
            raise InvalidInput("SyntacticGroup needs a monoid of permutations (a group)")
        if len(self.eta) != self.monoid.alphabet.size:
            raise InvalidInput("one group element per letter is required")

    @property
    def order(self) -> int:
        return len(self.monoid)

    def walker(self):
        """Z = nonempty words with trivial image and no proper prefix of trivial image."""
        M = self.monoid

        def step(g, a):
            return M.mul(g, self.eta[a])

        return (M.identity, step, lambda g: g == M.identity)


def group_of(Z, alphabet: Alphabet) -> SyntacticGroup:
    """Resolve A^n, a finite code, or a SyntacticGroup to a group and letter map."""
    if isinstance(Z, SyntacticGroup):
        return Z
    if isinstance(Z, (PowerCode, FiniteCode)):
        result = is_group_code(Z, alphabet)
        if not result.group:
            raise InvalidInput(f"{Z} is not a group code")
        M = result.monoid
        return SyntacticGroup(M, M.generators, cyclic=isinstance(Z, PowerCode))
    raise InvalidInput(f"unsupported group code specification {Z!r}")


def cyclic_group(n: int, alphabet: Alphabet) -> SyntacticGroup:
    """Z/nZ with every letter sent to 1: the syntactic group of A^n."""
    return group_of(PowerCode(n), alphabet)


def residue(G: SyntacticGroup, i: int) -> int:
    """For a cyclic group from A^n: the residue represented by element i."""
    return len(G.monoid.representatives[i]) % G.order


# -- omega image -------------------------------------------------------------------------

@dataclass(frozen=True)
class OmegaImage:
    values: tuple  # values[a] = eta(phi^omega(a))
    preperiod: int
    period: int
    exponent: int


def omega_image(phi: Substitution, G: SyntacticGroup) -> OmegaImage:
    """Iterate g_{k+1}(a) = prod of g_k over phi(a) until the vector repeats.

    Returns g_m for the least m >= max(q, 1) divisible by the period p, which
    is the eventual value along m = k!.
    """
    if G.monoid.alphabet.size != phi.alphabet.size:
        raise InvalidInput("group letter map and substitution use different alphabets")
    M = G.monoid
    g = tuple(G.eta)
    seen = {}
    history = []
    while g not in seen:
        seen[g] = len(history)
        history.append(g)
        g = tuple(M.product(g[b] for b in img) for img in phi.images)
    q = seen[g]
    p = len(history) - q
    m = max(q, 1)
    m += (-m) % p
    return OmegaImage(history[q + (m - q) % p], q, p, m)


def step_vector(phi: Substitution, G: SyntacticGroup, g) -> tuple:
    return tuple(G.monoid.product(g[b] for b in img) for img in phi.images)


# -- subgroups ------------------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    group: SyntacticGroup
    elements: tuple  # sorted element indices

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_whole(self) -> bool:
        return self.order == self.group.order

    def __contains__(self, i):
        return i in self.elements


def subgroup_generated(G: SyntacticGroup, elements) -> Subgroup:
    """Closure under products (finite subsemigroups of groups are subgroups)."""
    M = G.monoid
    gens = sorted(set(elements))
    found = {M.identity}
    frontier = [M.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = M.mul(x, g)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(found)))


def is_nilpotent(G: SyntacticGroup) -> bool:
    """A finite group is nilpotent iff each Sylow subgroup is unique, i.e. the
    elements of p-power order number exactly the p-part of |G|."""
    n = G.order
    orders = [G.monoid.order_of(i) for i in range(n)]
    for p in prime_factors(n):
        part = p ** _valuation(n, p)
        if sum(1 for o in orders if _is_power_of(o, p)) != part:
            return False
    return True


def prime_factors(n: int) -> tuple:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_power_of(o, p):
    while o % p == 0:
        o //= p
    return o == 1


# -- invertibility tests ---------------------------------------------------------------

def is_G_invertible(phi: Substitution) -> bool:
    """Do the images phi(A) generate the free group on A (Stallings folding)?"""
    return generates_free_group(phi.images, phi.alphabet.size)


@dataclass(frozen=True)
class PiInvertibility:
    invertible: bool
    determinant: int
    failing_prime: Optional[int] = None


def is_nilpotent_pi_invertible(phi: Substitution, primes) -> PiInvertibility:
    """det M_phi must be a unit modulo every prime in the set."""
    det = determinant(incidence_matrix(phi))
    for p in sorted(set(primes)):
        if det % p == 0:
            return PiInvertibility(False, det, p)
    return PiInvertibility(True, det)


# -- certificates ---------------------------------------------------------------------

@dataclass(frozen=True)
class AllFiniteGroups:
    def __str__(self):
        return "AllFiniteGroups"


@dataclass(frozen=True)
class NilpotentPi:
    primes: tuple

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(sorted(set(self.primes))))

    def __str__(self):
        return "NilpotentPi({" + ",".join(map(str, self.primes)) + "})"


@dataclass(frozen=True)
class Certificate:
    name: str
    target: str
    evidence: tuple = ()

    def to_json(self) -> dict:
        return {"name": self.name, "target": self.target, "evidence": list(self.evidence)}


def charging_certificate(phi: Substitution, target) -> Optional[Certificate]:
    """Stable + H-invertible substitutions make F_phi H-charging."""
    if phi.alphabet.size >= 2 and not is_primitive(phi).primitive:
        return None
    st = is_stable(phi)
    if not st.stable:
        return None
    evidence = [f"stable (k={st.witness_k}, window {st.window[0]}..{st.window[1]}, {st.note})"]
    if isinstance(target, AllFiniteGroups):
        if not is_G_invertible(phi):
            return None
        evidence.append("G-invertible (Stallings folding gives the rose)")
    elif isinstance(target, NilpotentPi):
        inv = is_nilpotent_pi_invertible(phi, target.primes)
        if not inv.invertible:
            return None
        evidence.append(f"det M = {inv.determinant} is a unit mod each prime in {target}")
    else:
        raise InvalidInput(f"unknown target formation {target!r}")
    return Certificate("HChargingByStableInvertible", str(target), tuple(evidence))


def connected_charging(F: FactorSet, scale: int = DEFAULT_SCALE) -> Optional[Certificate]:
    """Uniformly recurrent connected languages are charging for all finite groups.

    Both hypotheses are checked on the window only: connectedness for centers
    up to ``scale`` and uniform recurrence for orders up to ``scale``.
    """
    scale = min(scale, F.max_length - 2)
    if scale < 0:
        return None
    cls = classify_words(F, scale)
    if not cls.connected:
        return None
    for k in range(1, min(scale, F.max_length - 1) + 1):
        if not is_uniformly_recurrent_up_to(F, k).uniform:
            return None
    kind = "dendric" if cls.dendric else "connected"
    return Certificate(
        "GChargingByConnectedness",
        "AllFiniteGroups",
        (f"{kind} for centers up to length {scale} (window L={F.max_length})",
         f"uniformly recurrent for orders up to {scale} (window L={F.max_length})"),
    )


# -- verdicts -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ChargeVerdict:
    verdict: str  # "Charged" | "NotCharged" | "Unknown"
    certificate: Optional[str] = None
    assumptions: tuple = ()
    obstructions: tuple = ()
    omega_image: Optional[OmegaImage] = None
    subgroup: Optional[Subgroup] = None
    group_order: Optional[int] = None
    caveats: tuple = ()
    cross_checks: tuple = ()  # (branch name, verdict) pairs computed alongside

    @property
    def charged(self) -> bool:
        return self.verdict == "Charged"

    def to_json(self, group: Optional[SyntacticGroup] = None, alphabet: Optional[Alphabet] = None) -> dict:
        out = {"verdict": self.verdict, "certificate": self.certificate,
               "assumptions": list(self.assumptions)}
        if self.obstructions:
            out["obstructions"] = list(self.obstructions)
        if self.caveats:
            out["caveats"] = list(self.caveats)
        if self.cross_checks:
            out["cross_checks"] = {name: v for name, v in self.cross_checks}
        if self.group_order is not None:
            out["group_order"] = self.group_order
        if self.omega_image is not None:
            oi = self.omega_image
            values = {}
            for a, g in enumerate(oi.values):
                key = alphabet.symbols[a] if alphabet is not None else str(a)
                values[key] = group.label(g) if group is not None else g
            out["omega_image"] = {"values": values, "preperiod": oi.preperiod,
                                  "period": oi.period, "exponent": oi.exponent}
        if self.subgroup is not None:
            out["subgroup_order"] = self.subgroup.order
        return out


NOT_A_CONVERSE = "NotCharged says nothing about recurrence of the decoded language"


class SubstitutionAnalysis:
    """Caches the per-substitution facts the verdict ladder consults."""

    def __init__(self, phi: Substitution, L: int = DEFAULT_L, scale: int = DEFAULT_SCALE,
                 nonperiodicity: Optional[PeriodicityVerdict] = None, F: Optional[FactorSet] = None):
        if phi.alphabet.size < 2 or not is_primitive(phi).primitive:
            raise InvalidInput(f"substitution {phi} must be primitive over at least two letters")
        self.phi = phi
        self.L = L
        self.scale = scale
        self._F = F
        self._nonperiodicity = nonperiodicity

    @cached_property
    def F(self) -> FactorSet:
        return self._F if self._F is not None else factor_language(self.phi, self.L)

    @cached_property
    def periodicity(self) -> PeriodicityVerdict:
        if self._nonperiodicity is not None:
            return self._nonperiodicity
        return periodicity(self.F)

    @cached_property
    def stability(self):
        return is_stable(self.phi)

    @cached_property
    def proper(self):
        return is_proper(self.phi)

    @cached_property
    def all_groups_certificate(self) -> Optional[Certificate]:
        return charging_certificate(self.phi, AllFiniteGroups())

    @cached_property
    def connected_certificate(self) -> Optional[Certificate]:
        return connected_charging(self.F, self.scale)

    def nilpotent_certificate(self, primes) -> Optional[Certificate]:
        return charging_certificate(self.phi, NilpotentPi(tuple(primes)))


def charged_verdict(phi: Substitution, Z, nonperiodicity: Optional[PeriodicityVerdict] = None,
                    L: int = DEFAULT_L, scale: int = DEFAULT_SCALE,
                    analysis: Optional[SubstitutionAnalysis] = None) -> ChargeVerdict:
    """Decision ladder: certificates first, then the exact omega-image branches.

    When a certificate decides but the exact proper/nonperiodic branch also
    applies, the omega-image is still computed and its verdict recorded in
    ``cross_checks``; a mismatch is flagged as a consistency alarm.
    """
    ctx = analysis or SubstitutionAnalysis(phi, L, scale, nonperiodicity)
    G = group_of(Z, phi.alphabet)
    order = G.order
    per = ctx.periodicity

    oi = S = exact = None
    if not per.periodic:
        oi = omega_image(phi, G)
        S = subgroup_generated(G, oi.values)
        if ctx.proper.proper:
            exact = "Charged" if S.is_whole() else "NotCharged"

    def certified(cert, extra_caveats=()):
        cross, caveats = (), tuple(extra_caveats)
        if exact is not None:
            cross = (("ProperNonperiodicExact", exact),)
            if exact != "Charged":
                caveats += ("CONSISTENCY ALARM: exact omega-image branch disagrees with certificate",)
                warnings.warn(f"certificate and exact branch disagree for {phi} / {Z}", RuntimeWarning)
        return ChargeVerdict("Charged", cert.name, cert.evidence + (f"formation {cert.target}",),
                             omega_image=oi, subgroup=S, group_order=order, caveats=caveats,
                             cross_checks=cross)

    cert = ctx.all_groups_certificate
    if cert is None and is_nilpotent(G):
        cert = ctx.nilpotent_certificate(prime_factors(order))
    if cert is not None:
        return certified(cert)

    cert = ctx.connected_certificate
    if cert is not None:
        return certified(cert, ("connectedness and uniform recurrence verified on a finite window only",))

    obstructions = ["no stable invertibility certificate for the syntactic group",
                    "language not connected (or not uniformly recurrent) within the window"]
    if per.periodic:
        if per.period_word is not None:
            g = G.monoid.product(G.eta[a] for a in per.period_word)
            S = subgroup_generated(G, [g])
            verdict = "Charged" if S.is_whole() else "NotCharged"
            return ChargeVerdict(verdict, "PeriodicShortcut", (str(per),), subgroup=S,
                                 group_order=order,
                                 caveats=(NOT_A_CONVERSE,) if verdict == "NotCharged" else ())
        obstructions.append(f"{per} without a single Rauzy cycle to read the period from")
        return ChargeVerdict("Unknown", None, (str(per),), tuple(obstructions), group_order=order)

    if exact is not None:
        return ChargeVerdict(exact, "ProperNonperiodicExact", (str(per),), omega_image=oi,
                             subgroup=S, group_order=order,
                             caveats=(NOT_A_CONVERSE,) if exact == "NotCharged" else ())
    if ctx.stability.stable:
        if S.is_whole():
            return ChargeVerdict("Charged", "StableLowerBound",
                                 (f"stable (k={ctx.stability.witness_k}, derived bound)",),
                                 omega_image=oi, subgroup=S, group_order=order)
        obstructions.append("stable but not proper: omega-image subgroup is only a lower bound")
        return ChargeVerdict("Unknown", None, (str(per),), tuple(obstructions), omega_image=oi,
                             subgroup=S, group_order=order)
    obstructions.append("substitution is not stable")
    return ChargeVerdict("Unknown", None, (str(per),), tuple(obstructions), group_order=order)


# -- procyclic fingerprints -----------------------------------------------------------------

@dataclass(frozen=True)
class FingerprintEntry:
    n: int
    d: int  # image of ell_n is d * Z/nZ
    exact: bool
    branch: str


def procyclic_fingerprint(phi: Substitution, n_max: int, L: int = DEFAULT_L,
                          scale: int = DEFAULT_SCALE,
                          nonperiodicity: Optional[PeriodicityVerdict] = None,
                          analysis: Optional[SubstitutionAnalysis] = None) -> dict:
    """n -> FingerprintEntry describing the image of the length-mod-n map."""
    ctx = analysis or SubstitutionAnalysis(phi, L, scale, nonperiodicity)
    out = {1: FingerprintEntry(1, 1, True, "trivial group")}
    for n in range(2, n_max + 1):
        G = cyclic_group(n, phi.alphabet)
        v = charged_verdict(phi, PowerCode(n), analysis=ctx)
        if v.verdict == "Charged":
            out[n] = FingerprintEntry(n, 1, True, v.certificate)
            continue
        d = math.gcd(n, *(residue(G, i) for i in v.subgroup.elements)) if v.subgroup else n
        exact = v.verdict in ("Charged", "NotCharged")
        out[n] = FingerprintEntry(n, d, exact, v.certificate or "lower-bound-only")
    return out


def fingerprint_json(fp: dict) -> dict:
    return {str(n): e.d for n, e in sorted(fp.items())}


@dataclass(frozen=True)
class Comparison:
    verdict: str  # "NotConjugate" | "Inconclusive"
    witness: Optional[int]
    table: tuple  # (n, d1, d2, compared)
    primes_zero: tuple  # ({p: d(p) = p} for each side)
    notes: tuple

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness_n": self.witness,
            "table": [{"n": n, "d1": d1, "d2": d2, "compared": c} for n, d1, d2, c in self.table],
            "primes_with_zero_image": [list(self.primes_zero[0]), list(self.primes_zero[1])],
            "notes": list(self.notes),
        }


def compare_fingerprints(phi1: Substitution, phi2: Substitution, n_max: int,
                         L: int = DEFAULT_L, scale: int = DEFAULT_SCALE,
                         nonperiodicity=(None, None)) -> Comparison:
    """Conjugate subshifts have equal ell_n-images for every n; a difference on
    exactly computed entries therefore rules out conjugacy."""
    fp1 = procyclic_fingerprint(phi1, n_max, L, scale, nonperiodicity[0])
    fp2 = procyclic_fingerprint(phi2, n_max, L, scale, nonperiodicity[1])
    table, notes, witness = [], [], None
    for n in range(1, n_max + 1):
        e1, e2 = fp1[n], fp2[n]
        compared = e1.exact and e2.exact
        if not compared:
            notes.append(f"n={n} excluded: lower-bound-only entry")
        elif e1.d != e2.d and witness is None:
            witness = n
        table.append((n, e1.d, e2.d, compared))
    primes = tuple(
        tuple(p for p in range(2, n_max + 1) if prime_factors(p) == (p,) and fp[p].exact and fp[p].d == p)
        for fp in (fp1, fp2)
    )
    notes.append("eventual conjugacy allows the prime sets to differ by at most one element "
                 "beyond an unknown threshold; no eventual-conjugacy verdict is given")
    verdict = "NotConjugate" if witness is not None else "Inconclusive"
    return Comparison(verdict, witness, tuple(table), primes, tuple(notes))
