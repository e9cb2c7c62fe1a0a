"""Decodings F ∩ X^* read over the alphabet X, higher powers, and
theorem-consistency reports tying chargedness to recurrence of the decoding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .charging import (
    DEFAULT_L,
    DEFAULT_SCALE,
    NOT_A_CONVERSE,
    ChargeVerdict,
    SubstitutionAnalysis,
    charged_verdict,
    group_of,
)
from .code import FiniteCode, PowerCode, classify_code, intersect_with_F, is_F_complete_bifix, parse
from .errors import InvalidInput, ResourceLimit
from .language import (
    FactorSet,
    RecurrenceResult,
    is_recurrent_up_to,
    is_uniformly_recurrent_up_to,
)
from .substitution import PeriodicityVerdict, Substitution
from .words import Alphabet, Word


def letter_name(alphabet: Alphabet, x: Word) -> str:
    return "⟨" + alphabet.show(x) + "⟩"


@dataclass(frozen=True)
class DecodedLanguage:
    code: FiniteCode
    factors: FactorSet  # over the alphabet whose letters are the code words

    @property
    def alphabet(self) -> Alphabet:
        return self.factors.alphabet

    @property
    def expansion(self) -> dict:
        return {letter_name(self.code.alphabet, x): x for x in self.code.words}

    def expand(self, member) -> Word:
        return tuple(a for i in member for a in self.code.words[i])

    def encode(self, word) -> Word:
        """Re-express a word of X^* over the decoded alphabet."""
        index = {x: i for i, x in enumerate(self.code.words)}
        return tuple(index[x] for x in parse(self.code, word))

    def members(self):
        return self.factors.members()

    def show(self, member) -> str:
        return self.alphabet.show(member)

    def to_json(self) -> dict:
        out = self.factors.to_json()
        out["expansion"] = {k: self.code.alphabet.show(v) for k, v in self.expansion.items()}
        return out


def decode(F: FactorSet, X: FiniteCode, Lx: int) -> DecodedLanguage:
    """All words of F ∩ X^* with at most Lx code words, as words over X."""
    if X.alphabet != F.alphabet:
        raise InvalidInput("code and factor set use different alphabets")
    if not classify_code(X).is_code:
        raise InvalidInput("decoding needs a code")
    if Lx < 1:
        raise InvalidInput("Lx must be positive")
    required = Lx * X.max_length
    if required > F.max_length:
        raise ResourceLimit(
            f"decoding to X-length {Lx} needs window L >= {required}, have L={F.max_length}",
            required=required,
        )
    alphabet = Alphabet.of(letter_name(X.alphabet, x) for x in X.words)
    levels = [((),)]
    frontier = [((), ())]  # (decoded word, expansion)
    for _ in range(Lx):
        nxt = []
        for member, word in frontier:
            for i, x in enumerate(X.words):
                w = word + x
                if w in F:
                    nxt.append((member + (i,), w))
        levels.append(tuple(sorted(m for m, _ in nxt)))
        frontier = nxt
    return DecodedLanguage(X, FactorSet(alphabet, Lx, tuple(levels)))


def higher_power(F: FactorSet, n: int, Lx: int) -> DecodedLanguage:
    """The n-th higher power: F decoded by F ∩ A^n."""
    return decode(F, intersect_with_F(PowerCode(n), F), Lx)


@dataclass(frozen=True)
class DecodingRecurrence:
    k_max: int
    recurrence: RecurrenceResult
    uniform: tuple  # UniformRecurrenceResult per order 1..k_max

    @property
    def recurrent_up_to(self) -> bool:
        return self.recurrence.recurrent

    @property
    def uniformly_recurrent_up_to(self) -> bool:
        return all(u.uniform for u in self.uniform)

    def to_json(self, alphabet: Optional[Alphabet] = None) -> dict:
        show = alphabet.show if alphabet is not None else str
        return {
            "k_max": self.k_max,
            "recurrent_up_to": self.recurrent_up_to,
            "failing_order": self.recurrence.failing_order,
            "uniformly_recurrent_up_to": self.uniformly_recurrent_up_to,
            "orders": [
                {"k": u.order, "uniform": u.uniform, "R": u.R,
                 "counterexample": None if u.counterexample is None else show(u.counterexample)}
                for u in self.uniform
            ],
        }


def check_decoding_recurrence(D: DecodedLanguage, k_max: int) -> DecodingRecurrence:
    F = D.factors
    if not 1 <= k_max < F.max_length:
        raise InvalidInput(f"k_max={k_max} needs 1 <= k_max < Lx={F.max_length}")
    rec = is_recurrent_up_to(F, k_max)
    uniform = tuple(is_uniformly_recurrent_up_to(F, k) for k in range(1, k_max + 1))
    return DecodingRecurrence(k_max, rec, uniform)


@dataclass(frozen=True)
class ConsistencyReport:
    status: str  # CONSISTENT | CONTRADICTION | INCONCLUSIVE_WINDOW | OBSERVATIONAL
    verdict: ChargeVerdict
    code: FiniteCode
    complete: Optional[bool]
    decoded_sizes: tuple
    recurrence: DecodingRecurrence
    bounds: dict
    notes: tuple
    decoded_alphabet: Optional[Alphabet] = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "verdict": self.verdict.to_json(),
            "code": self.code.to_json(),
            "F_complete_bifix_in_window": self.complete,
            "decoded_sizes": list(self.decoded_sizes),
            "recurrence": self.recurrence.to_json(self.decoded_alphabet),
            "bounds": dict(self.bounds),
            "notes": list(self.notes),
        }


def theorem_consistency_report(phi: Substitution, Z, L: int = DEFAULT_L, Lx: int = 10,
                               k_max: int = 8, scale: int = DEFAULT_SCALE,
                               nonperiodicity: Optional[PeriodicityVerdict] = None,
                               analysis: Optional[SubstitutionAnalysis] = None) -> ConsistencyReport:
    """Charged complete bifix decodings of (uniformly) recurrent languages are
    (uniformly) recurrent; check that implication on the window.

    A Rauzy graph of the decoded window that is not strongly connected is an
    exact failure of recurrence, so Charged + that failure is a CONTRADICTION.
    A missing uniform-recurrence bound R inside the window only means the
    window is too small.
    """
    ctx = analysis or SubstitutionAnalysis(phi, L, scale, nonperiodicity)
    F = ctx.F
    verdict = charged_verdict(phi, Z, analysis=ctx)
    if isinstance(Z, (PowerCode, FiniteCode)):
        X = intersect_with_F(Z, F)
    else:
        X = intersect_with_F(group_of(Z, phi.alphabet), F)
    D = decode(F, X, Lx)
    k = min(k_max, Lx - 1)
    rec = check_decoding_recurrence(D, k)
    complete = None
    if classify_code(X).is_bifix:
        complete = is_F_complete_bifix(X, F, recurrent=True).complete
    notes = []
    if verdict.charged:
        if not rec.recurrent_up_to:
            status = "CONTRADICTION"
            notes.append(f"charged but decoded Rauzy graph of order {rec.recurrence.failing_order} "
                         "is not strongly connected")
        elif not rec.uniformly_recurrent_up_to:
            status = "INCONCLUSIVE_WINDOW"
            notes.append("charged and recurrent, but no uniform recurrence bound fits in the window; "
                         "increase Lx")
        else:
            status = "CONSISTENT"
    else:
        status = "OBSERVATIONAL"
        notes.append(NOT_A_CONVERSE)
        notes.append("decoded language "
                     + ("is" if rec.recurrent_up_to else "is not")
                     + f" recurrent up to order {k}")
    return ConsistencyReport(
        status, verdict, X, complete,
        tuple(len(level) for level in D.factors.levels),
        rec,
        {"L": F.max_length, "Lx": Lx, "k_max": k, "scale": ctx.scale},
        tuple(notes),
        D.alphabet,
    )
