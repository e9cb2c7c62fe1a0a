"""Alphabets and words.

A word is a plain tuple of letter indices into an :class:`Alphabet`.  Text
forms use one visible character per letter, or ``{name}`` for symbols whose
display name is longer than one character.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidInput

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()


def tokenize(text: str) -> list[str]:
    """Split ``text`` into symbol names, honouring ``{name}`` braces."""
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "{":
            j = text.find("}", i)
            if j < 0 or j == i + 1:
                raise InvalidInput(f"unterminated or empty brace symbol in {text!r}")
            out.append(text[i + 1 : j])
            i = j + 1
        elif c == "}":
            raise InvalidInput(f"stray '}}' in {text!r}")
        else:
            out.append(c)
            i += 1
    return out


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if not symbols:
            raise InvalidInput("alphabet must be nonempty")
        if len(set(symbols)) != len(symbols):
            raise InvalidInput(f"duplicate symbols in alphabet {symbols}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @classmethod
    def of(cls, symbols: Iterable) -> "Alphabet":
        return cls(tuple(symbols))

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(range(len(self.symbols)))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InvalidInput(f"symbol {name!r} not in alphabet {self.symbols}") from None

    def word(self, text) -> Word:
        """Parse a word from text (or pass through a sequence of indices/names)."""
        if isinstance(text, str):
            return tuple(self.index(s) for s in tokenize(text))
        letters = []
        for s in text:
            if isinstance(s, int):
                self.check_letter(s)
                letters.append(s)
            else:
                letters.append(self.index(s))
        return tuple(letters)

    def check_letter(self, i: int) -> None:
        if not (0 <= i < len(self.symbols)):
            raise InvalidInput(f"letter index {i} outside alphabet of size {len(self.symbols)}")

    def check_word(self, w: Sequence[int]) -> Word:
        for i in w:
            self.check_letter(i)
        return tuple(w)

    def show(self, w: Sequence[int]) -> str:
        """Display form: names concatenated without separators."""
        return "".join(self.symbols[i] for i in w)

    def encode(self, w: Sequence[int]) -> str:
        """Round-trippable text form; multi-character names get braces."""
        return "".join(s if len(s) == 1 else "{" + s + "}" for s in (self.symbols[i] for i in w))

    def to_json(self) -> list:
        return list(self.symbols)


def shortlex_key(w: Word):
    return (len(w), w)


def factors_of(w: Word, max_len: int) -> Iterable[Word]:
    """All nonempty factors of ``w`` of length at most ``max_len``."""
    n = len(w)
    for i in range(n):
        for j in range(i + 1, min(n, i + max_len) + 1):
            yield w[i:j]


def reverse(w: Word) -> Word:
    return tuple(reversed(w))
