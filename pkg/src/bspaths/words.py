"""Parameters, words and the two normal forms of the positive monoid.

The monoid is generated by ``a`` and ``b`` subject to ``a b^c = b^d a``
(positive variant) or ``a b^c = b^-d a`` (negative variant).  Every element
has a unique left form ``b^i0 a b^i1 a ... b^i(k-1) a b^p`` with letters in
``[0, d)`` and a unique right form ``b^q a b^j1 a ... a b^jk`` with letters in
``[0, c)``.  :class:`PathL` is the canonical representation used everywhere.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NegativeAExponent, NotInMonoid, WordSyntaxError


class Variant(enum.Enum):
    POSITIVE = "pos"
    NEGATIVE = "neg"


@dataclass(frozen=True)
class BSParams:
    c: int
    d: int
    variant: Variant = Variant.POSITIVE

    def __post_init__(self):
        if not (isinstance(self.c, int) and isinstance(self.d, int)):
            raise TypeError("c and d must be integers")
        if self.c < 1 or self.d < 1:
            raise ValueError(f"c and d must be positive, got c={self.c}, d={self.d}")
        if isinstance(self.variant, str):
            object.__setattr__(self, "variant", Variant(self.variant))

    @classmethod
    def of(cls, c: int, d: int, negative: bool = False) -> "BSParams":
        return cls(c, d, Variant.NEGATIVE if negative else Variant.POSITIVE)

    @property
    def negative(self) -> bool:
        return self.variant is Variant.NEGATIVE

    @property
    def case(self) -> str:
        if self.negative:
            return "BS3"
        return "BS1" if self.c >= self.d else "BS2"

    @property
    def sigma(self) -> int:
        """Sign of the b-exponent produced when b^d is pushed through a."""
        return -1 if self.negative else 1

    @property
    def e(self) -> int:
        return math.gcd(self.c, self.d)

    @property
    def c1(self) -> int:
        return self.c // self.e

    @property
    def d1(self) -> int:
        return self.d // self.e

    def label(self) -> str:
        return f"{self.c},{self.d}{'n' if self.negative else ''}"

    def __str__(self):
        sign = "-" if self.negative else ""
        return f"BS(c={self.c}, d={self.d}{', negative' if self.negative else ''}): a b^{self.c} = b^{sign}{self.d} a"


def push_a(tail: int, params: BSParams) -> tuple[int, int]:
    """Move ``b^tail`` across one ``a``: ``b^tail a = b^i a b^new``.

    Returns ``(i, new)`` with ``i`` in ``[0, d)``.
    """
    m, i = divmod(tail, params.d)
    return i, params.sigma * m * params.c


def in_monoid(letters: Sequence[int], tail: int, params: BSParams) -> bool:
    if params.negative:
        return bool(letters) or tail >= 0
    return tail >= 0


def _format(tokens: Iterable[tuple[str, int]]) -> str:
    parts = []
    for g, n in tokens:
        if n == 0:
            continue
        parts.append(g if n == 1 else f"{g}^{n}")
    return " ".join(parts) if parts else "e"


@dataclass(frozen=True)
class GenWord:
    """A word in the generators, as ``(letter, exponent)`` tokens."""

    tokens: tuple[tuple[str, int], ...] = ()

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __add__(self, other: "GenWord") -> "GenWord":
        return GenWord(self.tokens + tuple(other))

    def __str__(self):
        return _format(self.tokens)


@dataclass(frozen=True)
class PathL:
    """Left normal form ``b^letters[0] a ... b^letters[k-1] a b^tail``."""

    params: BSParams
    letters: tuple[int, ...] = ()
    tail: int = 0

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        d = self.params.d
        for x in self.letters:
            if not 0 <= x < d:
                raise ValueError(f"letter {x} outside [0, {d})")
        if not in_monoid(self.letters, self.tail, self.params):
            raise NotInMonoid(f"b^{self.tail} is not in the monoid")

    @classmethod
    def identity(cls, params: BSParams) -> "PathL":
        return cls(params, (), 0)

    @property
    def height(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters and self.tail == 0

    def prefix(self, k: int) -> "PathL":
        """The left form ``b^i0 a ... b^i(k-1) a`` (tail 0) built from the first k letters."""
        return PathL(self.params, self.letters[:k], 0)

    def word(self) -> GenWord:
        toks = []
        for x in self.letters:
            if x:
                toks.append(("b", x))
            toks.append(("a", 1))
        if self.tail:
            toks.append(("b", self.tail))
        return GenWord(tuple(toks))

    def word_length(self) -> int:
        return len(self.letters) + sum(self.letters) + abs(self.tail)

    def to_json(self) -> dict:
        return {
            "c": self.params.c,
            "d": self.params.d,
            "variant": self.params.variant.value,
            "letters": list(self.letters),
            "tail": self.tail,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PathL":
        params = BSParams(int(obj["c"]), int(obj["d"]), Variant(obj.get("variant", "pos")))
        return cls(params, tuple(int(x) for x in obj["letters"]), int(obj["tail"]))

    def __str__(self):
        return str(self.word())

    def __mul__(self, other: "PathL") -> "PathL":
        return compose(self, other)


@dataclass(frozen=True)
class PathR:
    """Right normal form ``b^lead a b^letters[0] ... a b^letters[k-1]``."""

    params: BSParams
    lead: int = 0
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        c = self.params.c
        for x in self.letters:
            if not 0 <= x < c:
                raise ValueError(f"letter {x} outside [0, {c})")
        if not in_monoid(self.letters, self.lead, self.params):
            raise NotInMonoid(f"b^{self.lead} is not in the monoid")

    @property
    def height(self) -> int:
        return len(self.letters)

    def word(self) -> GenWord:
        toks = [("b", self.lead)] if self.lead else []
        for x in self.letters:
            toks.append(("a", 1))
            if x:
                toks.append(("b", x))
        return GenWord(tuple(toks))

    def __str__(self):
        return str(self.word())


_ATOM = re.compile(r"([ab])(?:\^(-?\d+))?$")


def parse_word(text: str, params: BSParams | None = None) -> GenWord:
    """Tokenize ``"b^2 a a^3 b^-1"``.

    Atoms are whitespace separated.  Zero exponents are dropped and negative
    ``a`` exponents are rejected.  ``e`` (or an empty string) is the identity.
    """
    tokens = []
    pos = 0
    for m in re.finditer(r"\S+", text):
        atom = m.group(0)
        pos = m.start()
        if atom in ("e", "1"):
            continue
        am = _ATOM.match(atom)
        if am is None:
            raise WordSyntaxError(f"cannot parse atom {atom!r}", pos)
        letter = am.group(1)
        exp = int(am.group(2)) if am.group(2) is not None else 1
        if letter == "a" and exp < 0:
            raise NegativeAExponent(f"negative a-exponent in {atom!r}", pos)
        if exp:
            tokens.append((letter, exp))
    return GenWord(tuple(tokens))


def _coerce_word(w, params: BSParams) -> GenWord:
    if isinstance(w, str):
        return parse_word(w, params)
    if isinstance(w, GenWord):
        return w
    return GenWord(tuple(w))


def raw_normal_form(word, params: BSParams, letters=(), tail: int = 0) -> tuple[tuple[int, ...], int]:
    """Left-form letters and tail of ``(letters, tail) * word`` as a group element.

    No monoid check is made; the tail may be any integer.
    """
    out = list(letters)
    for g, n in _coerce_word(word, params):
        if g == "b":
            tail += n
        else:
            if n < 0:
                raise NegativeAExponent("negative a-exponent")
            for _ in range(n):
                x, tail = push_a(tail, params)
                out.append(x)
    return tuple(out), tail


def normalize(word, params: BSParams) -> PathL:
    letters, tail = raw_normal_form(word, params)
    if not in_monoid(letters, tail, params):
        raise NotInMonoid(f"{_coerce_word(word, params)} is not in the monoid (left form tail {tail})")
    return PathL(params, letters, tail)


def path(text: str, params: BSParams) -> PathL:
    """Shorthand for ``normalize(parse_word(text))``."""
    return normalize(parse_word(text, params), params)


def to_form_r(alpha: PathL) -> PathR:
    p = alpha.params
    x = alpha.tail
    js = []
    for letter in reversed(alpha.letters):
        n, j = divmod(x, p.c)
        js.append(j)
        x = letter + p.sigma * n * p.d
    return PathR(p, x, tuple(reversed(js)))


def from_form_r(rho: PathR) -> PathL:
    p = rho.params
    tail = rho.lead
    out = []
    for j in rho.letters:
        x, tail = push_a(tail, p)
        out.append(x)
        tail += j
    return PathL(p, tuple(out), tail)


def compose(alpha: PathL, beta: PathL) -> PathL:
    if alpha.params != beta.params:
        raise ValueError("cannot compose paths with different parameters")
    p = alpha.params
    out = list(alpha.letters)
    tail = alpha.tail
    for x in beta.letters:
        y, tail = push_a(tail + x, p)
        out.append(y)
    return PathL(p, tuple(out), tail + beta.tail)


def height(alpha: PathL) -> int:
    return len(alpha.letters)


def b_power(n: int, params: BSParams) -> PathL:
    return PathL(params, (), n)


def alpha_k(letters: Sequence[int], params: BSParams) -> PathL:
    """``b^i0 a b^i1 a ... b^ik a`` for the given letters."""
    return PathL(params, tuple(letters), 0)
