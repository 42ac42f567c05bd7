"""Directed hereditary sets of the monoid and structure built on them.

Infinite letter sequences are always eventually periodic.  Membership is
decided exactly: the only unbounded question (how far a b-power reaches
along an infinite path when d > c) reduces to a monotone carry recursion
that either reaches a fixed point or provably diverges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import DepthExceeded, InvalidSequence, NotComposable, Periodic, WrongCase
from .lattice import is_initial_segment, join, meets
from .odometer import b_action, phi
from .words import BSParams, PathL, compose, raw_normal_form

INF = math.inf


@dataclass(frozen=True)
class EventuallyPeriodicSeq:
    preperiod: tuple = ()
    period: tuple = (0,)

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("period must be nonempty")

    def entry(self, m: int) -> int:
        if m < len(self.preperiod):
            return self.preperiod[m]
        return self.period[(m - len(self.preperiod)) % len(self.period)]

    def prefix(self, n: int) -> tuple:
        return tuple(self.entry(m) for m in range(n))

    def shift(self, k: int) -> "EventuallyPeriodicSeq":
        if k <= len(self.preperiod):
            return EventuallyPeriodicSeq(self.preperiod[k:], self.period)
        r = (k - len(self.preperiod)) % len(self.period)
        return EventuallyPeriodicSeq((), self.period[r:] + self.period[:r])

    def check(self, params: BSParams):
        for x in self.preperiod + self.period:
            if not 0 <= x < params.d:
                raise ValueError(f"entry {x} outside [0, {params.d})")
        return self

    def limsup(self) -> int:
        return max(self.period)

    def __str__(self):
        pre = ",".join(map(str, self.preperiod))
        per = ",".join(map(str, self.period))
        return f"{pre}|{per}"

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodicSeq":
        """``"0,1|1,0"``: preperiod before the bar, period after.  No bar means all period."""
        text = text.strip()
        if "|" in text:
            pre, per = text.split("|", 1)
        else:
            pre, per = "", text
        conv = lambda s: tuple(int(x) for x in s.split(",") if x.strip() != "")
        return cls(conv(pre), conv(per))


# descriptors


@dataclass(frozen=True)
class Finite:
    alpha: PathL
    tag = "finite"


@dataclass(frozen=True)
class Coset:
    params: BSParams
    letters: tuple
    tag = "coset"


@dataclass(frozen=True)
class C0:
    params: BSParams
    i: EventuallyPeriodicSeq
    tag = "c0"


@dataclass(frozen=True)
class CInf:
    params: BSParams
    i: EventuallyPeriodicSeq
    tag = "cinf"


@dataclass(frozen=True)
class CnBS1:
    params: BSParams
    i: tuple
    n: tuple
    tag = "cn1"

    def __post_init__(self):
        if not validate_seq_bs1(self.i, self.n, self.params):
            raise InvalidSequence(f"n={self.n} does not satisfy the carry inequalities for i={self.i}")


@dataclass(frozen=True)
class CnBS2:
    params: BSParams
    i: EventuallyPeriodicSeq
    n: int
    tag = "cn2"

    def __post_init__(self):
        s, m = chain_bs2(self.i, self.params)
        if m == 0 or not 0 <= self.n < m:
            raise InvalidSequence(f"need 0 <= n < m with m={m} (s={s})")


Descriptor = Union[Finite, Coset, C0, CInf, CnBS1, CnBS2]


def descriptor_params(D) -> BSParams:
    return D.alpha.params if isinstance(D, Finite) else D.params


def make_descriptor(D):
    """Validate a descriptor against its case."""
    p = descriptor_params(D)
    if isinstance(D, (C0, CInf)):
        D.i.check(p)
    if p.negative and isinstance(D, (CnBS1, CnBS2)):
        raise WrongCase("there are no intermediate sets in the negative variant")
    if isinstance(D, CnBS1) and p.case != "BS1":
        raise WrongCase("CnBS1 needs c >= d")
    if isinstance(D, CnBS2) and p.case != "BS2":
        raise WrongCase("CnBS2 needs d > c")
    return D


def _letters_match(beta: PathL, letters_of) -> bool:
    return all(beta.letters[m] == letters_of(m) for m in range(beta.height))


def reach(i: EventuallyPeriodicSeq, h: int, n: int, params: BSParams):
    """Supremum over k of the form-(R) lead of ``b^i_h a ... b^i_(k-1) a b^(n c)``.

    The lead for a fixed k comes from sweeping right to left with carries
    ``N <- (i_mu + d N) // c``.  Leads grow with k.  Starting far enough to
    the right the sweep over one period is a monotone map f with f(N) >= N
    (when d > c), so iterate it to a fixed point or until ``N (d - c) >= c``,
    after which every step increases N and the lead is unbounded.
    """
    c, d = params.c, params.d
    if params.negative:
        raise WrongCase("leads are unbounded in the negative variant")
    start = max(len(i.preperiod), h + 1)
    P = len(i.period)

    def sweep(N, hi, lo):
        for mu in range(hi - 1, lo - 1, -1):
            N = (i.entry(mu) + d * N) // c
        return N

    N = n
    if d > c:
        while True:
            if N * (d - c) >= c:
                return INF
            M = sweep(N, start + P, start)
            if M == N:
                break
            N = M
    elif N != 0:
        raise ValueError("only the zero carry is meaningful when c >= d")
    # with c >= d a zero carry stays zero, since every entry is below d <= c
    N = sweep(N, start, h + 1)
    return i.entry(h) + d * N


def max_tail(D, h: int):
    """``sup{q : alpha_(h-1)(i) b^q in D}`` (``math.inf`` when unbounded, None when empty)."""
    p = descriptor_params(D)
    if isinstance(D, Finite):
        a = D.alpha
        if h > a.height:
            return None
        if h == a.height:
            return a.tail
        if p.negative:
            return INF
        # largest q with b^q below the suffix of alpha after h letters
        from .words import to_form_r

        return to_form_r(PathL(p, a.letters[h:], a.tail)).lead
    if isinstance(D, Coset):
        return INF if h <= len(D.letters) else None
    if isinstance(D, CInf):
        return INF
    if isinstance(D, C0):
        if p.negative:
            return INF
        return reach(D.i, h, 0, p)
    if isinstance(D, CnBS1):
        if h >= len(D.i):
            raise DepthExceeded(f"height {h} beyond stored prefix of length {len(D.i)}")
        return D.n[h] * p.d + D.i[h]
    if isinstance(D, CnBS2):
        return reach(D.i, h, D.n, p)
    raise TypeError(f"unknown descriptor {D!r}")


def _letter_source(D):
    if isinstance(D, Coset):
        return len(D.letters), lambda m: D.letters[m]
    if isinstance(D, (C0, CInf, CnBS2)):
        return None, D.i.entry
    if isinstance(D, CnBS1):
        return len(D.i), lambda m: D.i[m]
    raise TypeError


def member(D, beta: PathL) -> bool:
    p = descriptor_params(D)
    if beta.params != p:
        raise ValueError("parameter mismatch")
    if isinstance(D, Finite):
        return is_initial_segment(beta, D.alpha)
    bound, letter = _letter_source(D)
    h = beta.height
    if isinstance(D, CnBS1) and h >= bound:
        raise DepthExceeded(f"height {h} beyond stored prefix of length {bound}")
    if bound is not None and h > bound:
        return False
    if not _letters_match(beta, letter):
        return False
    if isinstance(D, Coset):
        alpha = PathL(p, D.letters, 0)
        j = join(beta, alpha)
        return not j.disjoint and j.value.letters == alpha.letters
    if isinstance(D, CInf):
        return True
    return beta.tail <= max_tail(D, h)


def contains_b(D, depth: Optional[int] = None) -> bool:
    """Whether every b^q (q <= depth) is in D; with no depth, whether all of B is."""
    m = max_tail(D, 0)
    if m is None:
        return False
    if depth is None:
        return m == INF
    return m >= depth


def validate_seq_bs1(i: Sequence[int], n: Sequence[int], params: BSParams) -> bool:
    if params.case != "BS1":
        raise WrongCase("carry inequalities are for the c >= d case")
    i, n = tuple(i), tuple(n)
    if len(i) != len(n):
        raise ValueError("i and n must have equal length")
    if any(x < 0 for x in n) or any(not 0 <= x < params.d for x in i):
        return False
    c, d = params.c, params.d
    for ell in range(1, len(i)):
        lo = c * n[ell - 1] - i[ell]
        hi = c * (n[ell - 1] + 1) - i[ell]
        if not (lo <= d * n[ell] < hi):
            return False
    return True


def sigma_shift_bs1(i: Sequence[int], n: Sequence[int], params: BSParams) -> tuple:
    """n' = n + r(i), where n is a carry sequence for phi(i)."""
    j, r = phi(i, params)
    if not validate_seq_bs1(j, n, params):
        raise InvalidSequence("n does not satisfy the carry inequalities for phi(i)")
    return tuple(x + y for x, y in zip(n, r.entries))


def chain_bs2(i: EventuallyPeriodicSeq, params: BSParams):
    """``(s, m)``: s the limsup of i; m the number of proper intermediate sets plus one, or 0 if none."""
    if params.case != "BS2":
        raise WrongCase("the chain is defined in the d > c case")
    i.check(params)
    s = i.limsup()
    c, d = params.c, params.d
    if s >= c:
        return s, 0
    return s, -(-(c - s) // (d - c))


# structure of the boundary groupoid


def structural_flags(params: BSParams) -> dict:
    free = params.c % params.d != 0
    return {
        "minimal": True,
        "contractive": params.d > 1,
        "topologicallyFree": free,
        "kirchberg": free,
    }


def periodicity_check(params: BSParams, gamma: PathL) -> bool:
    """When d | c, left multiplication by b^d leaves the letters of gamma alone."""
    if params.c % params.d:
        raise WrongCase("periodicity needs d | c")
    letters, _ = raw_normal_form(gamma.word(), params, (), params.d)
    return letters == gamma.letters and meets(PathL(params, letters, 0), gamma)


def _first_nonintegral_power(q: int, params: BSParams) -> int:
    ratio = Fraction(params.c, params.d)
    k = 1
    x = Fraction(q)
    while True:
        x *= ratio
        if x.denominator != 1:
            return k
        k += 1


def separation_witness(alpha: PathL, beta: PathL) -> PathL:
    """gamma with alpha*gamma and beta*gamma having no common extension."""
    p = alpha.params
    if p.c % p.d == 0:
        raise Periodic("d divides c, so b^d gamma always meets gamma")
    if alpha == beta:
        raise ValueError("alpha and beta must differ")
    e = PathL.identity(p)
    if not meets(alpha, beta):
        return e
    if alpha.height > beta.height:
        alpha, beta = beta, alpha
    s = alpha.height
    a_rest = alpha.tail
    if beta.height == s:
        q = abs(alpha.tail - beta.tail)
        gamma = PathL(p, (0,) * _first_nonintegral_power(q, p), 0)
    else:
        # alpha b^j a has letter (a_rest + j) mod d at position s; pick j to
        # differ from beta's letter there (tails may be negative in BS3)
        f = beta.letters[s]
        j = 0 if (a_rest - f) % p.d else 1
        gamma = PathL(p, (j,), 0)
    assert not meets(compose(alpha, gamma), compose(beta, gamma)), (alpha, beta, gamma)
    return gamma


@dataclass(frozen=True)
class BoundaryTriple:
    """``[alpha, beta, x]``: the arrow from beta*x to alpha*x."""

    alpha: PathL
    beta: PathL
    point: EventuallyPeriodicSeq

    def height_diff(self) -> int:
        return self.alpha.height - self.beta.height

    def inverse(self) -> "BoundaryTriple":
        return BoundaryTriple(self.beta, self.alpha, self.point)

    def is_unit(self) -> bool:
        return self.alpha == self.beta

    def refine(self, k: int) -> "BoundaryTriple":
        """Move k letters of the point onto both paths."""
        if k == 0:
            return self
        p = self.alpha.params
        step = PathL(p, self.point.prefix(k), 0)
        return BoundaryTriple(compose(self.alpha, step), compose(self.beta, step), self.point.shift(k))


def _compare_depth(*seqs, extra=0):
    pre = max(len(s.preperiod) for s in seqs)
    per = 1
    for s in seqs:
        per = per * len(s.period) // math.gcd(per, len(s.period))
    return pre + per + extra + 2


def compose_boundary_triples(g: BoundaryTriple, h: BoundaryTriple) -> BoundaryTriple:
    p = g.alpha.params
    H = max(g.beta.height, h.alpha.height)
    g2 = g.refine(H - g.beta.height)
    h2 = h.refine(H - h.alpha.height)
    beta, gamma = g2.beta, h2.alpha
    if beta.letters != gamma.letters:
        raise NotComposable("source of the first triple differs from range of the second")
    x, y = g2.point, h2.point
    n = beta.tail - gamma.tail
    depth = _compare_depth(x, y, g.point, h.point, extra=max(g.alpha.height, h.beta.height, H))
    if b_action(x.prefix(depth), n, p) != y.prefix(depth):
        raise NotComposable("boundary points disagree after the b-offset")
    if n >= 0:
        delta = PathL(p, h2.beta.letters, h2.beta.tail + n)
        return BoundaryTriple(g2.alpha, delta, x)
    a = PathL(p, g2.alpha.letters, g2.alpha.tail - n)
    return BoundaryTriple(a, h2.beta, y)


def triples_equal(g: BoundaryTriple, h: BoundaryTriple) -> bool:
    """Equal as groupoid elements, decided at a common refinement."""
    if g.height_diff() != h.height_diff():
        return False
    H = max(g.beta.height, h.beta.height)
    g2, h2 = g.refine(H - g.beta.height), h.refine(H - h.beta.height)
    if g2.alpha.letters != h2.alpha.letters or g2.beta.letters != h2.beta.letters:
        return False
    # same source: beta x = beta' y; same range forces the same b-offset
    n = g2.beta.tail - h2.beta.tail
    if g2.alpha.tail - h2.alpha.tail != n:
        return False
    depth = _compare_depth(g2.point, h2.point, extra=H)
    return b_action(g2.point.prefix(depth), n, g.alpha.params) == h2.point.prefix(depth)


# JSON form of descriptors, used by the command line


def _params_json(p: BSParams) -> dict:
    return {"c": p.c, "d": p.d, "variant": p.variant.value}


def descriptor_to_json(D) -> dict:
    if isinstance(D, Finite):
        return {"tag": D.tag, "alpha": D.alpha.to_json()}
    out = {"tag": D.tag, **_params_json(D.params)}
    if isinstance(D, Coset):
        out["letters"] = list(D.letters)
    elif isinstance(D, CnBS1):
        out["i"] = list(D.i)
        out["n"] = list(D.n)
    else:
        out["i"] = str(D.i)
        if isinstance(D, CnBS2):
            out["n"] = D.n
    return out


def descriptor_from_json(obj: dict, params: Optional[BSParams] = None):
    """Inverse of :func:`descriptor_to_json`.

    ``c``, ``d`` and ``variant`` may be omitted when ``params`` is given.
    Sequences ``i`` are strings like ``"0,1|1"`` or lists (read as a pure period).
    """
    from .words import Variant

    tag = obj.get("tag")
    if tag == "finite":
        alpha = obj["alpha"]
        if isinstance(alpha, str):
            from .words import path

            if params is None:
                raise ValueError("finite descriptor given as a word needs parameters")
            return make_descriptor(Finite(path(alpha, params)))
        return make_descriptor(Finite(PathL.from_json({**(_params_json(params) if params else {}), **alpha})))
    if "c" in obj:
        params = BSParams(int(obj["c"]), int(obj["d"]), Variant(obj.get("variant", "pos")))
    if params is None:
        raise ValueError("descriptor needs c and d")

    def seq(v):
        if isinstance(v, str):
            return EventuallyPeriodicSeq.parse(v)
        return EventuallyPeriodicSeq((), tuple(v))

    if tag == "coset":
        D = Coset(params, tuple(obj["letters"]))
    elif tag == "c0":
        D = C0(params, seq(obj["i"]))
    elif tag == "cinf":
        D = CInf(params, seq(obj["i"]))
    elif tag == "cn1":
        if params.case != "BS1":
            raise WrongCase("CnBS1 needs c >= d in the positive variant")
        D = CnBS1(params, tuple(obj["i"]), tuple(obj["n"]))
    elif tag == "cn2":
        if params.case != "BS2":
            raise WrongCase("CnBS2 needs d > c in the positive variant")
        D = CnBS2(params, seq(obj["i"]), int(obj["n"]))
    else:
        raise ValueError(f"unknown descriptor tag {tag!r}")
    return make_descriptor(D)


def classify_sigma(i: EventuallyPeriodicSeq, params: BSParams) -> dict:
    """Which infinite-height non-maximal sets sit over the sequence i."""
    i.check(params)
    out = {"case": params.case, "sequence": str(i)}
    if params.negative:
        out.update(kind="empty", note="C0(i) = Cinf(i); no intermediate sets")
    elif params.case == "BS1":
        out.update(kind="family", note="C0(i), and Cn(i) for every carry sequence n; all differ from Cinf(i)")
    else:
        s, m = chain_bs2(i, params)
        if m == 0:
            out.update(kind="collapsed", s=s, m=0, note="s >= c so C0(i) = Cinf(i)")
        else:
            out.update(kind="chain", s=s, m=m, chain_length=m + 1)
    return out
