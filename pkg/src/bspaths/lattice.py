"""Prefix order on the monoid: quotients, meets, joins and related helpers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from . import oracles
from .errors import WrongCase
from .odometer import phi, psi_finite_bs2
from .words import (
    BSParams,
    PathL,
    PathR,
    compose,
    from_form_r,
    in_monoid,
    raw_normal_form,
    to_form_r,
)


@dataclass(frozen=True)
class GroupElementPair:
    """The group element ``alpha * beta^-1``."""

    alpha: PathL
    beta: PathL

    def __post_init__(self):
        if self.alpha.params != self.beta.params:
            raise ValueError("pair components have different parameters")

    @property
    def params(self):
        return self.alpha.params

    def to_json(self):
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json()}


@dataclass(frozen=True)
class JoinResult:
    value: Optional[PathL] = None

    @property
    def disjoint(self):
        return self.value is None

    def to_json(self):
        if self.value is None:
            return {"kind": "disjoint"}
        return {"kind": "join", "value": self.value.to_json()}


def _same(alpha, beta):
    if alpha.params != beta.params:
        raise ValueError("paths have different parameters")


def left_quotient(alpha: PathL, beta: PathL) -> Optional[PathL]:
    """gamma with ``alpha gamma = beta``, or None."""
    _same(alpha, beta)
    k = alpha.height
    if k > beta.height or beta.letters[:k] != alpha.letters:
        return None
    p = alpha.params
    rest = PathL(p, beta.letters[k:], 0).word() if beta.height > k else ()
    letters, tail = raw_normal_form(rest, p, (), -alpha.tail)
    tail += beta.tail
    if not in_monoid(letters, tail, p):
        return None
    return PathL(p, letters, tail)


def is_initial_segment(alpha: PathL, beta: PathL) -> bool:
    return left_quotient(alpha, beta) is not None


def meets(alpha: PathL, beta: PathL) -> bool:
    _same(alpha, beta)
    s = min(alpha.height, beta.height)
    return alpha.letters[:s] == beta.letters[:s]


def _join_bs1(alpha, beta):
    p = alpha.params
    s = alpha.height
    f = beta.letters[s]
    if alpha.tail <= f:
        return beta
    m = alpha.tail - f
    h = -(-m // p.d)
    i = (0,) + beta.letters[s + 1:]
    k = len(i) - 1
    total = 0
    cur = i
    for _ in range(h):
        cur, r = phi(cur, p)
        total += r.entries[k]
    return PathL(p, beta.letters, max(p.c * total, beta.tail))


def _join_bs2(alpha, beta):
    p = alpha.params
    s = alpha.height
    rest = to_form_r(PathL(p, beta.letters[s:], beta.tail))
    v = rest.lead
    if alpha.tail <= v:
        return beta
    m = alpha.tail - v
    js = rest.letters
    cur = (0,) + js[:-1]
    acc = 0
    h = 0
    while True:
        nxt, r = psi_finite_bs2(cur, p)
        if m <= p.d * (acc + r):
            break
        acc += r
        cur = nxt
        h += 1
    body = from_form_r(PathR(p, v, js[:-1] + (0,)))
    body = PathL(p, body.letters, body.tail + (h + 1) * p.c)
    return compose(PathL(p, beta.letters[:s], 0), body)


def join(alpha: PathL, beta: PathL) -> JoinResult:
    _same(alpha, beta)
    if not meets(alpha, beta):
        return JoinResult(None)
    if alpha.height > beta.height:
        alpha, beta = beta, alpha
    p = alpha.params
    if alpha.height == beta.height:
        return JoinResult(alpha if alpha.tail >= beta.tail else beta)
    if p.case == "BS3":
        # meeting paths are comparable here
        return JoinResult(beta if is_initial_segment(alpha, beta) else alpha)
    if p.case == "BS1":
        return JoinResult(_join_bs1(alpha, beta))
    return JoinResult(_join_bs2(alpha, beta))


def join_oracle(alpha: PathL, beta: PathL, depth: int) -> set:
    """Minimal common extensions found by searching extensions of alpha up to depth."""
    _same(alpha, beta)
    if not meets(alpha, beta):
        # letters of any common extension would have to start with both
        return set()
    return oracles.join_oracle(alpha, beta, depth)


def oracle_depth(alpha: PathL, beta: PathL):
    """Search depth and starting side suggested by the closed-form join.

    Returns ``(depth, swap)``; swap means search from beta.
    """
    res = join(alpha, beta)
    if res.disjoint:
        return 0, False
    qa = left_quotient(alpha, res.value)
    qb = left_quotient(beta, res.value)
    la, lb = qa.word_length(), qb.word_length()
    return (la, False) if la <= lb else (lb, True)


def reduce_group_pair(t: GroupElementPair):
    """Cancel ``a b^(mc) a^-1`` in ``alpha_k(I) b^n alpha_l(J)^-1`` until stuck."""
    p = t.params
    I = list(t.alpha.letters)
    J = list(t.beta.letters)
    n = t.alpha.tail - t.beta.tail
    while I and J and n % p.c == 0:
        n = I.pop() + p.sigma * (n // p.c) * p.d - J.pop()
    return tuple(I), n, tuple(J)


def quasi_lattice_generator(t: GroupElementPair) -> Optional[PathL]:
    p = t.params
    I, n, J = reduce_group_pair(t)
    if p.negative:
        if p.c > 1:
            raise WrongCase("the negative variant with c > 1 is not finitely aligned")
        if J:
            return PathL.identity(p)
        if I or n >= 0:
            return PathL(p, I, n)
        return PathL.identity(p)
    if n <= 0:
        return PathL(p, I, 0)
    return PathL(p, I, n)


def lfe_witness(t: GroupElementPair) -> set:
    p = t.params
    if not p.negative:
        raise WrongCase("finite exhaustion witnesses are for the negative variant")
    I, n, J = reduce_group_pair(t)
    if J:
        return {PathL(p, I, 0)}
    if I:
        return {PathL(p, I, n)}
    return {PathL(p, (), max(n, 0))}


def exhaustive(F: Iterable[PathL]) -> bool:
    F = list(F)
    if not F:
        raise ValueError("F must be nonempty")
    p = F[0].params
    for x in F:
        _same(F[0], x)
    if any(x.height == 0 for x in F):
        return True
    ends = {x.letters for x in F}

    def covered(node):
        if node in ends:
            return True
        if len(node) >= max(len(e) for e in ends):
            return False
        return all(covered(node + (x,)) for x in range(p.d))

    return covered(())
