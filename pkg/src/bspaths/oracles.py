"""Brute-force reference implementations used to cross-check the fast code.

Nothing here is clever.  The group normal form below handles ``a^-1`` letters
so that questions like "is t*g in the monoid" can be answered without going
through the lattice module.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NotInMonoid
from .words import BSParams, PathL, compose, from_form_r, in_monoid, to_form_r


@dataclass(frozen=True)
class GroupNF:
    """``b^x1 a^e1 b^x2 a^e2 ... b^xk a^ek b^tail`` with no pinches.

    Residues satisfy ``0 <= x < d`` before ``a`` and ``0 <= x < c`` before ``a^-1``.
    """

    stack: tuple[tuple[int, int], ...]
    tail: int

    def is_positive(self, params: BSParams) -> bool:
        if any(e < 0 for _, e in self.stack):
            return False
        return in_monoid(self.stack, self.tail, params)

    def to_path(self, params: BSParams) -> PathL:
        if not self.is_positive(params):
            raise NotInMonoid("group element is not in the monoid")
        return PathL(params, tuple(x for x, _ in self.stack), self.tail)


def group_nf(tokens, params: BSParams) -> GroupNF:
    """Reduce a word with arbitrary integer exponents to its group normal form."""
    c, d, s = params.c, params.d, params.sigma
    stack: list[tuple[int, int]] = []
    tail = 0
    for g, n in tokens:
        if g == "b":
            tail += n
            continue
        eps = 1 if n > 0 else -1
        for _ in range(abs(n)):
            if stack and stack[-1][1] == -eps:
                modulus = d if eps > 0 else c
                if tail % modulus == 0:
                    # a^-1 b^(kd) a = b^(s k c)  and  a b^(kc) a^-1 = b^(s k d)
                    x, _ = stack.pop()
                    other = c if eps > 0 else d
                    tail = x + s * (tail // modulus) * other
                    continue
            if eps > 0:
                m, i = divmod(tail, d)
                stack.append((i, 1))
                tail = s * m * c
            else:
                m, i = divmod(tail, c)
                stack.append((i, -1))
                tail = s * m * d
    return GroupNF(tuple(stack), tail)


def word_tokens(alpha: PathL):
    return list(alpha.word().tokens)


def inverse_tokens(tokens):
    return [(g, -n) for g, n in reversed(list(tokens))]


def pair_times(alpha: PathL, beta: PathL, gamma_tokens) -> GroupNF:
    """Normal form of ``alpha * beta^-1 * gamma``."""
    toks = word_tokens(alpha) + inverse_tokens(word_tokens(beta)) + list(gamma_tokens)
    return group_nf(toks, alpha.params)


def below(beta: PathL, z: PathL) -> bool:
    """``beta <= z`` in the prefix order, decided as ``beta^-1 z`` lying in the monoid."""
    nf = group_nf(inverse_tokens(word_tokens(beta)) + word_tokens(z), beta.params)
    return nf.is_positive(beta.params)


def predecessors(z: PathL) -> list[PathL]:
    """Elements y of the monoid with ``z = y b`` or ``z = y a``."""
    p = z.params
    out = []
    if in_monoid(z.letters, z.tail - 1, p):
        out.append(PathL(p, z.letters, z.tail - 1))
    if z.letters:
        rho = to_form_r(z)
        if rho.letters[-1] == 0:
            lead, js = rho.lead, rho.letters[:-1]
            if in_monoid(js, lead, p):
                from .words import PathR

                out.append(from_form_r(PathR(p, lead, js)))
    return out


def extensions(alpha: PathL, depth: int):
    """All distinct ``alpha * w`` for generator words w of length at most depth."""
    p = alpha.params
    a = PathL(p, (0,), 0)
    b = PathL(p, (), 1)
    seen = {alpha}
    frontier = [alpha]
    for _ in range(depth):
        nxt = []
        for z in frontier:
            for g in (a, b):
                y = compose(z, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def join_oracle(alpha: PathL, beta: PathL, depth: int) -> set:
    """Minimal common extensions of alpha and beta reachable from alpha within depth.

    An element z is kept when it extends both inputs and neither of its
    immediate predecessors does.  Since common extensions form an up-set this
    is true minimality, not minimality relative to the search.
    """
    found = set()
    for z in extensions(alpha, depth):
        if not below(beta, z):
            continue
        if any(below(alpha, y) and below(beta, y) for y in predecessors(z)):
            continue
        found.add(z)
    return found


def initial_segments(z: PathL, limit: int = 10_000):
    """Every initial segment of z, found by walking predecessors."""
    seen = {z}
    queue = deque([z])
    while queue:
        y = queue.popleft()
        for x in predecessors(y):
            if x not in seen:
                seen.add(x)
                queue.append(x)
                if len(seen) > limit:
                    raise RuntimeError("initial segment search exceeded limit")
    return seen


def snf_invariants(rows):
    """Free rank and torsion of the cokernel of an integer matrix via sympy."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    m = Matrix(rows)
    n_rows, n_cols = m.shape
    snf = smith_normal_form(m, domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(n_rows, n_cols))]
    nonzero = [x for x in diag if x != 0]
    rank = n_rows - len(nonzero)
    torsion = sorted(x for x in nonzero if x > 1)
    return rank, torsion


def localized_cokernel_oracle(m: int, base: int, stages: int = 6):
    """``Z[1/base] / m`` from finite stages of the system ``Z/m --x base--> Z/m --> ...``.

    The limit is the image of stage K in stage 2K for K large.  That image is
    ``Z / (m, m / gcd(m, base^K))``; the gcd and the final invariants both come
    from Smith forms.  Returns ``(rank, torsion)`` at the last stage.
    """
    if m == 0:
        return 1, []
    result = None
    for k in range(1, stages + 1):
        _, g = snf_invariants([[base**k, abs(m)]])
        g = g[0] if g else 1
        result = snf_invariants([[abs(m), abs(m) // g]])
    return result


def staged_lead(i, h: int, n: int, K: int, params: BSParams) -> int:
    """Form-(R) lead of ``b^i_h a ... b^i_(K-1) a b^(n c)`` computed by plain normalization."""
    letters = tuple(i.entry(m) for m in range(h, K))
    return to_form_r(PathL(params, letters, n * params.c)).lead


def chain_count(i, params: BSParams, K: int = 60) -> int:
    """Number of distinct sets among C_0(i), C_1(i), ... and Cinf(i), seen at height 0.

    A lead that still grows between stage K and stage 2K is taken as unbounded.
    """
    seen = set()
    for n in range(params.c + 2):
        lo = staged_lead(i, 0, n, K, params)
        hi = staged_lead(i, 0, n, 2 * K, params)
        seen.add(lo if lo == hi else "inf")
    seen.add("inf")
    return len(seen)
