"""Cylinder functions, the connecting maps eta0/eta1, and the K-group table.

Level-k cylinder functions live on ``[0, e)^k`` where ``e = gcd(c, d)``; the
value at ``(mu_1, ..., mu_k)`` is the coefficient of the indicator of the
invariant set ``U(mu_1, ..., mu_k)``.  Index order is lexicographic with
``mu_1`` most significant, matching ``itertools.product``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import LevelZero
from .odometer import b_action_digits
from .words import BSParams, alpha_k

INT = "INT"
LOC = "LOC"


def _strip(den: int, base: int) -> int:
    """What is left of den after removing every prime factor it shares with base."""
    g = math.gcd(den, base)
    while g > 1:
        while den % g == 0:
            den //= g
        g = math.gcd(den, base)
    return den


@dataclass(frozen=True)
class LocalizedInt:
    """``numerator / base**exponent`` in canonical form."""

    numerator: int
    base: int
    exponent: int = 0

    def __post_init__(self):
        if self.base < 1 or self.exponent < 0:
            raise ValueError("base must be >= 1 and exponent >= 0")
        n, k = self.numerator, self.exponent
        if self.base == 1:
            k = 0
        while k > 0 and n % self.base == 0:
            n //= self.base
            k -= 1
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "exponent", k)

    @classmethod
    def from_fraction(cls, x, base: int) -> "LocalizedInt":
        x = Fraction(x)
        if _strip(x.denominator, base) != 1:
            raise ValueError(f"{x} is not in Z[1/{base}]")
        k = 0
        while (x * base**k).denominator != 1:
            k += 1
        return cls(int(x * base**k), base, k)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.base**self.exponent)

    def _other(self, other):
        if isinstance(other, LocalizedInt):
            if other.base != self.base:
                raise ValueError("bases differ")
            return other.to_fraction()
        if isinstance(other, int):
            return Fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return LocalizedInt.from_fraction(self.to_fraction() + o, self.base)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedInt(-self.numerator, self.base, self.exponent)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return LocalizedInt.from_fraction(self.to_fraction() * o, self.base)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LocalizedInt):
            return self.to_fraction() == other.to_fraction()
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def is_zero(self) -> bool:
        return self.numerator == 0

    def __str__(self):
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{self.base}^{self.exponent}"


@dataclass(frozen=True)
class CylinderFunction:
    level: int
    modulus: int
    values: tuple
    codomain: str = LOC
    scale: int = 1  # d' for LOC, where values may have denominators

    def __post_init__(self):
        if self.codomain not in (INT, LOC):
            raise ValueError(f"unknown codomain {self.codomain!r}")
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != self.modulus**self.level:
            raise ValueError(f"expected {self.modulus ** self.level} values, got {len(vals)}")
        for v in vals:
            if self.codomain == INT and v.denominator != 1:
                raise ValueError(f"non-integer value {v} in an integer-valued function")
            if self.codomain == LOC and _strip(v.denominator, self.scale) != 1:
                raise ValueError(f"value {v} is not in Z[1/{self.scale}]")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, level, modulus, codomain=LOC, scale=1):
        return cls(level, modulus, (0,) * modulus**level, codomain, scale)

    @classmethod
    def indicator(cls, mu: Sequence[int], modulus: int, codomain=LOC, scale=1):
        mu = tuple(mu)
        vals = [0] * modulus ** len(mu)
        vals[_index(mu, modulus)] = 1
        return cls(len(mu), modulus, tuple(vals), codomain, scale)

    @classmethod
    def for_params(cls, params: BSParams, level: int, values, codomain=LOC):
        return cls(level, params.e, tuple(values), codomain, params.d1 if codomain == LOC else 1)

    def _like(self, level, values):
        return CylinderFunction(level, self.modulus, tuple(values), self.codomain, self.scale)

    def __add__(self, other):
        self._check(other)
        return self._like(self.level, (x + y for x, y in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check(other)
        return self._like(self.level, (x - y for x, y in zip(self.values, other.values)))

    def scaled(self, k):
        return self._like(self.level, (k * x for x in self.values))

    def _check(self, other):
        if (self.level, self.modulus, self.codomain) != (other.level, other.modulus, other.codomain):
            raise ValueError("cylinder functions are not compatible")

    def is_zero(self):
        return all(v == 0 for v in self.values)

    def at(self, mu):
        return self.values[_index(tuple(mu), self.modulus)]

    def refine(self) -> "CylinderFunction":
        """Same function written at level + 1."""
        return self._like(self.level + 1, (v for v in self.values for _ in range(self.modulus)))

    def refine_to(self, level):
        f = self
        while f.level < level:
            f = f.refine()
        return f

    def same_function(self, other) -> bool:
        n = max(self.level, other.level)
        return self.refine_to(n).values == other.refine_to(n).values


def _index(mu, e):
    idx = 0
    for x in mu:
        if not 0 <= x < e:
            raise ValueError(f"index {x} outside [0, {e})")
        idx = idx * e + x
    return idx


def invariant_set_indicator(mu: Sequence[int], depth: int, params: BSParams) -> Callable[[Sequence[int]], bool]:
    """Predicate for the truncation of ``U(mu)`` to ``[0, d)^depth``."""
    mu = tuple(mu)
    e = params.e
    if depth < len(mu) + 1:
        raise ValueError("depth must be at least k + 1")
    if any(not 0 <= x < e for x in mu):
        raise ValueError(f"entries must lie in [0, {e})")

    def pred(x):
        return all(x[l] % e == mu[l - 1] for l in range(1, len(mu) + 1))

    return pred


def truncated_points(depth, params):
    return itertools.product(range(params.d), repeat=depth)


def b_orbit(points, params):
    """Closure of a set of truncated points under b and b^-1."""
    seen = set(points)
    stack = list(seen)
    while stack:
        x = stack.pop()
        for n in (1, -1):
            y = b_action_digits(x, n, params)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def orbit_cover_check(mu: Sequence[int], j0: int, depth: int, params: BSParams) -> bool:
    """Does the b-orbit of the truncated cylinder ``Z(j0, mu)`` fill the truncated U-set?"""
    mu = tuple(mu)
    pred = invariant_set_indicator(mu, depth, params)
    if not 0 <= j0 < params.d:
        raise ValueError(f"j0 outside [0, {params.d})")
    head = (j0,) + mu
    free = depth - len(head)
    cyl = [head + rest for rest in itertools.product(range(params.d), repeat=free)]
    orbit = b_orbit(cyl, params)
    target = {x for x in truncated_points(depth, params) if pred(x)}
    return orbit == target


def u_set_invariant(mu, depth, params) -> bool:
    pred = invariant_set_indicator(mu, depth, params)
    return all(
        pred(b_action_digits(x, n, params))
        for x in truncated_points(depth, params)
        if pred(x)
        for n in (1, -1)
    )


def _eta(f: CylinderFunction, factor: int) -> CylinderFunction:
    if f.level == 0:
        raise LevelZero("cannot drop an index from a level-0 function")
    e = f.modulus
    block = e ** (f.level - 1)
    out = [0] * block
    for idx, v in enumerate(f.values):
        out[idx % block] += v
    return f._like(f.level - 1, (factor * v for v in out))


def eta0(f: CylinderFunction, params: BSParams) -> CylinderFunction:
    """Sum over the first index and multiply by d'."""
    if f.codomain != LOC:
        raise ValueError("eta0 acts on Z[1/d']-valued functions")
    return _eta(f, params.d1)


def eta1(f: CylinderFunction, params: BSParams) -> CylinderFunction:
    """Sum over the first index and multiply by c', negated in the negative variant."""
    if f.codomain != INT:
        raise ValueError("eta1 acts on integer-valued functions")
    return _eta(f, -params.c1 if params.negative else params.c1)


def eta(f, params, which):
    return eta0(f, params) if which == "eta0" else eta1(f, params)


def integrate(f: CylinderFunction, params: BSParams) -> LocalizedInt:
    """Sum of values weighted by ``e^-level``, as an element of Z[1/d]."""
    total = sum(f.values, Fraction(0)) / Fraction(f.modulus) ** f.level
    return LocalizedInt.from_fraction(total, params.d)


def kernel_check_finite_stage(f: CylinderFunction, params: BSParams, which: str = "eta0") -> bool:
    g = f
    while g.level > 0:
        g = eta(g, params, which)
    return integrate(f, params).is_zero() == g.is_zero()


def boundary_class(js: Sequence[int], params: BSParams) -> CylinderFunction:
    """Image of the indicator of ``Z(j0, ..., jk)``: ``d'^-k`` on ``U(j1 mod e, ..., jk mod e)``."""
    js = tuple(js)
    if not js:
        raise ValueError("need at least j0")
    e = params.e
    k = len(js) - 1
    f = CylinderFunction.indicator(tuple(j % e for j in js[1:]), e, LOC, params.d1)
    return f.scaled(Fraction(1, params.d1**k))


def boundary_class_refines(js: Sequence[int], params: BSParams) -> bool:
    """Splitting ``Z(js)`` into its d children gives the same class."""
    js = tuple(js)
    whole = boundary_class(js, params)
    parts = [boundary_class(js + (l,), params) for l in range(params.d)]
    total = parts[0]
    for g in parts[1:]:
        total = total + g
    return whole.same_function(total)


def eta_refinement_consistent(f: CylinderFunction, params: BSParams, which="eta0") -> bool:
    return eta(f.refine(), params, which).same_function(eta(f, params, which))


@dataclass(frozen=True)
class AbelianGroupPresentation:
    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        if any(x < 2 for x in t):
            raise ValueError("invariant factors must be >= 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("invariant factors must divide successively")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclic(cls, free_rank: int, orders) -> "AbelianGroupPresentation":
        return cls(free_rank, invariant_factors(orders))

    def __add__(self, other):
        return AbelianGroupPresentation.from_cyclic(
            self.free_rank + other.free_rank, self.torsion + other.torsion
        )

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def to_json(self):
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def invariant_factors(orders) -> tuple:
    """Invariant factors of a direct sum of cyclic groups of the given orders."""
    xs = sorted(abs(int(x)) for x in orders if abs(int(x)) > 1)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            g = math.gcd(xs[i], xs[j])
            xs[i], xs[j] = g, xs[i] * xs[j] // g
    return tuple(x for x in xs if x > 1)


def localized_cokernel(m: int, base: int) -> AbelianGroupPresentation:
    """``Z[1/base] / m Z[1/base]``."""
    if base < 1:
        raise ValueError("base must be positive")
    if m == 0:
        return AbelianGroupPresentation(1)
    return AbelianGroupPresentation.from_cyclic(0, [_strip(abs(m), base)])


def localized_kernel(m: int, base: int) -> AbelianGroupPresentation:
    """Kernel of multiplication by m on ``Z[1/base]``."""
    if base < 1:
        raise ValueError("base must be positive")
    return AbelianGroupPresentation(1 if m == 0 else 0)


@dataclass(frozen=True)
class KGroups:
    K0: AbelianGroupPresentation
    K1: AbelianGroupPresentation
    identity_class: str

    def to_json(self):
        return {"K0": self.K0.to_json(), "K1": self.K1.to_json(), "identity_class": self.identity_class}


def k_groups(params: BSParams) -> KGroups:
    c, d = params.c, params.d
    m1 = (-c - 1) if params.negative else (c - 1)
    k0 = localized_cokernel(d - 1, d) + localized_kernel(m1, c)
    k1 = localized_cokernel(m1, c) + localized_kernel(d - 1, d)
    # the unit sits in the cokernel summand; it only needs a pair when K0 has two summands
    ident = "(1,0)" if (not params.negative and c == 1) else "1"
    return KGroups(k0, k1, ident)


def _ring(base):
    return "Z" if base == 1 else f"Z[1/{base}]"


@dataclass(frozen=True)
class FixedPointKGroups:
    params: BSParams

    @property
    def k0_base(self):
        return self.params.d

    @property
    def k1_base(self):
        return self.params.c

    def k0_certificate(self, k: int) -> dict:
        """Word pattern representing ``d^-k``."""
        pattern = " ".join(f"b^j{t} a" for t in range(k + 1))
        example = str(alpha_k((0,) * (k + 1), self.params))
        return {"value": f"{self.k0_base}^-{k}", "pattern": f"[S_({pattern}) S_({pattern})^*]", "example": example}

    def k1_certificate(self, k: int) -> dict:
        """Word pattern representing ``c^-k``; no claim is made about orientation."""
        w = " ".join(f"b^i{t} a" for t in range(1, k + 1)) or "e"
        return {"value": f"{self.k1_base}^-{k}", "pattern": f"[S_({w}) S_b S_({w})^* + ...]"}

    def to_json(self, levels=2):
        return {
            "K0": {"ring": _ring(self.k0_base), "base": self.k0_base,
                   "generators": [self.k0_certificate(k) for k in range(levels)]},
            "K1": {"ring": _ring(self.k1_base), "base": self.k1_base,
                   "generators": [self.k1_certificate(k) for k in range(levels)]},
        }


def fixed_point_k_groups(params: BSParams) -> FixedPointKGroups:
    return FixedPointKGroups(params)
