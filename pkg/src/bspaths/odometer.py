"""Odometer maps on letter sequences.

``phi`` and friends describe what left multiplication by ``b^d`` does to an
infinite path ``b^i0 a b^i1 a ...``.  The authoritative versions push the
b-power through the word one ``a`` at a time; the ``*_closed_form`` versions
use the digit recursions and exist to be checked against them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import WrongCase
from .words import BSParams, PathL, push_a, raw_normal_form, to_form_r


@dataclass(frozen=True)
class CarrySeq:
    entries: tuple
    signs: tuple

    def exponents(self, c):
        """The b-exponents ``sign_k * c * r_k``."""
        return tuple(s * c * r for s, r in zip(self.signs, self.entries))


def carry_sign(k: int, params: BSParams) -> int:
    """Sign of the tail after k+1 letters: always +1, alternating -,+,-,... when negative."""
    if not params.negative:
        return 1
    return -1 if k % 2 == 0 else 1


def _check_prefix(i, params):
    i = tuple(i)
    if not i:
        raise ValueError("prefix must have at least one entry")
    for x in i:
        if not 0 <= x < params.d:
            raise ValueError(f"entry {x} outside [0, {params.d})")
    return i


def phi(i: Sequence[int], params: BSParams):
    """Return ``(j, carries)`` with ``b^d alpha_k(j) = alpha_k(i) b^(sign_k c r_k)``.

    Works by choosing each j_m so that the running tail pushed through the
    next ``a`` reproduces i_m.
    """
    i = _check_prefix(i, params)
    d, c = params.d, params.c
    j = []
    rs = []
    tail = d
    for m, target in enumerate(i):
        jm = (target - tail) % d
        letter, tail = push_a(tail + jm, params)
        assert letter == target
        j.append(jm)
        sign = carry_sign(m, params)
        r, rem = divmod(tail, sign * c)
        if rem or r < 0:
            raise AssertionError(f"tail {tail} is not a nonnegative multiple of {sign * c}")
        rs.append(r)
    signs = tuple(carry_sign(m, params) for m in range(len(i)))
    return tuple(j), CarrySeq(tuple(rs), signs)


def _ceil_div(a, b):
    return -((-a) // b)


def phi_closed_form(i: Sequence[int], params: BSParams):
    """Digit recursion for phi and r, one formula per case."""
    i = _check_prefix(i, params)
    c, d = params.c, params.d
    case = params.case
    signs = tuple(carry_sign(m, params) for m in range(len(i)))
    if case == "BS2":
        ell = next((mu for mu in range(1, len(i)) if i[mu] >= c), None)
        j, rs = [], []
        for mu, x in enumerate(i):
            if mu == 0:
                j.append(x)
            elif ell is None or mu < ell:
                j.append(x + d - c)
            elif mu == ell:
                j.append(x - c)
            else:
                j.append(x)
            rs.append(1 if ell is None or mu < ell else 0)
        return tuple(j), CarrySeq(tuple(rs), signs)

    j, rs = [i[0]], [1]
    for k in range(1, len(i)):
        prev = rs[-1]
        if case == "BS1":
            jk = (i[k] - c * prev) % d
            rk = (jk - i[k] + c * prev) // d
        else:
            # floor for odd k, ceiling for even k; the sign in front of the
            # bracket is (-1)^(k+1)
            if k % 2:
                rk = (c * prev + i[k]) // d
            else:
                rk = _ceil_div(c * prev - i[k], d)
            sgn = 1 if k % 2 else -1
            jk = i[k] + sgn * (c * prev - d * rk)
        j.append(jk)
        rs.append(rk)
    return tuple(j), CarrySeq(tuple(rs), signs)


def phi_inverse(j: Sequence[int], params: BSParams) -> tuple:
    """Letters of the left form of ``b^d alpha_k(j)``."""
    j = _check_prefix(j, params)
    letters, _ = raw_normal_form(PathL(params, j, 0).word(), params, (), params.d)
    return letters


def psi_closed_form(j: Sequence[int], params: BSParams):
    """Inverse recursion (psi, s) in the negative variant."""
    if not params.negative:
        raise WrongCase("psi/s recursion is for the negative variant")
    j = _check_prefix(j, params)
    c, d = params.c, params.d
    out, ss = [j[0]], [1]
    for k in range(1, len(j)):
        prev = ss[-1]
        if k % 2:
            sk = _ceil_div(c * prev - j[k], d)
        else:
            sk = (c * prev + j[k]) // d
        sgn = 1 if k % 2 == 0 else -1
        out.append(j[k] + sgn * (c * prev - d * sk))
        ss.append(sk)
    return tuple(out), tuple(ss)


def b_action(i: Sequence[int], n: int, params: BSParams) -> tuple:
    """Letters of ``b^n alpha_k(i)``; the final carry is dropped."""
    i = _check_prefix(i, params)
    letters, _ = raw_normal_form(PathL(params, i, 0).word(), params, (), n)
    return letters


def b_action_digits(i: Sequence[int], n: int, params: BSParams) -> tuple:
    """Same as :func:`b_action` written as an adding machine with +-c carries."""
    i = _check_prefix(i, params)
    d, c, s = params.d, params.c, params.sigma
    out = []
    carry = n
    for x in i:
        q, rem = divmod(x + carry, d)
        out.append(rem)
        carry = s * q * c
    return tuple(out)


def phi_power(i, h, params):
    """Iterate phi h times, collecting the carry vectors."""
    seqs = []
    cur = tuple(i)
    for _ in range(h):
        nxt, r = phi(cur, params)
        seqs.append(r)
        cur = nxt
    return cur, seqs


def psi_finite_bs2(i: Sequence[int], params: BSParams):
    """``(psi, r)`` with ``b^(d r) alpha(psi) = alpha(i) b^c``, entries in [0, c)."""
    if params.case != "BS2":
        raise WrongCase("psi for finite tuples is defined in the d > c positive case")
    i = tuple(i)
    if not i or any(not 0 <= x < params.c for x in i):
        raise ValueError(f"entries must lie in [0, {params.c})")
    base = PathL(params, i, 0)
    rho = to_form_r(PathL(params, base.letters, params.c))
    assert rho.letters[-1] == 0, rho
    r, rem = divmod(rho.lead - i[0], params.d)
    assert rem == 0 and r >= 1
    return (i[0],) + rho.letters[:-1], r
