import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bspaths import BSParams, DepthExceeded, InvalidSequence, PathL, Periodic, WrongCase, compose, path
from bspaths import oracles
from bspaths.hereditary import (
    C0,
    INF,
    BoundaryTriple,
    CInf,
    CnBS1,
    CnBS2,
    Coset,
    EventuallyPeriodicSeq,
    Finite,
    chain_bs2,
    classify_sigma,
    compose_boundary_triples,
    contains_b,
    descriptor_from_json,
    descriptor_to_json,
    make_descriptor,
    max_tail,
    member,
    periodicity_check,
    reach,
    separation_witness,
    sigma_shift_bs1,
    structural_flags,
    triples_equal,
    validate_seq_bs1,
)
from bspaths.lattice import join, meets
from bspaths.odometer import b_action, phi

E = EventuallyPeriodicSeq
P22 = BSParams.of(2, 2)
P32 = BSParams.of(3, 2)
P23 = BSParams.of(2, 3)
N22 = BSParams.of(2, 2, True)


def all_paths(p, max_h, max_t):
    for k in range(max_h + 1):
        for lets in itertools.product(range(p.d), repeat=k):
            lo = -max_t if (p.negative and lets) else 0
            for t in range(lo, max_t + 1):
                yield PathL(p, lets, t)


def test_sequence_parse_and_entries():
    s = E.parse("0,1|1,0")
    assert s.prefix(6) == (0, 1, 1, 0, 1, 0)
    assert str(s) == "0,1|1,0"
    assert s.shift(3).prefix(3) == (0, 1, 0)
    assert E.parse("2").prefix(3) == (2, 2, 2)


def test_member_examples():
    i = E((), (0,))
    assert member(CInf(P22, i), path("b^5", P22))
    D = CnBS1(P22, (0, 0, 0), (1, 1, 1))
    assert member(D, path("b^2", P22))
    assert not member(D, path("b^3", P22))
    assert not member(C0(P22, i), path("b a", P22))


def test_member_depth_exceeded():
    D = CnBS1(P22, (0, 0), (1, 1))
    with pytest.raises(DepthExceeded):
        member(D, path("a a", P22))


def test_validate_seq_examples():
    assert validate_seq_bs1((0, 0), (1, 1), P22)
    assert not validate_seq_bs1((0, 0), (1, 0), P22)
    with pytest.raises(WrongCase):
        validate_seq_bs1((0,), (0,), P23)
    with pytest.raises(InvalidSequence):
        CnBS1(P22, (0, 0), (1, 0))


@pytest.mark.parametrize("p", [P22, P32, BSParams.of(5, 2)], ids=lambda p: p.label())
def test_validate_seq_extension_exists(p):
    # the admissible interval for n_l always contains an integer since c/d >= 1
    for i in itertools.product(range(p.d), repeat=3):
        for n0 in range(4):
            n = [n0]
            for ell in (1, 2):
                lo = math.ceil((p.c * n[-1] - i[ell]) / p.d)
                n.append(lo)
            assert validate_seq_bs1(i, n, p)


def test_max_tail_examples():
    assert max_tail(CnBS1(P22, (0, 0), (1, 1)), 0) == 2
    assert max_tail(CInf(P22, E((), (1,))), 3) == INF
    i = E((1,), (0, 1))
    for h in range(4):
        assert max_tail(C0(P32, i), h) == i.entry(h)


def test_max_tail_c0_bs1_by_search():
    # largest q with alpha_(h-1)(i) b^q below some alpha_K(i)
    i = E((1, 0), (1,))
    for h in range(3):
        best = max(
            q for q in range(12)
            if any(oracles.below(PathL(P32, i.prefix(h), q), PathL(P32, i.prefix(K), 0)) for K in range(h + 1, h + 6))
        )
        assert max_tail(C0(P32, i), h) == best


def test_sigma_shift_example():
    i = (0, 0)
    assert phi(i, P22)[0] == (0, 0)
    n2 = sigma_shift_bs1(i, (0, 0), P22)
    assert n2 == (1, 1) and validate_seq_bs1(i, n2, P22)
    with pytest.raises(InvalidSequence):
        sigma_shift_bs1(i, (0, 5), P22)


def test_chain_examples():
    assert chain_bs2(E((), (1,)), P23) == (1, 1)
    assert chain_bs2(E((), (0,)), P23) == (0, 2)
    s, m = chain_bs2(E((), (2,)), P23)
    assert m == 0
    i = E((), (2,))
    # C_0 = C_inf: every b-power is already in C_0
    assert all(member(C0(P23, i), path(f"b^{q}", P23)) for q in range(30))
    with pytest.raises(WrongCase):
        chain_bs2(i, P22)


@pytest.mark.parametrize("cd", [(1, 2), (2, 3), (2, 5), (3, 5)])
def test_chain_length_matches_staged_leads(cd):
    p = BSParams.of(*cd)
    for per in itertools.product(range(p.d), repeat=2):
        i = E((), per)
        s, m = chain_bs2(i, p)
        assert oracles.chain_count(i, p) == m + 1


def test_chain_sets_are_distinct():
    i = E((), (0,))
    s, m = chain_bs2(i, P23)
    tails = [max_tail(CnBS2(P23, i, n), 0) for n in range(m)]
    assert tails == sorted(set(tails))
    assert reach(i, 0, m, P23) == INF


def test_contains_b_examples():
    i = E((), (0,))
    assert contains_b(CInf(P22, i))
    assert not contains_b(CnBS1(P22, (0, 0), (1, 1)))
    assert contains_b(C0(N22, i))
    assert contains_b(CnBS1(P22, (0, 0), (1, 1)), depth=2)


def test_negative_variant_rejects_intermediate_sets():
    with pytest.raises(WrongCase):
        make_descriptor(CnBS1(BSParams.of(2, 2, True), (), ()))


def test_separation_witness_examples():
    e = PathL.identity(P32)
    assert separation_witness(path("a", P32), path("b a", P32)) == e
    assert separation_witness(e, path("b", P32)) == path("a", P32)
    assert separation_witness(e, path("b^2", P32)) == path("a a", P32)
    with pytest.raises(Periodic):
        separation_witness(PathL.identity(P22), path("b", P22))
    # negative tail in the negative variant: the leftover b-power is not a letter
    n32 = BSParams.of(3, 2, True)
    a, b = PathL(n32, (1,), -2), PathL(n32, (1, 0, 0), -2)
    g = separation_witness(a, b)
    assert not meets(compose(a, g), compose(b, g))


@given(st.sampled_from([(3, 2), (2, 3), (1, 2), (5, 3), (3, 2, True)]), st.data())
def test_separation_witness_property(cd, data):
    p = BSParams.of(*cd)
    def draw():
        lets = tuple(data.draw(st.lists(st.integers(0, p.d - 1), max_size=3)))
        lo = -5 if (p.negative and lets) else 0
        return PathL(p, lets, data.draw(st.integers(lo, 5)))
    a, b = draw(), draw()
    if a == b:
        return
    g = separation_witness(a, b)
    assert not meets(compose(a, g), compose(b, g))


def test_structural_flags_examples():
    assert structural_flags(P32) == dict(minimal=True, contractive=True, topologicallyFree=True, kirchberg=True)
    assert structural_flags(P22) == dict(minimal=True, contractive=True, topologicallyFree=False, kirchberg=False)
    assert structural_flags(BSParams.of(1, 1)) == dict(
        minimal=True, contractive=False, topologicallyFree=False, kirchberg=False
    )


def test_periodicity_examples():
    assert periodicity_check(P22, path("a", P22))
    assert path("b^2 a", P22) == path("a b^2", P22)
    p = BSParams.of(4, 2)
    for k in range(7):
        for w in itertools.product("ab", repeat=k):
            g = path(" ".join(w) or "e", p)
            assert periodicity_check(p, g)
    with pytest.raises(WrongCase):
        periodicity_check(P32, path("a", P32))


# definitional membership oracles


def _below_some(beta, tops):
    return any(oracles.below(beta, t) for t in tops)


@pytest.mark.parametrize("p", [P22, P32, P23, BSParams.of(1, 2)], ids=lambda p: p.label())
def test_c0_membership_matches_union(p):
    rng = random.Random(2)
    for _ in range(6):
        i = E(tuple(rng.randrange(p.d) for _ in range(rng.randint(0, 2))),
              tuple(rng.randrange(p.d) for _ in range(rng.randint(1, 2))))
        D = C0(p, i)
        tops = [PathL(p, i.prefix(K), 0) for K in range(1, 25)]
        for beta in all_paths(p, 2, 6):
            expect = _below_some(beta, tops)
            got = member(D, beta)
            if max_tail(D, beta.height) == INF and beta.letters == i.prefix(beta.height):
                # unbounded reach: finite stages only see part of it
                assert got
            else:
                assert got == expect, (i, beta)


@pytest.mark.parametrize("p", [P23, BSParams.of(1, 2), BSParams.of(2, 5)], ids=lambda p: p.label())
def test_cn_bs2_membership_matches_stages(p):
    for per in itertools.product(range(p.c), repeat=2):
        i = E((), per)
        s, m = chain_bs2(i, p)
        for n in range(m):
            D = CnBS2(p, i, n)
            tops = [PathL(p, i.prefix(K), n * p.c) for K in range(1, 30)]
            for beta in all_paths(p, 2, 8):
                assert member(D, beta) == _below_some(beta, tops), (i, n, beta)


def test_coset_membership_matches_union():
    p = P32
    D = Coset(p, (1, 0))
    tops = [PathL(p, (1, 0), q) for q in range(40)]
    for beta in all_paths(p, 3, 6):
        assert member(D, beta) == _below_some(beta, tops)


def test_finite_membership():
    alpha = path("b a b^4 a b", P32)
    D = Finite(alpha)
    segs = oracles.initial_segments(alpha)
    for beta in all_paths(P32, 2, 8):
        assert member(D, beta) == (beta in segs)


def _descriptors():
    i = E((1,), (0, 1))
    yield Finite(path("b a b^3 a", P32))
    yield Coset(P32, (1, 0))
    yield C0(P32, i)
    yield CInf(P32, i)
    yield CnBS1(P22, (0, 1, 0, 1), (1, 1, 1, 1))
    yield CnBS2(P23, E((), (0,)), 1)
    yield C0(P23, E((), (1, 0)))
    yield C0(N22, i)
    yield Finite(path("a b^-3", N22))


@pytest.mark.parametrize("D", list(_descriptors()), ids=lambda D: D.tag)
def test_descriptors_are_directed_hereditary(D):
    p = D.alpha.params if isinstance(D, Finite) else D.params
    max_h = 2
    members = [b for b in all_paths(p, max_h, 5) if member(D, b)]
    assert members
    # closure under immediate predecessors gives closure under initial segments
    for b in members:
        for seg in oracles.predecessors(b):
            assert member(D, seg), (b, seg)
    for x, y in itertools.combinations(members[:40], 2):
        j = join(x, y)
        assert not j.disjoint
        if j.value.height <= max_h or isinstance(D, (Finite, Coset, CInf)):
            if not isinstance(D, CnBS1) or j.value.height < 4:
                assert member(D, j.value)


@pytest.mark.parametrize("D", list(_descriptors()), ids=lambda D: D.tag)
def test_descriptor_json_roundtrip(D):
    assert descriptor_from_json(descriptor_to_json(D)) == D


def test_exclusion_and_monotone():
    p = P32
    i = (1, 0, 1, 1)
    n = (1, 2, 3, 4)
    n2 = (1, 2, 3, 5)
    assert validate_seq_bs1(i, n, p) and validate_seq_bs1(i, n2, p)
    D, D2 = CnBS1(p, i, n), CnBS1(p, i, n2)
    for ell in range(4):
        assert not member(D, PathL(p, i[:ell], (n[ell] + 1) * p.d))
    for beta in all_paths(p, 3, 12):
        if member(D, beta):
            assert member(D2, beta)


def test_classify_sigma():
    assert classify_sigma(E((), (0,)), N22)["kind"] == "empty"
    assert classify_sigma(E((), (0,)), P22)["kind"] == "family"
    out = classify_sigma(E((), (0,)), P23)
    assert out["kind"] == "chain" and out["chain_length"] == 3
    assert classify_sigma(E((), (2,)), P23)["kind"] == "collapsed"


# boundary triples


def test_triple_inverse_and_unit():
    x = E((0,), (1, 0))
    g = BoundaryTriple(path("b a", P32), path("a b^2", P32), x)
    assert g.inverse().alpha == g.beta
    prod = compose_boundary_triples(g, g.inverse())
    assert prod.is_unit()
    assert triples_equal(prod, BoundaryTriple(g.alpha, g.alpha, x))


def test_triple_trivial_alignment():
    x = E((), (1,))
    a, b, d = path("a", P32), path("b a", P32), path("a a", P32)
    prod = compose_boundary_triples(BoundaryTriple(a, b, x), BoundaryTriple(b, d, x))
    assert triples_equal(prod, BoundaryTriple(a, d, x))


@pytest.mark.parametrize("p", [P32, P23, P22, N22], ids=lambda p: p.label())
def test_triple_cocycle(p):
    rng = random.Random(7)
    L, depth = 6, 30
    done = 0
    for _ in range(200):
        x = E((), tuple(rng.randrange(p.d) for _ in range(rng.randint(1, 2))))
        beta = PathL(p, tuple(rng.randrange(p.d) for _ in range(rng.randint(0, 2))), rng.randint(0, 3))
        alpha = PathL(p, tuple(rng.randrange(p.d) for _ in range(rng.randint(0, 2))), rng.randint(0, 3))
        g = BoundaryTriple(alpha, beta, x)
        # h ends at gamma*y = beta*x with gamma = beta b^n, so y = b^-n x
        n = rng.randint(0, 3)
        gamma = PathL(p, beta.letters, beta.tail + n)
        y_pre = b_action(x.prefix(depth), -n, p)
        if y_pre[L:] != x.prefix(depth)[L:]:
            continue  # carries did not die out; y is not of the simple form
        y = E(y_pre[:L], x.shift(L).period)
        delta = PathL(p, tuple(rng.randrange(p.d) for _ in range(rng.randint(0, 2))), rng.randint(0, 3))
        h = BoundaryTriple(gamma, delta, y)
        prod = compose_boundary_triples(g, h)
        assert prod.height_diff() == g.height_diff() + h.height_diff()
        # the product starts where h starts and ends where g ends
        assert triples_equal(compose_boundary_triples(prod, h.inverse()), g)
        done += 1
    assert done > 20
