import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from polytrace.polyring import UniPoly, primitive_part, squarefree_part
from polytrace.rootiso import (
    IsolatingInterval,
    IsolationError,
    _mobius_int,
    count_roots_closed,
    count_roots_open,
    has_root_closed,
    has_root_open,
    isolate_roots,
    min_root_sep,
    mobius_transform,
    root_upper_bound,
    sign_at,
    sign_variations,
    strict_isolating_intervals,
    witness_sets,
)

s = UniPoly([0, 1])
X = sympy.Symbol("x")


def sympy_count(p: UniPoly, a, b) -> int:
    """Distinct real roots in [a, b] by Sturm sequences."""
    q = sympy.Poly([sympy.Rational(F(c).numerator, F(c).denominator) for c in reversed(p.coeffs)], X)
    return q.count_roots(sympy.Rational(a.numerator, a.denominator), sympy.Rational(b.numerator, b.denominator))


def planted(rng: random.Random, roots, extra_degree: int = 2) -> UniPoly:
    """Integer polynomial with the given rational roots times a factor with no real roots."""
    p = UniPoly.from_roots(roots, lead=rng.choice([1, -1, 2, -3]))
    for _ in range(extra_degree // 2):
        p = p * UniPoly([rng.randint(1, 9), rng.randint(-1, 1), rng.randint(1, 9)])
    return p


class TestExamples:
    def test_sign_variations(self):
        assert sign_variations(s**2 - 3 * s + 2) == 2
        assert sign_variations(s**2 + s + 1) == 0
        assert sign_variations(s**3 - 1) == 1

    def test_mobius(self):
        assert mobius_transform(s, 0, 1) == UniPoly([1])
        assert mobius_transform(UniPoly([F(5, 3)]), 0, 1) == UniPoly([F(5, 3)])
        q = mobius_transform(s - F(1, 2), 0, 1)
        assert q == UniPoly([F(1, 2), F(-1, 2)])
        assert sign_variations(q) == 1
        with pytest.raises(ValueError):
            mobius_transform(s, 1, 1)

    def test_has_root_open(self):
        assert has_root_open(s**2 - 2, 1, 2)
        assert not has_root_open(s**2 + 1, 0, 1)
        assert has_root_open(s - F(1, 2), 0, 1)
        with pytest.raises(ValueError):
            has_root_open(UniPoly(), 0, 1)

    def test_has_root_closed(self):
        assert has_root_closed(s - 1, 0, 1)
        assert not has_root_closed(s - 1, 0, F(1, 2))
        assert has_root_closed(s - F(1, 3), F(1, 3), F(1, 3))
        with pytest.raises(ValueError):
            has_root_closed(UniPoly(), 0, 1)

    def test_isolate(self):
        ivs = isolate_roots(8 * s**2 - 6 * s + 1)
        assert len(ivs) == 2
        assert ivs[0].contains(F(1, 4)) and ivs[1].contains(F(1, 2))
        assert isolate_roots(UniPoly([1])) == []
        (iv,) = isolate_roots(2 * s - 1)
        assert iv.contains(F(1, 2))

    def test_min_root_sep(self):
        assert min_root_sep(s**2 - 2) == F(1, 16)
        assert min_root_sep(s) == 1
        assert min_root_sep(8 * s**2 - 6 * s + 1) == F(1, 64)
        assert F(1, 64) < F(1, 2) - F(1, 4)
        with pytest.raises(ValueError):
            min_root_sep(UniPoly([4]))

    def test_min_root_sep_odd_degree_ceiling(self):
        # d = 3: ceil(3^4.5) = ceil(140.29...) = 141
        assert min_root_sep(s**3 - 2) == F(1, 141 * 2**2)

    def test_strict_singleton_expanded(self):
        p = [2 * s - 1]
        ivs = [IsolatingInterval(F(1, 2), F(1, 2))]
        (a, b), = strict_isolating_intervals(p, ivs, [{0}])
        assert a < F(1, 2) < b
        assert p[0](a) != 0 and p[0](b) != 0

    def test_strict_unchanged(self):
        p = [8 * s**2 - 6 * s + 1]
        ivs = [IsolatingInterval(F(1, 8), F(3, 8)), IsolatingInterval(F(3, 8), F(5, 8))]
        out = strict_isolating_intervals(p, ivs, [{0}, {0}])
        assert out.intervals == ((F(1, 8), F(3, 8)), (F(3, 8), F(5, 8)))

    def test_strict_root_at_zero(self):
        p = [s, 2 * s - 1]
        ivs = isolate_roots(p[0] * p[1])
        assert ivs == [IsolatingInterval(0, 1)]
        (a, b), = strict_isolating_intervals(p, ivs, witness_sets(p, ivs))
        assert a == min_root_sep(s * (2 * s - 1)) == F(1, 16)
        assert 0 < a < F(1, 2) < b

    def test_strict_root_at_one(self):
        p = [s - 1, 4 * s - 3]
        ivs = [IsolatingInterval(F(1, 2), 1)]
        (a, b), = strict_isolating_intervals(p, ivs, [{1}])
        assert a == F(1, 2) and F(3, 4) < b < 1
        assert b == 1 - min_root_sep(p[0] * p[1])

    def test_strict_touching_singleton(self):
        p = [8 * s**2 - 6 * s + 1]
        ivs = [IsolatingInterval(0, F(1, 2)), IsolatingInterval(F(1, 2), F(1, 2))]
        (a1, b1), (a2, b2) = strict_isolating_intervals(p, ivs, [{0}, {0}])
        assert b1 == a2 < F(1, 2) < b2
        assert F(1, 4) < b1
        assert p[0](b1) != 0 and p[0](b2) != 0

    def test_strict_empty_witness(self):
        with pytest.raises(ValueError):
            strict_isolating_intervals([s], [IsolatingInterval(0, 1)], [set()])

    def test_root_upper_bound(self):
        assert root_upper_bound(s - 4) == 5
        assert root_upper_bound(UniPoly([3])) == 1
        assert root_upper_bound(s**2 - 2) == 3
        with pytest.raises(ValueError):
            root_upper_bound(UniPoly())


class TestIsolationInternals:
    def test_depth_guard(self):
        with pytest.raises(IsolationError):
            isolate_roots((3 * s - 1) ** 2 * (3 * s - 2), max_depth=6)

    def test_integer_route_matches_literal_transform(self):
        rng = random.Random(5)
        for _ in range(200):
            p = UniPoly([rng.randint(-30, 30) for _ in range(rng.randint(2, 7))])
            if p.degree < 1:
                continue
            a = F(rng.randint(-8, 8), rng.randint(1, 6))
            b = a + F(rng.randint(1, 8), rng.randint(1, 6))
            lit = mobius_transform(p, a, b)
            fast = _mobius_int(list(p.coeffs), a, b)
            # both equal a positive multiple of the same polynomial
            ratio = None
            for x, y in zip(lit.coeffs, fast):
                assert (x == 0) == (y == 0)
                if x:
                    r = F(y) / x
                    assert r > 0 and (ratio is None or r == ratio)
                    ratio = r

    def test_sign_at(self):
        p = UniPoly([1, -4, 4])
        assert sign_at(p.coeffs, F(1, 2)) == 0
        assert sign_at(p.coeffs, F(1, 3)) == 1
        assert sign_at((), F(1, 3)) == 0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=9), min_size=1, max_size=5, unique=True), st.randoms())
def test_existence_tests_agree_with_planted(roots, rnd):
    p = planted(random.Random(rnd.random()), roots)
    for a, b in [(F(0), F(1)), (F(-1), F(1, 3)), (F(1, 4), F(3, 2))]:
        assert has_root_open(p, a, b) == any(a < r < b for r in roots)
        assert has_root_closed(p, a, b) == any(a <= r <= b for r in roots)
        assert count_roots_open(p, a, b) == sum(1 for r in roots if a < r < b)
        assert count_roots_closed(p, a, b) == sympy_count(p, a, b)


def check_isolation(q: UniPoly, ivs):
    """Clause-by-clause certificate for an isolation of the roots of q in (0, 1)."""
    assert len(ivs) <= q.degree
    prev_hi = F(0)
    for iv in ivs:
        assert 0 <= iv.lo <= iv.hi <= 1
        assert prev_hi <= iv.lo
        prev_hi = iv.hi
        if iv.kind == "open":
            assert sign_variations(mobius_transform(q, iv.lo, iv.hi)) == 1
            assert sympy_count(q, iv.lo, iv.hi) - (q(iv.lo) == 0) - (q(iv.hi) == 0) == 1
        else:
            assert q(iv.lo) == 0
    # gaps, including (0, a1) and (bJ, 1), are root-free
    edges = [F(0)] + [x for iv in ivs for x in (iv.lo, iv.hi)] + [F(1)]
    for lo, hi in zip(edges[::2], edges[1::2]):
        if lo < hi:
            assert not has_root_open(q, lo, hi)
    # every root in (0, 1) is covered
    total = sympy_count(q, F(0), F(1)) - (q(0) == 0) - (q(1) == 0)
    assert total == len(ivs)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=32), min_size=1, max_size=6, unique=True), st.randoms())
def test_isolation_certificate(roots, rnd):
    q = primitive_part(squarefree_part(planted(random.Random(rnd.random()), roots, extra_degree=2)))
    check_isolation(q, isolate_roots(q))


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=16), min_size=1, max_size=3, unique=True), min_size=1, max_size=3),
    st.randoms(),
)
def test_strict_certificate(root_groups, rnd):
    rng = random.Random(rnd.random())
    factors = [planted(rng, g, extra_degree=0) for g in root_groups]
    prod = UniPoly([1])
    for f in factors:
        prod = prod * f
    q = squarefree_part(prod)
    ivs = isolate_roots(q)
    out = strict_isolating_intervals(factors, ivs, witness_sets(factors, ivs))
    pts = [x for ab in out for x in ab]
    assert all(x <= y for x, y in zip(pts, pts[1:]))
    assert all(a < b for a, b in out)
    if len(out):
        assert prod(out[0][0]) != 0 and prod(out[-1][1]) != 0
        assert out[0][0] >= 0 and out[-1][1] <= 1
    for a, b in out:
        assert count_roots_closed(prod, a, b) == 1


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=0, max_value=1, max_denominator=1 << 12), st.integers(2, 20), st.randoms())
def test_separation_bound(r1, k, rnd):
    r2 = r1 + F(1, 2**k)
    p = planted(random.Random(rnd.random()), [r1, r2], extra_degree=2)
    assert min_root_sep(p) < r2 - r1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=7), min_size=1, max_size=5), st.randoms())
def test_root_upper_bound_planted(roots, rnd):
    p = planted(random.Random(rnd.random()), roots)
    bound = root_upper_bound(p)
    assert all(r < bound for r in roots)
    assert not has_root_closed(p, bound, bound + 1000)
