"""Real-root existence tests and root isolation on [0, 1].

All work is exact.  Root isolation uses the Descartes (VCA) bisection method
on integer polynomials; existence tests count sign variations after the
Moebius map ``s -> (a*s + b)/(s + 1)`` that sends (0, oo) onto (a, b).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyring import (
    UniPoly,
    as_rational,
    homothety,
    norms,
    primitive_part,
    rational_to_integer,
    reciprocal,
    squarefree_part,
    taylor_shift,
)

__all__ = [
    "IsolatingInterval",
    "StrictIntervalSet",
    "IsolationError",
    "sign_variations",
    "mobius_transform",
    "has_root_open",
    "has_root_closed",
    "count_roots_open",
    "count_roots_closed",
    "isolate_roots",
    "min_root_sep",
    "strict_isolating_intervals",
    "witness_sets",
    "root_upper_bound",
    "sign_at",
]


class IsolationError(RuntimeError):
    """Bisection exceeded its depth budget (input was probably not square-free)."""


@dataclass(frozen=True)
class IsolatingInterval:
    """An open interval ``(lo, hi)`` or a singleton ``{lo}`` inside [0, 1]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not 0 <= lo <= hi <= 1:
            raise ValueError(f"interval ({lo}, {hi}) not inside [0, 1]")

    @property
    def kind(self) -> str:
        return "singleton" if self.lo == self.hi else "open"

    def contains(self, s) -> bool:
        if self.lo == self.hi:
            return s == self.lo
        return self.lo < s < self.hi

    def __str__(self) -> str:
        if self.lo == self.hi:
            return f"{{{self.lo}}}"
        return f"({self.lo}, {self.hi})"


@dataclass(frozen=True)
class StrictIntervalSet:
    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __getitem__(self, j):
        return self.intervals[j]


# -- integer kernels ---------------------------------------------------------


def _var(cs: Sequence) -> int:
    count = 0
    prev = 0
    for c in cs:
        if c == 0:
            continue
        if prev and (c > 0) != (prev > 0):
            count += 1
        prev = c
    return count


def _shift1(a: list) -> list:
    # in-place Taylor shift by one, O(d^2) additions
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _shift_int(a: list, lam: int) -> list:
    n = len(a)
    if lam == 0:
        return a
    if lam == 1:
        return _shift1(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += lam * a[j + 1]
    return a


def _descartes01(cs: Sequence[int]) -> int:
    """Sign variations of ``(x+1)^d p(1/(x+1))``: bounds roots of ``p`` in (0, 1)."""
    return _var(_shift1(list(reversed(cs))))


def _int_coeffs(p: UniPoly) -> list[int]:
    if not p:
        raise ValueError("zero polynomial")
    return list(primitive_part(p).coeffs)


def _mobius_int(cs: list[int], a: Fraction, b: Fraction) -> list[int]:
    """Positive multiple of ``(x+1)^d p((a x + b)/(x + 1))`` computed in Z[x]."""
    d = len(cs) - 1
    den = math.lcm(a.denominator, b.denominator)
    A = a.numerator * (den // a.denominator)
    B = b.numerator * (den // b.denominator)
    # h(s) = den^d p(s/den), integral
    h = [c * den ** (d - i) for i, c in enumerate(cs)]
    _shift_int(h, A)
    width = B - A
    k = 1
    for i in range(len(h)):
        h[i] *= k
        k *= width
    h.reverse()
    return _shift1(h)


def sign_at(cs: Sequence[int], s: Fraction) -> int:
    """Sign of an integer polynomial at a rational point, without fractions."""
    s = Fraction(s)
    n, m = s.numerator, s.denominator
    acc = 0
    mp = 1
    for c in reversed(cs):
        acc = acc * n + c * mp
        mp *= m
    return (acc > 0) - (acc < 0)


# -- public operations -------------------------------------------------------


def sign_variations(p: UniPoly | Sequence) -> int:
    """Number of sign changes in the nonzero coefficient sequence."""
    cs = p.coeffs if isinstance(p, UniPoly) else p
    return _var(cs)


def mobius_transform(p: UniPoly, a, b) -> UniPoly:
    """``q(s) = (s+1)^d p((a s + b)/(s + 1))`` as ``T_1 R C_{b-a} T_a p``."""
    a, b = as_rational(a), as_rational(b)
    if not a < b:
        raise ValueError(f"need a < b, got ({a}, {b})")
    d = p.degree
    return taylor_shift(reciprocal(homothety(taylor_shift(p, a), b - a), d), 1)


def has_root_open(p: UniPoly, a, b) -> bool:
    """True iff ``p`` has a real root in the open interval ``(a, b)``."""
    if not p:
        raise ValueError("root test on the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError(f"need a < b, got ({a}, {b})")
    if p.degree == 0:
        return False
    cs = _int_coeffs(p)
    v = _var(_mobius_int(cs, a, b))
    if v == 0:
        return False
    if v == 1 or sign_at(cs, a) * sign_at(cs, b) < 0:
        return True
    # several variations may come from nearby complex roots; settle it exactly
    return next(_open_roots(_squarefree_int(p), a, b), None) is not None


def has_root_closed(p: UniPoly, a, b) -> bool:
    """True iff ``p`` has a real root in ``[a, b]``."""
    if not p:
        raise ValueError("root test on the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError(f"need a <= b, got [{a}, {b}]")
    cs = _int_coeffs(p)
    if sign_at(cs, a) == 0 or sign_at(cs, b) == 0:
        return True
    return a < b and has_root_open(p, a, b)


def _squarefree_int(p: UniPoly) -> list[int]:
    if p.degree < 1:
        return _int_coeffs(p)
    return _int_coeffs(squarefree_part(p))


def count_roots_open(p: UniPoly, a, b, *, squarefree: bool = False) -> int:
    """Exact number of distinct real roots of ``p`` in ``(a, b)``."""
    if not p:
        raise ValueError("root count of the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if a >= b or p.degree < 1:
        return 0
    cs = _int_coeffs(p) if squarefree else _squarefree_int(p)
    return sum(1 for _ in _open_roots(cs, a, b))


def _open_roots(cs: list[int], a: Fraction, b: Fraction):
    """Yield one bracket per root of the square-free ``cs`` in ``(a, b)``."""
    stack = [(a, b)]
    while stack:
        lo, hi = stack.pop()
        v = _var(_mobius_int(cs, lo, hi))
        if v == 1:
            yield lo, hi
        if v <= 1:
            continue
        mid = (lo + hi) / 2
        if sign_at(cs, mid) == 0:
            yield mid, mid
        stack.append((lo, mid))
        stack.append((mid, hi))


def count_roots_closed(p: UniPoly, a, b, *, squarefree: bool = False) -> int:
    """Exact number of distinct real roots of ``p`` in ``[a, b]``."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        return 0
    cs = _int_coeffs(p)
    ends = int(sign_at(cs, a) == 0)
    if a == b:
        return ends
    ends += int(sign_at(cs, b) == 0)
    return ends + count_roots_open(p, a, b, squarefree=squarefree)


def min_root_sep(q: UniPoly) -> Fraction:
    """``1 / (ceil(d^(3d/2)) * ||q||_inf^(d-1))`` for integer ``q`` of degree ``d >= 1``.

    Strictly below the minimum distance between distinct roots of ``q``.
    """
    if q.degree < 1:
        raise ValueError("root separation needs a non-constant polynomial")
    if not q.is_integral:
        q = rational_to_integer(q)
    d = q.degree
    big = d ** (3 * d)
    root = math.isqrt(big)
    ceil_pow = root if root * root == big else root + 1
    inf, _ = norms(q)
    return Fraction(1, ceil_pow * inf ** (d - 1))


def isolate_roots(q: UniPoly, *, max_depth: int | None = None) -> list[IsolatingInterval]:
    """Isolating intervals for the roots of a square-free ``q`` in (0, 1).

    Each subinterval ``(c/2^k, (c+1)/2^k)`` carries the integer polynomial
    ``2^(kd) q((c + x)/2^k)``, so its roots in (0, 1) are those of ``q`` in the
    subinterval.  Zero sign variations discard it, one emits it, more split it
    at the midpoint (emitting the midpoint as a singleton when it is a root).
    """
    if not q:
        raise ValueError("cannot isolate the roots of the zero polynomial")
    cs = _int_coeffs(q)
    d = len(cs) - 1
    if d < 1:
        return []
    if max_depth is None:
        bits = max(abs(c) for c in cs).bit_length()
        sep = min_root_sep(UniPoly._raw(cs))
        max_depth = max(8 * (d + bits), sep.denominator.bit_length() + 4)

    out: list[IsolatingInterval] = []
    stack = [(0, 0, cs)]
    while stack:
        c, k, poly = stack.pop()
        v = _descartes01(poly)
        if v == 0:
            continue
        scale = Fraction(1, 1 << k)
        if v == 1:
            out.append(IsolatingInterval(c * scale, (c + 1) * scale))
            continue
        if k >= max_depth:
            raise IsolationError(
                f"bisection depth {k} exceeded on degree-{d} input; is it square-free?"
            )
        # left half: 2^d poly(x/2); right half: left shifted by one
        left = [a << (d - i) for i, a in enumerate(poly)]
        if sum(left) == 0:
            out.append(IsolatingInterval((2 * c + 1) * scale / 2, (2 * c + 1) * scale / 2))
        right = _shift1(list(left))
        g = math.gcd(*left)
        if g > 1:
            left = [a // g for a in left]
            right = [a // g for a in right]
        stack.append((2 * c + 1, k + 1, right))
        stack.append((2 * c, k + 1, left))
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    return out


def _roots_in(p: UniPoly, iv) -> bool:
    lo, hi = (iv.lo, iv.hi) if isinstance(iv, IsolatingInterval) else iv
    if lo == hi:
        return sign_at(_int_coeffs(p), lo) == 0
    return has_root_open(p, lo, hi)


def witness_sets(p_list: Sequence[UniPoly], intervals: Sequence[IsolatingInterval]) -> list[set[int]]:
    """Indices of the polynomials with a root inside each interval."""
    return [{i for i, p in enumerate(p_list) if _roots_in(p, iv)} for iv in intervals]


def strict_isolating_intervals(
    p_list: Sequence[UniPoly],
    intervals: Sequence[IsolatingInterval],
    witness: Sequence[set[int]],
) -> StrictIntervalSet:
    """Turn isolating intervals for ``prod(p_list)`` into strict ones.

    Singletons are widened, touching endpoints at a root are pulled apart, and
    roots at 0 or 1 are pushed out of the first and last interval.  Every
    shift is bounded by the root separation of a product ``p_i * p_m`` of two
    factors rather than of the whole product.  Choices among the witness
    indices take the smallest index.
    """
    J = len(intervals)
    if len(witness) != J:
        raise ValueError("one witness set per interval required")
    for j, e in enumerate(witness):
        if not e:
            raise ValueError(f"empty witness set for interval {j}")
    ps = [p if p.is_integral else rational_to_integer(p) for p in p_list]
    if J == 0:
        return StrictIntervalSet(())

    # 1-based arrays with sentinels b[0] = 0 and a[J+1] = 1
    a = [Fraction(0)] + [iv.lo for iv in intervals] + [Fraction(1)]
    b = [Fraction(0)] + [iv.hi for iv in intervals] + [Fraction(1)]
    E = [None] + [sorted(e) for e in witness]

    def vanishes_at(x) -> int | None:
        for i, p in enumerate(ps):
            if p(x) == 0:
                return i
        return None

    if a[1] == 0:
        i = vanishes_at(0)
        if i is not None:
            m = E[1][0]
            a[1] = min_root_sep(ps[i] * ps[m])

    for j in range(1, J + 1):
        if a[j] != b[j]:
            continue
        m = E[j][0]
        if j > 1 and a[j] == b[j - 1]:
            i = E[j - 1][0]
            eps = min_root_sep(ps[i] * ps[m])
            a[j] = b[j - 1] = a[j] - eps
        else:
            a[j] = (a[j] + b[j - 1]) / 2
        if j < J and b[j] == a[j + 1]:
            i = E[j + 1][0]
            eps = min_root_sep(ps[i] * ps[m])
            b[j] = a[j + 1] = b[j] + eps
        else:
            b[j] = (b[j] + a[j + 1]) / 2

    if b[J] == 1:
        i = vanishes_at(1)
        if i is not None:
            m = E[J][0]
            b[J] = 1 - min_root_sep(ps[i] * ps[m])

    return StrictIntervalSet(tuple((a[j], b[j]) for j in range(1, J + 1)))


def root_upper_bound(p: UniPoly) -> Fraction:
    """Cauchy bound ``1 + ||p||_inf / |lc(p)|``: no root of ``p`` at or above it."""
    if not p:
        raise ValueError("zero polynomial has roots everywhere")
    if p.degree == 0:
        return Fraction(1)
    inf, _ = norms(p)
    return 1 + Fraction(inf) / abs(p.lc)
