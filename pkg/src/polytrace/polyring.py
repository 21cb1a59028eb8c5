"""Exact univariate and multivariate polynomial arithmetic over Q.

Coefficients are Python ints or :class:`fractions.Fraction`.  Integral
fractions are stored as plain ints so that integer polynomials stay on the
fast bigint path.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "UniPoly",
    "MultiPoly",
    "PolyVec",
    "as_rational",
    "poly_eval",
    "derivative",
    "poly_divmod",
    "poly_gcd",
    "squarefree_part",
    "rational_to_integer",
    "primitive_part",
    "content",
    "taylor_shift",
    "reciprocal",
    "homothety",
    "norms",
    "multi_compose",
    "multi_eval",
]


def as_rational(x) -> int | Fraction:
    """Coerce ``x`` to an exact scalar, rejecting floats."""
    if isinstance(x, bool):
        raise TypeError("booleans are not polynomial coefficients")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return as_rational(Fraction(x))
    if isinstance(x, Rational):
        return as_rational(Fraction(x.numerator, x.denominator))
    raise TypeError(f"inexact or unsupported scalar {x!r}")


def _strip(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


class UniPoly:
    """Dense univariate polynomial, coefficients in ascending degree order.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = tuple(_strip([as_rational(c) for c in coeffs]))

    @classmethod
    def _raw(cls, cs: list) -> "UniPoly":
        # trusted constructor: cs already normalised scalars
        p = object.__new__(cls)
        p.coeffs = tuple(_strip(cs))
        return p

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "UniPoly":
        p = cls([lead])
        for r in roots:
            r = as_rational(r)
            if isinstance(r, Fraction):
                p = p * cls([-r.numerator, r.denominator])
            else:
                p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if i == 0:
                body = str(a)
            else:
                mono = "s" if i == 1 else f"s**{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = as_rational(out[i] + c)
        return UniPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            k = as_rational(other)
            if k == 0:
                return UniPoly()
            return UniPoly._raw([as_rational(c * k) for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UniPoly._raw([as_rational(c) for c in out])

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, s):
        return poly_eval(self, s)

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        return poly_divmod(self, self._coerce(other))

    def __floordiv__(self, other) -> "UniPoly":
        return poly_divmod(self, self._coerce(other))[0]

    def __mod__(self, other) -> "UniPoly":
        return poly_divmod(self, self._coerce(other))[1]

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        lc = self.coeffs[-1]
        return UniPoly._raw([as_rational(Fraction(c) / lc) for c in self.coeffs])

    def derivative(self) -> "UniPoly":
        return derivative(self)


def poly_eval(p: UniPoly, s) -> int | Fraction:
    """Exact Horner evaluation ``p(s)``."""
    s = as_rational(s)
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * s + c
    return as_rational(acc)


def derivative(p: UniPoly) -> UniPoly:
    return UniPoly._raw([i * c for i, c in enumerate(p.coeffs)][1:])


def poly_divmod(p: UniPoly, u: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Euclidean division ``p = u*q + r`` with ``deg r < deg u``."""
    if not u:
        raise ZeroDivisionError("polynomial division by zero")
    du = u.degree
    rem = list(p.coeffs)
    if len(rem) <= du:
        return UniPoly(), UniPoly._raw(rem)
    lc = u.coeffs[-1]
    ucs = u.coeffs
    quot = [0] * (len(rem) - du)
    unit = lc == 1 or lc == -1
    for k in range(len(rem) - 1, du - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        if unit:
            q = c * lc
        elif isinstance(c, int) and isinstance(lc, int) and c % lc == 0:
            q = c // lc
        else:
            q = as_rational(Fraction(c) / lc)
        quot[k - du] = q
        for j in range(du + 1):
            rem[k - du + j] -= q * ucs[j]
    rem = [as_rational(c) for c in rem[:du]]
    return UniPoly._raw([as_rational(c) for c in quot]), UniPoly._raw(rem)


def content(p: UniPoly) -> int:
    """Gcd of the coefficients of an integer polynomial (0 for the zero polynomial)."""
    return math.gcd(*p.coeffs) if p.coeffs else 0


def primitive_part(p: UniPoly) -> UniPoly:
    """Integer polynomial divided by its content; sign of the leading term kept."""
    if not p.is_integral:
        p = rational_to_integer(p)
    g = content(p)
    if g <= 1:
        return p
    return UniPoly._raw([c // g for c in p.coeffs])


def _prem(a: list[int], b: list[int]) -> list[int]:
    # pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, integer only
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        c = r.pop()
        shift = len(r) - db
        r = [x * lb for x in r]
        for j in range(db):
            r[shift + j] -= c * b[j]
        e -= 1
        _strip(r)
    if e > 0 and r:
        f = lb**e
        r = [x * f for x in r]
    return r


_GCD_PRIMES = (2**61 - 1, 2**31 - 1)


def _coprime_mod(a: list[int], b: list[int]) -> bool:
    """True if the gcd is constant modulo some prime not dividing both leading terms.

    Reduction modulo such a prime can only raise the gcd degree, so a
    constant modular gcd proves the integer polynomials coprime.
    """
    for m in _GCD_PRIMES:
        if a[-1] % m == 0 or b[-1] % m == 0:
            continue
        x = [c % m for c in a]
        y = [c % m for c in b]
        while y:
            _strip(y)
            if not y:
                break
            if len(y) == 1:
                return True
            inv = pow(y[-1], -1, m)
            dy = len(y) - 1
            while len(x) - 1 >= dy and x:
                c = x[-1] * inv % m
                shift = len(x) - 1 - dy
                for j in range(dy + 1):
                    x[shift + j] = (x[shift + j] - c * y[j]) % m
                _strip(x)
            x, y = y, x
        return False
    return False


def _exact_quotient(a: list[int], b: list[int]) -> list[int] | None:
    """``a / b`` in Z[s] when ``b`` divides ``a`` exactly, else ``None``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        return None if r else []
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c, rem = divmod(r[k], lb)
        if rem:
            return None
        q[k - db] = c
        if c:
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
    return q if not any(r[:db]) else None


def _eval_int(cs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _heuristic_gcd(a: list[int], b: list[int]) -> list[int] | None:
    # evaluate at a large integer, take the integer gcd and read its digits
    # back in a symmetric base-x representation; exact division confirms
    bound = min(max(abs(c) for c in a), max(abs(c) for c in b))
    x = 2 * bound + 29
    for _ in range(6):
        fa, fb = _eval_int(a, x), _eval_int(b, x)
        if fa and fb:
            h = math.gcd(fa, fb)
            cs = []
            half = x // 2
            while h:
                d = h % x
                if d > half:
                    d -= x
                cs.append(d)
                h = (h - d) // x
            if cs and cs[-1] < 0:
                cs = [-c for c in cs]
            if cs:
                g = math.gcd(*cs)
                cs = [c // g for c in cs]
                if _exact_quotient(a, cs) is not None and _exact_quotient(b, cs) is not None:
                    return cs
        x = 73794 * x * math.isqrt(math.isqrt(x)) // 27011
    return None


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd over Q, computed on primitive integer polynomials.

    A modular test settles the coprime case, a heuristic evaluation gcd
    (checked by exact division) handles most others, and the subresultant
    remainder sequence is the fallback.

    ``poly_gcd(p, 0) == p / lc(p)``; ``poly_gcd(0, 0)`` raises ``ValueError``.
    """
    if not p and not q:
        raise ValueError("gcd(0, 0) is undefined")
    if not q:
        return p.monic()
    if not p:
        return q.monic()
    a = list(primitive_part(p).coeffs)
    b = list(primitive_part(q).coeffs)
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1 or _coprime_mod(a, b):
        return UniPoly([1])
    h = _heuristic_gcd(a, b)
    if h is not None:
        return UniPoly._raw(h).monic()
    return _subresultant_gcd(a, b)


def _subresultant_gcd(a: list[int], b: list[int]) -> UniPoly:
    if len(a) < len(b):
        a, b = b, a
    g = h = 1
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        if len(r) == 1:
            return UniPoly([1])
        div = g * h**delta
        a, b = b, [x // div for x in r]
        g = a[-1]
        if delta:
            h = g**delta // h ** (delta - 1)
    return primitive_part(UniPoly._raw(b)).monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """``p / gcd(p, p')``: same roots as ``p``, each simple."""
    if p.degree < 1:
        raise ValueError("square-free part requires a non-constant polynomial")
    v = poly_gcd(p, derivative(p))
    q, r = poly_divmod(p, v)
    assert not r
    return q


def rational_to_integer(p: UniPoly) -> UniPoly:
    """Scale by the lcm of the coefficient denominators (a positive factor)."""
    dens = [c.denominator for c in p.coeffs if isinstance(c, Fraction)]
    if not dens:
        return p
    m = math.lcm(*dens)
    return UniPoly._raw([as_rational(c * m) for c in p.coeffs])


def taylor_shift(p: UniPoly, lam) -> UniPoly:
    """Return ``p(s + lam)`` by repeated synthetic division, O(d^2)."""
    lam = as_rational(lam)
    a = list(p.coeffs)
    if lam == 0 or len(a) < 2:
        return p
    n = len(a)
    if lam == 1:
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] += a[j + 1]
    else:
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] += lam * a[j + 1]
    return UniPoly._raw([as_rational(c) for c in a])


def reciprocal(p: UniPoly, d: int | None = None) -> UniPoly:
    """Reverse the coefficients relative to the nominal degree ``d`` (default ``deg p``)."""
    if d is None:
        d = p.degree
    if not p:
        return p
    if d < p.degree:
        raise ValueError("nominal degree below actual degree")
    cs = list(p.coeffs) + [0] * (d - p.degree)
    return UniPoly._raw(cs[::-1])


def homothety(p: UniPoly, lam) -> UniPoly:
    """Return ``p(lam * s)``."""
    lam = as_rational(lam)
    out = []
    k = 1
    for c in p.coeffs:
        out.append(as_rational(c * k))
        k *= lam
    return UniPoly._raw(out)


def norms(p: UniPoly) -> tuple:
    """``(max |p_i|, sum p_i^2)``; the squared 2-norm keeps the result rational."""
    if not p:
        return 0, 0
    return max(abs(c) for c in p.coeffs), as_rational(sum(c * c for c in p.coeffs))


class MultiPoly:
    """Sparse polynomial in ``n`` variables: exponent tuple -> nonzero coefficient."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple, object] | Iterable = ()):
        if n < 1:
            raise ValueError("dimension must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, object] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError(f"exponent tuple {exps} does not have length {n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            acc[exps] = acc.get(exps, 0) + as_rational(c)
        self.n = n
        self.terms = {e: as_rational(c) for e, c in acc.items() if c != 0}

    @classmethod
    def constant(cls, c, n: int) -> "MultiPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, i: int, n: int) -> "MultiPoly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self.n}, {self.terms!r})"

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.n != self.n:
                raise ValueError("dimension mismatch")
            return other
        return MultiPoly.constant(other, self.n)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out: dict[tuple, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        result = MultiPoly.constant(1, self.n)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x: Sequence):
        return multi_eval(self, x)

    def substitute(self, polys: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose with ``n`` polynomials (all in a common number of variables)."""
        if len(polys) != self.n:
            raise ValueError("dimension mismatch")
        m = polys[0].n
        out = MultiPoly(m)
        for e, c in self.terms.items():
            term = MultiPoly.constant(c, m)
            for f, k in zip(polys, e):
                if k:
                    term = term * f**k
            out = out + term
        return out


class PolyVec:
    """A vector of univariate polynomials sharing one parameter."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable):
        comps = tuple(c if isinstance(c, UniPoly) else UniPoly(c) for c in components)
        if not comps:
            raise ValueError("PolyVec needs at least one component")
        self.components = comps

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i: int) -> UniPoly:
        return self.components[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVec):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"PolyVec({[list(c.coeffs) for c in self.components]!r})"

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    def __call__(self, s) -> tuple:
        return tuple(poly_eval(c, s) for c in self.components)


def multi_eval(g: MultiPoly, x: Sequence):
    if len(x) != g.n:
        raise ValueError(f"point has dimension {len(x)}, polynomial expects {g.n}")
    x = [as_rational(v) for v in x]
    total = 0
    for e, c in g.terms.items():
        term = c
        for v, k in zip(x, e):
            if k:
                term *= v**k
        total += term
    return as_rational(total)


def multi_compose(g: MultiPoly, f: PolyVec) -> UniPoly:
    """Univariate ``g(f_1(s), ..., f_n(s))``; degree at most ``deg(g) * max deg(f_i)``."""
    if len(f) != g.n:
        raise ValueError(f"cannot compose a {g.n}-variate polynomial with {len(f)} components")
    powers: list[list[UniPoly]] = [[UniPoly([1])] for _ in range(g.n)]

    def power(j: int, k: int) -> UniPoly:
        cache = powers[j]
        while len(cache) <= k:
            cache.append(cache[-1] * f[j])
        return cache[k]

    out: list = []
    for e, c in g.terms.items():
        term = None
        for j, k in enumerate(e):
            if k:
                term = power(j, k) if term is None else term * power(j, k)
        cs = term.coeffs if term is not None else (1,)
        if len(out) < len(cs):
            out.extend([0] * (len(cs) - len(out)))
        for i, v in enumerate(cs):
            out[i] += c * v
    return UniPoly(out)
