"""Random benchmark scenes: spline paths through ellipses and half-spaces."""

from __future__ import annotations

import random
from fractions import Fraction

from .polyring import MultiPoly, PolyVec, UniPoly
from .templates import OFFSET_TEMPLATES
from .trace_gen import Region, Scene, SuffixSpec

__all__ = ["natural_cubic_spline", "random_waypoints", "ellipse", "half_space", "generate_scene", "PROFILES"]

PROFILES = ("quadric", "offset8")
BOX = 10


def natural_cubic_spline(values) -> list[UniPoly]:
    """Cubic pieces on unit knots through ``values``, zero curvature at both ends.

    Piece ``k`` is parametrised by ``s`` in [0, 1] and runs from ``values[k]``
    to ``values[k+1]``.  The knot second derivatives solve the tridiagonal
    system ``M[k-1] + 4 M[k] + M[k+1] = 6 (y[k+1] - 2 y[k] + y[k-1])``.
    """
    y = [Fraction(v) for v in values]
    n = len(y) - 1
    if n < 1:
        raise ValueError("need at least two values")
    M = [Fraction(0)] * (n + 1)
    m = n - 1
    if m > 0:
        rhs = [6 * (y[k + 1] - 2 * y[k] + y[k - 1]) for k in range(1, n)]
        # Thomas algorithm: sub- and super-diagonal 1, diagonal 4
        c = [Fraction(0)] * m
        d = [Fraction(0)] * m
        c[0] = Fraction(1, 4)
        d[0] = rhs[0] / 4
        for i in range(1, m):
            denom = 4 - c[i - 1]
            c[i] = 1 / denom
            d[i] = (rhs[i] - d[i - 1]) / denom
        x = [Fraction(0)] * m
        x[-1] = d[-1]
        for i in range(m - 2, -1, -1):
            x[i] = d[i] - c[i] * x[i + 1]
        M[1:n] = x
    pieces = []
    for k in range(n):
        slope = (y[k + 1] - y[k]) - (2 * M[k] + M[k + 1]) / 6
        pieces.append(UniPoly([y[k], slope, M[k] / 2, (M[k + 1] - M[k]) / 6]))
    return pieces


def _rational(rng: random.Random, lo, hi, den: int = 8) -> Fraction:
    return Fraction(rng.randint(int(lo * den), int(hi * den)), den)


def random_waypoints(rng: random.Random, count: int, dimension: int) -> list[tuple]:
    return [tuple(_rational(rng, 0, BOX) for _ in range(dimension)) for _ in range(count)]


def _affine(n: int, coeffs, const) -> MultiPoly:
    terms = {(0,) * n: const}
    for i, a in enumerate(coeffs):
        e = [0] * n
        e[i] = 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + a
    return MultiPoly(n, terms)


def ellipse(center, axes, rotation=Fraction(0)) -> MultiPoly:
    """``sum(u_i^2 / axes_i^2) - 1`` in coordinates centred at ``center``.

    In the plane ``rotation = t`` turns the axes by the angle with
    ``cos = (1 - t^2)/(1 + t^2)`` and ``sin = 2t/(1 + t^2)``.
    """
    n = len(center)
    shifted = [_affine(n, [1 if j == i else 0 for j in range(n)], -Fraction(center[i])) for i in range(n)]
    if n == 2 and rotation:
        t = Fraction(rotation)
        cos, sin = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
        u = shifted[0] * cos + shifted[1] * sin
        v = shifted[1] * cos - shifted[0] * sin
        shifted = [u, v]
    g = MultiPoly.constant(-1, n)
    for ui, a in zip(shifted, axes):
        g = g + ui * ui * (Fraction(1) / (Fraction(a) ** 2))
    return g


def half_space(normal, point) -> MultiPoly:
    """``normal . (x - point)``; the region is the side the normal points away from."""
    n = len(normal)
    const = -sum(Fraction(a) * Fraction(p) for a, p in zip(normal, point))
    return _affine(n, normal, const)


def _offset_region(rng: random.Random, center) -> MultiPoly:
    key = rng.choice(sorted(OFFSET_TEMPLATES, key=lambda k: (k[0], k[1], k[2])))
    g = MultiPoly(2, OFFSET_TEMPLATES[key])
    return g.substitute([_affine(2, [1, 0], -center[0]), _affine(2, [0, 1], -center[1])])


def _random_region(rng: random.Random, n: int, profile: str, index: int) -> MultiPoly:
    center = tuple(_rational(rng, 0, BOX) for _ in range(n))
    if profile == "offset8" and n == 2 and index % 3 == 2:
        return _offset_region(rng, center)
    if rng.random() < 0.6:
        axes = [_rational(rng, Fraction(1, 2), 3) for _ in range(n)]
        rot = _rational(rng, -1, 1) if n == 2 else 0
        return ellipse(center, axes, rot)
    normal = [rng.randint(-4, 4) for _ in range(n)]
    if not any(normal):
        normal[0] = 1
    return half_space(normal, center)


def _bounce_region(seg: PolyVec) -> MultiPoly | None:
    # tangent line at s = 1/2, oriented so the path touches it from outside
    half = Fraction(1, 2)
    p = seg(half)
    t = tuple(c.derivative()(half) for c in seg)
    acc = tuple(c.derivative().derivative()(half) for c in seg)
    normal = (-t[1], t[0])
    curv = normal[0] * acc[0] + normal[1] * acc[1]
    if curv == 0 or not any(t):
        return None
    if curv < 0:
        normal = (t[1], -t[0])
    return half_space(normal, p)


def _double_crossing_regions(seg: PolyVec) -> tuple[MultiPoly, MultiPoly] | None:
    half = Fraction(1, 2)
    q = seg(half)
    t = tuple(c.derivative()(half) for c in seg)
    if not any(t):
        return None
    perp = (-t[1], t[0])
    n1 = (t[0] + perp[0], t[1] + perp[1])
    n2 = (-(t[0] - perp[0]), -(t[1] - perp[1]))
    return half_space(n1, q), half_space(n2, q)


def generate_scene(
    seed: int,
    regions: int = 9,
    segments: int = 8,
    *,
    dimension: int = 2,
    profile: str = "quadric",
    features: bool = False,
    suffix: SuffixSpec | None = None,
) -> Scene:
    """Deterministic random scene for ``seed``.

    The path is a natural cubic spline through ``segments + 1`` waypoints.
    Region draws use their own random stream, so changing ``regions`` leaves
    the path unchanged.  With ``features`` (planar scenes only) the last
    three regions are replaced by a half-space the first segment touches at
    its midpoint and two half-spaces the second segment crosses
    simultaneously at its midpoint.
    """
    if regions < 0 or segments < 1 or dimension < 1:
        raise ValueError("need regions >= 0, segments >= 1 and dimension >= 1")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")
    path_rng = random.Random(f"path:{seed}")
    region_rng = random.Random(f"regions:{seed}")

    pts = random_waypoints(path_rng, segments + 1, dimension)
    coords = [natural_cubic_spline([p[i] for p in pts]) for i in range(dimension)]
    path = [PolyVec([coords[i][k] for i in range(dimension)]) for k in range(segments)]

    polys = [_random_region(region_rng, dimension, profile, i) for i in range(regions)]
    if features and dimension == 2:
        extra: list[MultiPoly] = []
        bounce = _bounce_region(path[0])
        if bounce is not None:
            extra.append(bounce)
        if segments > 1:
            pair = _double_crossing_regions(path[1])
            if pair is not None:
                extra.extend(pair)
        extra = extra[: regions]
        if extra:
            polys[len(polys) - len(extra):] = extra
    regs = tuple(Region(f"g{i + 1}", g) for i, g in enumerate(polys))
    return Scene(dimension, regs, tuple(path), suffix or SuffixSpec("invariant"))
