"""Traces of polynomial paths through semi-algebraic regions.

A region is ``{x : g(x) <= 0}`` for a multivariate polynomial ``g``.  A path
segment is a vector of univariate polynomials on [0, 1].  :func:`poly_trace`
samples a segment on either side of every boundary crossing (and exactly at
isolated touch points) so that the resulting word of region sets records
every transition.  Segment traces are then joined into lasso words.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polyring import (
    MultiPoly,
    PolyVec,
    UniPoly,
    derivative,
    multi_compose,
    poly_gcd,
    rational_to_integer,
    squarefree_part,
)
from .rootiso import (
    IsolatingInterval,
    StrictIntervalSet,
    count_roots_closed,
    count_roots_open,
    has_root_closed,
    has_root_open,
    isolate_roots,
    min_root_sep,
    root_upper_bound,
    sign_at,
    strict_isolating_intervals,
)

__all__ = [
    "Letter",
    "TraceWord",
    "LassoWord",
    "Region",
    "Checkpoint",
    "SuffixSpec",
    "Scene",
    "SceneError",
    "SegmentTrace",
    "observation_letter",
    "poly_trace",
    "certify_trace",
    "stutter_reduce",
    "word_concat",
    "word_repeat",
    "snip_trace",
    "spline_trace",
    "trace_segments",
    "trajectory_trace",
    "unbounded_suffix_bound",
]

Letter = frozenset
TraceWord = tuple

PROVENANCES = ("endpoint", "interval_start", "isolated_root", "interval_end", "midpoint")
SUFFIX_KINDS = ("invariant", "cyclic", "direct")


class SceneError(ValueError):
    """Inconsistent scene data (dimension, continuity, loop closure)."""


@dataclass(frozen=True)
class Region:
    id: str
    poly: MultiPoly


@dataclass(frozen=True)
class LassoWord:
    """The infinite word ``prefix . loop . loop . ...``."""

    prefix: tuple
    loop: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(frozenset(a) for a in self.prefix))
        object.__setattr__(self, "loop", tuple(frozenset(a) for a in self.loop))
        if not self.loop:
            raise ValueError("lasso loop must be nonempty")

    def letter_at(self, k: int) -> frozenset:
        if k < 0:
            raise IndexError(k)
        if k < len(self.prefix):
            return self.prefix[k]
        return self.loop[(k - len(self.prefix)) % len(self.loop)]

    def __len__(self) -> int:
        return len(self.prefix) + len(self.loop)


@dataclass(frozen=True)
class Checkpoint:
    """A sample parameter with its letter.

    For ``isolated_root`` entries the true parameter is the unique root in
    ``(lo, hi)``; ``s`` is the bracket midpoint and only stands in for it.
    """

    s: Fraction
    letter: frozenset
    provenance: str
    lo: Fraction | None = None
    hi: Fraction | None = None

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def exact(self) -> bool:
        return self.provenance != "isolated_root"


@dataclass(frozen=True)
class SuffixSpec:
    kind: str = "invariant"
    reaches_endpoint: bool = False
    loop_start: int = 0

    def __post_init__(self):
        if self.kind not in SUFFIX_KINDS:
            raise ValueError(f"unknown suffix kind {self.kind!r}")
        if self.loop_start < 0:
            raise ValueError("loop_start must be nonnegative")


@dataclass(frozen=True)
class Scene:
    dimension: int
    regions: tuple
    segments: tuple
    suffix: SuffixSpec = field(default_factory=SuffixSpec)

    def __post_init__(self):
        regions = tuple(r if isinstance(r, Region) else Region(*r) for r in self.regions)
        segments = tuple(seg if isinstance(seg, PolyVec) else PolyVec(seg) for seg in self.segments)
        object.__setattr__(self, "regions", regions)
        object.__setattr__(self, "segments", segments)
        n = self.dimension
        if n < 1:
            raise SceneError("dimension must be positive")
        ids = [r.id for r in regions]
        if len(set(ids)) != len(ids):
            raise SceneError("duplicate region ids")
        for r in regions:
            if r.poly.n != n:
                raise SceneError(f"region {r.id} has dimension {r.poly.n}, expected {n}")
        if not segments:
            raise SceneError("path needs at least one segment")
        for k, seg in enumerate(segments):
            if len(seg) != n:
                raise SceneError(f"segment {k} has {len(seg)} coordinates, expected {n}")
        for k in range(len(segments) - 1):
            if segments[k](1) != segments[k + 1](0):
                raise SceneError(f"segments {k} and {k + 1} do not meet")
        if self.suffix.kind == "cyclic":
            start = self.suffix.loop_start
            if start >= len(segments):
                raise SceneError(f"loop start {start} beyond last segment")
            if segments[-1](1) != segments[start](0):
                raise SceneError("cyclic suffix: path end does not return to the loop start")


@dataclass(frozen=True)
class SegmentTrace:
    trace: tuple
    checkpoints: tuple
    P: UniPoly
    V: UniPoly
    composites: tuple
    strict: StrictIntervalSet
    witness: tuple


# -- composites and letters ----------------------------------------------------


def _composites(regions: Sequence[Region], path: PolyVec) -> list[UniPoly]:
    out = []
    for r in regions:
        p = multi_compose(r.poly, path)
        out.append(rational_to_integer(p) if p else p)
    return out


def _letter(ids: Sequence[str], comps: Sequence[UniPoly], s) -> frozenset:
    return frozenset(i for i, p in zip(ids, comps) if sign_at(p.coeffs, s) <= 0)


def observation_letter(regions: Sequence[Region], path: PolyVec, s) -> frozenset:
    """Ids of the regions containing ``path(s)``; boundary points count as inside."""
    ids = [r.id for r in regions]
    return _letter(ids, _composites(regions, path), Fraction(s))


def _in_interval(p: UniPoly, iv: IsolatingInterval) -> bool:
    if iv.lo == iv.hi:
        return sign_at(p.coeffs, iv.lo) == 0
    return has_root_open(p, iv.lo, iv.hi)


def _poly_trace(regions: Sequence[Region], path: PolyVec) -> SegmentTrace:
    ids = [r.id for r in regions]
    comps = _composites(regions, path)
    observe = lambda s: _letter(ids, comps, s)  # noqa: E731

    word = [observe(Fraction(0))]
    cps = [Checkpoint(Fraction(0), word[0], "endpoint")]

    active = [i for i, p in enumerate(comps) if p.degree > 0 and has_root_closed(p, 0, 1)]
    P = UniPoly.constant(1)
    for i in active:
        P = P * comps[i]
    V = poly_gcd(P, derivative(P))
    Q = P // V
    intervals = isolate_roots(Q) if Q.degree > 0 else []

    sub = [comps[i] for i in active]
    witness = [frozenset(active[t] for t, p in enumerate(sub) if _in_interval(p, iv)) for iv in intervals]
    pos = {i: t for t, i in enumerate(active)}
    local = [frozenset(pos[i] for i in e) for e in witness]
    strict = strict_isolating_intervals(sub, intervals, local)

    bounds = [list(ab) for ab in strict]
    J = len(bounds)
    if J:
        # keep checkpoints strictly increasing when an interval touches 0 or 1
        if bounds[0][0] == 0:
            m = min(local[0])
            bounds[0][0] = min_root_sep(UniPoly.monomial(1) * sub[m])
        if bounds[-1][1] == 1:
            m = min(local[-1])
            bounds[-1][1] = 1 - min_root_sep(UniPoly([-1, 1]) * sub[m])

    iso = V.degree > 0
    for j, (a, b) in enumerate(bounds):
        letter = observe(a)
        word.append(letter)
        cps.append(Checkpoint(a, letter, "interval_start"))
        if iso:
            touched = word[-1] | frozenset(ids[i] for i in witness[j])
            word.append(touched)
            cps.append(Checkpoint((a + b) / 2, touched, "isolated_root", a, b))
    if J:
        end = bounds[-1][1]
        word.append(observe(end))
        cps.append(Checkpoint(end, word[-1], "interval_end"))
    else:
        word.append(observe(Fraction(1, 2)))
        cps.append(Checkpoint(Fraction(1, 2), word[-1], "midpoint"))
    word.append(observe(Fraction(1)))
    cps.append(Checkpoint(Fraction(1), word[-1], "endpoint"))

    return SegmentTrace(
        trace=tuple(word),
        checkpoints=tuple(cps),
        P=P,
        V=V,
        composites=tuple(comps),
        strict=StrictIntervalSet(tuple((a, b) for a, b in bounds)),
        witness=tuple(witness),
    )


def poly_trace(regions: Sequence[Region], path: PolyVec, *, details: bool = False):
    """Trace of ``path`` on [0, 1] and the checkpoints that produced it.

    Returns ``(trace, checkpoints)``, or the full :class:`SegmentTrace` when
    ``details`` is set.

    Examples
    ========

    >>> from polytrace.polyring import MultiPoly, PolyVec, UniPoly
    >>> g = MultiPoly(2, {(1, 0): 1, (0, 0): Fraction(-1, 2)})
    >>> trace, _ = poly_trace([Region("g1", g)], PolyVec([UniPoly([0, 1]), UniPoly()]))
    >>> [sorted(a) for a in trace]
    [['g1'], ['g1'], [], []]
    """
    regions = [r if isinstance(r, Region) else Region(*r) for r in regions]
    if not isinstance(path, PolyVec):
        path = PolyVec(path)
    for r in regions:
        if r.poly.n != len(path):
            raise SceneError(f"region {r.id} has dimension {r.poly.n}, path has {len(path)}")
    st = _poly_trace(regions, path)
    return st if details else (st.trace, st.checkpoints)


def certify_trace(P: UniPoly, V: UniPoly, checkpoints: Sequence[Checkpoint]) -> bool:
    """Check the root conditions that make the checkpoints a valid sampling.

    * parameters run from 0 to 1 and increase strictly;
    * each isolated-root bracket holds exactly one root of ``P``;
    * between consecutive samples ``P`` has at most one root (brackets are
      widened to their ends, which can only over-count);
    * every root of ``V`` inside (0, 1) sits in an isolated-root bracket, so
      it is itself a sample.
    """
    if len(checkpoints) < 2:
        return False
    if checkpoints[0].s != 0 or checkpoints[-1].s != 1:
        return False
    if not checkpoints[0].exact or not checkpoints[-1].exact:
        return False
    for x, y in zip(checkpoints, checkpoints[1:]):
        if not x.s < y.s:
            return False
    brackets = [c for c in checkpoints if not c.exact]
    for c in brackets:
        if c.lo is None or c.hi is None or not c.lo < c.s < c.hi:
            return False
    if P.degree <= 0:
        return bool(P) and V.degree <= 0
    Q = squarefree_part(P)
    for c in brackets:
        if count_roots_open(Q, c.lo, c.hi, squarefree=True) != 1:
            return False
    for x, y in zip(checkpoints, checkpoints[1:]):
        left = x.s if x.exact else x.lo
        right = y.s if y.exact else y.hi
        if left >= right or count_roots_closed(Q, left, right, squarefree=True) > 1:
            return False
    if V.degree > 0:
        W = squarefree_part(V) if V.degree > 1 else V
        inside = count_roots_open(W, 0, 1, squarefree=True)
        covered = sum(1 for c in brackets if has_root_open(W, c.lo, c.hi))
        if covered != inside:
            return False
    return True


# -- word algebra -----------------------------------------------------------


def stutter_reduce(w: Sequence) -> tuple:
    """Drop consecutive repeated letters."""
    out = []
    for a in w:
        if not out or out[-1] != a:
            out.append(a)
    return tuple(out)


def word_concat(alpha: Sequence, beta: Sequence) -> tuple:
    return tuple(alpha) + tuple(beta)


def word_repeat(alpha: Sequence) -> LassoWord:
    if not alpha:
        raise ValueError("cannot repeat the empty word")
    return LassoWord((), tuple(alpha))


def snip_trace(word: Sequence, checkpoints: Sequence[Checkpoint], T, letter_at_T) -> tuple:
    """Trace of the path cut off at parameter ``T``.

    ``k`` is the first index whose checkpoints bracket ``T``.  If the
    letter at ``T`` equals ``word(k+1)`` the prefix through ``k+1`` is kept,
    otherwise the prefix through ``k`` followed by ``word(k)`` again.
    """
    T = Fraction(T)
    if len(word) != len(checkpoints) or len(word) < 2:
        raise ValueError("trace and checkpoints must have the same length >= 2")
    if not checkpoints[0].s <= T <= checkpoints[-1].s:
        raise ValueError(f"T = {T} outside [{checkpoints[0].s}, {checkpoints[-1].s}]")

    def at_or_after(c: Checkpoint) -> bool:
        # T <= this checkpoint; undecidable inside a root bracket
        if c.exact:
            return T <= c.s
        if c.lo < T < c.hi:
            raise ValueError(f"T = {T} lies inside the root bracket ({c.lo}, {c.hi})")
        return T <= c.lo

    k = next(k for k in range(len(word) - 1) if at_or_after(checkpoints[k + 1]))
    letter_at_T = frozenset(letter_at_T)
    if letter_at_T == word[k + 1]:
        return tuple(word[: k + 2])
    return tuple(word[: k + 1]) + (word[k],)


# -- splines and trajectories ----------------------------------------------


def _segment_job(args):
    regions, path = args
    return _poly_trace(regions, path)


def trace_segments(scene: Scene, jobs: int = 1) -> list[SegmentTrace]:
    """Per-segment traces in segment order; ``jobs > 1`` uses worker processes."""
    work = [(scene.regions, seg) for seg in scene.segments]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_segment_job, work))
    return [_segment_job(w) for w in work]


def spline_trace(scene: Scene, jobs: int = 1, *, segments: Sequence[SegmentTrace] | None = None) -> tuple:
    """Concatenated raw traces of all path segments."""
    parts = segments if segments is not None else trace_segments(scene, jobs)
    out: tuple = ()
    for st in parts:
        out = word_concat(out, st.trace)
    return out


def trajectory_trace(scene: Scene, jobs: int = 1, *, segments: Sequence[SegmentTrace] | None = None) -> LassoWord:
    """Lasso-word trace of the trajectory described by ``scene.suffix``."""
    parts = list(segments) if segments is not None else trace_segments(scene, jobs)
    kind = scene.suffix.kind
    if kind == "cyclic":
        start = scene.suffix.loop_start
        if start >= len(parts):
            raise SceneError(f"loop start {start} beyond last segment")
        if scene.segments[-1](1) != scene.segments[start](0):
            raise SceneError("cyclic suffix: path end does not return to the loop start")
        prefix = spline_trace(scene, segments=parts[:start])
        loop = spline_trace(scene, segments=parts[start:])
        return LassoWord(prefix, loop)

    word = spline_trace(scene, segments=parts)
    if kind == "invariant":
        return LassoWord(word[:-1], word[-1:])
    if scene.suffix.reaches_endpoint or end_on_boundary(scene.regions, parts[-1]):
        return LassoWord(word[:-1], word[-1:])
    return LassoWord(word[:-1], word[-2:-1])


def end_on_boundary(regions: Sequence[Region], st: SegmentTrace) -> bool:
    """Whether the letter at ``s = 1`` persists on a left neighbourhood of 1.

    Tested as: no root of ``P`` in ``(c, 1)`` and ``h(path(1)) = h(path((c+1)/2))``
    with ``c`` the last strict interval end (or 1/2 without intervals).
    """
    c = st.strict[-1][1] if len(st.strict) else Fraction(1, 2)
    if st.P.degree > 0 and has_root_open(st.P, c, 1):
        return False
    ids = [r.id for r in regions]
    return st.trace[-1] == _letter(ids, st.composites, (c + 1) / 2)


def unbounded_suffix_bound(regions: Sequence[Region], path: PolyVec) -> Fraction:
    """A parameter ``L >= 1`` beyond which the letter of ``path`` is constant on [0, oo).

    ``L`` bounds the roots of the product of all composites that vanish
    somewhere on [0, oo); the others keep a fixed sign there.
    """
    regions = [r if isinstance(r, Region) else Region(*r) for r in regions]
    if not isinstance(path, PolyVec):
        path = PolyVec(path)
    prod = UniPoly.constant(1)
    for p in _composites(regions, path):
        if p.degree > 0 and has_root_closed(p, 0, root_upper_bound(p)):
            prod = prod * p
    if prod.degree < 1:
        return Fraction(1)
    return Fraction(root_upper_bound(prod))
