"""Hull configurations stored combinatorially.

A hull configuration is either ``n`` points on a segment, or the boundary of a
convex ``k``-gon whose ``i``-th side carries ``c_i`` extra collinear points.
Points are indexed ``0..n-1`` counterclockwise starting at the first corner
(left to right for a segment).  Coordinates only exist through :func:`realize`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

SEGMENT = "segment"
POLYGON = "polygon"

_SEGMENT_RE = re.compile(r"segment:(\d+)")
_SHAPE_RE = re.compile(r"\[(\d+(?:;\d+)*)\]")


class ShapeError(ValueError):
    """Raised for malformed shape strings or impossible shapes."""


@dataclass(frozen=True)
class HullConfig:
    kind: str
    n: int
    shape: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == SEGMENT:
            if self.n < 2:
                raise ShapeError(f"segment needs at least 2 points, got {self.n}")
            if self.shape:
                raise ShapeError("segment has no side counts")
        elif self.kind == POLYGON:
            if len(self.shape) < 3:
                raise ShapeError(f"polygon needs at least 3 sides, got {len(self.shape)}")
            if any(c < 0 for c in self.shape):
                raise ShapeError("side counts must be non-negative")
            if self.n != len(self.shape) + sum(self.shape):
                raise ShapeError("n must equal k + sum of side counts")
        else:
            raise ShapeError(f"unknown kind {self.kind!r}")

    @classmethod
    def segment(cls, n: int) -> HullConfig:
        return cls(SEGMENT, n)

    @classmethod
    def polygon(cls, shape) -> HullConfig:
        shape = tuple(int(c) for c in shape)
        return cls(POLYGON, len(shape) + sum(shape), shape)

    @property
    def is_segment(self) -> bool:
        return self.kind == SEGMENT

    @property
    def k(self) -> int:
        """Number of hull corners (2 for a segment)."""
        return 2 if self.is_segment else len(self.shape)

    @property
    def rank(self) -> int:
        return self.k

    def __str__(self):
        if self.is_segment:
            return f"segment:{self.n}"
        return "[" + ";".join(map(str, self.shape)) + "]"

    @cached_property
    def corner_indices(self) -> tuple[int, ...]:
        if self.is_segment:
            return (0, self.n - 1)
        out, pos = [], 0
        for c in self.shape:
            out.append(pos)
            pos += c + 1
        return tuple(out)

    @cached_property
    def sides(self) -> tuple[tuple[int, ...], ...]:
        """Point indices on each side, in counterclockwise order, both corners included."""
        if self.is_segment:
            return (tuple(range(self.n)),)
        out = []
        for i, start in enumerate(self.corner_indices):
            out.append(tuple((start + j) % self.n for j in range(self.shape[i] + 2)))
        return tuple(out)

    @cached_property
    def multiplicity(self) -> tuple[int, ...]:
        """0 for corners and segment endpoints, 1 for side-internal points."""
        corners = set(self.corner_indices)
        return tuple(0 if p in corners else 1 for p in range(self.n))

    @cached_property
    def between(self) -> tuple[int, ...]:
        """Flattened ``n*n`` table: bitmask of points strictly between x and y on a common side."""
        n = self.n
        table = [0] * (n * n)
        for side in self.sides:
            for a, b in itertools.combinations(range(len(side)), 2):
                mask = 0
                for t in range(a + 1, b):
                    mask |= 1 << side[t]
                x, y = side[a], side[b]
                table[x * n + y] = mask
                table[y * n + x] = mask
        return tuple(table)

    def side_of(self, points) -> int | None:
        """Index (0-based) of a side containing every given point, or None."""
        pts = set(points)
        for s, side in enumerate(self.sides):
            if pts <= set(side):
                return s
        return None


def parse_shape(text: str) -> HullConfig:
    """Parse ``segment:<n>`` or ``[c1;c2;...;ck]`` (no whitespace)."""
    m = _SEGMENT_RE.fullmatch(text)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise ShapeError(f"segment needs at least 2 points: {text!r}")
        return HullConfig.segment(n)
    m = _SHAPE_RE.fullmatch(text)
    if not m:
        raise ShapeError(f"malformed shape string: {text!r}")
    shape = tuple(int(c) for c in m.group(1).split(";"))
    if len(shape) < 3:
        raise ShapeError(f"polygon shape needs at least 3 sides: {text!r}")
    return HullConfig.polygon(shape)


def point_index(config: HullConfig, i: int, j: int) -> int:
    """Linear index of z_{i,j} (sides numbered from 1)."""
    if config.is_segment:
        if i != 1 or not 0 <= j < config.n:
            raise IndexError(f"no point z_({i},{j}) on {config}")
        return j
    if not 1 <= i <= config.k or not 0 <= j <= config.shape[i - 1]:
        raise IndexError(f"no point z_({i},{j}) on {config}")
    return config.corner_indices[i - 1] + j


def point_ref(config: HullConfig, index: int) -> tuple[int, int]:
    """Inverse of :func:`point_index`."""
    if not 0 <= index < config.n:
        raise IndexError(f"point {index} out of range for {config}")
    if config.is_segment:
        return (1, index)
    for i in range(config.k, 0, -1):
        start = config.corner_indices[i - 1]
        if index >= start:
            return (i, index - start)
    raise AssertionError("unreachable")


def strictly_between(config: HullConfig, x: int, y: int, z: int) -> bool:
    """True iff x, y, z share a side and z lies strictly between x and y on it."""
    return bool(config.between[x * config.n + y] >> z & 1)


def rotate(config: HullConfig, side: int) -> tuple[HullConfig, int]:
    """Cyclically shift so that ``side`` (1-based) becomes side 1.

    Returns the rotated configuration and the offset ``o`` such that point ``p``
    of the rotated configuration is point ``(p + o) % n`` of the original.
    """
    if config.is_segment:
        raise ShapeError("segments cannot be rotated")
    if not 1 <= side <= config.k:
        raise IndexError(f"side {side} out of range")
    s = side - 1
    shape = config.shape[s:] + config.shape[:s]
    return HullConfig.polygon(shape), config.corner_indices[s]


def canonical_rotation(shape) -> tuple[int, ...]:
    """Lexicographically smallest cyclic shift."""
    shape = tuple(shape)
    return min(shape[i:] + shape[:i] for i in range(len(shape)))


def canonicalize(config: HullConfig) -> HullConfig:
    if config.is_segment:
        return config
    return HullConfig.polygon(canonical_rotation(config.shape))


def blank_sides(config: HullConfig) -> list[int]:
    """1-based indices of blank sides (segments have none)."""
    if config.is_segment:
        return []
    return [i + 1 for i, c in enumerate(config.shape) if c == 0]


def subconfig(config: HullConfig, points) -> tuple[HullConfig | None, tuple[int, ...]]:
    """Hull configuration induced on a subset of points.

    ``points`` must be given in counterclockwise order (any rotation).  Returns
    ``(sub, old)`` where ``old[new_index]`` is the original index.  A single
    point yields ``(None, (p,))``.
    """
    pts = list(points)
    if len(set(pts)) != len(pts):
        raise ValueError("repeated points")
    if len(pts) == 1:
        return None, (pts[0],)
    if len(pts) < 1:
        raise ValueError("empty subset")
    s = config.side_of(pts)
    if len(pts) == 2 and s is None:
        return HullConfig.segment(2), tuple(pts)
    if s is not None:
        side = config.sides[s]
        order = sorted(pts, key=side.index)
        return HullConfig.segment(len(order)), tuple(order)
    n = config.n
    member = 0
    for p in pts:
        member |= 1 << p
    corners = []
    for p in pts:
        inside = any(
            config.between[x * n + y] >> p & 1
            for x, y in itertools.combinations(pts, 2)
            if p != x and p != y
        )
        if not inside:
            corners.append(p)
    first = pts.index(corners[0])
    order = pts[first:] + pts[:first]
    corner_set = set(corners)
    shape, count = [], 0
    for p in order[1:]:
        if p in corner_set:
            shape.append(count)
            count = 0
        else:
            count += 1
    shape.append(count)
    return HullConfig.polygon(shape), tuple(order)


def arc_points(config: HullConfig, start: int, end: int) -> list[int]:
    """Point indices from ``start`` to ``end`` inclusive, counterclockwise."""
    n = config.n
    length = (end - start) % n + 1
    return [(start + t) % n for t in range(length)]


def arc_subconfig(config: HullConfig, start: int, end: int):
    """Sub-configuration on a contiguous counterclockwise arc.

    Returns ``(sub, index_map)`` with ``index_map`` mapping old index to new.
    """
    pts = arc_points(config, start, end)
    if config.is_segment and end < start:
        raise ValueError("segment arcs cannot wrap")
    if len(pts) < 2:
        raise ValueError("arc must contain at least 2 points")
    if len(pts) >= config.n:
        raise ValueError("arc must not be the whole configuration")
    sub, old = subconfig(config, pts)
    return sub, {o: i for i, o in enumerate(old)}


def _circle_point(t: Fraction) -> tuple[Fraction, Fraction]:
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def realize(config: HullConfig, params=None, weights=None) -> list[tuple[Fraction, Fraction]]:
    """Exact rational coordinates for a representative of the convexity class.

    Corners go on the unit circle at the strictly increasing parameters
    ``params`` (default ``(2i - k + 1)/2``); ``z_{i,j}`` sits at fraction
    ``weights(j, c_i)`` along its side (default ``j / (c_i + 1)``).
    """
    if config.is_segment:
        return [(Fraction(x), Fraction(0)) for x in range(config.n)]
    k = config.k
    if params is None:
        params = [Fraction(2 * i - k + 1, 2) for i in range(k)]
    if weights is None:
        weights = lambda j, c: Fraction(j, c + 1)  # noqa: E731
    corners = [_circle_point(Fraction(t)) for t in params]
    out = []
    for i, c in enumerate(config.shape):
        (ax, ay), (bx, by) = corners[i], corners[(i + 1) % k]
        for j in range(c + 1):
            w = weights(j, c)
            out.append((ax + w * (bx - ax), ay + w * (by - ay)))
    return out


def _cyclic_compositions(total: int, parts: int):
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, comp = -1, []
        for c in cuts:
            comp.append(c - prev - 1)
            prev = c
        comp.append(total + parts - 1 - prev - 1)
        yield tuple(comp)


def enumerate_shapes(n: int, k=None, blank=None, dedupe=False, segments=True) -> list[HullConfig]:
    """All hull shapes on ``n`` points.

    ``k`` restricts the corner count (``k=2`` means the segment), ``blank``
    keeps only shapes with (True) or without (False) a blank side, ``dedupe``
    quotients by cyclic shift.  Segments count as having no blank side.
    """
    if n < 2:
        raise ShapeError("need at least 2 points")
    out = []
    if segments and k in (None, 2) and blank is not True:
        out.append(HullConfig.segment(n))
    ks = range(3, n + 1) if k is None else ([k] if k >= 3 else [])
    for kk in ks:
        if kk > n:
            continue
        seen = set()
        for comp in _cyclic_compositions(n - kk, kk):
            if dedupe:
                canon = canonical_rotation(comp)
                if canon in seen:
                    continue
                seen.add(canon)
                comp = canon
            has_blank = 0 in comp
            if blank is not None and has_blank != blank:
                continue
            out.append(HullConfig.polygon(comp))
    return out
