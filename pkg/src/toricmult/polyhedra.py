"""Exact rational cones and polyhedra.

Double description for cone duality and H/V conversion, Fourier-Motzkin
elimination with strictness tracking, Hilbert bases of pointed cones,
bounded lattice-point enumeration, and the minimal-generator engine for
up-sets of lattice points (the common core behind every ideal computed
by this package).

Conventions:

* a ``Cone`` is generated by primitive integer rays;
* a ``Halfspace`` row (n, b, strict) encodes (n, y) >= b, or > b when
  strict; normals are stored as primitive integer vectors;
* every vector-valued result is sorted lexicographically, so outputs are
  reproducible and never depend on hashing or insertion order.

Minimality argument used by :func:`minimal_lattice_generators`: let S be
the lattice-point set of a closed system P' whose recession cone is the
pointed cone C, with S an up-set under adding C-lattice points.  Then

* a point g of S is minimal iff g - h leaves S for every Hilbert basis
  element h of C.  If g = m + s with m in S and s a nonzero C-lattice
  point, write s as a nonnegative integer combination of the Hilbert
  basis; any h appearing in it gives g - h = m + (s - h), still in S.
* every minimal element lies in B = conv(vertices of P') + zonotope(HB):
  a point x = v + s with s outside the zonotope has some coefficient
  >= 1 in a conic combination s = sum(t_k h_k), and stepping down by
  that h_k stays inside P'.

Both facts are re-verified empirically by the test suite on every corpus
instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

from .exact import (
    GeometryError,
    NotFullDimensionalError,
    NotPointedError,
    QVec,
    Vec,
    dot,
    floor_strict_bound,
    is_zero,
    matrix_rank,
    primitive,
    scale_to_integers,
    vneg,
    vscale,
    vsub,
)


@dataclass(frozen=True)
class Cone:
    """A pointed rational cone, generated by primitive integer rays."""

    rank: int
    rays: tuple[Vec, ...]


class Halfspace(NamedTuple):
    normal: Vec        # primitive integer vector
    offset: Fraction   # right-hand side; (normal, y) >= offset
    strict: bool


@dataclass(frozen=True)
class HalfspaceSystem:
    """Conjunction of rational halfspaces, canonicalized row by row."""

    rank: int
    rows: tuple[Halfspace, ...]

    @staticmethod
    def make(rank: int, rows: Iterable[tuple]) -> "HalfspaceSystem":
        """Normalize rows: primitive integer normals, trivial rows dropped,
        any unsatisfiable zero row collapsed to the marker 0 > 0."""
        out = []
        for normal, offset, strict in rows:
            offset = Fraction(offset)
            if is_zero(normal):
                sat = (offset < 0) if strict else (offset <= 0)
                if sat:
                    continue
                return HalfspaceSystem(rank, (_infeasible_marker(rank),))
            w, s = scale_to_integers(normal)
            out.append(Halfspace(w, offset / s, strict))
        return HalfspaceSystem(rank, tuple(out))

    def is_infeasible_marker(self) -> bool:
        return any(is_zero(r.normal) for r in self.rows)

    def satisfies(self, point: Sequence) -> bool:
        for n, b, strict in self.rows:
            v = dot(n, point)
            if (v <= b) if strict else (v < b):
                return False
        return True


def _infeasible_marker(rank: int) -> Halfspace:
    return Halfspace((0,) * rank, Fraction(0), True)


class VertexSystem(NamedTuple):
    """conv(vertices) + cone(recession rays); empty polyhedron = ((), ())."""

    vertices: tuple[QVec, ...]
    rays: tuple[Vec, ...]


@dataclass(frozen=True)
class HilbertBasis:
    elements: tuple[Vec, ...]


# ---------------------------------------------------------------------------
# double description


def _unit(i: int, rank: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(rank))


def _dd(normals: Sequence[Vec], rank: int) -> tuple[list[Vec], list[Vec]]:
    """Extreme rays and lineality of {x : (n, x) >= 0 for all n}.

    Incremental double description starting from the full space.  Rays are
    kept primitive; adjacency uses the standard combinatorial test against
    the inequalities processed so far.
    """
    lines: list[Vec] = [_unit(i, rank) for i in range(rank)]
    rays: list[Vec] = []
    processed: list[Vec] = []
    for a in normals:
        if is_zero(a):
            continue
        line_vals = [dot(a, l) for l in lines]
        if any(line_vals):
            j = next(i for i, v in enumerate(line_vals) if v != 0)
            l0, v0 = lines[j], line_vals[j]
            if v0 < 0:
                l0, v0 = vneg(l0), -v0
            new_lines = []
            for i, l in enumerate(lines):
                if i == j:
                    continue
                new_lines.append(primitive(vsub(vscale(v0, l), vscale(line_vals[i], l0)))[0])
            new_rays = []
            for r in rays:
                ar = dot(a, r)
                new_rays.append(r if ar == 0 else primitive(vsub(vscale(v0, r), vscale(ar, l0)))[0])
            new_rays.append(l0)
            lines = new_lines
            rays = _dedupe(new_rays)
        else:
            vals = {r: dot(a, r) for r in rays}
            neg = [r for r in rays if vals[r] < 0]
            if neg:
                keep = [r for r in rays if vals[r] >= 0]
                pos = [r for r in rays if vals[r] > 0]
                zsets = {r: _zero_set(r, processed) for r in rays}
                combos = []
                for p in pos:
                    for q in neg:
                        common = zsets[p] & zsets[q]
                        if any(common <= zsets[r] for r in rays if r is not p and r is not q):
                            continue
                        combos.append(primitive(vsub(vscale(vals[p], q), vscale(vals[q], p)))[0])
                rays = _dedupe(keep + combos)
        processed.append(tuple(a))
    return sorted(rays), lines


def _zero_set(r: Vec, processed: Sequence[Vec]) -> frozenset:
    return frozenset(k for k, a in enumerate(processed) if dot(a, r) == 0)


def _dedupe(vecs: Iterable[Vec]) -> list[Vec]:
    seen = set()
    out = []
    for v in vecs:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


@lru_cache(maxsize=None)
def dual_cone(c: Cone) -> Cone:
    """The dual cone {m : (m, v) >= 0 for all v in c}, as extremal rays.

    Raises when c is not pointed (the dual would be lower-dimensional) or
    not full-dimensional (the dual would contain a line).
    """
    rays, lines = _dd(c.rays, c.rank)
    if matrix_rank(rays + lines, c.rank) < c.rank:
        raise NotPointedError("cone contains a line")
    if lines:
        raise NotFullDimensionalError("cone is not full-dimensional")
    return Cone(c.rank, tuple(rays))


def cone_facets(c: Cone) -> tuple[Vec, ...]:
    """Inward facet normals of a full-dimensional pointed cone."""
    return dual_cone(c).rays


def cone_contains(facet_normals: Sequence[Vec], y: Sequence) -> bool:
    return all(dot(n, y) >= 0 for n in facet_normals)


# ---------------------------------------------------------------------------
# Fourier-Motzkin


def _combine(p: Halfspace, q: Halfspace, j: int) -> tuple:
    a, b = p.normal[j], q.normal[j]  # a > 0 > b
    normal = tuple(-b * x + a * y for x, y in zip(p.normal, q.normal))
    return normal, -b * p.offset + a * q.offset, p.strict or q.strict


def _eliminate_one(rows: Sequence[Halfspace], j: int, rank: int) -> tuple[Halfspace, ...]:
    """Eliminate variable j; the j-th coordinate of every output normal is 0."""
    zero = [r for r in rows if r.normal[j] == 0]
    pos = [r for r in rows if r.normal[j] > 0]
    neg = [r for r in rows if r.normal[j] < 0]
    raw = [(r.normal, r.offset, r.strict) for r in zero]
    for p in pos:
        for q in neg:
            raw.append(_combine(p, q, j))
    sys = HalfspaceSystem.make(rank, raw)
    if sys.is_infeasible_marker():
        return sys.rows
    # same-normal dominance: keep only the tightest row per normal
    best: dict[Vec, Halfspace] = {}
    for r in sys.rows:
        cur = best.get(r.normal)
        if cur is None or (r.offset, r.strict) > (cur.offset, cur.strict):
            best[r.normal] = r
    return tuple(best[n] for n in sorted(best))


def eliminate(h: HalfspaceSystem, drop: Iterable[int]) -> HalfspaceSystem:
    """Project away the given variables (exact Fourier-Motzkin).

    A combined row is strict iff at least one parent is strict, so the
    output cuts out exactly the projection of the solution set.  The
    remaining variables keep their original relative order.
    """
    drop = sorted(set(drop), reverse=True)
    if any(j < 0 or j >= h.rank for j in drop):
        raise GeometryError("variable index out of range")
    rows = h.rows
    for j in drop:
        rows = _eliminate_one(rows, j, h.rank)
    keep = [i for i in range(h.rank) if i not in drop]
    new_rank = len(keep)
    out = [(tuple(r.normal[i] for i in keep), r.offset, r.strict) for r in rows]
    return HalfspaceSystem.make(new_rank, out)


def strict_to_lattice_closed(h: HalfspaceSystem) -> HalfspaceSystem:
    """Replace each strict row by the closed row with the same lattice points.

    (n, y) > b with primitive integer n becomes (n, y) >= floor(b) + 1;
    non-strict rows pass through unchanged.
    """
    out = []
    for r in h.rows:
        if not r.strict:
            out.append(r)
        elif is_zero(r.normal):
            out.append(Halfspace(r.normal, Fraction(1), False))  # 0 > b infeasible
        else:
            out.append(Halfspace(r.normal, Fraction(floor_strict_bound(r.offset)), False))
    return HalfspaceSystem(h.rank, tuple(out))


# ---------------------------------------------------------------------------
# H <-> V conversion (homogenization + double description)


def recession_cone_description(h: HalfspaceSystem) -> tuple[list[Vec], list[Vec]]:
    """Rays and lineality of {x : (n, x) >= 0 over the rows of h}."""
    return _dd([r.normal for r in h.rows], h.rank)


def hrep_to_vrep(h: HalfspaceSystem) -> VertexSystem:
    """Vertices and recession rays of a closed, pointed H-polyhedron."""
    if any(r.strict for r in h.rows):
        raise GeometryError("vertex enumeration needs a closed system")
    n = h.rank
    normals = [r.normal + (-r.offset,) for r in h.rows]
    # scale offsets to integers
    homog = []
    for nk in normals:
        if is_zero(nk):
            continue
        homog.append(scale_to_integers(nk)[0])
    homog.append(_unit(n, n + 1))  # t >= 0
    rays, lines = _dd(homog, n + 1)
    verts = [r for r in rays if r[n] > 0]
    if not verts:
        return VertexSystem((), ())
    if lines:
        raise GeometryError("polyhedron is not pointed")
    vertices = tuple(sorted(tuple(Fraction(x, r[n]) for x in r[:n]) for r in verts))
    rec = tuple(sorted(r[:n] for r in rays if r[n] == 0))
    return VertexSystem(vertices, rec)


def vrep_to_hrep(v: VertexSystem) -> HalfspaceSystem:
    """Facet description of conv(vertices) + cone(rays); exact and closed."""
    if not v.vertices:
        if not v.rays:
            rank = 0
        else:
            rank = len(v.rays[0])
        return HalfspaceSystem(rank, (_infeasible_marker(rank),))
    n = len(v.vertices[0])
    gens = [scale_to_integers(tuple(u) + (1,))[0] for u in v.vertices]
    gens += [tuple(r) + (0,) for r in v.rays]
    rays, lines = _dd(gens, n + 1)
    rows = []
    for a in rays:
        if is_zero(a[:n]):
            continue  # the trivial t >= 0 facet
        rows.append((a[:n], -Fraction(a[n]), False))
    for a in lines:
        if is_zero(a[:n]):
            raise GeometryError("inconsistent homogenization")
        rows.append((a[:n], -Fraction(a[n]), False))
        rows.append((vneg(a[:n]), Fraction(a[n]), False))
    return HalfspaceSystem.make(n, sorted(rows))


# ---------------------------------------------------------------------------
# lattice points


def _least_int_above(r, strict: bool) -> int:
    # least integer t with t > r (strict) or t >= r
    return floor_strict_bound(r) if strict else math.ceil(r)


def _greatest_int_below(r, strict: bool) -> int:
    # greatest integer t with t < r (strict) or t <= r
    return (math.ceil(r) - 1) if strict else math.floor(r)


def _var_bounds(rows: Sequence[Halfspace], prefix: Sequence[int], j: int):
    """Integer bounds for x_j given fixed x_0..x_{j-1}; rows use vars <= j only.

    Returns (lo, hi), either possibly None when that side is unconstrained,
    or None for the whole result when the branch is infeasible.
    """
    lo = None
    hi = None
    for n, b, strict in rows:
        s = sum(n[i] * prefix[i] for i in range(j) if n[i])
        a = n[j]
        if a == 0:
            if (0 <= b - s) if strict else (0 < b - s):
                return None
        elif a > 0:
            t = _least_int_above(Fraction(b - s, a), strict)
            if lo is None or t > lo:
                lo = t
        else:
            # dividing by a < 0 flips the inequality to x_j <= (b-s)/a
            t = _greatest_int_below(Fraction(b - s, a), strict)
            if hi is None or t < hi:
                hi = t
    return lo, hi


def lattice_points(h: HalfspaceSystem) -> list[Vec]:
    """All lattice points of a bounded system, in lexicographic order.

    Works by projecting down one coordinate at a time (exact elimination)
    and recursing over the integer interval of each coordinate in turn.
    """
    if h.is_infeasible_marker():
        return []
    if h.rank == 0:
        return [()]
    rrays, rlines = recession_cone_description(h)
    if rrays or rlines:
        raise GeometryError("cannot enumerate an unbounded polyhedron")
    chain: list[tuple[Halfspace, ...]] = [h.rows]
    for j in range(h.rank - 1, 0, -1):
        chain.append(_eliminate_one(chain[-1], j, h.rank))
        if any(is_zero(r.normal) for r in chain[-1]):
            return []
    chain.reverse()  # chain[j] involves variables 0..j only
    points: list[Vec] = []
    prefix: list[int] = []

    def descend(j: int) -> None:
        bounds = _var_bounds(chain[j], prefix, j)
        if bounds is None:
            return
        lo, hi = bounds
        assert lo is not None and hi is not None, "unbounded after elimination"
        for t in range(lo, hi + 1):
            prefix.append(t)
            if j + 1 == h.rank:
                points.append(tuple(prefix))
            else:
                descend(j + 1)
            prefix.pop()

    descend(0)
    return points


def rational_point(h: HalfspaceSystem) -> Optional[QVec]:
    """A rational point of the (possibly strict, possibly unbounded) system.

    Fourier-Motzkin down to one variable, then deterministic
    back-substitution: midpoints of bounded intervals, integral steps off
    half-open ones, 0 where unconstrained.  None when infeasible.
    """
    if h.rank == 0:
        return None if h.is_infeasible_marker() else ()
    chain: list[tuple[Halfspace, ...]] = [h.rows]
    for j in range(h.rank - 1, 0, -1):
        chain.append(_eliminate_one(chain[-1], j, h.rank))
    chain.reverse()
    point: list[Fraction] = []
    for j in range(h.rank):
        lo = hi = None           # Fraction bounds
        lo_strict = hi_strict = False
        for n, b, strict in chain[j]:
            s = sum(n[i] * point[i] for i in range(j) if n[i])
            a = n[j]
            if a == 0:
                if (0 <= b - s) if strict else (0 < b - s):
                    return None
                continue
            t = Fraction(b - s, a)
            if a > 0:
                if lo is None or t > lo:
                    lo, lo_strict = t, strict
                elif t == lo and strict:
                    lo_strict = True
            else:
                if hi is None or t < hi:
                    hi, hi_strict = t, strict
                elif t == hi and strict:
                    hi_strict = True
        if lo is None and hi is None:
            point.append(Fraction(0))
        elif lo is None:
            point.append(hi - 1 if hi_strict else hi)
        elif hi is None:
            point.append(lo + 1 if lo_strict else lo)
        else:
            if lo > hi or (lo == hi and (lo_strict or hi_strict)):
                return None
            point.append(lo if lo == hi else (lo + hi) / 2)
    return tuple(point)


def feasible(h: HalfspaceSystem) -> bool:
    return rational_point(h) is not None


# ---------------------------------------------------------------------------
# Hilbert bases


@lru_cache(maxsize=None)
def hilbert_basis(c: Cone) -> HilbertBasis:
    """Unique minimal generating set of (c intersect lattice) as a semigroup.

    Graded enumeration: pick a strictly positive grading (the sum of the
    facet normals), enumerate cone lattice points up to the zonotope degree
    sum(deg r_i), and keep the points that admit no single-step reduction
    by an already-kept element.  Every reducible point reduces through a
    kept element of smaller degree, so the greedy pass is exact.
    """
    facets = cone_facets(c)  # raises unless pointed and full-dimensional
    grading = tuple(sum(col) for col in zip(*facets))
    bound = sum(dot(grading, r) for r in c.rays)
    rows = [(f, 0, False) for f in facets]
    rows.append((vneg(grading), -Fraction(bound), False))
    pts = lattice_points(HalfspaceSystem.make(c.rank, rows))
    pts = [p for p in pts if not is_zero(p)]
    pts.sort(key=lambda p: (dot(grading, p), p))
    kept: list[Vec] = []
    for p in pts:
        if not any(cone_contains(facets, vsub(p, h)) for h in kept):
            kept.append(p)
    return HilbertBasis(tuple(sorted(kept)))


# ---------------------------------------------------------------------------
# minimal generators of an up-set


def minimal_lattice_generators(
    p: HalfspaceSystem, sigma_dual: Cone, hb: HilbertBasis
) -> tuple[Vec, ...]:
    """Minimal G with S = union of g + (sigma_dual lattice points), g in G.

    Preconditions (the caller's contract): p is closed, its solution set
    P' is contained in sigma_dual with recession cone exactly sigma_dual,
    and S = P' intersect lattice is an up-set.  A cheap recession check
    guards against the most likely misuse; the minimality argument lives
    in the module docstring.
    """
    if any(r.strict for r in p.rows):
        raise GeometryError("minimal generators need a lattice-closed system")
    sigma_rays = cone_facets(sigma_dual)  # facet normals of sigma_dual
    for r in sigma_dual.rays:
        if any(dot(row.normal, r) < 0 for row in p.rows):
            raise GeometryError("recession cone does not contain the ambient cone")
    vs = hrep_to_vrep(p)
    if not vs.vertices:
        return ()
    for r in vs.rays:
        if not cone_contains(sigma_rays, r):
            raise GeometryError("recession cone exceeds the ambient cone")
    n = p.rank
    lo = [min(v[j] for v in vs.vertices) + sum(min(h[j], 0) for h in hb.elements) for j in range(n)]
    hi = [max(v[j] for v in vs.vertices) + sum(max(h[j], 0) for h in hb.elements) for j in range(n)]
    box = [( _unit(j, n), Fraction(math.ceil(lo[j])), False) for j in range(n)]
    box += [(vneg(_unit(j, n)), -Fraction(math.floor(hi[j])), False) for j in range(n)]
    region = HalfspaceSystem.make(n, [(r.normal, r.offset, r.strict) for r in p.rows] + box)
    candidates = lattice_points(region)
    gens = [
        g
        for g in candidates
        if not any(p.satisfies(vsub(g, h)) for h in hb.elements)
    ]
    return tuple(sorted(gens))
