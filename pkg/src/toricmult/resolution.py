"""Independent 2D evaluation of the pushforward definitions.

For surfaces the minimal smooth subdivision of a cone is canonical: the
rays are exactly the Hilbert basis of the cone (the lattice points on
the bounded boundary of the convex hull of the nonzero cone lattice
points), and consecutive rays span unimodular cones.  Subdividing at the
Newton facet normals of the ideal first makes the ideal's support
function linear on every cone of the fan, so the pulled-back ideal is
invertible with normal crossing support.

On the resolved fan, sections of an invariant divisor sheaf are cut out
ray by ray, which turns both pushforward formulas into explicit integer
conditions per ray:

* multiplier ideal of a pair: (m, u_j) >= 1 + floor(c*a_j - (w, u_j)),
  intersected with the ambient ring;
* multiplier module: (m, u_j) >= 1 + floor(c*a_j);

with a_j the order of the ideal along the ray (the minimum pairing over
generators).  This path shares no facet-interior geometry with the
direct criteria, which is what makes it a genuine oracle for them.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .exact import GeometryError, QVec, Vec, det2, dot, primitive, vadd
from .ideals import MonomialIdeal, newton_polyhedron
from .polyhedra import Cone, HalfspaceSystem, hilbert_basis, minimal_lattice_generators
from .toric import Pair, ToricVariety


@dataclass(frozen=True)
class Fan2D:
    """Smooth subdivision of a 2D cone: rays in circular order, consecutive
    pairs unimodular, endpoints the original cone's rays."""

    rays: tuple[Vec, ...]

    def cones(self) -> tuple[tuple[Vec, Vec], ...]:
        return tuple(zip(self.rays, self.rays[1:]))


@dataclass(frozen=True)
class RayData:
    ray: Vec
    ideal_order: int                   # min pairing of the ideal's generators
    weight_pairing: Optional[Fraction]  # (w, ray) when a pair is involved


def _circular_sort(rays: Sequence[Vec]) -> tuple[Vec, ...]:
    # all rays lie in a common pointed cone, so the 2x2 determinant is a
    # strict total order
    return tuple(sorted(set(rays), key=functools.cmp_to_key(lambda r, s: -det2(r, s))))


def _in_sigma(x: ToricVariety, u: Sequence[int]) -> bool:
    # membership in the primal cone: pair against the dual cone's rays
    return all(dot(h, u) >= 0 for h in x.sigma_dual.rays)


@lru_cache(maxsize=None)
def log_resolution_2d(x: ToricVariety, a: MonomialIdeal) -> Fan2D:
    """Smooth subdivision of sigma containing every Newton facet normal of a."""
    if x.rank != 2:
        raise GeometryError("resolution oracle is 2D only")
    v0, v1 = x.sigma.rays
    if det2(v0, v1) < 0:
        v0, v1 = v1, v0
    rays = {v0, v1}
    for n, _ in newton_polyhedron(a).facets:
        assert _in_sigma(x, n)
        rays.add(n)
    ordered = list(_circular_sort(rays))
    refined: list[Vec] = []
    for u, u_next in zip(ordered, ordered[1:]):
        refined.append(u)
        d = det2(u, u_next)
        assert d > 0
        if d > 1:
            refined.extend(hilbert_basis(Cone(2, (u, u_next))).elements)
    refined.append(ordered[-1])
    fan = Fan2D(_circular_sort(refined))
    assert all(det2(u, v) == 1 for u, v in fan.cones())
    return fan


def subdivide_once(fan: Fan2D, index: int = 0) -> Fan2D:
    """Insert the primitive sum of one adjacent pair: a redundant refinement
    that keeps the fan smooth (the two new determinants equal the old one)."""
    u, v = fan.rays[index], fan.rays[index + 1]
    mid = primitive(vadd(u, v))[0]
    return Fan2D(_circular_sort(fan.rays + (mid,)))


def ord_ideal_on_ray(a: MonomialIdeal, u: Sequence[int]) -> int:
    """Order of the ideal along the divisor of a ray: min pairing over generators."""
    u = tuple(u)
    if not _in_sigma(a.variety, u):
        raise GeometryError("ray %s is not in the cone" % (u,))
    return min(dot(e, u) for e in a.exponents)


def ray_data(a: MonomialIdeal, fan: Fan2D, weight: Optional[QVec]) -> tuple[RayData, ...]:
    out = []
    for u in fan.rays:
        wp = Fraction(dot(weight, u)) if weight is not None else None
        out.append(RayData(u, ord_ideal_on_ray(a, u), wp))
    return tuple(out)


def _pushforward_generators(
    x: ToricVariety, rows: list, extra_dual_rows: bool
) -> tuple[Vec, ...]:
    if extra_dual_rows:
        rows = [(v, 0, False) for v in x.sigma.rays] + rows
    system = HalfspaceSystem.make(2, rows)
    return minimal_lattice_generators(system, x.sigma_dual, x.dual_hilbert_basis)


def multiplier_ideal_via_resolution(
    p: Pair, a: MonomialIdeal, c, fan: Optional[Fan2D] = None
) -> tuple[Vec, ...]:
    """Pushforward formula for the pair's multiplier ideal, per fan ray.

    The divisor rounded down has coefficient -1 - floor(c*a_j - (w, u_j))
    on the j-th ray; its sections inside the ring are the exponents with
    (m, u_j) >= 1 + floor(c*a_j - (w, u_j)) for every ray.
    """
    c = Fraction(c)
    if c <= 0:
        raise GeometryError("coefficient c must be positive")
    x = p.variety
    if x.rank != 2:
        raise GeometryError("resolution oracle is 2D only")
    if fan is None:
        fan = log_resolution_2d(x, a)
    rows = [
        (rd.ray, 1 + math.floor(c * rd.ideal_order - rd.weight_pairing), False)
        for rd in ray_data(a, fan, p.weight)
    ]
    return _pushforward_generators(x, rows, extra_dual_rows=True)


def multiplier_module_via_resolution(
    x: ToricVariety, a: MonomialIdeal, c, fan: Optional[Fan2D] = None
) -> tuple[Vec, ...]:
    """Pushforward formula for the multiplier module: (m, u_j) >= 1 + floor(c*a_j)."""
    c = Fraction(c)
    if c <= 0:
        raise GeometryError("coefficient c must be positive")
    if x.rank != 2:
        raise GeometryError("resolution oracle is 2D only")
    if fan is None:
        fan = log_resolution_2d(x, a)
    rows = [
        (rd.ray, 1 + math.floor(c * rd.ideal_order), False)
        for rd in ray_data(a, fan, None)
    ]
    return _pushforward_generators(x, rows, extra_dual_rows=False)


def check_positivity_on_resolution(x: ToricVariety, m: Sequence[int], f: Fan2D) -> bool:
    """Do all fan rays pair strictly positively with a canonical-module section?

    Exposed as a checkable predicate rather than assumed: sections of the
    canonical module stay sections on any toric resolution.
    """
    m = tuple(m)
    if not all(dot(m, v) >= 1 for v in x.sigma.rays):
        raise GeometryError("exponent %s is not a canonical-module section" % (m,))
    return all(dot(m, u) > 0 for u in f.rays)
