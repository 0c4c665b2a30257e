"""Monomial ideals in the semigroup ring and their Newton polyhedra.

The Newton polyhedron of an ideal is the convex hull of its exponent set,
which equals conv(generators) + dual cone; it is stored by its facet
presentation {(n_f, y) >= b_f} with primitive integer normals.  Because
generators are lattice points and normals primitive, every b_f is an
integer (asserted at construction).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import GeometryError, Vec, dot, vsub
from .polyhedra import (
    HalfspaceSystem,
    VertexSystem,
    cone_contains,
    hrep_to_vrep,
    minimal_lattice_generators,
    vrep_to_hrep,
)
from .toric import ToricVariety


@dataclass(frozen=True)
class MonomialIdeal:
    variety: ToricVariety
    exponents: tuple[Vec, ...]   # minimal generators, sorted


@dataclass(frozen=True)
class NewtonPolyhedron:
    facets: tuple[tuple[Vec, int], ...]   # (primitive normal in N, offset b_f)
    vertices: tuple[Vec, ...]


def _in_dual(x: ToricVariety, m: Sequence[int]) -> bool:
    return all(dot(m, v) >= 0 for v in x.sigma.rays)


def make_ideal(x: ToricVariety, exps: Sequence[Sequence[int]]) -> MonomialIdeal:
    """Validate exponents and prune redundant generators.

    An exponent e is redundant when e - e' lies in the dual cone for some
    other generator e' (the semigroup is saturated, so semigroup
    membership is cone membership of the difference).
    """
    if not exps:
        raise GeometryError("zero ideal: need at least one generator")
    exps = [tuple(int(c) for c in e) for e in exps]
    for e in exps:
        if len(e) != x.rank:
            raise GeometryError("exponent %s has wrong length" % (e,))
        if not _in_dual(x, e):
            raise GeometryError("exponent %s lies outside the dual cone" % (e,))
    uniq = sorted(set(exps))
    kept = [
        e
        for e in uniq
        if not any(e != f and _in_dual(x, vsub(e, f)) for f in uniq)
    ]
    return MonomialIdeal(x, tuple(kept))


@lru_cache(maxsize=None)
def newton_polyhedron(a: MonomialIdeal) -> NewtonPolyhedron:
    """Facet presentation of conv(exponents) + dual cone."""
    x = a.variety
    vs = VertexSystem(
        tuple(tuple(Fraction(c) for c in e) for e in a.exponents),
        x.sigma_dual.rays,
    )
    h = vrep_to_hrep(vs)
    facets = []
    for n, b, strict in h.rows:
        assert not strict and b.denominator == 1
        # normals of a polyhedron with recession sigma_dual lie in sigma
        assert cone_contains(x.sigma_dual.rays, n), "facet normal outside the cone"
        facets.append((n, int(b)))
    verts = hrep_to_vrep(h).vertices
    vertices = []
    for v in verts:
        assert all(c.denominator == 1 for c in v)
        vertices.append(tuple(int(c) for c in v))
    return NewtonPolyhedron(tuple(sorted(facets)), tuple(sorted(vertices)))


def interior_contains(np_: NewtonPolyhedron, c, y: Sequence) -> bool:
    """Is y interior to c * Newt?  True iff (n_f, y) > c*b_f on every facet.

    The polyhedron is full-dimensional, so facet-strictness is the
    topological interior.
    """
    c = Fraction(c)
    if c <= 0:
        raise GeometryError("scale factor must be positive")
    return all(dot(n, y) > c * b for n, b in np_.facets)


def ideal_membership(a: MonomialIdeal, m: Sequence[int]) -> bool:
    """Does x^m lie in the ideal?  True iff m - e is in the dual cone for some e."""
    return any(_in_dual(a.variety, vsub(tuple(m), e)) for e in a.exponents)


def integral_closure(a: MonomialIdeal) -> tuple[Vec, ...]:
    """Minimal generators of the set of lattice points of the Newton polyhedron."""
    x = a.variety
    np_ = newton_polyhedron(a)
    rows = [(v, 0, False) for v in x.sigma.rays]
    rows += [(n, b, False) for n, b in np_.facets]
    system = HalfspaceSystem.make(x.rank, rows)
    return minimal_lattice_generators(system, x.sigma_dual, x.dual_hilbert_basis)


def ideal_power(a: MonomialIdeal, k: int) -> MonomialIdeal:
    """The k-th power, generated by all k-fold sums of generators."""
    if k < 1:
        raise GeometryError("power must be >= 1")
    total = set(a.exponents)
    for _ in range(k - 1):
        total = {tuple(x + y for x, y in zip(s, e)) for s in total for e in a.exponents}
    return make_ideal(a.variety, sorted(total))
