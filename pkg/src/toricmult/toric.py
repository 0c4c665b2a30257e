"""Affine toric varieties, invariant Q-divisors, and pairs.

The variety is Spec of the semigroup ring of the dual cone's lattice
points.  Rays of the defining cone index the invariant prime divisors
D_i; the canonical divisor is -sum(D_i).

Weight convention: a pair (X, Delta) carries the rational exponent
vector w with (w, v_i) = 1 - delta_i for every ray v_i, i.e.
K_X + Delta = -div x^w.  On affine n-space with Delta = 0 this makes
w = (1, ..., 1), the classical smooth-case translation vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .exact import (
    GeometryError,
    NotFullDimensionalError,
    QVec,
    Vec,
    det,
    dot,
    is_zero,
    primitive,
    solve_linear,
)
from .polyhedra import (
    Cone,
    HalfspaceSystem,
    HilbertBasis,
    dual_cone,
    hilbert_basis,
    minimal_lattice_generators,
    strict_to_lattice_closed,
)


@dataclass(frozen=True)
class ToricVariety:
    rank: int
    sigma: Cone                       # rays in N, caller's order (divisor-aligned)
    sigma_dual: Cone                  # extremal rays of the dual cone in M
    dual_hilbert_basis: HilbertBasis  # semigroup generators of the coordinate ring
    primitivized: bool                # some input ray needed scaling down


@dataclass(frozen=True)
class QDivisor:
    """Invariant Q-divisor as coefficients aligned with sigma.rays."""

    coeffs: tuple[Fraction, ...]


@dataclass(frozen=True)
class Pair:
    variety: ToricVariety
    delta: QDivisor
    weight: QVec   # (weight, v_i) = 1 - delta_i for all i

    def __post_init__(self):
        for v, d in zip(self.variety.sigma.rays, self.delta.coeffs):
            assert dot(self.weight, v) == 1 - d


def make_variety(rays: Sequence[Sequence[int]]) -> ToricVariety:
    """Build the variety of the cone spanned by ``rays``.

    Rays are primitivized (flagged), must be pairwise distinct and
    extremal, and must span a pointed full-dimensional cone.  Redundant
    rays are an error rather than silently dropped: divisor coefficients
    are aligned with the ray list.
    """
    if not rays:
        raise GeometryError("a cone needs at least one ray")
    rank = len(rays[0])
    if any(len(r) != rank for r in rays):
        raise GeometryError("rays of unequal length")
    if any(is_zero(r) for r in rays):
        raise GeometryError("zero vector has no primitive part")
    prim = []
    changed = False
    for r in rays:
        p, g = primitive(r)
        prim.append(p)
        changed = changed or g != 1
    seen = set()
    for p in prim:
        if p in seen:
            raise GeometryError("duplicate ray %s" % (p,))
        seen.add(p)
    sigma = Cone(rank, tuple(prim))
    try:
        sdual = dual_cone(sigma)  # raises NotPointedError when sigma has a line
    except NotFullDimensionalError:
        raise GeometryError("torus factor not supported: cone is not full-dimensional") from None
    extremal = set(dual_cone(sdual).rays)
    for p in prim:
        if p not in extremal:
            raise GeometryError("ray %s is redundant (not extremal)" % (p,))
    return ToricVariety(rank, sigma, sdual, hilbert_basis(sdual), changed)


def is_smooth(x: ToricVariety) -> bool:
    return len(x.sigma.rays) == x.rank and abs(det(x.sigma.rays)) == 1


def divisor(x: ToricVariety, coeffs: Sequence) -> QDivisor:
    if len(coeffs) != len(x.sigma.rays):
        raise GeometryError("one coefficient per ray expected")
    return QDivisor(tuple(Fraction(c) for c in coeffs))


def zero_divisor(x: ToricVariety) -> QDivisor:
    return QDivisor((Fraction(0),) * len(x.sigma.rays))


def canonical_divisor(x: ToricVariety) -> QDivisor:
    """K_X = -(D_1 + ... + D_s): coefficient -1 on every ray."""
    return QDivisor((Fraction(-1),) * len(x.sigma.rays))


def q_cartier_witness(x: ToricVariety, d: QDivisor) -> Optional[QVec]:
    """A rational w with (w, v_i) = d_i for all rays, or None (not Q-Cartier)."""
    if len(d.coeffs) != len(x.sigma.rays):
        raise GeometryError("one coefficient per ray expected")
    return solve_linear(x.sigma.rays, d.coeffs)


def make_pair(x: ToricVariety, delta: QDivisor) -> Pair:
    """Attach the weight w with (w, v_i) = 1 - delta_i; Delta need not be effective."""
    target = QDivisor(tuple(1 - c for c in delta.coeffs))
    w = q_cartier_witness(x, target)
    if w is None:
        raise GeometryError("K_X+Delta is not Q-Cartier")
    return Pair(x, delta, w)


def q_gorenstein_weight(x: ToricVariety) -> Optional[tuple[QVec, int]]:
    """(w_0, r): (w_0, v_i) = 1 for all i and r the Gorenstein index; None otherwise."""
    w = q_cartier_witness(x, QDivisor((Fraction(1),) * len(x.sigma.rays)))
    if w is None:
        return None
    index = 1
    for c in w:
        index = index * c.denominator // math.gcd(index, c.denominator)
    return w, index


@lru_cache(maxsize=None)
def omega_generators(x: ToricVariety) -> tuple[Vec, ...]:
    """Minimal monomial generators of the canonical module.

    The canonical module is the ideal of exponents pairing strictly
    positively with every ray; over the lattice that is (m, v_i) >= 1.
    """
    rows = [(v, 0, True) for v in x.sigma.rays]
    closed = strict_to_lattice_closed(HalfspaceSystem.make(x.rank, rows))
    return minimal_lattice_generators(closed, x.sigma_dual, x.dual_hilbert_basis)
