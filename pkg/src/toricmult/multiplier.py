"""Multiplier ideals of pairs, multiplier modules, thresholds, and jumps.

A monomial x^m lies in the multiplier ideal of (X, Delta) at coefficient
c iff m + w is interior to c * Newt(a), where w is the pair's weight
((w, v_i) = 1 - delta_i).  The multiplier module drops the translation:
x^m lies in it iff m itself is interior, and needs no pair structure.

Generator lists come from the shared up-set engine applied to the
lattice closure of the facet-strict system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import GeometryError, QVec, Vec, dot, floor_strict_bound, vadd
from .ideals import MonomialIdeal, interior_contains, newton_polyhedron
from .polyhedra import HalfspaceSystem, minimal_lattice_generators, strict_to_lattice_closed
from .toric import Pair, ToricVariety


@dataclass(frozen=True)
class IdealResult:
    generators: tuple[Vec, ...]
    defining_system: HalfspaceSystem   # lattice-closed; lattice points = members
    c: Fraction
    weight_used: Optional[QVec]        # None for weight-free computations


@dataclass(frozen=True)
class JumpReport:
    jumps: tuple[tuple[Fraction, tuple[Vec, ...]], ...]  # ascending (xi, generators)
    c_max: Fraction
    limit_generators: tuple[Vec, ...]  # the ideal for arbitrarily small positive c


def _require_positive(c) -> Fraction:
    c = Fraction(c)
    if c <= 0:
        raise GeometryError("coefficient c must be positive")
    return c


def _in_dual(x: ToricVariety, m: Sequence[int]) -> bool:
    return all(dot(m, v) >= 0 for v in x.sigma.rays)


def multiplier_ideal_membership(p: Pair, a: MonomialIdeal, c, m: Sequence[int]) -> bool:
    """Is x^m in the multiplier ideal?  m must be an exponent of the ring."""
    c = _require_positive(c)
    m = tuple(m)
    if not _in_dual(p.variety, m):
        raise GeometryError("exponent %s is not a ring element (outside the dual cone)" % (m,))
    return interior_contains(newton_polyhedron(a), c, vadd(m, p.weight))


def _interior_system(x: ToricVariety, a: MonomialIdeal, c: Fraction, shift: Optional[QVec]) -> HalfspaceSystem:
    """Closed system for {m in dual cone : m + shift interior to c*Newt}."""
    np_ = newton_polyhedron(a)
    rows = [(v, 0, False) for v in x.sigma.rays]
    for n, b in np_.facets:
        off = c * b - (dot(n, shift) if shift is not None else 0)
        rows.append((n, off, True))
    return strict_to_lattice_closed(HalfspaceSystem.make(x.rank, rows))


def multiplier_ideal(p: Pair, a: MonomialIdeal, c) -> IdealResult:
    """Minimal monomial generators of the multiplier ideal of the pair."""
    c = _require_positive(c)
    x = p.variety
    closed = _interior_system(x, a, c, p.weight)
    gens = minimal_lattice_generators(closed, x.sigma_dual, x.dual_hilbert_basis)
    np_ = newton_polyhedron(a)
    assert all(interior_contains(np_, c, vadd(g, p.weight)) for g in gens)
    return IdealResult(gens, closed, c, p.weight)


def multiplier_module(x: ToricVariety, a: MonomialIdeal, c) -> IdealResult:
    """Minimal generators of the multiplier module inside the canonical module.

    Weight-free: defined on any variety here, no Q-Gorenstein assumption.
    The output automatically consists of canonical-module sections because
    the interior of c*Newt sits inside the interior of the dual cone.
    """
    c = _require_positive(c)
    closed = _interior_system(x, a, c, None)
    gens = minimal_lattice_generators(closed, x.sigma_dual, x.dual_hilbert_basis)
    assert all(all(dot(g, v) >= 1 for v in x.sigma.rays) for g in gens)
    return IdealResult(gens, closed, c, None)


def lct(p: Pair, a: MonomialIdeal) -> Optional[Fraction]:
    """Log canonical threshold; None encodes +infinity (unit ideal).

    The trivial-ideal condition at m = 0 reads (n_f, w) > c*b_f per facet.
    Facets with b_f = 0 are c-independent: if one fails, no positive c
    works and the threshold is 0.  Otherwise the binding facets give
    min((n_f, w) / b_f), clamped at 0 for weights outside the cone.
    """
    np_ = newton_polyhedron(a)
    w = p.weight
    candidates = []
    for n, b in np_.facets:
        pairing = dot(n, w)
        if b == 0:
            if pairing <= 0:
                return Fraction(0)
        else:
            candidates.append(Fraction(pairing, 1) / b)
    if not candidates:
        return None
    value = min(candidates)
    return value if value > 0 else Fraction(0)


def jumping_numbers(p: Pair, a: MonomialIdeal, c_max) -> JumpReport:
    """All jumping numbers in (0, c_max], each with its generator list.

    For fixed m the membership condition fails first at
    c = min((n_f, m + w) / b_f) over facets with b_f > 0, which has the
    form (z + (n_f, w)) / b_f with integer z.  The ideal is therefore
    constant between consecutive candidates of that form, and each
    candidate is tested against the midpoint below it (exact rational
    half-gap, never a fixed epsilon).
    """
    c_max = _require_positive(c_max)
    np_ = newton_polyhedron(a)
    w = p.weight
    candidates: set[Fraction] = set()
    for n, b in np_.facets:
        if b <= 0:
            continue
        pairing = Fraction(dot(n, w))
        z_lo = floor_strict_bound(-pairing)          # value > 0
        z_hi = math.floor(c_max * b - pairing)       # value <= c_max
        for z in range(z_lo, z_hi + 1):
            candidates.add((z + pairing) / b)
    ordered = sorted(candidates)
    jumps = []
    limit: Optional[tuple] = None
    prev = Fraction(0)
    for xi in ordered:
        gens_mid = multiplier_ideal(p, a, (prev + xi) / 2).generators
        if limit is None:
            limit = gens_mid
        gens_xi = multiplier_ideal(p, a, xi).generators
        if gens_xi != gens_mid:
            jumps.append((xi, gens_xi))
        prev = xi
    if limit is None:
        limit = multiplier_ideal(p, a, c_max).generators
    return JumpReport(tuple(jumps), c_max, limit)
