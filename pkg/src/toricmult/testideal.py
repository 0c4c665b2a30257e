"""Test ideals by exact linear feasibility and projection.

A monomial x^m is a member iff some rational w satisfies (w, v_i) <= 1
for every ray and m + w is interior to c * Newt(a).  Deciding this over
the rationals is enough: the constraint data is rational, so the open
feasible region is nonempty over the reals iff it contains a rational
point (any real solution has a rational point in a small box around it
that stays feasible).  Membership witnesses come from Fourier-Motzkin
back-substitution; the generator list comes from eliminating the w-block
from the joint (m, w) system, whose projection is exact, followed by the
shared up-set engine.

The decomposition check certifies the two inclusions between the test
ideal and the multiplier ideals over effective Q-Cartier boundaries:
each test-ideal generator is placed in the multiplier ideal of the
boundary built from its own witness (delta_i = 1 - (w, v_i)), and each
sampled boundary's multiplier ideal is verified inside the test ideal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import GeometryError, QVec, Vec, dot, vadd
from .ideals import MonomialIdeal, interior_contains, newton_polyhedron
from .multiplier import (
    IdealResult,
    _require_positive,
    multiplier_ideal,
    multiplier_ideal_membership,
)
from .polyhedra import (
    HalfspaceSystem,
    minimal_lattice_generators,
    eliminate,
    rational_point,
    strict_to_lattice_closed,
)
from .toric import Pair, QDivisor, ToricVariety, make_pair


@dataclass(frozen=True)
class TestMembershipWitness:
    member: bool
    witness: Optional[QVec]   # rational w certifying membership, when member


@dataclass(frozen=True)
class BoundaryDivisor:
    delta: QDivisor       # effective, delta_i = 1 - (weight, v_i)
    weight: QVec


@dataclass
class CorollaryReport:
    passed: bool
    generators_checked: int
    samples_checked: int
    subset_failures: list = field(default_factory=list)
    superset_failures: list = field(default_factory=list)
    sampled_weights: list = field(default_factory=list)


def _in_dual(x: ToricVariety, m: Sequence[int]) -> bool:
    return all(dot(m, v) >= 0 for v in x.sigma.rays)


def _witness_system(x: ToricVariety, a: MonomialIdeal, c: Fraction, m: Sequence[int]) -> HalfspaceSystem:
    """Constraints on w alone: (v_i, w) <= 1 and m + w facet-strict inside c*Newt."""
    np_ = newton_polyhedron(a)
    rows = [(tuple(-t for t in v), -1, False) for v in x.sigma.rays]
    rows += [(n, c * b - dot(n, m), True) for n, b in np_.facets]
    return HalfspaceSystem.make(x.rank, rows)


def test_ideal_membership(x: ToricVariety, a: MonomialIdeal, c, m: Sequence[int]) -> TestMembershipWitness:
    """Decide membership of x^m and produce a rational witness when it holds."""
    c = _require_positive(c)
    m = tuple(m)
    if not _in_dual(x, m):
        raise GeometryError("exponent %s is not a ring element (outside the dual cone)" % (m,))
    w = rational_point(_witness_system(x, a, c, m))
    if w is None:
        return TestMembershipWitness(False, None)
    assert all(dot(w, v) <= 1 for v in x.sigma.rays)
    assert interior_contains(newton_polyhedron(a), c, vadd(m, w))
    return TestMembershipWitness(True, w)


def test_ideal(x: ToricVariety, a: MonomialIdeal, c) -> IdealResult:
    """Minimal monomial generators of the test ideal.

    Joint variables (m, w); the w-block is projected away exactly, so the
    lattice points of the projection are precisely the members.  The
    member set is an up-set: a witness for m still works for m + s with
    s in the dual cone.
    """
    c = _require_positive(c)
    n = x.rank
    np_ = newton_polyhedron(a)
    zeros = (0,) * n
    rows = [(v + zeros, 0, False) for v in x.sigma.rays]
    rows += [(zeros + tuple(-t for t in v), -1, False) for v in x.sigma.rays]
    rows += [(f + f, c * b, True) for f, b in np_.facets]
    joint = HalfspaceSystem.make(2 * n, rows)
    projected = eliminate(joint, range(n, 2 * n))
    closed = strict_to_lattice_closed(projected)
    gens = minimal_lattice_generators(closed, x.sigma_dual, x.dual_hilbert_basis)
    return IdealResult(gens, closed, c, None)


def boundary_divisor_for(x: ToricVariety, w: Sequence) -> BoundaryDivisor:
    """The effective boundary with delta_i = 1 - (w, v_i); requires (w, v_i) <= 1."""
    w = tuple(Fraction(t) for t in w)
    coeffs = []
    for v in x.sigma.rays:
        d = 1 - dot(w, v)
        if d < 0:
            raise GeometryError("Delta not effective: (w, %s) > 1" % (v,))
        coeffs.append(d)
    return BoundaryDivisor(QDivisor(tuple(coeffs)), w)


def _random_effective_weight(x: ToricVariety, rng: random.Random) -> QVec:
    """A random rational w with every (w, v_i) <= 1.

    Draw a rational box point, then walk down along a strictly interior
    direction of the dual cone just far enough to push every pairing
    below 1; the binding ray lands exactly on 1, so boundaries with some
    delta_i = 0 do occur.
    """
    raw = tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(x.rank))
    kappa = tuple(sum(col) for col in zip(*x.dual_hilbert_basis.elements))
    steps = [
        Fraction(dot(raw, v) - 1, dot(kappa, v))
        for v in x.sigma.rays
        if dot(raw, v) > 1
    ]
    if not steps:
        return raw
    t = max(steps)
    return tuple(r - t * k for r, k in zip(raw, kappa))


def corollary_check(
    x: ToricVariety, a: MonomialIdeal, c, samples: int, rng: random.Random
) -> CorollaryReport:
    """Certify both inclusions of the boundary decomposition of the test ideal.

    Subset: every test-ideal generator, via its own witness boundary.
    Superset: `samples` random effective Q-Cartier boundaries, every
    generator of their multiplier ideal re-checked for test-ideal
    membership.  The caller owns the seeded generator, so reports are
    reproducible.
    """
    c = _require_positive(c)
    report = CorollaryReport(True, 0, 0)
    tau = test_ideal(x, a, c)
    for g in tau.generators:
        wit = test_ideal_membership(x, a, c, g)
        if not wit.member:
            report.subset_failures.append({"generator": g, "reason": "no witness"})
            continue
        boundary = boundary_divisor_for(x, wit.witness)
        pair = make_pair(x, boundary.delta)
        if not multiplier_ideal_membership(pair, a, c, g):
            report.subset_failures.append({"generator": g, "witness": wit.witness})
        report.generators_checked += 1
    for _ in range(samples):
        w = _random_effective_weight(x, rng)
        report.sampled_weights.append(w)
        boundary = boundary_divisor_for(x, w)
        pair = make_pair(x, boundary.delta)
        ji = multiplier_ideal(pair, a, c)
        for g in ji.generators:
            if not test_ideal_membership(x, a, c, g).member:
                report.superset_failures.append({"weight": w, "generator": g})
        report.samples_checked += 1
    report.passed = not report.subset_failures and not report.superset_failures
    return report
