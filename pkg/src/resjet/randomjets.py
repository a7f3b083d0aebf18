"""Seeded generators of random exact inputs for the property suites.

Everything takes an explicit ``random.Random`` so runs are reproducible
from a single seed.  Coefficients are small rationals: large numerators
slow the exact kernels without exercising anything new.
"""

from __future__ import annotations

import random

from gmpy2 import mpq

from .birkhoff import hamiltonian_time_one
from .cocycle import ResMap
from .contactnf import ContactNF, ResVF
from .jetalg import Jet1, Jet2, MapJet2, compose_map, substitute_xy

__all__ = [
    "MULTIPLIERS",
    "area_preserving_tangent_id",
    "contact",
    "invariant_density",
    "jet1",
    "jet2",
    "positive_jet1",
    "rational",
    "resmap",
    "resvf",
    "rng",
    "unit_jet1",
]

MULTIPLIERS = (mpq(3, 2), mpq(2), mpq(3))


def rng(seed: int) -> random.Random:
    return random.Random(seed)


def rational(r: random.Random, bound: int = 3, den: int = 3, nonzero: bool = False) -> mpq:
    while True:
        value = mpq(r.randint(-bound, bound), r.randint(1, den))
        if value or not nonzero:
            return value


def jet1(r: random.Random, order: int, bound: int = 3) -> Jet1:
    return Jet1([rational(r, bound) for _ in range(order + 1)], order)


def unit_jet1(r: random.Random, order: int, bound: int = 2) -> Jet1:
    return Jet1([mpq(1)] + [rational(r, bound) for _ in range(order)], order)


def positive_jet1(r: random.Random, order: int, bound: int = 2) -> Jet1:
    head = mpq(r.randint(1, 2 * bound), r.randint(1, 2))
    return Jet1([head] + [rational(r, bound) for _ in range(order)], order)


def jet2(r: random.Random, order: int, bound: int = 3, fill: float = 0.6) -> Jet2:
    cs = {}
    for i in range(order + 1):
        for j in range(order + 1 - i):
            if r.random() < fill:
                value = rational(r, bound)
                if value:
                    cs[(i, j)] = value
    return Jet2(cs, order)


def resmap(r: random.Random, order: int, linear: bool = False) -> ResMap:
    """Resonance map whose cofactor is deep enough for a map jet at ``order``."""
    depth = (order + 1) // 2
    omega = Jet1.constant(1, depth) if linear else unit_jet1(r, depth)
    return ResMap(r.choice(MULTIPLIERS), omega)


def resvf(r: random.Random, order: int, bound: int = 1) -> ResVF:
    """Resonance field with coefficients bounded by ``bound`` in magnitude."""

    def small_tail(n):
        return [mpq(r.randint(-bound * 4, bound * 4), 4) for _ in range(n)]

    f = Jet1([mpq(r.randint(1, 4), 4)] + small_tail(order), order)
    g = Jet1([mpq(r.randint(1, 4), 4)] + small_tail(order), order)
    return ResVF(f, g)


def contact(r: random.Random, order: int, linear: bool = False, flat2: bool = False) -> ContactNF:
    """Random contact normal form; optionally linear or with vanishing theta_2."""
    head = [mpq(r.randint(1, 6), r.randint(1, 2)), mpq(r.randint(1, 6), r.randint(1, 2))]
    if linear:
        tail = [mpq(0)] * (order - 1)
    else:
        tail = [rational(r, 3) for _ in range(order - 1)]
        if flat2 and order >= 2:
            tail[0] = mpq(0)
    return ContactNF(Jet1(head + tail, order))


def invariant_density(r: random.Random, order: int, bound: int = 2) -> Jet2:
    """Positive density invariant under every resonance map: a jet in ``x*y``."""
    return substitute_xy(positive_jet1(r, order // 2, bound), order)


def area_preserving_tangent_id(r: random.Random, order: int, stages: int = 2) -> MapJet2:
    """Exactly area-preserving map jet with identity linear part.

    Composition of time-1 maps of random polynomial Hamiltonian fields of
    valuation >= 2 (Hamiltonians of degree >= 3), so the Jacobian
    determinant is identically 1 by construction.
    """
    out = MapJet2.identity(order)
    top = min(order + 1, 5)
    for _ in range(stages):
        ham = {}
        for _ in range(3):
            degree = r.randint(3, top)
            i = r.randint(0, degree)
            ham[(i, degree - i)] = rational(r, 2, 2, nonzero=True)
        out = compose_map(hamiltonian_time_one(ham, order), out)
    return out
