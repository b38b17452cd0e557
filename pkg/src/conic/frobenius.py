"""Frobenius-style root decompositions of the semigroup ring.

The q-th root of the module of lattice points decomposes into chamber
modules, one summand per residue v in {0..q-1}^d, namely the chamber of
-v/q.  Counting summands per isomorphism class gives the decomposition;
the smallest q whose decomposition hits every class measures how fast
the roots see the whole category.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .chambers import canonical_class, chamber_of, enumerate_classes
from .cone import ConeSpec
from .errors import InputError, UnsupportedOperationError
from .ratgeom import IntVec

SEARCH_CAP = 64


@dataclass(frozen=True)
class RootDecomposition:
    q: int
    counts: tuple[tuple[IntVec, int], ...]
    total: int

    def count_of(self, rep: IntVec) -> int:
        for r, n in self.counts:
            if r == rep:
                return n
        return 0


@dataclass(frozen=True)
class DModuleReport:
    p: int
    minimal_e: int
    q_at_e: int
    bound_low: int
    bound_high: int
    note: str


def decompose_root(spec: ConeSpec, q: int) -> RootDecomposition:
    """Class counts of the chamber summands of the q-th root."""
    if not isinstance(q, int) or q < 1:
        raise InputError(f"root index must be a positive integer, got {q!r}")
    counts: dict[IntVec, int] = {}
    for v in product(range(q), repeat=spec.rank):
        point = tuple(Fraction(-x, q) for x in v)
        rep = canonical_class(spec, chamber_of(spec, point))
        counts[rep] = counts.get(rep, 0) + 1
    return RootDecomposition(
        q=q, counts=tuple(sorted(counts.items())), total=q ** spec.rank)


def minimal_complete_q(spec: ConeSpec, cap: int = SEARCH_CAP) -> int:
    """Smallest q whose root decomposition contains every class."""
    wanted = set(enumerate_classes(spec).reps)
    for q in range(1, cap + 1):
        seen = {rep for rep, _ in decompose_root(spec, q).counts}
        if seen == wanted:
            return q
    raise UnsupportedOperationError(
        f"no root up to {cap} hits every class")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def dmodule_report(spec: ConeSpec, p: int) -> DModuleReport:
    """Smallest Frobenius power seeing every class, with the global
    dimension bracket for the induced endomorphism ring."""
    if not isinstance(p, int) or not _is_prime(p):
        raise InputError(f"characteristic must be prime, got {p!r}")
    qmin = minimal_complete_q(spec)
    e = 0
    while p ** e < qmin:
        e += 1
    return DModuleReport(
        p=p, minimal_e=e, q_at_e=p ** e,
        bound_low=spec.rank, bound_high=spec.rank + 1,
        note=("the ring of differential operators has global dimension "
              "in this bracket; equality at the lower bound is "
              "conjectural, not computed here"))
