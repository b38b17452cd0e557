"""Chambers of constancy and their isomorphism classes.

A point v determines the module of lattice points of the shifted cone
C + v, and that module depends on v only through the ceiling vector
c_i = ceil(<v, n_i>).  The set of points sharing a ceiling vector is the
chamber of c: the half-open box system c_i - 1 < <x, n_i> <= c_i.  Two
chambers give isomorphic modules exactly when their ceiling vectors
differ by an element of the pairing lattice, the image of the lattice
under m |-> (<m, n_i>)_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import ratgeom
from .cone import ConeSpec
from .errors import InputError, InternalInvariantError
from .ratgeom import EQ, LE, LT, IntVec, RatVec, dot, intvec, sub


def pairings(spec: ConeSpec, point) -> RatVec:
    v = ratgeom.ratvec(point)
    if len(v) != spec.rank:
        raise InputError(f"point has length {len(v)}, expected {spec.rank}")
    return tuple(dot(v, n) for n in spec.normals)


def chamber_of(spec: ConeSpec, point) -> IntVec:
    """Ceiling vector of the chamber containing the point."""
    return tuple(math.ceil(p) for p in pairings(spec, point))


def nhat(spec: ConeSpec, m) -> IntVec:
    """Pairing vector (<m, n_i>)_i of a lattice point m."""
    w = intvec(m)
    if len(w) != spec.rank:
        raise InputError(f"lattice point has length {len(w)}, expected {spec.rank}")
    return tuple(dot(w, n) for n in spec.normals)


def region_system(spec: ConeSpec, c, eq=(), open_=()) -> ratgeom.LinSystem:
    """Half-open chamber system with optional per-index overrides.

    Index in ``eq``: equality <x, n_i> = c_i.  Index in ``open_``: open
    strip c_i - 1 < <x, n_i> < c_i.  Otherwise the half-open default
    c_i - 1 < <x, n_i> <= c_i.
    """
    cc = intvec(c)
    if len(cc) != len(spec.normals):
        raise InputError(
            f"ceiling vector has length {len(cc)}, expected {len(spec.normals)}")
    rows = []
    for i, n in enumerate(spec.normals):
        if i in eq:
            rows.append((n, EQ, cc[i]))
            continue
        rows.append((n, LT if i in open_ else LE, cc[i]))
        rows.append((tuple(-x for x in n), LT, 1 - cc[i]))
    return ratgeom.system(spec.rank, rows)


@lru_cache(maxsize=None)
def is_feasible(spec: ConeSpec, c: IntVec) -> bool:
    """Whether any point has this ceiling vector."""
    return ratgeom.feasible(region_system(spec, c))


def chamber_witness(spec: ConeSpec, c: IntVec) -> RatVec | None:
    """An exact rational point of the chamber, or None when infeasible."""
    return ratgeom.solve(region_system(spec, c))


def degree(c) -> int:
    """Grading of the chamber: minus the sum of the ceiling entries."""
    return -sum(intvec(c))


def _require_feasible(spec: ConeSpec, c) -> IntVec:
    cc = intvec(c)
    if not is_feasible(spec, cc):
        raise InputError(f"not a chamber: {cc} is infeasible")
    return cc


def leq(spec: ConeSpec, c, cp) -> bool:
    """Submodule order: the module of c is contained in the module of cp.

    Containment of shifted-cone modules reverses the entrywise order on
    ceiling vectors.
    """
    a = _require_feasible(spec, c)
    b = _require_feasible(spec, cp)
    return all(x >= y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def translation_lattice(spec: ConeSpec) -> tuple[IntVec, ...]:
    """HNF basis of the lattice of pairing vectors of lattice points."""
    cols = [tuple(n[j] for n in spec.normals) for j in range(spec.rank)]
    return ratgeom.hermite_normal_form(cols)


def canonical_class(spec: ConeSpec, c) -> IntVec:
    """Canonical representative of the chamber's isomorphism class."""
    cc = _require_feasible(spec, c)
    return ratgeom.reduce_mod_hnf(cc, translation_lattice(spec))


def iso_witness(spec: ConeSpec, c, cp) -> IntVec | None:
    """Lattice point m with c = cp + pairing(m), or None."""
    a = _require_feasible(spec, c)
    b = _require_feasible(spec, cp)
    return ratgeom.lattice_solve(spec.normals, sub(a, b))


def is_adjacent(spec: ConeSpec, c, cp) -> bool:
    """Whether two chambers share a wall.

    The ceiling vectors must differ by one in exactly one coordinate,
    and the shared wall (pairing i pinned at the smaller ceiling, all
    other pairings in open strips) must be nonempty.
    """
    a = _require_feasible(spec, c)
    b = _require_feasible(spec, cp)
    diffs = [i for i in range(len(a)) if a[i] != b[i]]
    if len(diffs) != 1 or abs(a[diffs[0]] - b[diffs[0]]) != 1:
        return False
    i = diffs[0]
    wall = tuple(min(x, y) for x, y in zip(a, b))
    sys = region_system(
        spec, wall, eq=(i,), open_=tuple(j for j in range(len(a)) if j != i))
    return ratgeom.feasible(sys)


@dataclass(frozen=True)
class ClassList:
    """All isomorphism classes, with both enumeration counts.

    reps are lex sorted canonical representatives; labels align with
    reps, the free class is always labeled A0 and the rest are numbered
    in lex order.
    """

    reps: tuple[IntVec, ...]
    labels: tuple[str, ...]
    bfs_count: int
    grid_count: int

    def label_of(self, rep: IntVec) -> str:
        return self.labels[self.reps.index(rep)]

    def rep_of(self, label: str) -> IntVec:
        if label not in self.labels:
            raise InputError(f"unknown class label {label!r}")
        return self.reps[self.labels.index(label)]


def _grid_classes(spec: ConeSpec) -> set[IntVec]:
    # Independent oracle: ceilings of -v for v on a grid fine enough to
    # meet every chamber class near the origin.
    q = 1 + max(sum(abs(x) for x in n) for n in spec.normals)
    found = set()
    for ks in product(range(q), repeat=spec.rank):
        v = tuple(Fraction(k, q) for k in ks)
        found.add(canonical_class(spec, chamber_of(spec, v)))
    return found


@lru_cache(maxsize=None)
def enumerate_classes(spec: ConeSpec) -> ClassList:
    """BFS over single-coordinate steps, cross-checked against a grid."""
    t = len(spec.normals)
    zero = tuple(0 for _ in range(t))
    start = canonical_class(spec, zero)
    seen = {start}
    queue = [start]
    while queue:
        cur = queue.pop(0)
        for i in range(t):
            for step in (1, -1):
                nxt = tuple(
                    x + step if j == i else x for j, x in enumerate(cur))
                if not is_feasible(spec, nxt):
                    continue
                rep = canonical_class(spec, nxt)
                if rep not in seen:
                    seen.add(rep)
                    queue.append(rep)
    grid = _grid_classes(spec)
    if grid != seen:
        raise InternalInvariantError(
            f"class enumeration mismatch: bfs found {sorted(seen)}, "
            f"grid found {sorted(grid)}")
    reps = tuple(sorted(seen))
    free = canonical_class(spec, zero)
    labels = [""] * len(reps)
    labels[reps.index(free)] = "A0"
    k = 1
    for i, rep in enumerate(reps):
        if rep != free:
            labels[i] = f"A{k}"
            k += 1
    return ClassList(
        reps=reps, labels=tuple(labels),
        bfs_count=len(seen), grid_count=len(grid))
