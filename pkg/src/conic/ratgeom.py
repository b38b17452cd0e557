"""Exact rational linear algebra and linear feasibility.

Everything works over arbitrary-precision integers and fractions.Fraction;
no floating point is used anywhere in the package.  Feasibility of systems
mixing weak (<=) and strict (<) inequalities is decided by Fourier-Motzkin
elimination that carries a strictness flag per constraint: a derived
constraint is strict exactly when one of its parents is.  For rational data
this decides feasibility over the reals, and back-substitution through the
elimination levels produces an exact rational witness point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InputError, InternalInvariantError

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]

EQ = "=="
LE = "<="
LT = "<"

_RELATIONS = (EQ, LE, LT)


def ratvec(values: Iterable) -> RatVec:
    return tuple(Fraction(v) for v in values)


def intvec(values: Iterable) -> IntVec:
    out = []
    for v in values:
        f = Fraction(v)
        if f.denominator != 1:
            raise InputError(f"expected integer entry, got {v!r}")
        out.append(int(f))
    return tuple(out)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise InputError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Sequence) -> tuple:
    return tuple(-a for a in u)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        # Maintain the invariants: x*a + y*b == g, nx*a + ny*b == ng.
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def primitive(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the (positive) gcd of its entries."""
    if not any(v):
        raise InputError("cannot primitivize the zero vector")
    g = 0
    for a in v:
        g = math.gcd(g, a)
    return tuple(a // g for a in v)


# --------------------------------------------------------------------------
# linear systems


@dataclass(frozen=True)
class Constraint:
    coeffs: RatVec
    rel: str
    rhs: Fraction

    @staticmethod
    def of(coeffs, rel, rhs) -> "Constraint":
        if rel not in _RELATIONS:
            raise InputError(f"unknown relation {rel!r}")
        return Constraint(ratvec(coeffs), rel, Fraction(rhs))


@dataclass(frozen=True)
class LinSystem:
    dim: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        for con in self.constraints:
            if len(con.coeffs) != self.dim:
                raise InputError(
                    f"constraint has {len(con.coeffs)} coefficients "
                    f"in a {self.dim}-dimensional system")


def system(dim: int, rows: Iterable[tuple]) -> LinSystem:
    """Build a LinSystem from (coeffs, rel, rhs) triples."""
    return LinSystem(dim, tuple(Constraint.of(c, r, b) for c, r, b in rows))


# Internal inequality form: (coeffs, rhs, strict) over the integers, meaning
# coeffs . x <= rhs, or coeffs . x < rhs when strict.  Rows are scaled to
# integers with overall gcd 1 so that duplicates collide under dedup.

def _scaled(coeffs, rhs, strict):
    den = 1
    for q in coeffs:
        den = den * q.denominator // math.gcd(den, q.denominator)
    den = den * rhs.denominator // math.gcd(den, rhs.denominator)
    ints = [int(q * den) for q in coeffs]
    r = int(rhs * den)
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    g = math.gcd(g, r)
    if g > 1:
        ints = [a // g for a in ints]
        r //= g
    return tuple(ints), r, strict


def _renorm(coeffs, rhs, strict):
    g = 0
    for a in coeffs:
        g = math.gcd(g, a)
    g = math.gcd(g, rhs)
    if g > 1:
        coeffs = tuple(a // g for a in coeffs)
        rhs //= g
    return coeffs, rhs, strict


def _rows_of(sys: LinSystem):
    rows = []
    for con in sys.constraints:
        if con.rel == EQ:
            rows.append(_scaled(con.coeffs, con.rhs, False))
            rows.append(_scaled(neg(con.coeffs), -con.rhs, False))
        elif con.rel == LE:
            rows.append(_scaled(con.coeffs, con.rhs, False))
        else:
            rows.append(_scaled(con.coeffs, con.rhs, True))
    return rows


def _dedup(rows):
    # Keep only the strongest constraint per coefficient vector: smaller rhs
    # wins, and for equal rhs the strict one wins.
    best = {}
    for coeffs, rhs, strict in rows:
        cur = best.get(coeffs)
        if cur is None or (rhs, not strict) < (cur[0], not cur[1]):
            best[coeffs] = (rhs, strict)
    return [(c, r, s) for c, (r, s) in best.items()]


def _sift_constants(rows):
    """Drop constant rows, returning (rows, still_feasible)."""
    out = []
    for coeffs, rhs, strict in rows:
        if any(coeffs):
            out.append((coeffs, rhs, strict))
        elif rhs < 0 or (rhs == 0 and strict):
            return out, False
    return out, True


def _eliminate(sys: LinSystem):
    """Fourier-Motzkin elimination of every variable.

    Returns the list of (var, rows_touching_var) levels for back-substitution,
    or None when the system is infeasible.
    """
    rows, ok = _sift_constants(_dedup(_rows_of(sys)))
    if not ok:
        return None
    remaining = list(range(sys.dim))
    levels = []
    while remaining:

        def cost(k):
            pos = sum(1 for c, _, _ in rows if c[k] > 0)
            neg_ = sum(1 for c, _, _ in rows if c[k] < 0)
            return (pos * neg_, k)

        var = min(remaining, key=cost)
        touching = [row for row in rows if row[0][var] != 0]
        passing = [row for row in rows if row[0][var] == 0]
        levels.append((var, touching))
        uppers = [row for row in touching if row[0][var] > 0]
        lowers = [row for row in touching if row[0][var] < 0]
        new = list(passing)
        for uc, ur, us in uppers:
            for lc, lr, ls in lowers:
                p = uc[var]
                q = -lc[var]
                coeffs = tuple(q * a + p * b for a, b in zip(uc, lc))
                new.append(_renorm(coeffs, q * ur + p * lr, us or ls))
        rows, ok = _sift_constants(_dedup(new))
        if not ok:
            return None
        remaining.remove(var)
    return levels


def feasible(sys: LinSystem) -> bool:
    return _eliminate(sys) is not None


def _pick(lo, hi):
    # lo/hi are (bound, strict) or None; the interval is nonempty by
    # construction because elimination already certified feasibility.
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi[0] - 1 if hi[1] else hi[0]
    if hi is None:
        return lo[0] + 1 if lo[1] else lo[0]
    if lo[0] > hi[0] or (lo[0] == hi[0] and (lo[1] or hi[1])):
        raise InternalInvariantError("empty interval after feasible elimination")
    if lo[0] == hi[0]:
        return lo[0]
    return (lo[0] + hi[0]) / 2


def solve(sys: LinSystem) -> Optional[RatVec]:
    """Exact rational witness for a mixed weak/strict system, or None.

    The witness satisfies every strict constraint strictly, so for systems
    describing a locally closed polyhedron it is a relative interior point.
    """
    levels = _eliminate(sys)
    if levels is None:
        return None
    value = [Fraction(0)] * sys.dim
    for var, rows in reversed(levels):
        lo = None
        hi = None
        for coeffs, rhs, strict in rows:
            rest = Fraction(rhs) - sum(
                coeffs[j] * value[j] for j in range(sys.dim)
                if j != var and coeffs[j])
            a = coeffs[var]
            bound = rest / a
            if a > 0:
                if hi is None or bound < hi[0] or (bound == hi[0] and strict):
                    hi = (bound, strict)
            else:
                if lo is None or bound > lo[0] or (bound == lo[0] and strict):
                    lo = (bound, strict)
        value[var] = _pick(lo, hi)
    return tuple(value)


# --------------------------------------------------------------------------
# ranks, determinants, lattice routines


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free (Bareiss) elimination."""
    mat = [list(map(int, r)) for r in rows]
    if not mat or not mat[0]:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                # Bareiss update; the division is exact.
                mat[i][j] = (mat[i][j] * mat[r][c] - mat[i][c] * mat[r][j]) // prev
            mat[i][c] = 0
        prev = mat[r][c]
        r += 1
    return r


def det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("determinant of a non-square matrix")
    if n == 0:
        return 1
    mat = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if mat[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                mat[i][j] = (mat[i][j] * mat[c][c] - mat[i][c] * mat[c][j]) // prev
            mat[i][c] = 0
        prev = mat[c][c]
    return sign * mat[n - 1][n - 1]


def qrank(rows) -> int:
    """Rank of a matrix with Fraction/int entries (plain Gaussian elimination)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat or not mat[0]:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
    return r


def lattice_solve(rows: Sequence[IntVec], rhs: Sequence[int]) -> Optional[IntVec]:
    """Solve A*m = rhs over the integers; A must have full column rank.

    Returns the unique solution when it is rational and integral, otherwise
    None (also when no rational solution exists at all).
    """
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    if len(rhs) != nr:
        raise InputError("right-hand side length does not match the matrix")
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(nr):
            if i != r and aug[i][c]:
                f = aug[i][c] / aug[r][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
    if len(pivots) < nc:
        raise InputError("matrix does not have full column rank")
    for i in range(r, nr):
        if aug[i][nc]:
            return None
    sol = [Fraction(0)] * nc
    for ri, ci in pivots:
        sol[ci] = aug[ri][nc] / aug[ri][ci]
    if any(s.denominator != 1 for s in sol):
        return None
    return tuple(int(s) for s in sol)


# --------------------------------------------------------------------------
# Hermite / Smith normal forms and kernels


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[IntVec, ...]:
    """Row-style Hermite normal form of the lattice spanned by the rows.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    and zero rows are dropped; the result is a canonical basis of the row
    lattice.
    """
    mat = [list(map(int, r)) for r in rows if any(r)]
    if not mat:
        return ()
    ncols = len(mat[0])
    top = 0
    for col in range(ncols):
        piv = None
        for i in range(top, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[top], mat[piv] = mat[piv], mat[top]
        for i in range(top + 1, len(mat)):
            while mat[i][col]:
                a, b = mat[top][col], mat[i][col]
                if a and b % a == 0:
                    q = b // a
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[top])]
                else:
                    g, x, y = xgcd(a, b)
                    ag, bg = a // g, b // g
                    rt, ri = mat[top], mat[i]
                    mat[top] = [x * p + y * q for p, q in zip(rt, ri)]
                    mat[i] = [-bg * p + ag * q for p, q in zip(rt, ri)]
        if mat[top][col] < 0:
            mat[top] = [-x for x in mat[top]]
        for i in range(top):
            q = mat[i][col] // mat[top][col]
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[top])]
        top += 1
        if top == len(mat):
            break
    return tuple(tuple(r) for r in mat[:top] if any(r))


def hnf_pivots(basis: Sequence[IntVec]) -> tuple[tuple[int, int], ...]:
    """(row, column) positions of the HNF pivots."""
    out = []
    for i, row in enumerate(basis):
        col = next(j for j, x in enumerate(row) if x)
        out.append((i, col))
    return tuple(out)


def reduce_mod_hnf(v: Sequence[int], basis: Sequence[IntVec]) -> IntVec:
    """Canonical representative of v modulo the row lattice of an HNF basis."""
    w = list(map(int, v))
    for i, col in hnf_pivots(basis):
        q = w[col] // basis[i][col]
        if q:
            w = [x - q * y for x, y in zip(w, basis[i])]
    return tuple(w)


def rref_kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> tuple[IntVec, ...]:
    """Kernel basis from the reduced row echelon form, scaled to integers.

    One basis vector per free column (ascending), each scaled to a primitive
    integer vector whose free coordinate is positive.  This is a deterministic
    basis of the rational kernel; it is not in general a basis of the integer
    kernel lattice.
    """
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        den = 1
        for x in vec:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in vec]
        basis.append(primitive(ints))
    return tuple(basis)


def rref_pivot_columns(rows: Sequence[Sequence[int]], ncols: int) -> tuple[int, ...]:
    """Pivot columns of the reduced row echelon form of the rows."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, len(mat)):
            if mat[i][c]:
                f = mat[i][c] / mat[r][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return tuple(pivots)


def functional_kernel_basis(n: Sequence[int]) -> tuple[IntVec, ...]:
    """Basis of the integer kernel lattice {m : <m, n> = 0} of one functional."""
    d = len(n)
    if not any(n):
        raise InputError("kernel of the zero functional")
    cols = [[1 if i == j else 0 for i in range(d)] for j in range(d)]
    cur = list(map(int, n))
    for j in range(1, d):
        if cur[j] == 0:
            continue
        a, b = cur[0], cur[j]
        g, x, y = xgcd(a, b)
        ag, bg = a // g, b // g
        c0, cj = cols[0], cols[j]
        cols[0] = [x * p + y * q for p, q in zip(c0, cj)]
        cols[j] = [-bg * p + ag * q for p, q in zip(c0, cj)]
        cur[0], cur[j] = g, 0
    for col in cols[1:]:
        if dot(col, n) != 0:
            raise InternalInvariantError("kernel column does not annihilate functional")
    return tuple(tuple(c) for c in cols[1:])


def smith_normal_form(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero elementary divisors, positive, each dividing the next."""
    mat = [list(map(int, r)) for r in rows]
    if not mat or not mat[0]:
        return ()
    nr, nc = len(mat), len(mat[0])
    n = min(nr, nc)
    t = 0
    while t < n:
        pos = None
        for i in range(t, nr):
            for j in range(t, nc):
                if mat[i][j]:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        i0, j0 = pos
        mat[t], mat[i0] = mat[i0], mat[t]
        for row in mat:
            row[t], row[j0] = row[j0], row[t]
        while True:
            for i in range(t + 1, nr):
                while mat[i][t]:
                    a, b = mat[t][t], mat[i][t]
                    if a and b % a == 0:
                        q = b // a
                        mat[i] = [x - q * y for x, y in zip(mat[i], mat[t])]
                    else:
                        g, x, y = xgcd(a, b)
                        ag, bg = a // g, b // g
                        rt, ri = mat[t], mat[i]
                        mat[t] = [x * p + y * q for p, q in zip(rt, ri)]
                        mat[i] = [-bg * p + ag * q for p, q in zip(rt, ri)]
            for j in range(t + 1, nc):
                while mat[t][j]:
                    a, b = mat[t][t], mat[t][j]
                    if a and b % a == 0:
                        q = b // a
                        for row in mat:
                            row[j] -= q * row[t]
                    else:
                        g, x, y = xgcd(a, b)
                        ag, bg = a // g, b // g
                        for row in mat:
                            p, q_ = row[t], row[j]
                            row[t] = x * p + y * q_
                            row[j] = -bg * p + ag * q_
            if all(mat[i][t] == 0 for i in range(t + 1, nr)) and \
               all(mat[t][j] == 0 for j in range(t + 1, nc)):
                break
        t += 1
    divs = [abs(mat[i][i]) for i in range(t) if mat[i][i]]
    changed = True
    while changed:
        changed = False
        for i in range(len(divs) - 1):
            a, b = divs[i], divs[i + 1]
            if b % a:
                g = math.gcd(a, b)
                divs[i], divs[i + 1] = g, a // g * b
                changed = True
    return tuple(divs)
