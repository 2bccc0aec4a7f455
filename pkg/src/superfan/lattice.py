"""Exact integer and rational lattice algebra.

Vectors are plain tuples of ``int`` (lattice points) or ``Fraction``
(rational points).  Matrices are tuples of row tuples.  Every basis this
module hands back is in row Hermite normal form, so two bases of the same
lattice compare equal with ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

IntVector = tuple  # tuple[int, ...]
Matrix = tuple  # tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    pass


def as_vector(v) -> tuple:
    return tuple(int(x) for x in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vscale(k, v) -> tuple:
    return tuple(k * a for a in v)


def zero(n: int) -> tuple:
    return (0,) * n


def unit_vector(n: int, i: int) -> tuple:
    return tuple(1 if j == i else 0 for j in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def transpose(rows, ncols: int | None = None) -> Matrix:
    rows = [tuple(r) for r in rows]
    if not rows:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*rows))


def matmul(a, b, ncols: int) -> Matrix:
    """Product of an ``m x k`` and a ``k x ncols`` row-major matrix."""
    return tuple(
        tuple(sum(row[t] * b[t][j] for t in range(len(row))) for j in range(ncols))
        for row in a
    )


def matvec(a, v) -> tuple:
    return tuple(dot(row, v) for row in a)


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v) -> tuple:
    """Primitive integer vector on the ray through a rational vector."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = content(ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# Hermite normal form

def hnf_with_transform(rows, ncols: int):
    """Row Hermite normal form.

    Returns ``(H, U, pivots)`` with ``U`` unimodular, ``U @ A = H`` where the
    first ``len(pivots)`` rows of ``H`` are the nonzero echelon rows (positive
    pivots, entries above a pivot reduced into ``[0, pivot)``) and the rest
    are zero.  The trailing rows of ``U`` therefore span the left kernel.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    for r in a:
        if len(r) != ncols:
            raise LatticeError("ragged matrix")
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for j in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][j] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(a[i][j]))
            if best != r:
                a[r], a[best] = a[best], a[r]
                u[r], u[best] = u[best], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][j]:
                    q = a[i][j] // a[r][j]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][j]:
                        done = False
            if done:
                break
        if a[r][j] == 0:
            continue
        if a[r][j] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        p = a[r][j]
        for i in range(r):
            q = a[i][j] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        pivots.append(j)
        r += 1
    return [tuple(x) for x in a], [tuple(x) for x in u], pivots


def hnf(rows, ncols: int | None = None) -> Matrix:
    """Nonzero rows of the row HNF; a canonical basis of the row lattice."""
    rows = [tuple(r) for r in rows]
    if ncols is None:
        if not rows:
            return ()
        ncols = len(rows[0])
    h, _, piv = hnf_with_transform(rows, ncols)
    return tuple(h[: len(piv)])


def left_kernel(rows, ncols: int) -> Matrix:
    """Basis (HNF) of ``{y : y @ A = 0}`` for an ``m x ncols`` matrix ``A``."""
    rows = list(rows)
    m = len(rows)
    _, u, piv = hnf_with_transform(rows, ncols)
    return hnf(u[len(piv):], m)


def kernel_saturated(matrix, ncols: int) -> Matrix:
    """HNF basis of ``{v in Z^ncols : matrix @ v = 0}``.

    The kernel of an integer matrix is automatically saturated; the result is
    a basis of that lattice, not merely of a finite-index sublattice.
    """
    matrix = [tuple(r) for r in matrix]
    if not matrix:
        return identity(ncols)
    return left_kernel(transpose(matrix), len(matrix))


def rank_int(rows, ncols: int) -> int:
    return len(hnf(rows, ncols)) if rows else 0


def saturate(vectors, ncols: int | None = None) -> Matrix:
    """Basis of the smallest saturated sublattice containing ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    if ncols is None:
        if not vectors:
            return ()
        ncols = len(vectors[0])
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return ()
    perp = kernel_saturated(vectors, ncols)
    if not perp:
        return identity(ncols)
    return kernel_saturated(perp, ncols)


def is_saturated(vectors, ncols: int) -> bool:
    return hnf(vectors, ncols) == saturate(vectors, ncols) if vectors else True


def quotient_lattice(ambient_rank: int, basis) -> tuple:
    """Quotient of ``Z^ambient_rank`` by a saturated sublattice.

    Returns ``(rank, projection)`` where ``projection`` is a ``rank x n``
    integer matrix that is surjective and kills exactly the sublattice.
    """
    basis = [tuple(b) for b in basis if any(b)]
    if basis and not is_saturated(basis, ambient_rank):
        raise LatticeError("sublattice is not saturated; the quotient has torsion")
    if not basis:
        return ambient_rank, identity(ambient_rank)
    proj = kernel_saturated(basis, ambient_rank)
    return len(proj), proj


def determinant(rows) -> Fraction:
    """Exact determinant by fraction-based elimination."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for j in range(n):
        p = next((i for i in range(j, n) if a[i][j] != 0), None)
        if p is None:
            return Fraction(0)
        if p != j:
            a[j], a[p] = a[p], a[j]
            det = -det
        det *= a[j][j]
        for i in range(j + 1, n):
            f = a[i][j] / a[j][j]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[j])]
    return det


def is_unimodular(rows) -> bool:
    rows = [tuple(r) for r in rows]
    if any(len(r) != len(rows) for r in rows):
        return False
    return abs(determinant(rows)) == 1 if rows else True


def elementary_divisors(rows, ncols: int) -> list:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    out = []
    t = 0
    while t < min(m, ncols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, ncols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            changed = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    changed = True
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    changed = True
            if not changed:
                # the pivot must also divide every remaining entry
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, ncols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, ncols)
                  if a[i][j] and (i == t or j == t)]
            _, pi, pj = min(nz)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out


def solve_integer(matrix, rhs, ncols: int):
    """Some integer ``x`` with ``matrix @ x = rhs``, or ``None``."""
    matrix = [tuple(r) for r in matrix]
    rhs = tuple(rhs)
    if not matrix:
        return zero(ncols)
    # U @ A^T = [H; 0]  ==>  A @ U^T = [H^T | 0]
    h, u, piv = hnf_with_transform(transpose(matrix, ncols), len(matrix))
    z = []
    for i, col in enumerate(piv):
        s = rhs[col] - sum(z[j] * h[j][col] for j in range(i))
        if s % h[i][col]:
            return None
        z.append(s // h[i][col])
    x = [0] * ncols
    for j, zj in enumerate(z):
        if zj:
            x = [a + zj * b for a, b in zip(x, u[j])]
    x = tuple(x)
    if matvec(matrix, x) != rhs:
        return None
    return x


def complete_to_basis(basis, ncols: int) -> Matrix:
    """Extend a basis of a saturated sublattice to a unimodular matrix.

    The returned rows start with the given basis vectors unchanged.
    """
    basis = [tuple(b) for b in basis]
    if not basis:
        return identity(ncols)
    if len(hnf(basis, ncols)) != len(basis):
        raise LatticeError("basis vectors are dependent")
    if not is_saturated(basis, ncols):
        raise LatticeError("cannot complete a non-saturated basis")
    # U @ B^T = [H; 0] gives B @ U^T = [H^T | 0]; the trailing rows of
    # U^{-T} then complete the rows of B to a basis of Z^n.
    _, u, _ = hnf_with_transform(transpose(basis), len(basis))
    inv_t = transpose(inverse(u))
    rows = tuple(basis) + tuple(tuple(int(x) for x in r) for r in inv_t[len(basis):])
    if not is_unimodular(rows):
        raise LatticeError("basis completion failed")
    return rows


def inverse(rows) -> tuple:
    """Rational inverse of a square matrix."""
    n = len(rows)
    aug = [tuple(r) + unit_vector(n, i) for i, r in enumerate(rows)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise LatticeError("matrix is singular")
    return tuple(tuple(r[n:]) for r in red)


# ---------------------------------------------------------------------------
# rational linear algebra

def rref(rows, ncols: int):
    """Reduced row echelon form over Q; returns ``(nonzero_rows, pivots)``."""
    a = [[Fraction(x) for x in r] for r in rows]
    piv = []
    r = 0
    for j in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][j] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][j]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv.append(j)
        r += 1
    return [tuple(x) for x in a[:r]], piv


def rank(rows, ncols: int) -> int:
    """Rank over Q, by fraction-free elimination on scaled integer rows."""
    a = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        row = [int(x * den) for x in r]
        if any(row):
            a.append(row)
    k = 0
    for j in range(ncols):
        p = next((i for i in range(k, len(a)) if a[i][j]), None)
        if p is None:
            continue
        a[k], a[p] = a[p], a[k]
        top = a[k]
        for i in range(k + 1, len(a)):
            if a[i][j]:
                f, g = top[j], a[i][j]
                row = [f * x - g * y for x, y in zip(a[i], top)]
                d = 0
                for x in row:
                    d = gcd(d, x)
                a[i] = [x // d for x in row] if d > 1 else row
        k += 1
        if k == len(a):
            break
    return k


def nullspace(rows, ncols: int) -> list:
    """Rational basis of ``{x : rows @ x = 0}``."""
    red, piv = rref(rows, ncols) if rows else ([], [])
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, piv):
            x[p] = -r[f]
        basis.append(tuple(x))
    return basis


def solve_rational(matrix, rhs, ncols: int):
    """Some rational ``x`` with ``matrix @ x = rhs``, or ``None``."""
    aug = [tuple(r) + (b,) for r, b in zip(matrix, rhs)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for r, p in zip(red, piv):
        x[p] = r[ncols]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A rational linear subspace, stored by its reduced echelon basis."""

    ambient_rank: int
    basis: tuple = ()

    @classmethod
    def span(cls, vectors, ambient_rank: int) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        red = rref(vectors, ambient_rank)[0] if vectors else []
        return cls(ambient_rank, tuple(red))

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls.span(identity(n), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        if len(v) != self.ambient_rank:
            raise LatticeError("rank mismatch")
        return rank(list(self.basis) + [tuple(v)], self.ambient_rank) == self.dim

    def integer_basis(self) -> Matrix:
        """HNF basis of the lattice points of the subspace."""
        return saturate([primitive(b) for b in self.basis], self.ambient_rank)


# ---------------------------------------------------------------------------
# the parameter c

@dataclass(frozen=True)
class CParam:
    """A point of ``N`` tensored with a field of formal transcendentals.

    ``components`` pairs each symbol name with a rational vector; the point is
    ``sum(vector * symbol)``.  Symbols are treated as linearly independent
    over the rationals, so a pairing vanishes only if every coordinate does.
    Zero components are dropped, which makes equality structural.
    """

    rank: int
    components: tuple = ()

    def __init__(self, rank: int, components: Mapping | Iterable = ()):
        items = components.items() if isinstance(components, Mapping) else components
        clean = {}
        for name, vec in items:
            vec = tuple(Fraction(x) for x in vec)
            if len(vec) != rank:
                raise LatticeError(f"component {name!r} has length {len(vec)}, expected {rank}")
            if name in clean:
                raise LatticeError(f"duplicate symbol {name!r}")
            clean[str(name)] = vec
        comps = tuple(sorted((k, v) for k, v in clean.items() if any(v)))
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, rank: int) -> "CParam":
        return cls(rank, {})

    @classmethod
    def single(cls, vector, symbol: str = "l1") -> "CParam":
        return cls(len(vector), {symbol: vector})

    @property
    def symbols(self) -> tuple:
        return tuple(k for k, _ in self.components)

    @property
    def vectors(self) -> tuple:
        return tuple(v for _, v in self.components)

    def vector(self, symbol: str) -> tuple:
        for k, v in self.components:
            if k == symbol:
                return v
        return (Fraction(0),) * self.rank

    def is_zero(self) -> bool:
        return not self.components

    def pair(self, m) -> tuple:
        return pair(m, self)

    def scaled(self, q) -> "CParam":
        q = Fraction(q)
        return CParam(self.rank, {k: tuple(q * x for x in v) for k, v in self.components})

    def mapped(self, matrix, target_rank: int) -> "CParam":
        """Push forward along an integer matrix ``target_rank x rank``."""
        return CParam(target_rank, {k: matvec(matrix, v) for k, v in self.components}) \
            if self.rank else CParam(target_rank, {})

    def concat(self, other: "CParam") -> "CParam":
        """Direct-sum parameter on ``N x N'``, unifying symbols by name."""
        names = sorted(set(self.symbols) | set(other.symbols))
        return CParam(self.rank + other.rank,
                      {k: self.vector(k) + other.vector(k) for k in names})

    def coordinates(self, basis):
        """Express every component in a basis of a sublattice, or ``None``."""
        basis = [tuple(b) for b in basis]
        cols = transpose(basis, len(basis)) if basis else tuple(() for _ in range(self.rank))
        out = {}
        for k, v in self.components:
            x = solve_rational(cols, v, len(basis))
            if x is None:
                return None
            out[k] = x
        return CParam(len(basis), out)

    def coordinate_matrix(self) -> list:
        """``rank x k`` rational matrix whose columns are the components."""
        return [tuple(v[i] for v in self.vectors) for i in range(self.rank)]


def pair(m, c: CParam) -> tuple:
    """Pairing of a character with ``c``: one rational per symbol."""
    if len(m) != c.rank:
        raise LatticeError(f"rank mismatch: {len(m)} vs {c.rank}")
    return tuple(dot(m, v) for v in c.vectors)


def pairs_to_zero(m, c: CParam) -> bool:
    return not any(pair(m, c))
