"""Exact linear algebra: echelon forms, subspaces, eigenspaces, projectors.

Subspaces are kept in a canonical reduced column echelon form, so two
subspaces are equal exactly when their basis matrices are identical.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import (DecompositionError, DimensionError,
                     FactorialInversionError, FieldMismatchError,
                     NotDiagonalizableError, NotNilpotentError,
                     SingularMatrixError)
from .fields import Field, PrimeField, QQ, Scalar
from .matrix import Matrix


def _rref(rows: List[List[Scalar]]) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c]
        if inv != 1:
            rows[r] = [x / inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


class Subspace:
    """A subspace of F^n held as a canonical column-echelon basis."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int,
                 basis_columns: Sequence[Sequence[Scalar]],
                 pivots: Sequence[int], _trusted: bool = False):
        if not _trusted:
            raise TypeError("use Subspace.from_columns")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", tuple(tuple(c) for c in basis_columns))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_columns(cls, field: Field, ambient: int,
                     columns: Sequence[Sequence]) -> "Subspace":
        rows = [[field.coerce(x) for x in col] for col in columns]
        for row in rows:
            if len(row) != ambient:
                raise DimensionError("column length does not match ambient")
        if rows:
            rows, pivots = _rref(rows)
            rows = rows[:len(pivots)]
        else:
            pivots = []
        return cls(field, ambient, rows, pivots, _trusted=True)

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, [], [], _trusted=True)

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        cols = Matrix.identity(field, ambient).columns()
        return cls(field, ambient, cols, range(ambient), _trusted=True)

    @classmethod
    def column_space(cls, m: Matrix) -> "Subspace":
        return cls.from_columns(m.field, m.nrows, m.columns())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_columns(self) -> List[Tuple[Scalar, ...]]:
        return [tuple(col) for col in self.basis]

    def basis_matrix(self) -> Matrix:
        if not self.basis:
            raise DimensionError("zero subspace has no basis matrix")
        return Matrix.from_columns(self.field, self.basis)

    def _reduce(self, vec: Sequence[Scalar]) -> List[Scalar]:
        v = list(vec)
        for col, piv in zip(self.basis, self.pivots):
            f = v[piv]
            if f:
                v = [a - f * b for a, b in zip(v, col)]
        return v

    def contains(self, vec: Sequence) -> bool:
        v = [self.field.coerce(x) for x in vec]
        if len(v) != self.ambient:
            raise DimensionError("vector length does not match ambient")
        return not any(self._reduce(v))

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(other.contains(col) for col in self.basis)

    def _check_compatible(self, other: "Subspace"):
        if self.field != other.field:
            raise FieldMismatchError("subspaces over different fields")
        if self.ambient != other.ambient:
            raise DimensionError("subspaces in different ambient spaces")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check_compatible(b)
    return Subspace.from_columns(a.field, a.ambient,
                                 list(a.basis) + list(b.basis))


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked joint-membership system."""
    a._check_compatible(b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.field, a.ambient)
    stacked = Matrix.from_columns(
        a.field, list(a.basis) + [tuple(-x for x in col) for col in b.basis])
    _, ker = rank_kernel(stacked)
    members = []
    for col in ker.basis:
        coeffs = col[:a.dim]
        vec = [a.field.zero] * a.ambient
        for c, bcol in zip(coeffs, a.basis):
            if c:
                vec = [v + c * x for v, x in zip(vec, bcol)]
        members.append(vec)
    return Subspace.from_columns(a.field, a.ambient, members)


def rank_kernel(m: Matrix) -> Tuple[int, Subspace]:
    """Rank and kernel (as a canonical Subspace) of a matrix."""
    rows = [list(row) for row in m.rows]
    rref_rows, pivots = _rref(rows)
    rank = len(pivots)
    ncols = m.ncols
    free_cols = [c for c in range(ncols) if c not in set(pivots)]
    zero, one = m.field.zero, m.field.one
    kernel_cols = []
    for f in free_cols:
        vec = [zero] * ncols
        vec[f] = one
        for r, p in enumerate(pivots):
            if rref_rows[r][f]:
                vec[p] = -rref_rows[r][f]
        kernel_cols.append(vec)
    return rank, Subspace.from_columns(m.field, ncols, kernel_cols)


def rank(m: Matrix) -> int:
    return rank_kernel(m)[0]


def inverse(m: Matrix) -> Matrix:
    m._require_square()
    n = m.nrows
    ident = Matrix.identity(m.field, n)
    aug = [list(row) + list(irow) for row, irow in zip(m.rows, ident.rows)]
    rref_rows, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return Matrix(m.field, tuple(tuple(row[n:]) for row in rref_rows),
                  _trusted=True)


def solve_right(m: Matrix, vec: Sequence) -> Optional[Tuple[Scalar, ...]]:
    """One solution x of m x = vec, or None if inconsistent."""
    v = [m.field.coerce(x) for x in vec]
    if len(v) != m.nrows:
        raise DimensionError("vector length does not match")
    aug = [list(row) + [val] for row, val in zip(m.rows, v)]
    rref_rows, pivots = _rref(aug)
    if m.ncols in pivots:
        return None
    zero = m.field.zero
    x = [zero] * m.ncols
    for r, p in enumerate(pivots):
        x[p] = rref_rows[r][m.ncols]
    return tuple(x)


# -- characteristic polynomial and eigenvalues ---------------------------


def charpoly_rational(m: Matrix) -> List[Fraction]:
    """Coefficients [1, c1, ..., cn] of det(xI - M), rationals only."""
    if m.field != QQ:
        raise FieldMismatchError("charpoly_rational needs a rational matrix")
    m._require_square()
    n = m.nrows
    coeffs = [Fraction(1)]
    mk = m
    ident = Matrix.identity(QQ, n)
    for k in range(1, n + 1):
        ck = -mk.trace() / k
        coeffs.append(ck)
        if k < n:
            mk = m * (mk + ident.scale(ck))
    return coeffs


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(coeffs: Sequence[Fraction]) -> List[Fraction]:
    """All rational roots of a polynomial given by Fraction coefficients.

    coeffs[k] is the coefficient of x^(deg-k); coeffs[0] must be nonzero.
    """
    if not coeffs or not coeffs[0]:
        raise DimensionError("leading coefficient must be nonzero")
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coeffs]
    roots: List[Fraction] = []
    # strip x^k factor: zero is a root iff the trailing coefficient vanishes
    while ints and ints[-1] == 0:
        ints.pop()
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(ints) <= 1:
        return sorted(roots)
    lead, trail = ints[0], ints[-1]
    seen = set(roots)
    for p in _divisors(trail):
        for q in _divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = Fraction(0)
                for c in ints:
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class EigenData:
    """Eigenvalues in the base field, their eigenspaces, and the
    diagonalizable-over-the-field flag."""
    pairs: Tuple[Tuple[Scalar, Subspace], ...]
    diagonalizable: bool


def eigenvalues_in_field(m: Matrix) -> EigenData:
    """All eigenvalues of m lying in its base field, with eigenspaces.

    Over the rationals the candidates come from the rational-root search on
    the cleared characteristic polynomial; over GF(p) every field element
    is tested.  Results are sorted by the field's canonical scalar order.
    """
    m._require_square()
    n = m.nrows
    field = m.field
    if isinstance(field, PrimeField):
        candidates: List[Scalar] = list(field.elements())
    else:
        candidates = list(rational_roots(charpoly_rational(m)))
    ident = Matrix.identity(field, n)
    pairs = []
    total = 0
    for lam in sorted(candidates, key=field.sort_key):
        _, ker = rank_kernel(m - ident.scale(lam))
        if ker.dim:
            pairs.append((lam, ker))
            total += ker.dim
    return EigenData(tuple(pairs), total == n)


# -- idempotents, projectors, nilpotent exponentials ----------------------


def lagrange_idempotents(m: Matrix, thetas: Sequence[Scalar]) -> List[Matrix]:
    """Primitive idempotents of a diagonalizable matrix via the Lagrange
    product: E_i = prod_{j != i} (M - theta_j I) / (theta_i - theta_j).

    Raises NotDiagonalizableError when the defining facts fail, which
    happens exactly when m is not diagonalizable with eigenvalue list
    thetas.
    """
    m._require_square()
    field = m.field
    ths = [field.coerce(t) for t in thetas]
    if len(set(ths)) != len(ths):
        raise DimensionError("repeated eigenvalue in idempotent construction")
    n = m.nrows
    ident = Matrix.identity(field, n)
    shifted = [m - ident.scale(t) for t in ths]
    idems = []
    for i, ti in enumerate(ths):
        acc = ident
        for j, tj in enumerate(ths):
            if j == i:
                continue
            acc = acc * shifted[j].scale(field.one / (ti - tj))
        idems.append(acc)
    total = Matrix.zeros(field, n, n)
    recon = Matrix.zeros(field, n, n)
    for i, e in enumerate(idems):
        for j, f in enumerate(idems):
            prod = e * f
            expect = e if i == j else Matrix.zeros(field, n, n)
            if prod != expect:
                raise NotDiagonalizableError(
                    "idempotent orthogonality failed; matrix is not "
                    "diagonalizable with the given eigenvalues")
        total = total + e
        recon = recon + e.scale(ths[i])
    if total != ident or recon != m:
        raise NotDiagonalizableError(
            "idempotents do not resolve the identity; matrix is not "
            "diagonalizable with the given eigenvalues")
    return idems


def projectors_from_direct_sum(parts: Sequence[Subspace]) -> List[Matrix]:
    """Projectors onto each summand of a direct-sum decomposition.

    The concatenated basis must be square and invertible; otherwise the
    sum is not direct and DecompositionError is raised.
    """
    if not parts:
        raise DecompositionError("no summands given")
    field = parts[0].field
    ambient = parts[0].ambient
    cols = []
    spans = []
    for part in parts:
        part._check_compatible(parts[0])
        cols.extend(part.basis)
        spans.append(part.dim)
    if sum(spans) != ambient:
        raise DecompositionError(
            f"summand dimensions total {sum(spans)}, ambient is {ambient}")
    basis = Matrix.from_columns(field, cols)
    try:
        binv = inverse(basis)
    except SingularMatrixError as exc:
        raise DecompositionError("sum of subspaces is not direct") from exc
    projectors = []
    offset = 0
    for k in spans:
        block_cols = [basis.column(offset + i) for i in range(k)]
        block_rows = [binv.rows[offset + i] for i in range(k)]
        if k == 0:
            projectors.append(Matrix.zeros(field, ambient, ambient))
        else:
            left = Matrix.from_columns(field, block_cols)
            right = Matrix(field, tuple(block_rows), _trusted=True)
            projectors.append(left * right)
        offset += k
    return projectors


def nilpotency_index(m: Matrix) -> int:
    """Least k with m^k = 0; raises NotNilpotentError when none exists."""
    m._require_square()
    if m.is_zero():
        return 1
    power = m
    for k in range(2, m.nrows + 1):
        power = power * m
        if power.is_zero():
            return k
    raise NotNilpotentError("matrix is not nilpotent")


def nilpotent_exp_scaled(m: Matrix, c) -> Matrix:
    """exp(c*m) for nilpotent m, as the terminating exact power series.

    In characteristic p the factorials 1..(index-1) must be invertible;
    otherwise FactorialInversionError is raised.
    """
    index = nilpotency_index(m)
    field = m.field
    if field.char and field.char < index:
        raise FactorialInversionError(
            f"{field.char} divides a required factorial "
            f"(nilpotency index {index})")
    scaled = m.scale(field.coerce(c))
    acc = Matrix.identity(field, m.nrows)
    term = acc
    for k in range(1, index):
        term = (term * scaled).scale(field.one / field.from_int(k))
        acc = acc + term
    return acc
