"""Exact integer and rational linear algebra.

Smith normal form over the integers, cokernel structure of integer
matrices, and validity/order questions for rational homomorphisms on
finitely presented abelian groups.  Everything here is exact: matrix
entries are arbitrary-precision Python ints and all rational values are
``fractions.Fraction``.  No floating point enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import ValidationError


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValidationError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValidationError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if not all(isinstance(e, int) for e in self.entries):
            raise ValidationError("matrix entries must be integers")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        data = [list(r) for r in rows]
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValidationError("ragged rows")
        return cls(len(data), ncols, tuple(e for r in data for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValidationError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other[k, j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SmithForm:
    """Decomposition U @ A @ V = S with U, V unimodular and S diagonal.

    The diagonal of S is nonnegative and each entry divides the next;
    zeros come last.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return self.S.diagonal()


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """Smith normal form of an integer matrix.

    Pivot choice is the smallest-magnitude nonzero entry of the working
    submatrix, ties broken by lowest (row, col), so the reduction is
    deterministic and keeps intermediate entries small.
    """
    m, n = A.rows, A.cols
    s = A.to_lists()
    u = IntMatrix.identity(m).to_lists()
    v = IntMatrix.identity(n).to_lists()

    def swap_rows(a, b):
        s[a], s[b] = s[b], s[a]
        u[a], u[b] = u[b], u[a]

    def swap_cols(a, b):
        for r in s:
            r[a], r[b] = r[b], r[a]
        for r in v:
            r[a], r[b] = r[b], r[a]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for r in s:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def negate_row(a):
        s[a] = [-x for x in s[a]]
        u[a] = [-x for x in u[a]]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                val = s[i][j]
                if val != 0 and (pivot is None or abs(val) < abs(s[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        if s[t][t] < 0:
            negate_row(t)
        p = s[t][t]

        # Euclidean sweep: leftover remainders are smaller than the pivot
        # and force a re-selection.
        dirty = False
        for i in range(t + 1, m):
            q = s[i][t] // p
            if q:
                add_row(t, i, -q)
            if s[i][t]:
                dirty = True
        for j in range(t + 1, n):
            q = s[t][j] // p
            if q:
                add_col(t, j, -q)
            if s[t][j]:
                dirty = True
        if dirty:
            continue

        # Divisibility: drag a non-divisible entry into row t and restart.
        stray = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if s[i][j] % p:
                    stray = i
                    break
            if stray is not None:
                break
        if stray is not None:
            add_row(stray, t, 1)
            continue
        t += 1

    return SmithForm(
        U=IntMatrix.from_rows(u) if m else IntMatrix(0, 0, ()),
        S=IntMatrix.from_rows(s) if m else IntMatrix(0, n, ()),
        V=IntMatrix.from_rows(v) if n else IntMatrix(0, 0, ()),
    )


def rank(A: IntMatrix) -> int:
    return sum(1 for d in smith_normal_form(A).diagonal() if d != 0)


def cokernel_structure(A: IntMatrix) -> tuple[int, list[int]]:
    """Structure of Z^cols modulo the row space of A.

    Returns (free_rank, torsion) where torsion lists the diagonal entries
    greater than one, each dividing the next.
    """
    diag = smith_normal_form(A).diagonal()
    nonzero = [d for d in diag if d != 0]
    return A.cols - len(nonzero), [d for d in nonzero if d > 1]


def nullspace_basis(A: IntMatrix) -> list[tuple[int, ...]]:
    """Integer basis of the rational kernel {v : A v = 0}.

    With U A V = S the kernel is spanned by the columns of V past the
    rank, which are primitive integer vectors.
    """
    snf = smith_normal_form(A)
    r = sum(1 for d in snf.diagonal() if d != 0)
    return [
        tuple(snf.V[i, j] for i in range(A.cols)) for j in range(r, A.cols)
    ]


@dataclass(frozen=True)
class AbelianPresentation:
    """Finitely generated abelian group: named generators, relation rows."""

    generators: tuple[str, ...]
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.cols != len(self.generators):
            raise ValidationError(
                f"relation matrix has {self.relations.cols} columns for "
                f"{len(self.generators)} generators"
            )

    def generator_index(self, name: str) -> int:
        return self.generators.index(name)

    def cokernel(self) -> tuple[int, list[int]]:
        return cokernel_structure(self.relations)


def _check_vector(P: AbelianPresentation, values: Sequence[Fraction]) -> list[Fraction]:
    vec = [Fraction(x) for x in values]
    if len(vec) != len(P.generators):
        raise ValidationError(
            f"class has {len(vec)} values for {len(P.generators)} generators"
        )
    return vec


def violated_relations(
    P: AbelianPresentation, values: Sequence[Fraction]
) -> list[tuple[int, Fraction]]:
    """Indices and residuals of the relations a candidate class fails."""
    vec = _check_vector(P, values)
    bad = []
    for i in range(P.relations.rows):
        resid = sum((c * x for c, x in zip(P.relations.row(i), vec)), Fraction(0))
        if resid != 0:
            bad.append((i, resid))
    return bad


def is_valid_class(P: AbelianPresentation, values: Sequence[Fraction]) -> bool:
    """True iff the rational vector kills every relation exactly."""
    return not violated_relations(P, values)


def class_image_order(P: AbelianPresentation, g: int) -> int | None:
    """Order of the image of generator g in the presented group.

    Returns None for infinite order.  Uses the change of basis from the
    Smith form of the transposed relation matrix: in those coordinates the
    group splits as a direct sum of cyclic factors, and the order is the
    lcm of the per-factor orders.
    """
    if not (0 <= g < len(P.generators)):
        raise ValidationError(f"no generator with index {g}")
    B = P.relations.transpose()  # columns span the relation lattice
    snf = smith_normal_form(B)
    diag = snf.diagonal()
    n = B.rows
    order = 1
    for i in range(n):
        w_i = snf.U[i, g]
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if w_i != 0:
                return None
        elif d > 1:
            order = lcm(order, d // gcd(d, w_i))
    return order
