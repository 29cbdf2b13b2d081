"""Exact sparse linear algebra over the rationals.

All coefficients are ``fractions.Fraction`` (arbitrary-precision, always
reduced).  Elimination is fraction-free Bareiss pivoting with a final
normalization pass; pivots are chosen deterministically (lowest column, then
lowest row), so every derived basis is reproducible bit for bit.  Subspaces
are kept in reduced column echelon form, which makes subspace equality a
syntactic comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def vec_is_zero(a: Vector) -> bool:
    return all(x == 0 for x in a)


class RationalMatrix:
    """Immutable sparse rational matrix.

    Entries are stored in a dict keyed by (row, col); zeros are never stored
    and iteration is row-major with ascending columns.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"entry ({i},{j}) outside {rows}x{cols}")
                f = Fraction(v)
                if f != 0:
                    clean[(i, j)] = f
        self.entries = dict(sorted(clean.items()))

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rows(cls, rows_of_values: Sequence[Sequence]) -> "RationalMatrix":
        rows = len(rows_of_values)
        cols = len(rows_of_values[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows_of_values):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                f = Fraction(v)
                if f != 0:
                    entries[(i, j)] = f
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], rows: int) -> "RationalMatrix":
        entries = {}
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                f = Fraction(v)
                if f != 0:
                    entries[(i, j)] = f
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    # -- access -------------------------------------------------------
    def entry(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), ZERO)

    def row(self, i: int) -> Vector:
        return tuple(self.entries.get((i, j), ZERO) for j in range(self.cols))

    def column(self, j: int) -> Vector:
        return tuple(self.entries.get((i, j), ZERO) for i in range(self.rows))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def dense(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not self.entries

    # -- arithmetic ---------------------------------------------------
    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row = {}
        for (i, k), v in self.entries.items():
            by_row.setdefault(i, []).append((k, v))
        other_rows = {}
        for (k, j), w in other.entries.items():
            other_rows.setdefault(k, []).append((j, w))
        entries = {}
        for i, terms in by_row.items():
            acc = {}
            for k, v in terms:
                for j, w in other_rows.get(k, ()):
                    acc[j] = acc.get(j, ZERO) + v * w
            for j, s in acc.items():
                if s != 0:
                    entries[(i, j)] = s
        return RationalMatrix(self.rows, other.cols, entries)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = [ZERO] * self.rows
        for (i, j), a in self.entries.items():
            x = v[j]
            if x != 0:
                out[i] += a * x
        return tuple(out)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows,
                              {(j, i): v for (i, j), v in self.entries.items()})

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        entries = dict(self.entries)
        for (i, j), v in other.entries.items():
            entries[(i, j + self.cols)] = v
        return RationalMatrix(self.rows, self.cols + other.cols, entries)

    def scaled(self, c) -> "RationalMatrix":
        c = Fraction(c)
        if c == 0:
            return RationalMatrix(self.rows, self.cols)
        return RationalMatrix(self.rows, self.cols,
                              {k: c * v for k, v in self.entries.items()})

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        entries = dict(self.entries)
        for k, v in other.entries.items():
            s = entries.get(k, ZERO) + v
            if s == 0:
                entries.pop(k, None)
            else:
                entries[k] = s
        return RationalMatrix(self.rows, self.cols, entries)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scaled(-1)

    def __neg__(self) -> "RationalMatrix":
        return self.scaled(-1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries.items())))

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"

    def rank(self) -> int:
        return len(rref(self)[0])


def _forward_bareiss(work, rows, cols, pivot_cols):
    """Fraction-free forward elimination on ``work`` (list of row lists).

    Only the first ``cols`` columns drive pivot selection; any extra columns
    (augmentations) just ride along.  Returns nothing; mutates ``work`` and
    appends pivot column indices to ``pivot_cols``.
    """
    width = len(work[0]) if rows else 0
    prev = ONE
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        pivot_row = None
        for i in range(r, rows):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            work[r], work[pivot_row] = work[pivot_row], work[r]
        pivot = work[r][c]
        for i in range(r + 1, rows):
            fi = work[i][c]
            if fi == 0:
                # Pure row-scaling step; skipping it never changes the RREF.
                continue
            row_i = work[i]
            row_r = work[r]
            for j in range(width):
                row_i[j] = (pivot * row_i[j] - fi * row_r[j]) / prev
        prev = pivot
        pivot_cols.append(c)
        r += 1


def _normalize_rref(work, cols, pivot_cols):
    """Scale pivots to 1 and clear above them (the final normalization pass)."""
    width = len(work[0]) if work else 0
    for idx in range(len(pivot_cols) - 1, -1, -1):
        c = pivot_cols[idx]
        pivot = work[idx][c]
        if pivot != 1:
            row = work[idx]
            for j in range(width):
                if row[j] != 0:
                    row[j] = row[j] / pivot
        for i in range(idx):
            f = work[i][c]
            if f != 0:
                row_i = work[i]
                row_p = work[idx]
                for j in range(width):
                    if row_p[j] != 0:
                        row_i[j] = row_i[j] - f * row_p[j]


def rref(m: RationalMatrix, transform: bool = False):
    """Unique reduced row echelon form of ``m``.

    Returns (pivot_columns, reduced) or, with ``transform=True``,
    (pivot_columns, reduced, T) where T is invertible and T @ m == reduced.
    """
    rows, cols = m.rows, m.cols
    work = [list(m.row(i)) for i in range(rows)]
    if transform:
        for i in range(rows):
            work[i].extend(ONE if j == i else ZERO for j in range(rows))
    pivot_cols: list[int] = []
    if rows and cols:
        _forward_bareiss(work, rows, cols, pivot_cols)
    _normalize_rref(work, cols, pivot_cols)
    reduced = RationalMatrix.from_rows([row[:cols] for row in work]) if rows else RationalMatrix(0, cols)
    pivots = tuple(pivot_cols)
    if not transform:
        return pivots, reduced
    t = RationalMatrix.from_rows([row[cols:] for row in work]) if rows else RationalMatrix(0, 0)
    return pivots, reduced, t


class SubspaceBasis:
    """Canonical basis of a subspace of Q^ambient_dim.

    Vectors are the columns of the reduced column echelon form with pivot
    rows strictly increasing, so two SubspaceBasis objects describe the same
    subspace iff they compare equal.
    """

    __slots__ = ("ambient_dim", "vectors", "pivot_rows")

    def __init__(self, ambient_dim: int, vectors, pivot_rows):
        self.ambient_dim = ambient_dim
        self.vectors = tuple(tuple(v) for v in vectors)
        self.pivot_rows = tuple(pivot_rows)

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Sequence[Vector],
                     require_independent: bool = True) -> "SubspaceBasis":
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector does not live in the ambient space")
        if not vectors:
            return cls(ambient_dim, (), ())
        pivots, reduced = rref(RationalMatrix.from_rows(vectors))
        canon = [reduced.row(i) for i in range(len(pivots))]
        if require_independent and len(pivots) != len(vectors):
            raise ValueError("vectors are linearly dependent")
        return cls(ambient_dim, canon, pivots)

    @property
    def count(self) -> int:
        return len(self.vectors)

    def matrix(self) -> RationalMatrix:
        return RationalMatrix.from_columns(self.vectors, self.ambient_dim)

    def reduce(self, v: Vector) -> Vector:
        """Canonical coset representative of v modulo this subspace."""
        out = list(v)
        for w, p in zip(self.vectors, self.pivot_rows):
            c = out[p]
            if c != 0:
                for i, wi in enumerate(w):
                    if wi != 0:
                        out[i] -= c * wi
        return tuple(out)

    def contains(self, v: Vector) -> bool:
        return vec_is_zero(self.reduce(v))

    def __eq__(self, other):
        return (isinstance(other, SubspaceBasis)
                and self.ambient_dim == other.ambient_dim
                and self.vectors == other.vectors)

    def __hash__(self):
        return hash((self.ambient_dim, self.vectors))

    def __repr__(self):
        return f"SubspaceBasis(dim {self.count} in Q^{self.ambient_dim})"


def kernel_basis(m: RationalMatrix) -> SubspaceBasis:
    """Canonical basis of the kernel (null space) of m."""
    pivots, reduced = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    vectors = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            coeff = reduced.entry(r, f)
            if coeff != 0:
                v[p] = -coeff
        vectors.append(tuple(v))
    return SubspaceBasis.from_vectors(m.cols, vectors)


def image_basis(m: RationalMatrix) -> SubspaceBasis:
    """Canonical basis of the column space of m."""
    return SubspaceBasis.from_vectors(m.rows, m.columns(), require_independent=False)


def complement_basis(sub: SubspaceBasis, strategy: str = "lex") -> SubspaceBasis:
    """Standard-basis complement of ``sub``: sub ⊕ complement = ambient.

    ``lex`` takes standard basis vectors at the non-pivot rows of the
    canonical echelon form (smallest indices first); ``reverse-lex`` does the
    analogous scan with pivots chosen from the largest row index downward.
    """
    n = sub.ambient_dim
    if strategy == "lex":
        pivot_rows = set(sub.pivot_rows)
    elif strategy == "reverse-lex":
        flipped = [tuple(reversed(v)) for v in sub.vectors]
        flipped_basis = SubspaceBasis.from_vectors(n, flipped)
        pivot_rows = {n - 1 - p for p in flipped_basis.pivot_rows}
    else:
        raise ValueError(f"unknown complement strategy {strategy!r}")
    vectors = []
    for i in range(n):
        if i not in pivot_rows:
            v = [ZERO] * n
            v[i] = ONE
            vectors.append(tuple(v))
    return SubspaceBasis.from_vectors(n, vectors)


class Solver:
    """Reusable linear solver for a fixed coefficient matrix.

    Factors once via rref-with-transform; each ``solve`` is then a cheap
    substitution.  Returns a particular solution with free variables set to
    zero, or None when the system is inconsistent.
    """

    __slots__ = ("matrix", "pivots", "reduced", "transform", "rank")

    def __init__(self, m: RationalMatrix):
        self.matrix = m
        self.pivots, self.reduced, self.transform = rref(m, transform=True)
        self.rank = len(self.pivots)

    def solve(self, rhs: Vector) -> Optional[Vector]:
        if len(rhs) != self.matrix.rows:
            raise ValueError("rhs length mismatch")
        y = self.transform.apply(rhs)
        for i in range(self.rank, self.matrix.rows):
            if y[i] != 0:
                return None
        x = [ZERO] * self.matrix.cols
        for r, p in enumerate(self.pivots):
            x[p] = y[r]
        return tuple(x)

    def solve_matrix(self, b: RationalMatrix) -> Optional[RationalMatrix]:
        if b.rows != self.matrix.rows:
            raise ValueError("shape mismatch")
        cols = []
        for j in range(b.cols):
            x = self.solve(b.column(j))
            if x is None:
                return None
            cols.append(x)
        return RationalMatrix.from_columns(cols, self.matrix.cols)


def solve(m: RationalMatrix, rhs: Vector) -> Optional[Vector]:
    """Some x with m @ x = rhs, or None when no solution exists."""
    return Solver(m).solve(rhs)
