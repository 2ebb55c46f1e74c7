"""Exact integer linear algebra on dense matrices.

Everything here works on Python ints, so intermediate entries may grow
without overflow. Matrices are immutable; the algorithms copy into plain
lists of lists, mutate those, and wrap the result again.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class IntMatrix:
    """Dense, immutable matrix of arbitrary-precision integers (row-major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(x) for x in entries)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, (int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls(n, n, (diag[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, m)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def diag(self) -> tuple[int, ...]:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum(a * b for a, b in zip(r, c)))
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), vec)) for i in range(self.rows))

    def __mul__(self, scalar: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (scalar * x for x in self.entries))

    __rmul__ = __mul__

    def __neg__(self) -> "IntMatrix":
        return self * -1

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"


def _as_matrix(A) -> IntMatrix:
    if isinstance(A, IntMatrix):
        return A
    return IntMatrix.from_rows(A)


def determinant(A) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    A = _as_matrix(A)
    if not A.is_square():
        raise ValueError(f"determinant of non-square {A.rows}x{A.cols} matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def _round_div(a: int, b: int) -> int:
    # nearest-integer quotient keeps remainders small
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1 if (r > 0) == (b > 0) else -1
    return q


def smith_normal_form(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V) with U @ A @ V == S.

    U and V are unimodular, S is diagonal with nonnegative entries
    s1 | s2 | ... and the zero entries trail. The pivot is always the
    smallest nonzero entry (in absolute value) of the remaining block,
    ties broken by lowest (row, column), so U and V are reproducible.
    """
    A = _as_matrix(A)
    m, n = A.rows, A.cols
    S = A.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst -= q * row src
        if q:
            S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in S:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = S[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        clean = True
        p = S[t][t]
        for i in range(t + 1, m):
            if S[i][t]:
                add_row(i, t, _round_div(S[i][t], p))
                if S[i][t]:
                    clean = False
        for j in range(t + 1, n):
            if S[t][j]:
                add_col(j, t, _round_div(S[t][j], p))
                if S[t][j]:
                    clean = False
        if not clean:
            continue

        # pivot must divide the remaining block; otherwise fold an offending row in
        bad_row = None
        for i in range(t + 1, m):
            if any(S[i][j] % p for j in range(t + 1, n)):
                bad_row = i
                break
        if bad_row is not None:
            add_row(t, bad_row, -1)
            continue

        if p < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    return (IntMatrix.from_rows(U, m), IntMatrix.from_rows(S, n), IntMatrix.from_rows(V, n))


def elementary_divisors(A) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form, in divisibility order."""
    _, S, _ = smith_normal_form(A)
    return tuple(x for x in S.diag() if x)


def rank(A) -> int:
    return len(elementary_divisors(A))


def hermite_normal_form(B) -> IntMatrix:
    """Canonical basis of the row span of B.

    Rows are in echelon form with positive pivots, and every entry above a
    pivot lies in [0, pivot). Zero rows are dropped. Two integer matrices
    span the same sublattice iff their HNFs are equal.
    """
    B = _as_matrix(B)
    rows = B.tolist()
    k, n = B.rows, B.cols
    r = 0
    for c in range(n):
        if r == k:
            break
        for i in range(r + 1, k):
            while rows[i][c]:
                if rows[r][c] == 0 or abs(rows[i][c]) < abs(rows[r][c]):
                    rows[r], rows[i] = rows[i], rows[r]
                    continue
                q = rows[i][c] // rows[r][c]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        if rows[r][c] == 0:
            continue
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        p = rows[r][c]
        for i in range(r):
            q = rows[i][c] // p
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return IntMatrix.from_rows(rows[:r], n)


def kernel_basis(A) -> IntMatrix:
    """Basis (as rows, in HNF) of the integer kernel {x : A x = 0}.

    The result is saturated: V is unimodular, so the trailing columns of V
    span exactly the integer solutions.
    """
    A = _as_matrix(A)
    U, S, V = smith_normal_form(A)
    r = sum(1 for x in S.diag() if x)
    n = A.cols
    if r == n:
        return IntMatrix.zeros(0, n)
    basis = [[V[i, j] for i in range(n)] for j in range(r, n)]
    return hermite_normal_form(IntMatrix.from_rows(basis, n))


def saturate(B) -> IntMatrix:
    """Primitive closure of the row span of B, returned in HNF.

    Computed as the kernel of the kernel: the integer vectors orthogonal
    (under the dot product) to every integer vector orthogonal to B.
    """
    B = _as_matrix(B)
    if rank(B) != B.rows:
        raise ValueError("rows are linearly dependent")
    K = kernel_basis(B)
    return kernel_basis(K) if K.rows else IntMatrix.identity(B.cols)


def is_unimodular(M: IntMatrix) -> bool:
    return M.is_square() and abs(determinant(M)) == 1
