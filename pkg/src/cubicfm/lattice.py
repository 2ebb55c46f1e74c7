"""Integral lattices given by Gram matrices, and their discriminant forms.

Isometry between lattices is only ever decided at the level of invariants
(rank, signature, parity, discriminant form); nothing here attempts a full
isometry test.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .intmat import (
    IntMatrix,
    determinant,
    elementary_divisors,
    kernel_basis,
    rank as matrix_rank,
    smith_normal_form,
)

FORMS_AGREE_MAX_ORDER = 10**4


class DegenerateLatticeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Lattice:
    """A nondegenerate symmetric integral bilinear form on Z^rank."""

    gram: IntMatrix
    name: str | None = None

    def __post_init__(self):
        if not isinstance(self.gram, IntMatrix):
            object.__setattr__(self, "gram", IntMatrix.from_rows(self.gram))
        if not self.gram.is_symmetric():
            raise ValueError("Gram matrix must be square and symmetric")
        if self.gram.rows == 0:
            raise ValueError("rank-0 lattices are not supported")
        if self.det == 0:
            raise DegenerateLatticeError("Gram matrix is degenerate (det = 0)")

    @property
    def rank(self) -> int:
        return self.gram.rows

    @cached_property
    def det(self) -> int:
        return determinant(self.gram)

    def inner(self, x: Sequence, y: Sequence):
        G = self.gram
        n = self.rank
        return sum(x[i] * G[i, j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])

    def norm(self, x: Sequence):
        return self.inner(x, x)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        label = self.name or "Lattice"
        return f"<{label} rank={self.rank} det={self.det}>"


@dataclass(frozen=True)
class Embedding:
    """Linear map Z^source.rank -> Z^target.rank; column j is the image of basis vector j."""

    source: Lattice
    target: Lattice
    matrix: IntMatrix

    def __post_init__(self):
        M = self.matrix
        if M.shape != (self.target.rank, self.source.rank):
            raise ValueError("embedding matrix has the wrong shape")
        if M.T @ self.target.gram @ M != self.source.gram:
            raise ValueError("matrix does not carry the target form to the source form")

    def image(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(x)

    def is_primitive(self) -> bool:
        return all(s == 1 for s in elementary_divisors(self.matrix))


# --- constructors -----------------------------------------------------------

_E8_EDGES = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]


def _e8_cartan() -> IntMatrix:
    C = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        C[i][j] = C[j][i] = -1
    return IntMatrix.from_rows(C)


_U = IntMatrix.from_rows([[0, 1], [1, 0]])
_A2 = IntMatrix.from_rows([[2, -1], [-1, 2]])


def _block(*blocks: IntMatrix) -> IntMatrix:
    return IntMatrix.block_diagonal(blocks)


def _build(name: str) -> IntMatrix:
    E8m = -_e8_cartan()
    if name == "U":
        return _U
    if name == "E8minus":
        return E8m
    if name == "A2":
        return _A2
    if name == "A2minus":
        return -_A2
    if name == "L":
        return IntMatrix.diagonal([1, 1] + [-1] * 21)
    if name == "L0":
        return _block(-_A2, _U, _U, E8m, E8m)
    if name == "LambdaK3":
        return _block(E8m, E8m, _U, _U, _U)
    if name == "LambdaMukai":
        return _block(E8m, E8m, _U, _U, _U, _U)
    raise ValueError(f"unknown lattice name {name!r}; expected one of {', '.join(LATTICE_NAMES)}")


LATTICE_NAMES = ("U", "E8minus", "A2", "A2minus", "L", "L0", "LambdaK3", "LambdaMukai")


def standard(name: str) -> Lattice:
    """Named lattice, with blocks in the usual order (A2(-1) first in L0)."""
    return Lattice(_build(name), name=name)


def diagonal_lattice(*entries: int) -> Lattice:
    return Lattice(IntMatrix.diagonal(list(entries)))


# Coordinates in L0 = A2(-1) + U + U + E8(-1) + E8(-1).
L0_MU1, L0_MU2, L0_E1, L0_F1, L0_E2, L0_F2 = range(6)

# Coordinates of the first two hyperbolic planes in the Mukai lattice E8(-1)^2 + U^4.
MUKAI_E1, MUKAI_F1, MUKAI_E2, MUKAI_F2 = 16, 17, 18, 19

# All coordinates odd makes h characteristic in the odd unimodular L, so its
# orthogonal complement is even; 9 + 9 - 21 = -3.
H_IN_L = (3, 3) + (1,) * 21


def a2_in_mukai() -> tuple[tuple[int, ...], tuple[int, ...]]:
    """lambda1 = e2 + f2, lambda2 = e1 + f1 - e2 inside the Mukai lattice."""
    lam1 = [0] * 24
    lam2 = [0] * 24
    lam1[MUKAI_E2] = lam1[MUKAI_F2] = 1
    lam2[MUKAI_E1] = lam2[MUKAI_F1] = 1
    lam2[MUKAI_E2] = -1
    return tuple(lam1), tuple(lam2)


def direct_sum(L1: Lattice, L2: Lattice) -> Lattice:
    return Lattice(IntMatrix.block_diagonal([L1.gram, L2.gram]))


def rescale(L: Lattice, n: int) -> Lattice:
    if n == 0:
        raise ValueError("cannot rescale a lattice by 0")
    return Lattice(L.gram * n)


def is_even(L: Lattice) -> bool:
    return all(x % 2 == 0 for x in L.gram.diag())


def signature(L: Lattice) -> tuple[int, int]:
    """(positive, negative) inertia via exact symmetric elimination over Q."""
    n = L.rank
    M = [[Fraction(x) for x in row] for row in L.gram.tolist()]
    pos = neg = 0
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if M[i][j] != 0), None)
            if off is None:
                raise DegenerateLatticeError("Gram matrix is degenerate")
            i, j = off
            # congruence e_i -> e_i + e_j makes the (i, i) entry 2*M[i][j] != 0
            for r in range(n):
                M[i][r] += M[j][r]
            for r in range(n):
                M[r][i] += M[r][j]
            piv = i
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            for row in M:
                row[k], row[piv] = row[piv], row[k]
        p = M[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = M[i][k] / p
            if f:
                for j in range(k + 1, n):
                    M[i][j] -= f * M[k][j]
            M[i][k] = Fraction(0)
        # row k is read by every update above, so clear it only afterwards
        for i in range(k + 1, n):
            M[k][i] = Fraction(0)
    return pos, neg


def orthogonal_complement(amb: Lattice, vectors: Sequence[Sequence[int]]) -> tuple[Lattice, Embedding]:
    """Saturated sublattice of amb orthogonal to all given vectors."""
    vecs = IntMatrix.from_rows([list(v) for v in vectors], amb.rank)
    if matrix_rank(vecs) != vecs.rows:
        raise ValueError("input vectors are linearly dependent")
    K = kernel_basis(vecs @ amb.gram)
    if K.rows == 0:
        raise DegenerateLatticeError("orthogonal complement is zero")
    gram = K @ amb.gram @ K.T
    sub = Lattice(gram)
    return sub, Embedding(sub, amb, K.T)


# --- discriminant forms -----------------------------------------------------

def _mod(x: Fraction, m: int) -> Fraction:
    return Fraction(x) % m


@dataclass(frozen=True)
class DiscForm:
    """Finite abelian group prod Z/d_i with the forms induced from a lattice.

    Elements are coefficient tuples (a_1, ..., a_k) with 0 <= a_i < d_i.
    ``q_gens[i]`` is q(g_i) in [0, 2) (None for odd lattices, where only
    the bilinear form is defined) and ``b_gram[i][j]`` is b(g_i, g_j) in [0, 1).
    """

    elementary_divisors: tuple[int, ...]
    b_gram: tuple[tuple[Fraction, ...], ...]
    q_gens: tuple[Fraction, ...] | None
    generators: tuple[tuple[Fraction, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        ds = tuple(int(d) for d in self.elementary_divisors)
        object.__setattr__(self, "elementary_divisors", ds)
        k = len(ds)
        if any(d <= 1 for d in ds) or any(ds[i + 1] % ds[i] for i in range(k - 1)):
            raise ValueError(f"elementary divisors must be > 1 and form a divisor chain: {ds}")
        b = tuple(tuple(_mod(x, 1) for x in row) for row in self.b_gram)
        if len(b) != k or any(len(r) != k for r in b):
            raise ValueError("bilinear Gram has the wrong shape")
        for i in range(k):
            for j in range(k):
                if b[i][j] != b[j][i]:
                    raise ValueError("bilinear form must be symmetric")
                if (ds[i] * b[i][j]) % 1:
                    raise ValueError("bilinear form not well defined on the group")
        object.__setattr__(self, "b_gram", b)
        if self.q_gens is not None:
            q = tuple(_mod(x, 2) for x in self.q_gens)
            if len(q) != k:
                raise ValueError("need one q value per generator")
            for i in range(k):
                if q[i] % 1 != b[i][i]:
                    raise ValueError("q(g) and b(g, g) disagree mod 1")
                if (ds[i] ** 2 * q[i]) % 2:
                    raise ValueError("q not well defined on the group")
            object.__setattr__(self, "q_gens", q)

    @classmethod
    def cyclic(cls, n: int, q_gen) -> "DiscForm":
        """Z/n with q(g) = q_gen (mod 2); n = 1 gives the trivial form."""
        q_gen = Fraction(q_gen)
        if n == 1:
            return cls((), (), ())
        return cls((n,), ((q_gen % 1,),), (q_gen,))

    @property
    def order(self) -> int:
        return math.prod(self.elementary_divisors)

    @property
    def is_quadratic(self) -> bool:
        return self.q_gens is not None

    def is_cyclic(self) -> bool:
        return len(self.elementary_divisors) <= 1

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(d) for d in self.elementary_divisors))

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(a % d for a, d in zip(x, self.elementary_divisors))

    def add(self, x, y) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x) -> tuple[int, ...]:
        return self.reduce([-a for a in x])

    def scale(self, n: int, x) -> tuple[int, ...]:
        return self.reduce([n * a for a in x])

    def element_order(self, x) -> int:
        o = 1
        for a, d in zip(x, self.elementary_divisors):
            o = math.lcm(o, d // math.gcd(a, d))
        return o

    def b(self, x, y) -> Fraction:
        k = len(self.elementary_divisors)
        s = sum(x[i] * y[j] * self.b_gram[i][j] for i in range(k) if x[i] for j in range(k) if y[j])
        return _mod(s, 1)

    def q(self, x) -> Fraction:
        if self.q_gens is None:
            raise ValueError("odd lattice: the discriminant quadratic form is undefined")
        k = len(self.elementary_divisors)
        s = sum(x[i] * x[i] * self.q_gens[i] for i in range(k))
        s += 2 * sum(x[i] * x[j] * self.b_gram[i][j] for i in range(k) for j in range(i + 1, k))
        return _mod(s, 2)

    @property
    def q_values(self) -> dict[tuple[int, ...], Fraction]:
        return {x: self.q(x) for x in self.elements()}

    def negated(self) -> "DiscForm":
        """The same group with q and b multiplied by -1 (form of L(-1))."""
        return DiscForm(
            self.elementary_divisors,
            tuple(tuple(-x for x in row) for row in self.b_gram),
            None if self.q_gens is None else tuple(-x for x in self.q_gens),
            self.generators,
        )

    def vector(self, x) -> tuple[Fraction, ...]:
        """Rational representative of x in the lattice coordinates."""
        if not self.generators:
            raise ValueError("this form carries no lattice generators")
        n = len(self.generators[0])
        return tuple(sum(a * g[i] for a, g in zip(x, self.generators)) for i in range(n))


def discriminant_group(L: Lattice) -> DiscForm:
    """L^dual / L with its forms, read off from the Smith form of the Gram matrix.

    With U G V = S, the dual lattice is G^-1 Z^n = V S^-1 Z^n, so the columns
    v_i / s_i (s_i > 1) of V represent generators of order s_i.
    """
    G = L.gram
    n = L.rank
    _, S, V = smith_normal_form(G)
    idx = [i for i, s in enumerate(S.diag()) if s > 1]
    divs = tuple(S[i, i] for i in idx)
    cols = [V.col(i) for i in idx]
    Gcols = [G.apply(c) for c in cols]
    k = len(idx)
    pair = [[Fraction(sum(a * b for a, b in zip(cols[i], Gcols[j])), divs[i] * divs[j])
             for j in range(k)] for i in range(k)]
    gens = tuple(tuple(Fraction(c[t], divs[i]) for t in range(n)) for i, c in enumerate(cols))
    q = tuple(pair[i][i] for i in range(k)) if is_even(L) else None
    return DiscForm(divs, tuple(tuple(r) for r in pair), q, gens)


def forms_agree(D1: DiscForm, D2: DiscForm) -> bool:
    """True iff some group isomorphism D1 -> D2 preserves the forms.

    q is compared when both forms carry it, otherwise only b. The search
    assigns generator images one at a time, keeping partial maps that
    preserve q (or b) on generators and b on pairs of generators.
    """
    if D1.order > FORMS_AGREE_MAX_ORDER or D2.order > FORMS_AGREE_MAX_ORDER:
        raise ValueError(f"group order exceeds the brute-force bound {FORMS_AGREE_MAX_ORDER}")
    if D1.elementary_divisors != D2.elementary_divisors:
        return False
    use_q = D1.is_quadratic and D2.is_quadratic
    if D1.is_quadratic != D2.is_quadratic:
        return False
    divs = D1.elementary_divisors
    k = len(divs)
    if k == 0:
        return True
    elems = list(D2.elements())
    unit = [tuple(int(i == j) for j in range(k)) for i in range(k)]

    candidates = []
    for i, d in enumerate(divs):
        target = D1.q(unit[i]) if use_q else D1.b(unit[i], unit[i])
        cand = [y for y in elems if D2.element_order(y) == d
                and (D2.q(y) if use_q else D2.b(y, y)) == target]
        if not cand:
            return False
        candidates.append(cand)

    def is_bijective(images) -> bool:
        seen = set()
        for coeffs in D1.elements():
            z = tuple(0 for _ in range(k))
            for a, y in zip(coeffs, images):
                if a:
                    z = D2.add(z, D2.scale(a, y))
            seen.add(z)
        return len(seen) == D2.order

    def search(i, images) -> bool:
        if i == k:
            return is_bijective(images)
        for y in candidates[i]:
            if all(D2.b(images[j], y) == D1.b(unit[j], unit[i]) for j in range(i)):
                if search(i + 1, images + [y]):
                    return True
        return False

    return search(0, [])


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Divisor-chain normal form of prod Z/n_i (factors equal to 1 dropped)."""
    return tuple(s for s in elementary_divisors(IntMatrix.diagonal(list(orders))) if s > 1)
