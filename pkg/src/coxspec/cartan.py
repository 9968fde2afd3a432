"""Cartan matrices, the symmetrized Tits form and its kernel."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diagram import BipartitePartition, DiagramError, ValuedGraph, bicolor
from .exactmath import RationalMatrix, integer_vector


@dataclass(frozen=True)
class CartanData:
    """K = T·B with the vertex order S1 then S2; D and F are the halves of the off-diagonal blocks."""

    order: tuple[str, ...]
    m: int
    k: int
    K: RationalMatrix
    T: RationalMatrix
    B: RationalMatrix
    D: RationalMatrix
    F: RationalMatrix

    @property
    def n(self) -> int:
        return self.m + self.k

    def index(self, v: str) -> int:
        return self.order.index(v)

    def tits(self, z: Sequence) -> Fraction:
        """The quadratic form B(z) = z·B·z."""
        bz = self.B.apply(z)
        return sum((Fraction(a) * b for a, b in zip(z, bz)), Fraction(0))

    def pairing(self, u: Sequence, v: Sequence) -> Fraction:
        bv = self.B.apply(v)
        return sum((Fraction(a) * b for a, b in zip(u, bv)), Fraction(0))


@dataclass(frozen=True)
class FormClassification:
    kind: str
    corank: int
    signature: tuple[int, int, int]


def cartan_matrix(g: ValuedGraph, order: Sequence[str] | None = None) -> RationalMatrix:
    """K with 2 on the diagonal and −d_uv in row u, column v."""
    vs = list(order) if order is not None else list(g.vertices)
    pos = {v: i for i, v in enumerate(vs)}
    rows = [[Fraction(0)] * len(vs) for _ in vs]
    for i in range(len(vs)):
        rows[i][i] = Fraction(2)
    for e in g.edges:
        i, j = pos[e.u], pos[e.v]
        rows[i][j] -= e.d_uv
        rows[j][i] -= e.d_vu
    return RationalMatrix(rows)


def symmetrizer(g: ValuedGraph, order: Sequence[str] | None = None) -> RationalMatrix:
    """T = 2·diag(f); reduces to T = 2I, hence K = 2B, when every weight is 1."""
    vs = list(order) if order is not None else list(g.vertices)
    return RationalMatrix.diagonal([2 * g.weights[v] for v in vs])


def assemble_cartan(g: ValuedGraph, part: BipartitePartition | None = None) -> CartanData:
    if part is None:
        part = bicolor(g)
    if set(part.part1) & set(part.part2) or set(part.part1) | set(part.part2) != set(g.vertices):
        raise DiagramError("partition does not cover the vertex set exactly once")
    s1 = set(part.part1)
    for e in g.edges:
        if (e.u in s1) == (e.v in s1):
            raise DiagramError(f"edge {e.u}–{e.v} lies inside one part")
    order = tuple(part.part1) + tuple(part.part2)
    K = cartan_matrix(g, order)
    T = symmetrizer(g, order)
    B = T.inverse() @ K
    if not B.is_symmetric():
        raise DiagramError("weights do not symmetrize the Cartan matrix")
    m, k = len(part.part1), len(part.part2)
    half = Fraction(1, 2)
    D = K.submatrix(range(m), range(m, m + k)).scale(half)
    F = K.submatrix(range(m, m + k), range(m)).scale(half)
    return CartanData(order, m, k, K, T, B, D, F)


def cartan_data(g: ValuedGraph) -> CartanData:
    return assemble_cartan(g, bicolor(g))


def congruence_diagonal(sym: RationalMatrix) -> list[Fraction]:
    """Diagonal of a matrix congruent to ``sym`` by exact symmetric elimination."""
    n = sym.shape[0]
    a = [list(sym.row(i)) for i in range(n)]

    def add(dst: int, src: int, q: Fraction) -> None:
        # row dst += q·row src, then column dst += q·column src
        for c in range(n):
            a[dst][c] += q * a[src][c]
        for r in range(n):
            a[r][dst] += q * a[r][src]

    diag: list[Fraction] = []
    for i in range(n):
        if a[i][i] == 0:
            swap = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                a[i], a[swap] = a[swap], a[i]
                for row in a:
                    row[i], row[swap] = row[swap], row[i]
            else:
                partner = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if partner is not None:
                    add(i, partner, Fraction(1))
        p = a[i][i]
        diag.append(p)
        if p == 0:
            continue
        for r in range(i + 1, n):
            if a[r][i] != 0:
                add(r, i, -a[r][i] / p)
    return diag


def signature(sym: RationalMatrix) -> tuple[int, int, int]:
    d = congruence_diagonal(sym)
    return sum(1 for x in d if x > 0), sum(1 for x in d if x < 0), sum(1 for x in d if x == 0)


def classify_tits(cd: CartanData) -> FormClassification:
    pos, neg, zero = signature(cd.B)
    if neg == 0 and zero == 0:
        kind = "positive-definite"
    elif neg == 0:
        kind = "nonnegative-corank-1" if zero == 1 else "nonnegative"
    else:
        kind = "indefinite"
    return FormClassification(kind, zero, (pos, neg, zero))


def kernel_basis(cd: CartanData) -> list[tuple[int, ...]]:
    return [integer_vector(v) for v in cd.K.nullspace()]


def nilroot_kernel(cd: CartanData) -> tuple[int, ...] | None:
    """Coprime positive generator of ker K when the corank is 1.

    Returns None for a trivial kernel, and also when the kernel has higher
    dimension; ``kernel_basis`` covers that case.
    """
    basis = cd.K.nullspace()
    if len(basis) != 1:
        return None
    v = integer_vector(basis[0])
    if sum(v) < 0:
        v = tuple(-x for x in v)
    return v


def dual_form_ratio(cd: CartanData, dual: CartanData) -> Fraction:
    """The scalar c with B(dual graph) = c·T·B·T; raises if none exists."""
    tbt = cd.T @ cd.B @ cd.T
    ratio: Fraction | None = None
    n = cd.n
    for i in range(n):
        for j in range(n):
            a, b = dual.B[i, j], tbt[i, j]
            if b == 0:
                if a != 0:
                    raise ValueError("dual form is not proportional to T·B·T")
                continue
            r = a / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                raise ValueError("dual form is not proportional to T·B·T")
    return ratio if ratio is not None else Fraction(0)
