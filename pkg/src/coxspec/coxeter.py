"""Reflections, Coxeter transformations and their characteristic polynomials."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cartan import cartan_matrix
from .diagram import (
    DiagramError,
    Orientation,
    ValuedGraph,
    bicolored_orientation,
    build_catalog,
    components_without_edge,
    glue_copies,
    make_graph,
    orientation_from_arrows,
)
from .exactmath import (
    DomainError,
    IntPolynomial,
    RationalMatrix,
    charpoly_exact,
    factor_cyclotomic,
    largest_real_root,
)

LAM = IntPolynomial.x()
ONE = IntPolynomial.const(1)


@dataclass(frozen=True)
class CoxeterMatrix:
    matrix: RationalMatrix
    orientation: Orientation
    sequence: tuple[str, ...]
    order: tuple[str, ...]


def reflection(K: RationalMatrix, i: int) -> RationalMatrix:
    """σ_i z = z − (row i of K)·z · e_i."""
    n = K.shape[0]
    rows = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for c in range(n):
        rows[i][c] -= K[i, c]
    return RationalMatrix(rows)


def reflection_word(g: ValuedGraph, word: Sequence[str], K: RationalMatrix | None = None) -> RationalMatrix:
    """The product σ_{w[0]}·σ_{w[1]}···, so the last letter acts first."""
    K = K if K is not None else cartan_matrix(g)
    out = RationalMatrix.identity(g.n)
    for v in word:
        out = out @ reflection(K, g.index(v))
    return out


def sink_sequence(g: ValuedGraph, o: Orientation) -> tuple[str, ...]:
    """A fully sink-admissible sequence; the smallest-named sink is taken each time."""
    cur = o
    seq: list[str] = []
    remaining = set(g.vertices)
    while remaining:
        sinks = sorted(v for v in remaining if cur.is_sink(v, g))
        if not sinks:
            raise DiagramError("orientation has an oriented cycle; no sink-admissible sequence")
        v = sinks[0]
        seq.append(v)
        remaining.discard(v)
        cur = cur.reflect_at(v)
    return tuple(seq)


def coxeter_matrix(g: ValuedGraph, o: Orientation | None = None) -> CoxeterMatrix:
    """C = σ_{i_n}···σ_{i_1} where i_1, …, i_n is sink-admissible for ``o``."""
    o = o if o is not None else bicolored_orientation(g)
    seq = sink_sequence(g, o)
    C = reflection_word(g, tuple(reversed(seq)))
    return CoxeterMatrix(C, o, seq, g.vertices)


def bicolored_blocks(g: ValuedGraph) -> tuple[RationalMatrix, RationalMatrix]:
    """The involutions w1 (S1 reflections) and w2 (S2 reflections); C = w1·w2."""
    from .diagram import bicolor

    part = bicolor(g)
    return reflection_word(g, part.part1), reflection_word(g, part.part2)


def coxeter_charpoly(g: ValuedGraph) -> IntPolynomial:
    """det(λI − C), monic, for the bicolored Coxeter transformation of a tree."""
    if g.cyclic:
        raise DiagramError(f"{g.name or 'graph'} is a cycle; use affine_An_charpoly")
    g.require_tree()
    return charpoly_exact(coxeter_matrix(g).matrix)


# ---------------------------------------------------------------------------
# Splitting along an edge
# ---------------------------------------------------------------------------


def _chi_by_splitting(g: ValuedGraph, keep: frozenset, memo: dict) -> IntPolynomial:
    """χ of the induced forest on ``keep`` by repeatedly cutting off a leaf."""
    if keep in memo:
        return memo[keep]
    if not keep:
        res = ONE
    else:
        # find a component and a leaf in it
        start = min(keep, key=g.index)
        comp = {start}
        todo = [start]
        while todo:
            a = todo.pop()
            for b in g.neighbors(a):
                if b in keep and b not in comp:
                    comp.add(b)
                    todo.append(b)
        if len(comp) < len(keep):
            res = _chi_by_splitting(g, frozenset(comp), memo) * _chi_by_splitting(g, keep - comp, memo)
        elif len(comp) == 1:
            res = LAM + 1
        else:
            leaf = next(v for v in sorted(comp, key=g.index) if sum(1 for w in g.neighbors(v) if w in keep) == 1)
            alpha = next(w for w in g.neighbors(leaf) if w in keep)
            rho = _edge_rho(g, leaf, alpha)
            rest = keep - {leaf}
            res = (LAM + 1) * _chi_by_splitting(g, rest, memo) - LAM * rho * _chi_by_splitting(g, rest - {alpha}, memo)
    memo[keep] = res
    return res


def _edge_rho(g: ValuedGraph, u: str, v: str) -> int:
    d_uv, d_vu = g.rigging(u, v)
    return d_uv * d_vu


def split_formula(g: ValuedGraph, edge: tuple[str, str]) -> IntPolynomial:
    """χ(Γ) = χ(Γ1)χ(Γ2) − ρλ·χ(Γ1∖α)χ(Γ2∖β) for the edge α–β, with ρ = d_αβ·d_βα.

    The four factors are themselves computed by leaf-by-leaf splitting, so no
    determinant is involved.
    """
    g.require_tree()
    alpha, beta = edge
    g1, g2 = components_without_edge(g, alpha, beta)
    memo: dict = {}
    chi = lambda vs: _chi_by_splitting(g, frozenset(vs), memo)  # noqa: E731
    v1, v2 = set(g1.vertices), set(g2.vertices)
    rho = _edge_rho(g, alpha, beta)
    return chi(v1) * chi(v2) - LAM * rho * chi(v1 - {alpha}) * chi(v2 - {beta})


def split_single_vertex(g: ValuedGraph, leaf: str) -> IntPolynomial:
    """χ(Γ) = (λ+1)χ(Γ1) − ρλχ(Γ1∖α) when ``leaf`` hangs on α."""
    nbrs = g.neighbors(leaf)
    if len(nbrs) != 1:
        raise DiagramError(f"{leaf} is not a leaf")
    return split_formula(g, (nbrs[0], leaf))


def splitting_charpoly(g: ValuedGraph) -> IntPolynomial:
    """χ of a tree or forest computed only through the splitting recursion."""
    return _chi_by_splitting(g, frozenset(g.vertices), {})


# ---------------------------------------------------------------------------
# Gluing copies to an apex
# ---------------------------------------------------------------------------


def _default_attach(gamma: ValuedGraph) -> str:
    leaves = [v for v in gamma.vertices if gamma.degree(v) == 1]
    if gamma.extension_vertex is not None:
        return gamma.extension_vertex
    return leaves[0] if leaves else gamma.vertices[0]


def glue_formula(gamma: ValuedGraph, n: int, attach: str | None = None) -> tuple[IntPolynomial, IntPolynomial]:
    """(χ(Γ(n)), φ_{n−1}) with χ(Γ(n)) = χ(Γ)^{n−1}·φ_{n−1}.

    Γ(n) joins a new apex to the attachment vertex of each of n copies of Γ.
    The recursion adds one copy at a time, cutting the new apex edge.
    """
    if n < 1:
        raise DomainError("need at least one copy")
    gamma.require_tree()
    v = attach if attach is not None else _default_attach(gamma)
    chi = splitting_charpoly(gamma)
    chi_minus = _chi_by_splitting(gamma, frozenset(gamma.vertices) - {v}, {})
    p = LAM + 1  # apex alone
    for i in range(1, n + 1):
        p = p * chi - LAM * chi ** (i - 1) * chi_minus
    phi = p // chi ** (n - 1)
    assert phi == (LAM + 1) * chi - LAM * n * chi_minus
    return p, phi


def kolmykov_graph(n: int) -> ValuedGraph:
    """n copies of D̃4 joined through one leaf each to a common apex."""
    d4 = build_catalog("D4~")
    return glue_copies(d4, d4.extension_vertex, n)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

_SERIES_MIN = {"T23": 2, "T33": 3, "T24": 3}


def _sum_powers(lo: int, hi: int) -> IntPolynomial:
    out = IntPolynomial()
    for i in range(lo, hi + 1):
        out = out + IntPolynomial.monomial(i)
    return out


def tpqr_series_charpoly(family: str, r: int) -> IntPolynomial:
    """Closed forms for χ(T[2,3,r]), χ(T[3,3,r]) and χ(T[2,4,r])."""
    fam = family.upper().replace("_", "").replace(",", "")
    if fam not in _SERIES_MIN:
        raise DomainError(f"unknown series '{family}' (expected T23, T33 or T24)")
    if r < _SERIES_MIN[fam]:
        raise DomainError(f"{fam} closed form needs r ≥ {_SERIES_MIN[fam]}")
    x = IntPolynomial.monomial
    if fam == "T23":
        n = r + 3
        return x(n) + x(n - 1) - _sum_powers(3, n - 3) + x(1) + ONE
    if fam == "T33":
        n = r
        return x(n + 4) + x(n + 3) - 2 * x(n + 1) - 3 * _sum_powers(4, n) - 2 * x(3) + x(1) + ONE
    n = r
    return x(n + 4) + x(n + 3) - x(n + 1) - 2 * _sum_powers(4, n) - x(3) + x(1) + ONE


def series_graph(family: str, r: int) -> ValuedGraph:
    fam = family.upper()
    p, q = {"T23": (2, 3), "T33": (3, 3), "T24": (2, 4)}[fam]
    return build_catalog(f"T[{p},{q},{r}]")


def canonical_class_index(n: int, k: int) -> int:
    if not 1 <= k <= n:
        raise DomainError(f"class index k must lie in 1..{n}")
    return min(k, n + 1 - k)


def affine_An_charpoly(n: int, k: int) -> IntPolynomial:
    """λ^{n+1} − λ^{n−k+1} − λ^k + 1, i.e. (λ^k − 1)(λ^{n+1−k} − 1)."""
    k = canonical_class_index(n, k)
    x = IntPolynomial.monomial
    return x(n + 1) - x(n - k + 1) - x(k) + ONE


def cycle_orientation(g: ValuedGraph, k: int) -> Orientation:
    """Orientation of the cycle a0…an with k arrows running forward and the rest backward."""
    if not g.cyclic:
        raise DiagramError("not a cycle")
    n = g.n - 1
    if not 1 <= k <= n:
        raise DomainError(f"class index k must lie in 1..{n}")
    arrows = []
    for i in range(n + 1):
        a, b = f"a{i}", f"a{(i + 1) % (n + 1)}"
        arrows.append((a, b) if i < k else (b, a))
    return orientation_from_arrows(g, arrows, f"k={k}")


# ---------------------------------------------------------------------------
# Spectral radius and Frame identities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralRadius:
    value: float
    exact: bool
    low: Fraction
    high: Fraction


def spectral_radius_of(p: IntPolynomial, tol=Fraction(1, 10**8)) -> SpectralRadius:
    _, rem = factor_cyclotomic(p)
    if rem.degree == 0:
        return SpectralRadius(1.0, True, Fraction(1), Fraction(1))
    root = largest_real_root(p, tol)
    if root is None or root.high <= 1:
        return SpectralRadius(1.0, True, Fraction(1), Fraction(1))
    return SpectralRadius(float(root), False, root.low, root.high)


def spectral_radius(g: ValuedGraph, tol=Fraction(1, 10**8)) -> SpectralRadius:
    """Largest real eigenvalue of C when it exceeds 1; exactly 1 when all eigenvalues are roots of unity."""
    return spectral_radius_of(coxeter_charpoly(g), Fraction(tol))


def path_charpoly(m: int) -> IntPolynomial:
    """χ(A_m) with χ(A_0) = 1 and χ(A_{−1}) = 1 by convention."""
    if m <= 0:
        return ONE
    return coxeter_charpoly(build_catalog(f"A{m}"))


@dataclass(frozen=True)
class FrameReport:
    holds: bool
    lhs: IntPolynomial
    rhs: IntPolynomial
    formula: str


def frame_identities_check(*params: int) -> FrameReport:
    """With (m, n): χ(A_{m+n}) = χ(A_m)χ(A_n) − λχ(A_{m−1})χ(A_{n−1}).
    With (p, q, r): χ(T) = χ(A_{p+q+r−2}) − λ²χ(A_{p−2})χ(A_{q−2})χ(A_{r−2})."""
    if len(params) == 2:
        m, n = params
        if m < 1 or n < 1:
            raise DomainError("parameters must be positive")
        lhs = path_charpoly(m + n)
        rhs = path_charpoly(m) * path_charpoly(n) - LAM * path_charpoly(m - 1) * path_charpoly(n - 1)
        return FrameReport(lhs == rhs, lhs, rhs, f"A{m + n} = A{m}·A{n} − λ·A{m - 1}·A{n - 1}")
    if len(params) == 3:
        p, q, r = params
        if min(p, q, r) < 2:
            raise DomainError("branch lengths must be at least 2")
        lhs = coxeter_charpoly(build_catalog(f"T[{p},{q},{r}]"))
        rhs = path_charpoly(p + q + r - 2) - LAM * LAM * path_charpoly(p - 2) * path_charpoly(q - 2) * path_charpoly(r - 2)
        return FrameReport(lhs == rhs, lhs, rhs, f"T[{p},{q},{r}] = A{p + q + r - 2} − λ²·A{p - 2}·A{q - 2}·A{r - 2}")
    raise DomainError("expected (m, n) or (p, q, r)")


# ---------------------------------------------------------------------------
# Random trees and orientations, shared by property checks
# ---------------------------------------------------------------------------


def random_tree(n: int, rng: random.Random, valued: bool = False) -> ValuedGraph:
    """Random labelled tree on v0…v{n−1}; ``valued`` allows rigging (1,2),(2,1),(1,3),(3,1)."""
    vs = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        j = rng.randrange(i)
        d = (1, 1)
        if valued and rng.random() < 0.3:
            d = rng.choice([(1, 2), (2, 1), (1, 3), (3, 1)])
        edges.append((vs[j], vs[i], d[0], d[1]))
    return make_graph(vs, edges, name=f"tree{n}")


def random_orientation(g: ValuedGraph, rng: random.Random) -> Orientation:
    arrows = []
    for e in g.edges:
        arrows.append((e.u, e.v) if rng.random() < 0.5 else (e.v, e.u))
    return orientation_from_arrows(g, arrows, "random")
