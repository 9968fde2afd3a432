"""Defect forms, transforming elements and regularity of dimension vectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath

from .cartan import cartan_data, cartan_matrix, classify_tits
from .coxeter import coxeter_matrix, reflection, reflection_word, sink_sequence
from .diagram import (
    DiagramError,
    Orientation,
    ValuedGraph,
    bicolor,
    bicolored_orientation,
    components_without_edge,
    induced_subgraph,
)
from .exactmath import DomainError, RationalMatrix, integer_vector
from .spectral import coxeter_numbers


# ---------------------------------------------------------------------------
# Transforming elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransformingElement:
    """T with T⁻¹·C_from·T = C_to; ``word`` lists reflections left to right as matrix factors."""

    word: tuple[str, ...]
    matrix: RationalMatrix
    index: int | None
    k: int


def _restricted_word(g: ValuedGraph, o: Orientation, keep: set[str]) -> tuple[str, ...]:
    """Word of the Coxeter transformation of the induced subgraph under the induced orientation."""
    sub = induced_subgraph(g, keep)
    sub_o = Orientation({k: v for k, v in o.direction.items() if k <= keep})
    seq = sink_sequence(sub, sub_o)
    return tuple(reversed(seq))


def _factor_pairs(g: ValuedGraph, frm: Orientation, to: Orientation):
    """(P_i, S_i) words along a chain of single-edge flips from ``frm`` to ``to``."""
    g.require_tree()
    diff = [e.key() for e in g.edges if frm.direction[e.key()] != to.direction[e.key()]]
    cur = frm
    pairs = []
    for key in diff:
        s, t = cur.direction[key]
        # the arrow s → t points into the component of t
        g_t, g_s = components_without_edge(g, t, s)
        side_t, side_s = set(g_t.vertices), set(g_s.vertices)
        S = _restricted_word(g, cur, side_t)
        P = _restricted_word(g, cur, side_s)
        pairs.append((P, S, side_t, side_s))
        cur = cur.flipped([(s, t)])
    return pairs


def transforming_words(g: ValuedGraph, frm: Orientation, to: Orientation) -> list[tuple[str, ...]]:
    """The k+1 canonical words T_1 … T_{k+1}: T_j = P_1···P_{k−j+1}·S⁻¹_{k−j+2}···S⁻¹_k."""
    pairs = _factor_pairs(g, frm, to)
    k = len(pairs)
    words = []
    for j in range(1, k + 2):
        w: list[str] = []
        for i in range(k):
            P, S = pairs[i][0], pairs[i][1]
            if i < k - j + 1:
                w.extend(P)
            else:
                w.extend(reversed(S))
        words.append(tuple(w))
    return words


def transforming_element(
    g: ValuedGraph,
    frm: Orientation,
    to: Orientation,
    avoid: str | None = None,
    index: int = 1,
    reduced: bool = False,
) -> TransformingElement:
    """A transforming element from ``frm`` to ``to``; with ``avoid`` its word omits that reflection.

    ``reduced`` replaces the canonical word by a reduced word for the same element.
    """
    K = cartan_matrix(g)
    if avoid is not None:
        if avoid not in g.vertices:
            raise DiagramError(f"unknown vertex {avoid}")
        pairs = _factor_pairs(g, frm, to)
        w: list[str] = []
        for P, S, side_t, side_s in pairs:
            w.extend(P if avoid not in side_s else reversed(S))
        word = tuple(w)
        M = reflection_word(g, word, K)
        return TransformingElement(reduced_word(g, M) if reduced else word, M, None, len(pairs))
    words = transforming_words(g, frm, to)
    if not 1 <= index <= len(words):
        raise DomainError(f"index must lie in 1..{len(words)}")
    word = words[index - 1]
    M = reflection_word(g, word, K)
    return TransformingElement(reduced_word(g, M) if reduced else word, M, index, len(words) - 1)


def reduced_word(g: ValuedGraph, M: RationalMatrix, limit: int = 10000) -> tuple[str, ...]:
    """A reduced word for a Weyl group element given as a matrix.

    Uses the descent criterion: the length drops under right multiplication
    by σ_i exactly when M sends the simple root at i to a negative root.
    """
    K = cartan_matrix(g)
    refl = [reflection(K, i) for i in range(g.n)]
    word: list[str] = []
    cur = M
    ident = RationalMatrix.identity(g.n)
    while cur != ident:
        if len(word) > limit:
            raise DomainError("word reduction did not terminate")
        i = next((j for j in range(g.n) if any(x < 0 for x in cur.col(j))), None)
        if i is None:
            raise DomainError("matrix is not a Weyl group element")
        cur = cur @ refl[i]
        word.append(g.vertices[i])
    return tuple(reversed(word))


def conjugation_holds(g: ValuedGraph, frm: Orientation, to: Orientation, T: TransformingElement) -> bool:
    Cf = coxeter_matrix(g, frm).matrix
    Ct = coxeter_matrix(g, to).matrix
    return T.matrix.inverse() @ Cf @ T.matrix == Ct


# ---------------------------------------------------------------------------
# Defect forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DefectForm:
    coefficients: Mapping[str, int]
    orientation: Orientation
    construction: str
    raw: tuple[Fraction, ...]
    order: tuple[str, ...]

    def __call__(self, z: Sequence) -> Fraction:
        return sum((Fraction(c) * Fraction(x) for c, x in zip(self.vector, z)), Fraction(0))

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(self.coefficients[v] for v in self.order)

    def raw_value(self, z: Sequence) -> Fraction:
        return sum((c * Fraction(x) for c, x in zip(self.raw, z)), Fraction(0))

    def render(self, ascii_only: bool = False) -> str:
        return render_linear_form(self.coefficients, ascii_only)


def render_linear_form(coeffs: Mapping[str, int], ascii_only: bool = False) -> str:
    """Positive terms first, then negative ones, each group ordered by vertex name."""
    minus = "-" if ascii_only else "−"
    dot = "*" if ascii_only else "·"
    pos = sorted((v, c) for v, c in coeffs.items() if c > 0)
    neg = sorted((v, c) for v, c in coeffs.items() if c < 0)
    parts: list[str] = []
    for v, c in pos + neg:
        mag = abs(c)
        term = v if mag == 1 else f"{mag}{dot}{v}"
        if not parts:
            parts.append(term if c > 0 else f"{minus}{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"{minus} {term}")
    return " ".join(parts) if parts else "0"


def _normalize(g: ValuedGraph, vec: Sequence[Fraction]) -> dict[str, int]:
    ints = list(integer_vector(vec))
    ref = g.extension_vertex
    pivot = ints[g.index(ref)] if ref is not None and ints[g.index(ref)] != 0 else next((x for x in ints if x), 1)
    if pivot < 0:
        ints = [-x for x in ints]
    return {v: c for v, c in zip(g.vertices, ints)}


def _require_extended(g: ValuedGraph) -> None:
    g.require_tree()
    form = classify_tits(cartan_data(g))
    if form.kind != "nonnegative-corank-1":
        raise DiagramError(f"{g.name or 'graph'} is not an extended Dynkin diagram")


def conjugate_nilroot(g: ValuedGraph) -> tuple[Fraction, ...]:
    """Generator of ker Kᵀ with its S2 coordinates negated."""
    K = cartan_matrix(g)
    basis = K.transpose().nullspace()
    if len(basis) != 1:
        raise DiagramError("kernel of Kᵀ is not one-dimensional")
    v = integer_vector(basis[0])
    if sum(v) < 0:
        v = tuple(-x for x in v)
    part2 = set(bicolor(g).part2)
    return tuple(Fraction(-x if u in part2 else x) for u, x in zip(g.vertices, v))


def defect_form(g: ValuedGraph, o: Orientation | None = None) -> DefectForm:
    """ρ(z) = ⟨T z, z̃⟩ with T transforming the bicolored orientation into ``o``."""
    _require_extended(g)
    o = o if o is not None else bicolored_orientation(g)
    zt = conjugate_nilroot(g)
    T = transforming_element(g, bicolored_orientation(g), o).matrix
    raw = T.transpose().apply(zt)
    return DefectForm(_normalize(g, raw), o, "inner-product", tuple(raw), g.vertices)


def dlab_ringel_defect(g: ValuedGraph, o: Orientation | None = None) -> tuple[DefectForm, Fraction]:
    """Fixed vector δ of C_oᵀ as a linear form, and the ratio δ/ρ against ``defect_form``."""
    _require_extended(g)
    o = o if o is not None else bicolored_orientation(g)
    C = coxeter_matrix(g, o).matrix
    basis = (C.transpose() - RationalMatrix.identity(g.n)).nullspace()
    if len(basis) != 1:
        raise DomainError(f"fixed space of the adjoint Coxeter transformation has dimension {len(basis)}")
    delta = tuple(Fraction(x) for x in basis[0])
    rho = defect_form(g, o)
    ratio = _proportionality(delta, rho.raw)
    return DefectForm(_normalize(g, delta), o, "fixed-form", delta, g.vertices), ratio


def _proportionality(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    ratio = None
    for x, y in zip(a, b):
        if y == 0:
            if x != 0:
                raise DomainError("forms are not proportional")
            continue
        r = Fraction(x) / y
        if ratio is None:
            ratio = r
        elif ratio != r:
            raise DomainError("forms are not proportional")
    if ratio is None or ratio == 0:
        raise DomainError("zero form")
    return ratio


# ---------------------------------------------------------------------------
# Roots and regularity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootKind:
    kind: str  # "real", "imaginary", "not-a-root"
    steps: int
    reason: str = ""


def root_kind(g: ValuedGraph, z: Sequence[int], max_steps: int = 100000) -> RootKind:
    """Classify a nonnegative vector by descent through simple reflections."""
    K = cartan_matrix(g)
    n = g.n
    cur = [int(x) for x in z]
    if any(x < 0 for x in cur) or not any(cur):
        return RootKind("not-a-root", 0, "vector must be nonnegative and nonzero")
    nil = K.nullspace()
    steps = 0
    while steps < max_steps:
        if sum(cur) == 1:
            return RootKind("real", steps)
        Kz = K.apply(cur)
        if all(x == 0 for x in Kz):
            return RootKind("imaginary", steps) if nil else RootKind("not-a-root", steps, "zero pairing")
        i = next((j for j in range(n) if Kz[j] > 0), None)
        if i is None:
            return RootKind("not-a-root", steps, "no descending reflection")
        nxt = list(cur)
        nxt[i] = int(cur[i] - Kz[i])
        if nxt[i] < 0:
            return RootKind("not-a-root", steps, "reflection leaves the positive cone")
        cur = nxt
        steps += 1
    raise DomainError("descent did not terminate")


@dataclass(frozen=True)
class Regularity:
    status: str  # "regular", "not-regular", "not-a-root"
    root: RootKind
    defect: Fraction | None
    witness: int | None
    checked: int


def is_regular(g: ValuedGraph, o: Orientation | None, z: Sequence[int], bound: int = 50) -> Regularity:
    """For a positive root z: regular iff its defect vanishes.

    The verdict is backed by iterating C^k for |k| ≤ bound: a vanishing defect
    comes with a check that every iterate stays positive, and a nonzero defect
    with the first k where positivity fails.
    """
    o = o if o is not None else bicolored_orientation(g)
    rk = root_kind(g, z)
    if rk.kind == "not-a-root":
        return Regularity("not-a-root", rk, None, None, 0)
    rho = defect_form(g, o)
    value = rho(z)
    C = coxeter_matrix(g, o).matrix
    Cinv = C.inverse()
    witness = _first_nonpositive(C, Cinv, z, bound)
    if value == 0:
        if witness is not None:
            raise DomainError(f"zero defect but C^{witness} z is not positive")
        return Regularity("regular", rk, value, None, bound)
    return Regularity("not-regular", rk, value, witness, bound)


def _first_nonpositive(C: RationalMatrix, Cinv: RationalMatrix, z: Sequence[int], bound: int) -> int | None:
    fwd = tuple(Fraction(x) for x in z)
    bwd = fwd
    for k in range(1, bound + 1):
        fwd = C.apply(fwd)
        if any(x < 0 for x in fwd) or not any(fwd):
            return k
        bwd = Cinv.apply(bwd)
        if any(x < 0 for x in bwd) or not any(bwd):
            return -k
    return None


@dataclass(frozen=True)
class DlabRingel:
    exponent: int
    nilroot: tuple[int, ...]
    form: tuple[Fraction, ...]
    ratio_to_defect: Fraction


def dlab_ringel_identity(g: ValuedGraph, o: Orientation | None = None) -> DlabRingel:
    """C^{h_a} z = z + h_a·α(z)·z¹; returns the linear form α and its ratio to the defect.

    The exponent is the affine Coxeter number h_a.
    """
    _require_extended(g)
    o = o if o is not None else bicolored_orientation(g)
    h_a = coxeter_numbers(g).h_a
    C = coxeter_matrix(g, o).matrix
    M = C ** h_a - RationalMatrix.identity(g.n)
    nil = integer_vector(cartan_matrix(g).nullspace()[0])
    if sum(nil) < 0:
        nil = tuple(-x for x in nil)
    pivot = next(i for i, x in enumerate(nil) if x)
    # every column of M must be a multiple of the nil-root
    form = []
    for j in range(g.n):
        col = M.col(j)
        c = col[pivot] / nil[pivot]
        if tuple(c * x for x in nil) != col:
            raise DomainError("C^{h_a} − I does not map into the nil-root line")
        form.append(c / h_a)
    rho = defect_form(g, o)
    return DlabRingel(h_a, nil, tuple(form), _proportionality(form, rho.raw))


# ---------------------------------------------------------------------------
# Indefinite forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndefiniteDefects:
    rho1: float
    rho2: float
    lambda1: float
    lambda2: float
    holds: bool


def _mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def indefinite_defects(g: ValuedGraph, o: Orientation | None, z: Sequence[int], dps: int = 50) -> IndefiniteDefects:
    """ρ¹ = ⟨Tz, z̃₁⟩ and ρ² = ⟨Tz, z̃₂⟩ with z̃ eigenvectors of Cᵀ for λ₂ < 1 < λ₁.

    The necessary condition for regularity is ρ¹ ≤ 0 ≤ ρ².  Values are
    computed with ``dps`` significant digits; anything below 10^(10−dps) in
    size is treated as zero.
    """
    g.require_tree()
    cd = cartan_data(g)
    if classify_tits(cd).kind != "indefinite":
        raise DiagramError(f"{g.name or 'graph'} does not have an indefinite Tits form")
    o = o if o is not None else bicolored_orientation(g)
    with mpmath.workdps(dps):
        DF = cd.D @ cd.F
        m = cd.m
        A = mpmath.matrix([[_mp(DF[j, i]) for j in range(m)] for i in range(m)])  # (DF)ᵀ
        vals, vecs = mpmath.eig(A)
        best = max(range(m), key=lambda i: mpmath.re(vals[i]))
        phi = mpmath.re(vals[best])
        u = [mpmath.re(vecs[i, best]) for i in range(m)]
        if sum(u) < 0:
            u = [-x for x in u]
        disc = mpmath.sqrt(phi * (phi - 1))
        lam1 = 2 * phi - 1 + 2 * disc
        lam2 = 2 * phi - 1 - 2 * disc
        Dt_u = [sum(_mp(cd.D[i, j]) * u[i] for i in range(m)) for j in range(cd.k)]

        def conj(lam):
            c = 2 / (lam + 1)
            return list(u) + [c * x for x in Dt_u]

        w1, w2 = conj(lam2), conj(lam1)
        T = transforming_element(g, bicolored_orientation(g), o).matrix
        # vertex order of g and of the Cartan data agree (S1 then S2)
        Tz = [_mp(x) for x in T.apply(z)]
        r1 = mpmath.fsum(a * b for a, b in zip(Tz, w1))
        r2 = mpmath.fsum(a * b for a, b in zip(Tz, w2))
        eps = mpmath.mpf(10) ** (10 - dps)
        s1 = 0 if abs(r1) < eps else (1 if r1 > 0 else -1)
        s2 = 0 if abs(r2) < eps else (1 if r2 > 0 else -1)
        return IndefiniteDefects(float(r1), float(r2), float(lam1), float(lam2), s1 <= 0 <= s2)


def star_inequality(z: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(B(z), (1/n)·Σ_{i<j}(y_i − y_j)²) for a star with centre z[0] and rays z[1:]."""
    x0, ys = Fraction(z[0]), [Fraction(y) for y in z[1:]]
    n = len(ys)
    s = sum(ys)
    B = x0 * x0 + sum(y * y for y in ys) - x0 * s
    rhs = sum((ys[i] - ys[j]) ** 2 for i in range(n) for j in range(i + 1, n)) / n
    return B, rhs
