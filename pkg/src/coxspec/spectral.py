"""Golden pair, λ–φ correspondence, Jordan structure, eigenbases, Coxeter numbers and roots."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .cartan import CartanData, cartan_data, cartan_matrix, classify_tits
from .coxeter import coxeter_charpoly, coxeter_matrix, reflection
from .diagram import DiagramError, ValuedGraph, build_catalog, dual_graph
from .exactmath import (
    DomainError,
    IntPolynomial,
    RationalMatrix,
    block_matrix,
    charpoly_exact,
    cyclotomic_polynomial,
    factor_cyclotomic,
    integer_vector,
    isolate_real_roots,
    largest_real_root,
    squarefree_part,
)

LAM = IntPolynomial.x()


# ---------------------------------------------------------------------------
# Golden pair
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DominantPhi:
    value: float
    exact: Fraction | None
    low: Fraction
    high: Fraction
    vector: tuple
    lambda1: float
    lambda2: float


@dataclass(frozen=True)
class GoldenPair:
    DF: RationalMatrix
    FD: RationalMatrix
    dominant: DominantPhi


def _rational_roots(p: IntPolynomial) -> list[Fraction]:
    """Rational roots of an integer polynomial, by the rational root test."""
    p = p.primitive()
    if p.is_zero():
        raise DomainError("zero polynomial")
    roots: list[Fraction] = []
    q = p
    while q.degree > 0 and q[0] == 0:
        roots.append(Fraction(0))
        q = IntPolynomial(q.coeffs[1:])
    if q.degree <= 0:
        return sorted(set(roots))
    a0, an = abs(q[0]), abs(q.leading)
    nums = _divisors(a0)
    dens = _divisors(an)
    for s in nums:
        for t in dens:
            for sign in (1, -1):
                r = Fraction(sign * s, t)
                if q(r) == 0:
                    roots.append(r)
    return sorted(set(roots))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            out.append(n // i)
        i += 1
    return sorted(set(out))


def root_multiplicity(p: IntPolynomial, r: Fraction) -> int:
    lin = IntPolynomial([-r.numerator, r.denominator])
    k = 0
    q = p.primitive()
    while q.degree > 0:
        res = q.divmod_exact(lin)
        if res is None or not res[1].is_zero():
            break
        q = res[0]
        k += 1
    return k


def _perron_vector(M: RationalMatrix, phi: float) -> tuple[float, ...]:
    """Positive eigenvector of a nonnegative irreducible matrix for its Perron root."""
    n = M.shape[0]
    with mpmath.workdps(40):
        A = mpmath.matrix([[mpmath.mpf(M[i, j].numerator) / M[i, j].denominator for j in range(n)]
                           for i in range(n)])
        vals, vecs = mpmath.eig(A)
        best = max(range(n), key=lambda i: mpmath.re(vals[i]))
        v = [mpmath.re(vecs[i, best]) for i in range(n)]
        s = sum(v)
        return tuple(float(x / s) for x in v)


def golden_pair(cd: CartanData) -> GoldenPair:
    DF = cd.D @ cd.F
    FD = cd.F @ cd.D
    p = charpoly_exact(DF)
    top = largest_real_root(p)
    value = float(top) if top is not None else 0.0
    exact = None
    for r in _rational_roots(p):
        if top is not None and top.low <= r <= top.high:
            exact = r
            value = float(r)
    if exact is not None:
        basis = (DF - RationalMatrix.identity(cd.m).scale(exact)).nullspace()
        vec = integer_vector(basis[0])
        if sum(vec) < 0:
            vec = tuple(-x for x in vec)
    else:
        vec = _perron_vector(DF, value)
    l1, l2 = lambda_from_phi(exact if exact is not None else value)
    return GoldenPair(
        DF,
        FD,
        DominantPhi(value, exact, top.low if top else Fraction(0), top.high if top else Fraction(0), vec,
                    abs(l1), abs(l2)),
    )


def lambda_from_phi(phi) -> tuple[complex | float, complex | float]:
    """2φ − 1 ± 2√(φ(φ−1)); both on the unit circle for 0 ≤ φ ≤ 1, real with product 1 beyond."""
    f = float(phi)
    if f < 0:
        raise DomainError("φ must be nonnegative")
    disc = f * (f - 1)
    if disc >= 0:
        s = math.sqrt(disc)
        return 2 * f - 1 + 2 * s, 2 * f - 1 - 2 * s
    s = cmath.sqrt(disc)
    return complex(2 * f - 1) + 2 * s, complex(2 * f - 1) - 2 * s


def lambda_quadratic(phi: Fraction) -> IntPolynomial:
    """Integer multiple of λ² − (4φ − 2)λ + 1, whose roots are the two λ attached to φ."""
    phi = Fraction(phi)
    den = phi.denominator
    return IntPolynomial([den, -(4 * phi.numerator - 2 * den), den])


def phi_to_lambda_charpoly(p_phi: IntPolynomial, m: int, k: int) -> IntPolynomial:
    """χ_C from the characteristic polynomial of DF (size m) via φ = (λ+1)²/(4λ).

    Returns 4^m·λ^m·p((λ+1)²/(4λ)) divided by (λ+1)^{m−k}; for m < k the
    factor (λ+1)^{k−m} is multiplied instead.
    """
    deg = p_phi.degree
    out = IntPolynomial()
    sq = (LAM + 1) ** 2
    for i in range(deg + 1):
        c = p_phi[i]
        if c:
            out = out + c * (sq ** i) * (4 * LAM) ** (deg - i)
    if m >= k:
        out = out // ((LAM + 1) ** (m - k))
    else:
        out = out * (LAM + 1) ** (k - m)
    out = out.primitive()
    return out if out.leading > 0 else -out


# ---------------------------------------------------------------------------
# Jordan structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JordanBlocks:
    factor: IntPolynomial
    label: str
    multiplicity: int
    block_sizes: tuple[int, ...]


@dataclass(frozen=True)
class SpectralReport:
    charpoly: IntPolynomial
    cyclotomic: dict
    remainder: IntPolynomial
    blocks: tuple[JordanBlocks, ...]
    kind: str
    two_by_two: int
    phi_one_multiplicity: int
    real_roots: tuple = ()
    dominant: DominantPhi | None = None

    @property
    def diagonal(self) -> bool:
        return all(max(b.block_sizes, default=1) == 1 for b in self.blocks)


def _block_sizes(C: RationalMatrix, q: IntPolynomial, mult: int) -> tuple[int, ...]:
    """Jordan block sizes for the eigenvalues that are roots of the squarefree factor q."""
    n = C.shape[0]
    dq = q.degree
    M = C.eval_polynomial(q)
    ranks = [n]
    P = RationalMatrix.identity(n)
    for _ in range(mult):
        P = P @ M
        ranks.append(P.rank())
        if ranks[-1] == ranks[-2]:
            break
    # number of blocks of size ≥ j (per root) is (rank_{j−1} − rank_j)/deg q
    ge = [(ranks[j - 1] - ranks[j]) // dq for j in range(1, len(ranks))]
    sizes: list[int] = []
    for j in range(len(ge)):
        exactly = ge[j] - (ge[j + 1] if j + 1 < len(ge) else 0)
        sizes.extend([j + 1] * exactly)
    return tuple(sorted(sizes, reverse=True))


def jordan_structure(g: ValuedGraph) -> SpectralReport:
    g.require_tree()
    C = coxeter_matrix(g).matrix
    p = charpoly_exact(C)
    cyc, rem = factor_cyclotomic(p)
    blocks = []
    for d in sorted(cyc):
        q = cyclotomic_polynomial(d)
        blocks.append(JordanBlocks(q, f"Φ{d}", cyc[d], _block_sizes(C, q, cyc[d])))
    if rem.degree > 0:
        q = squarefree_part(rem)
        mult = rem.degree // q.degree
        blocks.append(JordanBlocks(q, "non-cyclotomic", mult, _block_sizes(C, q, mult)))
    two = sum(1 for b in blocks for s in b.block_sizes if s == 2)
    cd = cartan_data(g)
    if cd.m and cd.k:
        phi_one = root_multiplicity(charpoly_exact(cd.D @ cd.F), Fraction(1))
    else:
        phi_one = 0  # a single vertex: DF is empty
    form = classify_tits(cd)
    big = [s for b in blocks for s in b.block_sizes if s > 1]
    if not big:
        kind = "diagonal"
    elif form.kind == "nonnegative-corank-1" and big == [2]:
        kind = "affine-single-2x2"
    else:
        kind = f"{len(big)} blocks of size 2" if all(s == 2 for s in big) else "nontrivial"
    roots = tuple(isolate_real_roots(rem, Fraction(-10**6), Fraction(10**6))) if rem.degree > 0 else ()
    dominant = golden_pair(cd).dominant if form.kind == "indefinite" else None
    return SpectralReport(p, cyc, rem, tuple(blocks), kind, two, phi_one, roots, dominant)


# ---------------------------------------------------------------------------
# Eigen and adjoint vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenBlock:
    kind: str  # "one", "zero", "rational", "irrational"
    phi: Fraction | None
    factor: IntPolynomial
    vectors: tuple[tuple[Fraction, ...], ...]
    eigen: tuple[tuple[Fraction, ...], ...] = ()
    adjoint: tuple[tuple[Fraction, ...], ...] = ()


@dataclass(frozen=True)
class EigenBasis:
    C: RationalMatrix
    blocks: tuple[EigenBlock, ...]
    rank: int
    verified: bool
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def adjoint_count(self) -> int:
        return sum(len(b.adjoint) for b in self.blocks)


def _pad(x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(Fraction(a) for a in x) + tuple(Fraction(b) for b in y)


def bicolored_coxeter(cd: CartanData) -> RationalMatrix:
    """C = w1·w2 in block form, rows and columns ordered S1 then S2."""
    m, k = cd.m, cd.k
    I_m, I_k = RationalMatrix.identity(m), RationalMatrix.identity(k)
    w1 = block_matrix([[-I_m, cd.D.scale(-2)], [RationalMatrix.zeros(k, m), I_k]])
    w2 = block_matrix([[I_m, RationalMatrix.zeros(m, k)], [cd.F.scale(-2), -I_k]])
    return w1 @ w2


def eigenvector_basis(cd: CartanData) -> EigenBasis:
    """Eigenvectors and adjoint vectors of the bicolored C built from eigenvectors of DF.

    For rational φ ∉ {0, 1} the plane spanned by (X, 0) and (0, FX) is
    C-invariant with characteristic polynomial λ² − (4φ−2)λ + 1.  Irrational
    φ are grouped by their squarefree factor q and handled through ker q(DF),
    which keeps every vector exact.
    """
    C = bicolored_coxeter(cd)
    m, k = cd.m, cd.k
    DF = cd.D @ cd.F
    p = charpoly_exact(DF)
    zero_m, zero_k = (Fraction(0),) * m, (Fraction(0),) * k
    blocks: list[EigenBlock] = []
    notes: list[str] = []
    ok = True
    rest = p.primitive()
    for r in _rational_roots(p):
        mult = root_multiplicity(p, r)
        rest = rest // (IntPolynomial([-r.numerator, r.denominator]) ** mult)
        if r == 0:
            continue
        X_basis = (DF - RationalMatrix.identity(m).scale(r)).nullspace()
        if len(X_basis) != mult:
            notes.append(f"φ = {r}: geometric multiplicity {len(X_basis)} below algebraic {mult}")
        vecs, eig, adj = [], [], []
        for X in X_basis:
            FX = cd.F.apply(X)
            if r == 1:
                z1 = _pad(X, [-a for a in FX])
                zt = _pad([a / 4 for a in X], [a / 4 for a in FX])
                ok &= C.apply(z1) == z1
                ok &= C.apply(zt) == tuple(a + b for a, b in zip(z1, zt))
                eig.append(z1)
                adj.append(zt)
                vecs.extend([z1, zt])
            else:
                u, v = _pad(X, zero_k), _pad(zero_m, FX)
                Cu, Cv = C.apply(u), C.apply(v)
                ok &= Cu == tuple((4 * r - 1) * a - 2 * b for a, b in zip(u, v))
                ok &= Cv == tuple(2 * r * a - b for a, b in zip(u, v))
                vecs.extend([u, v])
        kind = "one" if r == 1 else "rational"
        blocks.append(EigenBlock(kind, r, lambda_quadratic(r), tuple(vecs), tuple(eig), tuple(adj)))
    if rest.degree > 0:
        q = squarefree_part(rest)
        X_basis = DF.eval_polynomial(q).nullspace()
        vecs = []
        for X in X_basis:
            FX = cd.F.apply(X)
            vecs.extend([_pad(X, zero_k), _pad(zero_m, FX)])
        blocks.append(EigenBlock("irrational", None, q, tuple(vecs)))
    # λ = −1 from φ = 0: (X, 0) with FX = 0 and (0, Y) with DY = 0
    zero_vecs = [_pad(X, zero_k) for X in cd.F.nullspace()] + [_pad(zero_m, Y) for Y in cd.D.nullspace()]
    for z in zero_vecs:
        ok &= C.apply(z) == tuple(-a for a in z)
    blocks.append(EigenBlock("zero", Fraction(0), IntPolynomial([1, 1]), tuple(zero_vecs), tuple(zero_vecs)))
    allv = [v for b in blocks for v in b.vectors]
    rank = RationalMatrix(allv).rank() if allv else 0
    return EigenBasis(C, tuple(blocks), rank, bool(ok), tuple(notes))


# ---------------------------------------------------------------------------
# Coxeter numbers, exponents and roots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoxeterNumbers:
    h: int | None
    h_a: int | None
    h_dual: int | None
    exponents: tuple[int, ...]
    orders: tuple[int, ...] = ()

    def poincare_polynomial(self) -> IntPolynomial:
        out = IntPolynomial.const(1)
        for m in self.exponents:
            out = out * (IntPolynomial.monomial(2 * m + 1) + 1)
        return out


def _kernel_sum(g: ValuedGraph) -> int:
    K = cartan_matrix(g)
    basis = K.nullspace()
    if len(basis) != 1:
        raise DiagramError(f"{g.name} is not an extended diagram")
    v = integer_vector(basis[0])
    return abs(sum(v))


def affine_partner(g: ValuedGraph) -> ValuedGraph:
    """The extended diagram whose extension vertex completes the Dynkin diagram g."""
    fam = g.meta.get("family")
    if fam == "A":
        n = g.meta["rank"]
        return build_catalog("A12~" if n == 1 else f"A{n}~")
    target = g.meta.get("affine")
    if not target:
        raise DiagramError(f"{g.name or 'graph'} has no affine partner in the catalog")
    return build_catalog(str(target))


def steinberg_orders(p: IntPolynomial) -> tuple[int, ...]:
    """Branch lengths p_i with χ = (λ−1)²·Π χ(A_{p_i − 1}), read off the cyclotomic factors."""
    cyc, rem = factor_cyclotomic(p)
    if rem.degree > 0:
        raise DomainError("polynomial has non-cyclotomic factors")
    cyc = dict(cyc)
    if cyc.get(1, 0) < 2:
        raise DomainError("expected a double eigenvalue 1")
    cyc[1] -= 2
    if cyc[1] == 0:
        del cyc[1]
    orders = []
    while cyc:
        d = max(cyc)
        for e in range(2, d + 1):
            if d % e == 0:
                if cyc.get(e, 0) == 0:
                    raise DomainError("factors do not group into path polynomials")
                cyc[e] -= 1
                if cyc[e] == 0:
                    del cyc[e]
        orders.append(d)
    if 1 in cyc:
        raise DomainError("unexpected extra eigenvalue 1")
    return tuple(sorted(orders, reverse=True))


def coxeter_numbers(g: ValuedGraph) -> CoxeterNumbers:
    """h, h_a, h^∨ and exponents for a Dynkin or extended Dynkin catalog entry."""
    if g.kind == "extended" and not g.cyclic:
        h = _kernel_sum(g)
        h_dual = _kernel_sum(dual_graph(g))
        p = coxeter_charpoly(g)
        cyc, rem = factor_cyclotomic(p)
        if rem.degree > 0:
            raise DomainError("affine Coxeter transformation with non-cyclotomic factor")
        orders = [d for d in cyc if d > 1]
        h_a = 1
        for d in orders:
            h_a = h_a * d // math.gcd(h_a, d)
        return CoxeterNumbers(h, h_a, h_dual, (), steinberg_orders(p))
    if g.kind == "dynkin":
        ext = affine_partner(g)
        h = _kernel_sum(ext)
        h_dual = _kernel_sum(dual_graph(ext)) if not ext.cyclic else h
        p = coxeter_charpoly(g)
        cyc, rem = factor_cyclotomic(p)
        if rem.degree > 0:
            raise DomainError("Dynkin Coxeter transformation with non-cyclotomic factor")
        exps: list[int] = []
        for d, mult in cyc.items():
            if h % d:
                raise DomainError(f"eigenvalue order {d} does not divide h = {h}")
            for j in range(1, d + 1):
                if math.gcd(j, d) == 1:
                    exps.extend([h * j // d] * mult)
        return CoxeterNumbers(h, None, h_dual, tuple(sorted(exps)))
    raise DiagramError(f"{g.name or 'graph'} is not a Dynkin or extended Dynkin catalog entry")


@dataclass(frozen=True)
class RootCount:
    total: int
    positive: int
    rank: int
    h: int
    hl_holds: bool
    highest_root: tuple[int, ...]


def positive_roots(g: ValuedGraph) -> list[tuple[int, ...]]:
    """All positive roots by closure of the simple roots under simple reflections."""
    cd = cartan_data(g)
    if classify_tits(cd).kind != "positive-definite":
        raise DomainError(f"{g.name or 'graph'} has an infinite root system")
    K = cartan_matrix(g)
    n = g.n
    refl = [reflection(K, i) for i in range(n)]
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    order = list(simple)
    k = 0
    while k < len(order):
        r = order[k]
        k += 1
        for i in range(n):
            s = tuple(int(x) for x in refl[i].apply(r))
            if all(x >= 0 for x in s) and any(s) and s not in seen:
                seen.add(s)
                order.append(s)
    return sorted(order, key=lambda r: (sum(r), r))


def root_system_count(g: ValuedGraph) -> RootCount:
    roots = positive_roots(g)
    total = 2 * len(roots)
    h = coxeter_numbers(g).h if g.kind == "dynkin" else None
    highest = max(roots, key=sum)
    return RootCount(total, len(roots), g.n, h, h is not None and h * g.n == total, highest)


@dataclass(frozen=True)
class RlhCheck:
    name: str
    r: int
    rank: int
    h: int
    target: str
    roots: int
    holds: bool


def rlh_check(g: ValuedGraph) -> RlhCheck:
    """r·l·h = |Δ(X_N)| for a twisted extended diagram, X_N taken from catalog metadata."""
    tw = g.meta.get("twist")
    if not tw:
        raise DiagramError(f"{g.name} carries no twisted-type metadata")
    r, target = tw
    h = _kernel_sum(g)
    rank = g.n - 1
    roots = root_system_count(build_catalog(target)).total
    return RlhCheck(g.name, r, rank, h, target, roots, r * rank * h == roots)


# ---------------------------------------------------------------------------
# Fixed points through Chebyshev recursions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChebyshevFixedPoints:
    p: int
    f: RationalMatrix
    g: RationalMatrix
    dim_ker_f: int
    dim_fixed: int
    dim_ker_g: int
    dim_anti_fixed: int

    @property
    def agrees(self) -> bool:
        return self.dim_ker_f == self.dim_fixed and self.dim_ker_g == self.dim_anti_fixed


def chebyshev_sequences(cd: CartanData, p: int) -> tuple[list[RationalMatrix], list[RationalMatrix]]:
    """f_0 = 0, f_1 = K; g_0 = 2I, g_1 = 2β; both continue by X_{j+2} = 2β·X_{j+1} − X_j with β = ½K − I."""
    n = cd.n
    eye = RationalMatrix.identity(n)
    beta = cd.K.scale(Fraction(1, 2)) - eye
    two_beta = beta.scale(2)
    f = [RationalMatrix.zeros(n, n), cd.K]
    g = [eye.scale(2), two_beta]
    while len(f) <= p:
        f.append(two_beta @ f[-1] - f[-2])
        g.append(two_beta @ g[-1] - g[-2])
    return f[: p + 1], g[: p + 1]


def chebyshev_fixed_points(cd: CartanData, p: int) -> ChebyshevFixedPoints:
    if p < 0:
        raise DomainError("p must be nonnegative")
    fs, gs = chebyshev_sequences(cd, p)
    n = cd.n
    C = bicolored_coxeter(cd)
    Cp = C ** p
    eye = RationalMatrix.identity(n)
    fixed = n - (Cp - eye).rank()
    anti = n - (Cp + eye).rank()
    return ChebyshevFixedPoints(p, fs[p], gs[p], n - fs[p].rank(), fixed, n - gs[p].rank(), anti)
