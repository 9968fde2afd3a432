"""Binary polyhedral groups, their characters, and the McKay and Slodowy correspondences."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cartan import cartan_matrix
from .coxeter import affine_An_charpoly, coxeter_charpoly, reflection
from .diagram import DiagramError, ValuedGraph, bicolor, build_catalog, remove_vertex
from .exactmath import (
    CyclotomicNumber,
    DomainError,
    IntPolynomial,
    RationalMatrix,
    poly_gcd,
    sqrt2,
)
from .spectral import affine_partner, coxeter_numbers, positive_roots

Matrix2 = tuple  # (p, q, r, s) for [[p, q], [r, s]] over CyclotomicNumber


# ---------------------------------------------------------------------------
# 2×2 matrices over a cyclotomic field
# ---------------------------------------------------------------------------


def _mul(x: Matrix2, y: Matrix2) -> Matrix2:
    p, q, r, s = x
    a, b, c, d = y
    return (p * a + q * c, p * b + q * d, r * a + s * c, r * b + s * d)


def _inv(x: Matrix2) -> Matrix2:
    # determinant one
    p, q, r, s = x
    return (s, -q, -r, p)


def _trace(x: Matrix2) -> CyclotomicNumber:
    return x[0] + x[3]


def _key(x: Matrix2) -> tuple:
    return tuple(e.coordinates for e in x)


def _lift(x: Matrix2, m: int) -> Matrix2:
    return tuple(e.lift(m) for e in x)


def _z(m: int, k: int) -> CyclotomicNumber:
    return CyclotomicNumber.zeta(m, k)


def _c(m: int, q) -> CyclotomicNumber:
    return CyclotomicNumber.rational(m, q)


def _identity(m: int) -> Matrix2:
    return (_c(m, 1), _c(m, 0), _c(m, 0), _c(m, 1))


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryPolyhedralGroup:
    """A finite subgroup of SU(2) given by its elements as exact 2×2 matrices."""

    name: str
    kind: str
    parameter: int | None
    conductor: int
    elements: tuple
    generators: Mapping[str, Matrix2]
    letters: Mapping[str, Matrix2]
    classes: tuple[tuple[int, ...], ...]
    _lookup: Mapping[tuple, int] = field(repr=False, compare=False)
    _class_of: tuple[int, ...] = field(repr=False, compare=False)
    _words: tuple[tuple[str, ...], ...] = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def representative(self, k: int) -> Matrix2:
        return self.elements[self.classes[k][0]]

    def index(self, x: Matrix2) -> int:
        conductor = self.conductor
        try:
            x = _lift(x, conductor)
        except DomainError:
            raise DomainError("matrix entries do not lie in the group's field")
        i = self._lookup.get(_key(x))
        if i is None:
            raise DomainError("matrix is not an element of the group")
        return i

    def contains(self, x: Matrix2) -> bool:
        try:
            self.index(x)
        except DomainError:
            return False
        return True

    def class_index(self, x: Matrix2) -> int:
        return self._class_of[self.index(x)]

    def evaluate(self, word: str) -> Matrix2:
        """Product of letters such as ``"a^3 b c^2"``; ``"-1"`` and ``"1"`` are allowed."""
        m = self.conductor
        out = _identity(m)
        for tok in word.split():
            if tok == "1":
                continue
            if tok == "-1":
                out = tuple(-e for e in out)
                continue
            name, _, power = tok.partition("^")
            if name not in self.letters:
                raise DomainError(f"unknown letter {name!r}")
            k = int(power) if power else 1
            base = self.letters[name] if k >= 0 else _inv(self.letters[name])
            for _ in range(abs(k)):
                out = _mul(out, base)
        return out

    def class_of_word(self, word: str) -> int:
        return self.class_index(self.evaluate(word))

    def element_order(self, i: int) -> int:
        x = self.elements[i]
        e = self._lookup[_key(_identity(self.conductor))]
        k, y = 1, x
        while self._lookup[_key(y)] != e:
            y = _mul(y, x)
            k += 1
        return k


def _close(name: str, kind: str, parameter: int | None, m: int, gens: dict, letters: dict,
           expected: int) -> BinaryPolyhedralGroup:
    ident = _identity(m)
    elements = [ident]
    words: list[tuple[str, ...]] = [()]
    lookup = {_key(ident): 0}
    k = 0
    while k < len(elements):
        x = elements[k]
        for gname, gm in gens.items():
            y = _mul(x, gm)
            ky = _key(y)
            if ky not in lookup:
                lookup[ky] = len(elements)
                elements.append(y)
                words.append(words[k] + (gname,))
                if len(elements) > expected:
                    raise DomainError(f"closure of {name} exceeds the expected order {expected}")
        k += 1
    if len(elements) != expected:
        raise DomainError(f"closure of {name} has {len(elements)} elements, expected {expected}")
    # conjugacy classes: orbits under conjugation by the generators
    gen_pairs = [(gm, _inv(gm)) for gm in gens.values()]
    class_of = [-1] * len(elements)
    classes = []
    for i in range(len(elements)):
        if class_of[i] >= 0:
            continue
        cid = len(classes)
        orbit = [i]
        class_of[i] = cid
        j = 0
        while j < len(orbit):
            x = elements[orbit[j]]
            for gm, gi in gen_pairs:
                t = lookup[_key(_mul(_mul(gm, x), gi))]
                if class_of[t] < 0:
                    class_of[t] = cid
                    orbit.append(t)
            j += 1
        classes.append(tuple(sorted(orbit)))
    return BinaryPolyhedralGroup(name, kind, parameter, m, tuple(elements), dict(gens), dict(letters),
                                 tuple(classes), lookup, tuple(class_of), tuple(words))


def _springer_letters(m: int) -> dict:
    """a = diag(ε, ε⁻¹), b = [[0, i], [i, 0]], c = (1/√2)[[ε⁻¹, ε⁻¹], [−ε, ε]] with ε = e^{πi/4}."""
    step = m // 8
    eps = lambda k: _z(m, step * k)
    half_root2 = (eps(1) + eps(7)) / 2  # 1/√2 = √2/2
    zero = _c(m, 0)
    a = (eps(1), zero, zero, eps(7))
    b = (zero, eps(2), eps(2), zero)
    c = (half_root2 * eps(7), half_root2 * eps(7), -(half_root2 * eps(1)), half_root2 * eps(1))
    return {"a": a, "b": b, "c": c}


def build_group(name: str) -> BinaryPolyhedralGroup:
    """Accepts ``Z/n``, ``BD<n>`` (binary dihedral of order 4n), ``T``, ``O`` and ``J``."""
    key = name.strip()
    if key.startswith(("Z/", "BD")) and not key[2:].isdigit():
        raise DomainError(f"group {name!r} needs a numeric parameter")
    if key.startswith("Z/"):
        n = int(key[2:])
        if n < 1:
            raise DomainError("cyclic order must be positive")
        m = max(n, 1)
        g = (_z(m, 1), _c(m, 0), _c(m, 0), _z(m, -1))
        return _close(f"Z/{n}", "cyclic", n, m, {"g": g}, {"g": g}, n)
    if key.startswith("BD"):
        n = int(key[2:])
        if n < 2:
            raise DomainError("binary dihedral parameter must be at least 2")
        m = math.lcm(2 * n, 4)
        zero = _c(m, 0)
        a = (_z(m, m // (2 * n)), zero, zero, _z(m, -(m // (2 * n))))
        i = _z(m, m // 4)
        b = (zero, i, i, zero)
        return _close(f"BD{n}", "binary-dihedral", n, m, {"a": a, "b": b}, {"a": a, "b": b}, 4 * n)
    if key == "O":
        letters = _springer_letters(8)
        return _close("O", "O", None, 8, letters, letters, 48)
    if key == "T":
        letters = _springer_letters(8)
        a2 = _mul(letters["a"], letters["a"])
        return _close("T", "T", None, 8, {"a2": a2, "b": letters["b"], "c": letters["c"]}, letters, 24)
    if key == "J":
        m = 20
        eps = lambda k: _z(m, 4 * k)  # fifth roots of unity
        zero = _c(m, 0)
        root5 = 2 * (eps(1) + eps(4)) + 1
        s = (eps(3), zero, zero, eps(2))
        u = tuple(x / root5 for x in (-(eps(1) - eps(4)), eps(2) - eps(3), eps(2) - eps(3), eps(1) - eps(4)))
        gens = {"s": s, "u": u}
        return _close("J", "J", None, m, gens, gens, 120)
    raise DomainError(f"unknown group {name!r}; use Z/n, BD<n>, T, O or J")


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterTable:
    group: BinaryPolyhedralGroup
    conductor: int
    class_sizes: tuple[int, ...]
    characters: tuple[tuple[CyclotomicNumber, ...], ...]
    natural: int | None

    def inner(self, u: Sequence[CyclotomicNumber], v: Sequence[CyclotomicNumber]) -> CyclotomicNumber:
        return class_inner(self.class_sizes, self.conductor, u, v)

    def degrees(self) -> tuple[int, ...]:
        return tuple(int(row[0].rational_value()) for row in self.characters)

    def decompose(self, chi: Sequence[CyclotomicNumber]) -> tuple[int, ...]:
        """Multiplicities of the irreducibles in a character; raises if not a character."""
        out = []
        rest = list(chi)
        for row in self.characters:
            c = self.inner(chi, row)
            if not c.is_rational() or c.rational_value().denominator != 1 or c.rational_value() < 0:
                raise DomainError("class function is not a character")
            k = int(c.rational_value())
            out.append(k)
            rest = [x - k * y for x, y in zip(rest, row)]
        if any(not x.is_zero() for x in rest):
            raise DomainError("class function is not a combination of irreducibles")
        return tuple(out)

    def product(self, u, v) -> tuple[CyclotomicNumber, ...]:
        return tuple(x * y for x, y in zip(u, v))

    def identity_class(self) -> int:
        return self.group.class_index(_identity(self.group.conductor))


def class_inner(sizes: Sequence[int], m: int, u, v) -> CyclotomicNumber:
    total = sum(sizes)
    acc = _c(m, 0)
    for s, x, y in zip(sizes, u, v):
        acc = acc + x * y.conjugate() * s
    return acc / total


def _linear_characters(G: BinaryPolyhedralGroup) -> list[dict[int, int]]:
    """Homomorphisms G → μ_L as exponent assignments on elements, found through the closure tree."""
    orders = {name: None for name in G.generators}
    ident_key = _key(_identity(G.conductor))
    for name, gm in G.generators.items():
        k, y = 1, gm
        while _key(y) != ident_key:
            y = _mul(y, gm)
            k += 1
        orders[name] = k
    L = 1
    for k in orders.values():
        L = math.lcm(L, k)
    names = list(G.generators)
    choices = [[j * (L // orders[nm]) for j in range(orders[nm])] for nm in names]
    # products x·g for every element and generator
    edges = []
    for i, x in enumerate(G.elements):
        for nm in names:
            edges.append((i, nm, G._lookup[_key(_mul(x, G.generators[nm]))]))
    found = []

    def rec(pos: int, assign: dict):
        if pos == len(names):
            val = [sum(assign[w] for w in word) % L for word in G._words]
            if all((val[i] + assign[nm]) % L == val[j] for i, nm, j in edges):
                found.append((L, val))
            return
        for e in choices[pos]:
            assign[names[pos]] = e
            rec(pos + 1, assign)

    rec(0, {})
    return found


def _value_conductor(linear: list) -> int:
    out = 1
    for L, val in linear:
        for e in val:
            out = math.lcm(out, L // math.gcd(L, e) if e else 1)
    return out


def _root_of_unity(m: int, e: int, L: int) -> CyclotomicNumber:
    """ζ_L^e inside Q(ζ_m); the order of the value must divide m."""
    if e % L == 0:
        return _c(m, 1)
    g = math.gcd(L, e)
    d = L // g
    return _z(m, (e // g) * (m // d))


def character_table(G: BinaryPolyhedralGroup) -> CharacterTable:
    """Irreducible characters: linear ones from homomorphisms to roots of unity, the rest by
    decomposing tensor products and Galois conjugates of characters already found."""
    linear = _linear_characters(G)
    m = math.lcm(G.conductor, _value_conductor(linear))
    sizes = G.class_sizes
    reps = [c[0] for c in G.classes]
    irr: list[tuple[CyclotomicNumber, ...]] = []
    for L, val in sorted(linear, key=lambda lv: [e * (m // lv[0]) % m for e in lv[1]]):
        row = tuple(_root_of_unity(m, val[i], L) for i in reps)
        if row not in irr:
            irr.append(row)
    natural_row = tuple(_trace(G.elements[i]).lift(m) for i in reps)
    target = G.order
    natural_index = None

    def peel(chi):
        rest = list(chi)
        for row in irr:
            c = class_inner(sizes, m, rest, row)
            if not c.is_zero():
                rest = [x - c * y for x, y in zip(rest, row)]
        return rest

    def try_add(chi) -> bool:
        rest = peel(chi)
        if all(x.is_zero() for x in rest):
            return False
        n = class_inner(sizes, m, rest, rest)
        if n == 1:
            if rest[0].rational_value() < 0:
                rest = [-x for x in rest]
            irr.append(tuple(rest))
            return True
        return False

    def total() -> int:
        return sum(int(r[0].rational_value()) ** 2 for r in irr)

    try_add(natural_row)
    if class_inner(sizes, m, natural_row, natural_row) == 1:
        natural_index = irr.index(natural_row) if natural_row in irr else None
    units = [k for k in range(1, m) if math.gcd(k, m) == 1]
    guard = 0
    while total() < target:
        guard += 1
        if guard > 50:
            raise DomainError(f"character construction for {G.name} stalled")
        grew = False
        snapshot = list(irr)
        for i, u in enumerate(snapshot):
            for v in snapshot[i:]:
                grew |= try_add(tuple(x * y for x, y in zip(u, v)))
            for k in units:
                grew |= try_add(tuple(x.galois(k) for x in u))
        grew |= try_add(tuple(x * y for x, y in zip(natural_row, natural_row)))
        if not grew:
            raise DomainError(f"character construction for {G.name} stalled")
    if total() != target:
        raise DomainError("degree sum mismatch")
    table = CharacterTable(G, m, sizes, tuple(irr), natural_index)
    _check_orthogonality(table)
    return table


def _check_orthogonality(t: CharacterTable) -> None:
    for i, u in enumerate(t.characters):
        for j, v in enumerate(t.characters):
            if t.inner(u, v) != (1 if i == j else 0):
                raise DomainError("constructed characters fail row orthogonality")


def column_orthogonality(t: CharacterTable) -> bool:
    """Σ_χ χ(g)·conj χ(h) = δ·|G|/|Cl(g)| for class representatives g, h."""
    n = len(t.class_sizes)
    for a in range(n):
        for b in range(n):
            acc = _c(t.conductor, 0)
            for row in t.characters:
                acc = acc + row[a] * row[b].conjugate()
            want = Fraction(t.group.order, t.class_sizes[a]) if a == b else 0
            if acc != want:
                return False
    return True


# Class words and character recipes following the usual Springer generators.
O_CLASS_WORDS = ("1", "-1", "a b", "b", "c^2", "c", "a", "a^3")
T_CLASS_WORDS = ("1", "-1", "b", "c", "c^2", "-1 c", "-1 c^2")


def labelled_table(t: CharacterTable) -> tuple[tuple[str, ...], tuple[str, ...], tuple[tuple[CyclotomicNumber, ...], ...]]:
    """Rows ρ0…ρ7 (for O) or τ0…τ6 (for T), columns in the standard class order.

    Rows are identified from structural recipes: trivial and sign characters,
    the defining representation, its twists, and the remaining constituents
    by degree and kernel.
    """
    G = t.group
    if G.kind not in ("O", "T"):
        raise DomainError("labelled tables exist for O and T only")
    words = O_CLASS_WORDS if G.kind == "O" else T_CLASS_WORDS
    cols = [G.class_of_word(w) for w in words]
    rows = t.characters
    deg = t.degrees()
    minus = G.class_of_word("-1")
    natural = tuple(_trace(G.representative(k)).lift(t.conductor) for k in range(len(G.classes)))
    prod = t.product

    def find(pred) -> int:
        hits = [i for i, r in enumerate(rows) if pred(r)]
        if len(hits) != 1:
            raise DomainError("character recipe is ambiguous")
        return hits[0]

    def equal(chi):
        return lambda r: r == tuple(chi)

    if G.kind == "O":
        r0 = find(lambda r: all(x == 1 for x in r))
        r1 = find(lambda r: r[0] == 1 and r != rows[r0])
        r3 = find(equal(natural))
        r4 = find(equal(prod(rows[r3], rows[r1])))
        r2 = find(lambda r: r[0] == 2 and r[minus] == 2)
        sq = t.decompose(prod(rows[r3], rows[r3]))
        r5 = find(lambda r: r[0] == 3 and sq[rows.index(r)] == 1)
        r6 = find(equal(prod(rows[r5], rows[r1])))
        r7 = find(lambda r: r[0] == 4)
        order = [r0, r1, r2, r3, r4, r5, r6, r7]
        labels = tuple(f"ρ{i}" for i in range(8))
    else:
        omega = _z(t.conductor, t.conductor // 3)
        cc = G.class_of_word("c")
        r0 = find(lambda r: all(x == 1 for x in r))
        r1 = find(lambda r: r[0] == 1 and r[cc] == omega)
        r2 = find(lambda r: r[0] == 1 and r[cc] == omega * omega)
        r3 = find(equal(natural))
        r4 = find(equal(prod(rows[r3], rows[r1])))
        r5 = find(equal(prod(rows[r3], rows[r2])))
        r6 = find(lambda r: r[0] == 3)
        order = [r0, r1, r2, r3, r4, r5, r6]
        labels = tuple(f"τ{i}" for i in range(7))
    grid = tuple(tuple(rows[i][c] for c in cols) for i in order)
    return labels, words, grid


def cell_text(x: CyclotomicNumber, ascii_only: bool = False) -> str:
    """Table notation for the character values that occur for O and T."""
    if x.is_rational():
        return str(x.rational_value())
    m = x.conductor
    names = []
    if m % 8 == 0:
        names.append((sqrt2(m), "sqrt2" if ascii_only else "√2"))
    if m % 3 == 0:
        w = _z(m, m // 3)
        names += [(w, "w" if ascii_only else "ω"), (w * w, "w^2" if ascii_only else "ω²")]
    for value, name in names:
        if x == value:
            return name
        if x == -value:
            return "-" + name
    raise DomainError(f"no table notation for {x!r}")


# ---------------------------------------------------------------------------
# McKay and Slodowy matrices
# ---------------------------------------------------------------------------


def match_cartan(M: RationalMatrix, g: ValuedGraph) -> dict[int, str] | None:
    """A bijection i ↦ vertex with M[i, j] = K(g)[σi, σj], or None."""
    n = M.shape[0]
    if n != g.n:
        return None
    K = cartan_matrix(g)

    def sig(A, i):
        return (sorted(A[i, j] for j in range(n)), sorted(A[j, i] for j in range(n)))

    cand = [[v for v in range(n) if sig(K, v) == sig(M, i)] for i in range(n)]
    assign: list[int] = [-1] * n
    used = [False] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        for v in cand[i]:
            if used[v]:
                continue
            if all(M[i, j] == K[v, assign[j]] and M[j, i] == K[assign[j], v] for j in range(i)):
                assign[i] = v
                used[v] = True
                if rec(i + 1):
                    return True
                used[v] = False
        return False

    if not rec(0):
        return None
    return {i: g.vertices[assign[i]] for i in range(n)}


@dataclass(frozen=True)
class McKayResult:
    matrix: RationalMatrix
    diagram: str
    correspondence: Mapping[int, str]
    faithful: int | None


def mckay_target(G: BinaryPolyhedralGroup) -> str:
    if G.kind == "cyclic":
        return f"A{G.parameter - 1}~"
    if G.kind == "binary-dihedral":
        return f"D{G.parameter + 2}~"
    return {"T": "E6~", "O": "E7~", "J": "E8~"}[G.kind]


def mckay_matrix(t: CharacterTable, faithful: int | None = None) -> McKayResult:
    """a_jk = ⟨χ_f·χ_j, χ_k⟩; with ``faithful=None`` χ_f is the trace of the defining representation."""
    G = t.group
    if G.kind == "cyclic" and G.parameter < 2:
        raise DomainError("the McKay graph needs a group of order at least 2")
    if faithful is None:
        chi = tuple(_trace(G.representative(k)).lift(t.conductor) for k in range(len(G.classes)))
    else:
        chi = t.characters[faithful]
        e = t.identity_class()
        if chi[0] != 2:
            raise DomainError("chosen irreducible is not 2-dimensional")
        if any(chi[k] == 2 for k in range(len(chi)) if k != e):
            raise DomainError("chosen irreducible is not faithful")
    rows = [t.decompose(t.product(chi, row)) for row in t.characters]
    A = RationalMatrix(rows)
    name = mckay_target(G)
    g = build_catalog(name)
    two = RationalMatrix.identity(A.shape[0]).scale(2)
    corr = match_cartan(two - A, g)
    if corr is None:
        raise DomainError(f"2I − A does not match the Cartan matrix of {name}")
    return McKayResult(A, name, corr, faithful)


def restrict(t_big: CharacterTable, t_small: CharacterTable) -> list[tuple[CyclotomicNumber, ...]]:
    """Restrictions of the big group's irreducibles to the subgroup, class by class."""
    H, G = t_small.group, t_big.group
    m = math.lcm(t_big.conductor, t_small.conductor)
    out = []
    emb = []
    for k in range(len(H.classes)):
        x = H.representative(k)
        mm = math.lcm(H.conductor, G.conductor)
        try:
            emb.append(G.class_index(_lift(x, mm)))
        except DomainError:
            raise DomainError("subgroup class representative is not in the big group")
    for row in t_big.characters:
        out.append(tuple(row[emb[k]].lift(m) for k in range(len(H.classes))))
    return out


def induce(t_big: CharacterTable, t_small: CharacterTable, chi: Sequence[CyclotomicNumber]) -> tuple[CyclotomicNumber, ...]:
    """χ↑(g) = (1/|H|) Σ_{x ∈ G, x g x⁻¹ ∈ H} χ(x g x⁻¹), evaluated on class representatives of G."""
    G, H = t_big.group, t_small.group
    m = math.lcm(t_big.conductor, t_small.conductor)
    mm = math.lcm(G.conductor, H.conductor)
    out = []
    for k in range(len(G.classes)):
        g = G.representative(k)
        acc = _c(m, 0)
        for x in G.elements:
            y = _mul(_mul(x, g), _inv(x))
            y = _lift(y, mm)
            if H.contains(y):
                acc = acc + chi[H.class_index(y)].lift(m)
        out.append(acc / H.order)
    return tuple(out)


@dataclass(frozen=True)
class SlodowyResult:
    restricted_labels: tuple[str, ...]
    induced_labels: tuple[str, ...]
    A: RationalMatrix
    A_dual: RationalMatrix
    diagram: str
    diagram_dual: str
    correspondence: Mapping[int, str]
    correspondence_dual: Mapping[int, str]
    induced: Mapping[str, tuple[int, ...]]
    reciprocity: bool


def _coefficients(chi, basis, inner) -> tuple[int, ...]:
    out = []
    rest = list(chi)
    for b in basis:
        c = inner(chi, b) / inner(b, b)
        if not c.is_rational():
            raise DomainError("decomposition coefficient is not rational")
        q = c.rational_value()
        out.append(q)
        rest = [x - q * y for x, y in zip(rest, b)]
    if any(not x.is_zero() for x in rest):
        raise DomainError("product is not a combination of the given characters")
    if any(q.denominator != 1 or q < 0 for q in out):
        raise DomainError("non-integral decomposition")
    return tuple(int(q) for q in out)


def slodowy_matrices(small: str = "T", big: str = "O") -> SlodowyResult:
    """Slodowy matrices for the pair T ◁ O.

    Rows of Ã follow ρ2↓, ρ7↓, ρ5↓, ρ3↓, ρ0↓ and rows of Ã^∨ follow
    τ2↑, τ5↑, τ6↑, τ3↑, τ0↑; each row holds the decomposition of the
    faithful representation tensored with that row's character.
    """
    if (small, big) != ("T", "O"):
        raise DomainError("only the pair T ◁ O is supported")
    H, G = build_group(small), build_group(big)
    tH, tG = character_table(H), character_table(G)
    rowsG = _rows_by_label(tG)
    rowsH = _rows_by_label(tH)
    m = math.lcm(tG.conductor, tH.conductor)
    up = lambda row: tuple(x.lift(m) for x in row)
    restricted_all = dict(zip(rowsG, restrict(_reordered(tG, rowsG), tH)))
    innerH = lambda u, v: class_inner(tH.class_sizes, m, u, v)
    innerG = lambda u, v: class_inner(tG.class_sizes, m, u, v)
    r_labels = ("ρ2", "ρ7", "ρ5", "ρ3", "ρ0")
    r_basis = [restricted_all[lbl] for lbl in r_labels]
    faithful_H = up(rowsH["τ3"])
    A_rows = [_coefficients(tuple(x * y for x, y in zip(faithful_H, b)), r_basis, innerH) for b in r_basis]
    A = RationalMatrix(A_rows)
    # induced characters: direct formula, cross-checked by reciprocity
    induced = {lbl: induce(tG, tH, up(row)) for lbl, row in rowsH.items()}
    reciprocity = all(
        innerG(up(rowsG[p]), induced[q]) == innerH(restricted_all[p], up(rowsH[q]))
        for p in rowsG for q in rowsH
    )
    if not reciprocity:
        raise DomainError("Frobenius reciprocity fails")
    i_labels = ("τ2", "τ5", "τ6", "τ3", "τ0")
    i_basis = [induced[lbl] for lbl in i_labels]
    faithful_G = up(rowsG["ρ3"])
    D_rows = [_coefficients(tuple(x * y for x, y in zip(faithful_G, b)), i_basis, innerG) for b in i_basis]
    A_dual = RationalMatrix(D_rows)
    two = RationalMatrix.identity(5).scale(2)
    corr = match_cartan(two - A, build_catalog("F42~"))
    corr_d = match_cartan(two - A_dual, build_catalog("F41~"))
    if corr is None or corr_d is None:
        raise DomainError("Slodowy matrices do not match the extended F4 diagrams")
    ind_decomp = {lbl: tuple(int(innerG(induced[lbl], up(rowsG[p])).rational_value()) for p in sorted(rowsG))
                  for lbl in sorted(induced)}
    return SlodowyResult(r_labels, i_labels, A, A_dual, "F42~", "F41~", corr, corr_d, ind_decomp, reciprocity)


def _rows_by_label(t: CharacterTable) -> dict[str, tuple[CyclotomicNumber, ...]]:
    """Labelled rows in the group's own class order."""
    labels, words, grid = labelled_table(t)
    G = t.group
    cols = [G.class_of_word(w) for w in words]
    out = {}
    for lbl, row in zip(labels, grid):
        full = [None] * len(G.classes)
        for c, v in zip(cols, row):
            full[c] = v
        out[lbl] = tuple(full)
    return out


def _reordered(t: CharacterTable, rows: Mapping[str, tuple]) -> CharacterTable:
    return CharacterTable(t.group, t.conductor, t.class_sizes, tuple(rows.values()), None)


# ---------------------------------------------------------------------------
# Poincaré series
# ---------------------------------------------------------------------------


def molien_series(G: BinaryPolyhedralGroup, N: int) -> tuple[int, ...]:
    """(1/|G|) Σ_g 1/det(1 − g t) to order N.

    With det g = 1 each term is 1/(1 − tr(g) t + t²), whose coefficients obey
    c_k = tr(g)·c_{k−1} − c_{k−2}.
    """
    if N < 0:
        raise DomainError("truncation order must be nonnegative")
    m = G.conductor
    acc = [_c(m, 0) for _ in range(N + 1)]
    for cls in G.classes:
        tr = _trace(G.elements[cls[0]])
        prev, cur = _c(m, 0), _c(m, 1)
        for k in range(N + 1):
            acc[k] = acc[k] + cur * len(cls)
            prev, cur = cur, tr * cur - prev
    out = []
    for x in acc:
        v = (x / G.order)
        if not v.is_rational() or v.rational_value().denominator != 1:
            raise DomainError("Molien coefficient is not an integer")
        out.append(int(v.rational_value()))
    return tuple(out)


def _series_mul(a: Sequence[int], b: Sequence[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def rational_series(num: IntPolynomial, den: IntPolynomial, N: int) -> tuple[int, ...]:
    """Taylor coefficients of num/den at 0 up to order N."""
    inv = den.truncated_series_inverse(N + 1)
    coeffs = list(num.coeffs) + [0] * (N + 1)
    out = []
    for k in range(N + 1):
        s = sum((Fraction(coeffs[i]) * inv[k - i] for i in range(k + 1)), Fraction(0))
        if s.denominator != 1:
            raise DomainError("series has non-integral coefficients")
        out.append(int(s))
    return tuple(out)


def kkgv_series(a: int, b: int, h: int, N: int) -> tuple[int, ...]:
    """(1 + t^h)/((1 − t^a)(1 − t^b))."""
    t = IntPolynomial.monomial
    return rational_series(t(h) + 1, (1 - t(a)) * (1 - t(b)), N)


def kostant_numbers_from_series(series: Sequence[int]) -> tuple[int, int, int]:
    """(a, b, h): a and b are the first two generator degrees, h = a + b − 2."""
    N = len(series) - 1
    a = next((k for k in range(1, N + 1) if series[k]), None)
    if a is None:
        raise DomainError("series too short to read Kostant numbers")
    shifted = [series[k] - (series[k - a] if k >= a else 0) for k in range(N + 1)]
    b = next((k for k in range(1, N + 1) if shifted[k]), None)
    if b is None:
        raise DomainError("series too short to read Kostant numbers")
    return a, b, a + b - 2


@dataclass(frozen=True)
class EbelingQuotient:
    dynkin: str
    affine: str
    numerator: IntPolynomial  # in λ = t²
    denominator: IntPolynomial

    def series(self, N: int) -> tuple[int, ...]:
        return rational_series(self.numerator.substitute_power(2), self.denominator.substitute_power(2), N)


def ebeling_poincare(g: ValuedGraph) -> EbelingQuotient:
    """χ(g)(λ)/χ(g_a)(λ) in lowest terms, with the constant term of the denominator positive.

    For A_n the affine partner is a cycle; its Coxeter polynomial depends on
    the orientation class, and the balanced class is used.
    """
    ext = affine_partner(g)
    p = coxeter_charpoly(g)
    if ext.cyclic:
        # the cycle with n + 1 vertices: take the balanced class k = ⌈(n + 1)/2⌉
        n = ext.n - 1
        q = affine_An_charpoly(n, (n + 2) // 2)
    else:
        q = coxeter_charpoly(ext)
    d = poly_gcd(p, q)
    p, q = p // d, q // d
    if q.coeffs[0] < 0:
        p, q = -p, -q
    return EbelingQuotient(g.name, ext.name, p, q)


@dataclass(frozen=True)
class GeneratingFunctionReport:
    vertices: tuple[str, ...]
    extension: str
    series: Mapping[str, tuple[int, ...]]
    numerators: Mapping[str, IntPolynomial]
    a: int
    b: int
    h: int

    @property
    def denominator(self) -> IntPolynomial:
        t = IntPolynomial.monomial
        return (1 - t(self.a)) * (1 - t(self.b))


def kostant_vectors(B: RationalMatrix, start: int, N: int) -> list[tuple[int, ...]]:
    """v_0 = e_start, v_1 = B v_0, v_{n+1} = B v_n − v_{n−1}."""
    n = B.shape[0]
    v0 = tuple(int(i == start) for i in range(n))
    vs = [v0]
    if N >= 1:
        vs.append(tuple(int(x) for x in B.apply(v0)))
    while len(vs) <= N:
        nxt = tuple(int(x) - y for x, y in zip(B.apply(vs[-1]), vs[-2]))
        if any(x < 0 for x in nxt):
            raise DomainError(f"negative multiplicity at step {len(vs)}")
        vs.append(nxt)
    return vs


def kostant_multiplicities(g: ValuedGraph, N: int, operator: RationalMatrix | None = None) -> GeneratingFunctionReport:
    """Multiplicity series of every vertex of an extended diagram.

    The default operator is (2I − K)ᵀ: multiplicities of a tensor product with
    the faithful representation are read down the columns of the tensor
    matrix, which matters only for the multiply-laced diagrams.
    """
    if g.extension_vertex is None:
        raise DiagramError("diagram has no extension vertex")
    if N < 1:
        raise DomainError("truncation order must be at least 1")
    n = g.n
    if operator is None:
        operator = (RationalMatrix.identity(n).scale(2) - cartan_matrix(g)).transpose()
    ext = g.index(g.extension_vertex)
    vs = kostant_vectors(operator, ext, N)
    series = {v: tuple(vec[i] for vec in vs) for i, v in enumerate(g.vertices)}
    a, b, h = kostant_numbers_from_series(series[g.extension_vertex])
    t = IntPolynomial.monomial
    den = (1 - t(a)) * (1 - t(b))
    den_coeffs = list(den.coeffs)
    numerators = {}
    for v, s in series.items():
        prod = _series_mul(s, den_coeffs, N)
        if any(prod[k] for k in range(h + 1, N + 1)):
            raise DomainError(f"series at {v} does not close with numerator degree ≤ h")
        numerators[v] = IntPolynomial(prod[: h + 1])
    if numerators[g.extension_vertex] != t(h) + 1:
        raise DomainError("extension component differs from (1 + t^h)/((1 − t^a)(1 − t^b))")
    return GeneratingFunctionReport(g.vertices, g.extension_vertex, series, numerators, a, b, h)


# ---------------------------------------------------------------------------
# Orbit of the Coxeter transformation on the highest root
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitReport:
    vertices: tuple[str, ...]
    h: int
    highest_root: tuple[int, ...]
    orbit: tuple[tuple[int, ...], ...]  # τ^{(0)}β … τ^{(h−1)}β
    assembling: tuple[tuple[int, ...], ...]  # z_1 … z_{h−1}
    special_vertex: str
    numerators: Mapping[str, IntPolynomial]
    correspondence: Mapping[str, str]


def _half_product(g: ValuedGraph, part: Sequence[str]) -> RationalMatrix:
    K = cartan_matrix(g)
    out = RationalMatrix.identity(g.n)
    for v in part:
        out = out @ reflection(K, g.index(v))
    return out


def orbit_assembling(g: ValuedGraph, N: int = 50) -> OrbitReport:
    """Orbit τ^{(n)}β and assembling vectors z_n = τ^{(n−1)}β − τ^{(n)}β for n = 1 … h−1."""
    if g.kind != "dynkin" or not g.is_simply_laced() or g.meta.get("family") not in ("A", "D", "E"):
        raise DiagramError("orbit structure needs a simply-laced Dynkin diagram")
    h = coxeter_numbers(g).h
    if h % 2:
        raise DiagramError("Coxeter number is odd (A_{2m} is excluded)")
    beta = max(positive_roots(g), key=sum)
    part = bicolor(g)
    w1, w2 = _half_product(g, part.part1), _half_product(g, part.part2)
    if w1.apply(beta) == tuple(beta):
        fix, move = w1, w2
    elif w2.apply(beta) == tuple(beta):
        fix, move = w2, w1
    else:
        raise DomainError("neither half of the bicolored partition fixes the highest root")
    orbit = [tuple(beta)]
    for n in range(1, h):
        w = move if n % 2 else fix
        orbit.append(tuple(int(x) for x in w.apply(orbit[-1])))
    zs = tuple(tuple(a - b for a, b in zip(orbit[n - 1], orbit[n])) for n in range(1, h))
    half = h // 2
    special = _special_vertex(g)
    want = tuple(2 if v == special else 0 for v in g.vertices)
    if zs[half - 1] != want:
        raise DomainError("z_{h/2} differs from twice the simple root at the special vertex")
    for k in range(1, half):
        if zs[half + k - 1] != zs[half - k - 1]:
            raise DomainError("assembling vectors are not symmetric")
    numerators = {v: IntPolynomial([0] + [z[i] for z in zs]) for i, v in enumerate(g.vertices)}
    # series identity against the multiplicities of the affine partner
    ext = affine_partner(g)
    report = kostant_multiplicities(ext, N)
    inner = remove_vertex(ext, ext.extension_vertex)
    corr = match_cartan(cartan_matrix(g), inner)
    if corr is None:
        raise DomainError("Dynkin diagram does not embed in its affine partner")
    mapping = {g.vertices[i]: v for i, v in corr.items()}
    den = report.denominator
    for v, w in mapping.items():
        if rational_series(numerators[v], den, N) != report.series[w]:
            raise DomainError(f"series identity fails at {v}")
    return OrbitReport(g.vertices, h, tuple(beta), tuple(orbit), zs, special, numerators, mapping)


def _special_vertex(g: ValuedGraph) -> str:
    branch = [v for v in g.vertices if g.degree(v) >= 3]
    if branch:
        return branch[0]
    # a path with an odd number of vertices: its midpoint
    ends = [v for v in g.vertices if g.degree(v) <= 1]
    start = ends[0]
    path = [start]
    prev = None
    while len(path) < g.n:
        nxt = next(w for w in g.neighbors(path[-1]) if w != prev)
        prev = path[-1]
        path.append(nxt)
    return path[len(path) // 2]
