"""Exact arithmetic: integer polynomials, rational matrices, cyclotomic numbers.

Everything here works over ``int`` and ``fractions.Fraction``; floating point
appears only when a caller asks for a decimal approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Matrix shapes do not fit the requested operation."""


class DomainError(ValueError):
    """Input lies outside the domain of an operation."""


Number = int | Fraction


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class IntPolynomial:
    """Dense univariate polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise DomainError(f"non-integer coefficient {c}")
                c = c.numerator
            cs.append(int(c))
        object.__setattr__(self, "coeffs", _trim(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls([0] * k + [c])

    @classmethod
    def from_roots_of_unity_sum(cls, k: int) -> IntPolynomial:
        """1 + x + ... + x^k."""
        return cls([1] * (k + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.const(other)
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return render_polynomial(self)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other) -> IntPolynomial:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> IntPolynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> IntPolynomial:
        return _as_poly(other) - self

    def __mul__(self, other) -> IntPolynomial:
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPolynomial:
        if k < 0:
            raise DomainError("negative power")
        result = IntPolynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod_exact(self, other: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial] | None:
        """Integer long division; None when a quotient coefficient is not integral."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        if len(rem) - 1 < dq:
            return IntPolynomial(), self
        quo = [0] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq]
            if c == 0:
                continue
            q, r = divmod(c, lead)
            if r:
                return None
            quo[k] = q
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= q * b
        return IntPolynomial(quo), IntPolynomial(rem)

    def __floordiv__(self, other) -> IntPolynomial:
        other = _as_poly(other)
        res = self.divmod_exact(other)
        if res is None or res[1]:
            raise DomainError(f"{self!r} is not divisible by {other!r}")
        return res[0]

    def divides(self, other: IntPolynomial) -> bool:
        res = other.divmod_exact(self)
        return res is not None and not res[1]

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, int) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        """Divide by the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def substitute_power(self, k: int) -> IntPolynomial:
        """p(x^k)."""
        out = [0] * (self.degree * k + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPolynomial(out)

    def reciprocal(self) -> IntPolynomial:
        """x^deg · p(1/x)."""
        return IntPolynomial(reversed(self.coeffs))

    def scale_argument(self, d: int) -> IntPolynomial:
        """p(d·x)."""
        return IntPolynomial(c * d**k for k, c in enumerate(self.coeffs))

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))

    def is_antipalindromic(self) -> bool:
        return self.coeffs == tuple(-c for c in reversed(self.coeffs))

    def truncated_series_inverse(self, n: int) -> list[Fraction]:
        """First n power-series coefficients of 1/p; requires p(0) != 0."""
        c0 = self[0]
        if c0 == 0:
            raise DomainError("constant term vanishes")
        out: list[Fraction] = []
        for k in range(n):
            acc = Fraction(1 if k == 0 else 0)
            for j in range(1, min(k, self.degree) + 1):
                acc -= self[j] * out[k - j]
            out.append(acc / c0)
        return out


def _as_poly(v) -> IntPolynomial:
    if isinstance(v, IntPolynomial):
        return v
    if isinstance(v, int):
        return IntPolynomial.const(v)
    raise TypeError(f"cannot treat {v!r} as an integer polynomial")


def _qpoly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    while b and b[-1] == 0:
        b = b[:-1]
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        for j, c in enumerate(b):
            a[k + j] -= f * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Q, returned as a primitive integer polynomial."""
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in q.coeffs]
    while b:
        _, r = _qpoly_divmod(a, b)
        a, b = b, r
    if not a:
        return IntPolynomial()
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return IntPolynomial(int(c * den) for c in a).primitive()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p divided by gcd(p, p'), made primitive."""
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive()
    return _rational_quotient(p, g)


def _rational_quotient(p: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    q, r = _qpoly_divmod([Fraction(c) for c in p.coeffs], [Fraction(c) for c in g.coeffs])
    if r:
        raise DomainError("inexact division")
    den = 1
    for c in q:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return IntPolynomial(int(c * den) for c in q).primitive()


def render_polynomial(p: IntPolynomial, var: str = "λ", ascii_only: bool = False) -> str:
    """Descending-degree rendering such as ``λ^6 + λ^5 − λ^3 + λ + 1``."""
    minus = "-" if ascii_only else "−"
    if ascii_only and var == "λ":
        var = "x"
    if not p.coeffs:
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not parts:
            parts.append(("-" if ascii_only else "−") + body if c < 0 else body)
        else:
            parts.append(f" {minus} {body}" if c < 0 else f" + {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and factorization
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> IntPolynomial:
    """Φ_d by dividing x^d − 1 by Φ_e for the proper divisors e of d."""
    if d < 1:
        raise DomainError("cyclotomic index must be positive")
    p = IntPolynomial.monomial(d) - 1
    for e in range(1, d):
        if d % e == 0:
            p = p // cyclotomic_polynomial(e)
    return p


def euler_phi(n: int) -> int:
    result = n
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


def factor_cyclotomic(p: IntPolynomial, max_order: int | None = None) -> tuple[dict[int, int], IntPolynomial]:
    """Strip every cyclotomic factor Φ_d with d ≤ max_order; returns (multiplicities, remainder).

    The default bound 2·deg² covers every d with φ(d) ≤ deg, since φ(d) ≥ √(d/2).
    """
    if p.is_zero():
        raise DomainError("zero polynomial has no factorization")
    if max_order is None:
        max_order = max(2 * p.degree * p.degree, 2)
    mult: dict[int, int] = {}
    rem = p
    for d in range(1, max_order + 1):
        if euler_phi(d) > rem.degree:
            continue
        phi = cyclotomic_polynomial(d)
        while rem.degree >= phi.degree:
            res = rem.divmod_exact(phi)
            if res is None or res[1]:
                break
            rem = res[0]
            mult[d] = mult.get(d, 0) + 1
    return mult, rem


def product_of_cyclotomics(mult: dict[int, int]) -> IntPolynomial:
    out = IntPolynomial.const(1)
    for d, m in mult.items():
        out = out * cyclotomic_polynomial(d) ** m
    return out


# ---------------------------------------------------------------------------
# Real roots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealRootInterval:
    """An open interval (low, high) holding exactly one real root of ``polynomial``."""

    low: Fraction
    high: Fraction
    polynomial: IntPolynomial

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    @property
    def midpoint(self) -> Fraction:
        return (self.low + self.high) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def refine(self, tol: Fraction) -> RealRootInterval:
        q = squarefree_part(self.polynomial)
        lo, hi = _refine(q, self.low, self.high, Fraction(tol))
        return RealRootInterval(lo, hi, self.polynomial)


def sturm_sequence(p: IntPolynomial) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in p.coeffs], [Fraction(c) for c in p.derivative().coeffs]]
    while seq[-1]:
        _, r = _qpoly_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _eval_q(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def sign_variations(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for s in seq:
        v = _eval_q(s, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: IntPolynomial, low: Fraction, high: Fraction) -> int:
    """Distinct real roots in the open interval (low, high), by Sturm's theorem."""
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    n = sign_variations(seq, Fraction(low)) - sign_variations(seq, Fraction(high))
    if q(Fraction(high)) == 0:
        n -= 1
    return n


def _refine(q: IntPolynomial, lo: Fraction, hi: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
    slo = q(lo)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        vm = q(mid)
        if vm == 0:
            # Root sits exactly on a dyadic point: shrink symmetrically around it.
            half = min(tol, hi - lo) / 4
            return mid - half, mid + half
        if (vm > 0) == (slo > 0):
            lo, slo = mid, vm
        else:
            hi = mid
    return lo, hi


def isolate_real_roots(p: IntPolynomial, low, high, tol=Fraction(1, 10**8)) -> list[RealRootInterval]:
    """One certified interval per distinct real root of p strictly inside (low, high)."""
    low, high, tol = Fraction(low), Fraction(high), Fraction(tol)
    if tol <= 0 or not low < high:
        raise DomainError("need tol > 0 and low < high")
    if p.is_zero():
        raise DomainError("zero polynomial")
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)

    def count(a: Fraction, b: Fraction) -> int:
        n = sign_variations(seq, a) - sign_variations(seq, b)
        if q(b) == 0:
            n -= 1
        return n

    found: list[tuple[Fraction, Fraction]] = []
    stack = [(low, high)]
    while stack:
        a, b = stack.pop()
        n = count(a, b)
        if n == 0:
            continue
        if n == 1:
            found.append((a, b))
            continue
        mid = (a + b) / 2
        if q(mid) == 0:
            eps = (b - a) / 1024
            while count(mid - eps, mid + eps) > 1 or q(mid - eps) == 0 or q(mid + eps) == 0:
                eps /= 2
            found.append((mid - eps, mid + eps))
            stack.append((a, mid - eps))
            stack.append((mid + eps, b))
            continue
        stack.append((a, mid))
        stack.append((mid, b))
    out = []
    for a, b in sorted(found):
        # Endpoints must not be roots so that the sign-change bisection applies.
        if q(a) == 0 or q(b) == 0:
            shrink = (b - a) / 1024
            while q(a) == 0:
                a += shrink
            while q(b) == 0:
                b -= shrink
        lo, hi = _refine(q, a, b, tol)
        out.append(RealRootInterval(lo, hi, p))
    return out


def largest_real_root(p: IntPolynomial, tol=Fraction(1, 10**8)) -> RealRootInterval | None:
    bound = cauchy_bound(p) + 1
    roots = isolate_real_roots(p, -bound, bound, tol)
    return roots[-1] if roots else None


def cauchy_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.leading)
    return 1 + Fraction(max((abs(c) for c in p.coeffs[:-1]), default=0), lead)


def mahler_measure(p: IntPolynomial, tol=Fraction(1, 10**8)) -> float:
    """Product of |root| over the roots outside the unit circle.

    Products of cyclotomic polynomials are recognised exactly.  Otherwise the
    roots are located numerically at a working precision well beyond ``tol`` and
    the answer is bracketed by integer Graeffe bounds as a sanity check.
    """
    import mpmath

    if p.is_zero():
        raise DomainError("zero polynomial")
    lead = abs(p.leading)
    _, rem = factor_cyclotomic(p)
    if rem.degree <= 0:
        return float(lead)
    digits = max(30, int(-math.log10(float(tol))) + 20)
    with mpmath.workdps(digits):
        roots = mpmath.polyroots(list(reversed(rem.coeffs)), maxsteps=400, extraprec=4 * digits)
        value = mpmath.mpf(abs(rem.leading))
        for r in roots:
            a = abs(r)
            if a > 1:
                value *= a
    lo, hi = graeffe_bounds(rem, 4)
    v = float(value)
    if not (lo * (1 - 1e-9) <= v <= hi * (1 + 1e-9)):
        raise ArithmeticError("numerical Mahler measure escaped its Graeffe bracket")
    return v


def graeffe_step(p: IntPolynomial) -> IntPolynomial:
    """Polynomial whose roots are the squares of the roots of p."""
    even = IntPolynomial(p[k] for k in range(0, p.degree + 1, 2))
    odd = IntPolynomial(p[k] for k in range(1, p.degree + 1, 2))
    q = even * even - IntPolynomial.x() * odd * odd
    return q if p.degree % 2 == 0 else -q


def graeffe_bounds(p: IntPolynomial, steps: int) -> tuple[float, float]:
    """Lower/upper bounds for M(p) from Landau and Mahler inequalities after root squaring."""
    q = p
    for _ in range(steps):
        q = graeffe_step(q)
    n = q.degree
    e = 2**steps
    l2 = math.sqrt(sum(c * c for c in q.coeffs))
    linf = max(abs(c) for c in q.coeffs)
    binom = math.comb(n, n // 2)
    return (linf / binom) ** (1 / e), l2 ** (1 / e)


# ---------------------------------------------------------------------------
# Rational matrices
# ---------------------------------------------------------------------------


class RationalMatrix:
    """Dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[Number]]):
        data = tuple(tuple(Fraction(v) for v in row) for row in entries)
        cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise DimensionError("ragged matrix")
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> RationalMatrix:
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def diagonal(cls, values: Sequence[Number]) -> RationalMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values: Sequence[Number]) -> RationalMatrix:
        return cls([[v] for v in values])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.tolist()})"

    def tolist(self) -> list[list]:
        return [[_simplify(v) for v in r] for r in self.entries]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for r in self.entries for v in r)

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in subtraction")
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix([[-a for a in r] for r in self.entries])

    def scale(self, c: Number) -> RationalMatrix:
        c = Fraction(c)
        return RationalMatrix([[c * a for a in r] for r in self.entries])

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            ot = list(zip(*other.entries)) if other.rows else [()] * other.cols
            return RationalMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ot] for r in self.entries])
        vec = [Fraction(v) for v in other]
        if len(vec) != self.cols:
            raise DimensionError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.entries)

    def apply(self, vec: Sequence[Number]) -> tuple[Fraction, ...]:
        return self @ vec

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(list(zip(*self.entries))) if self.rows else RationalMatrix([])

    T = property(transpose)

    def __pow__(self, k: int) -> RationalMatrix:
        if not self.is_square():
            raise DimensionError("power of non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = RationalMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> RationalMatrix:
        return RationalMatrix([[self.entries[i][j] for j in cols] for i in rows])

    def permuted(self, order: Sequence[int]) -> RationalMatrix:
        return self.submatrix(order, order)

    def _echelon(self) -> tuple[list[list[Fraction]], list[int]]:
        m = [list(r) for r in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            p = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            inv = 1 / m[r][c]
            m[r] = [v * inv for v in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def nullspace(self) -> list[tuple[Fraction, ...]]:
        """Basis of {v : M v = 0}, one vector per free column."""
        m, pivots = self._echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, pc in enumerate(pivots):
                v[pc] = -m[i][f]
            basis.append(tuple(v))
        return basis

    def inverse(self) -> RationalMatrix:
        if not self.is_square():
            raise DimensionError("inverse of non-square matrix")
        n = self.rows
        aug = RationalMatrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.entries)])
        m, pivots = aug._echelon()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return RationalMatrix([r[n:] for r in m[:n]])

    def det(self) -> Fraction:
        if not self.is_square():
            raise DimensionError("determinant of non-square matrix")
        m = [list(r) for r in self.entries]
        n = self.rows
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] / m[c][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return d

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def eval_polynomial(self, p: IntPolynomial) -> RationalMatrix:
        """p(M) by Horner's rule."""
        n = self.rows
        acc = RationalMatrix.zeros(n, n)
        ident = RationalMatrix.identity(n)
        for c in reversed(p.coeffs):
            acc = acc @ self + ident.scale(c)
        return acc


def _simplify(v: Fraction):
    return v.numerator if v.denominator == 1 else v


def block_matrix(blocks: Sequence[Sequence[RationalMatrix]]) -> RationalMatrix:
    rows = []
    for brow in blocks:
        h = brow[0].rows
        for i in range(h):
            row: list[Fraction] = []
            for b in brow:
                row.extend(b.entries[i])
            rows.append(row)
    return RationalMatrix(rows)


def block_diagonal(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    n = sum(b.rows for b in blocks)
    out = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[off + i][off + j] = b.entries[i][j]
        off += b.rows
    return RationalMatrix(out)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def integer_vector(vec: Sequence[Number]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers (sign preserved)."""
    den = 1
    for v in vec:
        den = _lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


def charpoly_exact(m: RationalMatrix) -> IntPolynomial:
    """det(λI − m) cleared to a primitive integer polynomial with positive leading term.

    Denominators are cleared first; the determinant of the integer
    polynomial matrix λI − d·m is then taken by fraction-free (Bareiss)
    elimination in Z[λ].  The leading principal minors are monic, so no
    pivoting is ever required.
    """
    if not m.is_square():
        raise DimensionError("characteristic polynomial needs a square matrix")
    n = m.rows
    if n == 0:
        return IntPolynomial.const(1)
    d = 1
    for r in m.entries:
        for v in r:
            d = _lcm(d, v.denominator)
    a = [[IntPolynomial.const(-int(m.entries[i][j] * d)) + (IntPolynomial.x() if i == j else 0) for j in range(n)] for i in range(n)]
    prev = IntPolynomial.const(1)
    for k in range(n - 1):
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = pivot
    det_mu = a[n - 1][n - 1]
    # det(μI − dM) = d^n · det(λI − M) with μ = dλ.
    return det_mu.scale_argument(d).primitive() if d != 1 else det_mu


def charpoly_block_check(blocks: Sequence[RationalMatrix]) -> bool:
    whole = charpoly_exact(block_diagonal(blocks))
    prod = IntPolynomial.const(1)
    for b in blocks:
        prod = prod * charpoly_exact(b)
    return whole == prod.primitive()


# ---------------------------------------------------------------------------
# Cyclotomic numbers
# ---------------------------------------------------------------------------


def _reduce_mod_cyclotomic(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(m).coeffs
    deg = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, deg - 1, -1):
        v = c[k]
        if v:
            for j in range(deg + 1):
                c[k - deg + j] -= v * phi[j]
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(c[:deg])


class CyclotomicNumber:
    """Element of Q(ζ_m) in the power basis 1, ζ, …, ζ^{φ(m)−1}.

    Values with different conductors are combined in Q(ζ_lcm).
    """

    __slots__ = ("conductor", "coordinates")

    def __init__(self, conductor: int, coordinates: Sequence[Number]):
        if conductor < 1:
            raise DomainError("conductor must be positive")
        coords = _reduce_mod_cyclotomic([Fraction(c) for c in coordinates], conductor)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coordinates", coords)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CyclotomicNumber:
        k %= m
        return cls(m, [0] * k + [1])

    @classmethod
    def rational(cls, m: int, q: Number) -> CyclotomicNumber:
        return cls(m, [q])

    def lift(self, m: int) -> CyclotomicNumber:
        if m % self.conductor:
            raise DomainError(f"Q(ζ_{self.conductor}) does not embed in Q(ζ_{m})")
        step = m // self.conductor
        out = [Fraction(0)] * (step * len(self.coordinates) + 1)
        for k, c in enumerate(self.coordinates):
            out[k * step] += c
        return CyclotomicNumber(m, out)

    def _common(self, other) -> tuple[CyclotomicNumber, CyclotomicNumber]:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.rational(self.conductor, other)
        if other.conductor == self.conductor:
            return self, other
        m = _lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other) -> CyclotomicNumber:
        a, b = self._common(other)
        n = max(len(a.coordinates), len(b.coordinates))
        ca = list(a.coordinates) + [Fraction(0)] * (n - len(a.coordinates))
        cb = list(b.coordinates) + [Fraction(0)] * (n - len(b.coordinates))
        return CyclotomicNumber(a.conductor, [x + y for x, y in zip(ca, cb)])

    __radd__ = __add__

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber(self.conductor, [-c for c in self.coordinates])

    def __sub__(self, other) -> CyclotomicNumber:
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other) -> CyclotomicNumber:
        return (-self) + other

    def __mul__(self, other) -> CyclotomicNumber:
        a, b = self._common(other)
        out = [Fraction(0)] * (len(a.coordinates) + len(b.coordinates))
        for i, x in enumerate(a.coordinates):
            if x:
                for j, y in enumerate(b.coordinates):
                    if y:
                        out[i + j] += x * y
        return CyclotomicNumber(a.conductor, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> CyclotomicNumber:
        if not isinstance(other, CyclotomicNumber):
            q = Fraction(other)
            return CyclotomicNumber(self.conductor, [c / q for c in self.coordinates])
        return self * other.inverse()

    def __pow__(self, k: int) -> CyclotomicNumber:
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.rational(self.conductor, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> CyclotomicNumber:
        """Image under ζ ↦ ζ^k (k coprime to the conductor)."""
        m = self.conductor
        if math.gcd(k, m) != 1:
            raise DomainError("Galois exponent must be coprime to the conductor")
        out = [Fraction(0)] * m
        for i, c in enumerate(self.coordinates):
            out[(i * k) % m] += c
        return CyclotomicNumber(m, out)

    def conjugate(self) -> CyclotomicNumber:
        return self.galois(self.conductor - 1) if self.conductor > 2 else self

    def norm_rational(self) -> Fraction:
        """Field norm down to Q; nonzero exactly when the element is invertible."""
        m = self.conductor
        prod = CyclotomicNumber.rational(m, 1)
        for k in range(1, m + 1):
            if math.gcd(k, m) == 1:
                prod = prod * self.galois(k)
        if not prod.is_rational():
            raise ArithmeticError("norm is not rational")
        return prod.coordinates[0] if prod.coordinates else Fraction(0)

    def inverse(self) -> CyclotomicNumber:
        m = self.conductor
        others = CyclotomicNumber.rational(m, 1)
        for k in range(2, m + 1):
            if math.gcd(k, m) == 1 and k % m != 1:
                others = others * self.galois(k)
        n = (self * others)
        if not n.is_rational() or n.rational_value() == 0:
            raise ZeroDivisionError("cannot invert zero")
        return others / n.rational_value()

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coordinates[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("value is not rational")
        return self.coordinates[0] if self.coordinates else Fraction(0)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)

    def __complex__(self) -> complex:
        m = self.conductor
        return sum((complex(float(c)) * complex(math.cos(2 * math.pi * k / m), math.sin(2 * math.pi * k / m))
                    for k, c in enumerate(self.coordinates)), complex(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coordinates == b.coordinates

    def __hash__(self) -> int:
        # Hash through a canonical large conductor would be costly; rational values
        # hash like their rational, others by rounded complex value.
        if self.is_rational():
            return hash(self.rational_value())
        z = complex(self)
        return hash((round(z.real, 9), round(z.imag, 9)))

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.conductor}, {[_simplify(c) for c in self.coordinates]})"


def sqrt2(conductor: int = 8) -> CyclotomicNumber:
    """√2 = ζ_8 + ζ_8^{-1}."""
    return (CyclotomicNumber.zeta(8, 1) + CyclotomicNumber.zeta(8, 7)).lift(conductor)
