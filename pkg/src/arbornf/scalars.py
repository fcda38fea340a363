"""Exact scalar arithmetic: Gaussian rationals, integer-coefficient linear
frequency forms, multivariate polynomials over frequency symbols, and lazily
normalized rational functions.

Frequency symbols are positive integers rendered as ``k1, k2, ...``.  All
values here are immutable; every operation returns a new object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

FreqAssignment = Mapping[int, int]


def sym_name(sym: int) -> str:
    return f"k{sym}"


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    """A Gaussian rational ``re + i*im`` with exact components."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} to Scalar")

    def __add__(self, other) -> "Scalar":
        o = Scalar.of(other)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __sub__(self, other) -> "Scalar":
        return self + (-Scalar.of(other))

    def __rsub__(self, other) -> "Scalar":
        return Scalar.of(other) + (-self)

    def __mul__(self, other) -> "Scalar":
        o = Scalar.of(other)
        return Scalar(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        o = Scalar.of(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return self * Scalar(o.re / n, -o.im / n)

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


ZERO = Scalar()
ONE = Scalar(Fraction(1))
I = Scalar(Fraction(0), Fraction(1))
MINUS_I = Scalar(Fraction(0), Fraction(-1))


# ---------------------------------------------------------------------------
# Linear frequency forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FreqVector:
    """Integer linear combination of frequency symbols, e.g. ``-k1+k2+k3``.

    Stored as a sorted tuple of ``(symbol, coefficient)`` pairs with no zero
    coefficients.
    """

    coeffs: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def of(sym: int, coeff: int = 1) -> "FreqVector":
        if coeff == 0:
            return FreqVector()
        return FreqVector(((sym, coeff),))

    @staticmethod
    def from_dict(d: Mapping[int, int]) -> "FreqVector":
        return FreqVector(tuple(sorted((s, c) for s, c in d.items() if c != 0)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __add__(self, other: "FreqVector") -> "FreqVector":
        d = self.as_dict()
        for s, c in other.coeffs:
            d[s] = d.get(s, 0) + c
        return FreqVector.from_dict(d)

    def __neg__(self) -> "FreqVector":
        return FreqVector(tuple((s, -c) for s, c in self.coeffs))

    def __sub__(self, other: "FreqVector") -> "FreqVector":
        return self + (-other)

    def scale(self, n: int) -> "FreqVector":
        if n == 0:
            return FreqVector()
        return FreqVector(tuple((s, n * c) for s, c in self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def symbols(self) -> set[int]:
        return {s for s, _ in self.coeffs}

    def evaluate(self, a: FreqAssignment) -> int:
        total = 0
        for s, c in self.coeffs:
            if s not in a:
                raise KeyError(f"unassigned frequency symbol {sym_name(s)}")
            total += c * a[s]
        return total

    def rename(self, mapping: Mapping[int, int]) -> "FreqVector":
        return FreqVector.from_dict(
            {mapping.get(s, s): c for s, c in self.coeffs})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for s, c in self.coeffs:
            if c == 1:
                parts.append(f"+{sym_name(s)}")
            elif c == -1:
                parts.append(f"-{sym_name(s)}")
            else:
                parts.append(f"{c:+d}*{sym_name(s)}")
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


# ---------------------------------------------------------------------------
# Multivariate polynomials
# ---------------------------------------------------------------------------

Monomial = tuple[int, ...]  # sorted symbol indices with multiplicity


def _mono_key(m: Monomial) -> tuple:
    # graded lexicographic: total degree first, then symbol sequence
    return (len(m), m)


@dataclass(frozen=True)
class FreqPolynomial:
    """Polynomial in frequency symbols with Scalar coefficients.

    ``terms`` maps a monomial (sorted tuple of symbols with multiplicity) to
    a nonzero Scalar; kept sorted graded-lexicographically so that equal
    polynomials are structurally equal and hashable.
    """

    terms: tuple[tuple[Monomial, Scalar], ...] = ()

    @staticmethod
    def from_dict(d: Mapping[Monomial, Scalar]) -> "FreqPolynomial":
        items = [(m, c) for m, c in d.items() if not c.is_zero()]
        items.sort(key=lambda t: _mono_key(t[0]))
        return FreqPolynomial(tuple(items))

    @staticmethod
    def constant(c) -> "FreqPolynomial":
        s = Scalar.of(c)
        return FreqPolynomial() if s.is_zero() else FreqPolynomial((((), s),))

    @staticmethod
    def from_linear(f: FreqVector) -> "FreqPolynomial":
        return FreqPolynomial.from_dict(
            {(s,): Scalar.of(c) for s, c in f.coeffs})

    def as_dict(self) -> dict[Monomial, Scalar]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FreqPolynomial") -> "FreqPolynomial":
        d = self.as_dict()
        for m, c in other.terms:
            v = d.get(m, ZERO) + c
            if v.is_zero():
                d.pop(m, None)
            else:
                d[m] = v
        return FreqPolynomial.from_dict(d)

    def __neg__(self) -> "FreqPolynomial":
        return FreqPolynomial(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "FreqPolynomial") -> "FreqPolynomial":
        return self + (-other)

    def __mul__(self, other: "FreqPolynomial") -> "FreqPolynomial":
        d: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(sorted(m1 + m2))
                v = d.get(m, ZERO) + c1 * c2
                if v.is_zero():
                    d.pop(m, None)
                else:
                    d[m] = v
        return FreqPolynomial.from_dict(d)

    def scale(self, c) -> "FreqPolynomial":
        s = Scalar.of(c)
        if s.is_zero():
            return FreqPolynomial()
        return FreqPolynomial(tuple((m, cc * s) for m, cc in self.terms))

    def symbols(self) -> set[int]:
        out: set[int] = set()
        for m, _ in self.terms:
            out.update(m)
        return out

    def evaluate(self, a: FreqAssignment) -> Scalar:
        total = ZERO
        for m, c in self.terms:
            v = c
            for s in m:
                if s not in a:
                    raise KeyError(f"unassigned frequency symbol {sym_name(s)}")
                v = v * a[s]
            total = total + v
        return total

    def rename(self, mapping: Mapping[int, int]) -> "FreqPolynomial":
        d: dict[Monomial, Scalar] = {}
        for m, c in self.terms:
            mm = tuple(sorted(mapping.get(s, s) for s in m))
            v = d.get(mm, ZERO) + c
            if v.is_zero():
                d.pop(mm, None)
            else:
                d[mm] = v
        return FreqPolynomial.from_dict(d)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            factors = []
            i = 0
            while i < len(m):
                j = i
                while j < len(m) and m[j] == m[i]:
                    j += 1
                factors.append(sym_name(m[i]) + (f"^{j - i}" if j - i > 1 else ""))
                i = j
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == ONE:
                parts.append(body)
            elif c == -ONE:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


P_ZERO = FreqPolynomial()
P_ONE = FreqPolynomial.constant(1)


def poly_eval(p: FreqPolynomial, a: FreqAssignment) -> Scalar:
    """Exact value of ``p`` at the integer assignment ``a``."""
    return p.evaluate(a)


def poly_square_of_linear(f: FreqVector, sign: int = 1) -> FreqPolynomial:
    """Expanded ``sign * f**2`` for a linear frequency form ``f``."""
    p = FreqPolynomial.from_linear(f)
    sq = p * p
    return sq if sign == 1 else -sq


# ---------------------------------------------------------------------------
# Rational functions, unreduced
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalFunction:
    """Quotient ``num/den`` of FreqPolynomials, never reduced.

    Equality is the exact cross-multiplication test; no multivariate GCD is
    ever computed.
    """

    num: FreqPolynomial
    den: FreqPolynomial

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    @staticmethod
    def of(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, FreqPolynomial):
            return RationalFunction(x, P_ONE)
        return RationalFunction(FreqPolynomial.constant(Scalar.of(x)), P_ONE)

    def __add__(self, other) -> "RationalFunction":
        o = RationalFunction.of(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den,
                                self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-RationalFunction.of(other))

    def __mul__(self, other) -> "RationalFunction":
        o = RationalFunction.of(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        o = RationalFunction.of(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def eq(self, other) -> bool:
        o = RationalFunction.of(other)
        return (self.num * o.den - o.num * self.den).is_zero()

    def evaluate(self, a: FreqAssignment) -> Scalar:
        d = self.den.evaluate(a)
        if d.is_zero():
            raise ZeroDivisionError(
                f"denominator {self.den} vanishes under the assignment")
        return self.num.evaluate(a) / d

    def __str__(self) -> str:
        if self.den == P_ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


RF_ZERO = RationalFunction(P_ZERO, P_ONE)
RF_ONE = RationalFunction(P_ONE, P_ONE)


def ratfun_is_zero(r: RationalFunction) -> bool:
    """True iff ``r`` is the zero rational function (exact test)."""
    return r.num.is_zero()


def fresh_symbols(n: int, start: int = 1) -> list[int]:
    return list(range(start, start + n))
