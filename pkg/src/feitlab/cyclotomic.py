"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A :class:`Cyclo` stores its value in the power basis ``1, z, ..., z**(phi(n)-1)``
of Q(zeta_n), i.e. as a polynomial in ``z = zeta_n`` reduced modulo the n-th
cyclotomic polynomial. Coefficients are Python ints or Fractions; a Fraction
with denominator 1 is always stored as an int so that integral values (the
common case for character values) stay on the fast integer path.

Values at different conductor contexts are lifted to the lcm before being
combined; results are never descended automatically.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from ._arith import divisors, euler_phi, mobius
from .errors import CycloParseError, NotCoprime

__all__ = ["CycloPoly", "Cyclo", "cyclotomic_polynomial", "root_of_unity", "parse_cyclo", "galois_apply"]


@dataclass(frozen=True)
class CycloPoly:
    """Phi_n with integer coefficients, lowest degree first."""

    n: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        return out + "".join(f" {s} {b}" for s, b in terms[1:])


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact quotient of integer polynomials; ``den`` monic."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> CycloPoly:
    """Phi_n, by dividing ``x**n - 1`` by every Phi_d for proper divisors d of n."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num = _poly_divexact(num, cyclotomic_polynomial(d).coeffs)
    return CycloPoly(n, tuple(num))


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse reduced form of ``z**j`` for ``j in range(n)``."""
    phi = euler_phi(n)
    tail = cyclotomic_polynomial(n).coeffs[:phi]  # z**phi = -sum(tail[i] z**i)
    rows = []
    vec = [0] * phi
    vec[0] = 1
    for j in range(n):
        rows.append(tuple((i, c) for i, c in enumerate(vec) if c))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            for i in range(phi):
                vec[i] -= top * tail[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> tuple[Fraction, ...]:
    # Tr(z**i)/phi(n) = mu(d)/phi(d), d = n/gcd(n, i); independent of the context n
    out = []
    for i in range(euler_phi(n)):
        d = n // math.gcd(n, i)
        out.append(Fraction(mobius(d), euler_phi(d)))
    return tuple(out)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _is_scalar(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


class Cyclo:
    """An element of Q(zeta_n) in canonical reduced form.

    Build values with :func:`root_of_unity`, :meth:`Cyclo.rational`,
    :meth:`Cyclo.from_exponents` or :func:`parse_cyclo`; the raw constructor
    trusts its input to already be reduced.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        self.n = n
        self.coeffs = tuple(_norm(c) for c in coeffs)

    # -- construction --

    @classmethod
    def rational(cls, q, n: int = 1) -> Cyclo:
        coeffs = [0] * euler_phi(n)
        coeffs[0] = _norm(Fraction(q)) if not isinstance(q, int) else q
        return cls(n, coeffs)

    @classmethod
    def zero(cls, n: int = 1) -> Cyclo:
        return cls(n, [0] * euler_phi(n))

    @classmethod
    def from_exponents(cls, n: int, terms) -> Cyclo:
        """Reduce ``sum(c * z**k)`` over ``(k, c)`` pairs or a ``{k: c}`` mapping."""
        if isinstance(terms, dict):
            terms = terms.items()
        table = _power_table(n)
        acc = [0] * euler_phi(n)
        for k, c in terms:
            if c:
                for i, v in table[k % n]:
                    acc[i] += c * v
        return cls(n, acc)

    # -- structure --

    def terms(self):
        """Nonzero ``(exponent, coefficient)`` pairs."""
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def lift(self, m: int) -> Cyclo:
        """Same value written at context ``m`` (a multiple of ``n``)."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"context {m} is not a multiple of {self.n}")
        step = m // self.n
        return Cyclo.from_exponents(m, [(i * step, c) for i, c in self.terms()])

    def _common(self, other) -> tuple[Cyclo, Cyclo]:
        if not isinstance(other, Cyclo):
            other = Cyclo.rational(other)
        if self.n == other.n:
            return self, other
        m = math.lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    # -- ring operations --

    def __add__(self, other):
        if _is_scalar(other):
            coeffs = list(self.coeffs)
            coeffs[0] += other
            return Cyclo(self.n, coeffs)
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._common(other)
        return Cyclo(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        if _is_scalar(other) or isinstance(other, Cyclo):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if _is_scalar(other):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if _is_scalar(other):
            return Cyclo(self.n, [c * other for c in self.coeffs])
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._common(other)
        bt = b.terms()
        acc: dict[int, object] = {}
        n = a.n
        for i, x in a.terms():
            for j, y in bt:
                k = (i + j) % n
                acc[k] = acc.get(k, 0) + x * y
        return Cyclo.from_exponents(n, acc)

    __rmul__ = __mul__

    def mul_root(self, k: int) -> Cyclo:
        """``self * zeta_n**k`` without a general product."""
        n = self.n
        return Cyclo.from_exponents(n, [((i + k) % n, c) for i, c in self.terms()])

    def __truediv__(self, other):
        if _is_scalar(other):
            return Cyclo(self.n, [Fraction(c) / other for c in self.coeffs])
        if isinstance(other, Cyclo):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclo.rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Cyclo:
        """Multiplicative inverse via the product of the other Galois conjugates."""
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclo.rational(Fraction(1) / self.coeffs[0], self.n)
        others = Cyclo.rational(1, self.n)
        for k in range(2, self.n):
            if math.gcd(k, self.n) == 1:
                others = others * self.galois(k)
        norm = (self * others).to_rational()
        return others / norm

    # -- Galois action --

    def galois(self, k: int) -> Cyclo:
        """Apply sigma_k: zeta_n -> zeta_n**k."""
        n = self.n
        if math.gcd(k, n) != 1:
            raise NotCoprime(f"gcd({k}, {n}) != 1")
        if k % n == 1 % n:
            return self
        return Cyclo.from_exponents(n, [((i * k) % n, c) for i, c in self.terms()])

    def conj(self) -> Cyclo:
        return self.galois(-1)

    # -- comparison --

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            if self.n == other.n:
                return self.coeffs == other.coeffs
            a, b = self._common(other)
            return a.coeffs == b.coeffs
        if _is_scalar(other):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        # normalized trace to Q: equal for equal values written at any context,
        # and equal to hash(q) for a rational q
        if self.is_rational():
            return hash(self.coeffs[0])
        w = _trace_weights(self.n)
        return hash(_norm(sum((Fraction(c) * w[i] for i, c in self.terms()), Fraction(0))))

    def __bool__(self):
        return any(self.coeffs)

    # -- text --

    def __str__(self):
        n = self.n
        parts = []
        for i, c in self.terms():
            if i == 0:
                parts.append(str(c))
                continue
            base = f"E({n})" if i == 1 else f"E({n})^{i}"
            if c == 1:
                parts.append(base)
            elif c == -1:
                parts.append("-" + base)
            else:
                parts.append(f"{c}*{base}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"Cyclo({self.n}, {str(self)!r})"


def root_of_unity(n: int, i: int = 1) -> Cyclo:
    """``zeta_n**i`` at context ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return Cyclo.from_exponents(n, [(i % n, 1)])


def galois_apply(a: Cyclo, k: int) -> Cyclo:
    return a.galois(k)


_TERM_RE = re.compile(r"(?:(\d+)(?:/(\d+))?)?(\*)?(?:E\((\d+)\)(?:\^(\d+))?)?")


def parse_cyclo(text: str) -> Cyclo:
    """Parse the ``E(n)^i`` notation produced by ``str(Cyclo)``."""
    s = "".join(text.split())
    if not s:
        raise CycloParseError("empty value")
    pieces = re.findall(r"[+-]?[^+-]+", s)
    if "".join(pieces) != s:
        raise CycloParseError(f"cannot parse {text!r}")
    total = Cyclo.rational(0)
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        body = piece.lstrip("+-")
        m = _TERM_RE.fullmatch(body)
        if not m or not body:
            raise CycloParseError(f"bad term {piece!r} in {text!r}")
        num, den, star, root_n, root_k = m.groups()
        if num is None and root_n is None:
            raise CycloParseError(f"bad term {piece!r} in {text!r}")
        if star and (num is None or root_n is None):
            raise CycloParseError(f"bad term {piece!r} in {text!r}")
        if num is not None and root_n is not None and not star:
            raise CycloParseError(f"missing '*' in {piece!r}")
        coeff = Fraction(int(num), int(den) if den else 1) if num is not None else Fraction(1)
        if den is not None and int(den) == 0:
            raise CycloParseError("zero denominator")
        if root_n is None:
            term = Cyclo.rational(sign * coeff)
        else:
            n = int(root_n)
            if n < 1:
                raise CycloParseError("E(0) is undefined")
            term = root_of_unity(n, int(root_k) if root_k else 1) * (sign * coeff)
        total = total + term
    return total
