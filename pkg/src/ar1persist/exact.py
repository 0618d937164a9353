"""Exact arithmetic in the polynomial ring Q[s], where s = (2*pi)**(-1/2).

Every quantity in the exact coefficient pipeline (half-range Hermite
moments, the psi cross-moments, the eigenvalue coefficients K_n and the
eigenfunction coefficients G_{j,k}) lives in this ring, so no rounding
happens anywhere on the symbolic path.  Rationals are GMP-backed
(gmpy2.mpq); intermediate numerators grow to hundreds of digits at high
expansion order.
"""
from __future__ import annotations

import numbers
from fractions import Fraction

import gmpy2
import mpmath
from gmpy2 import mpq

# The rational scalar type used throughout the exact path.
Rational = mpq

_MPQ_TYPE = type(mpq())


def as_rational(value) -> Rational:
    """Coerce an int / Fraction / mpq into an exact mpq."""
    if isinstance(value, _MPQ_TYPE):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, numbers.Integral):
        return mpq(int(value))
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(q) -> str:
    q = as_rational(q)
    if gmpy2.denom(q) == 1:
        return str(gmpy2.numer(q))
    return f"{gmpy2.numer(q)}/{gmpy2.denom(q)}"


class PiPolynomial:
    """Element of Q[s] stored as a sparse map s-exponent -> rational.

    Canonical form: zero coefficients are never stored, so equality is
    plain coefficient-map equality.  s is treated as transcendental; no
    relation between powers of s is ever applied.  Instances are
    immutable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for exp, c in coeffs.items():
                exp = int(exp)
                if exp < 0:
                    raise ValueError("s-exponents must be nonnegative")
                q = as_rational(c)
                if q != 0:
                    clean[exp] = q
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PiPolynomial is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "PiPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "PiPolynomial":
        return cls({0: 1})

    @classmethod
    def from_rational(cls, q) -> "PiPolynomial":
        return cls({0: q})

    @classmethod
    def s_power(cls, exponent: int, coefficient=1) -> "PiPolynomial":
        return cls({exponent: coefficient})

    # -- inspection -----------------------------------------------------

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def coefficient(self, exponent: int) -> Rational:
        return self._coeffs.get(exponent, mpq(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int:
        """Largest s-exponent; -1 for the zero polynomial."""
        return max(self._coeffs) if self._coeffs else -1

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PiPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction, _MPQ_TYPE)):
            return self == PiPolynomial.from_rational(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    # -- ring operations ------------------------------------------------

    def __add__(self, other) -> "PiPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for exp, c in other._coeffs.items():
            acc = out.get(exp, 0) + c
            if acc == 0:
                out.pop(exp, None)
            else:
                out[exp] = acc
        return PiPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "PiPolynomial":
        return PiPolynomial({exp: -c for exp, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "PiPolynomial":
        if isinstance(other, (int, Fraction, _MPQ_TYPE)):
            q = as_rational(other)
            if q == 0:
                return PiPolynomial()
            return PiPolynomial({exp: c * q for exp, c in self._coeffs.items()})
        if not isinstance(other, PiPolynomial):
            return NotImplemented
        out = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                exp = e1 + e2
                acc = out.get(exp, 0) + c1 * c2
                if acc == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = acc
        return PiPolynomial(out)

    __rmul__ = __mul__

    @staticmethod
    def _coerce(other):
        if isinstance(other, PiPolynomial):
            return other
        if isinstance(other, (int, Fraction, _MPQ_TYPE)):
            return PiPolynomial.from_rational(other)
        return NotImplemented

    # -- evaluation -----------------------------------------------------

    def eval(self) -> float:
        """Evaluate sum q_k * (2*pi)**(-k/2) as a float.

        The sum is formed at a working precision large enough to absorb
        the cancellation between huge alternating terms (coefficients at
        high order dwarf the final value by many orders of magnitude),
        then rounded once to double precision.
        """
        if not self._coeffs:
            return 0.0
        extra = 0
        for c in self._coeffs.values():
            bits = int(gmpy2.numer(c)).bit_length() - int(gmpy2.denom(c)).bit_length()
            extra = max(extra, bits)
        with mpmath.workprec(64 + extra):
            s = 1 / mpmath.sqrt(2 * mpmath.pi)
            total = mpmath.mpf(0)
            for exp in sorted(self._coeffs):
                c = self._coeffs[exp]
                total += mpmath.mpf(int(gmpy2.numer(c))) / int(gmpy2.denom(c)) * s ** exp
            return float(total)

    def pi_form(self):
        """Rewrite s**(2m) = 2**(-m) * pi**(-m), grouped by pi-power.

        Returns a map pi-exponent -> rational coefficient, or None when
        some odd s-power is present (no pure pi representation exists).
        """
        out = {}
        for exp, c in self._coeffs.items():
            if exp % 2 != 0:
                return None
            m = exp // 2
            out[m] = c / mpq(2) ** m
        return out

    # -- rendering ------------------------------------------------------

    def __str__(self) -> str:
        pf = self.pi_form()
        if pf is not None:
            return render_pi_form(pf)
        return self.s_form_str()

    def __repr__(self) -> str:
        return f"PiPolynomial({self!s})"

    def s_form_str(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for exp in sorted(self._coeffs):
            c = self._coeffs[exp]
            mag = abs(c)
            if exp == 0:
                body = format_rational(mag)
            else:
                var = "s" if exp == 1 else f"s^{exp}"
                body = var if mag == 1 else f"{format_rational(mag)}*{var}"
            parts.append((c < 0, body))
        return _join_signed(parts)


def render_pi_form(pf: dict) -> str:
    """Canonical text for a pi-form map, ascending pi-power.

    Matches the displayed style of the coefficient table: "1/2",
    "1/pi - 2/pi^2", "43/(40*pi) + ...".
    """
    if not pf:
        return "0"
    parts = []
    for m in sorted(pf):
        c = as_rational(pf[m])
        if c == 0:
            continue
        mag = abs(c)
        if m == 0:
            body = format_rational(mag)
        else:
            p = gmpy2.numer(mag)
            q = gmpy2.denom(mag)
            base = "pi" if m == 1 else f"pi^{m}"
            body = f"{p}/{base}" if q == 1 else f"{p}/({q}*{base})"
        parts.append((c < 0, body))
    if not parts:
        return "0"
    return _join_signed(parts)


def _join_signed(parts) -> str:
    neg, body = parts[0]
    text = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        text += (" - " if neg else " + ") + body
    return text
