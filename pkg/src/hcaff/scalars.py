"""Exact scalars: rationals, Gaussian rationals, multi-surd values, Laurent polynomials.

A :class:`Surd` is an element of the Q(i)-span of {sqrt(d) : d squarefree >= 1},
stored as a map radicand -> (re, im) with no zero coefficients.  The radicand 1
holds the Gaussian-rational part.  Products of radicals reduce through the
squarefree decomposition, so equality is structural equality of the maps.
"""

from __future__ import annotations

import math
import re as _re
from functools import lru_cache

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rat

from .errors import NegativeRadicand, ZeroInverse

R0 = Rat(0)
R1 = Rat(1)


def rat(num, den=1) -> Rat:
    """Exact rational from integers (or a 'p/q' string)."""
    if isinstance(num, str):
        if "/" in num:
            p, q = num.split("/")
            return Rat(int(p), int(q))
        return Rat(int(num))
    return Rat(num, den)


@lru_cache(maxsize=None)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """n = s^2 * d with d squarefree; returns (s, d).  Requires n >= 1."""
    s, d, p = 1, 1, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return s, d * n


@lru_cache(maxsize=None)
def smallest_prime_factor(n: int) -> int:
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1 if p == 2 else 2
    return n


def _gauss_mul(a, b):
    ar, ai = a
    br, bi = b
    return (ar * br - ai * bi, ar * bi + ai * br)


class Surd:
    """Immutable exact scalar in the multi-surd field Q(i, sqrt(2), sqrt(3), ...)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, tuple[Rat, Rat]] | None = None):
        # callers must hand over a canonical dict; use the constructors below
        self.terms = terms or {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(r) -> "Surd":
        r = r if not isinstance(r, int) else Rat(r)
        return Surd({1: (r, R0)}) if r else Surd()

    @staticmethod
    def from_gaussian(re, im) -> "Surd":
        re = Rat(re) if isinstance(re, int) else re
        im = Rat(im) if isinstance(im, int) else im
        return Surd({1: (re, im)}) if re or im else Surd()

    @staticmethod
    def i() -> "Surd":
        return Surd({1: (R0, R1)})

    @staticmethod
    def sqrt_rational(r, *, negative_ok: bool = False) -> "Surd":
        """Positive square root of a nonnegative rational, exactly.

        The result has a single term s*sqrt(d) with s a positive rational.
        """
        r = Rat(r) if isinstance(r, int) else r
        if r < 0:
            if not negative_ok:
                raise NegativeRadicand(f"sqrt of negative rational {r}")
            return Surd.i() * Surd.sqrt_rational(-r)
        if r ==  0:
            return Surd()
        p, q = int(r.numerator), int(r.denominator)
        s, d = squarefree_decompose(p * q)
        return Surd({d: (Rat(s, q), R0)})

    # -- predicates --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        if not self.terms:
            return True
        if set(self.terms) != {1}:
            return False
        return self.terms[1][1] == 0

    def rational_value(self) -> Rat:
        if not self.terms:
            return R0
        if not self.is_rational():
            raise ValueError(f"not a rational: {self}")
        return self.terms[1][0]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Surd") -> "Surd":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for d, (br, bi) in other.terms.items():
            ar, ai = out.get(d, (R0, R0))
            cr, ci = ar + br, ai + bi
            if cr or ci:
                out[d] = (cr, ci)
            elif d in out:
                del out[d]
        return Surd(out)

    def __neg__(self) -> "Surd":
        return Surd({d: (-r, -i) for d, (r, i) in self.terms.items()})

    def __sub__(self, other: "Surd") -> "Surd":
        return self + (-other)

    def __mul__(self, other: "Surd") -> "Surd":
        t1, t2 = self.terms, other.terms
        if not t1 or not t2:
            return Surd()
        # fast path: one factor is a plain rational (the dominant case in
        # elimination-heavy code)
        if len(t1) == 1:
            g1 = t1.get(1)
            if g1 is not None and not g1[1]:
                r = g1[0]
                return Surd({d: (br * r, bi * r) for d, (br, bi) in t2.items()})
        if len(t2) == 1:
            g2 = t2.get(1)
            if g2 is not None and not g2[1]:
                r = g2[0]
                return Surd({d: (ar * r, ai * r) for d, (ar, ai) in t1.items()})
        out: dict[int, tuple[Rat, Rat]] = {}
        gcd = math.gcd
        for d1, (ar, ai) in t1.items():
            for d2, (br, bi) in t2.items():
                if d1 == d2:
                    mult, d = d1, 1
                elif d1 == 1:
                    mult, d = 1, d2
                elif d2 == 1:
                    mult, d = 1, d1
                else:
                    g = gcd(d1, d2)
                    mult, d = g, (d1 // g) * (d2 // g)
                cr = ar * br - ai * bi
                ci = ar * bi + ai * br
                if mult != 1:
                    cr, ci = cr * mult, ci * mult
                cur = out.get(d)
                if cur is not None:
                    cr, ci = cur[0] + cr, cur[1] + ci
                if cr or ci:
                    out[d] = (cr, ci)
                elif d in out:
                    del out[d]
        return Surd(out)

    def scale(self, r: Rat) -> "Surd":
        if not r:
            return Surd()
        return Surd({d: (re * r, im * r) for d, (re, im) in self.terms.items()})

    def conjugate_radicand_prime(self, p: int) -> "Surd":
        """Galois conjugate flipping sqrt(q) for every radicand divisible by p."""
        return Surd(
            {d: ((-r, -i) if d % p == 0 else (r, i)) for d, (r, i) in self.terms.items()}
        )

    def complex_conjugate(self) -> "Surd":
        return Surd({d: (r, -i) for d, (r, i) in self.terms.items()})

    def inverse(self) -> "Surd":
        """Exact inverse by iterated conjugate rationalization.

        Exponential in the number of distinct radicand primes, which stays tiny
        for the matrix entries this package produces.
        """
        if not self.terms:
            raise ZeroInverse("cannot invert 0")
        radicands = [d for d in self.terms if d > 1]
        if not radicands:
            re, im = self.terms[1]
            n = re * re + im * im
            return Surd({1: (re / n, -im / n)})
        p = min(smallest_prime_factor(d) for d in radicands)
        conj = self.conjugate_radicand_prime(p)
        return conj * (self * conj).inverse()

    def __truediv__(self, other: "Surd") -> "Surd":
        return self * other.inverse()

    def sqrt_if_rational(self) -> "Surd":
        """Positive square root when self is a nonnegative rational (else ValueError)."""
        return Surd.sqrt_rational(self.rational_value())

    # -- structure ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Surd) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def to_complex(self) -> complex:
        """Float image; used only as a cross-check oracle in tests."""
        z = 0j
        for d, (r, i) in self.terms.items():
            z += complex(float(r), float(i)) * math.sqrt(d)
        return z

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d in sorted(self.terms):
            re, im = self.terms[d]
            if im == 0:
                g = _rat_str(re)
                compound = False
            elif re == 0:
                g = ("i" if im == 1 else "-i" if im == -1 else f"{_rat_str(im)}*i")
                compound = False
            else:
                g = f"({_rat_str(re)}+{_rat_str(im)}*i)" if im > 0 else f"({_rat_str(re)}{_rat_str(im)}*i)"
                compound = True
            if d == 1:
                parts.append(g)
            elif g == "1" and not compound:
                parts.append(f"sqrt({d})")
            elif g == "-1" and not compound:
                parts.append(f"-sqrt({d})")
            else:
                parts.append(f"{g}*sqrt({d})")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def _rat_str(r: Rat) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


ZERO = Surd()
ONE = Surd.from_rational(1)
MINUS_ONE = Surd.from_rational(-1)
I = Surd.i()
HALF = Surd.from_rational(Rat(1, 2))


def from_int(n: int) -> Surd:
    return Surd.from_rational(n)


# -- parsing ----------------------------------------------------------------

_TERM_RE = _re.compile(
    r"^(?:\((?P<gre>-?\d+(?:/\d+)?)(?P<gim>[+-]\d+(?:/\d+)?)\*i\)"
    r"|(?P<im>-?(?:\d+(?:/\d+)?)?)\*?i"
    r"|(?P<re>-?\d+(?:/\d+)?))?"
    r"(?P<star>\*)?"
    r"(?:sqrt\((?P<rad>\d+)\))?$"
)


def parse_surd(text: str) -> Surd:
    """Inverse of str(Surd); accepts e.g. '1/2 + (1+1/2*i)*sqrt(6) - i*sqrt(2)'."""
    s = text.replace(" ", "")
    if not s or s == "0":
        return ZERO
    # split into signed terms at depth 0
    terms, depth, start = [], 0, 0
    for k, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > start:
            # not an exponent sign or leading sign inside a term
            if s[k - 1] not in "+-*(":
                terms.append(s[start:k])
                start = k
    terms.append(s[start:])
    total = ZERO
    for term in terms:
        sign = R1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"cannot parse scalar term {term!r} in {text!r}")
        rad = int(m.group("rad") or 1)
        if m.group("gre") is not None:
            re_, im_ = rat(m.group("gre")), rat(m.group("gim"))
        elif m.group("im") is not None:
            raw = m.group("im")
            re_, im_ = R0, (rat(raw) if raw not in ("", "-") else (R1 if raw == "" else -R1))
        elif m.group("re") is not None:
            re_, im_ = rat(m.group("re")), R0
        else:
            re_, im_ = R1, R0  # bare sqrt(d)
        total = total + Surd({rad: (re_ * sign, im_ * sign)} if re_ or im_ else {})
    return total


class LaurentPoly:
    """Laurent polynomial in q with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Rat] | None = None):
        self.coeffs = coeffs or {}

    @staticmethod
    def from_rational(r) -> "LaurentPoly":
        r = Rat(r) if isinstance(r, int) else r
        return LaurentPoly({0: r}) if r else LaurentPoly()

    @staticmethod
    def q_power(k: int, coeff=1) -> "LaurentPoly":
        c = Rat(coeff) if isinstance(coeff, int) else coeff
        return LaurentPoly({k: c}) if c else LaurentPoly()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k, R0) + c
            if v:
                out[k] = v
            elif k in out:
                del out[k]
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, Rat] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                v = out.get(k, R0) + c1 * c2
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
        return LaurentPoly(out)

    def __pow__(self, n: int) -> "LaurentPoly":
        out = LaurentPoly.from_rational(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, r: Rat) -> "LaurentPoly":
        if not r:
            return LaurentPoly()
        return LaurentPoly({k: c * r for k, c in self.coeffs.items()})

    def specialize_q1(self) -> Rat:
        """Value at q = 1: the sum of all coefficients."""
        total = R0
        for c in self.coeffs.values():
            total += c
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            if k == 0:
                parts.append(_rat_str(c))
                continue
            qs = "q" if k == 1 else f"q^{k}"
            if c == 1:
                parts.append(qs)
            elif c == -1:
                parts.append(f"-{qs}")
            else:
                parts.append(f"{_rat_str(c)}*{qs}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


LP_ZERO = LaurentPoly()
LP_ONE = LaurentPoly.from_rational(1)


def q_integer(k: int, d_i: int) -> LaurentPoly:
    """(k)_i = (q_i^k - q_i^-k) / (q_i - q_i^-1) with q_i = q^{d_i}."""
    out = LaurentPoly()
    for j in range(k):
        out = out + LaurentPoly.q_power(d_i * (k - 1 - 2 * j))
    return out
