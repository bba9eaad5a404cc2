"""PBW normal-form engine for the affine Hecke-Clifford algebra of rank d.

Elements are stored in the basis x^alpha c^eps w: polynomial part first,
Clifford monomial with strictly increasing indices, then a permutation.
Multiplication rewrites by pushing permutation letters through polynomial
letters one simple transposition at a time, which terminates because every
rewrite lowers (x-degree, permutation length) lexicographically.

Defining relations (all indices 1-based):

    c_i^2 = -1,  c_i c_j = -c_j c_i                       (i != j)
    s_i^2 = 1,   braid relations
    s_i c_i = c_{i+1} s_i,  s_i c_{i+1} = c_i s_i,  s_i c_j = c_j s_i
    c_i x_i = -x_i c_i,     c_j x_i = x_i c_j
    s_i x_i = x_{i+1} s_i - 1 + c_i c_{i+1},  s_i x_j = x_j s_i

The sign in c_i^2 is governed by CLIFFORD_SQUARE so the (inconsistent) +1
variant can be exercised as a negative control.
"""

from __future__ import annotations

import random
from functools import lru_cache

from . import combinatorics as comb
from .combinatorics import Perm, compose, identity_perm, inverse, length, simple_transposition
from .errors import IndexOutOfRange, RankMismatch
from .reports import Report
from .scalars import ONE, Rat, Surd

# c_i^2 = CLIFFORD_SQUARE; the algebra is consistent only for -1
CLIFFORD_SQUARE = -1

Key = tuple  # (alpha: tuple[int, ...], eps: int bitmask, w: Perm)


def cliff_mul(e1: int, e2: int, sq: int = -1) -> tuple[int, int]:
    """c^{e1} . c^{e2} = sign * c^{mask}; masks use bit i-1 for c_i."""
    sign = 1
    acc = e1
    while e2:
        b = (e2 & -e2).bit_length() - 1
        e2 &= e2 - 1
        higher = acc >> (b + 1)
        if higher:
            sign *= -1 if bin(higher).count("1") % 2 else 1
        if acc & (1 << b):
            sign *= sq
            acc &= ~(1 << b)
        else:
            acc |= 1 << b
    return sign, acc


def cliff_conjugate(eps: int, w: Perm) -> tuple[int, int]:
    """w c^{eps} w^{-1} = sign * c^{w(eps)}."""
    images = [w[b] for b in range(len(w)) if eps & (1 << b)]
    inv = sum(
        1
        for a in range(len(images))
        for b in range(a + 1, len(images))
        if images[a] > images[b]
    )
    mask = 0
    for v in images:
        mask |= 1 << v
    return (-1 if inv % 2 else 1), mask


def _pair_mask_sign(a: int, b: int) -> tuple[int, int]:
    """c_a c_b (1-based, a != b) as (sign, increasing mask)."""
    if a < b:
        return 1, (1 << (a - 1)) | (1 << (b - 1))
    return -1, (1 << (a - 1)) | (1 << (b - 1))


@lru_cache(maxsize=None)
def _perm_times_x(w: Perm, i: int, sq: int) -> tuple[tuple[Key, int], ...]:
    """w . x_i expanded in the PBW basis, with integer coefficients."""
    d = len(w)
    if w == identity_perm(d):
        alpha = tuple(1 if k == i - 1 else 0 for k in range(d))
        return (((alpha, 0, w), 1),)
    # strip a right descent: w = w2 . s_j with l(w2) = l(w) - 1
    j = next(k for k in range(1, d) if w[k - 1] > w[k])
    w2 = compose(w, simple_transposition(d, j))
    out: dict[Key, int] = {}

    def bump(key: Key, coeff: int):
        v = out.get(key, 0) + coeff
        if v:
            out[key] = v
        elif key in out:
            del out[key]

    if i != j and i != j + 1:
        for (alpha, eps, v), n in _perm_times_x(w2, i, sq):
            bump((alpha, eps, compose(v, simple_transposition(d, j))), n)
    else:
        other = j + 1 if i == j else j
        unit = 1 if i == j + 1 else -1  # s_j x_j = x_{j+1} s_j - 1 + cc ; s_j x_{j+1} = x_j s_j + 1 + cc
        for (alpha, eps, v), n in _perm_times_x(w2, other, sq):
            bump((alpha, eps, compose(v, simple_transposition(d, j))), n)
        bump(((0,) * d, 0, w2), unit)
        sgn, mask = _pair_mask_sign(w2[j - 1] + 1, w2[j] + 1)
        bump(((0,) * d, mask, w2), sgn)
    return tuple(out.items())


@lru_cache(maxsize=None)
def _perm_times_xmono(w: Perm, beta: tuple[int, ...], sq: int) -> tuple[tuple[Key, int], ...]:
    """w . x^beta in the PBW basis."""
    d = len(w)
    if not any(beta):
        return ((((0,) * d, 0, w), 1),)
    j = max(k for k in range(d) if beta[k])
    beta2 = tuple(b - 1 if k == j else b for k, b in enumerate(beta))
    out: dict[Key, int] = {}
    for (gamma, eta, v), n in _perm_times_xmono(w, beta2, sq):
        for (g2, e2, v2), n2 in _perm_times_x(v, j + 1, sq):
            # x^gamma c^eta x^{g2} c^{e2} v2 : move x^{g2} through c^eta
            sgn = 1
            if eta:
                flips = sum(g2[b] for b in range(d) if eta & (1 << b))
                sgn = -1 if flips % 2 else 1
            s3, mask = cliff_mul(eta, e2, sq)
            key = (tuple(a + b for a, b in zip(gamma, g2)), mask, v2)
            coeff = n * n2 * sgn * s3
            acc = out.get(key, 0) + coeff
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return tuple(out.items())


class PbwElement:
    """An element of the rank-d algebra in PBW normal form."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: dict[Key, Surd] | None = None):
        self.d = d
        self.terms = terms or {}

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(d: int) -> "PbwElement":
        return PbwElement(d)

    @staticmethod
    def monomial(d: int, alpha=None, eps: int = 0, w: Perm | None = None, coeff: Surd = ONE) -> "PbwElement":
        alpha = tuple(alpha) if alpha is not None else (0,) * d
        w = w if w is not None else identity_perm(d)
        if coeff.is_zero():
            return PbwElement(d)
        return PbwElement(d, {(alpha, eps, w): coeff})

    @staticmethod
    def one(d: int) -> "PbwElement":
        return PbwElement.monomial(d)

    @staticmethod
    def x(d: int, i: int) -> "PbwElement":
        if not 1 <= i <= d:
            raise IndexOutOfRange(f"x_{i} with d={d}")
        return PbwElement.monomial(d, tuple(1 if k == i - 1 else 0 for k in range(d)))

    @staticmethod
    def c(d: int, i: int) -> "PbwElement":
        if not 1 <= i <= d:
            raise IndexOutOfRange(f"c_{i} with d={d}")
        return PbwElement.monomial(d, eps=1 << (i - 1))

    @staticmethod
    def s(d: int, i: int) -> "PbwElement":
        if not 1 <= i < d:
            raise IndexOutOfRange(f"s_{i} with d={d}")
        return PbwElement.monomial(d, w=simple_transposition(d, i))

    @staticmethod
    def from_perm(d: int, w: Perm) -> "PbwElement":
        return PbwElement.monomial(d, w=w)

    @staticmethod
    def scalar(d: int, coeff: Surd) -> "PbwElement":
        return PbwElement.monomial(d, coeff=coeff)

    # -- ring operations -------------------------------------------------

    def _bump(self, terms: dict, key: Key, coeff: Surd) -> None:
        cur = terms.get(key)
        v = coeff if cur is None else cur + coeff
        if v.is_zero():
            terms.pop(key, None)
        else:
            terms[key] = v

    def __add__(self, other: "PbwElement") -> "PbwElement":
        self._check_rank(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            self._bump(out, k, v)
        return PbwElement(self.d, out)

    def __neg__(self) -> "PbwElement":
        return PbwElement(self.d, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "PbwElement") -> "PbwElement":
        return self + (-other)

    def scale(self, coeff: Surd) -> "PbwElement":
        if coeff.is_zero():
            return PbwElement(self.d)
        return PbwElement(self.d, {k: v * coeff for k, v in self.terms.items()})

    def scale_int(self, n: int) -> "PbwElement":
        return self.scale(Surd.from_rational(n))

    def __mul__(self, other: "PbwElement") -> "PbwElement":
        self._check_rank(other)
        d, sq = self.d, CLIFFORD_SQUARE
        out: dict[Key, Surd] = {}
        for (alpha, eps, w), c1 in self.terms.items():
            for (beta, delta, u), c2 in other.terms.items():
                c = c1 * c2
                for (gamma, eta, v), n in _perm_times_xmono(w, beta, sq):
                    sgn = n
                    if eps:
                        flips = sum(gamma[b] for b in range(d) if eps & (1 << b))
                        if flips % 2:
                            sgn = -sgn
                    s1, m1 = cliff_mul(eps, eta, sq)
                    s2, dv = cliff_conjugate(delta, v)
                    s3, m3 = cliff_mul(m1, dv, sq)
                    key = (
                        tuple(a + g for a, g in zip(alpha, gamma)),
                        m3,
                        compose(v, u),
                    )
                    self._bump(out, key, c.scale(Rat(sgn * s1 * s2 * s3)))
        return PbwElement(d, out)

    def __pow__(self, n: int) -> "PbwElement":
        out = PbwElement.one(self.d)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PbwElement)
            and self.d == other.d
            and self.terms == other.terms
        )

    def __hash__(self):  # pragma: no cover
        raise TypeError("PbwElement is unhashable")

    def is_zero(self) -> bool:
        return not self.terms

    def _check_rank(self, other: "PbwElement") -> None:
        if self.d != other.d:
            raise RankMismatch(f"rank {self.d} vs {other.d}")

    def max_perm_length(self) -> int:
        return max((length(w) for (_, _, w) in self.terms), default=0)

    # -- distinguished (anti)automorphisms --------------------------------

    def sigma_twist(self) -> "PbwElement":
        """sigma: s_i -> -s_{d-i}, c_i -> c_{d+1-i}, x_i -> x_{d+1-i}."""
        d = self.d
        w0 = tuple(range(d - 1, -1, -1))
        out: dict[Key, Surd] = {}
        for (alpha, eps, w), coeff in self.terms.items():
            k = bin(eps).count("1")
            sgn = -1 if (length(w) + k * (k - 1) // 2) % 2 else 1
            mask = 0
            for b in range(d):
                if eps & (1 << b):
                    mask |= 1 << (d - 1 - b)
            key = (tuple(reversed(alpha)), mask, compose(w0, compose(w, w0)))
            self._bump(out, key, coeff.scale(Rat(sgn)))
        return PbwElement(d, out)

    def tau_antiauto(self) -> "PbwElement":
        """tau: s_i -> s_i, c_i -> -c_i, x_i -> x_i, extended by tau(ab) = tau(b)tau(a).

        The plain (unsigned) antiautomorphism rule is forced by c_i^2 = -1:
        the signed super rule would send c_i^2 to +1.
        """
        d = self.d
        out = PbwElement.zero(d)
        for (alpha, eps, w), coeff in self.terms.items():
            k = bin(eps).count("1")
            # (-1)^k from tau(c) = -c, (-1)^{k(k-1)/2} from reversing the c word
            sgn = -1 if (k * (k + 1) // 2) % 2 else 1
            piece = (
                PbwElement.from_perm(d, inverse(w))
                * PbwElement.monomial(d, eps=eps)
                * PbwElement.monomial(d, alpha)
            )
            out = out + piece.scale(coeff.scale(Rat(sgn)))
        return out

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (alpha, eps, w) in sorted(self.terms, key=_term_sort_key):
            coeff = self.terms[(alpha, eps, w)]
            factors = []
            for k, a in enumerate(alpha):
                if a == 1:
                    factors.append(f"x{k + 1}")
                elif a > 1:
                    factors.append(f"x{k + 1}^{a}")
            for b in range(self.d):
                if eps & (1 << b):
                    factors.append(f"c{b + 1}")
            for i in comb.reduced_word(w):
                factors.append(f"s{i}")
            body = "*".join(factors)
            cs = str(coeff)
            if not body:
                parts.append(cs if _is_simple(cs) else f"({cs})")
            elif cs == "1":
                parts.append(body)
            elif cs == "-1":
                parts.append(f"-{body}")
            else:
                parts.append(f"{cs}*{body}" if _is_simple(cs) else f"({cs})*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def _is_simple(cs: str) -> bool:
    return " " not in cs


def _term_sort_key(key: Key):
    alpha, eps, w = key
    return (sum(alpha), alpha, eps, w)


def parse_element(text: str, d: int) -> PbwElement:
    """Parse the literal syntax 'x1^2*c1*c2*s1 + 3*s2' (1-based indices)."""
    from .scalars import parse_surd

    s = text.replace(" ", "")
    terms, depth, start = [], 0, 0
    for k, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > start and s[k - 1] not in "+-*(^":
            terms.append(s[start:k])
            start = k
    terms.append(s[start:])
    total = PbwElement.zero(d)
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        elem = PbwElement.scalar(d, Surd.from_rational(sign))
        for factor in _split_factors(term):
            if factor.startswith("x") and factor[1:2].isdigit():
                name, _, power = factor.partition("^")
                idx, p = int(name[1:]), int(power or 1)
                elem = elem * (PbwElement.x(d, idx) ** p)
            elif factor.startswith("c") and factor[1:2].isdigit():
                elem = elem * PbwElement.c(d, int(factor[1:]))
            elif factor.startswith("s") and factor[1:2].isdigit():
                name, _, power = factor.partition("^")
                idx, p = int(name[1:]), int(power or 1)
                elem = elem * (PbwElement.s(d, idx) ** p)
            else:
                elem = elem.scale(parse_surd(factor))
        total = total + elem
    return total


def _split_factors(term: str) -> list[str]:
    out, depth, start = [], 0, 0
    for k, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            out.append(term[start:k])
            start = k + 1
    out.append(term[start:])
    return [f.strip("()") if f.startswith("(") and f.endswith(")") else f for f in out if f]


# -- distinguished elements ---------------------------------------------------


def intertwiner_phi(d: int, i: int) -> PbwElement:
    """phi_i = s_i (x_i^2 - x_{i+1}^2) + (x_i + x_{i+1}) - c_i c_{i+1} (x_i - x_{i+1})."""
    if not 1 <= i < d:
        raise IndexOutOfRange(f"phi_{i} with d={d}")
    x_i, x_n = PbwElement.x(d, i), PbwElement.x(d, i + 1)
    s_i = PbwElement.s(d, i)
    cc = PbwElement.c(d, i) * PbwElement.c(d, i + 1)
    return s_i * (x_i * x_i - x_n * x_n) + (x_i + x_n) - cc * (x_i - x_n)


def intertwiner_phi_squared_rhs(d: int, i: int) -> PbwElement:
    """2 x_i^2 + 2 x_{i+1}^2 - (x_i^2 - x_{i+1}^2)^2."""
    x2_i = PbwElement.x(d, i) ** 2
    x2_n = PbwElement.x(d, i + 1) ** 2
    diff = x2_i - x2_n
    return x2_i.scale_int(2) + x2_n.scale_int(2) - diff * diff


def jucys_murphy(d: int, i: int) -> PbwElement:
    """L_i = sum_{j<i} (1 - c_j c_i) s_{ji}; L_1 = 0."""
    if not 1 <= i <= d:
        raise IndexOutOfRange(f"L_{i} with d={d}")
    terms: dict[Key, Surd] = {}
    zero_alpha = (0,) * d
    for j in range(1, i):
        w = comb.transposition(d, j, i)
        terms[(zero_alpha, 0, w)] = ONE
        mask = (1 << (j - 1)) | (1 << (i - 1))
        terms[(zero_alpha, mask, w)] = -ONE
    return PbwElement(d, terms)


def x_selector(d: int, outside: set[int] | frozenset[int], kappas: dict[int, Surd]) -> PbwElement:
    """prod over i not in ``outside`` of (x_i + kappa_i); empty product = 1."""
    out = PbwElement.one(d)
    for i in range(1, d + 1):
        if i in outside:
            continue
        out = out * (PbwElement.x(d, i) + PbwElement.scalar(d, kappas[i]))
    return out


# -- batch verification -------------------------------------------------------


def generators(d: int) -> list[tuple[str, int, PbwElement]]:
    """(name, parity, element) for every generator; parity 1 only for c_i."""
    gens = []
    for i in range(1, d):
        gens.append((f"s{i}", 0, PbwElement.s(d, i)))
    for i in range(1, d + 1):
        gens.append((f"c{i}", 1, PbwElement.c(d, i)))
    for i in range(1, d + 1):
        gens.append((f"x{i}", 0, PbwElement.x(d, i)))
    return gens


def sigma_of_generator(d: int, name: str) -> PbwElement:
    kind, i = name[0], int(name[1:])
    if kind == "s":
        return PbwElement.s(d, d - i).scale_int(-1)
    if kind == "c":
        return PbwElement.c(d, d + 1 - i)
    return PbwElement.x(d, d + 1 - i)


def random_monomial(d: int, rng: random.Random, max_degree: int = 3) -> PbwElement:
    alpha = [0] * d
    for _ in range(rng.randint(0, max_degree)):
        alpha[rng.randrange(d)] += 1
    eps = rng.randrange(1 << d)
    w = list(range(d))
    rng.shuffle(w)
    coeff = Surd.from_rational(rng.choice([1, -1, 2]))
    return PbwElement.monomial(d, tuple(alpha), eps, tuple(w), coeff)


def verify_algebra(d: int, seed: int | None = None, samples: int = 100) -> Report:
    """Check every defining relation, the intertwiner square, the sigma/tau
    structure maps, and associativity on pseudo-random monomial triples."""
    from . import DEFAULT_SEED

    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    rep = Report(f"verify-algebra d={d}")
    one = PbwElement.one(d)

    def eq(name: str, law: str, lhs: PbwElement, rhs: PbwElement):
        rep.add(name, law, str(rhs), str(lhs), lhs == rhs)

    for i in range(1, d + 1):
        ci = PbwElement.c(d, i)
        eq(f"c{i}^2", "clifford square", ci * ci, -one)
        for j in range(i + 1, d + 1):
            cj = PbwElement.c(d, j)
            eq(f"c{i}c{j}+c{j}c{i}", "clifford anticommute", ci * cj + cj * ci, PbwElement.zero(d))
    for i in range(1, d):
        si = PbwElement.s(d, i)
        eq(f"s{i}^2", "coxeter square", si * si, one)
        if i + 1 < d:
            sn = PbwElement.s(d, i + 1)
            eq(f"braid s{i}s{i + 1}", "braid", si * sn * si, sn * si * sn)
        for j in range(i + 2, d):
            sj = PbwElement.s(d, j)
            eq(f"s{i}s{j} commute", "distant coxeter", si * sj, sj * si)
    for i in range(1, d):
        si = PbwElement.s(d, i)
        for j in range(1, d + 1):
            cj = PbwElement.c(d, j)
            target = (
                PbwElement.c(d, i + 1) * si
                if j == i
                else PbwElement.c(d, i) * si
                if j == i + 1
                else cj * si
            )
            eq(f"s{i}c{j}", "mixed coxeter-clifford", si * cj, target)
    for i in range(1, d + 1):
        xi = PbwElement.x(d, i)
        for j in range(1, d + 1):
            cj = PbwElement.c(d, j)
            target = -(xi * cj) if j == i else xi * cj
            eq(f"c{j}x{i}", "mixed clifford-polynomial", cj * xi, target)
    for i in range(1, d):
        si = PbwElement.s(d, i)
        for j in range(1, d + 1):
            xj = PbwElement.x(d, j)
            if j == i:
                target = (
                    PbwElement.x(d, i + 1) * si
                    - one
                    + PbwElement.c(d, i) * PbwElement.c(d, i + 1)
                )
            elif j == i + 1:
                target = (
                    PbwElement.x(d, i) * si
                    + one
                    + PbwElement.c(d, i) * PbwElement.c(d, i + 1)
                )
            else:
                target = xj * si
            eq(f"s{i}x{j}", "mixed coxeter-polynomial", si * xj, target)

    # compatibility of the Clifford sign with the mixed relations: the two
    # bracketings of s_i.c_i.x_i agree only for c_i^2 = -1
    for i in range(1, d):
        si, xi, ci = PbwElement.s(d, i), PbwElement.x(d, i), PbwElement.c(d, i)
        eq(f"(s{i}c{i})x{i} assoc", "(s&x)-compatibility", (si * ci) * xi, si * (ci * xi))

    for i in range(1, d):
        phi = intertwiner_phi(d, i)
        eq(f"phi{i}^2", "intertwiner square", phi * phi, intertwiner_phi_squared_rhs(d, i))

    gens = generators(d)
    for name_g, _, g in gens:
        eq(
            f"sigma(sigma({name_g}))",
            "sigma involutive",
            g.sigma_twist().sigma_twist(),
            g,
        )
        eq(f"tau(tau({name_g}))", "tau involutive", g.tau_antiauto().tau_antiauto(), g)
    for name_g, _, g in gens:
        for name_h, _, h in gens:
            eq(
                f"sigma({name_g}{name_h})",
                "sigma multiplicative",
                (g * h).sigma_twist(),
                g.sigma_twist() * h.sigma_twist(),
            )
            eq(
                f"tau({name_g}{name_h})",
                "tau antimultiplicative",
                (g * h).tau_antiauto(),
                h.tau_antiauto() * g.tau_antiauto(),
            )

    assoc_ok = True
    filtration_ok = True
    for _ in range(samples):
        a, b, c = (random_monomial(d, rng) for _ in range(3))
        if (a * b) * c != a * (b * c):
            assoc_ok = False
            break
        ab = a * b
        la = a.max_perm_length() + b.max_perm_length()
        if ab.max_perm_length() > la:
            filtration_ok = False
            break
    rep.add(f"associativity x{samples}", "associativity on random monomials", True, assoc_ok)
    rep.add("filtration", "product length bounded by sum of lengths", True, filtration_ok)
    return rep.finish()
