"""Symmetric-group, multisegment, and shifted-tableau combinatorics.

Permutations are tuples ``w`` with ``w[k]`` the 0-based image of position k,
composed as functions: ``compose(u, v)(k) = u(v(k))``.  Generator labels
(``s_i``, ``x_i``, ``c_i``) are 1-based throughout the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import UsageError

Perm = tuple


def identity_perm(d: int) -> Perm:
    return tuple(range(d))


def simple_transposition(d: int, i: int) -> Perm:
    """s_i, swapping positions i and i+1 (1-based i, 1 <= i < d)."""
    w = list(range(d))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def transposition(d: int, i: int, j: int) -> Perm:
    """The transposition (i j), 1-based."""
    w = list(range(d))
    w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
    return tuple(w)


def compose(u: Perm, v: Perm) -> Perm:
    """(uv)(k) = u(v(k))."""
    return tuple(u[v[k]] for k in range(len(u)))


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for k, img in enumerate(w):
        out[img] = k
    return tuple(out)


def length(w: Perm) -> int:
    """Coxeter length = number of inversions."""
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def sign(w: Perm) -> int:
    return -1 if length(w) % 2 else 1


@lru_cache(maxsize=None)
def reduced_word(w: Perm) -> tuple[int, ...]:
    """A reduced expression w = s_{i_1} ... s_{i_k} (1-based letters)."""
    w = list(w)
    picked = []
    changed = True
    while changed:
        changed = False
        for i in range(1, len(w)):
            if w[i - 1] > w[i]:
                w[i - 1], w[i] = w[i], w[i - 1]
                picked.append(i)
                changed = True
                break
    return tuple(reversed(picked))


def all_permutations(d: int) -> list[Perm]:
    return [tuple(p) for p in itertools.permutations(range(d))]


def block_ranges(parts: tuple[int, ...]) -> list[range]:
    out, start = [], 0
    for p in parts:
        out.append(range(start, start + p))
        start += p
    return out


def is_block_increasing(w: Perm, parts: tuple[int, ...]) -> bool:
    for blk in block_ranges(parts):
        for k in blk[:-1]:
            if w[k] > w[k + 1]:
                return False
    return True


@lru_cache(maxsize=None)
def min_coset_reps(parts: tuple[int, ...]) -> tuple[Perm, ...]:
    """Minimal-length representatives for S_d / S_parts.

    Each representative is increasing on every block; there are d!/prod(p_i!)
    of them.  Sorted by (length, one-line word) for determinism.
    """
    d = sum(parts)
    reps = [w for w in all_permutations(d) if is_block_increasing(w, parts)]
    reps.sort(key=lambda w: (length(w), w))
    return tuple(reps)


def coset_factorize(w: Perm, parts: tuple[int, ...]) -> tuple[Perm, Perm]:
    """w = w_min . w_blk with w_min in D_parts and w_blk in S_parts."""
    w_min = list(w)
    for blk in block_ranges(parts):
        vals = sorted(w[k] for k in blk)
        for k, v in zip(blk, vals):
            w_min[k] = v
    w_min = tuple(w_min)
    w_blk = compose(inverse(w_min), w)
    return w_min, w_blk


def block_of_position(parts: tuple[int, ...], pos: int) -> int:
    """0-based block index containing 0-based position pos."""
    start = 0
    for b, p in enumerate(parts):
        if pos < start + p:
            return b
        start += p
    raise IndexError(pos)


def fold(a: int) -> int:
    """Nonnegative representative of the eigenvalue class a(a+1) = (-a-1)(-a)."""
    return a if a >= 0 else -a - 1


def q_value(a: int) -> int:
    return a * (a + 1)


# -- multisegments -----------------------------------------------------------


@dataclass(frozen=True)
class Multisegment:
    """A pair (lam, mu) of integer n-tuples with lam - mu componentwise >= 0.

    Row i encodes the integer interval [mu_i, lam_i - 1] of lam_i - mu_i boxes.
    """

    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self):
        if len(self.lam) != len(self.mu):
            raise UsageError("lam and mu must have the same number of parts")
        if any(l - m < 0 for l, m in zip(self.lam, self.mu)):
            raise UsageError(f"negative segment length in {self}")

    @property
    def n(self) -> int:
        return len(self.lam)

    @property
    def d(self) -> int:
        return sum(l - m for l, m in zip(self.lam, self.mu))

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(l - m for l, m in zip(self.lam, self.mu))

    def segments(self) -> list[tuple[int, int]]:
        """The (a, b) endpoint pairs [mu_i, lam_i - 1], skipping empty rows."""
        return [(m, l - 1) for l, m in zip(self.lam, self.mu) if l > m]

    def gamma0(self) -> int:
        return sum(1 for m in self.mu if m == 0)

    def weight_word(self) -> tuple[int, ...]:
        """Folded x^2-eigenvalue word of the distinguished cyclic vector."""
        out = []
        for a, b in self.segments():
            out.extend(fold(t) for t in range(a, b + 1))
        return tuple(out)

    def to_word(self) -> tuple[int, ...]:
        """Concatenated letter word; a negative start -j-1 contributes j..0,0..b."""
        out: list[int] = []
        for a, b in self.segments():
            if a >= 0:
                out.extend(range(a, b + 1))
            else:
                j = -a - 1
                out.extend(range(j, -1, -1))
                out.extend(range(0, b + 1))
        return tuple(out)

    def __str__(self) -> str:
        return ",".join(map(str, self.lam)) + "/" + ",".join(map(str, self.mu))

    @staticmethod
    def parse(text: str) -> "Multisegment":
        try:
            lam_s, mu_s = text.split("/")
            lam = tuple(int(x) for x in lam_s.split(","))
            mu = tuple(int(x) for x in mu_s.split(","))
        except ValueError as exc:
            raise UsageError(f"bad multisegment {text!r}; expected e.g. 3,2/-1,1") from exc
        return Multisegment(lam, mu)


def is_dominant(lam: tuple[int, ...]) -> bool:
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def is_typical(lam: tuple[int, ...]) -> bool:
    return all(lam[i] + lam[j] != 0 for i in range(len(lam)) for j in range(len(lam)))


def in_P_plus_of(lam: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    """mu weakly decreasing across equal parts of lam."""
    return all(
        mu[i] >= mu[j]
        for i in range(len(lam))
        for j in range(len(lam))
        if i < j and lam[i] == lam[j]
    )


def enumerate_Bd(d: int, n: int, max_part: int | None = None) -> list[Multisegment]:
    """All (lam, mu) with lam dominant typical positive (n parts), mu compatible,
    |mu_i| < lam_i, and total box count d.

    ``max_part`` bounds lam_1; the default d + 1 covers every word over the
    letters 0..d, which is what the degree-d good-word bijection needs.
    """
    bound = (d + 1) if max_part is None else max_part
    out: list[Multisegment] = []

    def rec(i: int, prev: int, lam: list[int], mu: list[int], left: int):
        if i == n:
            if left == 0:
                out.append(Multisegment(tuple(lam), tuple(mu)))
            return
        hi = min(prev, bound)
        for l in range(1, hi + 1):
            for m in range(-(l - 1), l):
                if l - m > left or l - m < 1:
                    continue
                if lam and lam[-1] == l and mu[-1] < m:
                    continue  # mu must be weakly decreasing across equal lam parts
                lam.append(l)
                mu.append(m)
                rec(i + 1, l, lam, mu, left - (l - m))
                lam.pop()
                mu.pop()

    rec(0, bound, [], [], d)
    return out


def enumerate_Bd_all_n(d: int, max_part: int | None = None) -> list[Multisegment]:
    out = []
    for n in range(1, d + 1):
        out.extend(enumerate_Bd(d, n, max_part))
    return out


# -- shifted skew shapes -----------------------------------------------------


@dataclass(frozen=True)
class ShiftedSkewShape:
    """Strict-partition pair: row i occupies columns i+mu_i .. i+lam_i-1 (1-based)."""

    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self):
        lam, mu = self.lam, self.mu
        if len(mu) != len(lam):
            raise UsageError("lam and mu must have the same number of rows")
        if any(lam[i] <= lam[i + 1] for i in range(len(lam) - 1)) or any(
            l <= 0 for l in lam
        ):
            raise UsageError(f"lam = {lam} must be strictly decreasing and positive")
        if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)) or any(m < 0 for m in mu):
            raise UsageError(f"mu = {mu} must be weakly decreasing and nonnegative")
        for i in range(len(mu) - 1):
            if mu[i] == mu[i + 1] and mu[i] != 0:
                raise UsageError("repeated nonzero part in mu")
        if any(m > l for l, m in zip(lam, mu)):
            raise UsageError("mu must fit inside lam")

    @property
    def d(self) -> int:
        return sum(l - m for l, m in zip(self.lam, self.mu))

    def boxes(self) -> list[tuple[int, int]]:
        """(row, col) pairs, 1-based, row-reading order."""
        out = []
        for i, (l, m) in enumerate(zip(self.lam, self.mu), start=1):
            out.extend((i, j) for j in range(i + m, i + l))
        return out

    @staticmethod
    def content(box: tuple[int, int]) -> int:
        i, j = box
        return j - i

    def __str__(self) -> str:
        return ",".join(map(str, self.lam)) + "/" + ",".join(map(str, self.mu))

    @staticmethod
    def parse(text: str) -> "ShiftedSkewShape":
        try:
            if "/" in text:
                lam_s, mu_s = text.split("/")
                lam = tuple(int(x) for x in lam_s.split(","))
                mu = tuple(int(x) for x in mu_s.split(",")) if mu_s else (0,) * len(lam)
            else:
                lam = tuple(int(x) for x in text.split(","))
                mu = (0,) * len(lam)
        except ValueError as exc:
            raise UsageError(f"bad shape {text!r}; expected e.g. 5,2,1/3,1,0") from exc
        return ShiftedSkewShape(lam, mu)

    def as_multisegment(self) -> Multisegment:
        rows = [(l, m) for l, m in zip(self.lam, self.mu) if l > m]
        return Multisegment(tuple(l for l, _ in rows), tuple(m for _, m in rows))


@dataclass(frozen=True)
class StandardFilling:
    """Entries 1..d placed in boxes; box_of[k] is the box holding k+1."""

    shape: ShiftedSkewShape
    box_of: tuple[tuple[int, int], ...]

    def content_reading(self) -> tuple[int, ...]:
        return tuple(ShiftedSkewShape.content(b) for b in self.box_of)

    def entry_at(self, box: tuple[int, int]) -> int:
        return self.box_of.index(box) + 1

    def apply_transposition(self, i: int) -> "StandardFilling | None":
        """Swap entries i and i+1; None if the result is not standard."""
        boxes = list(self.box_of)
        boxes[i - 1], boxes[i] = boxes[i], boxes[i - 1]
        cand = StandardFilling(self.shape, tuple(boxes))
        return cand if cand.is_standard() else None

    def is_standard(self) -> bool:
        pos = {b: k + 1 for k, b in enumerate(self.box_of)}
        for (r, c), e in pos.items():
            right = pos.get((r, c + 1))
            below = pos.get((r + 1, c))
            if right is not None and right <= e:
                return False
            if below is not None and below <= e:
                return False
        return True


def standard_fillings(shape: ShiftedSkewShape) -> list[StandardFilling]:
    """All standard fillings, enumerated by placing 1..d in admissible boxes."""
    boxes = shape.boxes()
    box_set = set(boxes)
    out: list[StandardFilling] = []
    placed: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def admissible(box: tuple[int, int]) -> bool:
        r, c = box
        left = (r, c - 1)
        up = (r - 1, c)
        if left in box_set and left not in placed:
            return False
        if up in box_set and up not in placed:
            return False
        return True

    def rec():
        if len(order) == len(boxes):
            out.append(StandardFilling(shape, tuple(order)))
            return
        for box in boxes:
            if box not in placed and admissible(box):
                placed[box] = len(order) + 1
                order.append(box)
                rec()
                order.pop()
                del placed[box]

    rec()
    out.sort(key=lambda f: f.content_reading())
    return out


def content_reading(filling: StandardFilling) -> tuple[int, ...]:
    return filling.content_reading()


def enumerate_shapes(max_boxes: int, max_col: int | None = None) -> list[ShiftedSkewShape]:
    """All shifted skew shapes with 1..max_boxes boxes and lam_1 <= bound.

    The bound (default max_boxes) keeps the family finite; it caps the largest
    content at bound - 1.
    """
    bound = max_boxes if max_col is None else max_col
    shapes = []
    lams: list[tuple[int, ...]] = []

    def lam_rec(prev: int, acc: list[int]):
        if acc:
            lams.append(tuple(acc))
        for l in range(prev - 1, 0, -1):
            acc.append(l)
            lam_rec(l, acc)
            acc.pop()

    lam_rec(bound + 1, [])
    for lam in lams:
        mu_choices: list[list[int]] = [[]]
        for i, l in enumerate(lam):
            new = []
            for mu in mu_choices:
                lo = 0
                hi = min(l, mu[-1] if mu else bound)
                for m in range(lo, hi + 1):
                    if mu and mu[-1] == m and m != 0:
                        continue
                    new.append(mu + [m])
            mu_choices = new
        for mu in mu_choices:
            if any(l - m > 0 for l, m in zip(lam, mu)) and sum(
                l - m for l, m in zip(lam, mu)
            ) <= max_boxes:
                if all(l > m for l, m in zip(lam, mu)):  # no empty rows
                    shapes.append(ShiftedSkewShape(lam, tuple(mu)))
    shapes.sort(key=lambda s: (s.d, s.lam, s.mu))
    return shapes
