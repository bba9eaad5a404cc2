"""Formal characters: integer-weighted multisets of weight words, and the
q = 1 shuffle product that matches parabolic induction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .combinatorics import ShiftedSkewShape, standard_fillings
from .errors import NonDivisibleDimension
from .supermodules import SuperModule, WeightTable, weight_table

Word = tuple


@dataclass(frozen=True)
class CharacterClass:
    """Finite multiset of weight words with positive integer multiplicities."""

    d: int
    entries: tuple[tuple[Word, int], ...]  # sorted, no zero multiplicities

    @staticmethod
    def from_dict(d: int, data: dict[Word, int]) -> "CharacterClass":
        items = tuple(sorted((w, m) for w, m in data.items() if m))
        if any(m < 0 for _, m in items):
            raise ValueError("negative multiplicity in character")
        return CharacterClass(d, items)

    def as_dict(self) -> dict[Word, int]:
        return dict(self.entries)

    def scale(self, k: int) -> "CharacterClass":
        return CharacterClass.from_dict(self.d, {w: k * m for w, m in self.entries})

    def __add__(self, other: "CharacterClass") -> "CharacterClass":
        data = self.as_dict()
        for w, m in other.entries:
            data[w] = data.get(w, 0) + m
        return CharacterClass.from_dict(self.d, data)

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def reversed_words(self) -> "CharacterClass":
        return CharacterClass.from_dict(
            self.d, {tuple(reversed(w)): m for w, m in self.entries}
        )

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "terms": [{"word": list(w), "mult": m} for w, m in self.entries],
        }

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        bits = []
        for w, m in self.entries:
            word = "[" + ",".join(map(str, w)) + "]"
            bits.append(word if m == 1 else f"{m}{word}")
        return " + ".join(bits)


def empty_character() -> CharacterClass:
    return CharacterClass.from_dict(0, {(): 1})


def block_dimension(word: Word) -> int:
    """Dimension of the irreducible with this weight word: 2^(d - floor(g0/2))."""
    gamma0 = sum(1 for a in word if a == 0)
    return 1 << (len(word) - gamma0 // 2)


def character(mod: SuperModule, table: WeightTable | None = None) -> CharacterClass:
    """Multiplicity of each word = (generalized block dim) / 2^(d - floor(g0/2))."""
    if table is None:
        table = weight_table(mod)
    data: dict[Word, int] = {}
    for word, blk in table.blocks.items():
        unit = block_dimension(word)
        if blk.gen_dim % unit:
            raise NonDivisibleDimension(
                f"block {word}: dim {blk.gen_dim} not divisible by {unit}"
            )
        data[word] = blk.gen_dim // unit
    return CharacterClass.from_dict(mod.d, data)


def shuffle_q1(w1: Word, w2: Word) -> CharacterClass:
    """Sum over all interleavings of the two words (with multiplicity)."""
    d = len(w1) + len(w2)
    data: dict[Word, int] = {}
    for positions in itertools.combinations(range(d), len(w1)):
        pos_set = set(positions)
        out = []
        it1, it2 = iter(w1), iter(w2)
        for k in range(d):
            out.append(next(it1) if k in pos_set else next(it2))
        key = tuple(out)
        data[key] = data.get(key, 0) + 1
    return CharacterClass.from_dict(d, data)


def char_product(c1: CharacterClass, c2: CharacterClass) -> CharacterClass:
    """Bilinear extension of the word shuffle."""
    data: dict[Word, int] = {}
    for w1, m1 in c1.entries:
        for w2, m2 in c2.entries:
            for w, m in shuffle_q1(w1, w2).entries:
                data[w] = data.get(w, 0) + m1 * m2 * m
    return CharacterClass.from_dict(c1.d + c2.d, data)


def calibrated_character(shape: ShiftedSkewShape) -> CharacterClass:
    """Sum of content readings over all standard fillings."""
    data: dict[Word, int] = {}
    for f in standard_fillings(shape):
        w = f.content_reading()
        data[w] = data.get(w, 0) + 1
    return CharacterClass.from_dict(shape.d, data)


def quotient_character(table: WeightTable, radical) -> CharacterClass:
    """Character of module/radical from per-block dimension differences."""
    from .supermodules import subspace_block_dims

    removed = subspace_block_dims(table, radical)
    data: dict[Word, int] = {}
    for word, blk in table.blocks.items():
        remaining = blk.gen_dim - removed.get(word, 0)
        if not remaining:
            continue
        unit = block_dimension(word)
        if remaining % unit:
            raise NonDivisibleDimension(
                f"block {word}: dim {remaining} not divisible by {unit}"
            )
        data[word] = remaining // unit
    return CharacterClass.from_dict(table.d, data)


def segment_character(a: int, b: int) -> CharacterClass:
    """Closed-form character of the irreducible segment module [a, b]:
    one word for a >= 0, twice the folded word for a < 0."""
    d = b - a + 1
    if a >= 0:
        return CharacterClass.from_dict(d, {tuple(range(a, b + 1)): 1})
    j = -a - 1
    word = tuple(range(j, -1, -1)) + tuple(range(0, b + 1))
    return CharacterClass.from_dict(d, {word: 2})


def big_segment_character(a: int, b: int) -> CharacterClass:
    """Closed-form character of the doubled segment module."""
    d = b - a + 1
    if a == 0:
        return CharacterClass.from_dict(d, {tuple(range(0, b + 1)): 1})
    if a > 0:
        return CharacterClass.from_dict(d, {tuple(range(a, b + 1)): 2})
    j = -a - 1
    word = tuple(range(j, -1, -1)) + tuple(range(0, b + 1))
    return CharacterClass.from_dict(d, {word: 4})


def standard_character(lam: tuple[int, ...], mu: tuple[int, ...]) -> CharacterClass:
    """Character of the standard module as an iterated shuffle of segment
    characters (the combinatorial route through the induction formula)."""
    out = empty_character()
    for l, m in zip(lam, mu):
        if l > m:
            out = char_product(out, segment_character(m, l - 1))
    return out
