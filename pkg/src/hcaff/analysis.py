"""Irreducibility/type analysis, hom spaces, isomorphism search, star products.

The key structural fact: every nonzero submodule meets the strict
positive-square-root eigenspace S_zeta = {v : x_i v = +sqrt(a_i(a_i+1)) v} of
one of the module weights, and S_zeta is a graded module over the Clifford
algebra on the zero positions of zeta.  When each S_zeta is irreducible over
that Clifford algebra (multiplicity one), spinning up the S_zeta gives a
complete, certified irreducibility test.  Homomorphisms are found by
propagating seed values along a spanning forest grown from the S_zeta.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import DEFAULT_SEED
from .errors import NormalizationFailure
from .linalg import Mat, TrackedEchelon, Vec, span_echelon, vec_add_scaled
from .scalars import ONE, Rat, Surd
from .supermodules import (
    SuperModule,
    WeightTable,
    outer_tensor,
    spin_up,
    sqrt_weight_space,
    submodule_from_rows,
    weight_table,
)


def _gamma0(word: tuple[int, ...]) -> int:
    return sum(1 for a in word if a == 0)


def _vector_parity(mod: SuperModule, v: Vec) -> int:
    parities = {mod.parity[k] for k in v}
    if len(parities) != 1:
        raise ValueError("vector is not parity homogeneous")
    return parities.pop()


@dataclass
class SpinBasis:
    vectors: list[Vec]
    derivation: list[tuple[int, int] | None]  # (generator index, parent) or seed
    ech: TrackedEchelon
    seed_words: list[tuple[int, ...]]  # weight word of each seed

    @property
    def rank(self) -> int:
        return len(self.vectors)


def generating_spin(mod: SuperModule, seeds: list[tuple[tuple[int, ...], Vec]]) -> SpinBasis:
    """Spanning forest from the seeds, recording one derivation per vector."""
    gens = mod.generator_items()
    ech = TrackedEchelon(mod.dim)
    vectors: list[Vec] = []
    deriv: list[tuple[int, int] | None] = []
    words: list[tuple[int, ...]] = []
    for word, v in seeds:
        if ech.insert(v, label=len(vectors)) is not None:
            vectors.append(v)
            deriv.append(None)
            words.append(word)
    frontier = list(range(len(vectors)))
    while frontier:
        nxt = []
        for k in frontier:
            for gi, (_, _, g) in enumerate(gens):
                img = g.apply(vectors[k])
                if img and ech.insert(img, label=len(vectors)) is not None:
                    vectors.append(img)
                    deriv.append((gi, k))
                    nxt.append(len(vectors) - 1)
        frontier = nxt
    return SpinBasis(vectors, deriv, ech, words)


def hom_space(
    m1: SuperModule,
    m2: SuperModule,
    parity: int,
    spin: SpinBasis | None = None,
    table1: WeightTable | None = None,
    table2: WeightTable | None = None,
) -> list[Mat] | None:
    """Basis of {f : f(g v) = (-1)^{p(f)p(g)} g f(v)} of the given parity.

    Returns None when the sqrt-weight seeds of m1 do not generate it (the
    propagation method then does not apply).  Target sqrt spaces in m2 are
    computed directly, so no weight analysis of m2 is needed.
    """
    if m1.d != m2.d:
        return []
    table1 = table1 or weight_table(m1)
    if spin is None:
        seeds = []
        for word in table1.words():
            for v in sqrt_weight_space(m1, word, table1):
                seeds.append((word, v))
        spin = generating_spin(m1, seeds)
    if spin.rank != m1.dim:
        return None
    from .supermodules import sqrt_weight_space_direct

    target_cache: dict[tuple, list[Vec]] = {}

    def targets_for(word):
        if word not in target_cache:
            if table2 is not None:
                target_cache[word] = (
                    sqrt_weight_space(m2, word, table2) if word in table2.blocks else []
                )
            else:
                target_cache[word] = sqrt_weight_space_direct(m2, word)
        return target_cache[word]

    gens1 = m1.generator_items()
    gens2 = m2.generator_items()
    signs = [
        -ONE if (parity and p) else ONE for _, p, _ in gens1
    ]

    # unknowns: images of each seed inside the matching sqrt space of m2,
    # shifted by the requested parity of f
    targets: list[tuple[int, Vec]] = []  # (seed index, target vector)
    seed_index = [k for k, dv in enumerate(spin.derivation) if dv is None]
    for pos, k in enumerate(seed_index):
        word = spin.seed_words[pos]
        sp = _vector_parity(m1, spin.vectors[k])
        for t in targets_for(word):
            if _vector_parity(m2, t) == (sp + parity) % 2:
                targets.append((k, t))
    if not targets:
        return []

    # propagate each unknown through the forest
    images: list[list[Vec]] = []
    for k0, t in targets:
        f_imgs: list[Vec] = []
        for k, dv in enumerate(spin.derivation):
            if dv is None:
                f_imgs.append(dict(t) if k == k0 else {})
            else:
                gi, parent = dv
                img = gens2[gi][2].apply(f_imgs[parent])
                if signs[gi] == -ONE:
                    img = {a: -c for a, c in img.items()}
                f_imgs.append(img)
        images.append(f_imgs)

    # consistency equations over the unknown coefficients
    rows: dict[tuple[int, int, int], Vec] = {}
    nunk = len(targets)
    for k, b in enumerate(spin.vectors):
        for gi, (_, _, g1) in enumerate(gens1):
            w = g1.apply(b)
            coords = spin.ech.express_raw(w)
            assert coords is not None
            for u in range(nunk):
                lhs: Vec = {}
                for i, c in coords.items():
                    vec_add_scaled(lhs, images[u][i], c)
                rhs = gens2[gi][2].apply(images[u][k])
                if signs[gi] == -ONE:
                    rhs = {a: -c for a, c in rhs.items()}
                vec_add_scaled(lhs, rhs, -ONE)
                for coord, val in lhs.items():
                    rows.setdefault((k, gi, coord), {})[u] = val
    from .linalg import kernel_of_rows

    sols = kernel_of_rows(list(rows.values()), nunk)

    # assemble matrices on the standard basis
    out = []
    for sol in sols:
        combined: list[Vec] = []
        for k in range(spin.rank):
            v: Vec = {}
            for u, c in sol.items():
                vec_add_scaled(v, images[u][k], c)
            combined.append(v)
        cols = []
        for j in range(m1.dim):
            coords = spin.ech.express_raw({j: ONE})
            col: Vec = {}
            for i, c in coords.items():
                vec_add_scaled(col, combined[i], c)
            cols.append(col)
        mat = Mat(m2.dim, cols)
        if not mat.is_zero():
            out.append(mat)
    return out


@dataclass
class Analysis:
    irreducible: bool | None
    mtype: str  # 'M', 'Q', or 'n/a'
    certified: bool
    detail: str = ""


def analyze(mod: SuperModule, table: WeightTable | None = None) -> Analysis:
    """Certified irreducibility and type for integral modules.

    Complete whenever every sqrt-weight space has Clifford multiplicity one
    (which covers every family this package builds); otherwise falls back to
    even-endomorphism evidence and reports inconclusive rather than guessing.
    """
    if mod.dim == 0:
        return Analysis(False, "n/a", True, "zero module")
    table = table or weight_table(mod)
    seeds: list[tuple[tuple[int, ...], Vec]] = []
    mults: dict[tuple[int, ...], int] = {}
    spaces: dict[tuple[int, ...], list[Vec]] = {}
    for word in table.words():
        space = sqrt_weight_space(mod, word, table)
        if not space:
            return Analysis(None, "n/a", False, f"empty sqrt space at {word}")
        unit = 1 << ((_gamma0(word) + 1) // 2)
        if len(space) % unit:
            return Analysis(None, "n/a", False, f"odd Clifford multiplicity at {word}")
        mults[word] = len(space) // unit
        spaces[word] = space
        seeds.extend((word, v) for v in space)

    # a proper spin from any single weight space witnesses reducibility
    for word, space in spaces.items():
        sub, _ = spin_up(mod, space)
        if sub.dim < mod.dim:
            return Analysis(False, "n/a", True, f"proper submodule from weight {word}")

    if all(m == 1 for m in mults.values()):
        # complete certificate: every submodule contains some full S_zeta
        mtype = _type_of_irreducible(mod, table, mults)
        return Analysis(True, mtype, True, "sqrt-weight certificate")

    evens = hom_space(mod, mod, 0, table1=table, table2=table)
    if evens is None:
        return Analysis(None, "n/a", False, "seeds do not generate")
    if len(evens) >= 2:
        return Analysis(False, "n/a", True, f"even endomorphisms dim {len(evens)}")
    return Analysis(None, "n/a", False, "multiplicity > 1, no witness found")


def _type_of_irreducible(mod: SuperModule, table: WeightTable, mults) -> str:
    # an odd endomorphism restricts to an odd twisted endomorphism of some
    # S_zeta; those vanish when gamma0 is even, forcing type M
    if any(_gamma0(w) % 2 == 0 for w in table.words()):
        return "M"
    odds = hom_space(mod, mod, 1, table1=table, table2=table)
    return "Q" if odds else "M"


def odd_involution(mod: SuperModule, table: WeightTable | None = None) -> Mat:
    """For a type-Q irreducible: the odd endomorphism normalized to square to 1."""
    odds = hom_space(mod, mod, 1, table1=table, table2=table)
    if not odds:
        raise NormalizationFailure("no odd endomorphism exists")
    theta = odds[0]
    sq = theta @ theta
    scalar = sq.entry(0, 0)
    if not (sq == Mat.identity(mod.dim).scale(scalar)) or not scalar.is_rational():
        raise NormalizationFailure("theta^2 is not a rational multiple of identity")
    r = scalar.rational_value()
    if r <= 0:
        raise NormalizationFailure(f"theta^2 = {r} <= 0")
    return theta.scale(Surd.sqrt_rational(r).inverse())


def star_split(m1: SuperModule, m2: SuperModule) -> tuple[SuperModule, str]:
    """Irreducible product of two irreducibles: the plain outer product unless
    both factors are type Q, in which case the +i eigenspace of the paired odd
    involutions is taken."""
    a1, a2 = analyze(m1), analyze(m2)
    prod = outer_tensor(m1, m2)
    if a1.mtype != "Q" or a2.mtype != "Q":
        return prod, "M-type-product"
    t1 = odd_involution(m1)
    t2 = odd_involution(m2)
    n1, n2 = m1.dim, m2.dim
    # Theta = theta1 (x) theta2 with the Koszul sign (-1)^{p(theta2) p(m)}
    cols: list[Vec] = [{} for _ in range(n1 * n2)]
    for a in range(n1):
        sgn = -ONE if m1.parity[a] else ONE
        for b in range(n2):
            col = cols[a * n2 + b]
            for ap, va in t1.cols[a].items():
                for bp, vb in t2.cols[b].items():
                    col[ap * n2 + bp] = va * vb * sgn
    theta = Mat(n1 * n2, cols)
    assert (theta @ theta) == Mat.identity(n1 * n2).scale(-ONE)
    shift = theta - Mat.identity(n1 * n2).scale(Surd.i())
    from .linalg import kernel_of_rows

    basis = kernel_of_rows(shift.rows(), n1 * n2)
    ech = span_echelon(basis, n1 * n2)
    piece = submodule_from_rows(prod, ech)
    assert piece.dim * 2 == prod.dim
    return piece, "Q-Q-split"


def iso_search(
    m1: SuperModule,
    m2: SuperModule,
    seed: int | None = None,
) -> tuple[str, Mat] | None:
    """An invertible intertwiner m1 -> m2, if one exists.

    Returns ('even'|'odd', matrix) or None.  The propagation runs over the
    sparser side (homs invert exactly), which matters when one module carries
    dense quotient coordinates.
    """
    if m1.d != m2.d or m1.dim != m2.dim:
        return None
    from .linalg import mat_inverse

    swap = sum(m.nnz() for m in m1.xs) > sum(m.nnz() for m in m2.xs)
    a, b = (m2, m1) if swap else (m1, m2)
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    for parity, name in ((0, "even"), (1, "odd")):
        sols = hom_space(a, b, parity)
        if sols is None:
            raise ValueError("sqrt-weight seeds do not generate the module")
        candidates = list(sols)
        for _ in range(6 if len(sols) > 1 else 0):
            combo = Mat.zero(b.dim, a.dim)
            for f in sols:
                combo = combo + f.scale(Surd.from_rational(rng.randint(-3, 3)))
            candidates.append(combo)
        for f in candidates:
            if _invertible(f):
                if not swap:
                    return name, f
                inv = mat_inverse(f)
                assert inv is not None
                return name, inv
    return None


def _invertible(m: Mat) -> bool:
    ech = span_echelon(list(m.cols), m.nrows)
    return ech.rank == m.nrows
