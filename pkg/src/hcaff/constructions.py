"""Builders for the concrete module families: segments, standard cyclic
modules, Kato modules, calibrated modules, and simple quotients."""

from __future__ import annotations

from dataclasses import dataclass

from . import supermodules as sm
from .algebra import cliff_mul, cliff_conjugate
from .combinatorics import (
    Multisegment,
    ShiftedSkewShape,
    StandardFilling,
    fold,
    q_value,
    standard_fillings,
    transposition,
)
from .errors import DegenerateContents, NormalizationFailure
from .linalg import Mat, Vec, span_echelon
from .scalars import ONE, Rat, Surd
from .supermodules import SuperModule, induce, outer_tensor, spin_up, tensor_vector


def _kappas(a: int, d: int) -> dict[int, Surd]:
    return {i: Surd.sqrt_rational(q_value(a + i - 1)) for i in range(1, d + 1)}


@dataclass
class BigSegment:
    """The doubled segment module on basis phi^delta c^eps . 1."""

    a: int
    b: int
    module: SuperModule

    @property
    def d(self) -> int:
        return self.b - self.a + 1

    def index(self, delta: int, eps: int) -> int:
        return (delta << self.d) + eps if self.a != 0 else eps

    def one_hat(self) -> Vec:
        return {self.index(0, 0): ONE}


def big_segment(a: int, b: int) -> BigSegment:
    """Module on phi^delta (x) c^eps 1 with x_i = a eps_i + L_i - phi c_i.

    dim = 2^d for a = 0 (phi is zero there) and 2^{d+1} otherwise.
    """
    d = b - a + 1
    if d < 1:
        raise ValueError("segment must have at least one box")
    deltas = (0,) if a == 0 else (0, 1)
    size = len(deltas) << d
    parity = tuple(
        (delta + bin(eps).count("1")) % 2 for delta in deltas for eps in range(1 << d)
    )

    def idx(delta: int, eps: int) -> int:
        return (delta << d) + eps

    def bump(col: Vec, key: int, val: Surd):
        cur = col.get(key)
        nv = val if cur is None else cur + val
        if nv.is_zero():
            col.pop(key, None)
        else:
            col[key] = nv

    ss: dict[int, Mat] = {}
    for i in range(1, d):
        m = Mat.zero(size, size)
        for delta in deltas:
            for eps in range(1 << d):
                # conjugating the Clifford word by s_i swaps bits i-1, i
                bi, bj = 1 << (i - 1), 1 << i
                swapped = eps
                if bool(eps & bi) != bool(eps & bj):
                    swapped = eps ^ bi ^ bj
                sign = -ONE if (eps & bi and eps & bj) else ONE
                bump(m.cols[idx(delta, eps)], idx(delta, swapped), sign)
        ss[i] = m

    cs: list[Mat] = []
    for i in range(1, d + 1):
        m = Mat.zero(size, size)
        for delta in deltas:
            koszul = -1 if delta else 1
            for eps in range(1 << d):
                sgn, mask = cliff_mul(1 << (i - 1), eps)
                bump(m.cols[idx(delta, eps)], idx(delta, mask), Surd.from_rational(sgn * koszul))
        cs.append(m)

    xs: list[Mat] = []
    for i in range(1, d + 1):
        m = Mat.zero(size, size)
        for delta in deltas:
            for eps in range(1 << d):
                col = m.cols[idx(delta, eps)]
                # a (x) eps_i
                if a != 0:
                    sgn = -a if eps & (1 << (i - 1)) else a
                    bump(col, idx(delta, eps), Surd.from_rational(sgn))
                # 1 (x) L_i acting on c^eps 1
                for j in range(1, i):
                    t = transposition(d, j, i)
                    s1, conj = cliff_conjugate(eps, t)
                    bump(col, idx(delta, conj), Surd.from_rational(s1))
                    s2, pair = cliff_mul(1 << (j - 1), 1 << (i - 1))
                    s3, full = cliff_mul(pair, conj)
                    bump(col, idx(delta, full), Surd.from_rational(-s1 * s2 * s3))
                # - phi (x) c_i
                if a != 0:
                    koszul = -1 if delta else 1
                    s4, mask = cliff_mul(1 << (i - 1), eps)
                    phi_coeff = Rat(a) if delta else Rat(1)
                    bump(
                        col,
                        idx(1 - delta, mask),
                        Surd.from_rational(-koszul * s4 * phi_coeff),
                    )
        xs.append(m)

    mod = SuperModule(d=d, parity=parity, xs=xs, cs=cs, ss=ss)
    return BigSegment(a=a, b=b, module=mod)


def _selector_vector(big: BigSegment, skip: set[int]) -> Vec:
    """X_S . 1_hat computed inside the module, S = skip."""
    d = big.d
    kappas = _kappas(big.a, d)
    v = big.one_hat()
    for i in range(1, d + 1):
        if i in skip:
            continue
        img = big.module.xs[i - 1].apply(v)
        for k, c in v.items():
            cur = img.get(k)
            nv = c * kappas[i] if cur is None else cur + c * kappas[i]
            if nv.is_zero():
                img.pop(k, None)
            else:
                img[k] = nv
        v = img
    return v


@dataclass
class Segment:
    """An irreducible segment module together with its distinguished vector."""

    a: int
    b: int
    module: SuperModule
    one: Vec  # coordinates of the distinguished cyclic vector

    @property
    def d(self) -> int:
        return self.b - self.a + 1


def segment(a: int, b: int) -> Segment:
    """The irreducible segment module: whole doubled module for a = 0, the
    distinguished summand for a != 0; dim 2^d in every case."""
    big = big_segment(a, b)
    d = big.d
    if a == 0:
        one = _selector_vector(big, {1})
        mod = big.module
        ech = span_echelon([{k: ONE} for k in range(mod.dim)], mod.dim)
        coords = ech.express(one)
        return Segment(a, b, mod, coords)
    if a > 0:
        w = _selector_vector(big, set())
        mod, ech = spin_up(big.module, [w])
        assert mod.dim == 1 << d, (a, b, mod.dim)
        return Segment(a, b, mod, ech.express(w))
    # a < 0: positions al, al+1 carry the zero eigenvalues
    al = -a
    v = _selector_vector(big, {al + 1})
    cc = big.module.cs[al - 1] @ big.module.cs[al]
    w_vec: Vec = {}
    from .linalg import vec_add_scaled

    vec_add_scaled(w_vec, v, -ONE)
    vec_add_scaled(w_vec, cc.apply(v), -Surd.i())
    wbar = big.module.ss[al].apply(w_vec)
    mod, ech = spin_up(big.module, [w_vec, wbar])
    assert mod.dim == 1 << d, (a, b, mod.dim)
    return Segment(a, b, mod, ech.express(w_vec))


def segment_pair(a: int, b: int) -> tuple[Segment, Segment]:
    """Both distinguished summands of the doubled segment module (a != 0).

    For a > 0 the seeds are X_empty.1 and (x_1 - kappa_1) X_{1}.1; for a < 0
    they are -(1 +/- sqrt(-1) c c) X_{a+1}.1 and their s_a images.
    """
    if a == 0:
        raise ValueError("the a = 0 module does not decompose")
    from .linalg import vec_add_scaled

    big = big_segment(a, b)
    d = big.d
    if a > 0:
        w_plus = _selector_vector(big, set())
        sel = _selector_vector(big, {1})
        kappa1 = Surd.sqrt_rational(q_value(a))
        w_minus = big.module.xs[0].apply(sel)
        for k, c in sel.items():
            cur = w_minus.get(k)
            nv = -(c * kappa1) if cur is None else cur - c * kappa1
            if nv.is_zero():
                w_minus.pop(k, None)
            else:
                w_minus[k] = nv
        plus_mod, ech_p = spin_up(big.module, [w_plus])
        minus_mod, ech_m = spin_up(big.module, [w_minus])
        plus = Segment(a, b, plus_mod, ech_p.express(w_plus))
        minus = Segment(a, b, minus_mod, ech_m.express(w_minus))
        return plus, minus
    al = -a
    v = _selector_vector(big, {al + 1})
    cc = big.module.cs[al - 1] @ big.module.cs[al]
    ccv = cc.apply(v)
    seeds = []
    for sgn in (Surd.i(), -Surd.i()):
        w: Vec = {}
        vec_add_scaled(w, v, -ONE)
        vec_add_scaled(w, ccv, -sgn)
        seeds.append(w)
    out = []
    for w in seeds:
        wbar = big.module.ss[al].apply(w)
        mod, ech = spin_up(big.module, [w, wbar])
        out.append(Segment(a, b, mod, ech.express(w)))
    return out[0], out[1]


@dataclass
class StandardModule:
    multisegment: Multisegment
    module: SuperModule
    cyclic: Vec
    little_dim: int

    @property
    def zeta(self) -> tuple[int, ...]:
        return self.multisegment.weight_word()


def standard_module(mseg: Multisegment) -> StandardModule:
    """Parabolic induction of the product of segment modules.

    The product of the little segments is realized inside the plain outer
    tensor product by spinning up the paired cyclic vector, then induced.
    """
    segs = mseg.segments()
    if not segs:
        raise ValueError("empty multisegment")
    littles = [segment(a, b) for a, b in segs]
    prod = littles[0].module
    vec = littles[0].one
    for piece in littles[1:]:
        vec = tensor_vector(prod, vec, piece.module, piece.one)
        prod = outer_tensor(prod, piece.module)
    # pair consecutive type-Q factors (segment start 0) through their first box
    zero_positions = []
    offset = 0
    for (a, b) in segs:
        if a == 0:
            zero_positions.append(offset + 1)
        offset += b - a + 1
    for k in range(len(zero_positions) // 2):
        z1, z2 = zero_positions[2 * k], zero_positions[2 * k + 1]
        cc = prod.cs[z1 - 1] @ prod.cs[z2 - 1]
        img = cc.apply(vec)
        new: Vec = {}
        from .linalg import vec_add_scaled

        vec_add_scaled(new, vec, ONE)
        vec_add_scaled(new, img, -Surd.i())
        vec = new
    par, ech = spin_up(prod, [vec])
    d = mseg.d
    expect_little = 1 << (d - mseg.gamma0() // 2)
    assert par.dim == expect_little, (str(mseg), par.dim, expect_little)
    lengths = tuple(b - a + 1 for a, b in segs)
    mod = induce(par, lengths)
    coords = ech.express(vec)
    cyclic = dict(coords)  # identity coset block sits first
    return StandardModule(mseg, mod, cyclic, par.dim)


def kato_module(a: int, d: int) -> StandardModule:
    """All segments of length one with the same start a."""
    return standard_module(Multisegment((a + 1,) * d, (a,) * d))


@dataclass
class CalibratedModule:
    shape: ShiftedSkewShape
    fillings: list[StandardFilling]
    big: SuperModule
    module: SuperModule

    @property
    def d(self) -> int:
        return self.shape.d


def _calibrated_big(shape: ShiftedSkewShape) -> tuple[SuperModule, list[StandardFilling]]:
    fillings = standard_fillings(shape)
    d = shape.d
    nfill = len(fillings)
    size = nfill << d
    parity = tuple(bin(eps).count("1") % 2 for _ in range(nfill) for eps in range(1 << d))

    readings = [f.content_reading() for f in fillings]
    index_of = {f.box_of: k for k, f in enumerate(fillings)}
    kappa = [
        [Surd.sqrt_rational(q_value(c)) for c in reading] for reading in readings
    ]

    def idx(l: int, eps: int) -> int:
        return (l << d) + eps

    def bump(col: Vec, key: int, val: Surd):
        cur = col.get(key)
        nv = val if cur is None else cur + val
        if nv.is_zero():
            col.pop(key, None)
        else:
            col[key] = nv

    xs = []
    for i in range(1, d + 1):
        m = Mat.zero(size, size)
        for l in range(nfill):
            for eps in range(1 << d):
                sgn = -ONE if eps & (1 << (i - 1)) else ONE
                val = kappa[l][i - 1] * sgn
                if not val.is_zero():
                    bump(m.cols[idx(l, eps)], idx(l, eps), val)
        xs.append(m)

    cs = []
    for i in range(1, d + 1):
        m = Mat.zero(size, size)
        for l in range(nfill):
            for eps in range(1 << d):
                sgn, mask = cliff_mul(1 << (i - 1), eps)
                bump(m.cols[idx(l, eps)], idx(l, mask), Surd.from_rational(sgn))
        cs.append(m)

    ss = {}
    for i in range(1, d):
        m = Mat.zero(size, size)
        for l, f in enumerate(fillings):
            ka, kb = kappa[l][i - 1], kappa[l][i]
            if (kb - ka).is_zero():
                raise DegenerateContents(f"{shape} filling {l} at position {i}")
            inv_diff = (kb - ka).inverse()
            inv_sum = (kb + ka).inverse() if not (kb + ka).is_zero() else None
            if inv_sum is None:
                raise DegenerateContents(f"{shape} filling {l}: kappa sum vanishes")
            other = f.apply_transposition(i)
            y = None
            if other is not None:
                qa = q_value(readings[l][i - 1])
                qb = q_value(readings[l][i])
                y2 = Rat(1) - Rat(2 * (qa + qb), (qb - qa) ** 2)
                y = Surd.sqrt_rational(y2)
            for eps in range(1 << d):
                # push s_i through c^eps: swap bits i-1, i
                bi, bj = 1 << (i - 1), 1 << i
                swapped = eps
                if bool(eps & bi) != bool(eps & bj):
                    swapped = eps ^ bi ^ bj
                csgn = -ONE if (eps & bi and eps & bj) else ONE
                col = m.cols[idx(l, eps)]
                bump(col, idx(l, swapped), csgn * inv_diff)
                s1, pair = cliff_mul(1 << (i - 1), 1 << i)
                s2, full = cliff_mul(swapped, pair)
                bump(col, idx(l, full), csgn * inv_sum * Surd.from_rational(s1 * s2))
                if other is not None and not y.is_zero():
                    bump(col, idx(index_of[other.box_of], swapped), csgn * y)
        ss[i] = m

    return SuperModule(d=d, parity=parity, xs=xs, cs=cs, ss=ss), fillings


def calibrated_module(shape: ShiftedSkewShape) -> CalibratedModule:
    """The irreducible calibrated module attached to the shape.

    Built inside the ambient space (+)_L Cl(d) v_L by spinning up the cyclic
    vector obtained from the row-reading filling with consecutive content-zero
    positions paired through (1 - sqrt(-1) c c).
    """
    big, fillings = _calibrated_big(shape)
    d = shape.d
    row_reading = StandardFilling(shape, tuple(shape.boxes()))
    assert row_reading.is_standard()
    l0 = next(k for k, f in enumerate(fillings) if f.box_of == row_reading.box_of)
    seed: Vec = {l0 << d: ONE}
    zeros = [k + 1 for k, c in enumerate(row_reading.content_reading()) if c == 0]
    from .linalg import vec_add_scaled

    for k in range(len(zeros) // 2):
        z1, z2 = zeros[2 * k], zeros[2 * k + 1]
        cc = big.cs[z1 - 1] @ big.cs[z2 - 1]
        img = cc.apply(seed)
        new: Vec = {}
        vec_add_scaled(new, seed, ONE)
        vec_add_scaled(new, img, -Surd.i())
        seed = new
    mod, _ = spin_up(big, [seed])
    gamma0 = sum(1 for c in row_reading.content_reading() if c == 0)
    expect = (1 << (d - gamma0 // 2)) * len(fillings)
    assert mod.dim == expect, (str(shape), mod.dim, expect)
    return CalibratedModule(shape=shape, fillings=fillings, big=big, module=mod)


def simple_module(mseg: Multisegment) -> SuperModule:
    """Unique simple quotient of the standard module at the distinguished weight."""
    std = standard_module(mseg)
    return sm.simple_quotient(std.module, std.zeta)


def simple_module_with_character(mseg: Multisegment):
    """The simple quotient together with its character, the latter computed
    from the block dimensions of the radical (exact, no re-analysis of the
    dense quotient matrices)."""
    from .characters import quotient_character

    std = standard_module(mseg)
    quot, radical, table = sm.simple_quotient_parts(std.module, std.zeta)
    return quot, quotient_character(table, radical)
