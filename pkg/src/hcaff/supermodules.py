"""Z2-graded matrix representations: container, relation checks, functors.

A :class:`SuperModule` stores exact matrices for the generators s_i, c_i, x_i
acting on a graded space.  Parabolic modules (restrictions to a block
subalgebra) simply omit the boundary s_i matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import algebra as alg
from . import combinatorics as comb
from .combinatorics import Perm, compose, identity_perm, inverse, min_coset_reps
from .errors import BlockMismatch, NonIntegralWeight, WeightAbsent
from .linalg import (
    Echelon,
    Mat,
    Vec,
    kernel_of_rows,
    span_echelon,
    vec_add_scaled,
    vec_scale,
)
from .reports import Report
from .scalars import ONE, Rat, Surd

MAX_EIGEN_SCAN = 64  # largest a tried when matching x_i^2 eigenvalues to a(a+1)


@dataclass
class SuperModule:
    d: int
    parity: tuple[int, ...]
    xs: list[Mat]
    cs: list[Mat]
    ss: dict[int, Mat]  # available s_i; a full module has keys 1..d-1

    @property
    def dim(self) -> int:
        return len(self.parity)

    def is_full(self) -> bool:
        return set(self.ss) == set(range(1, self.d))

    def x(self, i: int) -> Mat:
        return self.xs[i - 1]

    def c(self, i: int) -> Mat:
        return self.cs[i - 1]

    def s(self, i: int) -> Mat:
        return self.ss[i]

    def generator_items(self) -> list[tuple[str, int, Mat]]:
        out = [(f"s{i}", 0, m) for i, m in sorted(self.ss.items())]
        out += [(f"c{i+1}", 1, m) for i, m in enumerate(self.cs)]
        out += [(f"x{i+1}", 0, m) for i, m in enumerate(self.xs)]
        return out

    def x_squared(self, i: int) -> Mat:
        return self.xs[i - 1] @ self.xs[i - 1]

    def perm_matrix(self, w: Perm) -> Mat:
        m = Mat.identity(self.dim)
        for i in comb.reduced_word(w):
            m = m @ self.ss[i]
        return m

    def clifford_matrix(self, mask: int) -> Mat:
        m = Mat.identity(self.dim)
        for b in range(self.d):
            if mask & (1 << b):
                m = m @ self.cs[b]
        return m

    def x_monomial_matrix(self, beta: tuple[int, ...]) -> Mat:
        m = Mat.identity(self.dim)
        for k, e in enumerate(beta):
            for _ in range(e):
                m = m @ self.xs[k]
        return m

    def element_matrix(self, elem: alg.PbwElement) -> Mat:
        """Matrix of a PBW element (requires the needed s_i to be available)."""
        out = Mat.zero(self.dim, self.dim)
        for (alpha, eps, w), coeff in elem.terms.items():
            m = self.x_monomial_matrix(alpha) @ self.clifford_matrix(eps) @ self.perm_matrix(w)
            out = out + m.scale(coeff)
        return out


def unit_module(d: int = 0) -> SuperModule:
    """The one-dimensional module of the rank-0 algebra."""
    return SuperModule(d=d, parity=(0,), xs=[], cs=[], ss={})


# -- relation verification ----------------------------------------------------


def _parity_ok(m: Mat, parity: tuple[int, ...], p: int) -> bool:
    for j, col in enumerate(m.cols):
        for i in col:
            if (parity[i] + parity[j]) % 2 != p:
                return False
    return True


def verify_module(mod: SuperModule, name: str = "module") -> Report:
    """Every defining relation among the available generators, exactly."""
    rep = Report(f"verify-module {name}")
    n = mod.dim
    one = Mat.identity(n)
    d = mod.d

    for gname, p, m in mod.generator_items():
        rep.add(f"parity {gname}", "generator homogeneity", True, _parity_ok(m, mod.parity, p))

    for i in range(1, d + 1):
        ci = mod.c(i)
        rep.add(f"c{i}^2", "clifford square", True, (ci @ ci) == -one)
        for j in range(i + 1, d + 1):
            cj = mod.c(j)
            rep.add(
                f"c{i}c{j}+c{j}c{i}",
                "clifford anticommute",
                True,
                (ci @ cj + cj @ ci).is_zero(),
            )
    for i in sorted(mod.ss):
        si = mod.s(i)
        rep.add(f"s{i}^2", "coxeter square", True, (si @ si) == one)
        if i + 1 in mod.ss:
            sn = mod.s(i + 1)
            rep.add(
                f"braid s{i}s{i+1}",
                "braid",
                True,
                (si @ sn @ si) == (sn @ si @ sn),
            )
        for j in sorted(mod.ss):
            if j > i + 1:
                sj = mod.s(j)
                rep.add(f"s{i}s{j}", "distant coxeter", True, (si @ sj) == (sj @ si))
        for j in range(1, d + 1):
            cj = mod.c(j)
            if j == i:
                target = mod.c(i + 1) @ si
            elif j == i + 1:
                target = mod.c(i) @ si
            else:
                target = cj @ si
            rep.add(f"s{i}c{j}", "mixed coxeter-clifford", True, (si @ cj) == target)
        for j in range(1, d + 1):
            xj = mod.x(j)
            if j == i:
                target = mod.x(i + 1) @ si - one + mod.c(i) @ mod.c(i + 1)
            elif j == i + 1:
                target = mod.x(i) @ si + one + mod.c(i) @ mod.c(i + 1)
            else:
                target = xj @ si
            rep.add(f"s{i}x{j}", "mixed coxeter-polynomial", True, (si @ xj) == target)
    for i in range(1, d + 1):
        xi = mod.x(i)
        for j in range(1, d + 1):
            cj = mod.c(j)
            target = (xi @ cj).scale(-ONE) if j == i else xi @ cj
            rep.add(f"c{j}x{i}", "mixed clifford-polynomial", True, (cj @ xi) == target)
        for j in range(i + 1, d + 1):
            xj = mod.x(j)
            rep.add(f"x{i}x{j}", "polynomial commute", True, (xi @ xj) == (xj @ xi))
    return rep.finish()


# -- outer tensor product -----------------------------------------------------


def outer_tensor(m1: SuperModule, m2: SuperModule) -> SuperModule:
    """Graded outer product; the result is parabolic (s_{d1} is absent)."""
    d1, d2 = m1.d, m2.d
    n1, n2 = m1.dim, m2.dim
    parity = tuple((m1.parity[a] + m2.parity[b]) % 2 for a in range(n1) for b in range(n2))

    def first(mat: Mat) -> Mat:
        cols: list[Vec] = [{} for _ in range(n1 * n2)]
        for a in range(n1):
            col = mat.cols[a]
            for b in range(n2):
                cols[a * n2 + b] = {ap * n2 + b: v for ap, v in col.items()}
        return Mat(n1 * n2, cols)

    def second(mat: Mat, p: int) -> Mat:
        cols: list[Vec] = [{} for _ in range(n1 * n2)]
        for a in range(n1):
            sgn = -ONE if (p and m1.parity[a] % 2) else ONE
            for b in range(n2):
                cols[a * n2 + b] = {
                    a * n2 + bp: v * sgn for bp, v in mat.cols[b].items()
                }
        return Mat(n1 * n2, cols)

    xs = [first(m1.xs[i]) for i in range(d1)] + [second(m2.xs[i], 0) for i in range(d2)]
    cs = [first(m1.cs[i]) for i in range(d1)] + [second(m2.cs[i], 1) for i in range(d2)]
    ss: dict[int, Mat] = {}
    for i, m in m1.ss.items():
        ss[i] = first(m)
    for i, m in m2.ss.items():
        ss[d1 + i] = second(m, 0)
    return SuperModule(d=d1 + d2, parity=parity, xs=xs, cs=cs, ss=ss)


def tensor_vector(m1: SuperModule, v1: Vec, m2: SuperModule, v2: Vec) -> Vec:
    n2 = m2.dim
    out: Vec = {}
    for a, ca in v1.items():
        for b, cb in v2.items():
            out[a * n2 + b] = ca * cb
    return out


# -- induction ----------------------------------------------------------------


def induce(par: SuperModule, parts: tuple[int, ...]) -> SuperModule:
    """Induce a parabolic module with block sizes ``parts`` up to the full rank.

    Basis w (x) m over minimal coset representatives w; a generator g is
    rewritten as g.w = sum v . x^beta c^delta with v a plain permutation, the
    parabolic factor of v acts on m through the block matrices.
    """
    d = par.d
    if sum(parts) != d:
        raise BlockMismatch(f"parts {parts} do not sum to rank {d}")
    boundaries = set()
    acc = 0
    for p in parts[:-1]:
        acc += p
        boundaries.add(acc)
    needed = {i for i in range(1, d) if i not in boundaries}
    if not needed <= set(par.ss):
        raise BlockMismatch(f"missing interior s_i for parts {parts}")

    reps = min_coset_reps(parts)
    index_of = {w: k for k, w in enumerate(reps)}
    n = par.dim
    dim = len(reps) * n
    parity = tuple(par.parity[m] for _ in reps for m in range(n))

    cache: dict[tuple, Mat] = {}

    def block_matrix(v_blk: Perm, beta: tuple[int, ...], delta: int) -> Mat:
        key = (v_blk, beta, delta)
        m = cache.get(key)
        if m is None:
            m = par.perm_matrix(v_blk) @ par.x_monomial_matrix(beta) @ par.clifford_matrix(delta)
            cache[key] = m
        return m

    def new_mat() -> Mat:
        return Mat.zero(dim, dim)

    xs = [new_mat() for _ in range(d)]
    cs = [new_mat() for _ in range(d)]
    ss = {i: new_mat() for i in range(1, d)}

    def add_block(target: Mat, wrow: Perm, wcol: Perm, block: Mat, coeff: int = 1) -> None:
        r0 = index_of[wrow] * n
        c0 = index_of[wcol] * n
        sgn = ONE if coeff == 1 else Surd.from_rational(coeff)
        for j, col in enumerate(block.cols):
            tgt = target.cols[c0 + j]
            for i, v in col.items():
                val = v if coeff == 1 else v * sgn
                cur = tgt.get(r0 + i)
                nv = val if cur is None else cur + val
                if nv.is_zero():
                    tgt.pop(r0 + i, None)
                else:
                    tgt[r0 + i] = nv
        return

    winv = {w: inverse(w) for w in reps}
    for w in reps:
        # c_i . (w (x) m) = w (x) c_{w^{-1}(i)} m
        for i in range(1, d + 1):
            j = winv[w][i - 1] + 1
            add_block(cs[i - 1], w, w, par.cs[j - 1])
        # s_i . (w (x) m): factor the permutation product
        for i in range(1, d):
            v = compose(comb.simple_transposition(d, i), w)
            vmin, vblk = comb.coset_factorize(v, parts)
            add_block(ss[i], vmin, w, par.perm_matrix(vblk))
        # x_i . (w (x) m) via the left-normal-form expansion
        for i in range(1, d + 1):
            for (v, beta, delta), coeff in x_left_of_perm(w, i):
                vmin, vblk = comb.coset_factorize(v, parts)
                add_block(xs[i - 1], vmin, w, block_matrix(vblk, beta, delta), coeff)

    return SuperModule(d=d, parity=parity, xs=xs, cs=cs, ss=ss)


_X_LEFT_CACHE: dict[tuple, tuple] = {}


def x_left_of_perm(w: Perm, i: int):
    """x_i . w = sum coeff * v . x^beta c^delta with integer coefficients.

    Uses x_j s_j = s_j x_{j+1} - 1 - c_j c_{j+1} and
         x_{j+1} s_j = s_j x_j + 1 - c_j c_{j+1}.
    """
    d = len(w)
    key = (w, i)
    hit = _X_LEFT_CACHE.get(key)
    if hit is not None:
        return hit
    if w == identity_perm(d):
        beta = tuple(1 if k == i - 1 else 0 for k in range(d))
        out = (((w, beta, 0), 1),)
        _X_LEFT_CACHE[key] = out
        return out
    wpos = inverse(w)
    j = next(k for k in range(1, d) if wpos[k - 1] > wpos[k])
    s_j = comb.simple_transposition(d, j)
    w2 = compose(s_j, w)
    acc: dict[tuple, int] = {}

    def bump(k, c):
        v = acc.get(k, 0) + c
        if v:
            acc[k] = v
        elif k in acc:
            del acc[k]

    if i != j and i != j + 1:
        for (v, beta, delta), c in x_left_of_perm(w2, i):
            bump((compose(s_j, v), beta, delta), c)
    else:
        other = j + 1 if i == j else j
        unit = -1 if i == j else 1
        for (v, beta, delta), c in x_left_of_perm(w2, other):
            bump((compose(s_j, v), beta, delta), c)
        bump((w2, (0,) * d, 0), unit)
        a, b = inverse(w2)[j - 1] + 1, inverse(w2)[j] + 1
        sgn, mask = alg._pair_mask_sign(a, b)
        bump((w2, (0,) * d, mask), -sgn)
    out = tuple(acc.items())
    _X_LEFT_CACHE[key] = out
    return out


# -- submodules, spin-up, quotients ------------------------------------------


def submodule_from_rows(mod: SuperModule, ech: Echelon) -> SuperModule:
    """Module structure on the span of an invariant echelonized subspace."""
    rows = ech.rows
    parity = []
    for r in rows:
        ps = {mod.parity[k] for k in r}
        if len(ps) != 1:
            raise ValueError("subspace basis row is not parity homogeneous")
        parity.append(ps.pop())

    def restrict(m: Mat) -> Mat:
        cols = []
        for r in rows:
            img = m.apply(r)
            coords = ech.express(img)
            if coords is None:
                raise ValueError("subspace is not invariant")
            cols.append(coords)
        return Mat(len(rows), cols)

    return SuperModule(
        d=mod.d,
        parity=tuple(parity),
        xs=[restrict(m) for m in mod.xs],
        cs=[restrict(m) for m in mod.cs],
        ss={i: restrict(m) for i, m in mod.ss.items()},
    )


def split_parity(mod: SuperModule, v: Vec) -> list[Vec]:
    even = {k: c for k, c in v.items() if mod.parity[k] == 0}
    odd = {k: c for k, c in v.items() if mod.parity[k] == 1}
    return [p for p in (even, odd) if p]


def spin_up(mod: SuperModule, seeds: list[Vec]) -> tuple[SuperModule, Echelon]:
    """Smallest graded invariant subspace containing the seeds."""
    ech = Echelon(mod.dim)
    queue: list[int] = []
    for seed in seeds:
        for part in split_parity(mod, seed):
            idx = ech.insert(part)
            if idx is not None:
                queue.append(idx)
    gens = [m for _, _, m in mod.generator_items()]
    while queue:
        idx = queue.pop()
        base = dict(ech.rows[idx])
        for g in gens:
            img = g.apply(base)
            if img:
                new = ech.insert(img)
                if new is not None:
                    queue.append(new)
    if ech.rank == 0:
        return SuperModule(mod.d, (), [Mat.zero(0, 0)] * mod.d, [Mat.zero(0, 0)] * mod.d,
                           {i: Mat.zero(0, 0) for i in mod.ss}), ech
    return submodule_from_rows(mod, ech), ech


def quotient_module(mod: SuperModule, sub: Echelon) -> tuple[SuperModule, list[int]]:
    """Quotient by an invariant subspace; returns the module and the ambient
    coordinates representing the quotient basis."""
    free = [j for j in range(mod.dim) if j not in sub.row_of_pivot]
    pos = {j: k for k, j in enumerate(free)}
    parity = tuple(mod.parity[j] for j in free)

    def project(v: Vec) -> Vec:
        res = sub.residual(v)
        return {pos[k]: c for k, c in res.items()}

    def push(m: Mat) -> Mat:
        return Mat(len(free), [project(m.apply({j: ONE})) for j in free])

    return (
        SuperModule(
            d=mod.d,
            parity=parity,
            xs=[push(m) for m in mod.xs],
            cs=[push(m) for m in mod.cs],
            ss={i: push(m) for i, m in mod.ss.items()},
        ),
        free,
    )


# -- weight analysis ----------------------------------------------------------


@dataclass
class WeightBlock:
    word: tuple[int, ...]
    gen_basis: list[Vec]
    plain_dim: int

    @property
    def gen_dim(self) -> int:
        return len(self.gen_basis)


@dataclass
class WeightTable:
    d: int
    dim: int
    blocks: dict[tuple[int, ...], WeightBlock] = field(default_factory=dict)

    def words(self) -> list[tuple[int, ...]]:
        return sorted(self.blocks)

    def gen_dim(self, word) -> int:
        return self.blocks[word].gen_dim if word in self.blocks else 0


def _restrict_to(rows: list[Vec], ech: Echelon, m: Mat) -> Mat:
    cols = []
    for r in rows:
        coords = ech.express(m.apply(r))
        if coords is None:
            raise ValueError("operator does not preserve the block")
        cols.append(coords)
    return Mat(len(rows), cols)


def _eigen_split(op: Mat) -> list[tuple[int, list[Vec]]]:
    """Split a space under one x^2-style operator into stabilized kernels of
    (op - a(a+1)) for nonnegative integers a."""
    size = op.nrows
    found: list[tuple[int, list[Vec]]] = []
    total = 0
    for a in range(MAX_EIGEN_SCAN + 1):
        if total == size:
            break
        shift = op - Mat.identity(size).scale(Surd.from_rational(comb.q_value(a)))
        power = shift
        basis = kernel_of_rows(power.rows(), size)
        while True:
            power = power @ shift
            nxt = kernel_of_rows(power.rows(), size)
            if len(nxt) == len(basis):
                break
            basis = nxt
        if basis:
            found.append((a, basis))
            total += len(basis)
    if total != size:
        raise NonIntegralWeight(
            f"eigenvalues not exhausted by a(a+1), a <= {MAX_EIGEN_SCAN}"
        )
    return found


def weight_table(mod: SuperModule) -> WeightTable:
    """Simultaneous generalized eigenspaces of x_1^2 .. x_d^2, labelled by the
    nonnegative integers a_i with eigenvalue a_i (a_i + 1)."""
    table = WeightTable(mod.d, mod.dim)
    if mod.dim == 0:
        return table
    blocks: list[tuple[tuple[int, ...], list[Vec]]] = [((), [{k: ONE} for k in range(mod.dim)])]
    for i in range(1, mod.d + 1):
        nxt = []
        for word, rows in blocks:
            ech = span_echelon(rows, mod.dim)
            op = _restrict_to(ech.rows, ech, mod.x_squared(i))
            for a, local in _eigen_split(op):
                lifted = []
                for lv in local:
                    out: Vec = {}
                    for r, c in lv.items():
                        vec_add_scaled(out, ech.rows[r], c)
                    lifted.append(out)
                nxt.append((word + (a,), lifted))
        blocks = nxt
    for word, rows in blocks:
        ech = span_echelon(rows, mod.dim)
        stacked = []
        for i in range(1, mod.d + 1):
            op = _restrict_to(ech.rows, ech, mod.x_squared(i))
            shift = op - Mat.identity(len(rows)).scale(
                Surd.from_rational(comb.q_value(word[i - 1]))
            )
            stacked.extend(shift.rows())
        plain = len(kernel_of_rows(stacked, len(rows)))
        table.blocks[word] = WeightBlock(word, ech.rows, plain)
    return table


def sqrt_weight_space(mod: SuperModule, word: tuple[int, ...], table: WeightTable | None = None) -> list[Vec]:
    """Basis of {v : x_i v = +sqrt(a_i(a_i+1)) v for all i}."""
    if table is None:
        table = weight_table(mod)
    if word not in table.blocks:
        raise WeightAbsent(str(word))
    rows = table.blocks[word].gen_basis
    ech = span_echelon(rows, mod.dim)
    stacked = []
    for i in range(1, mod.d + 1):
        op = _restrict_to(ech.rows, ech, mod.x(i))
        kappa = Surd.sqrt_rational(comb.q_value(word[i - 1]))
        shift = op - Mat.identity(len(rows)).scale(kappa)
        stacked.extend(shift.rows())
    local = kernel_of_rows(stacked, len(rows))
    out = []
    for lv in local:
        v: Vec = {}
        for r, c in lv.items():
            vec_add_scaled(v, ech.rows[r], c)
        out.append(v)
    return out


def sqrt_weight_space_direct(mod: SuperModule, word: tuple[int, ...]) -> list[Vec]:
    """Same space as :func:`sqrt_weight_space` but as one stacked kernel over
    the whole module, with no weight table needed."""
    stacked = []
    for i in range(1, mod.d + 1):
        kappa = Surd.sqrt_rational(comb.q_value(word[i - 1]))
        shift = mod.x(i) - Mat.identity(mod.dim).scale(kappa)
        stacked.extend(shift.rows())
    return kernel_of_rows(stacked, mod.dim)


def x_kernel(mod: SuperModule) -> list[Vec]:
    """Basis of the simultaneous kernel of all x_i (strict weight space at 0)."""
    stacked = []
    for m in mod.xs:
        stacked.extend(m.rows())
    return kernel_of_rows(stacked, mod.dim)


def simple_quotient(mod: SuperModule, zeta: tuple[int, ...]) -> SuperModule:
    return simple_quotient_parts(mod, zeta)[0]


def simple_quotient_parts(
    mod: SuperModule, zeta: tuple[int, ...]
) -> tuple[SuperModule, Echelon, WeightTable]:
    """Quotient by the largest invariant subspace avoiding the zeta block.

    The subspace starts from the sum of all other generalized weight blocks and
    shrinks through the fixpoint V <- {v in V : g v in V for all g}.  Returns
    the quotient, the radical subspace, and the weight table of the input.
    """
    table = weight_table(mod)
    if zeta not in table.blocks:
        raise WeightAbsent(f"{zeta} not among {table.words()}")
    rows: list[Vec] = []
    for word, blk in table.blocks.items():
        if word != zeta:
            rows.extend(blk.gen_basis)
    ech = span_echelon(rows, mod.dim)
    gens = [m for _, _, m in mod.generator_items()]
    while True:
        basis = ech.rows
        if not basis:
            break
        constraint_rows: list[Vec] = []
        residuals = []
        for g in gens:
            residuals.append([ech.residual(g.apply(b)) for b in basis])
        by_coord: dict[tuple[int, int], Vec] = {}
        for gi, res in enumerate(residuals):
            for b, r in enumerate(res):
                for coord, val in r.items():
                    key = (gi, coord)
                    by_coord.setdefault(key, {})[b] = val
        constraint_rows = list(by_coord.values())
        sol = kernel_of_rows(constraint_rows, len(basis))
        if len(sol) == len(basis):
            break
        new_rows = []
        for s in sol:
            v: Vec = {}
            for r, c in s.items():
                vec_add_scaled(v, basis[r], c)
            new_rows.append(v)
        ech = span_echelon(new_rows, mod.dim)
    quot, _ = quotient_module(mod, ech)
    return quot, ech, table


def subspace_block_dims(table: WeightTable, sub: Echelon) -> dict[tuple[int, ...], int]:
    """Dimensions of V intersected with each generalized weight block, for an
    x^2-stable subspace V (e.g. a submodule): V = (+)_w (V n block_w)."""
    from .linalg import TrackedEchelon

    full = TrackedEchelon(table.dim)
    raw: dict[tuple, Vec] = {}
    for word, blk in table.blocks.items():
        for k, row in enumerate(blk.gen_basis):
            label = (word, k)
            raw[label] = row
            full.insert(row, label)
    per_word: dict[tuple[int, ...], list[Vec]] = {w: [] for w in table.blocks}
    for v in sub.rows:
        coords = full.express_raw(v)
        if coords is None:
            raise ValueError("subspace is not inside the block sum")
        pieces: dict[tuple[int, ...], Vec] = {}
        for (word, k), c in coords.items():
            tgt = pieces.setdefault(word, {})
            vec_add_scaled(tgt, raw[(word, k)], c)
        for word, piece in pieces.items():
            per_word[word].append(piece)
    return {
        w: span_echelon(vs, table.dim).rank if vs else 0 for w, vs in per_word.items()
    }


def sigma_module_twist(mod: SuperModule) -> SuperModule:
    """Twist the action by sigma: generator g acts through the matrix of sigma(g)."""
    d = mod.d
    if not mod.is_full():
        raise BlockMismatch("sigma twist needs the full rank-d module")
    return SuperModule(
        d=d,
        parity=mod.parity,
        xs=[mod.x(d + 1 - i) for i in range(1, d + 1)],
        cs=[mod.c(d + 1 - i) for i in range(1, d + 1)],
        ss={i: mod.s(d - i).scale(-ONE) for i in range(1, d)},
    )


def contravariant_form(mod: SuperModule, cap: int = 40) -> Mat | None:
    """A bilinear form with (g v, v') = (v, tau(g) v'), or None if only zero.

    Solved as a sparse linear system in the dim^2 matrix entries of the form.
    """
    n = mod.dim
    if n > cap:
        raise ValueError(f"dim {n} above contravariant_form cap {cap}")
    unknown = lambda i, j: i * n + j

    rows: list[Vec] = []

    def add_condition(g: Mat, tau_sign: int):
        # G^T B - tau_sign * B G = 0
        gt = g.transpose()
        for i in range(n):
            for j in range(n):
                row: Vec = {}
                for k, v in gt.cols[i].items():
                    # (G^T B)[i, j] = sum_k G^T[i, k] B[k, j] = sum_k G[k, i] B[k, j]
                    vec_add_scaled(row, {unknown(k, j): v}, ONE)
                for k, v in g.cols[j].items():
                    vec_add_scaled(row, {unknown(i, k): v}, -ONE if tau_sign == 1 else ONE)
                if row:
                    rows.append(row)

    for i, m in mod.ss.items():
        add_condition(m, 1)
    for m in mod.xs:
        add_condition(m, 1)
    for m in mod.cs:
        add_condition(m, -1)

    sols = kernel_of_rows(rows, n * n)
    if not sols:
        return None
    b = Mat.zero(n, n)
    for k, v in sols[0].items():
        b.set_entry(k // n, k % n, v)
    return b


def form_value(b: Mat, u: Vec, v: Vec) -> Surd:
    bv = b.apply(v)
    out = Surd()
    for k, c in u.items():
        if k in bv:
            out = out + c * bv[k]
    return out
