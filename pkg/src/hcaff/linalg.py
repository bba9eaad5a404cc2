"""Sparse exact linear algebra over the multi-surd field.

Vectors are dicts ``index -> Surd`` with no zero entries.  Matrices are
column-major: ``Mat.cols[j]`` is the sparse column j, so applying a matrix to a
sparse vector only touches the columns the vector supports.  Gaussian
elimination prefers rational pivots, which keeps surd inversions rare.
"""

from __future__ import annotations

from .scalars import ONE, Surd

Vec = dict


def vec_add_scaled(target: Vec, source: Vec, coeff: Surd) -> None:
    """target += coeff * source, in place, dropping zeros."""
    if coeff.is_zero():
        return
    for k, v in source.items():
        cur = target.get(k)
        nv = v * coeff if cur is None else cur + v * coeff
        if nv.is_zero():
            target.pop(k, None)
        else:
            target[k] = nv


def vec_scale(v: Vec, coeff: Surd) -> Vec:
    if coeff.is_zero():
        return {}
    return {k: val * coeff for k, val in v.items()}


def vec_eq(a: Vec, b: Vec) -> bool:
    return a == b


class Mat:
    """Sparse matrix, column-major, over Surd."""

    __slots__ = ("nrows", "cols")

    def __init__(self, nrows: int, cols: list[Vec]):
        self.nrows = nrows
        self.cols = cols

    @property
    def ncols(self) -> int:
        return len(self.cols)

    @staticmethod
    def zero(nrows: int, ncols: int) -> "Mat":
        return Mat(nrows, [{} for _ in range(ncols)])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(n, [{j: ONE} for j in range(n)])

    @staticmethod
    def from_entries(nrows: int, ncols: int, entries: dict[tuple[int, int], Surd]) -> "Mat":
        m = Mat.zero(nrows, ncols)
        for (i, j), v in entries.items():
            if not v.is_zero():
                m.cols[j][i] = v
        return m

    def entry(self, i: int, j: int) -> Surd:
        return self.cols[j].get(i, Surd())

    def set_entry(self, i: int, j: int, v: Surd) -> None:
        if v.is_zero():
            self.cols[j].pop(i, None)
        else:
            self.cols[j][i] = v

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for j, c in v.items():
            vec_add_scaled(out, self.cols[j], c)
        return out

    def __matmul__(self, other: "Mat") -> "Mat":
        return Mat(self.nrows, [self.apply(c) for c in other.cols])

    def __add__(self, other: "Mat") -> "Mat":
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            vec_add_scaled(c, b, ONE)
            cols.append(c)
        return Mat(self.nrows, cols)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + other.scale(-ONE)

    def __neg__(self) -> "Mat":
        return self.scale(-ONE)

    def scale(self, coeff: Surd) -> "Mat":
        return Mat(self.nrows, [vec_scale(c, coeff) for c in self.cols])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.nrows == other.nrows
            and self.cols == other.cols
        )

    def __hash__(self):  # pragma: no cover
        raise TypeError("Mat is unhashable")

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def transpose(self) -> "Mat":
        cols: list[Vec] = [{} for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                cols[i][j] = v
        return Mat(self.ncols, cols)

    def rows(self) -> list[Vec]:
        return self.transpose().cols

    def to_dense_str(self) -> list[list[str]]:
        return [[str(self.entry(i, j)) for j in range(self.ncols)] for i in range(self.nrows)]

    def power_apply(self, v: Vec, k: int) -> Vec:
        for _ in range(k):
            if not v:
                return v
            v = self.apply(v)
        return v

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)


def mat_from_dense_str(rows: list[list[str]]) -> Mat:
    from .scalars import parse_surd

    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    m = Mat.zero(nrows, ncols)
    for i, row in enumerate(rows):
        for j, s in enumerate(row):
            v = parse_surd(s)
            if not v.is_zero():
                m.cols[j][i] = v
    return m


class Echelon:
    """Reduced row-echelon accumulator for sparse vectors.

    Rows are pivot-normalized and fully reduced against each other, so
    expressing a vector in terms of the stored rows is a single pass over its
    pivot coordinates.
    """

    __slots__ = ("ncols", "rows", "pivots", "row_of_pivot")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[Vec] = []
        self.pivots: list[int] = []
        self.row_of_pivot: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def residual(self, v: Vec) -> Vec:
        out = dict(v)
        while True:
            hits = [k for k in out if k in self.row_of_pivot]
            if not hits:
                return out
            for k in hits:
                if k in out:
                    vec_add_scaled(out, self.rows[self.row_of_pivot[k]], -out[k])

    def contains(self, v: Vec) -> bool:
        return not self.residual(v)

    def express(self, v: Vec) -> dict[int, Surd] | None:
        """Coefficients c with v = sum c[r] * rows[r], or None if not in span."""
        out = dict(v)
        coeffs: dict[int, Surd] = {}
        pending = [k for k in out if k in self.row_of_pivot]
        while pending:
            for k in pending:
                if k not in out:
                    continue
                r = self.row_of_pivot[k]
                c = out[k]
                coeffs[r] = coeffs.get(r, Surd()) + c
                vec_add_scaled(out, self.rows[r], -c)
            pending = [k for k in out if k in self.row_of_pivot]
        if out:
            return None
        return {r: c for r, c in coeffs.items() if not c.is_zero()}

    def _pick_pivot(self, v: Vec) -> int:
        best = None
        for k, val in v.items():
            simple = val.is_rational()
            key = (not simple, k)
            if best is None or key < best[0]:
                best = (key, k)
        return best[1]

    def insert(self, v: Vec) -> int | None:
        """Reduce v and add it as a new row; returns its row index or None."""
        res = self.residual(v)
        if not res:
            return None
        p = self._pick_pivot(res)
        inv = res[p].inverse()
        row = vec_scale(res, inv)
        idx = len(self.rows)
        # keep RREF: clear column p from all existing rows
        for r, existing in enumerate(self.rows):
            c = existing.get(p)
            if c is not None:
                vec_add_scaled(existing, row, -c)
        self.rows.append(row)
        self.pivots.append(p)
        self.row_of_pivot[p] = idx
        return idx


def row_space_rank(rows: list[Vec], ncols: int) -> int:
    ech = Echelon(ncols)
    for r in rows:
        ech.insert(r)
    return ech.rank


def kernel_of_rows(rows: list[Vec], ncols: int) -> list[Vec]:
    """Basis of {x : row . x = 0 for every row}."""
    ech = Echelon(ncols)
    for r in rows:
        ech.insert(r)
    pivot_cols = set(ech.row_of_pivot)
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        x: Vec = {f: ONE}
        for p, ridx in ech.row_of_pivot.items():
            c = ech.rows[ridx].get(f)
            if c is not None:
                x[p] = -c
        basis.append(x)
    return basis


def kernel_of_mat(m: Mat) -> list[Vec]:
    return kernel_of_rows(m.rows(), m.ncols)


def stable_kernel(m: Mat) -> list[Vec]:
    """Basis of the stabilized kernel ker(m^N) for N large (= ker m^dim)."""
    power = m
    prev_dim = -1
    basis = kernel_of_mat(m)
    while len(basis) != prev_dim:
        prev_dim = len(basis)
        power = power @ m
        basis = kernel_of_mat(power)
    return basis


def span_echelon(vectors: list[Vec], ncols: int) -> Echelon:
    ech = Echelon(ncols)
    for v in vectors:
        ech.insert(v)
    return ech


def mat_inverse(m: Mat) -> Mat | None:
    """Inverse by augmented elimination; None if singular."""
    n = m.nrows
    if m.ncols != n:
        return None
    ech = Echelon(n)
    combos: list[Vec] = []
    for j, col in enumerate(m.cols):
        res = dict(col)
        combo: Vec = {j: ONE}
        while True:
            hits = [k for k in res if k in ech.row_of_pivot]
            if not hits:
                break
            for k in hits:
                if k in res:
                    r = ech.row_of_pivot[k]
                    c = res[k]
                    vec_add_scaled(res, ech.rows[r], -c)
                    vec_add_scaled(combo, combos[r], -c)
        if not res:
            return None
        p = ech._pick_pivot(res)
        inv = res[p].inverse()
        row = vec_scale(res, inv)
        combo = vec_scale(combo, inv)
        for r, existing in enumerate(ech.rows):
            c = existing.get(p)
            if c is not None:
                vec_add_scaled(existing, row, -c)
                vec_add_scaled(combos[r], combo, -c)
        idx = len(ech.rows)
        ech.rows.append(row)
        ech.pivots.append(p)
        ech.row_of_pivot[p] = idx
        combos.append(combo)
    # ech.rows are now unit vectors e_{pivot}; invert the assignment
    inv_cols: list[Vec] = [{} for _ in range(n)]
    for r, row in enumerate(ech.rows):
        p = ech.pivots[r]
        for j, c in combos[r].items():
            if not c.is_zero():
                inv_cols[p][j] = c
    return Mat(n, inv_cols)


class TrackedEchelon(Echelon):
    """Echelon that remembers each row as a combination of the inserted vectors.

    ``insert(v, label)`` records the raw vector under ``label``;
    ``express_raw(w)`` writes w as a combination of the raw labelled vectors.
    """

    __slots__ = ("combos",)

    def __init__(self, ncols: int):
        super().__init__(ncols)
        self.combos: list[Vec] = []  # row -> {label: coeff}

    def insert(self, v: Vec, label=None) -> int | None:
        res = dict(v)
        combo: Vec = {label: ONE}
        pending = [k for k in res if k in self.row_of_pivot]
        while pending:
            for k in pending:
                if k not in res:
                    continue
                r = self.row_of_pivot[k]
                c = res[k]
                vec_add_scaled(res, self.rows[r], -c)
                vec_add_scaled(combo, self.combos[r], -c)
            pending = [k for k in res if k in self.row_of_pivot]
        if not res:
            return None
        p = self._pick_pivot(res)
        inv = res[p].inverse()
        row = vec_scale(res, inv)
        combo = vec_scale(combo, inv)
        idx = len(self.rows)
        for r, existing in enumerate(self.rows):
            c = existing.get(p)
            if c is not None:
                vec_add_scaled(existing, row, -c)
                vec_add_scaled(self.combos[r], combo, -c)
        self.rows.append(row)
        self.pivots.append(p)
        self.row_of_pivot[p] = idx
        self.combos.append(combo)
        return idx

    def express_raw(self, w: Vec) -> Vec | None:
        """w as {label: coeff} over the raw inserted vectors, or None."""
        coords = self.express(w)
        if coords is None:
            return None
        out: Vec = {}
        for r, c in coords.items():
            vec_add_scaled(out, self.combos[r], c)
        return out
