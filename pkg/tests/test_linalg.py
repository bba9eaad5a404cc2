import random

from hcaff.linalg import Echelon, Mat, kernel_of_mat, kernel_of_rows, stable_kernel
from hcaff.scalars import ONE, Surd, rat


def S(x):
    return Surd.from_rational(x)


def rand_mat(rng, n, density=0.4):
    m = Mat.zero(n, n)
    for i in range(n):
        for j in range(n):
            if rng.random() < density:
                m.set_entry(i, j, S(rng.randint(-4, 4)))
    return m


def test_matmul_identity():
    rng = random.Random(7)
    for n in (1, 3, 5):
        a = rand_mat(rng, n)
        assert a @ Mat.identity(n) == a
        assert Mat.identity(n) @ a == a


def test_matmul_assoc():
    rng = random.Random(11)
    a, b, c = (rand_mat(rng, 4) for _ in range(3))
    assert (a @ b) @ c == a @ (b @ c)


def test_kernel_simple():
    # rows of [[1,1,0],[0,1,1]]: kernel spanned by (1,-1,1)
    rows = [{0: ONE, 1: ONE}, {1: ONE, 2: ONE}]
    basis = kernel_of_rows(rows, 3)
    assert len(basis) == 1
    v = basis[0]
    for r in rows:
        acc = Surd()
        for k, c in r.items():
            acc = acc + c * v.get(k, Surd())
        assert acc.is_zero()


def test_kernel_rank_nullity():
    rng = random.Random(3)
    for _ in range(10):
        n = 5
        m = rand_mat(rng, n, density=0.5)
        ker = kernel_of_mat(m)
        ech = Echelon(n)
        for col in m.cols:
            ech.insert(col)
        assert len(ker) + ech.rank == n
        for v in ker:
            assert not m.apply(v)


def test_stable_kernel_nilpotent():
    # strictly upper triangular: nilpotent, stabilized kernel is everything
    m = Mat.zero(3, 3)
    m.set_entry(0, 1, ONE)
    m.set_entry(1, 2, ONE)
    assert len(kernel_of_mat(m)) == 1
    assert len(stable_kernel(m)) == 3


def test_echelon_express():
    surd2 = Surd.sqrt_rational(2)
    ech = Echelon(3)
    v1 = {0: ONE, 1: surd2}
    v2 = {1: ONE, 2: S(3)}
    ech.insert(v1)
    ech.insert(v2)
    target = {}
    from hcaff.linalg import vec_add_scaled

    vec_add_scaled(target, v1, S(rat(1, 2)))
    vec_add_scaled(target, v2, surd2)
    coords = ech.express(target)
    assert coords is not None
    rebuilt = {}
    for r, c in coords.items():
        vec_add_scaled(rebuilt, ech.rows[r], c)
    assert rebuilt == target
    # e0 + sqrt2*e1 + e1 + 3*e2 = v1 + v2 is in the span, e0 alone is not
    combo = {0: ONE, 1: surd2 + ONE, 2: S(3)}
    assert ech.express(combo) is not None
    assert ech.express({0: ONE}) is None


def test_echelon_membership_with_surds():
    ech = Echelon(2)
    ech.insert({0: Surd.sqrt_rational(2), 1: ONE})
    assert ech.contains({0: S(2), 1: Surd.sqrt_rational(2)})
    assert not ech.contains({0: ONE})
