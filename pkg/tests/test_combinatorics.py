import itertools

from hcaff.combinatorics import (
    Multisegment,
    ShiftedSkewShape,
    all_permutations,
    compose,
    coset_factorize,
    enumerate_Bd,
    enumerate_Bd_all_n,
    fold,
    identity_perm,
    inverse,
    is_block_increasing,
    length,
    min_coset_reps,
    reduced_word,
    simple_transposition,
    standard_fillings,
)


def brute_force_block_increasing(d, parts):
    # independent formulation: sortedness of the image sequence per block
    reps = []
    starts = [sum(parts[:i]) for i in range(len(parts))]
    for w in itertools.permutations(range(d)):
        ok = True
        for s, p in zip(starts, parts):
            seq = [w[k] for k in range(s, s + p)]
            if seq != sorted(seq):
                ok = False
                break
        if ok:
            reps.append(w)
    return set(reps)


def test_min_coset_reps_match_bruteforce():
    for parts in [(1, 1), (2, 1), (3,), (2, 2), (1, 2, 1)]:
        d = sum(parts)
        assert set(min_coset_reps(parts)) == brute_force_block_increasing(d, parts)


def test_min_coset_reps_counts():
    assert len(min_coset_reps((1, 1))) == 2
    assert len(min_coset_reps((2, 1))) == 3
    assert min_coset_reps((3,)) == (identity_perm(3),)
    import math

    for parts in [(2, 2), (3, 1), (1, 1, 2)]:
        d = sum(parts)
        expect = math.factorial(d)
        for p in parts:
            expect //= math.factorial(p)
        assert len(min_coset_reps(parts)) == expect


def test_coset_factorization():
    parts = (2, 2)
    for w in all_permutations(4):
        wmin, wblk = coset_factorize(w, parts)
        assert compose(wmin, wblk) == w
        assert is_block_increasing(wmin, parts)
        # wblk stays inside the parabolic
        assert all(wblk[k] in range(0, 2) for k in range(0, 2))
        assert all(wblk[k] in range(2, 4) for k in range(2, 4))


def test_reduced_words():
    for d in (2, 3, 4):
        for w in all_permutations(d):
            word = reduced_word(w)
            assert len(word) == length(w)
            acc = identity_perm(d)
            for i in word:
                acc = compose(acc, simple_transposition(d, i))
            assert acc == w


def test_lengths_and_inverse():
    w = (2, 0, 1)
    assert length(w) == 2
    assert compose(w, inverse(w)) == identity_perm(3)


def brute_force_fillings(shape):
    boxes = shape.boxes()
    pos = {}
    good = 0
    for perm in itertools.permutations(range(1, len(boxes) + 1)):
        pos = dict(zip(boxes, perm))
        ok = True
        for (r, c), e in pos.items():
            if (r, c + 1) in pos and pos[(r, c + 1)] <= e:
                ok = False
                break
            if (r + 1, c) in pos and pos[(r + 1, c)] <= e:
                ok = False
                break
        if ok:
            good += 1
    return good


def test_standard_fillings_counts():
    s = ShiftedSkewShape((2, 1), (0, 0))
    assert len(standard_fillings(s)) == 1 == brute_force_fillings(s)
    s = ShiftedSkewShape((3, 1), (0, 0))
    assert len(standard_fillings(s)) == 2 == brute_force_fillings(s)
    s = ShiftedSkewShape((1,), (0,))
    assert len(standard_fillings(s)) == 1
    for lam, mu in [((3, 2), (0, 0)), ((4, 1), (0, 0)), ((5, 2, 1), (3, 1, 0))]:
        s = ShiftedSkewShape(lam, mu)
        assert len(standard_fillings(s)) == brute_force_fillings(s)


def test_contents_match_figure_layout():
    s = ShiftedSkewShape((5, 2, 1), (3, 1, 0))
    by_row = {}
    for (r, c) in s.boxes():
        by_row.setdefault(r, []).append(c - r)
    assert by_row == {1: [3, 4], 2: [1], 3: [0]}


def test_content_reading_examples():
    s = ShiftedSkewShape((2, 1), (0, 0))
    [f] = standard_fillings(s)
    assert f.content_reading() == (0, 1, 0)
    s = ShiftedSkewShape((1,), (0,))
    [f] = standard_fillings(s)
    assert f.content_reading() == (0,)
    s = ShiftedSkewShape((3, 1), (0, 0))
    readings = {f.content_reading() for f in standard_fillings(s)}
    assert readings == {(0, 1, 2, 0), (0, 1, 0, 2)}


def test_enumerate_Bd_small():
    b1 = enumerate_Bd(1, 1)
    assert {(m.lam, m.mu) for m in b1} == {((1,), (0,)), ((2,), (1,))}
    b2 = enumerate_Bd(2, 1)
    assert {(m.lam, m.mu) for m in b2} == {((2,), (0,)), ((3,), (1,))}
    for m in enumerate_Bd_all_n(3):
        assert m.d == 3
        assert all(abs(mu) < lam for lam, mu in zip(m.lam, m.mu))


def test_multisegment_word():
    m = Multisegment((3, 2), (-1, 1))
    # [-1..2] encodes letters 0,0,1,2 then segment [1,1] adds 1
    assert m.to_word() == (0, 0, 1, 2, 1)
    assert Multisegment((2,), (0,)).to_word() == (0, 1)
    assert Multisegment((4,), (1,)).to_word() == (1, 2, 3)
    assert m.weight_word() == (0, 0, 1, 2, 1)
    assert Multisegment((1,), (-1,)) and fold(-1) == 0


def test_word_injective_on_Bd():
    for d in range(1, 6):
        segs = enumerate_Bd_all_n(d)
        words = [m.to_word() for m in segs]
        assert len(set(words)) == len(words)


def test_multisegment_parse_roundtrip():
    m = Multisegment.parse("3,2/-1,1")
    assert m.lam == (3, 2) and m.mu == (-1, 1)
    assert str(m) == "3,2/-1,1"
    s = ShiftedSkewShape.parse("5,2,1/3,1,0")
    assert s.lam == (5, 2, 1) and s.mu == (3, 1, 0)
