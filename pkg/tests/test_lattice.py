import random
from fractions import Fraction

import pytest

from griforge import (
    Modulus,
    build_attack_lattice,
    extract_short_vectors,
    gen_instance,
    hnf_row_basis,
    in_lattice,
    lll_reduce,
    run_attack,
    solve_in_basis,
)
from griforge.errors import BadDelta, CtxMismatch
from helpers import (
    enumerate_shortest,
    gram_det,
    is_lll_reduced,
    transform_between,
)

DELTA = Fraction(99, 100)


def _random_full_rank(rng, rank, bound=100):
    from helpers import det_fraction

    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(rank)] for _ in range(rank)]
        if det_fraction(rows) != 0:
            return rows


def test_build_attack_lattice_dimensions():
    inst = gen_instance(2, 2, 2, 1, 3, random.Random(0))
    d = build_attack_lattice(inst.images, inst.dst.modulus)
    assert len(d) == 5 and all(len(row) == 3 for row in d)  # (n+k) x k
    assert d[2:] == [[4, 0, 0], [0, 4, 0], [0, 0, 4]]

    single = build_attack_lattice(inst.images[:1], inst.dst.modulus)
    assert len(single) == 3 and all(len(row) == 1 for row in single)


def test_build_attack_lattice_identity_block_rows():
    inst = gen_instance(3, 2, 3, 1, 4, random.Random(1))
    d = build_attack_lattice(inst.images, inst.dst.modulus)
    n, k, m = 3, 4, 9
    for j in range(k):
        row = d[n + j]
        assert row[j] == m and all(x == 0 for i, x in enumerate(row) if i != j)


def test_build_attack_lattice_ctx_mismatch():
    a = gen_instance(2, 2, 2, 1, 2, random.Random(2))
    b = gen_instance(2, 2, 2, 1, 2, random.Random(3))
    with pytest.raises(CtxMismatch):
        build_attack_lattice([a.images[0], b.images[0]], a.dst.modulus)
    with pytest.raises(CtxMismatch):
        build_attack_lattice(a.images, Modulus(3, 2))


def test_lll_identity_already_reduced():
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert lll_reduce(ident, DELTA) == ident


def test_lll_small_example_finds_shortest():
    reduced = lll_reduce([[12, 2], [13, 4]], DELTA)
    # exhaustive enumeration confirms (1, 2) is a shortest nonzero vector
    vec, norm = enumerate_shortest([[12, 2], [13, 4]])
    assert norm == 5 and tuple(sorted(map(abs, vec))) == (1, 2)
    assert [1, 2] in reduced or [-1, -2] in reduced


def test_lll_bad_delta():
    with pytest.raises(BadDelta):
        lll_reduce([[1, 0], [0, 1]], Fraction(1, 4))
    with pytest.raises(BadDelta):
        lll_reduce([[1, 0], [0, 1]], 1)


def test_lll_gram_determinant_preserved():
    rng = random.Random(4)
    for _ in range(10):
        rows = _random_full_rank(rng, rng.randrange(2, 5), 30)
        reduced = lll_reduce(rows, DELTA)
        assert gram_det(reduced) == gram_det(rows)


def test_lll_properties_random_lattices():
    rng = random.Random(5)
    for _ in range(15):
        rank = rng.randrange(2, 7)
        rows = _random_full_rank(rng, rank)
        reduced = lll_reduce(rows, DELTA)
        assert is_lll_reduced(reduced, DELTA)
        u = transform_between(rows, reduced)
        assert u is not None
        from helpers import det_fraction

        assert abs(det_fraction(u)) == 1
        vec, shortest = enumerate_shortest(reduced)
        first = sum(x * x for x in reduced[0])
        assert first <= 2 ** (rank - 1) * shortest


def test_lll_handles_dependent_rows():
    rows = [[2, 0], [0, 3], [2, 3], [4, 6]]
    reduced = lll_reduce(rows, DELTA)
    assert len(reduced) == 2
    assert is_lll_reduced(reduced, DELTA)
    for row in rows:
        assert in_lattice(row, reduced)
    for row in reduced:
        assert in_lattice(row, rows)


def test_hnf_row_basis_transform_consistent():
    rng = random.Random(6)
    rows = [[rng.randint(-20, 20) for _ in range(4)] for _ in range(7)]
    basis, transform = hnf_row_basis(rows)
    for trow, brow in zip(transform, basis):
        combo = [sum(trow[i] * rows[i][j] for i in range(len(rows))) for j in range(4)]
        assert combo == brow


def test_true_bj_vectors_lie_in_lattice():
    inst = gen_instance(2, 8, 6, 1, 12, random.Random(7))
    d = build_attack_lattice(inst.images, inst.dst.modulus)
    basis, _ = hnf_row_basis(d)
    for j in range(inst.params.n):
        bj = [a.coeff_vector()[j] for a in inst.secret.preimages]
        assert solve_in_basis(bj, basis) is not None


def test_extract_empty_when_nothing_short():
    assert extract_short_vectors([[100, 0], [0, 100]], 1) == []


def test_extract_closed_under_negation_and_verified():
    reduced = [[1, 0, -1], [5, 5, 5], [0, 1, 1]]
    cands = extract_short_vectors(reduced, 1, lattice_rows=reduced)
    vectors = {c.vector for c in cands}
    assert (1, 0, -1) in vectors and (-1, 0, 1) in vectors
    assert (0, 1, 1) in vectors and (0, -1, -1) in vectors
    assert all(c.in_lattice for c in cands)
    assert all(max(map(abs, c.vector)) <= 1 for c in cands)


def test_extract_norm_bound_filter():
    reduced = [[1, 1, 1, 1], [1, 0, 0, 0]]
    cands = extract_short_vectors(reduced, 1, norm_bound_sq=2)
    assert {c.vector for c in cands} == {(1, 0, 0, 0), (-1, 0, 0, 0)}


def test_run_attack_weak_parameters_single_seed():
    inst = gen_instance(2, 8, 6, 1, 12, random.Random(8))
    report = run_attack(inst.public_only())
    assert report.candidates, "weak instance should yield candidates"
    true_bjs = set()
    for j in range(inst.params.n):
        v = tuple(a.coeff_vector()[j] for a in inst.secret.preimages)
        true_bjs.add(v)
        true_bjs.add(tuple(-x for x in v))
    assert any(c.vector in true_bjs for c in report.candidates)
    d = build_attack_lattice(inst.images, inst.dst.modulus)
    for cand in report.candidates:
        assert cand.in_lattice
        assert in_lattice(cand.vector, d)
        assert max(map(abs, cand.vector)) <= 1
    assert report.elapsed >= 0.0
    assert report.shortness_ratio < 1


def test_run_attack_candidate_combos_reproduce_vectors():
    inst = gen_instance(2, 8, 6, 1, 12, random.Random(9))
    report = run_attack(inst.public_only())
    m = inst.dst.m
    p_rows = [
        [a.coeff_vector()[i] for a in inst.images] for i in range(inst.params.n)
    ]
    for cand in report.candidates:
        recon = [
            sum(cand.combo[i] * p_rows[i][j] for i in range(inst.params.n)) % m
            for j in range(inst.params.k)
        ]
        assert recon == [x % m for x in cand.vector]


def test_run_attack_hardened_typically_empty():
    inst = gen_instance(2, 8, 6, 64, 12, random.Random(10))
    report = run_attack(inst.public_only())
    assert report.candidates == ()


def test_run_attack_custom_delta_validation():
    inst = gen_instance(2, 4, 2, 1, 4, random.Random(11))
    with pytest.raises(BadDelta):
        run_attack(inst.public_only(), delta=Fraction(1, 8))
