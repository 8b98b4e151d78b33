import random
from fractions import Fraction as F

import pytest

from svh.errors import SubspaceNotContained
from svh.linalg import (
    SparseMatrixQ,
    nullspace,
    quotient_basis,
    rref,
    solve_combination,
    span_rank,
)

from oracles import dense_nullspace, dense_rank, dense_in_span


def test_proportional_rows_rank_one():
    r = rref(SparseMatrixQ.from_dense([[1, 2], [2, 4]]))
    assert r.rank == 1
    assert r.pivot_cols == [0]


def test_identity_full_rank_empty_nullspace():
    eye = SparseMatrixQ.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    r = rref(eye)
    assert r.rank == 3
    assert r.nullspace == []


def test_single_row_normalized():
    r = rref(SparseMatrixQ.from_dense([[F(1, 2), F(-1, 3)]]))
    assert r.rows == [[(0, F(1)), (1, F(-2, 3))]]


def test_zero_matrix_nullspace_is_standard_basis():
    z = SparseMatrixQ.from_dense([[0, 0, 0], [0, 0, 0]])
    assert nullspace(z) == [
        (F(1), F(0), F(0)),
        (F(0), F(1), F(0)),
        (F(0), F(0), F(1)),
    ]


def test_single_equation_kernel():
    (vec,) = nullspace(SparseMatrixQ.from_dense([[1, 1]]))
    assert vec[0] == -vec[1] != 0


def test_empty_matrix():
    r = rref(SparseMatrixQ(0, 4, []))
    assert r.rank == 0
    assert len(r.nullspace) == 4


def test_rref_idempotent_and_kernel_exact_random():
    rng = random.Random(42)
    for _ in range(40):
        nrows = rng.randint(1, 7)
        ncols = rng.randint(1, 7)
        dense = [
            [F(rng.randint(-4, 4), rng.randint(1, 3)) if rng.random() < 0.6 else 0 for _ in range(ncols)]
            for _ in range(nrows)
        ]
        m = SparseMatrixQ.from_dense(dense)
        r = rref(m)
        # rank-nullity, exact kernel, idempotence on the reduced rows
        assert r.rank <= min(nrows, ncols)
        assert r.rank + len(r.nullspace) == ncols
        for vec in r.nullspace:
            assert all(v == 0 for v in m.matvec(vec))
        reduced = SparseMatrixQ(len(r.rows), ncols, r.rows)
        again = rref(reduced)
        assert again.rows == r.rows
        assert again.pivot_cols == r.pivot_cols
        # dense oracle agreement
        assert r.rank == dense_rank(dense)
        assert len(r.nullspace) == len(dense_nullspace(dense, ncols))


def test_rref_matches_dense_oracle_on_solver_matrix():
    from svh.cocycles import build_cocycle_system
    from svh.presets import witt_spec

    system = build_cocycle_system(witt_spec(), 2, 0)
    r = rref(system.matrix)
    dense = system.matrix.to_dense()
    assert r.rank == dense_rank(dense)
    assert len(r.nullspace) == len(dense_nullspace(dense, system.matrix.ncols))


def test_quotient_of_coordinate_line():
    reps = quotient_basis([(1, 0), (0, 1)], [(1, 0)])
    assert reps == [(F(0), F(1))]


def test_quotient_collapses_when_subspace_is_space():
    assert quotient_basis([(1, 0), (0, 1)], [(1, 0), (0, 1)]) == []


def test_quotient_random_dims_match_rank_oracle():
    rng = random.Random(5)
    n = 8
    while True:
        space = [tuple(F(rng.randint(-3, 3)) for _ in range(n)) for _ in range(5)]
        if dense_rank(space) == 5:
            break
    subspace = []
    for _ in range(2):
        coeffs = [F(rng.randint(-2, 2)) for _ in range(5)]
        subspace.append(tuple(sum(c * v[i] for c, v in zip(coeffs, space)) for i in range(n)))
    while dense_rank(subspace) != 2:
        coeffs = [F(rng.randint(-2, 2)) for _ in range(5)]
        subspace[-1] = tuple(sum(c * v[i] for c, v in zip(coeffs, space)) for i in range(n))
    reps = quotient_basis(space, subspace)
    assert len(reps) == dense_rank(space) - dense_rank(subspace) == 3
    assert dense_rank(subspace + reps) == 5
    for rep in reps:
        assert not dense_in_span(subspace, rep)


def test_quotient_rejects_outside_subspace():
    with pytest.raises(SubspaceNotContained):
        quotient_basis([(1, 0, 0)], [(0, 1, 0)])


def test_solve_combination():
    vs = [(1, 0, 1), (0, 1, 1)]
    coeffs = solve_combination(vs, (2, 3, 5))
    assert coeffs == [F(2), F(3)]
    assert solve_combination(vs, (0, 0, 1)) is None


def test_span_rank():
    assert span_rank([(1, 2), (2, 4), (0, 1)]) == 2
    assert span_rank([]) == 0


def test_sparse_matrix_validation():
    with pytest.raises(ValueError):
        SparseMatrixQ(1, 2, [[(5, F(1))]])
    with pytest.raises(ValueError):
        SparseMatrixQ(2, 2, [[(0, F(1))]])
    m = SparseMatrixQ(1, 3, [[(1, F(0)), (0, F(2))]])
    assert m.rows == [[(0, F(2))]]  # zeros dropped, columns sorted
