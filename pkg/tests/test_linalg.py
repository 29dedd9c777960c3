import random

import pytest

from dgkoszul.errors import NotAComplexError
from dgkoszul.linalg import (
    QQ,
    PrimeField,
    SparseMatrix,
    column_space_basis,
    kernel_basis,
    rank,
    row_reduce,
    solve_in_span,
    subquotient,
    vectors_to_matrix,
)

F101 = PrimeField(101)


def mat(rows, field=QQ):
    return SparseMatrix.from_rows(field, rows)


def rand_matrix(field, nrows, ncols, rng, density=0.5):
    entries = {}
    for i in range(nrows):
        for j in range(ncols):
            if rng.random() < density:
                entries[i, j] = field.of(rng.randint(-4, 4))
    return SparseMatrix(field, nrows, ncols, entries)


def test_row_reduce_identity():
    r, pivots, rref = row_reduce(SparseMatrix.identity(QQ, 2))
    assert r == 2
    assert pivots == [0, 1]
    assert rref == SparseMatrix.identity(QQ, 2)


def test_row_reduce_zero():
    r, pivots, _ = row_reduce(SparseMatrix.zero(QQ, 3, 4))
    assert r == 0
    assert pivots == []


def test_row_reduce_dependent_rows():
    r, _, _ = row_reduce(mat([[1, 2], [2, 4]]))
    assert r == 1


def test_rref_is_canonical():
    m = mat([[2, 4, 6], [1, 3, 5]])
    _, pivots, rref = row_reduce(m)
    assert pivots == [0, 1]
    assert rref.to_rows() == mat([[1, 0, -1], [0, 1, 2]]).to_rows()


def test_kernel_identity_empty():
    assert kernel_basis(SparseMatrix.identity(QQ, 2)) == []


def test_kernel_one_relation():
    (v,) = kernel_basis(mat([[1, 1]]))
    assert v == {0: QQ.of(-1), 1: QQ.of(1)} or v == {1: QQ.of(1), 0: QQ.of(-1)}


def test_kernel_of_zero_1x1():
    (v,) = kernel_basis(mat([[0]]))
    assert v == {0: QQ.of(1)}


def test_kernel_vectors_annihilated_and_independent():
    rng = random.Random(7)
    for field in (QQ, F101):
        for _ in range(25):
            m = rand_matrix(field, rng.randint(1, 5), rng.randint(1, 6), rng)
            basis = kernel_basis(m)
            assert len(basis) == m.ncols - rank(m)
            for v in basis:
                assert m.apply(v) == {}
            if basis:
                packed = vectors_to_matrix(field, basis, m.ncols)
                assert rank(packed) == len(basis)


def test_rank_equals_rank_of_transpose():
    rng = random.Random(11)
    for _ in range(40):
        m = rand_matrix(F101, rng.randint(1, 6), rng.randint(1, 6), rng)
        assert rank(m) == rank(m.transpose())


def test_column_space_basis_spans():
    m = mat([[1, 2, 3], [0, 0, 1]])
    basis = column_space_basis(m)
    assert len(basis) == rank(m) == 2


def test_solve_in_span():
    gens = [{0: QQ.of(1), 1: QQ.of(1)}, {1: QQ.of(1)}]
    coeffs = solve_in_span(QQ, gens, {0: QQ.of(2), 1: QQ.of(3)}, 2)
    assert coeffs == [QQ.of(2), QQ.of(1)]
    assert solve_in_span(QQ, [{0: QQ.of(1)}], {1: QQ.of(1)}, 2) is None


def test_subquotient_zero_maps():
    # cycles = zero map on k^2, boundaries = zero map -> dim 2
    dim, reps = subquotient(SparseMatrix.zero(QQ, 1, 2), SparseMatrix.zero(QQ, 2, 1))
    assert dim == 2
    assert len(reps) == 2


def test_subquotient_identity_cycles():
    dim, reps = subquotient(SparseMatrix.identity(QQ, 2), SparseMatrix.zero(QQ, 2, 1))
    assert dim == 0
    assert reps == []


def test_subquotient_three_term_complex():
    # hand-reduced complex k -> k^2 -> k with d0 = (1,0)^T and d1 = (0,1):
    # ker(d1) = span{(1,0)} = im(d0), middle cohomology is 0.
    d0 = mat([[1], [0]])
    d1 = mat([[0, 1]])
    dim, _ = subquotient(d1, d0)
    assert dim == 0


def test_subquotient_rejects_non_complex():
    d0 = mat([[1], [0]])
    d1 = mat([[1, 0]])
    with pytest.raises(NotAComplexError):
        subquotient(d1, d0)


def test_subquotient_invariant_under_permutations():
    rng = random.Random(3)
    for _ in range(10):
        n = 4
        boundaries = rand_matrix(QQ, n, 3, rng)
        # build cycles map that annihilates the image: rows from the left kernel
        left = kernel_basis(boundaries.transpose())
        if not left:
            continue
        cycles = vectors_to_matrix(QQ, left, n).transpose()
        dim, _ = subquotient(cycles, boundaries)
        perm = list(range(n))
        rng.shuffle(perm)
        cycles_p = cycles.permute(col_perm=perm)
        boundaries_p = boundaries.permute(row_perm=perm)
        dim_p, _ = subquotient(cycles_p, boundaries_p)
        assert dim == dim_p


def test_representatives_are_cycles_mod_boundaries():
    d0 = mat([[1, 0], [0, 0], [0, 0]])  # boundaries into k^3
    d1 = SparseMatrix.zero(QQ, 1, 3)  # every vector is a cycle
    dim, reps = subquotient(d1, d0)
    assert dim == 2
    for v in reps:
        assert d1.apply(v) == {}


def test_prime_field_arithmetic():
    f = PrimeField(5)
    assert f.of(7) == 2
    assert f.inv(2) == 3
    assert f.of(QQ.of("1/2")) == 3
    with pytest.raises(ValueError):
        PrimeField(6)


def test_entries_iteration_row_major():
    m = SparseMatrix(QQ, 2, 2, {(1, 0): QQ.of(1), (0, 1): QQ.of(2)})
    assert [k for k, _ in m.items()] == [(0, 1), (1, 0)]
