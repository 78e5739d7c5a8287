import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from equicohom.intlinalg import (
    det,
    diagonal,
    in_span,
    inverse_unimodular,
    kernel_basis,
    matmul,
    rank,
    smith_normal_form,
    solve,
)

small = st.integers(min_value=-6, max_value=6)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


def _sympy_diag(m):
    d = sympy_snf(Matrix(m), domain=ZZ)
    k = min(d.shape)
    return sorted((abs(int(d[i, i])) for i in range(k) if d[i, i] != 0))


def test_identity():
    u, d, v = smith_normal_form([[1, 0], [0, 1]])
    assert diagonal(d) == [1, 1]


def test_zero_matrix():
    _, d, _ = smith_normal_form([[0, 0], [0, 0]])
    assert d == [[0, 0], [0, 0]]


def test_ep_differential():
    _, d, _ = smith_normal_form([[2, 0], [0, 0]])
    assert diagonal(d) == [2, 0]


def test_known_invariants():
    _, d, _ = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert diagonal(d) == [2, 6, 12]


@given(matrices())
def test_snf_matches_sympy(m):
    u, d, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == d
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    diag = diagonal(d)
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))
    assert sorted(nz) == _sympy_diag(m)


@given(matrices())
def test_rank_and_kernel(m):
    cols = len(m[0])
    assert rank(m) == Matrix(m).rank()
    k = kernel_basis(m, cols)
    nk = len(k[0]) if k and k[0] else 0
    assert nk == cols - rank(m)
    for j in range(nk):
        vec = [row[j] for row in k]
        assert all(sum(a * b for a, b in zip(row, vec)) == 0 for row in m)


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_roundtrip(m, x):
    cols = len(m[0])
    x = x[:cols]
    b = [sum(a * y for a, y in zip(row, x)) for row in m]
    sol = solve(m, b, cols)
    assert sol is not None
    assert [sum(a * y for a, y in zip(row, sol)) for row in m] == b


def test_solve_detects_non_integral():
    assert solve([[2]], [1], 1) is None


def test_in_span():
    assert in_span([[2, 0], [0, 3]], [4, 3])
    assert not in_span([[2, 0], [0, 3]], [1, 0])


def test_inverse_unimodular():
    m = [[2, 1], [1, 1]]
    assert matmul(m, inverse_unimodular(m)) == [[1, 0], [0, 1]]


def test_det():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[2, 0, 0], [0, 3, 0], [1, 1, 1]]) == 6
    with pytest.raises(ValueError):
        det([[1, 2, 3]])


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(m):
    assert det(m) == Matrix(m).det()
