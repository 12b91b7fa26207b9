from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import det, matmul
from semidiv import hermite_normal_form, lattice_solve, quotient_presentation, smith_normal_form
from semidiv.lattice import coset_representative, integer_kernel, lattice_index, saturation

I2 = [[1, 0], [0, 1]]
M2 = [[0, 1], [2, -1]]


def matrices(max_rows=4, max_cols=4, lo=-9, hi=9):
    return st.integers(1, max_rows).flatmap(lambda m: st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


def is_hnf(H):
    last = -1
    zero_seen = False
    for row in H:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            zero_seen = True
            continue
        assert not zero_seen, "zero rows come last"
        j = nz[0]
        assert j > last and row[j] > 0
        last = j
    return True


def test_hnf_examples():
    assert hermite_normal_form(I2) == (I2, I2)
    H, U = hermite_normal_form(M2)
    assert matmul(U, M2) == H and abs(det(U)) == 1
    assert sorted(row[next(j for j, x in enumerate(row) if x)] for row in H) == [1, 2]
    Z = [[0, 0], [0, 0]]
    assert hermite_normal_form(Z) == (Z, I2)


def test_snf_examples():
    assert smith_normal_form(I2) == (I2, I2, I2)
    D, U, V = smith_normal_form(M2)
    assert D == [[1, 0], [0, 2]]
    assert smith_normal_form([[2]])[0] == [[2]]


def test_lattice_solve_examples():
    assert lattice_solve(I2, [3, -7]) == [3, -7]
    M = [[0, 1], [2, -1]]  # columns (0,2) and (1,-1)
    x = lattice_solve(M, [1, 1])
    assert x == [1, 1]
    assert lattice_solve(M, [1, 0]) is None


def test_quotient_examples():
    P = quotient_presentation(I2)
    assert P.invariant_factors == () and P.free_rank == 0
    P = quotient_presentation(M2)
    assert P.invariant_factors == (2,) and P.free_rank == 0
    P = quotient_presentation([[1], [0]])
    assert P.invariant_factors == () and P.free_rank == 1


def test_lattice_helpers():
    assert integer_kernel([[1, 1, -1]]) and all(
        r[0] + r[1] - r[2] == 0 for r in integer_kernel([[1, 1, -1]]))
    assert lattice_index([(1, 1), (1, -1)]) == 2
    assert saturation([(2, 2)]) == [[1, 1]]
    assert coset_representative((3, 5), [(2, 0), (0, 2)]) == coset_representative((1, 1), [(2, 0), (0, 2)])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_property(M):
    D, U, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    m, n = len(D), len(D[0])
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hnf_property(M):
    H, U = hermite_normal_form(M)
    assert matmul(U, M) == H and abs(det(U)) == 1
    assert is_hnf(H)
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if nz:
            j = nz[0]
            assert all(0 <= H[k][j] < row[j] for k in range(i))
    assert hermite_normal_form(H)[0] == H


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3, -5, 5), st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_projection_vs_solve(L, v):
    s = len(L)
    v = v[:s]
    P = quotient_presentation(L)
    in_lattice = lattice_solve(L, v) is not None
    assert (P.reduce(P.project(v)) == P.zero()) == in_lattice
    x = lattice_solve(L, v)
    if x is not None:
        assert [sum(a * b for a, b in zip(row, x)) for row in L] == v
