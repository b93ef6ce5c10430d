import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_solve_integer, vertex_oracle
from toricd.exact import LinSystem, det, feasible, lp_maximize, matmul, snf, solve_integer

LAMBDA_4A = [[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]]


def check_snf(A):
    U, S, V = snf(A)
    assert matmul(matmul(U, A), V) == S
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    for i in range(len(S)):
        for j in range(len(S[0])):
            if i != j:
                assert S[i][j] == 0
    assert all(s >= 0 for s in diag)
    nz = [s for s in diag if s]
    assert diag[: len(nz)] == nz
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    return diag


def test_snf_identity():
    assert check_snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]


def test_snf_coprime_diagonal():
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]


def test_snf_type_4a_cokernel():
    diag = check_snf(LAMBDA_4A)
    assert diag == [1, 1, 2]  # Z^4 / image = Z x Z/2


def test_snf_deterministic():
    A = [[4, 6, -2], [2, 8, 10], [6, 0, 4]]
    assert snf(A) == snf(A)


def test_snf_handles_big_entries():
    A = [[10**30, 3], [7, 10**25 + 1]]
    check_snf(A)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 5).flatmap(
        lambda n: st.integers(1, 5).flatmap(
            lambda d: st.lists(st.lists(st.integers(-9, 9), min_size=d, max_size=d), min_size=n, max_size=n)
        )
    )
)
def test_snf_properties(A):
    check_snf(A)


def test_solve_integer_examples():
    assert solve_integer(LAMBDA_4A, [1, 0, -1, 0]) == (1, 0, 0)
    assert solve_integer(LAMBDA_4A, [0, 0, 0, 0]) == (0, 0, 0)
    assert solve_integer([[1, 0], [2, 3]], [1, 1]) is None


def test_solve_integer_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_integer(LAMBDA_4A, [1, 2, 3])


def test_solve_integer_against_box_search():
    rng = random.Random(7)
    for _ in range(200):
        A = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(4)]
        if rng.random() < 0.5:
            x0 = [rng.randint(-3, 3) for _ in range(3)]
            b = [sum(a * x for a, x in zip(r, x0)) for r in A]
        else:
            b = [rng.randint(-4, 4) for _ in range(4)]
        got = solve_integer(A, b)
        brute = brute_solve_integer(A, b)
        if got is not None:
            assert [sum(a * x for a, x in zip(r, got)) for r in A] == b
        if brute is not None:
            assert got is not None
        elif got is not None:
            # the solution lies outside the search box; the solver is still exact
            assert max(abs(x) for x in got) > 5


def test_feasible_examples():
    s = LinSystem(1).add([1], ">", 0).add([1], "<=", 1)
    y = feasible(s)
    assert y is not None and 0 < y[0] <= 1
    assert feasible(LinSystem(1).add([1], "<=", 0).add([1], ">", 0)) is None


def test_feasible_4a_contradiction():
    s = LinSystem(3)
    for row, u in zip(LAMBDA_4A, (3, 1, 0, 0)):
        s.add(row, "<=", u).add(row, ">", u - 1)
    assert feasible(s) is None


def test_feasible_strictness_matters():
    # x + y <= 1, x >= 1/2, y >= 1/2 has one point; making one bound strict kills it
    s = LinSystem(2).add([1, 1], "<=", 1).add([1, 0], ">=", Fraction(1, 2)).add([0, 1], ">=", Fraction(1, 2))
    assert feasible(s) == (Fraction(1, 2), Fraction(1, 2))
    s.add([1, 0], ">", Fraction(1, 2))
    assert feasible(s) is None


def test_feasible_equalities():
    s = LinSystem(3).add([1, 1, 1], "=", 1).add([1, -1, 0], "=", 0).add([0, 0, 1], "<", 0)
    y = feasible(s)
    assert y is not None and s.satisfied_by(y)
    assert feasible(LinSystem(2).add([1, 1], "=", 1).add([2, 2], "=", 3)) is None


def random_system(rng):
    dims = rng.randint(1, 4)
    cons = []
    for _ in range(rng.randint(1, 6)):
        cs = [rng.randint(-2, 2) for _ in range(dims)]
        rel = rng.choice(["<", "<=", "<=", "<", "="])
        cons.append((cs, rel, Fraction(rng.randint(-3, 3))))
    return dims, cons


def test_feasible_against_vertex_oracle():
    rng = random.Random(2024)
    box = 8
    outcomes = set()
    for _ in range(100):
        dims, cons = random_system(rng)
        s = LinSystem(dims)
        for cs, rel, rhs in cons:
            s.add(cs, rel, rhs)
        for k in range(dims):
            e = [int(i == k) for i in range(dims)]
            s.add(e, "<=", box).add(e, ">=", -box)
        got = feasible(s)
        want = vertex_oracle(dims, cons, box)
        assert (got is None) == (want is None), (dims, cons)
        if got is not None:
            assert s.satisfied_by(got)
        outcomes.add(got is None)
    assert outcomes == {True, False}


def test_lp_maximize_simple():
    # max x + y, x + 2y <= 4, 3x + y <= 6
    val, x = lp_maximize([1, 1], [([1, 2], "<=", 4), ([3, 1], "<=", 6)])
    assert val == Fraction(14, 5) and x == (Fraction(8, 5), Fraction(6, 5))


def test_lp_maximize_infeasible_and_equalities():
    assert lp_maximize([1], [([1], "<=", -1)]) is None
    val, x = lp_maximize([0, 1], [([1, 1], "=", 3), ([1, 0], ">=", 1)])
    assert val == 2 and x == (1, 2)


def test_lp_maximize_unbounded():
    with pytest.raises(ValueError):
        lp_maximize([1], [([1], ">=", 0)])
