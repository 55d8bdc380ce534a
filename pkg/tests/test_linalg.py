from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from schemoids import linalg


def check_snf(a):
    d, u, v = linalg.smith_normal_form(a)
    assert linalg.mat_eq_mod(linalg.mat_mul(linalg.mat_mul(u, a), v), d, None)
    diag = [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
    for i in range(len(diag) - 1):
        if diag[i + 1]:
            assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
        # off-diagonal must vanish
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    return diag


def test_snf_known():
    assert check_snf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]) == [2, 2, 156]
    assert check_snf([[1, 0], [0, 1]]) == [1, 1]
    assert check_snf([[0, 0], [0, 0]]) == [0, 0]
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=2, max_size=4))
def test_snf_random(a):
    check_snf(a)


def test_solve_integer():
    a = [[2, 0], [0, 3]]
    assert linalg.solve_integer(a, [4, 9]) == [2, 3]
    assert linalg.solve_integer(a, [1, 0]) is None


def test_solve_mod():
    a = [[2]]
    assert linalg.solve_mod(a, [1], 4) is None
    x = linalg.solve_mod(a, [2], 4)
    assert x is not None and (2 * x[0] - 2) % 4 == 0
    a = [[1, 1], [0, 2]]
    x = linalg.solve_mod(a, [3, 2], 6)
    assert x is not None
    assert (x[0] + x[1] - 3) % 6 == 0 and (2 * x[1] - 2) % 6 == 0


def test_solve_mod_p_matches_general():
    a = [[1, 2, 0], [0, 1, 1]]
    b = [1, 2]
    for p in (2, 3, 5):
        xp = linalg.solve_mod_p(a, b, p)
        assert xp is not None
        for row, bi in zip(a, b):
            assert (sum(r * x for r, x in zip(row, xp)) - bi) % p == 0


def test_kernel_and_quotient():
    # C: Z/4 --2--> Z/4 has kernel {0,2} and image {0,2}; H = ker/im trivial
    a = [[2]]
    k = linalg.kernel_lattice_mod(a, 4)
    gens = [[2, 4]]
    assert linalg.quotient_invariants(k, gens) == []
    # ker(0)/im(2) in Z/4 is Z/2
    k = linalg.kernel_lattice_mod([[0]], 4)
    assert linalg.quotient_invariants(k, [[2, 4]]) == [2]
    # Z^2 / <2e1, 3e2> = Z/6
    assert linalg.quotient_invariants([[1, 0], [0, 1]], [[2, 0], [0, 3]]) == [6]


def test_rank():
    assert linalg.rank_rational([[1, 2], [2, 4]]) == 1
    assert linalg.rank_mod_p([[1, 1], [1, 1]], 2) == 1
    assert linalg.rank_mod_p([[2, 0], [0, 1]], 2) == 1


def test_multiplicative_solver():
    # x0*x1 = 4, x1/x0 = 1 -> x0 = x1 = 2
    exps = [[1, 1], [-1, 1]]
    sol = linalg.solve_multiplicative(exps, [Fraction(4), Fraction(1)])
    assert sol == [Fraction(2), Fraction(2)]
    # x0^2 = 2 has no rational solution
    assert linalg.solve_multiplicative([[2]], [Fraction(2)]) is None
    # underdetermined: x0 * x1 = 6 has some solution
    sol = linalg.solve_multiplicative([[1, 1]], [Fraction(6)])
    assert sol is not None and sol[0] * sol[1] == 6


def test_prime_check():
    assert [n for n in range(2, 20) if linalg.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
