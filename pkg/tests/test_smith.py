from fractions import Fraction

from hypothesis import given, settings, strategies as st

from algconc.laurent import LaurentPoly, ZERO, ONE, T, lp
from algconc.smith import snf, domain, left_kernel, solve_exact, solve_linear, _matmul


def L(d):
    return LaurentPoly(d)


tm1 = L({1: 1, 0: -1})


def check_decomposition(A, ring):
    res = snf(A, ring)
    dom = domain(ring)
    M = [[dom.check(x) for x in row] for row in A]
    assert _matmul(_matmul(res.U, M, dom), res.V, dom) == res.diagonal()
    # transformations invertible over the base ring
    m, n = res.shape
    assert _matmul(res.U, res.Uinv, dom) == [[dom.one if i == j else dom.zero
                                             for j in range(m)] for i in range(m)]
    assert _matmul(res.Vinv, res.V, dom) == [[dom.one if i == j else dom.zero
                                             for j in range(n)] for i in range(n)]
    # divisibility chain
    for a, b in zip(res.factors, res.factors[1:]):
        _, r = dom.divmod_(b, a)
        assert dom.is_zero(r)
    return res


class TestIntegerSnf:

    def test_diagonal_passthrough(self):
        res = check_decomposition([[2, 0], [0, 6]], "Z")
        assert res.factors == [2, 6]

    def test_classic(self):
        res = check_decomposition([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], "Z")
        assert res.factors == [2, 6, 12]

    def test_zero_matrix(self):
        res = check_decomposition([[0, 0], [0, 0]], "Z")
        assert res.factors == []
        assert res.rank == 0

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3),
                    min_size=2, max_size=4))
    def test_random(self, rows):
        check_decomposition(rows, "Z")


laurent_entries = st.dictionaries(st.integers(-2, 2), st.integers(-4, 4),
                                  max_size=3).map(LaurentPoly)


class TestLaurentSnf:

    def test_diagonal_passthrough(self):
        res = check_decomposition([[tm1, ZERO], [ZERO, tm1 * tm1]], "QT")
        assert res.factors == [tm1, tm1 * tm1]

    def test_hand_reduction(self):
        # [[t, 1], [0, t-1]] has factors 1, t(t-1)
        res = check_decomposition([[T, ONE], [ZERO, tm1]], "QT")
        assert res.factors[0] == ONE
        # second factor is t(t-1); t is a unit, canonical form is t-1
        assert res.factors[1] == tm1

    def test_zero(self):
        res = check_decomposition([[ZERO]], "QT")
        assert res.factors == []

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(laurent_entries, min_size=2, max_size=2),
                    min_size=2, max_size=3))
    def test_random(self, rows):
        check_decomposition(rows, "QT")


class TestKernelAndSolve:

    def test_left_kernel(self):
        # row vector (t-1, -1) kills [[1],[t-1]]
        ker = left_kernel([[ONE], [tm1]], "QT")
        assert len(ker) == 1
        x = ker[0]
        assert (x[0] * ONE + x[1] * tm1).is_zero()

    def test_solve_exact(self):
        A = [[tm1, ZERO], [ZERO, tm1]]
        v = [tm1 * tm1, tm1]
        x = solve_exact(A, v, "QT")
        assert x is not None
        assert [x[0] * tm1, x[1] * tm1] == v

    def test_solve_exact_unsolvable(self):
        assert solve_exact([[tm1]], [ONE], "QT") is None

    def test_solve_exact_integers(self):
        x = solve_exact([[2, 0], [0, 3]], [4, 9], "Z")
        assert x == [2, 3]


class TestSolveLinear:

    def test_single_equation(self):
        x, s = solve_linear([[tm1]], [ONE])
        assert x == [ONE]
        assert s == tm1

    def test_identity(self):
        b = [L({1: 2, 0: 1}), L({-1: 3})]
        x, s = solve_linear([[ONE, ZERO], [ZERO, ONE]], b)
        assert s == ONE
        assert x == b

    def test_scaling(self):
        # A = diag(t, t), b = (1, t): x = (1, t), s = t up to units
        x, s = solve_linear([[T, ZERO], [ZERO, T]], [ONE, T])
        assert [T * x[0], T * x[1]] == [s * ONE, s * T]

    def test_no_solution(self):
        assert solve_linear([[ZERO]], [ONE]) is None

    def test_overdetermined_consistent(self):
        x, s = solve_linear([[ONE], [tm1]], [tm1, tm1 * tm1])
        assert x[0] * ONE == s * tm1
