import itertools

import pytest
from hypothesis import given, strategies as st

from novikov_torsion.polycyclic import (KernelChart, PcElement, PcGrading, PcGroup, PcVerdict,
                                        UnsupportedKernel, heisenberg, pc_deg_phi,
                                        pc_invertibility)

H = heisenberg()
ints = st.integers(-4, 4)
elements = st.tuples(ints, ints, ints)


def mat(g):
    # x^a y^b z^c as a unitriangular integer matrix; y x = x y z^-1 holds for these
    a, b, c = g
    return ((1, a, a * b + c), (0, 1, b), (0, 0, 1))


def mat_mul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def x_():
    return PcElement.of(H, H.gen(0))


def y_():
    return PcElement.of(H, H.gen(1))


class TestCollection:
    def test_examples(self):
        assert H.mul(H.gen(1), H.gen(0)) == (1, 1, -1)
        xy = H.mul(H.gen(0), H.gen(1))
        assert H.mul(xy, xy) == (2, 2, -1)
        assert H.format((2, 2, -1)) == "x^2*y^2*z^-1"
        assert H.collect([(1, 1), (0, 1), (1, -1), (0, -1)]) == (0, 0, -1)

    @given(elements, elements)
    def test_matrix_model(self, g, h):
        assert mat(H.mul(g, h)) == mat_mul(mat(g), mat(h))

    @given(elements, elements, elements)
    def test_associative(self, a, b, c):
        assert H.mul(H.mul(a, b), c) == H.mul(a, H.mul(b, c))

    @given(elements)
    def test_inverse(self, g):
        assert H.mul(g, H.inverse(g)) == H.identity() == H.mul(H.inverse(g), g)

    def test_bad_rules(self):
        with pytest.raises(ValueError):
            PcGroup(("x", "y", "z"), {(0, 1): (1, 2, 0)})
        with pytest.raises(ValueError):
            PcGroup(("x", "y", "z"), {(0, 1): (1, 1, 1), (0, 2): (1, 1, 1)})

    def test_abelian(self):
        A = PcGroup(("a", "b"))
        assert A.mul((1, 0), (0, 1)) == A.mul((0, 1), (1, 0))


class TestGroupRing:
    def test_noncommutative(self):
        x, y = x_(), y_()
        assert not (x * y - y * x).is_zero()
        assert (1 + x) * (1 - x) == 1 - x * x

    @given(st.dictionaries(elements, st.integers(-3, 3), max_size=3),
           st.dictionaries(elements, st.integers(-3, 3), max_size=3),
           st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
    def test_degree_additive(self, p, q, ab):
        a, b = ab
        if a == b == 0:
            a = 1
        gr = PcGrading(H, (a, b, 0))
        P, Q = PcElement(H, p), PcElement(H, q)
        if P.is_zero() or Q.is_zero():
            return
        assert pc_deg_phi(P * Q, gr) == pc_deg_phi(P, gr) + pc_deg_phi(Q, gr)

    def test_degree_examples(self):
        x, y = x_(), y_()
        gr = PcGrading(H, (1, 0, 0))
        assert pc_deg_phi(x * x + x * y, gr) == 1
        assert pc_deg_phi((1 + x) * (1 + x), gr) == 2
        assert pc_deg_phi(PcElement(H), gr) == float("-inf")

    @given(st.dictionaries(elements, st.integers(-3, 3).filter(bool), min_size=1, max_size=3),
           st.dictionaries(elements, st.integers(-3, 3).filter(bool), min_size=1, max_size=3))
    def test_no_zero_divisors(self, p, q):
        P, Q = PcElement(H, p), PcElement(H, q)
        assert not (P * Q).is_zero()
        assert P * 1 == P

    def test_grading_must_kill_commutators(self):
        with pytest.raises(ValueError):
            PcGrading(H, (1, 0, 1))


class TestInvertibility:
    gr = PcGrading(H, (1, 0, 0))

    def test_examples(self):
        x, y = x_(), y_()
        assert pc_invertibility(1 - y * x, self.gr) is PcVerdict.INVERTIBLE
        assert pc_invertibility(1 + y - x, self.gr) is PcVerdict.NOT_INVERTIBLE
        assert pc_invertibility(2 - x, self.gr) is PcVerdict.NOT_INVERTIBLE
        assert pc_invertibility(y - x, self.gr) is PcVerdict.INVERTIBLE

    @pytest.mark.parametrize("g", [(1, 0, 0), (-1, 3, 2), (2, -1, 5), (0, 1, 0)])
    def test_one_minus_g(self, g):
        for phi in ((1, 0, 0), (1, 1, 0), (2, -3, 0)):
            gr = PcGrading(H, phi)
            if gr(g) == 0:
                continue
            assert pc_invertibility(1 - PcElement.of(H, g), gr) is PcVerdict.INVERTIBLE

    def test_degenerate_matrix(self):
        one = PcElement.const(H, 1)
        zero = PcElement.const(H, 0)
        x = x_()
        A = [[one, zero], [zero, x]]
        assert pc_invertibility(A, self.gr) is PcVerdict.DEGENERATE

    def test_non_abelian_kernel(self):
        with pytest.raises(UnsupportedKernel):
            KernelChart(PcGrading(H, (0, 0, 0)))

    def test_chart_is_homomorphism(self):
        chart = KernelChart(PcGrading(H, (1, 1, 0)))
        ker = [g for g in itertools.product(range(-2, 3), repeat=3) if g[0] + g[1] == 0]
        for g, h in itertools.product(ker[:20], ker[-20:]):
            a, b, c = chart.coords(g), chart.coords(h), chart.coords(H.mul(g, h))
            assert c == tuple(u + v for u, v in zip(a, b))
