import pytest
from fractions import Fraction

from algconc.laurent import lp, ONE, T
from algconc.matrix import Matrix, Q, QT
from algconc.chains import ChainComplex, ChainMap, homology
from algconc.symmetric import (SymmetricComplex, SymmetricStructure,
                               zero_structure, validate_symmetric,
                               boundary_construction)
from algconc.surgery import (is_connected, surgery_data_from_cocycles,
                             algebraic_surgery, SurgeryData, NotConnected,
                             NotCocycle, CupProductNonzero)


DELTA = lp({2: 1, 1: -1, 0: 1})
HERM = T - ONE + T ** -1


def circle():
    C = ChainComplex(QT, {0: 1, 1: 1}, {1: Matrix([[T - ONE]])})
    st = SymmetricStructure(1, {0: {1: Matrix([[ONE]]), 0: Matrix([[T]])},
                                1: {1: Matrix([[ONE]])}})
    return SymmetricComplex(C, st, poincare=True)


def hyperbolic():
    # rank-2 degree-2 complex over Q with hyperbolic intersection form
    one = Fraction(1)
    z = Fraction(0)
    C = ChainComplex(Q, {2: 2}, {})
    st = SymmetricStructure(4, {0: {2: Matrix([[z, one], [one, z]])}})
    return SymmetricComplex(C, st)


class TestIsConnected:

    def test_poincare_complex_connected(self):
        assert is_connected(circle()).connected

    def test_degree_reasons(self):
        C = ChainComplex(QT, {2: 1}, {})
        X = SymmetricComplex(C, SymmetricStructure(4, {0: {2: Matrix([[DELTA]])}}))
        assert is_connected(X).connected

    def test_zero_structure_not_connected(self):
        C = ChainComplex(QT, {0: 1, 1: 1}, {1: Matrix([[T - ONE]])})
        X = SymmetricComplex(C, zero_structure(1))
        rep = is_connected(X)
        assert not rep.connected


class TestSurgeryData:

    def test_empty_data(self):
        X = hyperbolic()
        data = surgery_data_from_cocycles(X, [])
        assert data.f.target.total_rank() == 0

    def test_lagrangian_cocycle_accepted(self):
        X = hyperbolic()
        data = surgery_data_from_cocycles(X, [[Fraction(1), Fraction(0)]])
        assert data.f.target.ranks == {2: 1}

    def test_non_isotropic_rejected(self):
        X = hyperbolic()
        with pytest.raises(CupProductNonzero) as e:
            surgery_data_from_cocycles(X, [[Fraction(1), Fraction(1)]])
        assert e.value.value == 2

    def test_non_cocycle_rejected(self):
        C = ChainComplex(QT, {2: 1, 3: 1}, {3: Matrix([[DELTA]])})
        X = SymmetricComplex(C, SymmetricStructure(4, {}))
        with pytest.raises(NotCocycle) as e:
            surgery_data_from_cocycles(X, [[ONE]])
        assert e.value.index == 0


class TestAlgebraicSurgery:

    def test_empty_data_is_identity(self):
        for X in (circle(), hyperbolic()):
            data = SurgeryData(X, ChainMap(X.C, ChainComplex(X.C.ring, {}, {}),
                                           {}))
            eff = algebraic_surgery(X, data)
            assert eff.C == X.C and eff.st == X.st

    def test_kills_hyperbolic_h2(self):
        X = hyperbolic()
        data = surgery_data_from_cocycles(X, [[Fraction(1), Fraction(0)]])
        eff = algebraic_surgery(X, data)
        assert validate_symmetric(eff)
        rep = homology(eff.C)
        assert rep.free_rank(2) == 0 and rep.factors(2) == []

    def test_boundary_homotopy_type_preserved(self):
        X = hyperbolic()
        data = surgery_data_from_cocycles(X, [[Fraction(1), Fraction(0)]])
        eff = algebraic_surgery(X, data)
        hb_before = homology(boundary_construction(X).C)
        hb_after = homology(boundary_construction(eff).C)
        assert hb_before == hb_after

    def test_not_connected_rejected(self):
        C = ChainComplex(QT, {0: 1, 1: 1}, {1: Matrix([[T - ONE]])})
        X = SymmetricComplex(C, zero_structure(1))
        with pytest.raises(NotConnected):
            algebraic_surgery(X, SurgeryData(
                X, ChainMap(C, ChainComplex(QT, {}, {}), {})))

    def test_effect_structure_validates_on_laurent_example(self):
        C = ChainComplex(QT, {2: 2}, {})
        z = lp(0)
        st = SymmetricStructure(4, {0: {2: Matrix([[z, ONE],
                                                   [ONE.involute(), z]])}})
        X = SymmetricComplex(C, st)
        data = surgery_data_from_cocycles(X, [[ONE, z]])
        eff = algebraic_surgery(X, data)
        assert validate_symmetric(eff)
        assert homology(eff.C).free_rank(2) == 0
