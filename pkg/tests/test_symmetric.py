import pytest

from algconc.laurent import lp, ONE, T
from algconc.matrix import Matrix, Q, QT
from algconc import matrix as mx
from algconc.chains import (ChainComplex, ChainMap, homology,
                            change_coefficients, direct_sum_complexes)
from algconc.metabelian import AlexanderModule, GroupRing, GroupElement
from algconc.symmetric import (SymmetricComplex, SymmetricPair,
                               SymmetricStructure, zero_structure,
                               validate_symmetric, T_eps, algebraic_thom,
                               boundary_construction, poincare_thickening,
                               union_pairs, product_cobordism,
                               transport_structure, structure_direct_sum,
                               BoundaryMismatch, coefficient_levels)


DELTA = lp({2: 1, 1: -1, 0: 1})
HERM = T - ONE + T ** -1
SKEW = T - T ** -1


def circle():
    C = ChainComplex(QT, {0: 1, 1: 1}, {1: Matrix([[T - ONE]])})
    st = SymmetricStructure(1, {0: {1: Matrix([[ONE]]), 0: Matrix([[T]])},
                                1: {1: Matrix([[ONE]])}})
    return SymmetricComplex(C, st, poincare=True)


def rank_one(n, deg, val):
    C = ChainComplex(QT, {deg: 1}, {})
    st = SymmetricStructure(n, {0: {deg: Matrix([[val]])}})
    return SymmetricComplex(C, st)


# the annular model over the metabelian group ring
H = AlexanderModule([DELTA])
ZG = GroupRing(H)
h1 = H.element([ONE])
g1 = ZG.monomial(GroupElement(1, h1))
la = ZG.monomial(GroupElement(0, H.element([T])))
la_inv = ZG.monomial(GroupElement(0, H.element([T])).inverse())
gq = la_inv * g1 * la


def annular_model():
    C = ChainComplex(ZG, {0: 2, 1: 2},
                     {1: mx.diag([g1 - ZG.one, gq - ZG.one], ZG)})
    phi = SymmetricStructure(1, {
        0: {1: mx.diag([ZG.one, -ZG.one], ZG),
            0: mx.diag([g1, -gq], ZG)},
        1: {1: mx.diag([ZG.one, -ZG.one], ZG)},
    })
    Dm = ChainComplex(ZG, {0: 1, 1: 1}, {1: Matrix([[g1 - ZG.one]])})
    Dp = ChainComplex(ZG, {0: 1, 1: 1}, {1: Matrix([[gq - ZG.one]])})
    im = ChainMap(C, Dm, {r: Matrix([[ZG.one], [la_inv]]) for r in (0, 1)})
    ip = ChainMap(C, Dp, {r: Matrix([[la], [ZG.one]]) for r in (0, 1)})
    return C, phi, Dm, Dp, im, ip


FIXTURES = [circle(), rank_one(2, 1, SKEW), rank_one(4, 2, HERM)]


def levels_homology(C):
    out = {}
    for label, rmap in coefficient_levels(C.ring):
        CC = C if rmap is None else change_coefficients(C, rmap)
        out[label] = homology(CC).entries
    return out


class TestValidate:

    def test_annular_model_valid(self):
        C, phi, *_ = annular_model()
        assert validate_symmetric(SymmetricComplex(C, phi))

    def test_zero_structure_valid_not_poincare(self):
        C, phi, *_ = annular_model()
        X = SymmetricComplex(C, zero_structure(1))
        assert validate_symmetric(X)
        rep = validate_symmetric(SymmetricComplex(C, zero_structure(1),
                                                  poincare=True))
        assert not rep and any(f[0] == "poincare" for f in rep.failures)

    def test_circle_poincare(self):
        rep = validate_symmetric(circle())
        assert rep and all(rep.poincare.values())

    def test_relation_failure_located(self):
        # break the circle's phi_1 witness: phi_0 no longer symmetric
        C = ChainComplex(QT, {0: 1, 1: 1}, {1: Matrix([[T - ONE]])})
        st = SymmetricStructure(1, {0: {1: Matrix([[ONE]]),
                                        0: Matrix([[T]])}})
        rep = validate_symmetric(SymmetricComplex(C, st))
        assert not rep and ("relation", 1, 0) in rep.failures

    def test_t_eps_involutive_up_to_double_dual(self):
        X = rank_one(2, 1, SKEW)
        TT = T_eps(T_eps(X.st, X.C), X.C)
        assert TT.phis == X.st.phis


class TestThom:

    def test_empty_boundary_pair_is_unchanged(self):
        X = circle()
        empty = ChainComplex(QT, {}, {})
        pair = SymmetricPair(ChainMap(empty, X.C, {}), X.st,
                             zero_structure(0))
        thom = algebraic_thom(pair, _certify=False)
        assert thom.C == X.C and thom.st == X.st

    def test_round_trip_homology(self):
        for X in FIXTURES:
            thom = algebraic_thom(poincare_thickening(X), _certify=False)
            assert levels_homology(thom.C) == levels_homology(X.C)
            assert validate_symmetric(thom)

    def test_rejects_non_poincare_pair(self):
        X = rank_one(2, 1, SKEW)
        pair = SymmetricPair(ChainMap(ChainComplex(QT, {}, {}), X.C, {}),
                             zero_structure(2), zero_structure(1))
        with pytest.raises(ValueError):
            algebraic_thom(pair)


class TestBoundary:

    def test_poincare_gives_acyclic_boundary(self):
        b = boundary_construction(circle())
        assert all(not h for h in levels_homology(b.C).values())

    def test_delta_linking_generator(self):
        X = rank_one(4, 2, DELTA)
        b = boundary_construction(X)
        assert b.C.ranks == {1: 1, 2: 1}
        assert b.C.boundary(2) == Matrix([[DELTA]])
        assert homology(b.C).factors(1) == [DELTA]

    def test_boundary_always_poincare(self):
        for X in FIXTURES + [rank_one(4, 2, HERM)]:
            rep = validate_symmetric(boundary_construction(X))
            assert rep and all(rep.poincare.values())

    def test_boundary_of_direct_sum(self):
        A = rank_one(4, 2, HERM)
        B = rank_one(4, 2, SKEW * SKEW + HERM)
        S = SymmetricComplex(direct_sum_complexes([A.C, B.C]),
                             structure_direct_sum([A.st, B.st], [A.C, B.C]))
        bS = boundary_construction(S)
        bA = boundary_construction(A)
        bB = boundary_construction(B)
        sum_of_boundaries = direct_sum_complexes([bA.C, bB.C])
        assert levels_homology(bS.C) == levels_homology(sum_of_boundaries)
        assert validate_symmetric(bS)


class TestThickening:

    def test_inclusion_misses_chain_summand(self):
        X = circle()
        pair = poincare_thickening(X)
        for r, M in pair.f.mats.items():
            k = X.C.rank(r + 1)
            for i in range(k):
                assert all(QT.is_zero(x) for x in M.row(i))

    def test_pair_is_poincare(self):
        for X in FIXTURES:
            rep = validate_symmetric(poincare_thickening(X))
            assert rep and all(rep.poincare.values())

    def test_zero_structure_acyclic_complex(self):
        # acyclic C, phi = 0: boundary is C^{n-*} (+) SC up to regrading
        C = ChainComplex(QT, {0: 1, 1: 1}, {1: Matrix([[ONE]])})
        X = SymmetricComplex(C, zero_structure(2))
        pair = poincare_thickening(X)
        got = levels_homology(pair.f.source)
        assert all(not h for h in got.values())


class TestUnion:

    def test_model_boundary_torus_display(self):
        C, phi, Dm, Dp, im, ip = annular_model()
        pa = SymmetricPair(im, zero_structure(2), phi)
        pb = SymmetricPair(ip, zero_structure(2), phi.negate())
        E = union_pairs(pa, pb)
        assert validate_symmetric(E)
        z = ZG.zero
        assert E.C.boundary(1) == Matrix([[g1 - ZG.one, z],
                                          [ZG.one, la],
                                          [la_inv, ZG.one],
                                          [z, gq - ZG.one]])
        assert E.C.boundary(2) == Matrix([[-ZG.one, g1 - ZG.one, z, -la],
                                          [-la_inv, z, gq - ZG.one, -ZG.one]])
        assert E.phi(0, 2) == Matrix([[-ZG.one, la], [z, z]])
        assert E.phi(0, 1) == Matrix([[z, g1, -la * gq, z],
                                      [z, z, z, la],
                                      [z, z, z, -ZG.one],
                                      [z, z, z, z]])
        assert E.phi(0, 0) == Matrix([[z, g1 * la], [z, -gq]])

    def test_doubling_is_poincare(self):
        for X in FIXTURES:
            pa = poincare_thickening(X)
            pb = SymmetricPair(pa.f, pa.delta_phi.negate(), pa.phi.negate())
            dbl = union_pairs(pa, pb)
            rep = validate_symmetric(SymmetricComplex(dbl.C, dbl.st,
                                                      poincare=True))
            assert rep and all(rep.poincare.values())

    def test_empty_boundary_union_is_direct_sum(self):
        A = circle()
        B = rank_one(2, 1, SKEW)
        empty = ChainComplex(QT, {}, {})
        pa = SymmetricPair(ChainMap(empty, A.C, {}),
                           SymmetricStructure(2, {}), zero_structure(1))
        pb = SymmetricPair(ChainMap(empty, B.C, {}),
                           SymmetricStructure(2, {}), zero_structure(1))
        U = union_pairs(pa, pb)
        assert U.C == direct_sum_complexes([A.C, B.C])

    def test_mismatched_boundaries_rejected(self):
        X = circle()
        pa = poincare_thickening(X)
        with pytest.raises(BoundaryMismatch):
            union_pairs(pa, SymmetricPair(pa.f, pa.delta_phi, pa.phi))


class TestProductCobordism:

    def test_identity_equivalence(self):
        X = circle()
        pair = product_cobordism(ChainMap.identity(X.C), X.st, X.st)
        assert validate_symmetric(SymmetricComplex(pair.f.source, pair.phi))
        # (f,1) restricted to the second summand is the identity
        M = pair.f.mat(1)
        assert M.rows[1] == [QT.one]

    def test_transport_certificate_enforced(self):
        X = circle()
        other = SymmetricStructure(1, {0: {1: Matrix([[T]]),
                                           0: Matrix([[T * T]])}})
        with pytest.raises(ValueError):
            product_cobordism(ChainMap.identity(X.C), X.st, other)

    def test_scaling_unit_transport(self):
        # f = multiplication by t carries phi to t phi t-bar
        X = circle()
        f = ChainMap(X.C, X.C, {0: Matrix([[T]]), 1: Matrix([[T]])})
        st2 = transport_structure(f, X.st)
        pair = product_cobordism(f, X.st, st2)
        assert validate_symmetric(SymmetricComplex(pair.f.source, pair.phi))
