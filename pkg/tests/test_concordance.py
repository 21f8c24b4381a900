import pytest

from algconc.laurent import lp, ZERO, ONE, T
from algconc.matrix import Matrix
from algconc.chains import ChainComplex, ChainMap, homology, change_coefficients
from algconc.metabelian import (AlexanderModule, ModuleHom, GroupElement,
                                GroupRing, augment_map)
from algconc.symmetric import (validate_symmetric, transport_structure,
                               SymmetricStructure)
from algconc.concordance import (KnotTriple, triple_from_seifert,
                                 unknot_triple, conjugate_triple,
                                 normalize_meridian, retwist_longitude,
                                 connected_sum, invert_triple,
                                 boundary_torus, torus_equivalence,
                                 zero_surgery, validate_triple,
                                 ConcordanceWitness, reflexive_witness,
                                 validate_concordance_witness,
                                 glue_witnesses)

TREFOIL = [[-1, 1], [0, -1]]
FIG8 = [[1, 1], [0, -1]]

DELTA_TREFOIL = lp({0: 1, 1: -1, 2: 1})
DELTA_FIG8 = lp({0: -1, 1: 3, 2: -1})       # integral normalization
DELTA_FIG8_QT = lp({0: 1, 1: -3, 2: 1})     # monic normalization over Q[t]


@pytest.fixture(scope="module")
def trefoil():
    return triple_from_seifert(TREFOIL)


@pytest.fixture(scope="module")
def fig8():
    return triple_from_seifert(FIG8)


def qz_h1_factors(N):
    NQ = change_coefficients(N.complex.C, augment_map(N.complex.C.ring, "QZ"))
    free, factors = homology(NQ).entries[1]
    assert free == 0
    return factors


class TestUnknot:

    def test_validates(self):
        assert validate_triple(unknot_triple()).ok

    def test_zero_surgery_rational_homology(self):
        N = zero_surgery(unknot_triple())
        NQ = change_coefficients(N.complex.C,
                                 augment_map(N.complex.C.ring, "Q"))
        assert homology(NQ).entries == {r: (1, []) for r in range(4)}

    def test_boundary_torus_homology(self):
        E = boundary_torus(unknot_triple())
        EZ = change_coefficients(E.C, augment_map(E.C.ring, "Z"))
        assert homology(EZ).entries == {0: (1, []), 1: (2, []), 2: (1, [])}


class TestSeifertModels:

    def test_trefoil_validates(self, trefoil):
        assert validate_triple(trefoil).ok

    def test_trefoil_module(self, trefoil):
        assert trefoil.H.factors == (DELTA_TREFOIL,)

    def test_fig8_module(self, fig8):
        assert fig8.H.factors == (DELTA_FIG8,)

    def test_zero_xi_fails_consistency(self, trefoil):
        t = trefoil
        bad = KnotTriple(t.H, t.h1, t.la, t.triad, t.mu,
                         [[ZERO for _ in row] for row in t.xi])
        rep = validate_triple(bad)
        assert not rep.ok
        assert any(f[0] == "consistency" for f in rep.failures)

    def test_broken_mu_fails(self, trefoil):
        t = trefoil
        ring = t.ring
        mu = {r: M for r, M in t.mu.items()}
        if mu:
            r0 = min(mu)
            rows = [list(x) for x in mu[r0].rows]
            rows[0][0] = rows[0][0] + ring.one
            mu[r0] = Matrix(rows)
        else:
            mu[0] = Matrix([[ring.one] + [ring.zero] * (t.Y.rank(1) - 1)])
        bad = KnotTriple(t.H, t.h1, t.la, t.triad, mu, t.xi)
        assert not validate_triple(bad).ok


class TestNormalization:

    def test_idempotent(self, trefoil):
        assert normalize_meridian(trefoil) is trefoil

    def test_conjugated_meridian_recovered(self, trefoil):
        skew = conjugate_triple(trefoil, trefoil.H.gen(0))
        assert not skew.h1.is_zero()
        back = normalize_meridian(skew)
        assert back.h1.is_zero()
        assert validate_triple(back).ok
        assert back.H.factors == trefoil.H.factors


class TestMonoid:

    def test_sum_with_unknot_preserves_module(self, trefoil):
        s = connected_sum(trefoil, unknot_triple())
        assert s.H.factors == trefoil.H.factors
        assert validate_triple(s).ok

    def test_module_adds(self, trefoil, fig8):
        s = connected_sum(trefoil, fig8)
        assert s.H.factors == trefoil.H.direct_sum(fig8.H).factors
        assert validate_triple(s).ok

    def test_zero_surgery_factors_add(self, trefoil, fig8):
        s = connected_sum(trefoil, fig8)
        assert qz_h1_factors(zero_surgery(s)) == [DELTA_TREFOIL
                                                  * DELTA_FIG8_QT]

    def test_invert_is_involutive(self, trefoil):
        back = invert_triple(invert_triple(trefoil))
        tri1, tri2 = back.triad, trefoil.triad
        for r in (0, 1):
            assert tri1.g.k(r) == tri2.g.k(r)
        assert tri1.Phi == tri2.Phi
        assert tri1.dphi_minus == tri2.dphi_minus

    def test_invert_validates(self, fig8):
        assert validate_triple(invert_triple(fig8)).ok

    def test_sum_with_inverse_validates(self, trefoil):
        s = connected_sum(trefoil, invert_triple(trefoil))
        assert validate_triple(s).ok
        assert s.H.factors == (DELTA_TREFOIL, DELTA_TREFOIL)


class TestZeroSurgery:

    def test_poincare(self, trefoil):
        N = zero_surgery(trefoil)
        rep = validate_symmetric(N.complex)
        assert rep.ok and all(rep.poincare.values())

    def test_covering_homology_matches_module(self, trefoil, fig8):
        assert qz_h1_factors(zero_surgery(trefoil)) == [DELTA_TREFOIL]
        assert qz_h1_factors(zero_surgery(fig8)) == [DELTA_FIG8_QT]


class TestBoundaryTorus:

    def test_square_zero(self, trefoil):
        E = boundary_torus(trefoil)
        assert E.C.validate().ok
        assert validate_symmetric(E).ok

    def test_equivalence_transports_structure(self, trefoil):
        la2 = GroupElement(0, trefoil.H.element([T]))
        tw = retwist_longitude(trefoil, la2)
        w = torus_equivalence(trefoil, tw)
        assert w.validate().ok
        E1 = boundary_torus(trefoil)
        E2 = boundary_torus(tw)
        assert transport_structure(w, E1.st) == E2.st


def witness_variant(w, **kw):
    fields = dict(Hp=w.Hp, jb=w.jb, jbd=w.jbd, V=w.V, theta=w.theta,
                  j=w.j, jdag=w.jdag, delta=w.delta, gamma=w.gamma,
                  gammadag=w.gammadag, xi=w.xi, varpi_top=w.varpi_top)
    fields.update(kw)
    return ConcordanceWitness(**fields)


def bump_entry(M, ring):
    rows = [list(r) for r in M.rows]
    rows[0][0] = rows[0][0] + ring.one
    return Matrix(rows)


class TestWitness:

    def test_reflexive(self, trefoil):
        rep = validate_concordance_witness(trefoil, trefoil,
                                           reflexive_witness(trefoil))
        assert rep.ok

    def test_reflexive_fig8(self, fig8):
        rep = validate_concordance_witness(fig8, fig8,
                                           reflexive_witness(fig8))
        assert rep.ok

    def test_corrupt_theta(self, trefoil):
        w = reflexive_witness(trefoil)
        ring = GroupRing(w.Hp)
        n2 = w.V.rank(2)
        M = Matrix([[ring.one if (i, j) == (0, 0) else ring.zero
                     for j in range(n2)] for i in range(n2)])
        bad = SymmetricStructure(w.theta.n, {0: {2: M}}, w.theta.epsilon)
        rep = validate_concordance_witness(trefoil, trefoil,
                                           witness_variant(w, theta=bad))
        assert not rep.ok
        assert any(f[:2] == ("glued", "relation") for f in rep.failures)

    def test_corrupt_delta(self, trefoil):
        w = reflexive_witness(trefoil)
        ring = GroupRing(w.Hp)
        mats = dict(w.delta.mats)
        r0 = min(mats)
        mats[r0] = bump_entry(mats[r0], ring)
        bad = ChainMap(w.delta.source, w.delta.target, mats)
        rep = validate_concordance_witness(trefoil, trefoil,
                                           witness_variant(w, delta=bad))
        assert not rep.ok
        assert any(f[:2] == ("glued", "chain-map") for f in rep.failures)

    def test_corrupt_gamma(self, trefoil):
        w = reflexive_witness(trefoil)
        ring = GroupRing(w.Hp)
        src = w.delta.source
        gm = dict(w.gamma)
        gm[1] = Matrix([[ring.one] + [ring.zero] * (w.V.rank(2) - 1)
                        for _ in range(src.rank(1))])
        rep = validate_concordance_witness(trefoil, trefoil,
                                           witness_variant(w, gamma=gm))
        assert not rep.ok
        assert any(f[0] == "homotopy" for f in rep.failures)

    def test_zero_xi(self, trefoil):
        w = reflexive_witness(trefoil)
        bad = [[ZERO for _ in row] for row in w.xi]
        rep = validate_concordance_witness(trefoil, trefoil,
                                           witness_variant(w, xi=bad))
        assert not rep.ok
        assert any(f[0] == "consistency" for f in rep.failures)

    def test_zero_module_map(self, trefoil):
        w = reflexive_witness(trefoil)
        zero_jb = ModuleHom(trefoil.H, w.Hp,
                            [w.Hp.zero() for _ in trefoil.H.gens()])
        rep = validate_concordance_witness(trefoil, trefoil,
                                           witness_variant(w, jb=zero_jb))
        assert not rep.ok
        assert ("consistency", "square-j", 0) in rep.failures

    def test_extra_free_summand_in_v(self, trefoil):
        w = reflexive_witness(trefoil)
        ring = GroupRing(w.Hp)
        V = w.V
        ranks = dict(V.ranks)
        ranks[1] += 1
        b1 = Matrix([list(r) for r in V.boundary(1).rows]
                    + [[ring.zero] * V.rank(0)])
        b2 = Matrix([list(r) + [ring.zero] for r in V.boundary(2).rows])
        V2 = ChainComplex(ring, ranks, {1: b1, 2: b2})

        def pad(f):
            return ChainMap(f.source, V2,
                            {d: (Matrix([list(r) + [ring.zero]
                                         for r in M.rows])
                                 if d == 1 else M)
                             for d, M in f.mats.items()})

        bad = witness_variant(w, V=V2, j=pad(w.j), jdag=pad(w.jdag),
                              delta=pad(w.delta),
                              xi=[list(x) + [ZERO] for x in w.xi])
        rep = validate_concordance_witness(trefoil, trefoil, bad)
        assert not rep.ok
        assert ("homology", "V") in rep.failures


class TestGluing:

    def test_glued_witness_validates(self, trefoil):
        w = reflexive_witness(trefoil)
        g = glue_witnesses(trefoil, trefoil, trefoil, w, w)
        rep = validate_concordance_witness(trefoil, trefoil, g)
        assert rep.ok
        assert g.Hp.factors == trefoil.H.factors

    def test_glued_witness_fig8(self, fig8):
        w = reflexive_witness(fig8)
        g = glue_witnesses(fig8, fig8, fig8, w, w)
        assert validate_concordance_witness(fig8, fig8, g).ok
