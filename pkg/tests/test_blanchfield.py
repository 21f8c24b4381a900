import pytest

from algconc.laurent import lp, ZERO, ONE, T, tc, rf, poly_degree
from algconc.concordance import (triple_from_seifert, unknot_triple,
                                 connected_sum, invert_triple, zero_surgery)
from algconc.blanchfield import (BlanchfieldForm, trivial_form,
                                 blanchfield_from_seifert, chain_blanchfield,
                                 Metaboliser, verify_metaboliser,
                                 is_metabolic, metaboliser_transfer,
                                 WittClass, witt_sum, witt_negate,
                                 trivial_witt, ac1_image,
                                 integral_restriction,
                                 NotSeifert, Undecided, _monic)
from algconc.metabelian import AlexanderModule

TREFOIL = [[-1, 1], [0, -1]]
FIG8 = [[1, 1], [0, -1]]
STEVEDORE = [[1, 1], [0, -2]]

DELTA_TREFOIL = lp({0: 1, 1: -1, 2: 1})
DELTA_FIG8 = lp({0: 1, 1: -3, 2: 1})
DELTA_STEVEDORE = _monic(lp({0: 2, 1: -5, 2: 2}))


@pytest.fixture(scope="module")
def tref_form():
    return blanchfield_from_seifert(TREFOIL)


@pytest.fixture(scope="module")
def fig8_form():
    return blanchfield_from_seifert(FIG8)


@pytest.fixture(scope="module")
def stevedore_form():
    return blanchfield_from_seifert(STEVEDORE)


def all_valid(form):
    return all(form.validate().values())


class TestSeifert:

    def test_trefoil(self, tref_form):
        assert tref_form.module.factors == (DELTA_TREFOIL,)
        assert all_valid(tref_form)

    def test_fig8(self, fig8_form):
        assert fig8_form.module.factors == (DELTA_FIG8,)
        assert all_valid(fig8_form)

    def test_stevedore(self, stevedore_form):
        assert stevedore_form.module.factors == (DELTA_STEVEDORE,)
        assert all_valid(stevedore_form)

    def test_pairing_is_unit_over_order(self, tref_form):
        c = tref_form.pairing[0][0]
        assert not c.is_zero()
        assert (c * DELTA_TREFOIL).is_zero()

    def test_degenerate_matrix_rejected(self):
        with pytest.raises(NotSeifert):
            blanchfield_from_seifert([[1, 0], [0, 1]])

    def test_nonsquare_rejected(self):
        with pytest.raises(NotSeifert):
            blanchfield_from_seifert([[1, 0, 0], [0, 1, 0]])

    def test_empty_matrix(self):
        assert blanchfield_from_seifert([]).module.rank() == 0

    @pytest.mark.parametrize("V", [
        [[-1, 1], [0, -1]],
        [[1, 1], [0, -2]],
        [[-1, 1, 0, 0], [0, -1, 0, 0], [0, 0, 1, 1], [0, 0, 0, -1]],
        [[2, 1], [0, -1]],
    ])
    def test_order_matches_presentation_determinant(self, V):
        form = blanchfield_from_seifert(V)
        order = ONE
        for p in form.module.factors:
            order = order * p
        m = len(V)
        pres = [[lp({1: V[i][j]}) - lp(V[j][i]) for j in range(m)]
                for i in range(m)]
        det = _det(pres)
        assert _monic(order) == _monic(det)


def _det(rows):
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    acc = ZERO
    for j in range(n):
        minor = [[rows[i][k] for k in range(n) if k != j]
                 for i in range(1, n)]
        term = rows[0][j] * _det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


class TestEvaluate:

    def test_generator_pairing(self, tref_form):
        g = tref_form.module.gen(0)
        assert tref_form.evaluate(g, g) == tref_form.pairing[0][0]

    def test_sesquilinear_in_slots(self, fig8_form):
        g = fig8_form.module.gen(0)
        b = fig8_form.evaluate(g, g)
        assert fig8_form.evaluate(T * g, g) == b * T
        assert fig8_form.evaluate(g, T * g) == b * lp(T).involute()

    def test_hermitian_symmetry(self, stevedore_form):
        m = stevedore_form.module
        x, y = m.gen(0), T * m.gen(0)
        assert stevedore_form.evaluate(x, y) == \
            stevedore_form.evaluate(y, x).involute()


class TestChainLevel:

    def test_trefoil(self):
        B = chain_blanchfield(zero_surgery(triple_from_seifert(TREFOIL)))
        assert B.module.factors == (DELTA_TREFOIL,)
        assert all_valid(B)
        c = B.pairing[0][0]
        assert not c.is_zero() and (c * DELTA_TREFOIL).is_zero()

    def test_fig8(self):
        B = chain_blanchfield(zero_surgery(triple_from_seifert(FIG8)))
        assert B.module.factors == (DELTA_FIG8,)
        assert all_valid(B)

    def test_unknot(self):
        B = chain_blanchfield(zero_surgery(unknot_triple()))
        assert B.module.rank() == 0

    def test_matches_seifert_module(self, stevedore_form):
        B = chain_blanchfield(zero_surgery(triple_from_seifert(STEVEDORE)))
        assert B.module.factors == stevedore_form.module.factors
        assert all_valid(B)


class TestMetabolic:

    def test_trefoil_not_metabolic(self, tref_form):
        assert not is_metabolic(tref_form)

    def test_fig8_not_metabolic(self, fig8_form):
        assert not is_metabolic(fig8_form)

    def test_stevedore_metabolic(self, stevedore_form):
        d = is_metabolic(stevedore_form)
        assert d
        expected = Metaboliser(stevedore_form.module,
                               [stevedore_form.module.element([T - lp(2)])])
        assert d.metaboliser.span() == expected.span()

    def test_double_has_diagonal_metaboliser(self, fig8_form):
        AA = fig8_form.direct_sum(fig8_form.negate())
        d = is_metabolic(AA)
        assert d
        g = d.metaboliser.generators[0]
        assert g.residues == (ONE, ONE)

    def test_verify_rejects_wrong_submodule(self, fig8_form):
        AA = fig8_form.direct_sum(fig8_form.negate())
        half = Metaboliser(AA.module, [AA.module.gen(0)])
        assert not verify_metaboliser(AA, half)

    def test_undecided_outside_class(self):
        p = DELTA_TREFOIL * DELTA_TREFOIL
        mod = AlexanderModule([p], rational=True)
        form = BlanchfieldForm(mod, [[tc(rf(1) / rf(p))]])
        with pytest.raises(Undecided):
            is_metabolic(form)

    def test_trivial_form_metabolic(self):
        assert is_metabolic(trivial_form())


class TestTransfer:

    def test_trivial_small_module(self, tref_form):
        H = tref_form.direct_sum(tref_form.negate())
        P = Metaboliser(H.module, [H.module.element([ONE, ONE])])
        R = metaboliser_transfer(H, P, trivial_form(),
                                 Metaboliser(trivial_form().module, []))
        assert verify_metaboliser(H, R)
        assert R.span() == P.span()

    def test_diagonal_blocks(self, tref_form, fig8_form):
        H = tref_form.direct_sum(tref_form.negate())
        Hp = fig8_form.direct_sum(fig8_form.negate())
        big = H.direct_sum(Hp)
        m = big.module

        def elem(ix):
            res = [ZERO] * m.rank()
            for i in ix:
                res[i] = ONE
            return m.element(res)

        P = Metaboliser(m, [elem([0, 1]), elem([2, 3])])
        assert verify_metaboliser(big, P)
        Q = is_metabolic(Hp).metaboliser
        R = metaboliser_transfer(big, P, Hp, Q)
        assert verify_metaboliser(H, R)

    def test_mismatched_modules_rejected(self, tref_form, fig8_form):
        H = tref_form.direct_sum(tref_form.negate())
        P = Metaboliser(H.module, [H.module.element([ONE, ONE])])
        with pytest.raises(ValueError):
            metaboliser_transfer(H, P, fig8_form,
                                 Metaboliser(fig8_form.module, []))


class TestWitt:

    def test_sum_with_inverse_is_metabolic(self, tref_form):
        W = WittClass(tref_form)
        assert witt_sum(W, witt_negate(W)).is_metabolic()

    def test_sum_with_trivial_keeps_decision(self, tref_form):
        W = witt_sum(WittClass(tref_form), trivial_witt())
        assert not W.is_metabolic()

    def test_double_negate(self, stevedore_form):
        W = witt_negate(witt_negate(WittClass(stevedore_form)))
        assert W.form.pairing == stevedore_form.pairing

    def test_undecided_propagates(self):
        p = DELTA_TREFOIL * DELTA_TREFOIL
        mod = AlexanderModule([p], rational=True)
        W = WittClass(BlanchfieldForm(mod, [[tc(rf(1) / rf(p))]]))
        with pytest.raises(Undecided):
            W.is_metabolic()


class TestAC1:

    def test_unknot_trivial(self):
        assert ac1_image(unknot_triple()).is_metabolic()

    def test_trefoil_nontrivial(self):
        assert not ac1_image(triple_from_seifert(TREFOIL)).is_metabolic()

    def test_sum_with_inverse_vanishes(self):
        t = triple_from_seifert(TREFOIL)
        W = ac1_image(connected_sum(t, invert_triple(t)))
        assert W.form.module.rank() == 2
        assert W.is_metabolic()


class TestIntegralRestriction:

    def test_unit_ends_required(self, stevedore_form):
        d = is_metabolic(stevedore_form)
        H_int = AlexanderModule([lp({0: 2, 1: -5, 2: 2})])
        with pytest.raises(Undecided):
            integral_restriction(d.metaboliser, H_int)

    def test_doubled_trefoil(self, tref_form):
        AA = tref_form.direct_sum(tref_form.negate())
        d = is_metabolic(AA)
        H_int = AlexanderModule([DELTA_TREFOIL, DELTA_TREFOIL])
        gens = integral_restriction(d.metaboliser, H_int)
        assert gens
        span = Metaboliser(AA.module, gens).span()
        assert span == d.metaboliser.span()
