"""Algebraic knot triples over metabelian group rings.

A triple holds an Alexander module H of type K, a symmetric Poincare triad
over Z[Z x| H] whose boundary is the standard genus-one model (annulus
glued to two meridional circles), and consistency data xi identifying H
with the first homology of the Q[Z]-cover of the interior complex.  The
triples form a monoid under connected sum, with inverses up to the
concordance relation certified by witness squares.
"""

import itertools
import random
from fractions import Fraction

from . import matrix as mx
from .matrix import Matrix, ZT, Z
from .laurent import lp, LaurentPoly, ZERO, ONE, T, invert_mod
from .smith import snf, domain, solve_exact, left_kernel
from .chains import (ChainComplex, ChainMap, ChainHomotopy, ValidationReport,
                     NotACycle, mapping_cone, change_coefficients, homology,
                     homology_data, is_homologous, direct_sum_complexes,
                     direct_sum_maps)
from .metabelian import (AlexanderModule, ModuleHom, ModuleElement,
                         GroupElement, GroupRing, RingMap, TRIVIAL_MODULE,
                         group_identity, one_minus_t_inverse, augment_map,
                         rationalize_map, induce_hom, inner_auto,
                         laurent_embed_map)
from .symmetric import (SymmetricComplex, SymmetricPair, SymmetricTriad,
                        SymmetricStructure, zero_structure, validate_triad,
                        validate_symmetric, pair_from_triad,
                        glued_boundary_complex, algebraic_thom,
                        pair_evaluation_map, pair_poincare_certificate,
                        relation_defect, transport_structure,
                        structure_direct_sum, union_pairs, SymmetricReport)


def _signed(M, k):
    return M if k % 2 == 0 else -M


class NotAKnotTriple(Exception):
    pass


# -- the boundary model --------------------------------------------------


class _ModelParts:
    """Annulus C with two boundary circles D-+, over any coefficient ring
    carrying distinguished units g1 and la (gq = la^-1 g1 la)."""

    def __init__(self, ring, g1, la, la_inv):
        one = ring.one
        gq = la_inv * g1 * la
        self.g1, self.la, self.la_inv, self.gq = g1, la, la_inv, gq
        self.C = ChainComplex(ring, {0: 2, 1: 2},
                              {1: mx.diag([g1 - one, gq - one], ring)})
        self.phi = SymmetricStructure(1, {
            0: {1: mx.diag([one, -one], ring), 0: mx.diag([g1, -gq], ring)},
            1: {1: mx.diag([one, -one], ring)},
        })
        self.Dm = ChainComplex(ring, {0: 1, 1: 1}, {1: Matrix([[g1 - one]])})
        self.Dp = ChainComplex(ring, {0: 1, 1: 1}, {1: Matrix([[gq - one]])})
        self.im = ChainMap(self.C, self.Dm,
                           {r: Matrix([[one], [la_inv]]) for r in (0, 1)})
        self.ip = ChainMap(self.C, self.Dp,
                           {r: Matrix([[la], [one]]) for r in (0, 1)})
        self.varpi = ChainMap(self.Dm, self.Dp,
                              {r: Matrix([[la]]) for r in (0, 1)})


def _group_model(ring, g1_elt, la_elt):
    return _ModelParts(ring, ring.monomial(g1_elt), ring.monomial(la_elt),
                       ring.monomial(la_elt.inverse()))


# -- knot triples --------------------------------------------------------


class KnotTriple:
    """(H, triad, xi) with the distinguished group elements recorded as
    h1 (the H-part of the meridian g1 = (1, h1)) and la (the longitude
    splitting).  mu is the homotopy f+ varpi ~ f-, stored as degree -> block.
    xi is a list of degree-1 cycles in the Q[Z]-cover of the interior Y,
    one per cyclic summand of H."""

    def __init__(self, H, h1, la, triad, mu, xi):
        self.H = H
        self.h1 = h1
        self.la = la
        self.triad = triad
        self.mu = dict(mu)
        self.xi = [list(x) for x in xi]

    @property
    def ring(self):
        return self.triad.f_minus.target.ring

    @property
    def Y(self):
        return self.triad.f_minus.target

    def g1(self):
        return GroupElement(1, self.h1)

    def varpi(self):
        m = self.ring.monomial(self.la)
        return ChainMap(self.triad.D_minus, self.triad.D_plus,
                        {r: Matrix([[m]]) for r in (0, 1)})

    def mu_homotopy(self):
        return ChainHomotopy(self.varpi().compose(self.triad.f_plus),
                             self.triad.f_minus, self.mu)

    def __repr__(self):
        return "KnotTriple(H=%r, Y ranks=%r)" % (self.H, self.Y.ranks)


# -- Seifert-form models -------------------------------------------------


def _seifert_interior(V):
    """Interior complex over Z[t,t^-1]: cone model of the infinite cyclic
    cover of a genus-g surface complement, from a 2g x 2g Seifert matrix."""
    k = len(V)
    S = [[lp(T) * V[i][j] - lp(V[j][i]) for j in range(k)] for i in range(k)]
    ranks = {0: 1, 1: k + 1}
    bnds = {1: Matrix([[ZERO]] * k + [[T - ONE]])}
    if k:
        ranks[2] = k
        bnds[2] = Matrix([row + [ZERO] for row in S])
    return ChainComplex(ZT, ranks, bnds)


def _surface_triad(V, phis):
    """Triad over Z[t,t^-1] with la = 1 and the given interior structure."""
    Y = _seifert_interior(V)
    mdl = _ModelParts(ZT, lp(T), ONE, ONE)
    k = len(V)
    fm = ChainMap(mdl.Dm, Y, {0: Matrix([[ONE]]),
                              1: Matrix([[ZERO] * k + [ONE]])})
    g = ChainHomotopy(mdl.im.compose(fm), mdl.ip.compose(fm), {})
    return SymmetricTriad(mdl.im, mdl.ip, fm, fm, g, mdl.phi,
                          zero_structure(2), zero_structure(2),
                          SymmetricStructure(3, phis))


def _structure_shapes(Y):
    shapes = {(0, 1): (Y.rank(2), Y.rank(1)),
              (0, 2): (Y.rank(1), Y.rank(2)),
              (1, 2): (Y.rank(2), Y.rank(2))}
    return {sr: sh for sr, sh in shapes.items() if sh[0] and sh[1]}


def _phis_from_values(values, shapes):
    phis = {}
    idx = 0
    for (s, r), (m, n) in shapes.items():
        M = [[values[idx + i * n + j] for j in range(n)] for i in range(m)]
        idx += m * n
        phis.setdefault(s, {})[r] = Matrix(M)
    return phis


def _structure_defects(V, values, shapes):
    """All structure-relation defects of the glued pair, as polynomials."""
    tri = _surface_triad(V, _phis_from_values(values, shapes))
    pair = pair_from_triad(tri)
    out = []
    thom = algebraic_thom(pair, _certify=False)
    lo, hi = thom.C.low(), thom.C.high()
    for s in range(0, thom.st.max_s() + 2):
        for r in range(lo - 1, hi + 1):
            D = relation_defect(thom.C, thom.st, s, r)
            out.extend([x for row in D.rows for x in row])
    Y = tri.Y
    for s in range(0, tri.Phi.max_s() + 2):
        for r in range(Y.low() - 1, Y.high() + 1):
            D = relation_defect(Y, tri.Phi, s, r)
            out.extend([x for row in D.rows for x in row])
    ev = pair_evaluation_map(pair)
    for r in set(ev.source.ranks) | set(ev.target.ranks):
        D = ev.source.boundary(r) * ev.mat(r - 1) \
            - ev.mat(r) * ev.target.boundary(r)
        out.extend([x for row in D.rows for x in row])
    return out


class _EvalAtOne:
    """Entrywise t -> 1 (the Z-level augmentation of a Z[t,t^-1] complex)."""

    def __init__(self, rational=False):
        from .matrix import Q
        self.target = Q if rational else Z
        self.rational = rational

    def __call__(self, x):
        v = lp(x).evaluate(1)
        return v if self.rational else int(v)


def _surface_pair_certified(V, phis):
    pair = pair_from_triad(_surface_triad(V, phis))
    cone = mapping_cone(pair_evaluation_map(pair))
    for rmap in (rationalize_map(ZT), _EvalAtOne(), _EvalAtOne(True)):
        if not homology(change_coefficients(cone, rmap)).is_acyclic():
            return False
    return True


def _solve_surface_structure(V, window=range(-2, 3)):
    shapes = _structure_shapes(_seifert_interior(V))
    nslots = sum(m * n for m, n in shapes.values())
    if nslots == 0:
        if not _surface_pair_certified(V, {}):
            raise NotAKnotTriple("empty interior structure fails duality")
        return {}
    zero_vals = [ZERO] * nslots
    base = _structure_defects(V, zero_vals, shapes)
    probes = []
    for i in range(nslots):
        for e in window:
            vals = list(zero_vals)
            vals[i] = LaurentPoly({e: 1})
            d = _structure_defects(V, vals, shapes)
            probes.append([d[j] - base[j] for j in range(len(base))])
    exps = set()
    for p in itertools.chain(base, *probes):
        exps.update(p.terms)
    exps = sorted(exps)
    eindex = {e: i for i, e in enumerate(exps)}
    ncols = len(base) * len(exps)

    def expand(polys):
        row = [0] * ncols
        for j, p in enumerate(polys):
            for e, c in p.terms.items():
                row[j * len(exps) + eindex[e]] = int(c)
        return row

    A = [expand(row) for row in probes]
    b = [-x for x in expand(base)]
    keep = [j for j in range(ncols)
            if b[j] or any(A[i][j] for i in range(len(A)))]
    A = [[row[j] for j in keep] for row in A]
    b = [b[j] for j in keep]
    x = solve_exact(A, b, "Z")
    if x is None:
        raise NotAKnotTriple("no interior structure in the search window")
    kern = left_kernel(A, "Z")
    per = len(list(window))

    def to_phis(coeffs):
        vals = []
        for i in range(nslots):
            terms = {}
            for kk, e in enumerate(window):
                c = coeffs[i * per + kk]
                if c:
                    terms[e] = c
            vals.append(LaurentPoly(terms))
        return _phis_from_values(vals, shapes)

    def candidates():
        yield x
        for v, s in itertools.product(kern, (1, -1)):
            yield [a + s * c for a, c in zip(x, v)]
        for (v, w), (s, t_) in itertools.product(
                itertools.combinations(kern, 2),
                itertools.product((1, -1), repeat=2)):
            yield [a + s * c + t_ * e for a, c, e in zip(x, v, w)]
        rng = random.Random(0)
        for _ in range(200):
            cand = list(x)
            for v in kern:
                s = rng.choice((-1, 0, 0, 1))
                if s:
                    cand = [a + s * c for a, c in zip(cand, v)]
            yield cand

    for cand in candidates():
        phis = to_phis(cand)
        if _surface_pair_certified(V, phis):
            return phis
    raise NotAKnotTriple("no Poincare interior structure in the kernel coset")


# -- building triples from Seifert matrices ------------------------------


def _integral_factor(p):
    """Primitive integral representative of a nonzero Q[t,t^-1] factor."""
    _, p = domain("QT").unit_normalize(p)
    denom = 1
    for c in p.terms.values():
        denom = denom * c.denominator // _gcd_int(denom, c.denominator)
    p = p * LaurentPoly(denom)
    num = 0
    for c in p.terms.values():
        num = _gcd_int(num, abs(c.numerator))
    if num > 1:
        p = p * LaurentPoly(Fraction(1, num))
    if p.evaluate(1) < 0:
        p = -p
    return p


def _gcd_int(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


def _map_homotopy_blocks(blocks, rmap):
    return {r: M.map_entries(rmap) for r, M in blocks.items()}


def _map_triad(tri, rmap):
    im = change_coefficients(tri.i_minus, rmap)
    ip = change_coefficients(tri.i_plus, rmap)
    fm = change_coefficients(tri.f_minus, rmap)
    fp = change_coefficients(tri.f_plus, rmap)
    g = ChainHomotopy(im.compose(fm), ip.compose(fp),
                      _map_homotopy_blocks(tri.g.ks, rmap))
    return SymmetricTriad(im, ip, fm, fp, g,
                          tri.phi.map_entries(rmap, None, None),
                          tri.dphi_minus.map_entries(rmap, None, None),
                          tri.dphi_plus.map_entries(rmap, None, None),
                          tri.Phi.map_entries(rmap, None, None))


def _map_triple(t, rmap, H, h1, la):
    return KnotTriple(H, h1, la, _map_triad(t.triad, rmap),
                      _map_homotopy_blocks(t.mu, rmap), t.xi)


_SEIFERT_CACHE = {}


def triple_from_seifert(V):
    """Knot triple of the knot with Seifert matrix V (entries integers,
    size 2g x 2g).  The interior symmetric structure is solved for exactly
    and duality-certified; the Alexander module is read off the presentation
    t V - V^T."""
    key = tuple(tuple(int(x) for x in row) for row in V)
    if key in _SEIFERT_CACHE:
        return _SEIFERT_CACHE[key]
    k = len(key)
    if k % 2 == 1 or any(len(row) != k for row in key):
        raise NotAKnotTriple("Seifert matrix must be square of even size")
    V = [list(row) for row in key]
    phis = _solve_surface_structure(V)
    tri_t = _surface_triad(V, phis)
    S = [[lp(T) * V[i][j] - lp(V[j][i]) for j in range(k)] for i in range(k)]
    qt_factors = [f for f in (snf(S, "QT").factors if k else []) if f != ONE]
    H = AlexanderModule([_integral_factor(f) for f in qt_factors])
    ring = GroupRing(H)
    triad = _map_triad(tri_t, laurent_embed_map(ring))
    YQ = change_coefficients(tri_t.Y, rationalize_map(ZT))
    hd = homology_data(YQ, 1)
    if hd.free_rank or list(hd.factors) != qt_factors:
        raise NotAKnotTriple("interior homology does not present the module")
    t = KnotTriple(H, H.zero(), group_identity(H), triad, {},
                   hd.generators())
    _SEIFERT_CACHE[key] = t
    return t


def unknot_triple():
    return triple_from_seifert([])


# -- meridian normalization and conjugation ------------------------------


def conjugate_triple(t, u):
    """Transport along the inner automorphism by (0, u): the meridian's
    H-part moves from h1 to h1 + (t - 1) u."""
    c = GroupElement(0, u)
    rmap = inner_auto(c)
    h1 = t.h1 + (T - ONE) * u
    la = c.inverse() * t.la * c
    return _map_triple(t, rmap, t.H, h1, la)


def normalize_meridian(t):
    """Conjugate so that the meridian is (1, 0); idempotent, xi unchanged."""
    if t.h1.is_zero():
        return t
    return conjugate_triple(t, one_minus_t_inverse(t.h1))


def retwist_longitude(t, la_new):
    """Equivalent triple presented with the longitude splitting la_new."""
    ring = t.ring
    la_old = t.la
    mdl = _group_model(ring, t.g1(), la_new)
    w = ring.monomial(la_new.inverse() * la_old)
    tri = t.triad
    nu = ChainMap(mdl.C, tri.C,
                  {r: mx.diag([ring.one, w], ring) for r in (0, 1)})
    fp = ChainMap(mdl.Dp, tri.f_plus.target,
                  {r: Matrix([[w]]) * tri.f_plus.mat(r) for r in (0, 1)})
    im = ChainMap(mdl.C, mdl.Dm, {r: nu.mat(r) * tri.i_minus.mat(r)
                                  for r in (0, 1)})
    g = ChainHomotopy(im.compose(tri.f_minus), mdl.ip.compose(fp),
                      {r: nu.mat(r) * tri.g.k(r) for r in (0, 1)
                       if tri.g.k(r).shape[0] and tri.g.k(r).shape[1]})
    triad = SymmetricTriad(im, mdl.ip, tri.f_minus, fp, g, mdl.phi,
                           tri.dphi_minus, tri.dphi_plus, tri.Phi)
    return KnotTriple(t.H, t.h1, la_new, triad, t.mu, t.xi)


# -- the monoid ----------------------------------------------------------


def connected_sum(t1, t2):
    """Connected sum: glue the two interiors along a meridional annulus."""
    t1 = normalize_meridian(t1)
    t2 = normalize_meridian(t2)
    H2 = t1.H.direct_sum(t2.H)
    incl1 = t1.H.inclusion_left(H2)
    incl2 = t2.H.inclusion_right(H2, t1.H.rank())
    a = _map_triple(t1, induce_hom(incl1), H2, H2.zero(),
                    GroupElement(t1.la.n, incl1(t1.la.h)))
    b = _map_triple(t2, induce_hom(incl2), H2, H2.zero(),
                    GroupElement(t2.la.n, incl2(t2.la.h)))
    ring = GroupRing(H2)
    A, B = a.triad, b.triad
    YA, YB, DB = A.Y, B.Y, B.D_minus
    comp = a.varpi().compose(A.f_plus)       # D- -> D+ -> Y of the left triple
    degrees = set(YA.ranks) | set(YB.ranks) | set(r + 1 for r in DB.ranks)
    ranks = {r: YA.rank(r) + DB.rank(r - 1) + YB.rank(r) for r in degrees}
    bnds = {}
    for r in degrees:
        bnds[r] = mx.block(
            [[YA.boundary(r), None, None],
             [_signed(comp.mat(r - 1), r), DB.boundary(r - 1),
              _signed(B.f_minus.mat(r - 1), r - 1)],
             [None, None, YB.boundary(r)]],
            [YA.rank(r), DB.rank(r - 1), YB.rank(r)],
            [YA.rank(r - 1), DB.rank(r - 2), YB.rank(r - 1)], ring)
    Y2 = ChainComplex(ring, ranks, bnds)
    f2m = ChainMap(A.D_minus, Y2,
                   {r: mx.block([[A.f_minus.mat(r), None, None]],
                                [A.D_minus.rank(r)],
                                [YA.rank(r), DB.rank(r - 1), YB.rank(r)],
                                ring) for r in A.D_minus.ranks})
    f2p = ChainMap(B.D_plus, Y2,
                   {r: mx.block([[None, None, B.f_plus.mat(r)]],
                                [B.D_plus.rank(r)],
                                [YA.rank(r), DB.rank(r - 1), YB.rank(r)],
                                ring) for r in B.D_plus.ranks})
    phis = {}
    for s in range(max(A.Phi.max_s(), B.Phi.max_s()) + 1):
        lvl = {}
        for r in degrees | set(x - 1 for x in degrees):
            row_dims = [YA.rank(3 - r + s), DB.rank(2 - r + s),
                        YB.rank(3 - r + s)]
            col_dims = [YA.rank(r), DB.rank(r - 1), YB.rank(r)]
            if not sum(row_dims) or not sum(col_dims):
                continue
            M = mx.block([[A.Phi.mat(s, r, YA), None, None],
                          [None, None, None],
                          [None, None, B.Phi.mat(s, r, YB)]],
                         row_dims, col_dims, ring)
            if not M.is_zero(ring):
                lvl[r] = M
        if lvl:
            phis[s] = lvl
    Phi2 = SymmetricStructure(3, phis)
    wnu = ring.monomial(b.la.inverse() * a.la)
    nu = ChainMap(B.C, A.C, {r: mx.diag([ring.one, wnu], ring)
                             for r in (0, 1)})
    i2m = ChainMap(B.C, A.D_minus, {r: nu.mat(r) * A.i_minus.mat(r)
                                    for r in (0, 1)})
    gks = {}
    for r in (0, 1):
        gks[r] = mx.block(
            [[nu.mat(r) * A.g.k(r), _signed(B.i_minus.mat(r), r + 1),
              B.g.k(r)]],
            [B.C.rank(r)],
            [YA.rank(r + 1), DB.rank(r), YB.rank(r + 1)], ring)
    g2 = ChainHomotopy(i2m.compose(f2m), B.i_plus.compose(f2p), gks)
    triad2 = SymmetricTriad(i2m, B.i_plus, f2m, f2p, g2, B.phi,
                            zero_structure(2), zero_structure(2), Phi2)
    mu2 = {}
    amu, bmu = a.mu_homotopy(), b.mu_homotopy()
    for r in (0, 1):
        mu2[r] = mx.block(
            [[amu.k(r), _signed(mx.identity(DB.rank(r), ring), r),
              bmu.k(r)]],
            [A.D_minus.rank(r)],
            [YA.rank(r + 1), DB.rank(r), YB.rank(r + 1)], ring)
    xi2 = []
    za, zb = YA.rank(1), YB.rank(1)
    mid = DB.rank(0)
    for x in a.xi:
        xi2.append(list(x) + [ZERO] * (mid + zb))
    for x in b.xi:
        xi2.append([ZERO] * (za + mid) + list(x))
    return KnotTriple(H2, H2.zero(), b.la, triad2, mu2, xi2)


def invert_triple(t):
    """Negate every structure except the annular boundary; the flip
    equivalence of the boundary (exchanging the two circles through la)
    absorbs the boundary sign into the gluing homotopy."""
    tri = t.triad
    ring = t.ring
    m, mi = ring.monomial(t.la), ring.monomial(t.la.inverse())
    z = ring.zero
    sig = {r: Matrix([[z, m], [mi, z]]) for r in (0, 1)}
    gks = {}
    for r in (0, 1):
        M = tri.g.k(r)
        if M.shape[0] and M.shape[1] and not M.is_zero(ring):
            gks[r] = sig[r] * M
    g2 = ChainHomotopy(tri.i_minus.compose(tri.f_minus),
                       tri.i_plus.compose(tri.f_plus), gks)
    triad2 = SymmetricTriad(tri.i_minus, tri.i_plus, tri.f_minus,
                            tri.f_plus, g2, tri.phi,
                            tri.dphi_minus.negate(), tri.dphi_plus.negate(),
                            tri.Phi.negate())
    return KnotTriple(t.H, t.h1, t.la, triad2, t.mu, t.xi)


# -- boundary tori and zero surgery --------------------------------------


def boundary_torus(t):
    """The glued boundary E = D- union_C D+ as a symmetric complex."""
    return glued_boundary_complex(t.triad)


def torus_equivalence(t_src, t_tgt):
    """Structure-preserving equivalence E(la_src) -> E(la_tgt) of boundary
    tori of triples over the same ring with equal meridians."""
    if t_src.ring != t_tgt.ring or t_src.g1() != t_tgt.g1():
        raise ValueError("tori live over different models")
    ring = t_src.ring
    E1 = glued_boundary_complex(t_src.triad)
    E2 = glued_boundary_complex(t_tgt.triad)
    w = ring.monomial(t_src.la.inverse() * t_tgt.la)
    one = ring.one
    return ChainMap(E1.C, E2.C, {2: mx.diag([one, w], ring),
                                 1: mx.diag([one, one, w, w], ring),
                                 0: mx.diag([one, w], ring)})


class ZeroSurgeryComplex:
    """3-dimensional symmetric Poincare complex of the zero surgery,
    together with the module and the pushed-forward consistency cycles."""

    def __init__(self, complex_, H, xi):
        self.complex = complex_
        self.H = H
        self.xi = [list(x) for x in xi]

    @property
    def ring(self):
        return self.complex.C.ring

    def __repr__(self):
        return "ZeroSurgeryComplex(ranks=%r)" % (self.complex.C.ranks,)


def _pair_sum(pa, pb):
    src = direct_sum_complexes([pa.f.source, pb.f.source])
    tgt = direct_sum_complexes([pa.f.target, pb.f.target])
    return SymmetricPair(
        direct_sum_maps([pa.f, pb.f], src, tgt),
        structure_direct_sum([pa.delta_phi, pb.delta_phi],
                             [pa.f.target, pb.f.target], tgt),
        structure_direct_sum([pa.phi, pb.phi],
                             [pa.f.source, pb.f.source], src))


def _pair_negate(p):
    return SymmetricPair(p.f, p.delta_phi.negate(), p.phi.negate())


def zero_surgery(t):
    """N = (Y + unknot interior) glued to the boundary torus: cap the
    longitude with a solid torus whose meridian is la."""
    t = normalize_meridian(t)
    ring = t.ring
    u = _map_triple(unknot_triple(),
                    induce_hom(ModuleHom.zero(TRIVIAL_MODULE, t.H)),
                    t.H, t.H.zero(), group_identity(t.H))
    pa = _pair_sum(pair_from_triad(t.triad),
                   _pair_negate(pair_from_triad(u.triad)))
    E = glued_boundary_complex(t.triad)
    w = torus_equivalence(u, t)
    src = pa.f.source
    mats = {}
    for r in set(E.C.ranks):
        mats[r] = mx.block([[mx.identity(E.C.rank(r), ring)],
                            [w.mat(r)]],
                           [E.C.rank(r), w.source.rank(r)],
                           [E.C.rank(r)], ring)
    m = ChainMap(src, E.C, mats)
    EU = w.source
    pb = SymmetricPair(
        m, zero_structure(3),
        structure_direct_sum(
            [glued_boundary_complex(t.triad).st.negate(),
             glued_boundary_complex(u.triad).st],
            [E.C, EU], src))
    N = union_pairs(pa, pb)
    za = t.Y.rank(1)
    pad = N.C.rank(1) - za
    xi = [list(x) + [ZERO] * pad for x in t.xi]
    return ZeroSurgeryComplex(SymmetricComplex(N.C, N.st, poincare=True),
                              t.H, xi)


# -- validation ----------------------------------------------------------


def _canonical_qt(p):
    return domain("QT").unit_normalize(lp(p))[1]


def _xi_consistency(H, CQ, xi, deg=1):
    """xi must list cycles presenting H as the degree-deg homology of CQ."""
    failures = []
    hd = homology_data(CQ, deg)
    if hd.free_rank:
        failures.append(("consistency", "free-rank"))
        return failures
    want = ONE
    for p in H.factors:
        want = want * lp(p)
    got = ONE
    for p in hd.factors:
        got = got * p
    if _canonical_qt(want) != _canonical_qt(got):
        failures.append(("consistency", "factors"))
        return failures
    if len(xi) != H.rank():
        failures.append(("consistency", "generator-count"))
        return failures
    rows = []
    for i, (x, p) in enumerate(zip(xi, H.factors)):
        try:
            coords = hd.class_of(x)
        except NotACycle:
            failures.append(("consistency", "cycle", i))
            continue
        if not hd.is_zero_class([lp(p) * lp(v) for v in x]):
            failures.append(("consistency", "order", i))
        rows.append([lp(c) for c in coords])
    if failures:
        return failures
    # the classes generate iff their cokernel presentation is trivial;
    # same order + surjective forces an isomorphism over the PID
    k = len(hd.factors)
    if k == 0:
        return failures
    rel = []
    for j, p in enumerate(hd.factors):
        row = [ZERO] * k
        row[j] = p
        rel.append(row)
    rel.extend(rows)
    res = snf(rel, "QT")
    dom = domain("QT")
    units = all(dom.unit_normalize(f)[1] == dom.one
                for f in res.factors[:res.rank])
    if res.rank < k or not units:
        failures.append(("consistency", "not-surjective"))
    return failures


def validate_triple(t):
    """Full validation: model boundary, triad relations, duality
    certification, meridional homology, longitude symmetry, the mu
    homotopy, and consistency of xi with the Alexander module."""
    failures = []
    tri = t.triad
    ring = t.ring
    mdl = _group_model(ring, t.g1(), t.la)
    for name, got, want in (
            ("annulus", tri.C, mdl.C),
            ("annulus-structure", tri.phi, mdl.phi),
            ("circle-minus", tri.D_minus, mdl.Dm),
            ("circle-plus", tri.D_plus, mdl.Dp),
            ("inclusion-minus", tri.i_minus, mdl.im),
            ("inclusion-plus", tri.i_plus, mdl.ip),
            ("rel-structure-minus", tri.dphi_minus, zero_structure(2)),
            ("rel-structure-plus", tri.dphi_plus, zero_structure(2))):
        if got != want:
            failures.append(("model", name))
    if failures:
        return SymmetricReport(False, failures)
    rep = validate_triad(tri)
    failures += rep.failures
    cert = pair_poincare_certificate(pair_from_triad(tri))
    for label, ok in cert.items():
        if not ok:
            failures.append(("poincare", label))
    for tag, f in (("minus", tri.f_minus), ("plus", tri.f_plus)):
        fz = change_coefficients(f, augment_map(ring, "Z"))
        if not homology(mapping_cone(fz)).is_acyclic():
            failures.append(("meridian", tag))
    if transport_structure(t.varpi(), tri.dphi_minus) \
            != tri.dphi_plus.negate():
        failures.append(("longitude",))
    failures += [("mu",) + f for f in t.mu_homotopy().validate().failures]
    YQ = change_coefficients(t.Y, augment_map(ring, "QZ"))
    failures += _xi_consistency(t.H, YQ, t.xi)
    return SymmetricReport(not failures, failures, cert)


# -- concordance witnesses -----------------------------------------------


class ConcordanceWitness:
    """Data certifying that two triples are concordant: module maps
    jb: H -> Hp and jbd: Hdag -> Hp, a 4-dimensional complex V over
    Z[Z x| Hp] with structure theta, maps j, jdag of the interiors and
    delta of the boundary torus into V, homotopies gamma/gammadag, and
    consistency cycles xi for Hp.  varpi_top optionally overrides the
    standard equivalence of the two boundary tori."""

    def __init__(self, Hp, jb, jbd, V, theta, j, jdag, delta,
                 gamma, gammadag, xi, varpi_top=None):
        self.Hp = Hp
        self.jb = jb
        self.jbd = jbd
        self.V = V
        self.theta = theta
        self.j = j
        self.jdag = jdag
        self.delta = delta
        self.gamma = dict(gamma)
        self.gammadag = dict(gammadag)
        self.xi = [list(x) for x in xi]
        self.varpi_top = varpi_top

    def __repr__(self):
        return "ConcordanceWitness(Hp=%r, V ranks=%r)" \
            % (self.Hp, self.V.ranks)


def reflexive_witness(t):
    """Witness for t ~ t: V is the interior itself, capped by the
    product structure."""
    tri = t.triad
    eta = pair_from_triad(tri).f
    ident = ChainMap.identity(t.Y)
    return ConcordanceWitness(t.H, ModuleHom.identity(t.H),
                              ModuleHom.identity(t.H), t.Y,
                              zero_structure(4), ident, ident, eta,
                              {}, {}, t.xi)


def _induced_for_witness(t, hom):
    rmap = induce_hom(hom)
    return _map_triple(t, rmap, hom.target,
                       hom(t.h1), GroupElement(t.la.n, hom(t.la.h)))


def validate_concordance_witness(t1, t2, w):
    """Certify w as a concordance from t1 to t2: the witness square is a
    4-dimensional symmetric Poincare triad, V has the Z-homology of a
    circle reached by both interiors, and the consistency squares for the
    module maps commute."""
    failures = []
    ring = GroupRing(w.Hp)
    a = _induced_for_witness(t1, w.jb)
    b = _induced_for_witness(t2, w.jbd)
    EA = glued_boundary_complex(a.triad)
    EB = glued_boundary_complex(b.triad)
    varpi = w.varpi_top
    if varpi is None:
        varpi = torus_equivalence(b, a)
    src = direct_sum_complexes([EA.C, EB.C])
    phi = structure_direct_sum([EA.st, EB.st.negate()], [EA.C, EB.C], src)
    imats = {}
    for r in set(EA.C.ranks):
        imats[r] = mx.block([[mx.identity(EA.C.rank(r), ring)],
                             [varpi.mat(r)]],
                            [EA.C.rank(r), EB.C.rank(r)],
                            [EA.C.rank(r)], ring)
    i_minus = ChainMap(src, EA.C, imats)
    Ysum = direct_sum_complexes([a.Y, b.Y])
    etaA = pair_from_triad(a.triad)
    etaB = pair_from_triad(b.triad)
    i_plus = direct_sum_maps([etaA.f, etaB.f], src, Ysum)
    dphi_plus = structure_direct_sum([a.triad.Phi, b.triad.Phi.negate()],
                                     [a.Y, b.Y], Ysum)
    f_minus = w.delta
    fpmats = {}
    for r in set(Ysum.ranks):
        fpmats[r] = mx.block([[w.j.mat(r)], [w.jdag.mat(r)]],
                             [a.Y.rank(r), b.Y.rank(r)],
                             [w.V.rank(r)], ring)
    f_plus = ChainMap(Ysum, w.V, fpmats)
    gks = {}
    for r in set(src.ranks):
        g1 = w.gamma.get(r)
        g2 = w.gammadag.get(r)
        if g1 is None and g2 is None:
            continue
        gks[r] = mx.block(
            [[g1], [g2]], [EA.C.rank(r), EB.C.rank(r)],
            [w.V.rank(r + 1)], ring)
    g = ChainHomotopy(i_minus.compose(f_minus), i_plus.compose(f_plus), gks)
    tri = SymmetricTriad(i_minus, i_plus, f_minus, f_plus, g, phi,
                         zero_structure(3), dphi_plus, w.theta)
    rep = validate_triad(tri)
    failures += rep.failures
    cert = pair_poincare_certificate(pair_from_triad(tri))
    for label, ok in cert.items():
        if not ok:
            failures.append(("poincare", label))
    aug = augment_map(ring, "Z")
    VZ = change_coefficients(w.V, aug)
    hv = homology(VZ)
    if hv.entries != {0: (1, []), 1: (1, [])}:
        failures.append(("homology", "V"))
    for tag, f in (("j", w.j), ("j-dagger", w.jdag)):
        fz = change_coefficients(f, aug)
        if not homology(mapping_cone(fz)).is_acyclic():
            failures.append(("homology", tag))
    VQ = change_coefficients(w.V, augment_map(ring, "QZ"))
    failures += _xi_consistency(w.Hp, VQ, w.xi)
    if not failures:
        jQ = w.j.mat(1).map_entries(augment_map(ring, "QZ"))
        jdQ = w.jdag.mat(1).map_entries(augment_map(ring, "QZ"))
        for tag, t_, hom, mat in (("square-j", t1, w.jb, jQ),
                                  ("square-j-dagger", t2, w.jbd, jdQ)):
            for i, gen in enumerate(t_.H.gens()):
                img = hom(gen)
                combo = [ZERO] * len(w.xi[0]) if w.xi else []
                for res, xv in zip(img.residues, w.xi):
                    combo = [c + lp(res) * lp(v)
                             for c, v in zip(combo, xv)]
                pushed = (Matrix([t_.xi[i]]) * mat).rows[0]
                same, _ = is_homologous(VQ, 1, pushed, combo)
                if not same:
                    failures.append(("consistency", tag, i))
    return SymmetricReport(not failures, failures, cert)


# -- gluing witnesses (transitivity) -------------------------------------


def _compose_homs(f, g):
    return ModuleHom(f.source, g.target, [g(x) for x in f.images])


def _quotient_by_antidiagonal(f1, f2):
    """coker((f1, -f2): S -> M1 (+) M2) with the two projections and the
    expression of the new generators in old coordinates."""
    M1, M2 = f1.target, f2.target
    total = M1.direct_sum(M2)
    n = total.rank()
    rows = []
    for i, p in enumerate(total.factors):
        row = [ZERO] * n
        row[i] = lp(p)
        rows.append(row)
    for gsrc in f1.source.gens():
        a, b = f1(gsrc), f2(gsrc)
        rows.append([lp(r) for r in a.residues]
                    + [-lp(r) for r in b.residues])
    res = snf(rows, "QT") if n else None
    dom = domain("QT")
    kept = []
    for i in range(n):
        if i < (res.rank if res else 0):
            _, canon = dom.unit_normalize(res.factors[i])
            if canon == dom.one:
                continue
            kept.append((i, canon))
        else:
            raise NotAKnotTriple("quotient module has a free summand")
    Q = AlexanderModule([_integral_factor(p) for _, p in kept])

    def project(offset, source):
        images = []
        for j in range(source.rank()):
            coords = res.V[offset + j]
            images.append(Q.element([coords[i] for i, _ in kept]))
        return ModuleHom(source, Q, images)

    pr1 = project(0, M1)
    pr2 = project(M1.rank(), M2)
    gen_rows = [res.Vinv[i] for i, _ in kept]
    return Q, pr1, pr2, gen_rows


def glue_witnesses(t1, t2, t3, w12, w23):
    """Stack a witness for t1 ~ t2 on a witness for t2 ~ t3 along the
    shared interior, producing a witness for t1 ~ t3."""
    Hq, pr1, pr2, gen_rows = _quotient_by_antidiagonal(w12.jbd, w23.jb)
    ring = GroupRing(Hq)
    jb = _compose_homs(w12.jb, pr1)
    jbd = _compose_homs(w23.jbd, pr2)
    jmid = _compose_homs(w12.jbd, pr1)
    r1, r2 = induce_hom(pr1), induce_hom(pr2)
    a = _induced_for_witness(t1, jb)
    m = _induced_for_witness(t2, jmid)
    c = _induced_for_witness(t3, jbd)
    V1 = change_coefficients(w12.V, r1)
    V2 = change_coefficients(w23.V, r2)
    th1 = w12.theta.map_entries(r1, None, None)
    th2 = w23.theta.map_entries(r2, None, None)
    j1 = ChainMap(a.Y, V1, {r: M.map_entries(r1)
                            for r, M in w12.j.mats.items()})
    jd1 = ChainMap(m.Y, V1, {r: M.map_entries(r1)
                             for r, M in w12.jdag.mats.items()})
    j2 = ChainMap(m.Y, V2, {r: M.map_entries(r2)
                            for r, M in w23.j.mats.items()})
    jd2 = ChainMap(c.Y, V2, {r: M.map_entries(r2)
                             for r, M in w23.jdag.mats.items()})
    d1 = ChainMap(glued_boundary_complex(a.triad).C, V1,
                  {r: M.map_entries(r1) for r, M in w12.delta.mats.items()})
    d2 = ChainMap(glued_boundary_complex(m.triad).C, V2,
                  {r: M.map_entries(r2) for r, M in w23.delta.mats.items()})
    gam1 = _map_homotopy_blocks(w12.gamma, r1)
    gamd1 = _map_homotopy_blocks(w12.gammadag, r1)
    gam2 = _map_homotopy_blocks(w23.gamma, r2)
    gamd2 = _map_homotopy_blocks(w23.gammadag, r2)
    # union of the two 4-complexes along the middle interior; the second
    # interior enters with its basis negated so that the two pushes of a
    # middle 1-cycle land in the same homology class, matching the
    # antidiagonal identification in the quotient module
    Phi_m = m.triad.Phi
    pa = SymmetricPair(jd1, th1, Phi_m.negate())
    pb = SymmetricPair(-j2, th2, Phi_m)
    W = union_pairs(pa, pb)
    Ym = m.Y
    EA = glued_boundary_complex(a.triad).C
    EM = glued_boundary_complex(m.triad).C
    EC = glued_boundary_complex(c.triad).C
    eta_m = pair_from_triad(m.triad).f
    bands_r = lambda r: [V1.rank(r), Ym.rank(r - 1), V2.rank(r)]

    def dbar_mat(r):
        g1 = gamd1.get(r - 1)
        g2 = gam2.get(r - 1)
        return mx.block(
            [[d1.mat(r), None, None],
             [_signed(g1, r + 1) if g1 is not None else None,
              eta_m.mat(r - 1),
              _signed(g2, r) if g2 is not None else None],
             [None, None, -d2.mat(r)]],
            [EA.rank(r), EM.rank(r - 1), EM.rank(r)],
            bands_r(r), ring)

    delta_new = ChainMap(EA, W.C,
                         {r: mx.block([[d1.mat(r), None, None]],
                                      [EA.rank(r)], bands_r(r), ring)
                          for r in set(EA.ranks)})
    j_new = ChainMap(a.Y, W.C,
                     {r: mx.block([[j1.mat(r), None, None]],
                                  [a.Y.rank(r)], bands_r(r), ring)
                      for r in set(a.Y.ranks)})
    jd_new = ChainMap(c.Y, W.C,
                      {r: mx.block([[None, None, jd2.mat(r)]],
                                   [c.Y.rank(r)], bands_r(r), ring)
                       for r in set(c.Y.ranks)})
    # top equivalence: through the middle torus, with the retraction sign
    w_am = w12.varpi_top or torus_equivalence(m, a)
    w_mc = w23.varpi_top or torus_equivalence(c, m)
    varpi_new = ChainMap(EC, EA,
                         {r: w_mc.mat(r) * w_am.mat(r)
                          for r in set(EC.ranks)})
    # homotopy correction for retracting the glued torus onto E(a): the
    # retraction is only a one-sided inverse, and the defect is null-
    # homotopic via kappa, which lifts the outer E(m) band into the
    # middle band of the glued torus
    gamma_new = {r: mx.block([[gam1.get(r), None, None]],
                             [EA.rank(r)], bands_r(r + 1), ring)
                 for r in set(EA.ranks) if gam1.get(r) is not None}
    gammad_new = {}
    for r in set(EC.ranks):
        base = gamd2.get(r)
        M = mx.block([[None, None, base]],
                     [EC.rank(r)], bands_r(r + 1), ring) \
            if base is not None else mx.zero(EC.rank(r),
                                             sum(bands_r(r + 1)), ring)
        kappa_row = mx.block(
            [[None, _signed(w_mc.mat(r), r), None]],
            [EC.rank(r)],
            [EA.rank(r + 1), EM.rank(r), EM.rank(r + 1)], ring)
        gammad_new[r] = M + kappa_row * dbar_mat(r + 1)
    xi_new = []
    pad1 = V1.rank(1)
    padm = Ym.rank(0)
    pad2 = V2.rank(1)
    x1 = [list(x) + [ZERO] * (padm + pad2) for x in w12.xi]
    x2 = [[ZERO] * (pad1 + padm) + list(x) for x in w23.xi]
    old = x1 + x2
    for row in gen_rows:
        acc = [ZERO] * (pad1 + padm + pad2)
        for cval, xv in zip(row, old):
            acc = [a_ + lp(cval) * lp(v) for a_, v in zip(acc, xv)]
        xi_new.append(acc)
    return ConcordanceWitness(Hq, jb, jbd, W.C, W.st, j_new, jd_new,
                              delta_new, gamma_new, gammad_new, xi_new,
                              varpi_top=varpi_new)
