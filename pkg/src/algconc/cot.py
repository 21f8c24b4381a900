"""Metabelian representation layer: the group Z |x Q(t)/Q[t,t^-1], the
linking-form representations it receives, induction of zero-surgery
complexes over its rational group ring, and the certificates that stand in
for skew-field contractibility and algebraic (1)-solvability.

The Ore skew field of the rational group ring is never materialized;
contractibility over it is certified through the rational-homology
criterion for the circle comparison map, and the solvability conditions
are checked at the rational and Q[Z] coefficient levels.
"""

from fractions import Fraction

from . import matrix as mx
from .matrix import Matrix, Q, QT
from .laurent import lp, LaurentPoly, ZERO, ONE, tc, TorsionClass, reduce_mod, poly_degree
from .chains import (ChainComplex, ChainMap, change_coefficients,
                     mapping_cone, homology, homology_data)
from .metabelian import GroupElement, augment_map
from .symmetric import (SymmetricComplex, SymmetricPair, zero_structure,
                        validate_symmetric)
from .concordance import zero_surgery, normalize_meridian, unknot_triple
from .smith import left_kernel, solve_exact
from .blanchfield import (chain_blanchfield_data, Metaboliser, is_metabolic,
                          Undecided, _elem_coords, _q_rowspace,
                          _q_nullspace, _monic)


class CertificateUnavailable(Exception):

    def __init__(self, failing):
        self.failing = failing
        super().__init__("certificate unavailable: %s" % (failing,))


# -- the group and its rational group ring -------------------------------


class GammaElement:
    """(n, a) in Z |x Q(t)/Q[t,t^-1]; n acts on classes by t^n."""

    __slots__ = ("n", "a")

    def __init__(self, n, a):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "a", tc(a))

    def __setattr__(self, name, value):
        raise AttributeError("GammaElement is immutable")

    def __mul__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return GammaElement(self.n + other.n,
                            self.a + other.a * lp({self.n: 1}))

    def inverse(self):
        return GammaElement(-self.n, -(self.a * lp({-self.n: 1})))

    def is_identity(self):
        return self.n == 0 and self.a.is_zero()

    def __eq__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        return self.n == other.n and self.a == other.a

    def __hash__(self):
        return hash((self.n, self.a))

    def __repr__(self):
        return "GammaElement(%d, %r)" % (self.n, self.a)


GAMMA_IDENTITY = GammaElement(0, 0)


def gamma_mul(a, b):
    return a * b


class GammaRing:
    """Q[Z |x Q(t)/Q[t,t^-1]] as a coefficient ring object."""

    def __init__(self):
        self.zero = GammaRingElement(self, {})
        self.one = GammaRingElement(self, {GAMMA_IDENTITY: Fraction(1)})

    @property
    def tag(self):
        return "QGamma"

    def is_zero(self, x):
        return not self.coerce(x).support

    def involute(self, x):
        x = self.coerce(x)
        return GammaRingElement(
            self, _merged((g.inverse(), c) for g, c in x.support.items()))

    def coerce(self, x):
        if isinstance(x, GammaRingElement):
            return x
        if isinstance(x, GammaElement):
            return GammaRingElement(self, {x: Fraction(1)})
        if isinstance(x, (int, Fraction)):
            c = Fraction(x)
            return GammaRingElement(self, {GAMMA_IDENTITY: c} if c else {})
        raise TypeError("cannot coerce %r into the semidirect group ring"
                        % (x,))

    def monomial(self, g):
        return GammaRingElement(self, {g: Fraction(1)})

    def __eq__(self, other):
        return isinstance(other, GammaRing)

    def __hash__(self):
        return hash("GammaRing")

    def __repr__(self):
        return "GammaRing()"


def _merged(pairs):
    out = {}
    for g, c in pairs:
        out[g] = out.get(g, Fraction(0)) + c
    return out


class GammaRingElement:
    """Finite formal sum of semidirect-group elements over Q."""

    __slots__ = ("ring", "support")

    def __init__(self, ring, support):
        cleaned = {g: Fraction(c) for g, c in support.items() if c}
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "support", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("GammaRingElement is immutable")

    def is_zero(self):
        return not self.support

    def _coerced(self, other):
        try:
            return self.ring.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        out = dict(self.support)
        for g, c in other.support.items():
            out[g] = out.get(g, Fraction(0)) + c
        return GammaRingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GammaRingElement(self.ring,
                                {g: -c for g, c in self.support.items()})

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        out = {}
        for g, c in self.support.items():
            for h, d in other.support.items():
                k = g * h
                out[k] = out.get(k, Fraction(0)) + c * d
        return GammaRingElement(self.ring, out)

    def __rmul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other * self

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.support == other.support

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def __repr__(self):
        if not self.support:
            return "GammaRingElement(0)"
        return "GammaRingElement(%r)" % (self.support,)


GAMMA_RING = GammaRing()


class GammaRingMap:
    """Entrywise coefficient map usable by change_coefficients."""

    def __init__(self, source, target, fn):
        self.source = source
        self.target = target
        self.fn = fn

    def __call__(self, x):
        return self.fn(x)

    def __repr__(self):
        return "GammaRingMap(%r -> %r)" % (self.source, self.target)


def gamma_to_laurent_map(ring=GAMMA_RING):
    """(n, a) |-> t^n: the quotient to the abelianization Z."""

    def fn(x):
        x = ring.coerce(x)
        out = ZERO
        for g, c in x.support.items():
            out = out + lp({g.n: c})
        return out

    return GammaRingMap(ring, QT, fn)


def gamma_augment_map(ring=GAMMA_RING):
    """Sum of coefficients: the augmentation to Q."""

    def fn(x):
        x = ring.coerce(x)
        return sum(x.support.values(), Fraction(0))

    return GammaRingMap(ring, Q, fn)


# -- the representation --------------------------------------------------


class Representation:
    """rho: Z |x H -> Gamma, (n, h) |-> (n, Bl(xi(h), xi(p))), carrying the
    triple, the chain-level linking form it came from, and the image of p."""

    def __init__(self, triple, p, surgery, form, hd):
        self.triple = triple
        self.p = p
        self.surgery = surgery
        self.form = form
        self.hd = hd
        self.xi_p = self.xi_class(p)
        self.ring = GAMMA_RING

    def xi_class(self, h):
        """The class in the form's module of the pushed-in cycle of h."""
        cycle = [ZERO] * self.surgery.complex.C.rank(1)
        for hi, row in zip(h.residues, self.surgery.xi):
            if lp(hi).is_zero():
                continue
            cycle = [c + lp(hi) * lp(e) for c, e in zip(cycle, row)]
        coords = self.hd.class_of(cycle)
        return self.form.module.element(coords)

    def rho(self, g):
        return GammaElement(g.n, self.form.evaluate(self.xi_class(g.h),
                                                    self.xi_p))

    def ring_map(self):
        source = self.surgery.ring

        def fn(x):
            x = source.coerce(x)
            return GammaRingElement(
                self.ring, _merged((self.rho(g), c)
                                   for g, c in x.support.items()))

        return GammaRingMap(source, self.ring, fn)

    def __repr__(self):
        return "Representation(p=%r)" % (self.p,)


def rho_from_p(T, p):
    T = normalize_meridian(T)
    N = zero_surgery(T)
    form, hd = chain_blanchfield_data(N)
    return Representation(T, p, N, form, hd)


# -- induction over the group ring ---------------------------------------


def induce_over_gamma(N, rep):
    """The zero-surgery complex with coefficients pushed through rho."""
    rmap = rep.ring_map()
    CG = change_coefficients(N.complex.C, rmap)
    ok = CG.validate()
    if not ok.ok:
        raise ValueError("induced boundary maps fail d^2 = 0")
    stG = N.complex.st.map_entries(rmap, None, None)
    return SymmetricComplex(CG, stG, poincare=False)


def circle_comparison(rep, induced):
    """1 (x) f_-: the circle mapped into the induced zero surgery."""
    T = rep.triple
    f = T.triad.f_minus
    N = rep.surgery.complex.C
    ring = N.ring
    mats = {}
    for r in f.mats:
        M = f.mat(r)
        pad = N.rank(r) - M.shape[1]
        mats[r] = mx.block([[M, None]], [M.shape[0]],
                           [M.shape[1], pad], ring)
    at_ring = ChainMap(f.source, N, mats)
    rmap = rep.ring_map()
    circle = change_coefficients(f.source, rmap)
    return ChainMap(circle, induced.C,
                    {r: M.map_entries(rmap) for r, M in at_ring.mats.items()})


class ContractibilityCertificate:
    """Record that the skew-field contractibility criterion was met."""

    def __init__(self, t_image, cone_homology):
        self.t_image = t_image
        self.cone_homology = cone_homology
        self.ok = True

    def __repr__(self):
        return "ContractibilityCertificate(t=%r)" % (self.t_image,)


def certify_contractible_over_K(induced, comparison, t_image):
    """Certify that the induced complex dies over the Ore skew field.

    Criterion: the meridian image is a nontrivial group element (so t - 1
    becomes invertible) and the comparison cone is rationally acyclic in
    degrees 0 and 1; duality and universal coefficients close 2 and 3.
    """
    if t_image.is_identity():
        raise CertificateUnavailable("meridian image is the identity")
    compQ = change_coefficients(comparison, gamma_augment_map())
    cone = mapping_cone(compQ)
    rep = homology(cone)
    for k in (0, 1):
        if rep.entries.get(k, (0, [])) != (0, []):
            raise CertificateUnavailable(
                "H_%d of the rational comparison cone" % (k,))
    return ContractibilityCertificate(t_image, dict(rep.entries))


# -- algebraic (1)-solutions ---------------------------------------------


class OneSolution:
    """Candidate bounding data: j into a 4-complex over the semidirect
    group ring, its 4-dimensional structure, and the claimed metaboliser."""

    def __init__(self, j, Theta, metaboliser):
        self.j = j
        self.Theta = Theta
        self.metaboliser = metaboliser

    def __repr__(self):
        return "OneSolution(V ranks=%r)" % (self.j.target.ranks,)


class SolvabilityCertificate:

    def __init__(self, checks):
        self.checks = dict(checks)
        self.failures = [name for name, ok in self.checks.items() if not ok]
        self.ok = not self.failures

    def __repr__(self):
        return "SolvabilityCertificate(ok=%r, failures=%r)" % (
            self.ok, self.failures)


def _h1_map_coords(jmap, hd_src, hd_dst):
    """Q-coordinate matrix of the induced map on degree-1 homology.

    Over Q[t,t^-1] the rows are t^k g_i for each torsion generator with k
    below the factor degree; over Q they are the homology generators.
    Columns are torsion residue coefficients of the target followed by
    windowed free coordinates."""
    M = jmap.mat(1)
    n_dst = jmap.target.rank(1)
    if hd_src.tag == "QT":
        if hd_src.free_rank:
            raise Undecided("free part in degree-1 homology over Q[t,t^-1]")
        rows_in = []
        for i, f in enumerate(hd_src.factors):
            for k in range(poly_degree(_monic(f))):
                rows_in.append([lp({k: 1}) * lp(x)
                                for x in hd_src.gen_rows[i]])
    else:
        rows_in = [list(row) for row in hd_src.gen_rows]
    images = []
    for row in rows_in:
        cyc = [row[0] * M.rows[0][j] if row else ZERO
               for j in range(n_dst)]
        for i in range(1, len(row)):
            cyc = [c + row[i] * M.rows[i][j] for j, c in enumerate(cyc)]
        images.append(hd_dst.class_of(cyc))
    nt = len(hd_dst.factors)
    if hd_dst.tag == "QT":
        support = set()
        for img in images:
            for c in img[nt:]:
                support.update(lp(c).terms)
        window = sorted(support)
        out = []
        for img in images:
            coords = []
            for j, f in enumerate(hd_dst.factors):
                fm = _monic(f)
                r = reduce_mod(lp(img[j]), fm)
                coords.extend(r.coeff(k) for k in range(poly_degree(fm)))
            for c in img[nt:]:
                coords.extend(lp(c).coeff(e) for e in window)
            out.append(coords)
        return out
    return [[Fraction(c) for c in img] for img in images]


def _in_span(basis, v):
    v = [Fraction(x) for x in v]
    for piv, b in [(next(j for j, x in enumerate(b) if x), b)
                   for b in basis]:
        if v[piv]:
            c = v[piv]
            v = [a - c * x for a, x in zip(v, b)]
    return not any(v)


def validate_algebraic_one_solution(T, p, sol):
    """Check a candidate bounding 4-complex for the induced zero surgery.

    Conditions: the pair validates symmetrically over the semidirect group
    ring; j induces an isomorphism on rational degree-1 homology; and the
    kernel of j on Q[Z]-level degree-1 homology equals the supplied
    metaboliser span, which must contain the image of p."""
    rep = rho_from_p(T, p)
    induced = induce_over_gamma(rep.surgery, rep)
    checks = {}
    pair = SymmetricPair(sol.j, sol.Theta, induced.st)
    checks["pair"] = validate_symmetric(pair).ok
    # rational level: isomorphism on degree-1 homology
    jQ = change_coefficients(sol.j, gamma_augment_map())
    hdN_q = homology_data(jQ.source, 1)
    hdV_q = homology_data(jQ.target, 1)
    dims = (hdN_q.free_rank, hdV_q.free_rank)
    if dims[0] == dims[1]:
        mat = _h1_map_coords(jQ, hdN_q, hdV_q)
        rank = len(_q_rowspace(mat)) if mat else 0
        checks["h1-iso"] = rank == dims[0]
    else:
        checks["h1-iso"] = False
    # Q[Z] level: kernel of j equals the metaboliser
    jZ = change_coefficients(sol.j, gamma_to_laurent_map())
    hdN_z = homology_data(jZ.source, 1)
    hdV_z = homology_data(jZ.target, 1)
    mat = _h1_map_coords(jZ, hdN_z, hdV_z)
    kernel = _q_rowspace(_q_nullspace(mat)) if mat else []
    span = _q_rowspace(sol.metaboliser.span()) if \
        sol.metaboliser.generators else []
    checks["kernel-matches"] = kernel == span
    pc = _elem_coords(rep.form.module, rep.xi_p)
    checks["p-in-kernel"] = (not any(pc)) or _in_span(kernel, pc)
    return SolvabilityCertificate(checks)


def unknot_one_solution():
    """The product bounding data for the unknot: the induced zero surgery
    collapses onto a circle, algebraically a solid-torus filling."""
    rep = rho_from_p(unknot_triple(), unknot_triple().H.zero())
    induced = induce_over_gamma(rep.surgery, rep)
    ring = rep.ring
    t_image = rep.rho(rep.triple.g1())
    gt = ring.monomial(t_image)
    V = ChainComplex(ring, {0: 1, 1: 1},
                     {1: Matrix([[gt - ring.one]], (1, 1))})
    N = induced.C
    # j: collapse onto the circle, found by exact solving at the abelian
    # level and lifted through t |-> the meridian image
    j1, j0 = _collapse_columns(rep)
    lift = _laurent_lift(ring, t_image)
    mats = {0: Matrix([[lift(x)] for x in j0], (N.rank(0), 1)),
            1: Matrix([[lift(x)] for x in j1], (N.rank(1), 1))}
    j = ChainMap(N, V, mats)
    metab = Metaboliser(rep.form.module, [])
    return OneSolution(j, zero_structure(4), metab)


def _laurent_lift(ring, t_image):
    def lift(x):
        x = lp(x)
        out = ring.zero
        for e, c in x.terms.items():
            g = GAMMA_IDENTITY
            step = t_image if e >= 0 else t_image.inverse()
            for _ in range(abs(e)):
                g = g * step
            out = out + GammaRingElement(ring, {g: c})
        return out
    return lift


def _collapse_columns(rep):
    """Columns (j_1, j_0) of the abelian-level collapse onto the circle.

    j_1 must span the kernel of d_2 acting on columns with d_1 j_0 =
    (t - 1) j_1 solvable, and the induced map must generate rational H_1;
    candidates are enumerated from the kernel."""
    NQ = change_coefficients(rep.surgery.complex.C,
                             augment_map(rep.surgery.ring, "QZ"))
    kernel = _qt_right_kernel(NQ.boundary(2))
    h1 = homology_data(change_coefficients(
        rep.surgery.complex.C, augment_map(rep.surgery.ring, "Q")), 1)
    for v in kernel:
        if all(lp(x).is_zero() for x in v):
            continue
        target = [lp(x) * (lp({1: 1}) - ONE) for x in v]
        w = _qt_column_solve(NQ.boundary(1), target)
        if w is None:
            continue
        if _pairs_rational_h1(h1, v):
            return [lp(x) for x in v], [lp(x) for x in w]
    raise ValueError("no collapse onto the circle exists")


def _pairs_rational_h1(h1, v):
    """Does the functional <., v> at t = 1 hit the rational H_1?"""
    for row in h1.gen_rows:
        s = Fraction(0)
        for a, b in zip(row, v):
            s += Fraction(a) * sum(lp(b).terms.values(), Fraction(0))
        if s:
            return True
    return not h1.gen_rows


def _qt_right_kernel(M):
    if not (M.shape[0] and M.shape[1]):
        return []
    return [list(v) for v in left_kernel(M.transpose().rows, "QT")]


def _qt_column_solve(M, target):
    if not M.shape[0]:
        return [] if all(lp(x).is_zero() for x in target) else None
    return solve_exact(M.transpose().rows, [lp(x) for x in target], "QT")


# -- the per-p family ----------------------------------------------------


class CotFamilyEntry:

    def __init__(self, p, rep, induced, certificate, flags):
        self.p = p
        self.rep = rep
        self.induced = induced
        self.certificate = certificate
        self.flags = dict(flags)

    @property
    def certified(self):
        return not isinstance(self.certificate, str)

    def __repr__(self):
        return "CotFamilyEntry(flags=%r)" % (self.flags,)


class CotFamily:
    """The map p |-> (induced complex, xi_p) over representative p-values,
    with contractibility certificates and metaboliser-membership flags."""

    def __init__(self, triple, form, entries, metaboliser, metabolic_note):
        self.triple = triple
        self.form = form
        self.entries = entries
        self.metaboliser = metaboliser
        self.metabolic_note = metabolic_note

    def to_report(self):
        return {
            "module-factors": [repr(f) for f in self.form.module.factors],
            "metabolic": self.metabolic_note,
            "entries": [
                {"p": repr(e.p.residues),
                 "certified": e.certified,
                 "certificate": None if e.certified else e.certificate,
                 "flags": dict(e.flags)} for e in self.entries],
        }

    def __repr__(self):
        return "CotFamily(%d entries)" % (len(self.entries),)


def assemble_cot_family(T, scalar_bound=1):
    T = normalize_meridian(T)
    H = T.H
    reps_p = [H.zero()]
    for i in range(H.rank()):
        for c in range(1, scalar_bound + 1):
            reps_p.append(lp(c) * H.gen(i))
    metaboliser = None
    metabolic_note = "undecided"
    base = rho_from_p(T, H.zero())
    try:
        decision = is_metabolic(base.form)
        if decision:
            metaboliser = decision.metaboliser
            metabolic_note = "metabolic"
        else:
            metabolic_note = "no metaboliser exists"
    except Undecided as e:
        metabolic_note = "undecided: %s" % (e,)
    span = _q_rowspace(metaboliser.span()) if metaboliser and \
        metaboliser.generators else []
    entries = []
    for p in reps_p:
        rep = rho_from_p(T, p)
        induced = induce_over_gamma(rep.surgery, rep)
        comparison = circle_comparison(rep, induced)
        t_image = rep.rho(rep.triple.g1())
        try:
            cert = certify_contractible_over_K(induced, comparison, t_image)
        except CertificateUnavailable as e:
            cert = str(e)
        flags = {}
        if metaboliser is not None:
            pc = _elem_coords(rep.form.module, rep.xi_p)
            flags["in-metaboliser"] = (not any(pc)) or \
                (bool(span) and _in_span(span, pc))
        if metabolic_note == "no metaboliser exists":
            flags["first-order-obstruction"] = True
        if p.is_zero():
            flags["meridian-subring"] = _meridian_subring_only(induced)
        entries.append(CotFamilyEntry(p, rep, induced, cert, flags))
    return CotFamily(T, base.form, entries, metaboliser, metabolic_note)


def _meridian_subring_only(induced):
    for M in induced.C.d.values():
        for row in M.rows:
            for e in row:
                if any(not g.a.is_zero() for g in e.support):
                    return False
    return True
