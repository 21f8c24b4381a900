"""Symmetric structures on chain complexes, symmetric complexes, pairs and
triads, validation of the structure relations and Poincare certification,
and the four classical constructions: algebraic Thom complex, boundary,
Poincare thickening, and union, plus the product cobordism of a structure-
preserving equivalence.

Conventions (fixed package-wide):
  phi_s^{(r)}: C^{n-r+s} -> C_r, stored as a (ranks[n-r+s] x ranks[r])
  row-convention matrix.
  (T_eps phi_s)^{(r)} = eps * (-1)^{r(n-r+s)} * star(phi_s^{(n-r+s)}).
  Structure relation, for all s >= 0 and all r (phi_{-1} = 0):
    phi_s^{(r+1)} d_{r+1} + (-1)^r star(d_{n-r+s}) phi_s^{(r)}
      + (-1)^{n+s-1} (phi_{s-1}^{(r)} + (-1)^s (T_eps phi_{s-1})^{(r)}) = 0.
"""

from . import matrix as mx
from .matrix import Matrix, ScalarRing
from .metabelian import GroupRing, augment_map, rationalize_map
from .chains import (ChainComplex, ChainMap, ChainHomotopy, ValidationReport,
                     dual_complex, mapping_cone, change_coefficients,
                     homology, direct_sum_complexes)


def _sign(k):
    return 1 if k % 2 == 0 else -1


def _signed(M, k):
    return M if k % 2 == 0 else -M


class SymmetricStructure:
    """phis: dict s -> dict r -> Matrix for phi_s^{(r)}."""

    def __init__(self, n, phis, epsilon=1):
        if epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        self.n = n
        self.epsilon = epsilon
        self.phis = {s: {r: M for r, M in level.items()
                         if M.shape[0] and M.shape[1]}
                     for s, level in phis.items()}
        self.phis = {s: level for s, level in self.phis.items() if level}

    def max_s(self):
        return max(self.phis) if self.phis else 0

    def mat(self, s, r, C):
        level = self.phis.get(s)
        if level is not None and r in level:
            M = level[r]
            want = (C.rank(self.n - r + s), C.rank(r))
            if M.shape != want:
                raise ValueError("phi_%d^(%d) has shape %r, expected %r"
                                 % (s, r, M.shape, want))
            return M
        return mx.zero(C.rank(self.n - r + s), C.rank(r), C.ring)

    def negate(self):
        return SymmetricStructure(
            self.n, {s: {r: -M for r, M in level.items()}
                     for s, level in self.phis.items()}, self.epsilon)

    def map_entries(self, ring_map, C_src, C_dst):
        return SymmetricStructure(
            self.n,
            {s: {r: M.map_entries(ring_map) for r, M in level.items()}
             for s, level in self.phis.items()}, self.epsilon)

    def __eq__(self, other):
        if not isinstance(other, SymmetricStructure):
            return NotImplemented
        return (self.n == other.n and self.epsilon == other.epsilon
                and self.phis == other.phis)

    def __repr__(self):
        return "SymmetricStructure(n=%d, s<=%d)" % (self.n, self.max_s())


def zero_structure(n, epsilon=1):
    return SymmetricStructure(n, {}, epsilon)


def T_eps(st, C):
    """Duality operator on structures of dimension n over C."""
    n = st.n
    out = {}
    for s, level in st.phis.items():
        lvl = {}
        for r0, M in level.items():
            # contributes to (T phi_s)^{(r)} with n-r+s = r0
            r = n - r0 + s
            S = M.star(C.ring)
            if st.epsilon * _sign(r * (n - r + s)) < 0:
                S = -S
            lvl[r] = S
        out[s] = lvl
    return SymmetricStructure(n, out, st.epsilon)


class SymmetricComplex:
    def __init__(self, C, st, poincare=False):
        self.C = C
        self.st = st
        self.poincare = poincare

    @property
    def n(self):
        return self.st.n

    def phi(self, s, r):
        return self.st.mat(s, r, self.C)

    def __repr__(self):
        return "SymmetricComplex(n=%d, ranks=%r)" % (self.n, self.C.ranks)


class SymmetricPair:
    """(f: C -> D, (delta_phi, phi)): delta_phi of dimension n over D,
    phi of dimension n-1 over C."""

    def __init__(self, f, delta_phi, phi, poincare=False):
        self.f = f
        self.delta_phi = delta_phi
        self.phi = phi
        self.poincare = poincare
        if delta_phi.n != phi.n + 1:
            raise ValueError("pair structure dimensions must differ by one")

    @property
    def n(self):
        return self.delta_phi.n

    @property
    def boundary_complex(self):
        return SymmetricComplex(self.f.source, self.phi)

    def __repr__(self):
        return "SymmetricPair(n=%d)" % (self.n,)


class SymmetricTriad:
    """Square of complexes C -> D+-, Y with a homotopy g: f- i- ~ f+ i+.

    i_minus carries (delta_phi_minus, -phi), i_plus carries
    (delta_phi_plus, phi), and Phi is the n+1-dimensional structure on Y.
    """

    def __init__(self, i_minus, i_plus, f_minus, f_plus, g,
                 phi, dphi_minus, dphi_plus, Phi, epsilon=1):
        self.i_minus = i_minus
        self.i_plus = i_plus
        self.f_minus = f_minus
        self.f_plus = f_plus
        self.g = g
        self.phi = phi
        self.dphi_minus = dphi_minus
        self.dphi_plus = dphi_plus
        self.Phi = Phi
        self.epsilon = epsilon

    @property
    def C(self):
        return self.i_minus.source

    @property
    def D_minus(self):
        return self.i_minus.target

    @property
    def D_plus(self):
        return self.i_plus.target

    @property
    def Y(self):
        return self.f_minus.target


# -- validation ----------------------------------------------------------


def relation_defect(C, st, s, r):
    """Left-hand side of the structure relation at (s, r)."""
    n = st.n
    T = T_eps(st, C)
    term1 = st.mat(s, r + 1, C) * C.boundary(r + 1)
    term2 = _signed(C.boundary(n - r + s).star(C.ring) * st.mat(s, r, C), r)
    if s >= 1:
        corr = st.mat(s - 1, r, C) + _signed(T.mat(s - 1, r, C), s)
        term3 = _signed(corr, n + s - 1)
    else:
        term3 = mx.zero(term1.shape[0], term1.shape[1], C.ring)
    return term1 + term2 + term3


def _relation_failures(C, st):
    failures = []
    lo, hi = (C.low(), C.high()) if C.ranks else (0, 0)
    for s in range(0, st.max_s() + 2):
        for r in range(lo - 1, hi + 1):
            if not relation_defect(C, st, s, r).is_zero(C.ring):
                failures.append(("relation", s, r))
    return failures


def phi0_chain_map(X):
    """phi_0 as an honest chain map C^{n-*} -> C."""
    Cd = dual_complex(X.C, X.n)
    return ChainMap(Cd, X.C, {r: X.phi(0, r) for r in X.C.ranks})


def coefficient_levels(ring):
    """(label, ring map) pairs at which homological certification runs."""
    if isinstance(ring, GroupRing):
        return [("Z", augment_map(ring, "Z")),
                ("Q", augment_map(ring, "Q")),
                ("QZ", augment_map(ring, "QZ"))]
    if isinstance(ring, ScalarRing):
        if ring.tag == "Z":
            return [("Z", None), ("Q", rationalize_map(ring))]
        if ring.tag == "Q":
            return [("Q", None)]
        if ring.tag == "ZT":
            return [("QZ", rationalize_map(ring))]
        return [("QZ", None)]
    raise ValueError("unknown coefficient ring %r" % (ring,))


def _acyclic_at_levels(C):
    out = {}
    for label, rmap in coefficient_levels(C.ring):
        CC = C if rmap is None else change_coefficients(C, rmap)
        out[label] = homology(CC).is_acyclic()
    return out


def poincare_certificate(X):
    """Acyclicity of cone(phi_0) at each supported coefficient level."""
    return _acyclic_at_levels(mapping_cone(phi0_chain_map(X)))


def pair_evaluation_map(pair):
    """(delta_phi_0, phi_0 f*): D^{n-*} -> cone(f), the relative class cap."""
    f = pair.f
    n = pair.n
    C, D = f.source, f.target
    Dd = dual_complex(D, n)
    cone = mapping_cone(f)
    mats = {}
    for r in set(cone.ranks):
        left = pair.delta_phi.mat(0, r, D)
        right = _signed(f.mat(n - r).star(C.ring) * pair.phi.mat(0, r - 1, C),
                        n - r)
        mats[r] = mx.block([[left, right]], [D.rank(n - r)],
                           [D.rank(r), C.rank(r - 1)], C.ring)
    return ChainMap(Dd, cone, mats)


def pair_poincare_certificate(pair):
    return _acyclic_at_levels(mapping_cone(pair_evaluation_map(pair)))


class SymmetricReport(ValidationReport):
    def __init__(self, ok, failures=None, poincare=None):
        super().__init__(ok, failures)
        self.poincare = poincare or {}


def validate_symmetric(obj):
    """Exact structure-relation check plus Poincare certification when the
    object is flagged Poincare.  Group-ring acyclicity itself is never
    decided; certification runs at the Z, Q, Q[Z] levels."""
    if isinstance(obj, SymmetricComplex):
        failures = _relation_failures(obj.C, obj.st)
        cert = {}
        if obj.poincare:
            cert = poincare_certificate(obj)
            for label, ok in cert.items():
                if not ok:
                    failures.append(("poincare", label))
        return SymmetricReport(not failures, failures, cert)
    if isinstance(obj, SymmetricPair):
        failures = []
        if not obj.f.validate():
            failures.append(("chain-map",))
        failures += [("boundary",) + t[1:]
                     for t in _relation_failures(obj.f.source, obj.phi)]
        # the relative relations are exactly the closed relations of the
        # Thom structure on cone(f)
        thom = algebraic_thom(obj, _certify=False)
        failures += _relation_failures(thom.C, thom.st)
        ev = pair_evaluation_map(obj)
        if not ev.validate():
            failures.append(("evaluation-map",))
        cert = {}
        if obj.poincare:
            cert = pair_poincare_certificate(obj)
            for label, ok in cert.items():
                if not ok:
                    failures.append(("poincare", label))
        return SymmetricReport(not failures, failures, cert)
    if isinstance(obj, SymmetricTriad):
        return validate_triad(obj)
    raise TypeError("cannot validate %r" % (type(obj),))


def validate_triad(tri):
    failures = []
    pair_minus = SymmetricPair(tri.i_minus, tri.dphi_minus, tri.phi.negate())
    pair_plus = SymmetricPair(tri.i_plus, tri.dphi_plus, tri.phi)
    for tag, pair in (("minus", pair_minus), ("plus", pair_plus)):
        rep = validate_symmetric(pair)
        failures += [(tag,) + f for f in rep.failures]
    hrep = ChainHomotopy(tri.i_minus.compose(tri.f_minus),
                         tri.i_plus.compose(tri.f_plus), tri.g.ks).validate()
    failures += [("homotopy",) + f for f in hrep.failures]
    pair = pair_from_triad(tri)
    rep = validate_symmetric(pair)
    failures += [("glued",) + f for f in rep.failures]
    return SymmetricReport(not failures, failures)


# -- Thom complex --------------------------------------------------------


def _thom_x_exp(n, r, s):
    return r + n * (n + 1) // 2


def _thom_y_exp(n, r, s):
    return r + s + n * (n + 1) // 2


def algebraic_thom(pair, _certify=True):
    """Thom complex of an n-dimensional pair: connected n-dimensional
    symmetric complex on cone(f)."""
    if _certify:
        cert = pair_poincare_certificate(pair)
        if not all(cert.values()):
            raise ValueError("algebraic_thom requires a Poincare pair; "
                             "certificate %r" % (cert,))
    f = pair.f
    n = pair.n
    C, D = f.source, f.target
    ring = C.ring
    cone = mapping_cone(f)
    Tphi = T_eps(pair.phi, C)
    phis = {}
    top_s = max(pair.delta_phi.max_s(), pair.phi.max_s() + 1)
    for s in range(top_s + 1):
        lvl = {}
        for r in set(cone.ranks):
            row_dims = [D.rank(n - r + s), C.rank(n - r + s - 1)]
            col_dims = [D.rank(r), C.rank(r - 1)]
            if not sum(row_dims) or not sum(col_dims):
                continue
            A = pair.delta_phi.mat(s, r, D)
            X = _signed(f.mat(n - r + s).star(ring)
                        * pair.phi.mat(s, r - 1, C), _thom_x_exp(n, r, s))
            Y = _signed(Tphi.mat(s - 1, r - 1, C), _thom_y_exp(n, r, s)) \
                if s >= 1 else None
            M = mx.block([[A, X], [None, Y]], row_dims, col_dims, ring)
            if not M.is_zero(ring):
                lvl[r] = M
        if lvl:
            phis[s] = lvl
    return SymmetricComplex(cone, SymmetricStructure(n, phis,
                                                     pair.phi.epsilon))


# -- boundary and thickening --------------------------------------------


def boundary_construction(X, _check_connected=True):
    """Boundary of a connected n-dimensional symmetric complex: the
    (n-1)-dimensional Poincare complex on the desuspended cone of phi_0."""
    if _check_connected:
        from .surgery import is_connected
        rep = is_connected(X)
        if not rep.connected:
            from .surgery import NotConnected
            raise NotConnected(rep)
    C = X.C
    ring = C.ring
    n = X.n
    Cd = dual_complex(C, n)
    cone = mapping_cone(phi0_chain_map(X))
    # del C_r = cone_{r+1} = C_{r+1} (+) (C^{n-*})_r
    ranks = {r - 1: k for r, k in cone.ranks.items()}
    boundaries = {r - 1: cone.boundary(r) for r in cone.d}
    bC = ChainComplex(ring, ranks, boundaries)
    Tphi = T_eps(X.st, C)
    m = n - 1
    phis = {}
    for s in range(max(X.st.max_s(), 1) + 1):
        lvl = {}
        for r in set(bC.ranks) | set(x - 1 for x in bC.ranks):
            row_dims = [C.rank(n - r + s), C.rank(r + 1 - s)]
            col_dims = [C.rank(r + 1), C.rank(n - r)]
            if not sum(row_dims) or not sum(col_dims):
                continue
            A = _signed(Tphi.mat(s + 1, r + 1, C), n - r + s - 1)
            if s == 0:
                B = mx.identity(C.rank(n - r), ring) \
                    if row_dims[0] == col_dims[1] else None
                Xblk = _signed(mx.identity(C.rank(r + 1), ring),
                               r * (n - r - 1)
                               + (0 if X.st.epsilon == 1 else 1)) \
                    if row_dims[1] == col_dims[0] else None
            else:
                B = None
                Xblk = None
            M = mx.block([[A, B], [Xblk, None]], row_dims, col_dims, ring)
            if not M.is_zero(ring):
                lvl[r] = M
        if lvl:
            phis[s] = lvl
    return SymmetricComplex(bC, SymmetricStructure(m, phis, X.st.epsilon),
                            poincare=True)


def poincare_thickening(X, _check_connected=True):
    """Pair (i_C = (0,1): del C -> C^{n-*}, (0, del phi))."""
    bX = boundary_construction(X, _check_connected=_check_connected)
    C = X.C
    ring = C.ring
    n = X.n
    Cd = dual_complex(C, n)
    mats = {}
    for r in bX.C.ranks:
        mats[r] = mx.block([[None], [mx.identity(C.rank(n - r), ring)]],
                           [C.rank(r + 1), C.rank(n - r)], [C.rank(n - r)],
                           ring)
    i_C = ChainMap(bX.C, Cd, mats)
    return SymmetricPair(i_C, zero_structure(n, X.st.epsilon), bX.st,
                         poincare=True)


# -- union ---------------------------------------------------------------


class BoundaryMismatch(Exception):
    pass


def _union_cd_exp(n, r, s):
    return s + (n + 1) * (n + 2) // 2


def union_pairs(pair_a, pair_b):
    """Glue (f: C -> D, (dphi, phi)) and (f': C -> D', (dphi', -phi)) along
    their common boundary: Y_r = D_r (+) C_{r-1} (+) D'_r."""
    f, fp = pair_a.f, pair_b.f
    C = f.source
    ring = C.ring
    if fp.source != C:
        raise BoundaryMismatch("pairs do not share the boundary complex")
    if pair_b.phi != pair_a.phi.negate():
        raise BoundaryMismatch("boundary structures are not opposite")
    D, Dp = f.target, fp.target
    n = pair_a.n
    degrees = set(D.ranks) | set(Dp.ranks) | set(r + 1 for r in C.ranks)
    ranks = {r: D.rank(r) + C.rank(r - 1) + Dp.rank(r) for r in degrees}
    boundaries = {}
    for r in degrees:
        glue_a = _signed(f.mat(r - 1), r - 1)
        glue_b = _signed(fp.mat(r - 1), r - 1)
        boundaries[r] = mx.block(
            [[D.boundary(r), None, None],
             [glue_a, C.boundary(r - 1), glue_b],
             [None, None, Dp.boundary(r)]],
            [D.rank(r), C.rank(r - 1), Dp.rank(r)],
            [D.rank(r - 1), C.rank(r - 2), Dp.rank(r - 1)], ring)
    Y = ChainComplex(ring, ranks, boundaries)
    Tphi = T_eps(pair_a.phi, C)
    phis = {}
    top_s = max(pair_a.delta_phi.max_s(), pair_b.delta_phi.max_s(),
                pair_a.phi.max_s() + 1)
    for s in range(top_s + 1):
        lvl = {}
        for r in degrees | set(x - 1 for x in degrees):
            row_dims = [D.rank(n - r + s), C.rank(n - r + s - 1),
                        Dp.rank(n - r + s)]
            col_dims = [D.rank(r), C.rank(r - 1), Dp.rank(r)]
            if not sum(row_dims) or not sum(col_dims):
                continue
            # band below the diagonal of the three-band display
            blk_dc = _signed(f.mat(n - r + s).star(ring)
                             * pair_a.phi.mat(s, r - 1, C),
                             _thom_x_exp(n, r, s))
            blk_cc = _signed(Tphi.mat(s - 1, r - 1, C),
                             _thom_y_exp(n, r, s)) if s >= 1 else None
            blk_cd = _signed(pair_a.phi.mat(s, r, C) * fp.mat(r),
                             _union_cd_exp(n, r, s))
            M = mx.block(
                [[pair_a.delta_phi.mat(s, r, D), blk_dc, None],
                 [None, blk_cc, blk_cd],
                 [None, None, pair_b.delta_phi.mat(s, r, Dp)]],
                row_dims, col_dims, ring)
            if not M.is_zero(ring):
                lvl[r] = M
        if lvl:
            phis[s] = lvl
    return SymmetricComplex(Y, SymmetricStructure(n, phis,
                                                  pair_a.phi.epsilon))


# -- product cobordism and triad plumbing -------------------------------


def transport_structure(f, st):
    """f^% phi: the structure (f phi_s f*) on the target of f."""
    C, D = f.source, f.target
    n = st.n
    out = {}
    for s, level in st.phis.items():
        lvl = {}
        for r in set(D.ranks):
            M = f.mat(n - r + s).star(C.ring) * st.mat(s, r, C) * f.mat(r)
            if not M.is_zero(C.ring):
                lvl[r] = M
        if lvl:
            out[s] = lvl
    return SymmetricStructure(n, out, st.epsilon)


def product_cobordism(f, st, st_target):
    """Cobordism ((f,1): C (+) C' -> C', (0, phi (+) -phi')) of a
    structure-preserving equivalence f with f^% phi = phi'."""
    if transport_structure(f, st) != st_target:
        raise ValueError("structure transport certificate failed")
    C, Cp = f.source, f.target
    src = direct_sum_complexes([C, Cp])
    mats = {}
    for r in set(C.ranks) | set(Cp.ranks):
        mats[r] = mx.block([[f.mat(r)], [mx.identity(Cp.rank(r), Cp.ring)]],
                           [C.rank(r), Cp.rank(r)], [Cp.rank(r)], Cp.ring)
    g = ChainMap(src, Cp, mats)
    phi_sum = structure_direct_sum([st, st_target.negate()], [C, Cp], src)
    return SymmetricPair(g, zero_structure(st.n + 1, st.epsilon), phi_sum,
                         poincare=True)


def structure_direct_sum(sts, Cs, S=None):
    """Blockwise-diagonal sum of structures along a direct-sum complex."""
    if S is None:
        S = direct_sum_complexes(Cs)
    n = sts[0].n
    out = {}
    top_s = max(st.max_s() for st in sts)
    for s in range(top_s + 1):
        lvl = {}
        for r in set(S.ranks):
            M = mx.block(
                [[sts[i].mat(s, r, Cs[i]) if i == j else None
                  for j in range(len(Cs))] for i in range(len(Cs))],
                [C.rank(n - r + s) for C in Cs], [C.rank(r) for C in Cs],
                S.ring)
            if not M.is_zero(S.ring):
                lvl[r] = M
        if lvl:
            out[s] = lvl
    return SymmetricStructure(n, out, sts[0].epsilon)


def glued_boundary_complex(tri):
    """E = D_- union_C D_+ as a symmetric complex, from the triad's pairs."""
    pair_minus = SymmetricPair(tri.i_minus, tri.dphi_minus, tri.phi)
    pair_plus = SymmetricPair(tri.i_plus, tri.dphi_plus, tri.phi.negate())
    return union_pairs(pair_minus, pair_plus)


def pair_from_triad(tri):
    """The glued pair e = (f_-, (-1)^{r-1} g, -f_+): E -> Y with structure
    (Phi, union of the boundary structures)."""
    E = glued_boundary_complex(tri)
    Y = tri.f_minus.target
    ring = Y.ring
    D, C, Dp = tri.D_minus, tri.C, tri.D_plus
    mats = {}
    for r in set(E.C.ranks):
        g_blk = _signed(tri.g.k(r - 1), r - 1)
        mats[r] = mx.block(
            [[tri.f_minus.mat(r)], [g_blk], [-tri.f_plus.mat(r)]],
            [D.rank(r), C.rank(r - 1), Dp.rank(r)], [Y.rank(r)], ring)
    e = ChainMap(E.C, Y, mats)
    return SymmetricPair(e, tri.Phi, E.st)
