"""Connectedness tests, surgery data built from degree-2 cocycles with the
cup-product vanishing condition, and the explicit effect of algebraic
surgery on a connected symmetric complex."""

from . import matrix as mx
from .matrix import Matrix
from .chains import (ChainComplex, ChainMap, dual_complex, mapping_cone,
                     change_coefficients, homology_data)
from .symmetric import (SymmetricComplex, SymmetricPair, SymmetricStructure,
                        zero_structure, T_eps, phi0_chain_map,
                        pair_evaluation_map, coefficient_levels, _signed)


class NotConnected(Exception):
    pass


class NotCocycle(Exception):
    def __init__(self, index):
        super().__init__("input %d is not a degree-2 cocycle" % (index,))
        self.index = index


class CupProductNonzero(Exception):
    def __init__(self, i, j, value):
        super().__init__("cup product of cocycles %d, %d is %r" % (i, j, value))
        self.i = i
        self.j = j
        self.value = value


class ConnectednessReport:
    """H_0 of the relevant cone at each supported coefficient level."""

    def __init__(self, entries):
        self.entries = entries

    @property
    def connected(self):
        return all(free == 0 and not factors
                   for free, factors in self.entries.values())

    def __bool__(self):
        return self.connected

    def __repr__(self):
        return "ConnectednessReport(%r)" % (self.entries,)


def is_connected(obj):
    """H_0 of cone(phi_0) (complex) or cone((dphi_0, phi_0 f*)) (pair)."""
    if isinstance(obj, SymmetricComplex):
        cone = mapping_cone(phi0_chain_map(obj))
    elif isinstance(obj, SymmetricPair):
        cone = mapping_cone(pair_evaluation_map(obj))
    else:
        raise TypeError("cannot test connectedness of %r" % (type(obj),))
    entries = {}
    for label, rmap in coefficient_levels(cone.ring):
        CC = cone if rmap is None else change_coefficients(cone, rmap)
        entries[label] = homology_data(CC, 0).report_entry()
    return ConnectednessReport(entries)


class SurgeryData:
    """Connected symmetric pair (f: C -> D, (delta_phi, phi)) whose boundary
    structure is the structure of the ambient complex."""

    def __init__(self, X, f, delta_phi=None):
        self.X = X
        self.f = f
        if f.source != X.C:
            raise ValueError("data must be a pair over the ambient complex")
        if delta_phi is None:
            delta_phi = zero_structure(X.n + 1, X.st.epsilon)
        if delta_phi.n != X.n + 1:
            raise ValueError("data structure must have dimension n+1")
        self.delta_phi = delta_phi

    @property
    def pair(self):
        return SymmetricPair(self.f, self.delta_phi, self.X.st)

    def __repr__(self):
        return "SurgeryData(target_ranks=%r)" % (self.f.target.ranks,)


def surgery_data_from_cocycles(X, cocycles):
    """Data concentrated in degree 2 for a 4-dimensional complex, from
    cocycle row vectors l_i on C_2 with vanishing cup-product matrix."""
    C = X.C
    ring = C.ring
    if X.n != 4:
        raise ValueError("cocycle data is only offered in dimension 4")
    k = len(cocycles)
    B = ChainComplex(ring, {2: k}, {})
    if k == 0:
        return SurgeryData(X, ChainMap(C, B, {}))
    L = Matrix([list(l) for l in cocycles], (k, C.rank(2)))
    d3_star = C.boundary(3).star(ring)
    for i in range(k):
        if not (Matrix([L.row(i)]) * d3_star).is_zero(ring):
            raise NotCocycle(i)
    cup = L * X.phi(0, 2) * L.star(ring)
    for i in range(k):
        for j in range(k):
            if not ring.is_zero(cup[i][j]):
                raise CupProductNonzero(i, j, cup[i][j])
    f = ChainMap(C, B, {2: L.star(ring)})
    return SurgeryData(X, f)


def algebraic_surgery(X, data):
    """Effect of algebraic surgery: C'_r = C_r (+) D_{r+1} (+) D^{n-r+1}
    with the displayed boundary and structure matrices."""
    rep = is_connected(X)
    if not rep.connected:
        raise NotConnected(rep)
    C = X.C
    ring = C.ring
    n = X.n
    f = data.f
    D = f.target
    dphi = data.delta_phi
    Dd = dual_complex(D, n + 1)      # third band: (D^{n+1-*})_r = D^{n-r+1}

    def dual_rank(r):
        return D.rank(n - r + 1)

    degrees = set(C.ranks) | set(r - 1 for r in D.ranks) \
        | set(n - k + 1 for k in D.ranks)
    ranks = {r: C.rank(r) + D.rank(r + 1) + dual_rank(r) for r in degrees}
    boundaries = {}
    for r in degrees:
        glue_f = _signed(f.mat(r), r)
        glue_phi = f.mat(n - r + 1).star(ring) * X.st.mat(0, r - 1, C)
        glue_phi = _signed(glue_phi, n + 1)
        glue_dphi = _signed(dphi.mat(0, r, D), r)
        boundaries[r] = mx.block(
            [[C.boundary(r), glue_f, None],
             [None, D.boundary(r + 1), None],
             [glue_phi, glue_dphi, Dd.boundary(r)]],
            [C.rank(r), D.rank(r + 1), dual_rank(r)],
            [C.rank(r - 1), D.rank(r), dual_rank(r - 1)], ring)
    Cp = ChainComplex(ring, ranks, boundaries)

    Tphi = T_eps(X.st, C)
    Tdphi = T_eps(dphi, D)
    eps = X.st.epsilon
    phis = {}
    top_s = max(X.st.max_s(), dphi.max_s(), 1)
    for s in range(top_s + 1):
        lvl = {}
        for r in degrees | set(x - 1 for x in degrees):
            row_dims = [C.rank(n - r + s), D.rank(n - r + s + 1),
                        D.rank(r - s + 1)]
            col_dims = [C.rank(r), D.rank(r + 1), dual_rank(r)]
            if not sum(row_dims) or not sum(col_dims):
                continue
            b_cf = _signed(Tphi.mat(s + 1, r + 1, C) * f.mat(r + 1), n - r)
            b_dd = _signed(Tdphi.mat(s + 1, r + 1, D), n - r)
            if s == 0:
                ident = _signed(mx.identity(D.rank(r + 1), ring),
                                r * (n - r) + (0 if eps == 1 else 1)) \
                    if row_dims[2] == col_dims[1] else None
                dual_ident = mx.identity(dual_rank(r), ring) \
                    if row_dims[1] == col_dims[2] else None
            else:
                ident = None
                dual_ident = None
            M = mx.block(
                [[X.st.mat(s, r, C), b_cf, None],
                 [None, b_dd, dual_ident],
                 [None, ident, None]],
                row_dims, col_dims, ring)
            if not M.is_zero(ring):
                lvl[r] = M
        if lvl:
            phis[s] = lvl
    return SymmetricComplex(Cp, SymmetricStructure(n, phis, eps))
