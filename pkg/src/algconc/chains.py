"""Finitely generated free chain complexes, chain maps, homotopies, duals,
cones, coefficient change, and homology over the PID coefficient levels.

Everything is in the row convention of the matrix module: d_r is a
ranks[r] x ranks[r-1] matrix, a chain is a row vector, and its boundary
is chain * d_r.
"""

from . import matrix as mx
from .matrix import Matrix, ScalarRing
from .metabelian import GroupRing, UnsupportedRing
from .smith import snf, domain, _matmul
from . import smith


class NotACycle(Exception):
    pass


class ValidationReport:
    """Outcome of a structural validation; falsy when something failed."""

    def __init__(self, ok, failures=None):
        self.ok = bool(ok)
        self.failures = failures or []

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "ValidationReport(ok)"
        return "ValidationReport(failures=%r)" % (self.failures,)


class ChainComplex:
    """Free chain complex with explicit degree window."""

    def __init__(self, ring, ranks, boundaries):
        """ranks: dict degree -> rank; boundaries: dict degree -> Matrix d_r."""
        self.ring = ring
        self.ranks = {r: int(k) for r, k in ranks.items() if k}
        self.d = {}
        for r, M in boundaries.items():
            want = (self.rank(r), self.rank(r - 1))
            if M.shape != want:
                raise ValueError("d_%d has shape %r, expected %r"
                                 % (r, M.shape, want))
            if want[0] and want[1]:
                self.d[r] = M

    def rank(self, r):
        return self.ranks.get(r, 0)

    def degrees(self):
        return sorted(self.ranks)

    def low(self):
        return min(self.ranks) if self.ranks else 0

    def high(self):
        return max(self.ranks) if self.ranks else 0

    def boundary(self, r):
        if r in self.d:
            return self.d[r]
        return mx.zero(self.rank(r), self.rank(r - 1), self.ring)

    def validate(self):
        failures = []
        for r in list(self.ranks) + [x + 1 for x in self.ranks]:
            prod = self.boundary(r + 1) * self.boundary(r)
            if not prod.is_zero(self.ring):
                failures.append(("d2", r))
        return ValidationReport(not failures, failures)

    def euler_characteristic(self):
        return sum((-1) ** r * k for r, k in self.ranks.items())

    def total_rank(self):
        return sum(self.ranks.values())

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if self.ring != other.ring or self.ranks != other.ranks:
            return False
        return all(self.boundary(r) == other.boundary(r)
                   for r in set(self.d) | set(other.d))

    def __repr__(self):
        return "ChainComplex(ranks=%r)" % (self.ranks,)


class ChainMap:
    def __init__(self, source, target, mats):
        self.source = source
        self.target = target
        self.mats = {}
        for r, M in mats.items():
            want = (source.rank(r), target.rank(r))
            if M.shape != want:
                raise ValueError("f_%d has shape %r, expected %r"
                                 % (r, M.shape, want))
            if want[0] and want[1]:
                self.mats[r] = M

    def mat(self, r):
        if r in self.mats:
            return self.mats[r]
        return mx.zero(self.source.rank(r), self.target.rank(r),
                       self.source.ring)

    def validate(self):
        failures = []
        degrees = set(self.source.ranks) | set(self.target.ranks)
        for r in degrees:
            lhs = self.mat(r) * self.target.boundary(r)
            rhs = self.source.boundary(r) * self.mat(r - 1)
            if not (lhs - rhs).is_zero(self.source.ring):
                failures.append(("square", r))
        return ValidationReport(not failures, failures)

    def compose(self, other):
        """self: A -> B followed by other: B -> C."""
        if other.source is not self.target and other.source != self.target:
            raise ValueError("composition mismatch")
        degrees = set(self.mats) | set(other.mats)
        return ChainMap(self.source, other.target,
                        {r: self.mat(r) * other.mat(r) for r in degrees})

    def __neg__(self):
        return ChainMap(self.source, self.target,
                        {r: -M for r, M in self.mats.items()})

    def __add__(self, other):
        if self.source != other.source or self.target != other.target:
            raise ValueError("chain map sum mismatch")
        degrees = set(self.mats) | set(other.mats)
        return ChainMap(self.source, self.target,
                        {r: self.mat(r) + other.mat(r) for r in degrees})

    def __sub__(self, other):
        return self + (-other)

    @staticmethod
    def identity(C):
        return ChainMap(C, C, {r: mx.identity(C.rank(r), C.ring)
                               for r in C.ranks})

    @staticmethod
    def zero(source, target):
        return ChainMap(source, target, {})

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return all(self.mat(r) == other.mat(r)
                   for r in set(self.mats) | set(other.mats))


class ChainHomotopy:
    """k with d k + k d = f - g (row convention: k_r: C_r -> D_{r+1})."""

    def __init__(self, f, g, ks):
        self.f = f
        self.g = g
        self.ks = {}
        for r, M in ks.items():
            want = (f.source.rank(r), f.target.rank(r + 1))
            if M.shape != want:
                raise ValueError("k_%d has shape %r, expected %r"
                                 % (r, M.shape, want))
            if want[0] and want[1]:
                self.ks[r] = M

    def k(self, r):
        if r in self.ks:
            return self.ks[r]
        return mx.zero(self.f.source.rank(r), self.f.target.rank(r + 1),
                       self.f.source.ring)

    def validate(self):
        failures = []
        C = self.f.source
        D = self.f.target
        for r in set(C.ranks) | set(D.ranks):
            lhs = self.k(r) * D.boundary(r + 1) + C.boundary(r) * self.k(r - 1)
            rhs = self.f.mat(r) - self.g.mat(r)
            if not (lhs - rhs).is_zero(C.ring):
                failures.append(("homotopy", r))
        return ValidationReport(not failures, failures)


def validate(obj):
    """Validate a complex, chain map, or homotopy; structured report."""
    return obj.validate()


def dual_complex(C, n):
    """(C^{n-*})_r = dual of C_{n-r}; d_r = (-1)^r star(d_{C,n-r+1})."""
    ranks = {n - r: k for r, k in C.ranks.items()}
    boundaries = {}
    for r in list(ranks):
        M = C.boundary(n - r + 1)  # C_{n-r+1} -> C_{n-r}
        if M.shape[0] and M.shape[1]:
            S = M.star(C.ring)     # dual: C^{n-r} -> C^{n-r+1}
            boundaries[r] = S if r % 2 == 0 else -S
    return ChainComplex(C.ring, ranks, boundaries)


def dual_map(f, n):
    """f*: D^{n-*} -> C^{n-*} of f: C -> D."""
    Cd = dual_complex(f.source, n)
    Dd = dual_complex(f.target, n)
    mats = {n - r: f.mat(r).star(f.source.ring) for r in f.mats}
    return ChainMap(Dd, Cd, mats)


def mapping_cone(f):
    """cone(f: C -> D)_r = D_r + C_{r-1} with the glue sign (-1)^{r-1}."""
    C, D = f.source, f.target
    ring = C.ring
    degrees = set()
    for r in D.ranks:
        degrees.add(r)
    for r in C.ranks:
        degrees.add(r + 1)
    ranks = {r: D.rank(r) + C.rank(r - 1) for r in degrees}
    boundaries = {}
    for r in degrees:
        glue = f.mat(r - 1)
        if (r - 1) % 2 == 1:
            glue = -glue
        boundaries[r] = mx.block(
            [[D.boundary(r), None],
             [glue, C.boundary(r - 1)]],
            [D.rank(r), C.rank(r - 1)],
            [D.rank(r - 1), C.rank(r - 2)], ring)
    return ChainComplex(ring, ranks, boundaries)


def cone_inclusion(f):
    """D -> cone(f)."""
    cone = mapping_cone(f)
    D = f.target
    mats = {}
    for r in D.ranks:
        mats[r] = mx.block([[mx.identity(D.rank(r), D.ring), None]],
                           [D.rank(r)], [D.rank(r), f.source.rank(r - 1)],
                           D.ring)
    return ChainMap(D, cone, mats)


def direct_sum_complexes(Cs):
    ring = Cs[0].ring
    degrees = set()
    for C in Cs:
        degrees.update(C.ranks)
    ranks = {r: sum(C.rank(r) for C in Cs) for r in degrees}
    boundaries = {}
    for r in degrees:
        boundaries[r] = mx.block(
            [[C.boundary(r) if i == j else None for j, _ in enumerate(Cs)]
             for i, C in enumerate(Cs)],
            [C.rank(r) for C in Cs], [C.rank(r - 1) for C in Cs], ring)
    return ChainComplex(ring, ranks, boundaries)


def direct_sum_maps(fs, source=None, target=None):
    """Blockwise-diagonal sum of chain maps."""
    if source is None:
        source = direct_sum_complexes([f.source for f in fs])
    if target is None:
        target = direct_sum_complexes([f.target for f in fs])
    degrees = set()
    for f in fs:
        degrees.update(set(f.source.ranks) | set(f.target.ranks))
    mats = {}
    for r in degrees:
        mats[r] = mx.block(
            [[f.mat(r) if i == j else None for j, _ in enumerate(fs)]
             for i, f in enumerate(fs)],
            [f.source.rank(r) for f in fs], [f.target.rank(r) for f in fs],
            source.ring)
    return ChainMap(source, target, mats)


def change_coefficients(C, ring_map):
    """Apply a ring map entrywise to a complex or a chain map."""
    if isinstance(C, ChainMap):
        src = change_coefficients(C.source, ring_map)
        tgt = change_coefficients(C.target, ring_map)
        return ChainMap(src, tgt,
                        {r: M.map_entries(ring_map) for r, M in C.mats.items()})
    return ChainComplex(ring_map.target, dict(C.ranks),
                        {r: M.map_entries(ring_map) for r, M in C.d.items()})


# -- homology ------------------------------------------------------------


def _snf_tag(ring):
    if isinstance(ring, ScalarRing):
        if ring.tag in ("Z", "Q", "QT"):
            return ring.tag
        raise UnsupportedRing("homology over %r is not offered" % (ring.tag,))
    raise UnsupportedRing("homology over group rings is not offered")


class HomologyData:
    """Homology at one degree, with explicit generators and coordinates."""

    def __init__(self, C, r):
        self.C = C
        self.r = r
        self.tag = _snf_tag(C.ring)
        dom = domain(self.tag)
        n_r = C.rank(r)
        self.n_r = n_r
        A = C.boundary(r).rows           # n_r x rank(r-1)
        B = C.boundary(r + 1).rows       # rank(r+1) x n_r
        self.res_cycles = snf([[dom.check(x) for x in row] for row in A], self.tag) \
            if n_r else None
        if n_r == 0:
            self.kernel_rank = 0
            self.factors = []
            self.free_rank = 0
            self.res_rel = None
            self.gen_rows = []
            self.gen_factors = []
            return
        rank_d = self.res_cycles.rank
        k = n_r - rank_d
        self.kernel_rank = k
        Uinv = self.res_cycles.Uinv
        rel = []
        for row in B:
            y = _matmul([[dom.check(x) for x in row]], Uinv, dom)[0]
            rel.append(y[rank_d:])
        if not rel:
            rel = []
        self.res_rel = snf([r_[:] for r_ in rel], self.tag) if rel and k else None
        K = [self.res_cycles.U[rank_d + i] for i in range(k)]
        if self.res_rel is not None:
            # new generator basis K' = Vinv * K
            Kp = _matmul(self.res_rel.Vinv, K, dom) if k else []
            rel_rank = self.res_rel.rank
            rel_factors = self.res_rel.factors
        else:
            Kp = K
            rel_rank = 0
            rel_factors = []
        gens = []
        gen_factors = []
        factors = []
        for i in range(k):
            if i < rel_rank:
                f = rel_factors[i]
                if self._is_unit(f, dom):
                    continue
                factors.append(f)
                gens.append(Kp[i])
                gen_factors.append(f)
            else:
                gens.append(Kp[i])
                gen_factors.append(None)
        self.factors = factors
        self.free_rank = k - rel_rank
        self.gen_rows = gens
        self.gen_factors = gen_factors

    @staticmethod
    def _is_unit(f, dom):
        u, canon = dom.unit_normalize(f)
        return canon == dom.one

    def is_trivial(self):
        return self.free_rank == 0 and not self.factors

    def generators(self):
        """Rows in C_r coordinates; torsion generators first."""
        return [row[:] for row in self.gen_rows]

    def class_of(self, cycle):
        """Coordinates of a cycle's homology class w.r.t. generators().

        Torsion coordinates are reduced modulo the invariant factor.
        Raises NotACycle when the input is not a cycle.
        """
        dom = domain(self.tag)
        cycle = [dom.check(x) for x in cycle]
        if len(cycle) != self.n_r:
            raise ValueError("wrong length")
        bd = _matmul([cycle], self.C.boundary(self.r).rows, dom)[0] \
            if self.C.rank(self.r - 1) else []
        if any(not dom.is_zero(x) for x in bd):
            raise NotACycle("chain in degree %d is not a cycle" % (self.r,))
        if self.n_r == 0:
            return []
        rank_d = self.res_cycles.rank
        y = _matmul([cycle], self.res_cycles.Uinv, dom)[0]
        assert all(dom.is_zero(y[i]) for i in range(rank_d))
        z = y[rank_d:]
        if self.res_rel is not None:
            z = _matmul([z], self.res_rel.V, dom)[0]
        coords = []
        i_full = 0
        rel_rank = self.res_rel.rank if self.res_rel is not None else 0
        for i in range(self.kernel_rank):
            if i < rel_rank:
                f = (self.res_rel.factors[i])
                if self._is_unit(f, dom):
                    continue
                _, rem = dom.divmod_(z[i], f)
                coords.append(rem)
            else:
                coords.append(z[i])
        return coords

    def is_zero_class(self, cycle):
        dom = domain(self.tag)
        return all(dom.is_zero(c) for c in self.class_of(cycle))

    def report_entry(self):
        return (self.free_rank, list(self.factors))


class HomologyReport:
    """Free rank and invariant factors per degree."""

    def __init__(self, entries):
        self.entries = {r: e for r, e in entries.items()
                        if e[0] or e[1]}

    def free_rank(self, r):
        return self.entries.get(r, (0, []))[0]

    def factors(self, r):
        return self.entries.get(r, (0, []))[1]

    def is_acyclic(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, HomologyReport):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return "HomologyReport(%r)" % (self.entries,)


def homology_data(C, r):
    return HomologyData(C, r)


def homology(C):
    """Homology report over Z, Q or Q[t,t^-1]."""
    _snf_tag(C.ring)
    degrees = set(C.ranks)
    return HomologyReport({r: HomologyData(C, r).report_entry()
                           for r in degrees})


def is_homologous(C, r, x, y):
    """Whether cycles x, y in degree r agree in homology over the PID ring;
    returns (True, witness) or (False, None)."""
    tag = _snf_tag(C.ring)
    dom = domain(tag)
    x = [dom.check(v) for v in x]
    y = [dom.check(v) for v in y]
    for cyc in (x, y):
        bd = _matmul([cyc], C.boundary(r).rows, dom)[0] if C.rank(r - 1) else []
        if any(not dom.is_zero(v) for v in bd):
            raise NotACycle("input to is_homologous is not a cycle")
    diff = [a - b for a, b in zip(x, y)]
    if C.rank(r + 1) == 0:
        if all(dom.is_zero(v) for v in diff):
            return True, [dom.zero] * 0
        return False, None
    w = smith.solve_exact(C.boundary(r + 1).rows, diff, tag)
    if w is None:
        return False, None
    return True, w
