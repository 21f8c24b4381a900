"""Linking forms on torsion modules over Q[t, t^-1].

A form pairs a rational Alexander module with a Hermitian matrix of
classes in Q(t)/Q[t, t^-1].  Forms arise from Seifert matrices, or at the
chain level from 3-dimensional symmetric Poincare complexes whose degree-1
homology is torsion: the pairing of two cycles is read off from a rational
homotopy inverse of the symmetric structure map.  Witt classes carry a
lazy metabolic decision, with explicit metabolisers found by divisor
enumeration on the square-free class (and the diagonal on doubles).
"""

from fractions import Fraction

import sympy

from . import matrix as mx
from .matrix import Matrix, QT
from .laurent import (lp, LaurentPoly, ZERO, ONE, T, to_ordinary,
                      poly_degree, reduce_mod, laurent_exact_div,
                      RationalFunction, TorsionClass, rf, tc)
from .smith import snf, domain, left_kernel
from .chains import homology_data, change_coefficients, mapping_cone
from .metabelian import AlexanderModule, ModuleElement, augment_map
from .symmetric import SymmetricComplex, phi0_chain_map
from .concordance import ZeroSurgeryComplex, zero_surgery


class NotSeifert(Exception):
    pass


class NoHomotopyInverse(Exception):
    pass


class Undecided(Exception):
    """Metabolic status outside the decidable class."""


# -- rational-function linear algebra -----------------------------------


def _rfm(rows):
    return [[rf(x) for x in row] for row in rows]


def _solve_row(rows, target):
    """One solution of v * M = target over Q(t); None if inconsistent.

    rows: the matrix M as a list of rows; the unknown v has one entry per
    row.  Plain Gaussian elimination on the transposed system.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if len(target) != n:
        raise ValueError("shape mismatch")
    # augmented columns: n equations in m unknowns
    eqs = [[rows[i][j] for i in range(m)] + [target[j]] for j in range(n)]
    piv_cols = []
    row_at = 0
    for col in range(m):
        piv = None
        for i in range(row_at, len(eqs)):
            if not eqs[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        eqs[row_at], eqs[piv] = eqs[piv], eqs[row_at]
        inv = rf(1) / eqs[row_at][col]
        eqs[row_at] = [x * inv for x in eqs[row_at]]
        for i in range(len(eqs)):
            if i != row_at and not eqs[i][col].is_zero():
                c = eqs[i][col]
                eqs[i] = [a - c * b for a, b in zip(eqs[i], eqs[row_at])]
        piv_cols.append(col)
        row_at += 1
    for i in range(row_at, len(eqs)):
        if not eqs[i][m].is_zero():
            return None
    v = [rf(0)] * m
    for i, col in enumerate(piv_cols):
        v[col] = eqs[i][m]
    return v


def _invert_rf(rows):
    """Inverse of a square matrix over Q(t); None if singular."""
    m = len(rows)
    out = []
    for i in range(m):
        e = [rf(1) if j == i else rf(0) for j in range(m)]
        sol = _solve_row(rows, e)
        if sol is None:
            return None
        out.append(sol)
    # out rows solve row_i * M = e_i, i.e. out = M^-1 in row convention
    return out


# -- polynomial helpers --------------------------------------------------


def _ordinary(p):
    q, _ = to_ordinary(lp(p))
    return q


def _monic(p):
    p = _ordinary(p)
    c = p.coeff(poly_degree(p))
    return p * lp(Fraction(1) / c)


def _conj_poly(p):
    """Monic ordinary representative of the involuted polynomial."""
    return _monic(lp(p).involute())


def _to_sympy(p):
    t = sympy.Symbol("t")
    p = _ordinary(p)
    return sum(sympy.Rational(c) * t ** e for e, c in p.terms.items()), t


def _from_sympy(expr, t):
    poly = sympy.Poly(expr, t)
    return lp({e[0]: Fraction(c.p, c.q)
               for e, c in poly.terms()})


def _irreducible_factors(p):
    """(factor, multiplicity) pairs over Q, monic, constant part dropped."""
    expr, t = _to_sympy(p)
    _, pairs = sympy.factor_list(expr, t)
    out = []
    for f, k in pairs:
        q = _monic(_from_sympy(f, t))
        if poly_degree(q) > 0:
            out.append((q, int(k)))
    return out


# -- the forms -----------------------------------------------------------


class BlanchfieldForm:
    """(module, pairing): pairing[i][j] is the class of the linking of the
    i-th and j-th module generators, conjugate-linear in the second slot."""

    def __init__(self, module, pairing):
        if not module.rational:
            raise TypeError("linking forms live over Q[t, t^-1]")
        self.module = module
        n = module.rank()
        if len(pairing) != n or any(len(row) != n for row in pairing):
            raise ValueError("pairing shape does not match the module")
        self.pairing = [[tc(x) for x in row] for row in pairing]

    def evaluate(self, x, y):
        """Linking of two module elements."""
        acc = tc(0)
        for i, xi in enumerate(x.residues):
            if lp(xi).is_zero():
                continue
            for j, yj in enumerate(y.residues):
                if lp(yj).is_zero():
                    continue
                acc = acc + self.pairing[i][j] * lp(xi) * lp(yj).involute()
        return acc

    def is_sesquilinear(self):
        for i, p in enumerate(self.module.factors):
            for j, q in enumerate(self.module.factors):
                if not (self.pairing[i][j] * p).is_zero():
                    return False
                if not (self.pairing[i][j] * lp(q).involute()).is_zero():
                    return False
        return True

    def is_hermitian(self):
        n = self.module.rank()
        return all(self.pairing[i][j] == self.pairing[j][i].involute()
                   for i in range(n) for j in range(n))

    def is_nonsingular(self):
        """The adjoint x -> Bl(x, -) is a bijection onto the conjugate dual,
        checked as a Q-linear map between coordinatized sides."""
        basis = _qbasis(self.module)
        d = len(basis)
        if d == 0:
            return True
        duals = [_conj_poly(p) for p in self.module.factors]
        rows = []
        for (i, k) in basis:
            coords = []
            for j, pbar in enumerate(duals):
                c = self.pairing[i][j] * lp({k: 1})
                coords.extend(_class_coords(c, pbar))
            rows.append(coords)
        return _q_rank(rows) == d

    def validate(self):
        return {"sesquilinear": self.is_sesquilinear(),
                "hermitian": self.is_hermitian(),
                "nonsingular": self.is_nonsingular()}

    def direct_sum(self, other):
        mod = self.module.direct_sum(other.module)
        n, m = self.module.rank(), other.module.rank()
        z = tc(0)
        pairing = []
        for i in range(n):
            pairing.append(list(self.pairing[i]) + [z] * m)
        for i in range(m):
            pairing.append([z] * n + list(other.pairing[i]))
        return BlanchfieldForm(mod, pairing)

    def negate(self):
        return BlanchfieldForm(self.module,
                               [[-x for x in row] for row in self.pairing])

    def __repr__(self):
        return "BlanchfieldForm(%r)" % (self.module,)


def trivial_form():
    return BlanchfieldForm(AlexanderModule([], rational=True), [])


# -- Q-linear coordinates ------------------------------------------------


def _qbasis(module):
    return [(i, k) for i, p in enumerate(module.factors)
            for k in range(poly_degree(_ordinary(p)))]


def _elem_coords(module, x):
    coords = []
    for i, p in enumerate(module.factors):
        d = poly_degree(_ordinary(p))
        r = reduce_mod(lp(x.residues[i]), _ordinary(p))
        coords.extend(r.coeff(k) for k in range(d))
    return coords


def _coords_elem(module, vec):
    residues = []
    at = 0
    for p in module.factors:
        d = poly_degree(_ordinary(p))
        residues.append(lp({k: vec[at + k] for k in range(d)}))
        at += d
    return module.element(residues)


def _class_coords(c, den):
    """Coordinates of a class annihilated by den, as the coefficient vector
    of its numerator against 1/den."""
    q = c.rep * rf(den)
    if not q.is_polynomial():
        raise ValueError("class is not annihilated by %r" % (den,))
    r = reduce_mod(q.num, _ordinary(den))
    return [r.coeff(k) for k in range(poly_degree(_ordinary(den)))]


def _q_rank(rows):
    rows = [[Fraction(x) for x in row] for row in rows if any(row)]
    rank = 0
    cols = len(rows[0]) if rows else 0
    at = 0
    for col in range(cols):
        piv = None
        for i in range(at, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[at], rows[piv] = rows[piv], rows[at]
        inv = Fraction(1) / rows[at][col]
        rows[at] = [x * inv for x in rows[at]]
        for i in range(len(rows)):
            if i != at and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[at])]
        at += 1
        rank += 1
    return rank


def _q_rowspace(rows):
    """Reduced basis of the Q-row space."""
    rows = [[Fraction(x) for x in row] for row in rows]
    basis = []
    for row in rows:
        row = list(row)
        for piv_col, b in basis:
            if row[piv_col]:
                c = row[piv_col]
                row = [a - c * x for a, x in zip(row, b)]
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None:
            continue
        inv = Fraction(1) / row[piv]
        row = [x * inv for x in row]
        basis.append((piv, row))
        basis.sort()
    return [b for _, b in basis]


def _q_nullspace(rows):
    """Basis of {v : v * M = 0} for the Q-matrix M given by rows."""
    m = len(rows)
    if m == 0:
        return []
    res = snf([[Fraction(x) for x in row] for row in rows], "Q")
    return [res.U[i] for i in range(m) if i >= res.rank]


def _span_submodule(module, gens):
    """Q-basis (reduced) of the Z[t,t^-1]-submodule generated by gens."""
    rows = []
    for g in gens:
        x = g
        for _ in range(len(_qbasis(module)) + 1):
            rows.append(_elem_coords(module, x))
            x = T * x
    return _q_rowspace(rows)


def _orthogonal_space(form, span):
    """Q-basis of {x : Bl(x, s) = 0 for all s in the span}."""
    module = form.module
    basis = _qbasis(module)
    delta = ONE
    for p in module.factors:
        delta = delta * _ordinary(p)
    delta = _monic(delta)
    if not span:
        return [[Fraction(1) if j == i else Fraction(0)
                 for j in range(len(basis))] for i in range(len(basis))]
    rows = []
    for (i, k) in basis:
        e = _coords_elem(module, [Fraction(1) if b == (i, k) else Fraction(0)
                                  for b in basis])
        coords = []
        for svec in span:
            s = _coords_elem(module, svec)
            coords.extend(_class_coords(form.evaluate(e, s), delta))
        rows.append(coords)
    return _q_nullspace(rows)


class Metaboliser:
    """Generators of a half-dimensional self-orthogonal submodule."""

    def __init__(self, module, generators):
        self.module = module
        self.generators = list(generators)

    def span(self):
        return _span_submodule(self.module, self.generators)

    def __repr__(self):
        return "Metaboliser(%d generators)" % (len(self.generators),)


def verify_metaboliser(form, metab):
    """P = P-perp, by exact Q-linear computation."""
    if metab.module is not form.module and \
            metab.module.factors != form.module.factors:
        return False
    span = metab.span()
    perp = _q_rowspace(_orthogonal_space(form, span))
    return span == perp


class MetabolicDecision:

    def __init__(self, metabolic, metaboliser=None, certificate=None):
        self.metabolic = metabolic
        self.metaboliser = metaboliser
        self.certificate = certificate

    def __bool__(self):
        return self.metabolic

    def __repr__(self):
        if self.metabolic:
            return "MetabolicDecision(yes, %r)" % (self.metaboliser,)
        return "MetabolicDecision(no, %r)" % (self.certificate,)


def _diagonal_candidate(form):
    """Generators (g_i, g_i) when the module splits as two equal halves."""
    f = form.module.factors
    n = len(f)
    if n == 0 or n % 2:
        return None
    h = n // 2
    if f[:h] != f[h:]:
        return None
    gens = []
    for i in range(h):
        res = [ZERO] * n
        res[i] = ONE
        res[h + i] = ONE
        gens.append(form.module.element(res))
    return gens


def _divisor_candidates(form):
    """Generators e * (sum of g_i) for divisors e with e * conj(e) = Delta,
    on pairwise-coprime square-free factors (the cyclic square-free class);
    None when the module is outside that class."""
    factors = [_monic(p) for p in form.module.factors]
    delta = ONE
    for p in factors:
        delta = _monic(delta * p)
    irr = _irreducible_factors(delta)
    if any(k > 1 for _, k in irr):
        return None
    # pairwise coprimality of the listed factors follows from delta being
    # square-free
    cyclic_gen = form.module.element([ONE] * len(factors))
    half = []
    for mask in range(1 << len(irr)):
        e = ONE
        for b, (q, _) in enumerate(irr):
            if mask & (1 << b):
                e = _monic(e * q)
        if _monic(e * lp(e).involute()) == delta:
            half.append(e)
    cands = []
    for e in half:
        residues = [reduce_mod(e, p) for p in factors]
        cands.append(form.module.element(residues))
    return [[c] for c in cands]


def is_metabolic(form):
    """Metabolic decision with an explicit metaboliser or an exhausted-
    enumeration certificate; Undecided outside the supported class."""
    if form.module.rank() == 0:
        return MetabolicDecision(True, Metaboliser(form.module, []))
    candidates = []
    diag = _diagonal_candidate(form)
    if diag is not None:
        candidates.append(diag)
    divisors = _divisor_candidates(form)
    if divisors is not None:
        candidates.extend(divisors)
    elif diag is None:
        raise Undecided("module order is not square-free and the module "
                        "is not a doubled sum")
    tried = 0
    for gens in candidates:
        metab = Metaboliser(form.module, gens)
        tried += 1
        if verify_metaboliser(form, metab):
            return MetabolicDecision(True, metab)
    if divisors is None:
        raise Undecided("diagonal rejected and divisor enumeration "
                        "unavailable off the square-free class")
    return MetabolicDecision(
        False, certificate="no metaboliser among %d candidate "
        "divisor-generated submodules" % (tried,))


def metaboliser_transfer(big_form, P, small_form, Q, split=None):
    """From a metaboliser P of a form on H (+) H' and a metaboliser Q of
    the form on H', the set {h : (h, q) in P for some q in Q} is a
    metaboliser of the form on H."""
    if split is None:
        split = big_form.module.rank() - small_form.module.rank()
    Hf = big_form.module.factors[:split]
    if big_form.module.factors[split:] != small_form.module.factors:
        raise ValueError("ambient module does not end in the small module")
    H = AlexanderModule(Hf, rational=True)
    form_H = BlanchfieldForm(
        H, [row[:split] for row in big_form.pairing[:split]])
    nH = len(_qbasis(H))
    span_P = P.span()
    span_Q = Q.span()
    # subspace H (+) span(Q) inside H (+) H'
    amb = []
    for i in range(nH):
        amb.append([Fraction(1) if j == i else Fraction(0)
                    for j in range(nH)]
                   + [Fraction(0)] * len(_qbasis(small_form.module)))
    for q in span_Q:
        amb.append([Fraction(0)] * nH + list(q))
    inter = _q_intersection(span_P, _q_rowspace(amb))
    proj = _q_rowspace([v[:nH] for v in inter])
    gens = [_coords_elem(H, v) for v in proj]
    metab = Metaboliser(H, gens)
    if not verify_metaboliser(form_H, metab):
        raise ValueError("transfer produced a non-metaboliser")
    return metab


def _q_intersection(a, b):
    """Basis of the intersection of two row spaces: (lam, mu) with
    lam*A = mu*B gives the common vectors lam*A."""
    if not a or not b:
        return []
    stacked = [list(r) for r in a] + [[-x for x in r] for r in b]
    null = _q_nullspace(stacked)
    n = len(a[0])
    out = []
    for v in null:
        w = [Fraction(0)] * n
        for c, r in zip(v[:len(a)], a):
            w = [x + c * y for x, y in zip(w, r)]
        out.append(w)
    return _q_rowspace(out)


# -- chain-level pairing -------------------------------------------------


def _solve_many(rows, targets, tag):
    """Exact solutions of x * A = v for several targets, one normal form."""
    dom = domain(tag)
    res = snf([list(r) for r in rows], tag)
    m, n = res.shape
    out = []
    for v in targets:
        vV = [sum((v[i] * res.V[i][j] for i in range(n)), dom.zero)
              for j in range(n)]
        w = [dom.zero] * m
        ok = True
        for i in range(max(m, n)):
            if i < res.rank:
                q, r = dom.divmod_(vV[i], res.factors[i])
                if not dom.is_zero(r):
                    ok = False
                    break
                w[i] = q
            elif i < n and not dom.is_zero(vV[i]):
                ok = False
                break
        if not ok:
            out.append(None)
            continue
        out.append([sum((w[i] * res.U[i][j] for i in range(m)), dom.zero)
                    for j in range(m)])
    return out


def chain_contraction(D, tag):
    """A contraction s with d s + s d = id of an acyclic bounded complex of
    free modules; raises ValueError when no contraction exists."""
    present = [r for r in D.ranks if D.rank(r)]
    if not present:
        return {}
    S = {}
    for r in range(min(present), max(present) + 1):
        P = mx.identity(D.rank(r), D.ring)
        if r - 1 in S:
            P = P - D.boundary(r) * S[r - 1]
        if D.rank(r + 1) == 0:
            if any(not e.is_zero() for row in P.rows for e in row):
                raise ValueError("complex is not contractible "
                                 "at degree %d" % r)
            continue
        rows = _solve_many(D.boundary(r + 1).rows,
                           [list(row) for row in P.rows], tag)
        if any(x is None for x in rows):
            raise ValueError("complex is not contractible at degree %d" % r)
        S[r] = Matrix(rows)
    return S


def homotopy_inverse_component(X, r):
    """Degree-r part of a chain homotopy inverse of the duality map, from a
    contraction of its mapping cone."""
    f = phi0_chain_map(X)
    cone = mapping_cone(f)
    try:
        G = chain_contraction(cone, X.C.ring.tag)
    except ValueError as e:
        raise NoHomotopyInverse(str(e))
    nB = X.C.rank(r)
    nA = f.source.rank(r)
    Gr = G.get(r, mx.zero(cone.rank(r), cone.rank(r + 1), X.C.ring))
    off = X.C.rank(r + 1)
    psi = Matrix([[Gr.rows[i][off + j] for j in range(nA)]
                  for i in range(nB)]) if nB and nA else mx.zero(
                      nB, nA, X.C.ring)
    return psi if r % 2 == 0 else -psi


def _rationalized(N):
    if isinstance(N, ZeroSurgeryComplex):
        ring = N.complex.C.ring
        rmap = augment_map(ring, "QZ")
        CQ = change_coefficients(N.complex.C, rmap)
        st = N.complex.st.map_entries(rmap, None, None)
        return SymmetricComplex(CQ, st, poincare=True)
    if isinstance(N, SymmetricComplex):
        return N
    raise TypeError("expected a zero-surgery or symmetric complex")


def chain_blanchfield(N):
    """The linking form on degree-1 homology of a 3-dimensional symmetric
    Poincare complex over Q[t, t^-1], from a rational homotopy inverse of
    the structure map."""
    form, _ = chain_blanchfield_data(N)
    return form


def chain_blanchfield_data(N):
    """(form, degree-1 homology data), so callers can coordinatize their
    own cycles in the form's module."""
    X = _rationalized(N)
    if X.n != 3:
        raise ValueError("the linking form needs a 3-dimensional complex")
    C = X.C
    hd = homology_data(C, 1)
    if hd.free_rank:
        raise NoHomotopyInverse("degree-1 homology has a free summand")
    gens = hd.generators()
    factors = [_monic(f) for f in hd.factors]
    module = AlexanderModule(factors, rational=True)
    n1 = C.rank(1)
    psi = homotopy_inverse_component(X, 1)       # N_1 -> N^2
    dstar_rows = _rfm(C.boundary(2).star(C.ring).rows)   # N^1 -> N^2
    duals = []
    for y in gens:
        w = [rf(sum((lp(y[i]) * psi.rows[i][j] for i in range(n1)),
                    ZERO)) for j in range(psi.shape[1])]
        zsol = _solve_row(dstar_rows, w)
        if zsol is None:
            raise NoHomotopyInverse("dual boundary misses the image "
                                    "of the homotopy inverse")
        duals.append(zsol)
    pairing = []
    for x in gens:
        row = []
        for z in duals:
            val = rf(0)
            for xi, zi in zip(x, z):
                val = val + rf(lp(xi).involute()) * zi
            row.append(tc(val))
        pairing.append(row)
    return BlanchfieldForm(module, pairing), hd


# -- Seifert matrices ----------------------------------------------------


def _int_det(rows):
    rows = [[Fraction(x) for x in row] for row in rows]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = Fraction(1) / rows[col][col]
        for i in range(col + 1, n):
            if rows[i][col]:
                c = rows[i][col] * inv
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[col])]
    return det


def blanchfield_from_seifert(V):
    """Linking form presented by t*V - V^T, with the pairing read off the
    inverse of the presentation matrix; the overall unit is fixed by the
    Hermitian validator."""
    m = len(V)
    if any(len(row) != m for row in V):
        raise NotSeifert("matrix is not square")
    if m == 0:
        return trivial_form()
    skew = [[V[i][j] - V[j][i] for j in range(m)] for i in range(m)]
    if _int_det(skew) not in (1, -1):
        raise NotSeifert("det(V - V^T) is not a unit")
    pres = [[lp({1: V[i][j]}) - lp(V[j][i]) for j in range(m)]
            for i in range(m)]
    res = snf([row[:] for row in pres], "QT")
    dom = domain("QT")
    kept = []
    for i in range(m):
        _, canon = dom.unit_normalize(res.factors[i])
        if canon != dom.one:
            kept.append((i, _monic(canon)))
    module = AlexanderModule([p for _, p in kept], rational=True)
    inv = _invert_rf(_rfm(pres))
    B_old = [[(rf(T) - rf(1)) * inv[i][j] for j in range(m)]
             for i in range(m)]
    raw = []
    for a, _ in kept:
        row = []
        for b, _ in kept:
            val = rf(0)
            for i in range(m):
                ci = res.Vinv[a][i]
                if lp(ci).is_zero():
                    continue
                for j in range(m):
                    cj = res.Vinv[b][j]
                    if lp(cj).is_zero():
                        continue
                    val = val + rf(ci) * rf(lp(cj).involute()) * B_old[i][j]
            row.append(val)
        raw.append(row)
    for k in range(-2, 3):
        for sign in (1, -1):
            u = rf(lp({k: sign}))
            form = BlanchfieldForm(
                module, [[tc(u * x) for x in row] for row in raw])
            if form.is_hermitian() and form.is_sesquilinear():
                return form
    raise NotSeifert("no unit makes the pairing Hermitian")


# -- Witt classes --------------------------------------------------------


class WittClass:
    """A linking form with a lazily computed metabolic decision."""

    def __init__(self, form):
        self.form = form
        self._decision = None

    def decision(self):
        if self._decision is None:
            try:
                self._decision = is_metabolic(self.form)
            except Undecided as e:
                self._decision = MetabolicDecision(
                    False, certificate="undecided: %s" % (e,))
                self._decision.undecided = True
        return self._decision

    def is_metabolic(self):
        d = self.decision()
        if getattr(d, "undecided", False):
            raise Undecided(d.certificate)
        return d.metabolic

    def __repr__(self):
        return "WittClass(%r)" % (self.form,)


def witt_sum(a, b):
    return WittClass(a.form.direct_sum(b.form))


def witt_negate(a):
    return WittClass(a.form.negate())


def trivial_witt():
    return WittClass(trivial_form())


def ac1_image(t):
    """The Witt class of the linking form of the zero surgery."""
    return WittClass(chain_blanchfield(zero_surgery(t)))


# -- integral restriction ------------------------------------------------


def integral_restriction(metab, H_int):
    """Generators over Z of P cap H_Z inside the rationalized module.

    Supported when every factor has unit leading and trailing coefficients,
    so the integral module is Z-finite; Undecided otherwise.
    """
    mod_q = metab.module
    for p in H_int.factors:
        q = _ordinary(p)
        if abs(q.coeff(0)) != 1 or abs(q.coeff(poly_degree(q))) != 1:
            raise Undecided("integral module is not finitely generated "
                            "over Z")
    if tuple(_monic(p) for p in H_int.factors) != \
            tuple(_monic(p) for p in mod_q.factors):
        raise ValueError("modules do not match after rationalization")
    span = metab.span()
    d = len(_qbasis(mod_q))
    if not span:
        return []
    # annihilator of the span, cleared to integer vectors
    ann = _q_nullspace([[row[j] for row in span] for j in range(d)])
    if not ann:
        K = []
    else:
        K = []
        for v in ann:
            denom = 1
            for x in v:
                denom = denom * Fraction(x).denominator // _gcd(
                    denom, Fraction(x).denominator)
            K.append([int(Fraction(x) * denom) for x in v])
    if not K:
        rows = [[1 if j == i else 0 for j in range(d)] for i in range(d)]
    else:
        A = [[K[j][i] for j in range(len(K))] for i in range(d)]
        rows = left_kernel(A, "Z")
    return [_coords_elem(mod_q, [Fraction(x) for x in v]) for v in rows]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)
