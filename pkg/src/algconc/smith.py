"""Smith normal form over Z, Q and Q[t,t^-1], with transformation matrices,
plus exact linear solvers built on it.

Matrices are row-major nested lists.  The decomposition is U*A*V = D with U, V
invertible over the base ring and D diagonal with a divisibility chain.
"""

from fractions import Fraction

from .laurent import (LaurentPoly, RationalFunction, ZERO, ONE, lp,
                      to_ordinary, poly_degree, poly_divmod, poly_gcd,
                      laurent_exact_div)


class _IntDomain:
    tag = "Z"
    zero = 0
    one = 1

    @staticmethod
    def is_zero(x):
        return x == 0

    @staticmethod
    def norm(x):
        return abs(x)

    @staticmethod
    def divmod_(a, b):
        q, r = divmod(a, b)
        return q, r

    @staticmethod
    def unit_normalize(x):
        # x = u * canonical; canonical positive
        if x < 0:
            return -1, -x
        return 1, x

    @staticmethod
    def unit_inverse(u):
        return u

    @staticmethod
    def check(x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise TypeError("integer matrix entry expected, got %r" % (x,))


class _FieldDomain:
    tag = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def is_zero(x):
        return x == 0

    @staticmethod
    def norm(x):
        return 1

    @staticmethod
    def divmod_(a, b):
        return Fraction(a) / Fraction(b), Fraction(0)

    @staticmethod
    def unit_normalize(x):
        return Fraction(x), Fraction(1)

    @staticmethod
    def unit_inverse(u):
        return 1 / Fraction(u)

    @staticmethod
    def check(x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError("rational matrix entry expected, got %r" % (x,))


class _LaurentDomain:
    tag = "QT"
    zero = ZERO
    one = ONE

    @staticmethod
    def is_zero(x):
        return x.is_zero()

    @staticmethod
    def norm(x):
        p, _ = to_ordinary(x)
        return poly_degree(p)

    @staticmethod
    def divmod_(a, b):
        pa, ka = to_ordinary(a)
        pb, kb = to_ordinary(b)
        q0, r0 = poly_divmod(pa, pb)
        return q0.shift(ka - kb), r0.shift(ka)

    @staticmethod
    def unit_normalize(x):
        # canonical form: monic ordinary polynomial with nonzero constant term
        p, k = to_ordinary(x)
        if p.is_zero():
            return ONE, p
        c = p.coeff(poly_degree(p))
        unit = LaurentPoly({k: c})
        return unit, p * LaurentPoly(1 / c)

    @staticmethod
    def unit_inverse(u):
        ((e, c),) = u.terms.items()
        return LaurentPoly({-e: 1 / c})

    @staticmethod
    def check(x):
        if isinstance(x, (int, Fraction)):
            return lp(x)
        if isinstance(x, LaurentPoly):
            return x
        raise TypeError("Laurent matrix entry expected, got %r" % (x,))


_DOMAINS = {"Z": _IntDomain, "Q": _FieldDomain, "QT": _LaurentDomain}


def domain(tag):
    try:
        return _DOMAINS[tag]
    except KeyError:
        raise ValueError("unsupported SNF ring %r" % (tag,))


class SnfResult:
    """U*A*V = diag(factors), with the factors forming a divisibility chain."""

    def __init__(self, factors, U, Uinv, V, Vinv, rank, shape, ring):
        self.factors = factors
        self.U = U
        self.Uinv = Uinv
        self.V = V
        self.Vinv = Vinv
        self.rank = rank
        self.shape = shape
        self.ring = ring

    def diagonal(self):
        m, n = self.shape
        dom = domain(self.ring)
        D = [[dom.zero] * n for _ in range(m)]
        for i, f in enumerate(self.factors):
            D[i][i] = f
        return D


def _identity(n, dom):
    return [[dom.one if i == j else dom.zero for j in range(n)]
            for i in range(n)]


def _matmul(A, B, dom):
    m = len(A)
    k = len(B)
    n = len(B[0]) if k else 0
    out = [[dom.zero] * n for _ in range(m)]
    for i in range(m):
        Ai = A[i]
        for p in range(k):
            a = Ai[p]
            if dom.is_zero(a):
                continue
            Bp = B[p]
            row = out[i]
            for j in range(n):
                b = Bp[j]
                if not dom.is_zero(b):
                    row[j] = row[j] + a * b
    return out


def snf(A, ring):
    """Smith normal form of a rectangular matrix over Z, Q or Q[t,t^-1]."""
    dom = domain(ring)
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[dom.check(x) for x in row] for row in A]
    U = _identity(m, dom)
    Uinv = _identity(m, dom)
    V = _identity(n, dom)
    Vinv = _identity(n, dom)

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]
        for r in range(m):
            Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def col_swap(i, j):
        for r in range(m):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_add(i, j, q):
        # row i += q * row j
        if dom.is_zero(q):
            return
        M[i] = [a + q * b for a, b in zip(M[i], M[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        for r in range(m):
            Uinv[r][j] = Uinv[r][j] - Uinv[r][i] * q
    def col_add(i, j, q):
        # col i += col j * q
        if dom.is_zero(q):
            return
        for r in range(m):
            M[r][i] = M[r][i] + M[r][j] * q
        for r in range(n):
            V[r][i] = V[r][i] + V[r][j] * q
        Vinv[j] = [a - q * b for a, b in zip(Vinv[j], Vinv[i])]

    def row_scale(i, u):
        uinv = dom.unit_inverse(u)
        M[i] = [u * a for a in M[i]]
        U[i] = [u * a for a in U[i]]
        for r in range(m):
            Uinv[r][i] = Uinv[r][i] * uinv

    k = 0
    while k < min(m, n):
        # locate a nonzero entry of minimal norm in the trailing submatrix
        pivot = None
        for i in range(k, m):
            for j in range(k, n):
                if not dom.is_zero(M[i][j]):
                    if pivot is None or dom.norm(M[i][j]) < dom.norm(M[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        row_swap(k, pivot[0])
        col_swap(k, pivot[1])
        while True:
            # clear column k
            dirty = False
            for i in range(k + 1, m):
                if dom.is_zero(M[i][k]):
                    continue
                q, r = dom.divmod_(M[i][k], M[k][k])
                row_add(i, k, -q)
                if not dom.is_zero(r):
                    row_swap(k, i)
                    dirty = True
            if dirty:
                continue
            for j in range(k + 1, n):
                if dom.is_zero(M[k][j]):
                    continue
                q, r = dom.divmod_(M[k][j], M[k][k])
                col_add(j, k, -q)
                if not dom.is_zero(r):
                    col_swap(k, j)
                    dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the submatrix for the chain
            offender = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    _, r = dom.divmod_(M[i][j], M[k][k])
                    if not dom.is_zero(r):
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(k, offender, dom.one)
        u, canon = dom.unit_normalize(M[k][k])
        if not dom.is_zero(canon):
            row_scale(k, dom.unit_inverse(u))
        k += 1

    factors = [M[i][i] for i in range(k) if not dom.is_zero(M[i][i])]
    return SnfResult(factors, U, Uinv, V, Vinv, len(factors), (m, n), ring)


def left_kernel(A, ring):
    """Rows spanning {x : x*A = 0} over the ring."""
    res = snf(A, ring)
    return [res.U[i] for i in range(res.shape[0]) if i >= res.rank]


def solve_exact(A, v, ring):
    """Solve x*A = v over the ring (row-vector convention); None if unsolvable."""
    dom = domain(ring)
    res = snf(A, ring)
    m, n = res.shape
    if len(v) != n:
        raise ValueError("shape mismatch")
    vV = _matmul([list(v)], res.V, dom)[0]
    w = [dom.zero] * m
    for i in range(m):
        if i < res.rank:
            d = res.factors[i]
            q, r = dom.divmod_(vV[i], d)
            if not dom.is_zero(r):
                return None
            w[i] = q
        else:
            if i < n and not dom.is_zero(vV[i]):
                return None
    for i in range(m, n):
        if not dom.is_zero(vV[i]):
            return None
    return _matmul([w], res.U, dom)[0]


def solve_linear(A, b):
    """Solve A*x = s*b over Q[t,t^-1] (column convention).

    Returns (x, s) with x a column over Q[t,t^-1] and s a nonzero Laurent
    polynomial, or None when b is not in the Q(t)-span of the columns of A.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[RationalFunction(lp(A[i][j])) for j in range(n)] + [RationalFunction(lp(b[i]))]
         for i in range(m)]
    # Gaussian elimination over Q(t)
    pivots = []
    row = 0
    for col in range(n):
        sel = None
        for i in range(row, m):
            if not M[i][col].is_zero():
                sel = i
                break
        if sel is None:
            continue
        M[row], M[sel] = M[sel], M[row]
        piv = M[row][col]
        M[row] = [e / piv for e in M[row]]
        for i in range(m):
            if i != row and not M[i][col].is_zero():
                f = M[i][col]
                M[i] = [a - f * c for a, c in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if not M[i][n].is_zero():
            return None
    x = [RationalFunction(ZERO)] * n
    for r, col in enumerate(pivots):
        x[col] = M[r][n]
    # clear denominators: s = lcm of the denominators
    s = ONE
    for e in x:
        if not e.is_zero() and not e.is_polynomial():
            g = poly_gcd(s, e.den)
            s = laurent_exact_div(s * e.den, g)
    cleared = []
    for e in x:
        prod = e * RationalFunction(s)
        assert prod.is_polynomial()
        cleared.append(prod.num)
    return cleared, s
