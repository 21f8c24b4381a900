"""Exact Laurent polynomial arithmetic over Q, rational functions in t,
and the quotient Q(t)/Q[t,t^-1].

Laurent polynomials are stored as a mapping exponent -> Fraction with no
zero coefficients, so equality is structural.  The involution is t -> t^-1.
"""

from fractions import Fraction


def _coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError("coefficient must be int or Fraction, got %r" % (c,))


class LaurentPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        """terms: dict {exponent: coefficient}, an int/Fraction constant, or None."""
        if terms is None:
            terms = {}
        elif isinstance(terms, (int, Fraction)):
            terms = {0: terms} if terms else {}
        cleaned = {}
        for e, c in terms.items():
            c = _coeff(c)
            if c:
                cleaned[int(e)] = c
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_unit(self):
        # units of Q[t,t^-1] are c*t^k
        return len(self.terms) == 1

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    def coeff(self, e):
        return self.terms.get(e, Fraction(0))

    def evaluate(self, x):
        """Evaluate at a nonzero rational x."""
        x = _coeff(x)
        return sum((c * x ** e for e, c in self.terms.items()), Fraction(0))

    def is_integral(self):
        return all(c.denominator == 1 for c in self.terms.values())

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, LaurentPoly)):
            return NotImplemented
        other = lp(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, LaurentPoly)):
            return NotImplemented
        return self + (-lp(other))

    def __rsub__(self, other):
        return lp(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, LaurentPoly)):
            return NotImplemented
        other = lp(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit")
            ((e, c),) = self.terms.items()
            return LaurentPoly({-e: 1 / c}) ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def involute(self):
        """The involution t -> t^-1."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = lp(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                bits.append(str(c))
            elif e == 1:
                bits.append("%s*t" % c)
            else:
                bits.append("%s*t^%d" % (c, e))
        return " + ".join(bits)


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
T = LaurentPoly({1: 1})


def lp(x):
    """Coerce an int, Fraction or LaurentPoly to LaurentPoly."""
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly(x)


def lp_mul(a, b):
    return lp(a) * lp(b)


def lp_involute(a):
    return lp(a).involute()


def from_coeffs(coeffs, low=0):
    """Laurent polynomial with the given coefficient list starting at t^low."""
    return LaurentPoly({low + i: c for i, c in enumerate(coeffs)})


# -- ordinary-polynomial helpers ----------------------------------------
#
# Q[t,t^-1] is the localization of Q[t] at t, so Euclidean reduction is done
# on shifted ("ordinary") polynomials: min_exp 0, nonzero constant term.


def to_ordinary(a):
    """Return (p, k) with a = t^k * p and p an ordinary polynomial, p(0) != 0."""
    if a.is_zero():
        return a, 0
    k = a.min_exp()
    return a.shift(-k), k


def poly_degree(a):
    """Degree of an ordinary polynomial (-1 for zero)."""
    return a.max_exp() if not a.is_zero() else -1


def poly_divmod(a, b):
    """Division with remainder in Q[t]; a, b must have min_exp >= 0, b != 0."""
    if b.is_zero():
        raise ZeroDivisionError("poly_divmod by zero")
    if (not a.is_zero() and a.min_exp() < 0) or b.min_exp() < 0:
        raise ValueError("poly_divmod needs ordinary polynomials")
    q = ZERO
    r = a
    db = poly_degree(b)
    lead_b = b.coeff(db)
    while not r.is_zero() and poly_degree(r) >= db:
        dr = poly_degree(r)
        piece = LaurentPoly({dr - db: r.coeff(dr) / lead_b})
        q = q + piece
        r = r - piece * b
    return q, r


def poly_gcd(a, b):
    """Monic gcd in Q[t] of ordinary polynomials."""
    while not b.is_zero():
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    return a * LaurentPoly(1 / a.coeff(poly_degree(a)))


def poly_xgcd(a, b):
    """Extended gcd in Q[t]: returns (g, x, y) with x*a + y*b = g, g monic."""
    x, next_x = ONE, ZERO
    y, next_y = ZERO, ONE
    g, next_g = a, b
    while not next_g.is_zero():
        q, r = poly_divmod(g, next_g)
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, r
    if g.is_zero():
        return g, x, y
    c = LaurentPoly(1 / g.coeff(poly_degree(g)))
    return g * c, x * c, y * c


def laurent_gcd(a, b):
    """Gcd in Q[t,t^-1], normalized monic ordinary with nonzero constant term."""
    pa, _ = to_ordinary(a)
    pb, _ = to_ordinary(b)
    g = poly_gcd(pa, pb)
    if g.is_zero():
        return g
    p, _ = to_ordinary(g)
    return p


def laurent_divides(a, b):
    """Whether a divides b in Q[t,t^-1] (a != 0)."""
    if b.is_zero():
        return True
    pa, _ = to_ordinary(a)
    pb, _ = to_ordinary(b)
    _, r = poly_divmod(pb, pa)
    return r.is_zero()


def laurent_exact_div(b, a):
    """b / a in Q[t,t^-1] assuming divisibility."""
    if b.is_zero():
        return ZERO
    pa, ka = to_ordinary(a)
    pb, kb = to_ordinary(b)
    q, r = poly_divmod(pb, pa)
    if not r.is_zero():
        raise ValueError("not divisible")
    return q.shift(kb - ka)


def reduce_mod(a, p):
    """Canonical representative of a Laurent polynomial modulo an ordinary
    polynomial p with p(0) != 0: the ordinary polynomial of degree < deg p."""
    if p.is_zero():
        return a
    if p.coeff(0) == 0:
        raise ValueError("modulus must have nonzero constant term")
    k = min(0, a.min_exp()) if not a.is_zero() else 0
    # a = t^k * ordinary; reduce the ordinary part, then undo the shift with
    # the inverse of t modulo p.
    shifted = a.shift(-k)
    _, r = poly_divmod(shifted, p)
    if k:
        g, x, _ = poly_xgcd(T, p)
        assert g == ONE, "t is invertible mod p"
        tinv = x
        for _ in range(-k):
            _, r = poly_divmod(r * tinv, p)
    return r


def invert_mod(a, p):
    """Inverse of a modulo the ordinary polynomial p, or None if not coprime."""
    a = reduce_mod(a, p)
    g, x, _ = poly_xgcd(a, p)
    if g != ONE:
        return None
    return reduce_mod(x, p)


class RationalFunction:
    """Element of Q(t), stored reduced with the denominator a monic ordinary
    polynomial with nonzero constant term."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = lp(num)
        den = lp(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        pd, kd = to_ordinary(den)
        num = num.shift(-kd)
        g = laurent_gcd(num, pd)
        if not g.is_zero() and poly_degree(g) > 0:
            num = laurent_exact_div(num, g)
            pd = laurent_exact_div(pd, g)
            pd, k2 = to_ordinary(pd)
            num = num.shift(-k2)
        c = pd.coeff(poly_degree(pd))
        if c != 1:
            inv = LaurentPoly(1 / c)
            num = num * inv
            pd = pd * inv
        if num.is_zero():
            pd = ONE
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", pd)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den == ONE

    def __add__(self, other):
        other = rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-rf(other))

    def __rsub__(self, other):
        return rf(other) + (-self)

    def __mul__(self, other):
        other = rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = rf(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return rf(other) / self

    def involute(self):
        return RationalFunction(self.num.involute(), self.den.involute())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = rf(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_polynomial():
            return repr(self.num)
        return "(%s)/(%s)" % (self.num, self.den)


def rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, TorsionClass):
        raise TypeError("torsion class is not a rational function")
    return RationalFunction(lp(x))


def rf_proper_part(q):
    """The class of q in Q(t)/Q[t,t^-1] with its canonical representative."""
    return TorsionClass(q)


class TorsionClass:
    """Element of Q(t)/Q[t,t^-1].

    Canonical representative: r/den with den the monic ordinary denominator of
    any reduced representative and r ordinary of degree < deg den.  Uniqueness
    holds because t is invertible modulo den, so the Laurent-polynomial part
    can be split off canonically.
    """

    __slots__ = ("rep",)

    def __init__(self, q=None):
        if q is None:
            q = RationalFunction(ZERO)
        if isinstance(q, TorsionClass):
            q = q.rep
        q = rf(q) if not isinstance(q, RationalFunction) else q
        r = reduce_mod(q.num, q.den)
        object.__setattr__(self, "rep", RationalFunction(r, q.den))

    def __setattr__(self, name, value):
        raise AttributeError("TorsionClass is immutable")

    def is_zero(self):
        return self.rep.is_zero()

    def __add__(self, other):
        return TorsionClass(self.rep + tc(other).rep)

    __radd__ = __add__

    def __neg__(self):
        return TorsionClass(-self.rep)

    def __sub__(self, other):
        return self + (-tc(other))

    def __rsub__(self, other):
        return tc(other) + (-self)

    def __mul__(self, other):
        # multiplication by Q[t,t^-1] (or Q) scalars is well-defined on classes
        if isinstance(other, TorsionClass):
            raise TypeError("cannot multiply two torsion classes")
        return TorsionClass(self.rep * rf(other))

    __rmul__ = __mul__

    def involute(self):
        return TorsionClass(self.rep.involute())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TorsionClass(rf(other))
        if not isinstance(other, TorsionClass):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        return "[%r]" % (self.rep,)


def tc(x):
    if isinstance(x, TorsionClass):
        return x
    return TorsionClass(rf(x))
