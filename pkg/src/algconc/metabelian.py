"""Alexander modules of type K, the semidirect product Z x| H, its group
ring with involution, augmentations, induced maps and inner automorphisms.

The semidirect convention is (m, a)(n, b) = (m + n, a + t^m b), so
(n, h)^-1 = (-n, -t^-n h).  H is always a finite direct sum of cyclic
modules Z[t,t^-1]/(p_i) with p_i(1) = +-1 (integrally) or p_i(1) != 0
(rationally), which makes 1 - t act invertibly.
"""

from fractions import Fraction

from .laurent import (LaurentPoly, ZERO, ONE, T, lp, to_ordinary,
                      reduce_mod, invert_mod)


class TypeKViolation(Exception):
    def __init__(self, index, factor, value):
        self.index = index
        self.factor = factor
        self.value = value
        super().__init__("factor %d = %r has p(1) = %s" % (index, factor, value))


class NotEquivariant(Exception):
    pass


class UnsupportedRing(Exception):
    pass


class AlexanderModule:
    """Finite direct sum of cyclic modules Z[t,t^-1]/(p_i) (or over Q)."""

    __slots__ = ("factors", "rational")

    def __init__(self, factors, rational=False):
        normalized = []
        for i, p in enumerate(factors):
            p = lp(p)
            if p.is_zero():
                raise TypeKViolation(i, p, "0 (zero factor)")
            p, _ = to_ordinary(p)  # t is a unit; use the ordinary representative
            val = p.evaluate(1)
            if rational:
                if val == 0:
                    raise TypeKViolation(i, p, val)
            else:
                if not p.is_integral():
                    raise TypeError("integral module needs integer factors")
                if val not in (1, -1):
                    raise TypeKViolation(i, p, val)
            normalized.append(p)
        object.__setattr__(self, "factors", tuple(normalized))
        object.__setattr__(self, "rational", bool(rational))

    def __setattr__(self, name, value):
        raise AttributeError("AlexanderModule is immutable")

    def rank(self):
        return len(self.factors)

    def is_trivial(self):
        return not self.factors

    def zero(self):
        return ModuleElement(self, [ZERO] * len(self.factors))

    def gen(self, i):
        res = [ZERO] * len(self.factors)
        res[i] = ONE
        return ModuleElement(self, res)

    def gens(self):
        return [self.gen(i) for i in range(len(self.factors))]

    def element(self, residues):
        return ModuleElement(self, residues)

    def rationalize(self):
        return AlexanderModule(self.factors, rational=True)

    def direct_sum(self, other):
        if self.rational != other.rational:
            raise ValueError("mixed coefficient flags in direct sum")
        return AlexanderModule(self.factors + other.factors, self.rational)

    def inclusion_left(self, total):
        """Module hom self -> total = self (+) other."""
        return ModuleHom(self, total, [total.gen(i) for i in range(self.rank())])

    def inclusion_right(self, total, offset):
        return ModuleHom(self, total,
                         [total.gen(offset + i) for i in range(self.rank())])

    def order(self):
        """Product of the cyclic factors."""
        out = ONE
        for p in self.factors:
            out = out * p
        return out

    def __eq__(self, other):
        if not isinstance(other, AlexanderModule):
            return NotImplemented
        return self.factors == other.factors and self.rational == other.rational

    def __hash__(self):
        return hash((self.factors, self.rational))

    def __repr__(self):
        return "AlexanderModule(%r%s)" % (list(self.factors),
                                          ", rational" if self.rational else "")


def validate_module(factors, rational=False):
    """Accept iff every p_i(1) = +-1 (integral) or p_i(1) != 0 (rational)."""
    return AlexanderModule(factors, rational)


TRIVIAL_MODULE = AlexanderModule([])


class ModuleElement:
    """Element of an AlexanderModule, one canonical residue per factor."""

    __slots__ = ("module", "residues")

    def __init__(self, module, residues):
        residues = [lp(r) for r in residues]
        if len(residues) != module.rank():
            raise ValueError("wrong number of residues")
        canon = tuple(reduce_mod(r, p)
                      for r, p in zip(residues, module.factors))
        object.__setattr__(self, "module", module)
        object.__setattr__(self, "residues", canon)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleElement is immutable")

    def is_zero(self):
        return all(r.is_zero() for r in self.residues)

    def __add__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        if other.module != self.module:
            raise ValueError("elements of different modules")
        return ModuleElement(self.module,
                             [a + b for a, b in zip(self.residues, other.residues)])

    def __neg__(self):
        return ModuleElement(self.module, [-r for r in self.residues])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        # action of Q[t,t^-1] (t acts by multiplication)
        scalar = lp(scalar)
        return ModuleElement(self.module, [scalar * r for r in self.residues])

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.module == other.module and self.residues == other.residues

    def __hash__(self):
        return hash((self.module, self.residues))

    def __repr__(self):
        return "ModuleElement(%r)" % (list(self.residues),)


def one_minus_t_inverse(v):
    """The u with (1 - t) u = v; exists by the type-K condition."""
    module = v.module
    out = []
    for r, p in zip(v.residues, module.factors):
        inv = invert_mod(ONE - T, p)
        assert inv is not None, "1 - t must be invertible mod a type-K factor"
        out.append(inv * r)
    return ModuleElement(module, out)


class GroupElement:
    """(n, h) in Z x| H."""

    __slots__ = ("n", "h")

    def __init__(self, n, h):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "h", h)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    @property
    def module(self):
        return self.h.module

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.module != self.module:
            raise ValueError("elements of different groups")
        return GroupElement(self.n + other.n, self.h + (T ** 0).shift(self.n) * other.h)

    def inverse(self):
        return GroupElement(-self.n, -(LaurentPoly({-self.n: 1}) * self.h))

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.n == other.n and self.h == other.h

    def __hash__(self):
        return hash((self.n, self.h))

    def __repr__(self):
        return "GroupElement(%d, %r)" % (self.n, list(self.h.residues))


def group_mul(a, b):
    return a * b


def group_identity(module):
    return GroupElement(0, module.zero())


class GroupRing:
    """Z[Z x| H] or Q[Z x| H] as a coefficient ring object."""

    def __init__(self, module, rational=False):
        self.module = module
        self.rational = bool(rational)
        self.zero = GroupRingElement(self, {})
        self.one = GroupRingElement(self, {group_identity(module): Fraction(1)})

    @property
    def tag(self):
        return "QG" if self.rational else "ZG"

    def is_zero(self, x):
        x = self.coerce(x)
        return not x.support

    def involute(self, x):
        return ring_involution(self.coerce(x))

    def coerce(self, x):
        if isinstance(x, GroupRingElement):
            if x.ring.module != self.module:
                raise ValueError("group ring element over a different module")
            return x if x.ring is self or x.ring == self else GroupRingElement(self, x.support)
        if isinstance(x, (int, Fraction)):
            c = Fraction(x)
            if not c:
                return self.zero
            return GroupRingElement(self, {group_identity(self.module): c})
        raise TypeError("cannot coerce %r into %r" % (x, self))

    def element(self, support):
        return GroupRingElement(self, support)

    def monomial(self, g, c=1):
        return GroupRingElement(self, {g: Fraction(c)})

    def group(self, n, residues):
        return GroupElement(n, self.module.element(residues))

    def __eq__(self, other):
        return (isinstance(other, GroupRing) and other.module == self.module
                and other.rational == self.rational)

    def __hash__(self):
        return hash(("GroupRing", self.module, self.rational))

    def __repr__(self):
        base = "Q" if self.rational else "Z"
        return "%s[Z x| %r]" % (base, self.module)


class GroupRingElement:
    """Finite formal sum of group elements with int/rational coefficients."""

    __slots__ = ("ring", "support")

    def __init__(self, ring, support):
        cleaned = {}
        for g, c in support.items():
            c = Fraction(c)
            if not ring.rational and c.denominator != 1:
                raise TypeError("fractional coefficient in an integral group ring")
            if c:
                cleaned[g] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "support", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElement is immutable")

    def is_zero(self):
        return not self.support

    def _coerced(self, other):
        if isinstance(other, GroupRingElement):
            return self.ring.coerce(other)
        if isinstance(other, (int, Fraction)):
            return self.ring.coerce(other)
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        support = dict(self.support)
        for g, c in other.support.items():
            support[g] = support.get(g, Fraction(0)) + c
        return GroupRingElement(self.ring, support)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.ring, {g: -c for g, c in self.support.items()})

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        support = {}
        for g1, c1 in self.support.items():
            for g2, c2 in other.support.items():
                g = g1 * g2
                support[g] = support.get(g, Fraction(0)) + c1 * c2
        return GroupRingElement(self.ring, support)

    def __rmul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other * self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.coerce(other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.ring == other.ring and self.support == other.support

    def __hash__(self):
        return hash((self.ring, frozenset(self.support.items())))

    def __repr__(self):
        if not self.support:
            return "0"
        return " + ".join("%s*%r" % (c, g) for g, c in self.support.items())


def ring_involution(x):
    """sum c_g g  |->  sum c_g g^-1 (an anti-automorphism)."""
    return GroupRingElement(x.ring,
                            {g.inverse(): c for g, c in x.support.items()})


def augment(x, target):
    """Augment a group ring element.

    target "ZZ"/"QZ": (n, h) |-> t^n as a LaurentPoly;
    target "Z": integer; "Q": Fraction.
    """
    if target in ("ZZ", "QZ"):
        out = ZERO
        for g, c in x.support.items():
            out = out + LaurentPoly({g.n: c})
        return out
    if target in ("Z", "Q"):
        total = sum((c for c in x.support.values()), Fraction(0))
        if target == "Z":
            if total.denominator != 1:
                raise TypeError("non-integral augmentation value")
            return int(total)
        return total
    raise UnsupportedRing(target)


class ModuleHom:
    """Z[t,t^-1]-module homomorphism between cyclic-sum modules, given by
    generator images."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source, target, images):
        if len(images) != source.rank():
            raise ValueError("need one image per generator")
        for p, img in zip(source.factors, images):
            if img.module != target:
                raise ValueError("image in the wrong module")
            if not (p * img).is_zero():
                # p_i * f(e_i) != 0 means f is not a well-defined equivariant map
                raise NotEquivariant("relation %r not respected" % (p,))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", tuple(images))

    def __setattr__(self, name, value):
        raise AttributeError("ModuleHom is immutable")

    def __call__(self, v):
        if v.module != self.source:
            raise ValueError("element of the wrong module")
        out = self.target.zero()
        for r, img in zip(v.residues, self.images):
            out = out + r * img
        return out

    @staticmethod
    def identity(module):
        return ModuleHom(module, module, module.gens())

    @staticmethod
    def zero(source, target):
        return ModuleHom(source, target, [target.zero()] * source.rank())


class RingMap:
    """Multiplicative unital map between coefficient rings, applied entrywise
    to matrices by change_coefficients."""

    def __init__(self, kind, source, target, payload=None):
        self.kind = kind
        self.source = source
        self.target = target
        self.payload = payload

    def __call__(self, x):
        k = self.kind
        if k == "augment":
            return augment(self.source.coerce(x), self.payload)
        if k == "rationalize":
            return self.target.coerce(x)
        if k == "module-hom-induced":
            f = self.payload
            x = self.source.coerce(x)
            support = {}
            for g, c in x.support.items():
                g2 = GroupElement(g.n, f(g.h))
                support[g2] = support.get(g2, Fraction(0)) + c
            return GroupRingElement(self.target, support)
        if k == "laurent-embed":
            x = lp(x)
            zero_h = self.target.module.zero()
            return GroupRingElement(
                self.target,
                {GroupElement(e, zero_h): c for e, c in x.terms.items()})
        if k == "inner-automorphism":
            # conjugation x |-> c^-1 x c; with the semidirect convention
            # (m,a)(n,b) = (m+n, a + t^m b) this is the direction that sends
            # (1, h1) to (1, 0) for the conjugator (0, h') with (1-t)h' = h1
            c = self.payload
            x = self.source.coerce(x)
            cm = self.source.monomial(c.inverse())
            cminv = self.source.monomial(c)
            return cm * x * cminv
        raise ValueError("unknown ring map kind %r" % (k,))

    def __repr__(self):
        return "RingMap(%r)" % (self.kind,)


def augment_map(ring, target):
    from .matrix import Z, Q, ZT, QT
    targets = {"ZZ": ZT, "QZ": QT, "Z": Z, "Q": Q}
    return RingMap("augment", ring, targets[target], target)


def rationalize_map(ring):
    from .matrix import Z, Q, ZT, QT
    from .matrix import ScalarRing
    if isinstance(ring, GroupRing):
        return RingMap("rationalize", ring, GroupRing(ring.module, rational=True))
    if isinstance(ring, ScalarRing):
        target = {"Z": Q, "Q": Q, "ZT": QT, "QT": QT}[ring.tag]
        return RingMap("rationalize", ring, target)
    raise UnsupportedRing(repr(ring))


def induce_hom(f, rational=False):
    """Ring map Z[Z x| H] -> Z[Z x| H'] acting as (n, h) |-> (n, f(h))."""
    return RingMap("module-hom-induced",
                   GroupRing(f.source, rational), GroupRing(f.target, rational),
                   f)


def laurent_embed_map(ring):
    """Z[t,t^-1] (or Q[t,t^-1]) -> group ring, t |-> the meridian (1, 0)."""
    from .matrix import ZT, QT
    return RingMap("laurent-embed", QT if ring.rational else ZT, ring)


def inner_auto(c, rational=False):
    """x |-> c x c^-1 extended linearly."""
    ring = GroupRing(c.module, rational)
    return RingMap("inner-automorphism", ring, ring, c)
