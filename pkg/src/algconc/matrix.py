"""Shape-aware matrices with entries in any of the supported rings.

Row convention throughout the package: M[i][j] is the coefficient of target
basis element j in the image of source basis element i, and the composite
A -> B -> C is stored as M(A->B) * M(B->C), entries multiplying left-to-right.
Explicit shapes keep rank-zero degrees honest.
"""

from fractions import Fraction

from .laurent import LaurentPoly, lp


class Matrix:
    __slots__ = ("rows", "shape")

    def __init__(self, rows, shape=None):
        rows = [list(r) for r in rows]
        if shape is None:
            if not rows:
                raise ValueError("shape required for empty matrix")
            shape = (len(rows), len(rows[0]))
        m, n = shape
        if len(rows) != m or any(len(r) != n for r in rows):
            raise ValueError("rows do not match shape %r" % (shape,))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "shape", (m, n))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __getitem__(self, i):
        return self.rows[i]

    def __iter__(self):
        return iter(self.rows)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise ValueError("shape mismatch %r * %r" % (self.shape, other.shape))
        out = [[None] * n for _ in range(m)]
        for i in range(m):
            for j in range(n):
                acc = None
                for p in range(k):
                    term = self.rows[i][p] * other.rows[p][j]
                    acc = term if acc is None else acc + term
                out[i][j] = acc if acc is not None else 0
        if k == 0:
            # no summands: entries must come from the ambient ring's zero,
            # which we cannot see here; callers use zero() for that case.
            return Matrix([[0] * n for _ in range(m)], (m, n))
        return Matrix(out, (m, n))

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError("shape mismatch %r + %r" % (self.shape, other.shape))
        return Matrix([[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)], self.shape)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows], self.shape)

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self.rows], self.shape)

    def transpose(self):
        m, n = self.shape
        return Matrix([[self.rows[i][j] for i in range(m)] for j in range(n)],
                      (n, m))

    def star(self, ring):
        """Entrywise involution composed with transpose (the dual of a map)."""
        m, n = self.shape
        return Matrix([[ring.involute(self.rows[i][j]) for i in range(m)]
                       for j in range(n)], (n, m))

    def map_entries(self, fn, shape=None):
        return Matrix([[fn(a) for a in r] for r in self.rows],
                      shape if shape is not None else self.shape)

    def row(self, i):
        return list(self.rows[i])

    def col(self, j):
        return [r[j] for r in self.rows]

    def is_zero(self, ring):
        return all(ring.is_zero(a) for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return "Matrix(%r)" % (self.rows,)


def zero(m, n, ring):
    return Matrix([[ring.zero for _ in range(n)] for _ in range(m)], (m, n))


def identity(n, ring):
    return Matrix([[ring.one if i == j else ring.zero for j in range(n)]
                   for i in range(n)], (n, n))


def scalar_matrix(n, c, ring):
    return Matrix([[c if i == j else ring.zero for j in range(n)]
                   for i in range(n)], (n, n))


def diag(entries, ring):
    n = len(entries)
    return Matrix([[entries[i] if i == j else ring.zero for j in range(n)]
                   for i in range(n)], (n, n))


def block(grid, row_dims, col_dims, ring):
    """Assemble a block matrix; None entries mean zero blocks."""
    m = sum(row_dims)
    n = sum(col_dims)
    out = [[ring.zero] * n for _ in range(m)]
    i0 = 0
    for bi, rd in enumerate(row_dims):
        j0 = 0
        for bj, cd in enumerate(col_dims):
            blk = grid[bi][bj]
            if blk is not None:
                if blk.shape != (rd, cd):
                    raise ValueError("block (%d,%d) has shape %r, expected %r"
                                     % (bi, bj, blk.shape, (rd, cd)))
                for i in range(rd):
                    for j in range(cd):
                        out[i0 + i][j0 + j] = blk.rows[i][j]
            j0 += cd
        i0 += rd
    return Matrix(out, (m, n))


def direct_sum(blocks, ring):
    return block([[blocks[i] if i == j else None for j in range(len(blocks))]
                  for i in range(len(blocks))],
                 [b.shape[0] for b in blocks], [b.shape[1] for b in blocks],
                 ring)


# -- scalar coefficient rings -------------------------------------------


class ScalarRing:
    """Z, Q, Z[t,t^-1] or Q[t,t^-1] as a coefficient ring object."""

    def __init__(self, tag):
        if tag not in ("Z", "Q", "ZT", "QT"):
            raise ValueError("unknown scalar ring %r" % (tag,))
        self.tag = tag
        if tag == "Z":
            self.zero, self.one = 0, 1
        elif tag == "Q":
            self.zero, self.one = Fraction(0), Fraction(1)
        else:
            self.zero, self.one = lp(0), lp(1)

    @property
    def snf_tag(self):
        # ring used by the SNF engine; Z[t,t^-1] homology is computed
        # rationally (the package's PID levels are Z, Q, Q[t,t^-1])
        return {"Z": "Z", "Q": "Q", "ZT": "QT", "QT": "QT"}[self.tag]

    def is_zero(self, x):
        if isinstance(x, LaurentPoly):
            return x.is_zero()
        return x == 0

    def involute(self, x):
        if isinstance(x, LaurentPoly):
            return x.involute()
        return x

    def coerce(self, x):
        if self.tag in ("ZT", "QT"):
            return lp(x)
        if self.tag == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise TypeError("non-integer in Z matrix")
                return int(x)
            return int(x)
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, ScalarRing) and other.tag == self.tag

    def __hash__(self):
        return hash(("ScalarRing", self.tag))

    def __repr__(self):
        return "ScalarRing(%r)" % (self.tag,)


Z = ScalarRing("Z")
Q = ScalarRing("Q")
ZT = ScalarRing("ZT")
QT = ScalarRing("QT")
