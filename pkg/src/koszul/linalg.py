"""Exact linear algebra over the rationals and prime fields.

Scalars over Q are :class:`fractions.Fraction`; scalars over GF(p) are plain
``int`` residues in ``range(p)``.  Matrices are dense lists of rows and are
treated as immutable once built.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Either the rationals (``Field()``) or GF(p) (``Field(p)``)."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p >= 2**31:
                raise ValueError("prime fields are limited to p < 2^31")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x):
        """Coerce an int, Fraction or string into the field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def parse(self, s: str):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/")
            return self(Fraction(int(num), int(den)))
        return self(int(s))

    def format(self, x) -> str:
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x) % self.p)

    def reduce(self, x):
        return x if self.p is None else x % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def neg(self, x):
        return -x if self.p is None else (-x) % self.p

    def random(self, rng, bound: int = 3):
        """A random scalar; over Q an integer in [-bound, bound]."""
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"GF({self.p})"


QQ = Field()


class Matrix:
    """Dense matrix over a :class:`Field`.  ``rows`` is a list of lists."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        self.field = field
        self.rows = [[field(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def _raw(cls, field, rows, ncols):
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def from_columns(cls, field, cols, nrows):
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls._raw(field, rows, len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self):
        rows = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return Matrix._raw(self.field, rows, self.nrows)

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols} over {self.field}>[{body}]"

    def __add__(self, other):
        assert self.shape == other.shape, (self.shape, other.shape)
        red = self.field.reduce
        rows = [[red(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix._raw(self.field, rows, self.ncols)

    def __neg__(self):
        neg = self.field.neg
        return Matrix._raw(self.field, [[neg(a) for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        red = self.field.reduce
        return Matrix._raw(self.field, [[red(c * a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        red = self.field.reduce
        zero = self.field.zero
        out = []
        ocols = other.ncols
        orows = other.rows
        for r in self.rows:
            acc = [zero] * ocols
            for k, a in enumerate(r):
                if a == 0:
                    continue
                ok = orows[k]
                for j in range(ocols):
                    b = ok[j]
                    if b != 0:
                        acc[j] += a * b
            out.append([red(x) for x in acc])
        return Matrix._raw(self.field, out, ocols)

    def apply(self, vec):
        """Matrix times column vector (given as a list)."""
        red = self.field.reduce
        zero = self.field.zero
        out = []
        for r in self.rows:
            s = zero
            for a, b in zip(r, vec):
                if a != 0 and b != 0:
                    s += a * b
            out.append(red(s))
        return out

    def submatrix(self, rows, cols):
        return Matrix._raw(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def rank(self):
        return len(rref(self)[1])


def hstack(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    nrows = mats[0].nrows
    rows = [sum((m.rows[i] for m in mats), []) for i in range(nrows)]
    return Matrix._raw(mats[0].field, rows, sum(m.ncols for m in mats))


def vstack(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    rows = [list(r) for m in mats for r in m.rows]
    return Matrix._raw(mats[0].field, rows, mats[0].ncols)


def block_direct_sum(mats: Sequence[Matrix], field: Field | None = None) -> Matrix:
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, 0, 0)
    field = mats[0].field
    out = Matrix.zeros(field, sum(m.nrows for m in mats), sum(m.ncols for m in mats))
    r0 = c0 = 0
    for m in mats:
        for i in range(m.nrows):
            out.rows[r0 + i][c0:c0 + m.ncols] = m.rows[i]
        r0 += m.nrows
        c0 += m.ncols
    return out


def kronecker_product(a: Matrix, b: Matrix) -> Matrix:
    red = a.field.reduce
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([red(x * y) for x in ra for y in rb])
    return Matrix._raw(a.field, rows, a.ncols * b.ncols)


def _rref_rows(field: Field, rows: list[list], ncols: int):
    """In-place reduced row echelon form.  Returns (nonzero rows, pivots)."""
    red = field.reduce
    inv = field.inv
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        s = inv(prow[c])
        if s != 1:
            prow = rows[r] = [red(x * s) for x in prow]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    ri = rows[i]
                    rows[i] = [red(x - f * y) if y != 0 else x for x, y in zip(ri, prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, and the pivot columns."""
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.rows], m.ncols)
    return Matrix._raw(m.field, rows, m.ncols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def _null_space_rows(field, rref_rows, pivots, ncols):
    piv_set = set(pivots)
    free = [c for c in range(ncols) if c not in piv_set]
    basis = []
    neg = field.neg
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(rref_rows, pivots):
            if row[f] != 0:
                v[p] = neg(row[f])
        basis.append(v)
    return basis


def kernel(m: Matrix) -> "Subspace":
    """Right null space ``{v : m v = 0}``."""
    rows, pivots = rref(m)
    basis = _null_space_rows(m.field, rows.rows, pivots, m.ncols)
    return Subspace(m.field, m.ncols, basis)


def kernel_columns(m: Matrix) -> list[list]:
    """Null space basis vectors (not normalised to rref), cheaper than :func:`kernel`."""
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.rows], m.ncols)
    return _null_space_rows(m.field, rows, pivots, m.ncols)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """A particular solution ``X`` of ``a X = b``, or ``None`` if inconsistent."""
    if a.nrows != b.nrows:
        raise ValueError("row mismatch")
    field = a.field
    aug = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    rows, pivots = _rref_rows(field, aug, a.ncols + b.ncols)
    if any(p >= a.ncols for p in pivots):
        return None
    x = Matrix.zeros(field, a.ncols, b.ncols)
    for row, p in zip(rows, pivots):
        x.rows[p] = list(row[a.ncols:])
    return x


class Subspace:
    """A subspace of ``field^ambient_dim`` stored by an rref row basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.ambient_dim = ambient_dim
        rows = [[field(x) for x in v] for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        rows, pivots = _rref_rows(field, rows, ambient_dim)
        self.basis = Matrix._raw(field, rows, ambient_dim)
        self.pivots = pivots

    @classmethod
    def full(cls, field, n):
        return cls(field, n, Matrix.identity(field, n).rows)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self):
        return [list(r) for r in self.basis.rows]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.field == other.field
                and self.basis.rows == other.basis.rows)

    def __hash__(self):
        return hash((self.ambient_dim, tuple(tuple(r) for r in self.basis.rows)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.basis.rows})"

    def reduce(self, v):
        """Reduce ``v`` modulo the subspace (clears pivot coordinates)."""
        red = self.field.reduce
        v = list(v)
        for row, p in zip(self.basis.rows, self.pivots):
            c = v[p]
            if c != 0:
                v = [red(x - c * y) if y != 0 else x for x, y in zip(v, row)]
        return v

    def __contains__(self, v):
        return all(x == 0 for x in self.reduce(v))

    def coordinates(self, v):
        """Coordinates of ``v`` in the rref basis; ``ValueError`` if not a member."""
        if v not in self:
            raise ValueError("vector not in subspace")
        return [v[p] for p in self.pivots]

    def __add__(self, other):
        assert self.ambient_dim == other.ambient_dim
        return Subspace(self.field, self.ambient_dim, self.vectors() + other.vectors())

    def annihilator(self) -> "Subspace":
        """Vectors pairing to zero with every basis vector under the dot product."""
        basis = _null_space_rows(self.field, self.basis.rows, self.pivots, self.ambient_dim)
        return Subspace(self.field, self.ambient_dim, basis)

    def intersection(self, other):
        return (self.annihilator() + other.annihilator()).annihilator()

    def is_subspace_of(self, other):
        return all(v in other for v in self.basis.rows)

    def complement_data(self):
        """``(proj, lift)`` with ``proj`` killing the subspace and ``proj @ lift = 1``.

        The quotient basis is the set of unit vectors at non-pivot columns.
        """
        field = self.field
        n = self.ambient_dim
        piv = set(self.pivots)
        free = [c for c in range(n) if c not in piv]
        proj = Matrix.zeros(field, len(free), n)
        for k, f in enumerate(free):
            proj.rows[k][f] = field.one
        neg = field.neg
        for row, p in zip(self.basis.rows, self.pivots):
            for k, f in enumerate(free):
                if row[f] != 0:
                    proj.rows[k][p] = neg(row[f])
        lift = Matrix.zeros(field, n, len(free))
        for k, f in enumerate(free):
            lift.rows[f][k] = field.one
        return proj, lift


def annihilator(s: Subspace) -> Subspace:
    return s.annihilator()


def random_matrix(field: Field, nrows: int, ncols: int, rng, density: float = 1.0) -> Matrix:
    rows = [[field.random(rng) if rng.random() < density else field.zero for _ in range(ncols)]
            for _ in range(nrows)]
    return Matrix._raw(field, rows, ncols)
