"""Degreewise bases, normal forms and multiplication for ``kQ/I``.

Degree ``n`` of ``e_z A e_x`` is built as a quotient of ``(arrows into z) x
basis(n-1, x, .)`` by the image of ``I_2 . A_{n-2}``.  This never enumerates
all length-``n`` paths, so locally finite algebras such as polynomial rings
stay cheap; the brute-force ideal in :func:`koszul.quiver.ideal_component`
serves as the oracle.

Elements are :class:`Elem` values: a degree, a source and target vertex, and
coordinates in the standard-monomial basis.
"""

from __future__ import annotations

from .linalg import Matrix, Subspace


class Elem:
    """Homogeneous element of ``e_tgt A_deg e_src`` in standard coordinates."""

    __slots__ = ("algebra", "deg", "src", "tgt", "coords")

    def __init__(self, algebra, deg, src, tgt, coords):
        self.algebra = algebra
        self.deg = deg
        self.src = src
        self.tgt = tgt
        self.coords = tuple(coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other):
        if (self.deg, self.src, self.tgt) != (other.deg, other.src, other.tgt):
            raise ValueError("elements live in different blocks")

    def __add__(self, other):
        self._check(other)
        red = self.algebra.field.reduce
        return Elem(self.algebra, self.deg, self.src, self.tgt,
                    [red(a + b) for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        neg = self.algebra.field.neg
        return Elem(self.algebra, self.deg, self.src, self.tgt, [neg(a) for a in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        f = self.algebra.field
        c = f(c)
        return Elem(self.algebra, self.deg, self.src, self.tgt, [f.reduce(c * a) for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Elem):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, Elem):
            return NotImplemented
        return (self.deg, self.src, self.tgt, self.coords) == (other.deg, other.src, other.tgt, other.coords)

    def __hash__(self):
        return hash((self.deg, self.src, self.tgt, self.coords))

    def terms(self):
        basis = self.algebra.basis(self.deg, self.src, self.tgt)
        return [(p, c) for p, c in zip(basis, self.coords) if c != 0]

    def __repr__(self):
        f = self.algebra.field
        parts = []
        for p, c in self.terms():
            word = "*".join(p) if p else f"e_{self.src}"
            parts.append(word if c == 1 else f"{f.format(c)}*{word}")
        return " + ".join(parts) if parts else "0"


class HorizonRequired(ValueError):
    """Raised when a locally finite algebra would need infinite materialization."""


class GradedAlgebra:
    """Lazy graded view of a quadratic presentation.

    ``_basis[n][(x, z)]`` is the sorted list of standard monomials (paths) of
    ``e_z A_n e_x``; ``_left[n][(name, x)]`` is the matrix of left
    multiplication by an arrow from degree ``n`` to ``n + 1``.
    """

    PROBE_DEGREE = 40
    PROBE_SIZE = 500

    def __init__(self, presentation):
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.field = presentation.field
        self.vertices = self.quiver.vertices
        self._basis = []
        self._index = []
        self._nf = []  # per degree: {(x,z): (proj matrix, columns)}
        self._left = []
        self._mult_cache = {}
        self._top = None
        self._build_degree0()

    def __repr__(self):
        return f"GradedAlgebra({self.presentation.name!r})"

    @property
    def name(self):
        return self.presentation.name

    # -- construction ----------------------------------------------------

    def _build_degree0(self):
        b = {(x, x): [()] for x in self.vertices}
        self._basis.append(b)
        self._index.append({k: {p: i for i, p in enumerate(v)} for k, v in b.items()})
        self._nf.append({})

    def ensure(self, n):
        if n < len(self._basis):
            return
        while len(self._basis) <= n:
            self._extend()

    def _extend(self):
        n = len(self._basis)
        Q = self.quiver
        field = self.field
        prev = self._basis[n - 1]
        basis_n, nf_n = {}, {}
        left = {}
        for x in self.vertices:
            for z in self.vertices:
                cols = []
                for a in Q.arrows_to(z):
                    for j, m in enumerate(prev.get((x, a.source), ())):
                        cols.append((a.name, j))
                if not cols:
                    continue
                col_index = {c: i for i, c in enumerate(cols)}
                rel_vecs = []
                if n >= 2:
                    pp = self._basis[n - 2]
                    for (u, w), sub in self.presentation.relations.items():
                        if w != z:
                            continue
                        rpaths = Q.paths(2, u, w)
                        for mi in range(len(pp.get((x, u), ()))):
                            for row in sub.basis.rows:
                                v = [field.zero] * len(cols)
                                for (outer, inner), c in zip(rpaths, row):
                                    if c == 0:
                                        continue
                                    # inner * m lands in degree n-1
                                    Lin = self._left[n - 2][(inner, x)]
                                    col = Lin.column(mi)
                                    for j, cj in enumerate(col):
                                        if cj != 0:
                                            k = col_index[(outer, j)]
                                            v[k] = field.reduce(v[k] + c * cj)
                                rel_vecs.append(v)
                rel = Subspace(field, len(cols), rel_vecs)
                proj, _ = rel.complement_data()
                free = [c for c in range(len(cols)) if c not in set(rel.pivots)]
                if not free:
                    basis_n[(x, z)] = []
                else:
                    mons = []
                    for c in free:
                        a, j = cols[c]
                        y = Q.arrow(a).source
                        mons.append((a,) + prev[(x, y)][j])
                    basis_n[(x, z)] = mons
                nf_n[(x, z)] = (proj, cols)
        # drop empty blocks
        basis_n = {k: v for k, v in basis_n.items() if v}
        self._basis.append(basis_n)
        self._index.append({k: {p: i for i, p in enumerate(v)} for k, v in basis_n.items()})
        self._nf.append(nf_n)
        # left multiplication matrices from degree n-1 to n
        for a in Q.arrows:
            for x in self.vertices:
                src_dim = len(prev.get((x, a.source), ()))
                tgt_dim = len(basis_n.get((x, a.target), ()))
                L = Matrix.zeros(field, tgt_dim, src_dim)
                if src_dim and tgt_dim:
                    proj, cols = nf_n[(x, a.target)]
                    for j in range(src_dim):
                        c = cols.index((a.name, j))
                        for i in range(tgt_dim):
                            L.rows[i][j] = proj.rows[i][c]
                left[(a.name, x)] = L
        if len(self._left) < n:
            self._left.append(left)
        else:
            self._left[n - 1] = left

    # -- queries -----------------------------------------------------------

    def basis(self, n, x, z):
        """Standard monomials (paths) spanning ``e_z A_n e_x``."""
        if n < 0:
            return []
        self.ensure(n)
        return self._basis[n].get((x, z), [])

    def dim(self, n, x, z):
        return len(self.basis(n, x, z))

    def degree_dims(self, n):
        """``{(x, z): dim}`` for degree ``n``."""
        return {(x, z): self.dim(n, x, z) for x in self.vertices for z in self.vertices}

    def total_dim(self, n):
        self.ensure(n)
        return sum(len(v) for v in self._basis[n].values())

    def left_matrix(self, arrow, n, x):
        """Matrix of ``m -> arrow * m`` from ``e_s A_n e_x`` to ``e_t A_{n+1} e_x``."""
        self.ensure(n + 1)
        return self._left[n][(arrow, x)]

    def top_degree(self):
        """Largest nonzero degree, or ``None`` if none is found within the probe.

        A zero degree forces all higher degrees to vanish, since the algebra
        is generated in degree one.
        """
        if self._top is not None:
            return self._top if self._top >= 0 else None
        n = 0
        while n <= self.PROBE_DEGREE:
            if self.total_dim(n + 1) == 0:
                self._top = n
                return n
            if self.total_dim(n + 1) > self.PROBE_SIZE:
                break
            n += 1
        self._top = -1
        return None

    @property
    def is_finite_dimensional(self):
        return self.top_degree() is not None

    def max_degree(self, horizon=None):
        """Top degree for finite algebras, else the required ``horizon``."""
        top = self.top_degree()
        if top is not None:
            return top
        if horizon is None:
            raise HorizonRequired(f"{self.name} is not finite-dimensional; a horizon is required")
        return horizon

    def hilbert_series(self, N):
        """List of ``{(x, z): dim e_z A_n e_x}`` for ``n = 0..N``."""
        return [self.degree_dims(n) for n in range(N + 1)]

    # -- elements ----------------------------------------------------------

    def zero(self, n, x, z):
        return Elem(self, n, x, z, [self.field.zero] * self.dim(n, x, z))

    def idempotent(self, x):
        return Elem(self, 0, x, x, [self.field.one])

    def basis_elem(self, n, x, z, i):
        v = [self.field.zero] * self.dim(n, x, z)
        v[i] = self.field.one
        return Elem(self, n, x, z, v)

    def basis_elems(self, n, x, z):
        return [self.basis_elem(n, x, z, i) for i in range(self.dim(n, x, z))]

    def arrow_elem(self, name):
        a = self.quiver.arrow(name)
        return self.path_elem((name,), a.source)

    def path_coords(self, path, x):
        """Normal-form coordinates of a path starting at ``x``."""
        self.quiver.path_ends(path, x)
        vec = [self.field.one]
        for k, a in enumerate(reversed(path)):
            vec = self.left_matrix(a, k, x).apply(vec)
        return vec

    def path_elem(self, path, x=None):
        src, tgt = self.quiver.path_ends(path, x)
        return Elem(self, len(path), src, tgt, self.path_coords(path, src))

    def normal_form(self, combo, n, x, z):
        """Coordinates of a linear combination ``{path: coef}`` of length-``n`` paths."""
        field = self.field
        out = [field.zero] * self.dim(n, x, z)
        for p, c in combo.items():
            if len(p) != n or self.quiver.path_ends(p, x) != (x, z):
                raise ValueError(f"path {p} is not a length-{n} path {x}->{z}")
            v = self.path_coords(p, x)
            out = [field.reduce(a + field(c) * b) for a, b in zip(out, v)]
        return out

    def elem(self, combo, n, x, z):
        return Elem(self, n, x, z, self.normal_form(combo, n, x, z))

    def left_path_matrix(self, path, n, x):
        """Matrix of left multiplication by a path on ``e_s A_n e_x``."""
        mats = []
        for k, a in enumerate(reversed(path)):
            mats.append(self.left_matrix(a, n + k, x))
        if not mats:
            raise ValueError("use the identity for the trivial path")
        out = mats[0]
        for m in mats[1:]:
            out = m @ out
        return out

    def mult_table(self, a, y, z, b, x):
        """Products of basis elements: ``table[i]`` is the matrix of ``u_i * -``.

        ``u_i`` runs over the basis of ``e_z A_a e_y`` and acts from
        ``e_y A_b e_x`` to ``e_z A_{a+b} e_x``.
        """
        key = (a, y, z, b, x)
        table = self._mult_cache.get(key)
        if table is None:
            table = []
            dim_b = self.dim(b, x, y)
            dim_ab = self.dim(a + b, x, z)
            for path in self.basis(a, y, z):
                if not path:
                    table.append(Matrix.identity(self.field, dim_b))
                elif dim_b == 0 or dim_ab == 0:
                    table.append(Matrix.zeros(self.field, dim_ab, dim_b))
                else:
                    table.append(self.left_path_matrix(path, b, x))
            self._mult_cache[key] = table
        return table

    def multiply(self, u: Elem, v: Elem) -> Elem:
        """``u * v`` (apply ``v`` first); zero when the blocks do not compose."""
        n = u.deg + v.deg
        if v.tgt != u.src:
            return self.zero(n, v.src, u.tgt)
        field = self.field
        out = [field.zero] * self.dim(n, v.src, u.tgt)
        if not out:
            return Elem(self, n, v.src, u.tgt, out)
        table = self.mult_table(u.deg, u.src, u.tgt, v.deg, v.src)
        vc = list(v.coords)
        for ci, Mi in zip(u.coords, table):
            if ci == 0:
                continue
            w = Mi.apply(vc)
            out = [field.reduce(o + ci * wi) for o, wi in zip(out, w)]
        return Elem(self, n, v.src, u.tgt, out)

    def right_mult_matrix(self, v: Elem, a, z):
        """Matrix of ``u -> u * v`` on ``e_z A_a e_{v.tgt}``."""
        y, x = v.tgt, v.src
        rows_dim = self.dim(a + v.deg, x, z)
        table = self.mult_table(a, y, z, v.deg, x)
        cols = [Mi.apply(list(v.coords)) for Mi in table]
        return Matrix.from_columns(self.field, cols, rows_dim)

    def left_mult_matrix(self, u: Elem, b, x):
        """Matrix of ``w -> u * w`` on ``e_{u.src} A_b e_x``."""
        field = self.field
        table = self.mult_table(u.deg, u.src, u.tgt, b, x)
        out = Matrix.zeros(field, self.dim(u.deg + b, x, u.tgt), self.dim(b, x, u.src))
        for ci, Mi in zip(u.coords, table):
            if ci != 0:
                out = out + Mi.scale(ci)
        return out
