"""Finite-dimensional graded representations of a bound quiver.

A module ``M`` over ``A = kQ/I`` stores, for every vertex ``x`` and degree
``n``, the dimension of ``M_n(x)``, and for every arrow ``a: s -> t`` the
matrix ``M(a)_n : M_n(s) -> M_{n+1}(t)``.  Arrows raise degree by one.

Shift convention: ``M<i>_n = M_{n+i}``, so ``S_x<r>`` sits in degree ``-r``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import HorizonRequired
from .linalg import Matrix, Subspace, kernel, rank, vstack


class NotAModule(ValueError):
    pass


class NotAMorphism(ValueError):
    pass


class GradedModule:
    def __init__(self, algebra, dims, action=None, check=True, name=None):
        self.algebra = algebra
        self.field = algebra.field
        self.quiver = algebra.quiver
        self.dims = {k: d for k, d in dims.items() if d}
        for (x, _), d in self.dims.items():
            if x not in self.quiver.vertices:
                raise NotAModule(f"unknown vertex {x!r}")
            if d < 0:
                raise NotAModule("negative dimension")
        self.action = {}
        for (a, n), m in (action or {}).items():
            arr = self.quiver.arrow(a)
            shape = (self.dim(arr.target, n + 1), self.dim(arr.source, n))
            if m.shape != shape:
                raise NotAModule(f"action of {a} in degree {n} has shape {m.shape}, expected {shape}")
            if shape[0] and shape[1] and not m.is_zero():
                self.action[(a, n)] = m
        self.name = name
        self._path_cache = {}
        if check:
            bad = self.relation_violation()
            if bad is not None:
                raise NotAModule(f"relation {bad[0]} fails in degree {bad[1]}")

    # -- basic data --------------------------------------------------------

    def dim(self, x, n):
        return self.dims.get((x, n), 0)

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def is_zero(self):
        return not self.dims

    def degrees(self):
        """Sorted list of degrees carrying a nonzero space."""
        return sorted({n for _, n in self.dims})

    def degree_range(self):
        ds = self.degrees()
        return (ds[0], ds[-1]) if ds else None

    def act(self, a, n) -> Matrix:
        m = self.action.get((a, n))
        if m is None:
            arr = self.quiver.arrow(a)
            return Matrix.zeros(self.field, self.dim(arr.target, n + 1), self.dim(arr.source, n))
        return m

    def path_action(self, path, x, n) -> Matrix:
        """Matrix of a path starting at ``x`` on ``M_n(x)``."""
        key = (path, x, n)
        out = self._path_cache.get(key)
        if out is None:
            if not path:
                out = Matrix.identity(self.field, self.dim(x, n))
            else:
                inner = self.path_action(path[1:], x, n)
                out = self.act(path[0], n + len(path) - 1) @ inner
            self._path_cache[key] = out
        return out

    def relation_violation(self):
        """``(relation, degree)`` for the first relation not annihilating ``M``."""
        if not self.dims:
            return None
        lo, hi = self.degree_range()
        P = self.algebra.presentation
        for x, z, combo in P.relation_vectors():
            for n in range(lo, hi - 1):
                if not self.dim(x, n) or not self.dim(z, n + 2):
                    continue
                total = Matrix.zeros(self.field, self.dim(z, n + 2), self.dim(x, n))
                for p, c in combo.items():
                    total = total + self.path_action(p, x, n).scale(c)
                if not total.is_zero():
                    return combo, n
        return None

    def __eq__(self, other):
        if not isinstance(other, GradedModule):
            return NotImplemented
        return (self.algebra is other.algebra and self.dims == other.dims
                and self.action == other.action)

    def __hash__(self):
        return hash(tuple(sorted(self.dims.items())))

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<GradedModule {label}over {self.algebra.name}: {self.dimension_table()}>"

    def dimension_table(self):
        parts = []
        for n in self.degrees():
            row = ",".join(f"{x}:{self.dim(x, n)}" for x in self.quiver.vertices if self.dim(x, n))
            parts.append(f"{n}[{row}]")
        return " ".join(parts) if parts else "0"

    def dimension_vector(self):
        return dict(sorted(self.dims.items(), key=lambda kv: (kv[0][1], self.quiver.vertices.index(kv[0][0]))))

    def keys(self):
        """Nonzero ``(vertex, degree)`` blocks in a canonical order."""
        idx = {v: i for i, v in enumerate(self.quiver.vertices)}
        return sorted(self.dims, key=lambda k: (k[1], idx[k[0]]))

    # -- constructions -----------------------------------------------------

    def shift(self, i):
        """``M<i>``: the space in degree ``n`` is ``M_{n+i}``."""
        if i == 0:
            return self
        dims = {(x, n - i): d for (x, n), d in self.dims.items()}
        action = {(a, n - i): m for (a, n), m in self.action.items()}
        name = f"{self.name}<{i}>" if self.name else None
        return GradedModule(self.algebra, dims, action, check=False, name=name)

    def identity(self):
        return ModuleMorphism(self, self, {k: Matrix.identity(self.field, d) for k, d in self.dims.items()},
                              check=False)

    def zero_map_to(self, other):
        return ModuleMorphism(self, other, {}, check=False)


def zero_module(algebra):
    return GradedModule(algebra, {}, {}, check=False, name="0")


class ModuleMorphism:
    """Degree-preserving morphism given by blocks ``f[(x, n)]``."""

    def __init__(self, src: GradedModule, tgt: GradedModule, blocks, check=True):
        self.src = src
        self.tgt = tgt
        self.field = src.field
        self.blocks = {}
        for k, m in blocks.items():
            shape = (tgt.dim(*k), src.dim(*k))
            if m.shape != shape:
                raise NotAMorphism(f"block {k} has shape {m.shape}, expected {shape}")
            if shape[0] and shape[1] and not m.is_zero():
                self.blocks[k] = m
        if check:
            bad = self.square_violation()
            if bad is not None:
                raise NotAMorphism(f"square for arrow {bad[0]} in degree {bad[1]} does not commute")

    def block(self, x, n):
        m = self.blocks.get((x, n))
        if m is None:
            return Matrix.zeros(self.field, self.tgt.dim(x, n), self.src.dim(x, n))
        return m

    def square_violation(self):
        for a in self.src.quiver.arrows:
            degs = {n for (x, n) in self.src.dims if x == a.source}
            for n in sorted(degs):
                lhs = self.block(a.target, n + 1) @ self.src.act(a.name, n)
                rhs = self.tgt.act(a.name, n) @ self.block(a.source, n)
                if lhs != rhs:
                    return a.name, n
        return None

    def __matmul__(self, other):
        """Composition ``self o other``."""
        blocks = {}
        for k in other.src.dims:
            if k in self.blocks and k in other.blocks:
                blocks[k] = self.blocks[k] @ other.blocks[k]
        return ModuleMorphism(other.src, self.tgt, blocks, check=False)

    def __add__(self, other):
        blocks = dict(self.blocks)
        for k, m in other.blocks.items():
            blocks[k] = blocks[k] + m if k in blocks else m
        return ModuleMorphism(self.src, self.tgt, blocks, check=False)

    def scale(self, c):
        c = self.field(c)
        return ModuleMorphism(self.src, self.tgt, {k: m.scale(c) for k, m in self.blocks.items()}, check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.blocks

    def __eq__(self, other):
        if not isinstance(other, ModuleMorphism):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(tuple(sorted(self.blocks)))

    def is_isomorphism(self):
        if self.src.dims != self.tgt.dims:
            return False
        return all(rank(self.block(*k)) == d for k, d in self.src.dims.items())

    def rank(self):
        return sum(rank(m) for m in self.blocks.values())

    def shift(self, i):
        src, tgt = self.src.shift(i), self.tgt.shift(i)
        return ModuleMorphism(src, tgt, {(x, n - i): m for (x, n), m in self.blocks.items()}, check=False)

    def vector(self):
        """Flattened coordinates over the blocks of ``src`` (canonical order)."""
        out = []
        for k in self.src.keys():
            m = self.block(*k)
            for row in m.rows:
                out.extend(row)
        return out

    def __repr__(self):
        return f"<ModuleMorphism {self.src!r} -> {self.tgt!r}>"


# -- sub- and quotient modules ---------------------------------------------------

def submodule(M: GradedModule, spaces, name=None):
    """Submodule with ``U(x, n) = spaces[(x, n)]``; returns ``(U, inclusion)``.

    ``spaces`` must be closed under the arrow action.
    """
    dims, action, incl = {}, {}, {}
    F = M.field
    spaces = {k: s for k, s in spaces.items() if s.dim}
    for k, s in spaces.items():
        dims[k] = s.dim
        incl[k] = Matrix.from_columns(F, s.basis.rows, M.dim(*k))
    for a in M.quiver.arrows:
        for (x, n), s in spaces.items():
            if x != a.source:
                continue
            t = spaces.get((a.target, n + 1))
            if t is None:
                if not M.act(a.name, n).is_zero() and any(
                        any(c != 0 for c in M.act(a.name, n).apply(v)) for v in s.basis.rows):
                    raise NotAModule("subspace family is not closed under the action")
                continue
            cols = [t.coordinates(M.act(a.name, n).apply(v)) for v in s.basis.rows]
            action[(a.name, n)] = Matrix.from_columns(F, cols, t.dim)
    U = GradedModule(M.algebra, dims, action, check=False, name=name)
    return U, ModuleMorphism(U, M, incl, check=False)


def quotient(M: GradedModule, spaces, name=None):
    """Quotient ``M / U``; returns ``(M/U, projection, lifts)``.

    The quotient basis is the set of non-pivot coordinates of each ``U``
    block, and ``lifts[(x, n)]`` maps quotient coordinates back to ``M``.
    """
    F = M.field
    dims, action, proj, lifts = {}, {}, {}, {}
    for k, d in M.dims.items():
        s = spaces.get(k) or Subspace(F, d)
        p, l = s.complement_data()
        proj[k], lifts[k] = p, l
        dims[k] = d - s.dim
    for (a, n), m in M.action.items():
        arr = M.quiver.arrow(a)
        ks, kt = (arr.source, n), (arr.target, n + 1)
        if dims.get(ks) and dims.get(kt):
            action[(a, n)] = proj[kt] @ m @ lifts[ks]
    Q = GradedModule(M.algebra, dims, action, check=False, name=name)
    return Q, ModuleMorphism(M, Q, proj, check=False), lifts


def generated_spaces(M: GradedModule, generators):
    """Smallest submodule family containing ``generators = {(x, n): [vectors]}``."""
    F = M.field
    spaces = {}
    pending = {}
    for k, vecs in generators.items():
        pending.setdefault(k, []).extend(vecs)
    idx = {v: i for i, v in enumerate(M.quiver.vertices)}
    while pending:
        k = min(pending, key=lambda k: (k[1], idx[k[0]]))
        vecs = pending.pop(k)
        old = spaces.get(k) or Subspace(F, M.dim(*k))
        new = Subspace(F, M.dim(*k), old.vectors() + [list(v) for v in vecs])
        if new.dim == old.dim:
            continue
        spaces[k] = new
        x, n = k
        for a in M.quiver.arrows_from(x):
            m = M.act(a.name, n)
            if m.nrows == 0:
                continue
            imgs = [m.apply(v) for v in new.basis.rows]
            imgs = [v for v in imgs if any(c != 0 for c in v)]
            if imgs:
                pending.setdefault((a.target, n + 1), []).extend(imgs)
    return spaces


def radical_spaces(M: GradedModule):
    F = M.field
    out = {}
    for (x, n), d in M.dims.items():
        vecs = []
        for a in M.quiver.arrows_to(x):
            m = M.act(a.name, n - 1)
            vecs.extend(m.columns())
        out[(x, n)] = Subspace(F, d, vecs)
    return out


def socle_spaces(M: GradedModule):
    """``soc(x, n)``: intersection of the kernels of all arrows leaving ``x``."""
    F = M.field
    out = {}
    for (x, n), d in M.dims.items():
        mats = [M.act(a.name, n) for a in M.quiver.arrows_from(x)]
        mats = [m for m in mats if m.nrows]
        if mats:
            out[(x, n)] = kernel(vstack(mats))
        else:
            out[(x, n)] = Subspace.full(F, d)
    return out


def radical(M):
    return submodule(M, radical_spaces(M), name=f"rad {M.name}" if M.name else None)


def socle(M):
    return submodule(M, socle_spaces(M), name=f"soc {M.name}" if M.name else None)


def top(M):
    Q, p, _ = quotient(M, radical_spaces(M), name=f"top {M.name}" if M.name else None)
    return Q, p


def kernel_module(f: ModuleMorphism):
    spaces = {k: kernel(f.block(*k)) for k in f.src.dims}
    return submodule(f.src, spaces)


def image_spaces(f: ModuleMorphism):
    F = f.field
    return {k: Subspace(F, d, f.block(*k).columns()) for k, d in f.tgt.dims.items()}


def image_module(f: ModuleMorphism):
    return submodule(f.tgt, image_spaces(f))


def cokernel_module(f: ModuleMorphism):
    Q, p, _ = quotient(f.tgt, image_spaces(f))
    return Q, p


def subquotient(M: GradedModule, Z, B):
    """``Z / B`` for nested submodule families ``B <= Z`` of ``M``."""
    U, inc = submodule(M, Z)
    F = M.field
    inner = {}
    for k, s in B.items():
        if s.dim and k in U.dims:
            z = Z[k]
            inner[k] = Subspace(F, U.dims[k], [z.coordinates(v) for v in s.basis.rows])
    Q, _, _ = quotient(U, inner)
    return Q


def direct_sum(modules, name=None):
    """``(M, inclusions, projections)`` for the direct sum of ``modules``."""
    modules = list(modules)
    if not modules:
        raise ValueError("direct sum of nothing")
    A = modules[0].algebra
    F = A.field
    keys = set()
    for m in modules:
        keys |= set(m.dims)
    dims = {k: sum(m.dim(*k) for m in modules) for k in keys}
    action = {}
    for a in A.quiver.arrows:
        for (x, n) in keys:
            if x != a.source or not dims.get((a.target, n + 1)):
                continue
            action[(a.name, n)] = _block_diag(F, [m.act(a.name, n) for m in modules])
    S = GradedModule(A, dims, action, check=False, name=name)
    incs, projs = [], []
    for i, m in enumerate(modules):
        ib, pb = {}, {}
        for k in keys:
            off = sum(mm.dim(*k) for mm in modules[:i])
            d = m.dim(*k)
            if not d:
                continue
            inc = Matrix.zeros(F, dims[k], d)
            pr = Matrix.zeros(F, d, dims[k])
            for j in range(d):
                inc.rows[off + j][j] = F.one
                pr.rows[j][off + j] = F.one
            ib[k], pb[k] = inc, pr
        incs.append(ModuleMorphism(m, S, ib, check=False))
        projs.append(ModuleMorphism(S, m, pb, check=False))
    return S, incs, projs


def _block_diag(F, mats):
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    out = Matrix.zeros(F, nr, nc)
    r = c = 0
    for m in mats:
        for i, row in enumerate(m.rows):
            out.rows[r + i][c:c + m.ncols] = row
        r += m.nrows
        c += m.ncols
    return out


def block_morphism(src_modules, tgt_modules, entries, src=None, tgt=None):
    """Morphism between direct sums from component maps ``entries[(i, j)]: src_j -> tgt_i``."""
    S = src or direct_sum(src_modules)[0]
    T = tgt or direct_sum(tgt_modules)[0]
    F = S.field
    blocks = {}
    for k in S.dims:
        if not T.dim(*k):
            continue
        m = Matrix.zeros(F, T.dim(*k), S.dim(*k))
        for (i, j), f in entries.items():
            b = f.blocks.get(k)
            if b is None:
                continue
            r0 = sum(t.dim(*k) for t in tgt_modules[:i])
            c0 = sum(s.dim(*k) for s in src_modules[:j])
            for r, row in enumerate(b.rows):
                for c, v in enumerate(row):
                    if v != 0:
                        m.rows[r0 + r][c0 + c] = F.reduce(m.rows[r0 + r][c0 + c] + v)
        blocks[k] = m
    return ModuleMorphism(S, T, blocks, check=False)


# -- canonical modules -----------------------------------------------------------

def simple(A, x, r=0):
    """``S_x<r>``: one-dimensional at vertex ``x`` in degree ``-r``."""
    return GradedModule(A, {(x, -r): 1}, {}, check=False, name=f"S_{x}<{r}>")


class ProjectiveSum:
    """``P = sum_g P_{x_g}<r_g>`` with a fixed block layout.

    The block of ``P`` at ``(z, m)`` is the concatenation, over generators
    ``g = (y, b)``, of the basis of ``e_z A_{m+b} e_y``.  ``cap`` bounds the
    internal degree (a quotient truncation); it is required when ``A`` is
    not finite-dimensional.
    """

    def __init__(self, algebra, gens, cap=None):
        self.algebra = algebra
        self.gens = [(str(x), int(r)) for x, r in gens]
        if cap is None and not algebra.is_finite_dimensional and self.gens:
            raise HorizonRequired(f"projectives over {algebra.name} need a degree cap")
        self.cap = cap
        self._module = None
        self._layout = {}

    def path_degrees(self, g):
        """Range of path lengths materialized for generator ``g``."""
        A = self.algebra
        x, r = self.gens[g]
        top = A.top_degree()
        hi = top if top is not None else self.cap + r
        if self.cap is not None:
            hi = min(hi, self.cap + r)
        return range(0, hi + 1)

    def layout(self, z, m):
        """List of ``(g, offset, count)`` for the block ``(z, m)``."""
        key = (z, m)
        if key not in self._layout:
            out, off = [], 0
            if self.cap is None or m <= self.cap:
                for g, (y, b) in enumerate(self.gens):
                    c = self.algebra.dim(m + b, y, z)
                    if c:
                        out.append((g, off, c))
                        off += c
            self._layout[key] = out
        return self._layout[key]

    @property
    def module(self) -> GradedModule:
        if self._module is None:
            self._module = self._build()
        return self._module

    def _build(self):
        A = self.algebra
        F = A.field
        dims = {}
        for g, (y, b) in enumerate(self.gens):
            for n in self.path_degrees(g):
                for z in A.vertices:
                    if A.dim(n, y, z):
                        dims[(z, n - b)] = 0
        for (z, m) in dims:
            dims[(z, m)] = sum(c for _, _, c in self.layout(z, m))
        action = {}
        for a in A.quiver.arrows:
            for (z, m) in list(dims):
                if z != a.source or not dims.get((a.target, m + 1)):
                    continue
                mat = Matrix.zeros(F, dims[(a.target, m + 1)], dims[(z, m)])
                tgt_layout = {g: (off, c) for g, off, c in self.layout(a.target, m + 1)}
                for g, off, c in self.layout(z, m):
                    if g not in tgt_layout:
                        continue
                    y, b = self.gens[g]
                    L = A.left_matrix(a.name, m + b, y)
                    toff, _ = tgt_layout[g]
                    for i, row in enumerate(L.rows):
                        for j, v in enumerate(row):
                            if v != 0:
                                mat.rows[toff + i][off + j] = v
                action[(a.name, m)] = mat
        label = " + ".join(f"P_{x}<{r}>" for x, r in self.gens) or "0"
        return GradedModule(A, dims, action, check=False, name=label)

    def generator_vector(self, g):
        """Coordinates of the generator ``e_x`` of summand ``g`` in its block."""
        x, r = self.gens[g]
        m = -r
        vec = [self.algebra.field.zero] * self.module.dim(x, m)
        for gg, off, c in self.layout(x, m):
            if gg == g:
                vec[off] = self.algebra.field.one  # the trivial path is the only basis element
        return vec

    def map_to(self, M: GradedModule, images):
        """Morphism ``P -> M`` sending generator ``g`` to ``images[g]`` in ``M_{-r}(x)``."""
        F = M.field
        P = self.module
        A = self.algebra
        blocks = {}
        for (z, m), d in P.dims.items():
            if not M.dim(z, m):
                continue
            mat = Matrix.zeros(F, M.dim(z, m), d)
            for g, off, c in self.layout(z, m):
                y, b = self.gens[g]
                vec = images[g]
                n = m + b
                for j, path in enumerate(A.basis(n, y, z)):
                    col = M.path_action(path, y, -b).apply(vec)
                    for i, v in enumerate(col):
                        mat.rows[i][off + j] = v
            blocks[(z, m)] = mat
        return ModuleMorphism(P, M, blocks, check=False)

    def __repr__(self):
        return f"ProjectiveSum({self.gens})"


def projective(A, x, r=0, horizon=None):
    """``P_x<r>``; ``horizon`` caps the path length for infinite algebras."""
    cap = None if horizon is None else horizon - r
    return ProjectiveSum(A, [(x, r)], cap=cap if not A.is_finite_dimensional else None).module


class InjectiveSum:
    """``I = sum_g I_{x_g}<r_g>``; ``I_x<r>`` at ``(z, -n-r)`` is ``D(e_x A_n e_z)``.

    ``floor`` bounds degrees from below (a submodule truncation) and is
    required when ``A`` is not finite-dimensional.
    """

    def __init__(self, algebra, gens, floor=None):
        self.algebra = algebra
        self.gens = [(str(x), int(r)) for x, r in gens]
        if floor is None and not algebra.is_finite_dimensional and self.gens:
            raise HorizonRequired(f"injectives over {algebra.name} need a degree floor")
        self.floor = floor
        self._module = None
        self._layout = {}

    def layout(self, z, m):
        key = (z, m)
        if key not in self._layout:
            out, off = [], 0
            if self.floor is None or m >= self.floor:
                for g, (x, r) in enumerate(self.gens):
                    c = self.algebra.dim(-m - r, z, x)
                    if c:
                        out.append((g, off, c))
                        off += c
            self._layout[key] = out
        return self._layout[key]

    def path_degrees(self, g):
        x, r = self.gens[g]
        top = self.algebra.top_degree()
        hi = top if top is not None else -self.floor - r
        if self.floor is not None:
            hi = min(hi, -self.floor - r)
        return range(0, hi + 1)

    @property
    def module(self):
        if self._module is None:
            self._module = self._build()
        return self._module

    def _build(self):
        A = self.algebra
        F = A.field
        dims = {}
        for g, (x, r) in enumerate(self.gens):
            for n in self.path_degrees(g):
                for z in A.vertices:
                    if A.dim(n, z, x):
                        dims[(z, -n - r)] = 0
        for (z, m) in dims:
            dims[(z, m)] = sum(c for _, _, c in self.layout(z, m))
        action = {}
        for a in A.quiver.arrows:
            alpha = A.arrow_elem(a.name)
            for (z, m) in list(dims):
                if z != a.source or not dims.get((a.target, m + 1)):
                    continue
                mat = Matrix.zeros(F, dims[(a.target, m + 1)], dims[(z, m)])
                tgt_layout = {g: (off, c) for g, off, c in self.layout(a.target, m + 1)}
                for g, off, c in self.layout(z, m):
                    if g not in tgt_layout:
                        continue
                    x, r = self.gens[g]
                    n = -m - r
                    # (a . phi)(u) = phi(u * a) for u in e_x A_{n-1} e_{t(a)}
                    R = A.right_mult_matrix(alpha, n - 1, x)
                    toff, _ = tgt_layout[g]
                    for i, row in enumerate(R.rows):
                        for j, v in enumerate(row):
                            if v != 0:
                                mat.rows[toff + j][off + i] = v
                action[(a.name, m)] = mat
        label = " + ".join(f"I_{x}<{r}>" for x, r in self.gens) or "0"
        return GradedModule(A, dims, action, check=False, name=label)

    def map_from(self, M: GradedModule, functionals):
        """Morphism ``M -> I`` with ``functionals[g]`` a row vector on ``M_{-r}(x)``."""
        F = M.field
        I = self.module
        A = self.algebra
        blocks = {}
        for (z, m), d in M.dims.items():
            if not I.dim(z, m):
                continue
            mat = Matrix.zeros(F, I.dim(z, m), d)
            for g, off, c in self.layout(z, m):
                x, r = self.gens[g]
                phi = functionals[g]
                n = -m - r
                for i, path in enumerate(A.basis(n, z, x)):
                    P = M.path_action(path, z, m)
                    row = [F.reduce(sum(p * q for p, q in zip(phi, col) if p != 0 and q != 0))
                           for col in P.columns()]
                    mat.rows[off + i] = row
            blocks[(z, m)] = mat
        return ModuleMorphism(M, I, blocks, check=False)

    def __repr__(self):
        return f"InjectiveSum({self.gens})"


def injective(A, x, r=0, horizon=None):
    """``I_x<r>``; ``horizon`` caps the path length for infinite algebras."""
    floor = None if horizon is None or A.is_finite_dimensional else -horizon - r
    return InjectiveSum(A, [(x, r)], floor=floor).module


# -- covers and envelopes -------------------------------------------------------

@dataclass
class Cover:
    projective: ProjectiveSum
    epi: ModuleMorphism
    images: list


def projective_cover(M: GradedModule, cap=None) -> Cover:
    """Minimal projective cover: one generator per basis vector of ``top M``."""
    A = M.algebra
    rad = radical_spaces(M)
    gens, images = [], []
    for (x, n) in M.keys():
        s = rad.get((x, n))
        _, lift = s.complement_data()
        for col in lift.columns():
            gens.append((x, -n))
            images.append(col)
    if cap is None and not A.is_finite_dimensional:
        rng = M.degree_range()
        cap = rng[1] if rng else 0
    P = ProjectiveSum(A, gens, cap=None if A.is_finite_dimensional else cap)
    return Cover(P, P.map_to(M, images), images)


@dataclass
class Envelope:
    injective: InjectiveSum
    mono: ModuleMorphism
    functionals: list


def injective_envelope(M: GradedModule, floor=None) -> Envelope:
    """Minimal injective envelope: one summand ``I_x<-n>`` per socle basis vector."""
    A = M.algebra
    F = A.field
    soc = socle_spaces(M)
    gens, funcs = [], []
    for (x, n) in M.keys():
        s = soc[(x, n)]
        for p in s.pivots:
            phi = [F.zero] * M.dim(x, n)
            phi[p] = F.one
            gens.append((x, -n))
            funcs.append(phi)
    if floor is None and not A.is_finite_dimensional:
        rng = M.degree_range()
        floor = rng[0] if rng else 0
    I = InjectiveSum(A, gens, floor=None if A.is_finite_dimensional else floor)
    return Envelope(I, I.map_from(M, funcs), funcs)


# -- Hom spaces ------------------------------------------------------------------

def hom_graded(M: GradedModule, N: GradedModule):
    """Basis of degree-zero morphisms ``M -> N`` (solves the commuting squares)."""
    F = M.field
    keys = [k for k in M.keys() if N.dim(*k)]
    offsets, nv = {}, 0
    for k in keys:
        offsets[k] = nv
        nv += M.dims[k] * N.dims[k]
    if nv == 0:
        return []
    rows = []
    for a in M.quiver.arrows:
        for (x, n) in M.keys():
            if x != a.source:
                continue
            kt = (a.target, n + 1)
            ks = (x, n)
            dt = N.dim(*kt)
            ds = M.dim(*ks)
            if not dt or not ds:
                continue
            Ma = M.act(a.name, n)
            Na = N.act(a.name, n)
            # equation: f_t Ma - Na f_s = 0, entries (i, j) with i < dt, j < ds
            for i in range(dt):
                for j in range(ds):
                    row = {}
                    if kt in offsets:
                        base = offsets[kt]
                        w = M.dim(*kt)
                        for l in range(w):
                            c = Ma.rows[l][j]
                            if c != 0:
                                idx = base + i * w + l
                                row[idx] = row.get(idx, 0) + c
                    if ks in offsets:
                        base = offsets[ks]
                        for l in range(N.dim(*ks)):
                            c = Na.rows[i][l]
                            if c != 0:
                                idx = base + l * ds + j
                                row[idx] = row.get(idx, 0) - c
                    if any(F.reduce(v) != 0 for v in row.values()):
                        dense = [F.zero] * nv
                        for idx, v in row.items():
                            dense[idx] = F.reduce(F(v))
                        rows.append(dense)
    sol = kernel(Matrix(F, rows, nv)) if rows else Subspace.full(F, nv)
    out = []
    for v in sol.basis.rows:
        blocks = {}
        for k in keys:
            base = offsets[k]
            w = M.dims[k]
            h = N.dims[k]
            blocks[k] = Matrix._raw(F, [list(v[base + i * w: base + (i + 1) * w]) for i in range(h)], w)
        out.append(ModuleMorphism(M, N, blocks, check=False))
    return out


def shift_window(M: GradedModule, N: GradedModule):
    """Shifts ``r`` for which ``M`` and ``N<r>`` share a degree."""
    rm, rn = M.degree_range(), N.degree_range()
    if rm is None or rn is None:
        return range(0)
    return range(rn[0] - rm[1], rn[1] - rm[0] + 1)


def hom_total(M: GradedModule, N: GradedModule):
    """``(dim, {r: basis of Hom(M, N<r>)})``, the Hom of the forgotten modules."""
    parts = {}
    for r in shift_window(M, N):
        b = hom_graded(M, N.shift(r))
        if b:
            parts[r] = b
    return sum(len(b) for b in parts.values()), parts


# -- forgetting the grading -----------------------------------------------------

@dataclass
class UngradedRep:
    """A plain quiver representation (total spaces per vertex)."""

    field: object
    quiver: object
    dims: dict
    action: dict


def forget_grading(M: GradedModule) -> UngradedRep:
    """Total space per vertex with degree blocks stacked in increasing degree."""
    F = M.field
    Q = M.quiver
    offs = {}
    dims = {}
    for x in Q.vertices:
        off = 0
        for n in M.degrees():
            offs[(x, n)] = off
            off += M.dim(x, n)
        dims[x] = off
    action = {}
    for a in Q.arrows:
        mat = Matrix.zeros(F, dims[a.target], dims[a.source])
        for (name, n), m in M.action.items():
            if name != a.name:
                continue
            r0 = offs[(a.target, n + 1)]
            c0 = offs[(a.source, n)]
            for i, row in enumerate(m.rows):
                for j, v in enumerate(row):
                    if v != 0:
                        mat.rows[r0 + i][c0 + j] = v
        action[a.name] = mat
    return UngradedRep(F, Q, dims, action)


def ungraded_hom_basis(U: UngradedRep, V: UngradedRep):
    """Basis of representation morphisms ``U -> V`` as ``{x: Matrix}``, solved with no grading."""
    F = U.field
    Q = U.quiver
    offsets, nv = {}, 0
    for x in Q.vertices:
        offsets[x] = nv
        nv += U.dims[x] * V.dims[x]
    if nv == 0:
        return []
    rows = []
    for a in Q.arrows:
        s, t = a.source, a.target
        ds, dt = U.dims[s], V.dims[t]
        Ua, Va = U.action[a.name], V.action[a.name]
        # V(a) f_s - f_t U(a) = 0, f_x stored row-major
        for i in range(dt):
            for j in range(ds):
                row = [F.zero] * nv
                w = U.dims[t]
                for l in range(w):
                    c = Ua.rows[l][j]
                    if c != 0:
                        idx = offsets[t] + i * w + l
                        row[idx] = F.reduce(row[idx] + c)
                for l in range(V.dims[s]):
                    c = Va.rows[i][l]
                    if c != 0:
                        idx = offsets[s] + l * ds + j
                        row[idx] = F.reduce(row[idx] - c)
                rows.append(row)
    sol = kernel(Matrix(F, rows, nv)) if rows else Subspace.full(F, nv)
    out = []
    for v in sol.basis.rows:
        f = {}
        for x in Q.vertices:
            w, h, base = U.dims[x], V.dims[x], offsets[x]
            f[x] = Matrix._raw(F, [list(v[base + i * w: base + (i + 1) * w]) for i in range(h)], w)
        out.append(f)
    return out


def ungraded_hom_dim(U: UngradedRep, V: UngradedRep):
    """Dimension of representation morphisms ``U -> V``, solved with no grading."""
    return len(ungraded_hom_basis(U, V))


# -- isomorphism -----------------------------------------------------------------

def is_isomorphic(M: GradedModule, N: GradedModule, rng=None, trials=32):
    """``True``, ``False`` or ``None`` (undetermined).

    ``False`` only when dimension vectors differ or ``Hom(M, N)`` is too small.
    """
    import random as _random
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    rng = rng or _random.Random(0)
    basis = hom_graded(M, N)
    if not basis:
        return False
    F = M.field
    if not F.is_rational and F.p <= 3 and len(basis) <= 8:
        for coeffs in itertools.product(range(F.p), repeat=len(basis)):
            f = _combine(basis, coeffs, M, N)
            if f.is_isomorphism():
                return True
        return False
    for _ in range(trials):
        coeffs = [F.random(rng, bound=1000) for _ in basis]
        f = _combine(basis, coeffs, M, N)
        if f.is_isomorphism():
            return True
    return None


def _combine(basis, coeffs, M, N):
    f = ModuleMorphism(M, N, {}, check=False)
    for c, b in zip(coeffs, basis):
        if c != 0:
            f = f + b.scale(c)
    return f


# -- random modules --------------------------------------------------------------

def random_module(A, rng, max_gens=2, shift_range=(-1, 1), depth=None, kind=None, max_elements=2):
    """A random module: a truncated projective or injective sum modulo a random submodule.

    ``depth`` caps path lengths (needed for infinite algebras).
    """
    F = A.field
    kind = kind or rng.choice(["projective", "injective"])
    ngens = rng.randint(1, max_gens)
    gens = [(rng.choice(A.vertices), rng.randint(*shift_range)) for _ in range(ngens)]
    if depth is None and not A.is_finite_dimensional:
        depth = 2
    if kind == "projective":
        cap = None if A.is_finite_dimensional else depth - min(r for _, r in gens)
        big = ProjectiveSum(A, gens, cap=cap).module
    else:
        floor = None if A.is_finite_dimensional else -depth - max(r for _, r in gens)
        big = InjectiveSum(A, gens, floor=floor).module
    if big.is_zero():
        return big
    nel = rng.randint(0, max_elements)
    generators = {}
    keys = big.keys()
    for _ in range(nel):
        k = rng.choice(keys)
        vec = [F.random(rng) for _ in range(big.dims[k])]
        generators.setdefault(k, []).append(vec)
    spaces = generated_spaces(big, generators)
    Q, _, _ = quotient(big, spaces)
    return Q
