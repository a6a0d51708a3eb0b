"""Cochain complexes.

Two flavours live here:

* :class:`ModuleComplex` -- explicit graded modules and morphisms, used for
  cohomology, truncations and exactness checks;
* :class:`ProjectiveComplex` -- symbolic complexes whose terms are lists of
  generators ``(x, r)`` standing for ``P_x<r>`` and whose differentials are
  :class:`ProjMap` matrices of algebra elements.

A map ``P_x<a> -> P_y<b>`` is right multiplication by an element of
``e_x A_{b-a} e_y`` (paths ``y -> x``).  Composition is therefore
anti-ordered: ``(g o f)[C, A] = sum_B f[B, A] * g[C, B]``.

Shift conventions: ``X[m]^n = X^{n+m}`` with differential ``(-1)^m d``;
``X<i>`` shifts every term.  ``Tot`` of a commuting double complex uses
``d = d1 + (-1)^p d2``.  ``Cone(f)^n = X^{n+1} + Y^n`` with differential
``[[-d_X, 0], [f, d_Y]]``.
"""

from __future__ import annotations

from .linalg import Matrix, Subspace, kernel, rank
from .modules import (GradedModule, ModuleMorphism, ProjectiveSum, cokernel_module, direct_sum, hom_graded,
                      image_spaces, quotient, subquotient, submodule, zero_module)


class NotAComplex(ValueError):
    pass


class NotAChainMap(ValueError):
    pass


# -- symbolic maps between sums of projectives ----------------------------------

class ProjMap:
    """Map ``sum_j P_{src[j]} -> sum_i P_{tgt[i]}``; ``entries[(i, j)]`` is an :class:`Elem`."""

    __slots__ = ("algebra", "src", "tgt", "entries")

    def __init__(self, algebra, src, tgt, entries=None, check=True):
        self.algebra = algebra
        self.src = list(src)
        self.tgt = list(tgt)
        self.entries = {}
        for (i, j), e in (entries or {}).items():
            if check:
                (x, a), (y, b) = self.src[j], self.tgt[i]
                if (e.deg, e.src, e.tgt) != (b - a, y, x):
                    raise ValueError(f"entry ({i},{j}) must lie in e_{x} A_{b - a} e_{y}")
            if not e.is_zero():
                self.entries[(i, j)] = e

    @classmethod
    def zero(cls, algebra, src, tgt):
        return cls(algebra, src, tgt, {}, check=False)

    @classmethod
    def identity(cls, algebra, gens):
        return cls(algebra, gens, gens, {(i, i): algebra.idempotent(x) for i, (x, _) in enumerate(gens)},
                   check=False)

    def is_zero(self):
        return not self.entries

    def __add__(self, other):
        self._same_shape(other)
        out = dict(self.entries)
        for k, e in other.entries.items():
            out[k] = out[k] + e if k in out else e
        return ProjMap(self.algebra, self.src, self.tgt, out, check=False)

    def scale(self, c):
        if c == 1:
            return self
        return ProjMap(self.algebra, self.src, self.tgt, {k: e.scale(c) for k, e in self.entries.items()},
                       check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def _same_shape(self, other):
        if self.src != other.src or self.tgt != other.tgt:
            raise ValueError("maps between different generator lists")

    def __matmul__(self, other):
        """``self o other`` (``other`` first)."""
        if other.tgt != self.src:
            raise ValueError("maps do not compose")
        A = self.algebra
        by_row = {}
        for (b, a), e in other.entries.items():
            by_row.setdefault(b, []).append((a, e))
        out = {}
        for (c, b), g in self.entries.items():
            for a, f in by_row.get(b, ()):
                prod = A.multiply(f, g)
                if prod.is_zero():
                    continue
                out[(c, a)] = out[(c, a)] + prod if (c, a) in out else prod
        return ProjMap(A, other.src, self.tgt, out, check=False)

    def __eq__(self, other):
        if not isinstance(other, ProjMap):
            return NotImplemented
        return self.src == other.src and self.tgt == other.tgt and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(sorted(self.entries)))

    def degrees(self):
        return {e.deg for e in self.entries.values()}

    def grade_shift(self, i):
        src = [(x, r + i) for x, r in self.src]
        tgt = [(x, r + i) for x, r in self.tgt]
        return ProjMap(self.algebra, src, tgt, self.entries, check=False)

    def with_gens(self, src, tgt):
        return ProjMap(self.algebra, src, tgt, self.entries, check=False)

    def materialize(self, P: ProjectiveSum, Q: ProjectiveSum) -> ModuleMorphism:
        """Module morphism between materialized sums (right multiplication blockwise)."""
        A = self.algebra
        F = A.field
        Pm, Qm = P.module, Q.module
        cols_by_src = {}
        for (i, j), e in self.entries.items():
            cols_by_src.setdefault(j, []).append((i, e))
        blocks = {}
        for (z, m), d in Pm.dims.items():
            if not Qm.dim(z, m):
                continue
            mat = Matrix.zeros(F, Qm.dim(z, m), d)
            tl = {g: off for g, off, _ in Q.layout(z, m)}
            for j, off, c in P.layout(z, m):
                x, a = P.gens[j]
                for i, e in cols_by_src.get(j, ()):
                    if i not in tl:
                        continue
                    R = A.right_mult_matrix(e, m + a, z)
                    toff = tl[i]
                    for r, row in enumerate(R.rows):
                        for s, v in enumerate(row):
                            if v != 0:
                                mat.rows[toff + r][off + s] = F.reduce(mat.rows[toff + r][off + s] + v)
            blocks[(z, m)] = mat
        return ModuleMorphism(Pm, Qm, blocks, check=False)

    def __repr__(self):
        return f"ProjMap({len(self.src)}->{len(self.tgt)}, {len(self.entries)} entries)"


def assemble(algebra, src, tgt, pieces):
    """Block map from ``pieces = [(row_offset, col_offset, ProjMap)]``."""
    out = {}
    for ro, co, f in pieces:
        for (i, j), e in f.entries.items():
            k = (ro + i, co + j)
            out[k] = out[k] + e if k in out else e
    return ProjMap(algebra, src, tgt, out, check=False)


class HomSpace:
    """Coordinates on degree-zero maps ``sum P_src -> sum P_tgt``."""

    def __init__(self, algebra, src, tgt):
        self.algebra = algebra
        self.src = list(src)
        self.tgt = list(tgt)
        self.slots = []  # (i, j, basis index)
        self.index = {}
        for i, (y, b) in enumerate(self.tgt):
            for j, (x, a) in enumerate(self.src):
                if b - a < 0:
                    continue
                for k in range(algebra.dim(b - a, y, x)):
                    self.index[(i, j, k)] = len(self.slots)
                    self.slots.append((i, j, k))

    @property
    def dim(self):
        return len(self.slots)

    def basis_map(self, s):
        i, j, k = self.slots[s]
        (x, a), (y, b) = self.src[j], self.tgt[i]
        e = self.algebra.basis_elem(b - a, y, x, k)
        return ProjMap(self.algebra, self.src, self.tgt, {(i, j): e}, check=False)

    def coords(self, f: ProjMap):
        F = self.algebra.field
        v = [F.zero] * self.dim
        for (i, j), e in f.entries.items():
            for k, c in enumerate(e.coords):
                if c != 0:
                    v[self.index[(i, j, k)]] = c
        return v

    def from_coords(self, v):
        A = self.algebra
        entries = {}
        for s, c in enumerate(v):
            if c == 0:
                continue
            i, j, k = self.slots[s]
            (x, a), (y, b) = self.src[j], self.tgt[i]
            e = A.basis_elem(b - a, y, x, k).scale(c)
            entries[(i, j)] = entries[(i, j)] + e if (i, j) in entries else e
        return ProjMap(A, self.src, self.tgt, entries, check=False)


# -- symbolic complexes ------------------------------------------------------------

class ProjectiveComplex:
    """Bounded complex of graded projectives; ``terms[n]`` lists generators ``(x, r)``.

    ``diffs[n]`` maps position ``n`` to ``n + 1``; ``provenance[n]`` optionally
    records where each generator came from.
    """

    def __init__(self, algebra, terms, diffs=None, check=True, provenance=None):
        self.algebra = algebra
        self.terms = {n: [(str(x), int(r)) for x, r in g] for n, g in terms.items() if g}
        self.diffs = {}
        for n, d in (diffs or {}).items():
            if n in self.terms and n + 1 in self.terms:
                if d.src != self.terms[n] or d.tgt != self.terms[n + 1]:
                    raise NotAComplex(f"differential at {n} does not match the terms")
                if not d.is_zero():
                    self.diffs[n] = d
        self.provenance = provenance or {}
        if check:
            n = self.square_violation()
            if n is not None:
                raise NotAComplex(f"d o d is nonzero at position {n}")

    def square_violation(self):
        for n in sorted(self.diffs):
            if n + 1 in self.diffs and not (self.diffs[n + 1] @ self.diffs[n]).is_zero():
                return n
        return None

    def term(self, n):
        return self.terms.get(n, [])

    def d(self, n) -> ProjMap:
        d = self.diffs.get(n)
        if d is None:
            return ProjMap.zero(self.algebra, self.term(n), self.term(n + 1))
        return d

    def positions(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def shift(self, m):
        """``X[m]``: position ``n`` holds ``X^{n+m}``; differentials times ``(-1)^m``."""
        sign = -1 if m % 2 else 1
        terms = {n - m: g for n, g in self.terms.items()}
        diffs = {n - m: d.scale(sign) for n, d in self.diffs.items()}
        prov = {n - m: p for n, p in self.provenance.items()}
        return ProjectiveComplex(self.algebra, terms, diffs, check=False, provenance=prov)

    def grade_shift(self, i):
        terms = {n: [(x, r + i) for x, r in g] for n, g in self.terms.items()}
        diffs = {n: d.grade_shift(i) for n, d in self.diffs.items()}
        return ProjectiveComplex(self.algebra, terms, diffs, check=False, provenance=self.provenance)

    def is_linear(self):
        """Every generator at position ``n`` is ``P_x<n>``."""
        return all(r == n for n, g in self.terms.items() for _, r in g)

    def is_minimal(self):
        """No differential entry of path degree zero."""
        return all(e.deg > 0 for d in self.diffs.values() for e in d.entries.values())

    def multiplicities(self):
        """``{(n, x, r): count}``."""
        out = {}
        for n, g in self.terms.items():
            for x, r in g:
                out[(n, x, r)] = out.get((n, x, r), 0) + 1
        return out

    def same_shape(self, other):
        return self.terms == other.terms

    def __eq__(self, other):
        if not isinstance(other, ProjectiveComplex):
            return NotImplemented
        return self.terms == other.terms and self.diffs == other.diffs

    def __hash__(self):
        return hash(tuple(sorted((n, tuple(g)) for n, g in self.terms.items())))

    def __repr__(self):
        return f"<ProjectiveComplex over {self.algebra.name}: {self.describe()}>"

    def describe(self):
        parts = []
        for n in self.positions():
            counts = {}
            for g in self.terms[n]:
                counts[g] = counts.get(g, 0) + 1
            body = " + ".join((f"{c}*" if c > 1 else "") + f"P_{x}<{r}>" for (x, r), c in counts.items())
            parts.append(f"{n}: {body}")
        return "; ".join(parts) if parts else "0"

    def projective_sums(self, cap=None):
        return {n: ProjectiveSum(self.algebra, g, cap=cap) for n, g in self.terms.items()}

    def materialize(self, cap=None) -> "ModuleComplex":
        """Explicit complex of modules; ``cap`` truncates internal degrees (infinite algebras)."""
        if cap is None and not self.algebra.is_finite_dimensional:
            raise ValueError(f"materializing over {self.algebra.name} needs a degree cap")
        sums = self.projective_sums(cap if not self.algebra.is_finite_dimensional else None)
        terms = {n: s.module for n, s in sums.items()}
        diffs = {n: d.materialize(sums[n], sums[n + 1]) for n, d in self.diffs.items()}
        return ModuleComplex(self.algebra, terms, diffs, check=False)


def stalk_projective(algebra, gens, position=0):
    return ProjectiveComplex(algebra, {position: list(gens)}, {})


def direct_sum_complexes(complexes):
    """Termwise direct sum, generators concatenated in order."""
    A = complexes[0].algebra
    positions = sorted({n for X in complexes for n in X.terms})
    terms = {n: [g for X in complexes for g in X.term(n)] for n in positions}
    diffs = {}
    for n in positions:
        pieces, ro, co = [], 0, 0
        for X in complexes:
            pieces.append((ro, co, X.d(n)))
            ro += len(X.term(n + 1))
            co += len(X.term(n))
        diffs[n] = assemble(A, terms[n], terms.get(n + 1, []), pieces)
    return ProjectiveComplex(A, terms, diffs, check=False)


class ChainMap:
    """Degree-zero chain map between symbolic complexes; ``comps[n]: X^n -> Y^n``."""

    def __init__(self, src: ProjectiveComplex, tgt: ProjectiveComplex, comps, check=True):
        self.src = src
        self.tgt = tgt
        self.comps = {}
        for n, f in comps.items():
            if n in src.terms and n in tgt.terms and not f.is_zero():
                self.comps[n] = f
        if check:
            n = self.violation()
            if n is not None:
                raise NotAChainMap(f"chain map condition fails at position {n}")

    def comp(self, n):
        f = self.comps.get(n)
        if f is None:
            return ProjMap.zero(self.src.algebra, self.src.term(n), self.tgt.term(n))
        return f

    def violation(self):
        for n in sorted(set(self.src.terms) | set(self.tgt.terms)):
            lhs = self.tgt.d(n) @ self.comp(n)
            rhs = self.comp(n + 1) @ self.src.d(n)
            if lhs != rhs:
                return n
        return None

    def is_zero(self):
        return not self.comps

    def __add__(self, other):
        ns = set(self.comps) | set(other.comps)
        return ChainMap(self.src, self.tgt, {n: self.comp(n) + other.comp(n) for n in ns}, check=False)

    def scale(self, c):
        return ChainMap(self.src, self.tgt, {n: f.scale(c) for n, f in self.comps.items()}, check=False)

    def __matmul__(self, other):
        ns = set(self.comps) & set(other.comps)
        return ChainMap(other.src, self.tgt, {n: self.comps[n] @ other.comps[n] for n in ns}, check=False)

    def is_isomorphism(self):
        """Degreewise invertible (checked on the degree-zero part of each component)."""
        for n in set(self.src.terms) | set(self.tgt.terms):
            f = self.comp(n)
            if len(f.src) != len(f.tgt):
                return False
            if len(f.src) == 0:
                continue
            # an endomorphism of a sum of projectives is invertible iff its degree-0 part is
            mat = _degree_zero_matrix(f)
            if mat is None or rank(mat) != len(f.src):
                return False
        return True


def _degree_zero_matrix(f: ProjMap):
    F = f.algebra.field
    n = len(f.src)
    mat = Matrix.zeros(F, len(f.tgt), n)
    for (i, j), e in f.entries.items():
        if e.deg == 0:
            mat.rows[i][j] = e.coords[0]
    return mat


def cone(f: ChainMap) -> ProjectiveComplex:
    """``Cone(f)^n = X^{n+1} + Y^n`` with ``d = [[-d_X, 0], [f, d_Y]]``."""
    X, Y = f.src, f.tgt
    A = X.algebra
    positions = sorted({n - 1 for n in X.terms} | set(Y.terms))
    terms = {n: X.term(n + 1) + Y.term(n) for n in positions}
    diffs = {}
    for n in positions:
        nx, ny = len(X.term(n + 2)), len(X.term(n + 1))
        pieces = [(0, 0, -X.d(n + 1)), (nx, 0, f.comp(n + 1)), (nx, ny, Y.d(n))]
        diffs[n] = assemble(A, terms[n], terms.get(n + 1, []), pieces)
    return ProjectiveComplex(A, terms, diffs)


def _hom_operator(spaces_in, spaces_out, contributions):
    """Matrix of a linear map between direct sums of :class:`HomSpace` s.

    ``contributions(key, f)`` yields ``(out_key, ProjMap)`` pairs for a basis
    map ``f`` of ``spaces_in[key]``.
    """
    in_keys = sorted(spaces_in)
    out_keys = sorted(spaces_out)
    out_off, total_out = {}, 0
    for k in out_keys:
        out_off[k] = total_out
        total_out += spaces_out[k].dim
    cols = []
    for k in in_keys:
        H = spaces_in[k]
        for s in range(H.dim):
            col = [H.algebra.field.zero] * total_out
            for ok, g in contributions(k, H.basis_map(s)):
                if ok not in spaces_out:
                    continue
                v = spaces_out[ok].coords(g)
                base = out_off[ok]
                F = H.algebra.field
                for t, c in enumerate(v):
                    if c != 0:
                        col[base + t] = F.reduce(col[base + t] + c)
            cols.append(col)
    return cols, total_out, in_keys


def chain_map_space(X: ProjectiveComplex, Y: ProjectiveComplex):
    """Basis of degree-zero chain maps ``X -> Y``."""
    A = X.algebra
    F = A.field
    spaces = {n: HomSpace(A, X.term(n), Y.term(n)) for n in X.terms if n in Y.terms}
    spaces = {n: H for n, H in spaces.items() if H.dim}
    if not spaces:
        return []
    eq_spaces = {n: HomSpace(A, X.term(n), Y.term(n + 1)) for n in set(spaces) | {n - 1 for n in spaces}}
    eq_spaces = {n: H for n, H in eq_spaces.items() if H.dim}

    def contrib(n, f):
        yield n, Y.d(n) @ f
        yield n - 1, -(f @ X.d(n - 1))

    cols, nrows, keys = _hom_operator(spaces, eq_spaces, contrib)
    mat = Matrix.from_columns(F, cols, nrows)
    sol = kernel(mat) if nrows else Subspace.full(F, len(cols))
    out = []
    for v in sol.basis.rows:
        comps, pos = {}, 0
        for n in keys:
            H = spaces[n]
            comps[n] = H.from_coords(v[pos:pos + H.dim])
            pos += H.dim
        out.append(ChainMap(X, Y, comps, check=False))
    return out


def homotopy_space_dim(X: ProjectiveComplex, Y: ProjectiveComplex):
    """Dimension of the space of degree ``-1`` maps ``h^n: X^n -> Y^{n-1}``."""
    A = X.algebra
    return sum(HomSpace(A, X.term(n), Y.term(n - 1)).dim for n in X.terms)


def null_homotopic_space(X: ProjectiveComplex, Y: ProjectiveComplex):
    """Basis of chain maps of the form ``d h + h d``."""
    A = X.algebra
    F = A.field
    hs = {n: HomSpace(A, X.term(n), Y.term(n - 1)) for n in X.terms}
    hs = {n: H for n, H in hs.items() if H.dim}
    if not hs:
        return []
    targets = {n: HomSpace(A, X.term(n), Y.term(n)) for n in set(hs) | {n - 1 for n in hs}}
    targets = {n: H for n, H in targets.items() if H.dim}

    def contrib(n, h):
        yield n, Y.d(n - 1) @ h
        yield n - 1, h @ X.d(n - 1)

    cols, nrows, _ = _hom_operator(hs, targets, contrib)
    if not nrows:
        return []
    img = Subspace(F, nrows, cols)
    keys = sorted(targets)
    out = []
    for v in img.basis.rows:
        comps, pos = {}, 0
        for n in keys:
            H = targets[n]
            comps[n] = H.from_coords(v[pos:pos + H.dim])
            pos += H.dim
        out.append(ChainMap(X, Y, comps, check=False))
    return out


def homotopy_classes_dim(X: ProjectiveComplex, Y: ProjectiveComplex):
    """``dim Hom_K(X, Y)``: chain maps modulo null-homotopic ones."""
    return len(chain_map_space(X, Y)) - len(null_homotopic_space(X, Y))


# -- double complexes ---------------------------------------------------------------

class DoubleComplex:
    """Commuting double complex of projective sums.

    ``terms[(p, q)]`` lists generators; ``d1[(p, q)]`` goes to ``(p+1, q)`` and
    ``d2[(p, q)]`` to ``(p, q+1)``.
    """

    def __init__(self, algebra, terms, d1=None, d2=None, check=True, provenance=None):
        self.algebra = algebra
        self.terms = {k: list(g) for k, g in terms.items() if g}
        self.d1 = {k: f for k, f in (d1 or {}).items() if k in self.terms and not f.is_zero()}
        self.d2 = {k: f for k, f in (d2 or {}).items() if k in self.terms and not f.is_zero()}
        self.provenance = provenance or {}
        if check:
            bad = self.violation()
            if bad is not None:
                raise NotAComplex(bad)

    def term(self, p, q):
        return self.terms.get((p, q), [])

    def h(self, p, q):
        f = self.d1.get((p, q))
        return f if f is not None else ProjMap.zero(self.algebra, self.term(p, q), self.term(p + 1, q))

    def v(self, p, q):
        f = self.d2.get((p, q))
        return f if f is not None else ProjMap.zero(self.algebra, self.term(p, q), self.term(p, q + 1))

    def violation(self):
        for (p, q) in sorted(self.terms):
            if not (self.h(p + 1, q) @ self.h(p, q)).is_zero():
                return f"d1 o d1 nonzero at {(p, q)}"
            if not (self.v(p, q + 1) @ self.v(p, q)).is_zero():
                return f"d2 o d2 nonzero at {(p, q)}"
            if self.h(p, q + 1) @ self.v(p, q) != self.v(p + 1, q) @ self.h(p, q):
                return f"d1 d2 != d2 d1 at {(p, q)}"
        return None

    def tot(self, sign=None) -> ProjectiveComplex:
        """``Tot^n = sum_{p+q=n}``, ordered by increasing ``p``; ``d = d1 + (-1)^p d2``.

        ``sign(p, q)`` overrides the vertical sign (used to test sensitivity).
        """
        sign = sign or (lambda p, q: -1 if p % 2 else 1)
        A = self.algebra
        diag = {}
        for (p, q) in self.terms:
            diag.setdefault(p + q, []).append(p)
        layout = {}
        terms = {}
        prov = {}
        for n, ps in diag.items():
            off = 0
            gens = []
            pv = []
            for p in sorted(ps):
                layout[(p, n - p)] = off
                g = self.terms[(p, n - p)]
                gens.extend(g)
                pv.extend(self.provenance.get((p, n - p), [None] * len(g)))
                off += len(g)
            terms[n] = gens
            prov[n] = pv
        diffs = {}
        for n in terms:
            if n + 1 not in terms:
                continue
            pieces = []
            for p in sorted(diag[n]):
                q = n - p
                co = layout[(p, q)]
                if (p + 1, q) in layout:
                    pieces.append((layout[(p + 1, q)], co, self.h(p, q)))
                if (p, q + 1) in layout:
                    pieces.append((layout[(p, q + 1)], co, self.v(p, q).scale(sign(p, q))))
            diffs[n] = assemble(A, terms[n], terms[n + 1], pieces)
        return ProjectiveComplex(A, terms, diffs, check=False, provenance=prov)


# -- explicit complexes of modules ----------------------------------------------------

class ModuleComplex:
    def __init__(self, algebra, terms, diffs=None, check=True):
        self.algebra = algebra
        self.terms = {n: M for n, M in terms.items() if not M.is_zero()}
        self.diffs = {}
        for n, d in (diffs or {}).items():
            if n in self.terms and n + 1 in self.terms and not d.is_zero():
                self.diffs[n] = d
        if check:
            for n, d in self.diffs.items():
                if d.square_violation() is not None:
                    raise NotAComplex(f"differential at {n} is not a module map")
                if n + 1 in self.diffs and not (self.diffs[n + 1] @ d).is_zero():
                    raise NotAComplex(f"d o d is nonzero at position {n}")

    def term(self, n):
        return self.terms.get(n) or zero_module(self.algebra)

    def d(self, n):
        f = self.diffs.get(n)
        if f is None:
            return ModuleMorphism(self.term(n), self.term(n + 1), {}, check=False)
        return f

    def positions(self):
        return sorted(self.terms)

    def shift(self, m):
        sign = -1 if m % 2 else 1
        return ModuleComplex(self.algebra, {n - m: M for n, M in self.terms.items()},
                             {n - m: d.scale(sign) for n, d in self.diffs.items()}, check=False)

    def grade_shift(self, i):
        return ModuleComplex(self.algebra, {n: M.shift(i) for n, M in self.terms.items()},
                             {n: d.shift(i) for n, d in self.diffs.items()}, check=False)

    def cycles(self, n):
        M = self.term(n)
        d = self.d(n)
        return {k: kernel(d.block(*k)) for k in M.dims}

    def boundaries(self, n):
        return image_spaces(self.d(n - 1)) if n - 1 in self.diffs else {}

    def cohomology(self, n) -> GradedModule:
        if n not in self.terms:
            return zero_module(self.algebra)
        return subquotient(self.term(n), self.cycles(n), self.boundaries(n))

    def cohomology_dims(self):
        return {n: self.cohomology(n).dims for n in self.positions()}

    def is_exact_at(self, n):
        return self.cohomology(n).is_zero()

    def truncate_le(self, n):
        """``... -> X^{n-1} -> ker d^n -> 0``."""
        terms = {k: M for k, M in self.terms.items() if k < n}
        diffs = {k: d for k, d in self.diffs.items() if k < n - 1}
        if n in self.terms:
            Z, inc = submodule(self.term(n), self.cycles(n))
            terms[n] = Z
            if n - 1 in self.diffs:
                d = self.diffs[n - 1]
                blocks = {}
                zs = self.cycles(n)
                for k, m in d.blocks.items():
                    blocks[k] = Matrix.from_columns(self.algebra.field,
                                                    [zs[k].coordinates(c) for c in m.columns()], Z.dim(*k))
                diffs[n - 1] = ModuleMorphism(self.term(n - 1), Z, blocks, check=False)
        return ModuleComplex(self.algebra, terms, diffs, check=False)

    def truncate_ge(self, n):
        """``0 -> coker d^{n-1} -> X^{n+1} -> ...``."""
        terms = {k: M for k, M in self.terms.items() if k > n}
        diffs = {k: d for k, d in self.diffs.items() if k > n}
        if n in self.terms:
            C, proj, lifts = quotient(self.term(n), self.boundaries(n))
            terms[n] = C
            if n in self.diffs:
                d = self.diffs[n]
                blocks = {k: d.block(*k) @ lifts[k] for k in C.dims if k in d.blocks}
                diffs[n] = ModuleMorphism(C, self.term(n + 1), blocks, check=False)
        return ModuleComplex(self.algebra, terms, diffs, check=False)


def stalk(M: GradedModule, position=0):
    return ModuleComplex(M.algebra, {position: M}, {})


class ModuleChainMap:
    def __init__(self, src: ModuleComplex, tgt: ModuleComplex, comps, check=True):
        self.src, self.tgt = src, tgt
        self.comps = dict(comps)
        if check:
            for n in set(src.terms) | set(tgt.terms):
                lhs = tgt.d(n) @ self.comp(n)
                rhs = self.comp(n + 1) @ src.d(n)
                if lhs != rhs:
                    raise NotAChainMap(f"chain map condition fails at position {n}")

    def comp(self, n):
        f = self.comps.get(n)
        if f is None:
            return ModuleMorphism(self.src.term(n), self.tgt.term(n), {}, check=False)
        return f


def module_cone(f: ModuleChainMap) -> ModuleComplex:
    """Cone of a chain map of module complexes, same sign rule as :func:`cone`."""
    X, Y = f.src, f.tgt
    positions = sorted({n - 1 for n in X.terms} | set(Y.terms))
    terms, incs, projs = {}, {}, {}
    for n in positions:
        S, i, p = direct_sum([X.term(n + 1), Y.term(n)])
        terms[n], incs[n], projs[n] = S, i, p
    diffs = {}
    for n in positions:
        if n + 1 not in terms:
            continue
        (ix, iy), (px, py) = incs[n + 1], projs[n]
        d = (ix @ (-X.d(n + 1)) @ px) + (iy @ f.comp(n + 1) @ px) + (iy @ Y.d(n) @ py)
        diffs[n] = d
    return ModuleComplex(X.algebra, terms, diffs)


def random_hom(M, N, rng):
    """Random combination of a basis of ``Hom(M, N)`` (zero if there is none)."""
    F = M.field
    f = ModuleMorphism(M, N, {}, check=False)
    for b in hom_graded(M, N):
        c = F.random(rng)
        if c != 0:
            f = f + b.scale(c)
    return f


def random_module_complex(A, rng, module_factory, length=None, start=None):
    """Random bounded complex ``M -> N -> coker`` (two or three terms).

    ``module_factory(rng)`` produces the random modules.
    """
    length = length or rng.choice([1, 2, 3])
    start = rng.randint(-2, 1) if start is None else start
    M = module_factory(rng)
    if length == 1:
        return ModuleComplex(A, {start: M}, {})
    shift = rng.choice([-1, 0, 1])
    N = module_factory(rng).shift(shift) if rng.random() < 0.5 else module_factory(rng)
    f = random_hom(M, N, rng)
    if f.is_zero() and rng.random() < 0.7:
        # make the map nonzero when possible by mapping into a sum containing M
        N, incs, _ = direct_sum([M, N])
        f = incs[0]
    terms = {start: M, start + 1: N}
    diffs = {start: f}
    if length == 3:
        C, p = cokernel_module(f)
        terms[start + 2] = C
        diffs[start + 1] = p
    return ModuleComplex(A, terms, diffs)
