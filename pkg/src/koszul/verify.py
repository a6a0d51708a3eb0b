"""Machine checks of Hom-dimension identities between a quadratic algebra and its dual.

Every check returns a :class:`VerificationReport` whose verdict is ``Pass``,
``Fail`` (with the first mismatching tuple) or ``Inconclusive`` (a truncation
window could hide nonzero terms).  Windows are never silently extended.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .complexes import (ModuleComplex, NotAComplex, ProjectiveComplex, homotopy_classes_dim, null_homotopic_space,
                        random_module_complex, stalk)
from .kfunctor import dual_algebra, k_module, quadratic_functor, shift_compat_iso
from .linalg import Matrix, Subspace, kernel
from .modules import (forget_grading, hom_graded, hom_total, injective, kernel_module,
                      projective, projective_cover, random_module, simple, ungraded_hom_basis,
                      ungraded_hom_dim)
from .quiver import QuadraticPresentation, quadratic_dual
from .resolution import (DEFAULT_HORIZON, HorizonExceeded, ext_general, ext_simple_table, koszulity_check,
                         stable_hom)

PASS, FAIL, INCONCLUSIVE = "Pass", "Fail", "Inconclusive"


@dataclass
class VerificationReport:
    identity: str
    algebra: str
    params: dict
    left: dict = field(default_factory=dict)
    right: dict = field(default_factory=dict)
    verdict: str = PASS
    witness: object = None
    seed: int | None = None
    checks: int = 0
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict == PASS

    def record(self, key, lhs, rhs):
        """Store one comparison; the first mismatch becomes the witness."""
        k = _key(key)
        self.left[k] = lhs
        self.right[k] = rhs
        self.checks += 1
        if lhs != rhs and self.verdict != FAIL:
            self.verdict = FAIL
            self.witness = {"key": k, "left": lhs, "right": rhs}

    def broken(self, key, err):
        """A construction that should yield a complex did not (e.g. a mismatched dual)."""
        self.record(key, f"not a complex: {err}", "complex")

    def inconclusive(self, why):
        if self.verdict == PASS:
            self.verdict = INCONCLUSIVE
            self.witness = why

    def to_dict(self):
        return {"schema": 1, "identity": self.identity, "algebra": self.algebra, "params": self.params,
                "verdict": self.verdict, "witness": self.witness, "seed": self.seed, "checks": self.checks,
                "left": self.left, "right": self.right, "notes": self.notes}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self):
        extra = f" witness={self.witness}" if self.witness is not None else ""
        return f"{self.identity:<16} {self.algebra:<12} {self.verdict:<12} checks={self.checks}{extra}"


def _key(key):
    if isinstance(key, tuple):
        return ",".join(str(k) for k in key)
    return str(key)


# -- involution -----------------------------------------------------------------------

def verify_involution(P: QuadraticPresentation) -> VerificationReport:
    """The double dual equals the presentation as canonical rref data."""
    rep = VerificationReport("involution", P.name, {})
    DD = quadratic_dual(quadratic_dual(P))
    for x, z in sorted(set(P.blocks()) | set(DD.blocks())):
        a, b = P.relation_block(x, z), DD.relation_block(x, z)
        rep.record((x, z), _rows(a), _rows(b))
    if rep.verdict == PASS and (DD.quiver != P.quiver or DD != P):
        rep.verdict = FAIL
        rep.witness = "quivers or fields differ"
    return rep


def _rows(sub):
    return [[sub.field.format(c) for c in row] for row in sub.basis.rows]


# -- generator Homs -------------------------------------------------------------------

def verify_generator_homs(A, window=3, horizon=DEFAULT_HORIZON, depth=None) -> VerificationReport:
    """``Hom(I!_x<n>, I!_y<m>) = Ext^{m-n}(S_x<-n>, S_y<-m>) = dim e_x A!_{m-n} e_y``.

    ``A`` is the algebra, ``A!`` its dual.  When ``A!`` is infinite its injectives
    are truncated to path length ``depth`` (default ``horizon``); the truncated
    Hom is exact for ``m - n <= depth`` and the tuple is Inconclusive otherwise.
    """
    B = dual_algebra(A)
    depth = horizon if depth is None else depth
    rep = VerificationReport("generator-homs", A.name, {"window": window, "horizon": horizon, "depth": depth})
    cert = koszulity_check(A.presentation, horizon)
    if not cert.is_koszul_up_to:
        rep.inconclusive(f"not Koszul up to {horizon}: {cert}")
        return rep
    table = ext_simple_table(A, horizon, cert.cap)
    truncated = not B.is_finite_dimensional
    inj = {}
    for x in A.vertices:
        for n in range(-window, window + 1):
            inj[(x, n)] = injective(B, x, n, horizon=depth if truncated else None)
    skipped = []
    for x in A.vertices:
        for y in A.vertices:
            for n in range(-window, window + 1):
                for m in range(-window, window + 1):
                    k = m - n
                    if truncated and k > depth:
                        skipped.append((x, y, n, m))
                        continue
                    if k > horizon:
                        skipped.append((x, y, n, m))
                        continue
                    a = len(hom_graded(inj[(x, n)], inj[(y, m)]))
                    b = table.get((k, x, y, k), 0) if k >= 0 else 0
                    c = B.dim(k, y, x) if k >= 0 else 0
                    rep.record((x, y, n, m), a, b)
                    if a != c:
                        rep.record((x, y, n, m, "dual"), a, c)
    if skipped:
        rep.notes.append(f"{len(skipped)} tuples beyond the truncation depth")
        rep.inconclusive({"beyond_depth": [_key(s) for s in skipped[:5]]})
    return rep


# -- precovering ----------------------------------------------------------------------

def _forget_offsets(M):
    offs = {}
    for x in M.quiver.vertices:
        off = 0
        for n in M.degrees():
            offs[(x, n)] = off
            off += M.dim(x, n)
    return offs


def forget_morphism(f, U, V):
    """``f`` as a family ``{x: Matrix}`` between the forgotten modules ``U``, ``V``."""
    F = f.src.field
    so, to = _forget_offsets(f.src), _forget_offsets(f.tgt)
    out = {}
    for x in f.src.quiver.vertices:
        mat = Matrix.zeros(F, V.dims[x], U.dims[x])
        for (z, n), blk in f.blocks.items():
            if z != x:
                continue
            for i, row in enumerate(blk.rows):
                for j, v in enumerate(row):
                    if v != 0:
                        mat.rows[to[(x, n)] + i][so[(x, n)] + j] = v
        out[x] = mat
    return out


def _flatten(family, vertices):
    return [c for x in vertices for row in family[x].rows for c in row]


def ungraded_homotopy_classes_dim(X: ModuleComplex, Y: ModuleComplex):
    """Chain maps modulo null-homotopic maps between the forgotten complexes.

    Solved directly on ungraded representations: no degree information is used.
    """
    F = X.algebra.field
    vs = X.algebra.quiver.vertices
    occupied = set(X.terms) | set(Y.terms)
    if not occupied:
        return 0
    pos = list(range(min(occupied), max(occupied) + 1))
    U = {n: forget_grading(X.term(n)) for n in range(pos[0] - 1, pos[-1] + 2)}
    V = {n: forget_grading(Y.term(n)) for n in U}
    dU = {n: forget_morphism(X.d(n), U[n], U[n + 1]) for n in pos if n + 1 in U}
    dV = {n: forget_morphism(Y.d(n), V[n], V[n + 1]) for n in U if n + 1 in U}
    common = [n for n in pos if n in X.terms and n in Y.terms]
    homs = {n: ungraded_hom_basis(U[n], V[n]) for n in common}
    # raw coordinates of a family of components f^n, n in ``common``
    raw_sizes = {n: sum(V[n].dims[x] * U[n].dims[x] for x in vs) for n in common}
    raw_off, tot = {}, 0
    for n in common:
        raw_off[n] = tot
        tot += raw_sizes[n]
    cols = [(n, b) for n in common for b in homs[n]]
    if not cols:
        return 0

    eqs = []
    for n in pos:
        for x in vs:
            rows_n, cols_n = V[n + 1].dims[x], U[n].dims[x]
            if rows_n == 0 or cols_n == 0:
                continue
            block_cols = []
            for m, b in cols:
                mat = Matrix.zeros(F, rows_n, cols_n)
                if m == n and n in dV:
                    mat = mat + dV[n][x] @ b[x]
                if m == n + 1 and n in dU:
                    mat = mat - b[x] @ dU[n][x]
                block_cols.append([c for row in mat.rows for c in row])
            for r in range(rows_n * cols_n):
                eqs.append([col[r] for col in block_cols])
    coeff = kernel(Matrix(F, eqs, len(cols))) if eqs else Subspace.full(F, len(cols))
    chain_raw = []
    for v in coeff.basis.rows:
        raw = [F.zero] * tot
        for c, (m, b) in zip(v, cols):
            if c == 0:
                continue
            flat = _flatten(b, vs)
            for i, e in enumerate(flat):
                if e != 0:
                    raw[raw_off[m] + i] = F.reduce(raw[raw_off[m] + i] + c * e)
        chain_raw.append(raw)
    null_raw = []
    for n in pos:
        if n - 1 not in Y.terms or n not in X.terms:
            continue
        for h in ungraded_hom_basis(U[n], V[n - 1]):
            # (d h + h d) has components at n (dV^{n-1} h) and n-1 (h dU^{n-1})
            raw = [F.zero] * tot
            for m, mat in ((n, {x: dV[n - 1][x] @ h[x] for x in vs} if n - 1 in dV else None),
                           (n - 1, {x: h[x] @ dU[n - 1][x] for x in vs} if n - 1 in dU else None)):
                if mat is None or m not in raw_off:
                    continue
                for i, e in enumerate(_flatten(mat, vs)):
                    if e != 0:
                        raw[raw_off[m] + i] = F.reduce(raw[raw_off[m] + i] + e)
            null_raw.append(raw)
    return Subspace(F, tot, chain_raw).dim - Subspace(F, tot, null_raw).dim


def _shift_range(X: ProjectiveComplex, Y: ProjectiveComplex, top):
    a = [r for g in X.terms.values() for _, r in g]
    b = [r for g in Y.terms.values() for _, r in g]
    if not a or not b:
        return range(0)
    return range(min(a) - max(b), max(a) - min(b) + top + 1)


def graded_homotopy_total(X: ProjectiveComplex, Y: ProjectiveComplex):
    """``sum_r dim Hom_K(X, Y<r>)`` over all shifts that can contribute."""
    top = X.algebra.top_degree()
    if top is None:
        raise ValueError("summing over shifts needs a finite-dimensional algebra")
    return sum(homotopy_classes_dim(X, Y.grade_shift(r)) for r in _shift_range(X, Y, top))


def random_projective_complex(A, rng, depth=2):
    """Random bounded complex of projectives over ``A``: the image of a random
    complex of modules over the dual algebra under the quadratic functor."""
    B = dual_algebra(A)
    factory = lambda r: random_module(B, r, max_gens=1, depth=depth)  # noqa: E731
    for _ in range(20):
        X = random_module_complex(B, rng, factory, length=rng.choice([1, 2]))
        C = quadratic_functor(X, A)
        if C.terms:
            return C
    return quadratic_functor(stalk(simple(B, B.vertices[0])), A)


def verify_precovering(A, samples=50, complexes=0, seed=0, depth=2) -> VerificationReport:
    """Ungraded Hom equals the sum of graded Homs over all shifts.

    Module pairs are compared with :func:`ungraded_hom_dim`; bounded complexes of
    projectives are compared through homotopy classes of chain maps.
    """
    rng = random.Random(seed)
    rep = VerificationReport("precovering", A.name, {"samples": samples, "complexes": complexes,
                                                     "depth": depth}, seed=seed)
    for s in range(samples):
        M = random_module(A, rng, depth=depth)
        N = random_module(A, rng, depth=depth) if rng.random() < 0.7 else M
        lhs = ungraded_hom_dim(forget_grading(M), forget_grading(N))
        rhs = hom_total(M, N)[0]
        rep.record(("module", s), lhs, rhs)
    if complexes and not A.is_finite_dimensional:
        rep.notes.append("complex samples skipped: algebra is not finite-dimensional")
        complexes = 0
    for s in range(complexes):
        X = random_projective_complex(A, rng)
        Y = X if rng.random() < 0.3 else random_projective_complex(A, rng)
        lhs = ungraded_homotopy_classes_dim(X.materialize(), Y.materialize())
        rhs = graded_homotopy_total(X, Y)
        rep.record(("complex", s), lhs, rhs)
    return rep


# -- orbit identity -------------------------------------------------------------------

def verify_orbit_homs(A, X, Y, window=3, horizon=DEFAULT_HORIZON) -> VerificationReport:
    """``sum_{-W<=m<=0} Ext^{-m}(X, Y<m>) = dim Hom_K(F X, F Y<r>)`` summed over ``r``.

    ``X`` and ``Y`` are modules over the dual of ``A`` (which must be
    finite-dimensional); ``F`` sends them to bounded complexes over ``A``.
    """
    rep = VerificationReport("orbit", A.name, {"window": window, "horizon": horizon,
                                               "X": X.name or repr(X), "Y": Y.name or repr(Y)})
    lhs, boundary = 0, 0
    for m in range(-window, 1):
        try:
            e = ext_general(X, Y.shift(m), -m, horizon=horizon)
        except HorizonExceeded as err:
            rep.inconclusive(f"m={m}: {err}")
            return rep
        rep.left[_key(("m", m))] = e
        lhs += e
        if m == -window:
            boundary = e
    FX = quadratic_functor(stalk(X), A)
    FY = quadratic_functor(stalk(Y), A)
    rhs = graded_homotopy_total(FX, FY) if FX.terms and FY.terms else 0
    rep.record("total", lhs, rhs)
    if rep.verdict == PASS and boundary:
        rep.inconclusive({"boundary_m": -window, "dim": boundary})
    return rep


def orbit_test_modules(A):
    """Simple and injective modules over the dual algebra, named."""
    B = dual_algebra(A)
    out = []
    for x in B.vertices:
        S = simple(B, x)
        S.name = f"S!_{x}"
        I = injective(B, x)
        I.name = f"I!_{x}"
        out += [S, I]
    return out


# -- Hilbert diagnostic ---------------------------------------------------------------

# Orientation of the matrix identity sum_{a+b=n} (-1)^a H_A(a) H_{A!}(b)^? = delta_{n0} Id,
# where H(a)[z][x] = dim e_z A_a e_x.  Calibrated by :func:`calibrate_hilbert` and frozen.
HILBERT_ORIENTATIONS = ("plain", "transpose-dual", "transpose-left")
HILBERT_ORIENTATION = "transpose-dual"


def hilbert_matrix(A, n):
    vs = A.vertices
    return [[A.dim(n, x, z) for x in vs] for z in vs]


def _transpose(m):
    return [list(r) for r in zip(*m)] if m else m


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def hilbert_sums(A, B, N, orientation=HILBERT_ORIENTATION):
    """``{n: sum_{a+b=n} (-1)^a H_A(a) H_B(b)}`` with the chosen orientation."""
    k = len(A.vertices)
    out = {}
    for n in range(N + 1):
        acc = [[0] * k for _ in range(k)]
        for a in range(n + 1):
            L, R = hilbert_matrix(A, a), hilbert_matrix(B, n - a)
            if orientation == "transpose-dual":
                R = _transpose(R)
            elif orientation == "transpose-left":
                L = _transpose(L)
            P = _matmul(L, R)
            s = -1 if a % 2 else 1
            acc = [[acc[i][j] + s * P[i][j] for j in range(k)] for i in range(k)]
        out[n] = acc
    return out


def _is_delta(sums):
    k = len(sums[0])
    ident = [[int(i == j) for j in range(k)] for i in range(k)]
    zero = [[0] * k for _ in range(k)]
    return all(m == (ident if n == 0 else zero) for n, m in sums.items())


def calibrate_hilbert(algebras, N=6):
    """Orientations for which the identity holds on every given algebra."""
    return [o for o in HILBERT_ORIENTATIONS
            if all(_is_delta(hilbert_sums(A, dual_algebra(A), N, o)) for A in algebras)]


def hilbert_diagnostic(A, N=6, orientation=HILBERT_ORIENTATION) -> VerificationReport:
    B = dual_algebra(A)
    rep = VerificationReport("hilbert", A.name, {"n": N, "orientation": orientation})
    k = len(A.vertices)
    for n, m in hilbert_sums(A, B, N, orientation).items():
        want = [[int(n == 0 and i == j) for j in range(k)] for i in range(k)]
        rep.record(n, m, want)
    return rep


# -- stable Hom smoke -----------------------------------------------------------------

def syzygy(M):
    """Kernel of the projective cover."""
    K, _ = kernel_module(projective_cover(M).epi)
    return K


def verify_stable_smoke(A, seed=0, samples=3) -> VerificationReport:
    """``stable_hom(P, N) = 0`` for projective ``P``; records ``stable_hom(S_x, S_x)``
    and the dimension table of the syzygy of each simple."""
    rep = VerificationReport("stable", A.name, {"samples": samples}, seed=seed)
    if not A.is_finite_dimensional:
        rep.inconclusive("algebra is not finite-dimensional")
        return rep
    rng = random.Random(seed)
    for x in A.vertices:
        S = simple(A, x)
        P = projective(A, x)
        rep.notes.append(f"stable_hom(S_{x}, S_{x}) = {stable_hom(S, S)}")
        rep.notes.append(f"syzygy(S_{x}) = {sorted(syzygy(S).dims.items())}")
        for y in A.vertices:
            rep.record(("P", x, "S", y), stable_hom(P, simple(A, y)), 0)
        for s in range(samples):
            rep.record(("P", x, "M", s), stable_hom(P, random_module(A, rng)), 0)
    return rep


# -- K-images -------------------------------------------------------------------------

def verify_k_homotopy(A, samples=20, seed=0, depth=2) -> VerificationReport:
    """Null-homotopic maps between K-images of modules over the dual vanish."""
    B = dual_algebra(A)
    rng = random.Random(seed)
    rep = VerificationReport("k-homotopy", A.name, {"samples": samples, "depth": depth}, seed=seed)
    for s in range(samples):
        M = random_module(B, rng, depth=depth)
        N = random_module(B, rng, depth=depth) if rng.random() < 0.7 else M
        try:
            KM, KN = k_module(M, A).complex, k_module(N, A).complex
        except NotAComplex as e:
            rep.broken(("pair", s), e)
            continue
        rep.record(("pair", s), len(null_homotopic_space(KM, KN)), 0)
    return rep


def perturbed_sign(i, drop):
    """Shift-compatibility sign with one factor removed (``drop`` is ``"p"`` or ``"q"``)."""
    if drop == "p":
        return lambda p, q: (-1) ** ((i * q) % 2)
    return lambda p, q: (-1) ** ((i * p) % 2)


def verify_shift_compat(A, samples=4, shifts=range(-2, 3), seed=0, depth=2, sign=None) -> VerificationReport:
    """``F(X<i>[-i]) -> F(X)<-i>`` is a chain isomorphism on random bounded complexes
    of modules over the dual.  ``sign(i)`` overrides the sign rule."""
    B = dual_algebra(A)
    rng = random.Random(seed)
    rep = VerificationReport("shift-compat", A.name, {"samples": samples, "shifts": list(shifts)}, seed=seed)
    factory = lambda r: random_module(B, r, depth=depth)  # noqa: E731
    for s in range(samples):
        X = random_module_complex(B, rng, factory, length=rng.choice([2, 3]))
        for i in shifts:
            try:
                sc = shift_compat_iso(X, i, sign=sign(i) if sign else None, target=A)
            except NotAComplex as e:
                rep.broken(("complex", s, "i", i), e)
                continue
            rep.record(("complex", s, "i", i), [sc.is_chain_map, sc.is_isomorphism], [True, True])
    return rep
