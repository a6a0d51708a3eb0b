"""Minimal graded resolutions, Ext tables and Koszulity certificates.

Resolutions are computed by iterating projective covers of kernels on
materialized modules; the result is kept as a symbolic
:class:`~koszul.complexes.ProjectiveComplex` at positions ``-H..0``.

For algebras that are not finite-dimensional every module is cut off above
a fixed internal degree ``cap``.  Truncation is exact in each degree, so the
truncated resolution agrees with the true one in internal degrees ``<= cap``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Elem
from .complexes import ProjMap, ProjectiveComplex
from .linalg import Matrix, Subspace, rank
from .modules import (GradedModule, ModuleMorphism, ProjectiveSum, cokernel_module,
                      hom_graded, injective_envelope, kernel_module, projective_cover, quotient,
                      shift_window, simple)
from .quiver import HomogeneousPresentation, associated_quadratic, is_quadratic_ideal

DEFAULT_HORIZON = 6


class HorizonExceeded(RuntimeError):
    """The resolution is too short for the requested Ext degree."""


class Unsupported(ValueError):
    pass


def default_cap(A, horizon):
    """Internal-degree cap used for algebras that are not finite-dimensional."""
    return None if A.is_finite_dimensional else 2 * max(horizon, 1)


def truncate_above(M: GradedModule, cap):
    if cap is None or not M.dims or M.degree_range()[1] <= cap:
        return M
    spaces = {k: Subspace.full(M.field, d) for k, d in M.dims.items() if k[1] > cap}
    Q, _, _ = quotient(M, spaces)
    return Q


@dataclass
class Resolution:
    complex: ProjectiveComplex
    target: GradedModule
    horizon: int
    complete: bool
    cap: int | None = None
    epi: ModuleMorphism | None = None

    def generators(self, n):
        """Generators of ``P^{-n}``."""
        return self.complex.term(-n)

    @property
    def length(self):
        ps = self.complex.positions()
        return -ps[0] if ps else 0

    def grade_shift(self, r):
        return Resolution(self.complex.grade_shift(r), self.target.shift(r), self.horizon, self.complete,
                          None if self.cap is None else self.cap - r, None)


def _elements_from_vector(P: ProjectiveSum, x, m, vec):
    """Split a vector of ``P`` at block ``(x, m)`` into per-generator algebra elements."""
    A = P.algebra
    out = {}
    for i, off, c in P.layout(x, m):
        y, b = P.gens[i]
        coords = vec[off:off + c]
        if any(v != 0 for v in coords):
            out[i] = Elem(A, m + b, y, x, coords)
    return out


def minimal_projective_resolution(M: GradedModule, horizon=DEFAULT_HORIZON, cap=None) -> Resolution:
    A = M.algebra
    if cap is None:
        cap = default_cap(A, horizon)
    M = truncate_above(M, cap)
    if M.is_zero():
        return Resolution(ProjectiveComplex(A, {}), M, horizon, True, cap)
    cover = projective_cover(M, cap=cap)
    P = cover.projective
    terms = {0: P.gens}
    diffs = {}
    K, inc = kernel_module(cover.epi)
    complete = False
    for n in range(1, horizon + 1):
        if K.is_zero():
            complete = True
            break
        cK = projective_cover(K, cap=cap)
        Pn = cK.projective
        entries = {}
        for g, (x, r) in enumerate(Pn.gens):
            vec = inc.block(x, -r).apply(cK.images[g])
            for i, e in _elements_from_vector(P, x, -r, vec).items():
                entries[(i, g)] = e
        d = ProjMap(A, Pn.gens, P.gens, entries, check=False)
        terms[-n], diffs[-n] = Pn.gens, d
        K, inc = kernel_module(d.materialize(Pn, P))
        P = Pn
    else:
        complete = K.is_zero()
    return Resolution(ProjectiveComplex(A, terms, diffs, check=False), M, horizon, complete, cap, cover.epi)


class ResolutionCache:
    """Resolutions of the simples ``S_x``; shifted simples reuse them."""

    def __init__(self, algebra, horizon=DEFAULT_HORIZON, cap=None):
        self.algebra = algebra
        self.horizon = horizon
        self.cap = default_cap(algebra, horizon) if cap is None else cap
        self._res = {}

    def simple(self, x, r=0) -> Resolution:
        if x not in self._res:
            self._res[x] = minimal_projective_resolution(simple(self.algebra, x, 0), self.horizon, self.cap)
        res = self._res[x]
        return res if r == 0 else res.grade_shift(r)


_caches = {}


def simple_resolutions(A, horizon=DEFAULT_HORIZON, cap=None) -> ResolutionCache:
    key = (id(A), horizon, cap)
    if key not in _caches:
        _caches[key] = ResolutionCache(A, horizon, cap)
    return _caches[key]


def ext_simple_table(A, horizon=DEFAULT_HORIZON, cap=None):
    """``{(n, x, y, i): dim Ext^n(S_x, S_y<-i>)}`` read off resolution multiplicities."""
    cache = simple_resolutions(A, horizon, cap)
    table = {}
    for x in A.vertices:
        res = cache.simple(x)
        for n in range(0, horizon + 1):
            for y, r in res.generators(n):
                key = (n, x, y, -r)
                table[key] = table.get(key, 0) + 1
    return table


def linearity_scan(A, horizon=DEFAULT_HORIZON, cap=None):
    """``{n: bool}``: whether every ``P^{-n}`` of every simple is generated in degree ``n``."""
    cache = simple_resolutions(A, horizon, cap)
    out = {}
    for n in range(horizon + 1):
        out[n] = all(r == -n for x in A.vertices for _, r in cache.simple(x).generators(n))
    return out


# -- Koszulity ------------------------------------------------------------------------

@dataclass
class KoszulCertificate:
    verdict: str  # "KoszulUpTo" | "NotQuadraticIdeal" | "FailsAt"
    horizon: int
    witness: tuple | None = None
    table: dict = field(default_factory=dict)
    cap: int | None = None

    @property
    def is_koszul_up_to(self):
        return self.verdict == "KoszulUpTo"

    def __str__(self):
        if self.verdict == "KoszulUpTo":
            extra = f" (internal degrees <= {self.cap})" if self.cap is not None else ""
            return f"KoszulUpTo({self.horizon}){extra}"
        if self.verdict == "FailsAt":
            n, x, y, i, d = self.witness
            return f"FailsAt(n={n}, simple=S_{x}, Ext^{n}(S_{x}, S_{y}<{-i}>) = {d})"
        return "NotQuadraticIdeal"


def koszulity_check(P, horizon=DEFAULT_HORIZON, cap=None) -> KoszulCertificate:
    """Semi-decision: scans the Ext table of the simples for off-diagonal entries."""
    if isinstance(P, HomogeneousPresentation):
        ok, witness = is_quadratic_ideal(P)
        if not ok:
            n, x, z, _ = witness
            return KoszulCertificate("NotQuadraticIdeal", horizon, (n, x, z))
        P = associated_quadratic(P)
    A = P.algebra
    if cap is None:
        cap = default_cap(A, horizon)
    table = ext_simple_table(A, horizon, cap)
    for key in sorted(table, key=lambda k: (k[0], A.vertices.index(k[1]), k[3])):
        n, x, y, i = key
        if i != n:
            return KoszulCertificate("FailsAt", horizon, (n, x, y, i, table[key]), table, cap)
    return KoszulCertificate("KoszulUpTo", horizon, None, table, cap)


# -- Ext through the Hom complex ------------------------------------------------------

def _element_action(N: GradedModule, e: Elem, m):
    """Matrix of ``e`` acting on ``N_m(e.src)``."""
    F = N.field
    out = Matrix.zeros(F, N.dim(e.tgt, m + e.deg), N.dim(e.src, m))
    for path, c in e.terms():
        out = out + N.path_action(path, e.src, m).scale(c)
    return out


def hom_complex_differential(res: Resolution, N: GradedModule, k):
    """``Hom(P^{-k}, N) -> Hom(P^{-k-1}, N)``, both in Yoneda coordinates.

    ``Hom(P^{-k}, N) = sum_g N_{-r_g}(x_g)``.
    """
    F = N.field
    src = res.generators(k)
    tgt = res.generators(k + 1)
    so, to = _offsets(N, src), _offsets(N, tgt)
    mat = Matrix.zeros(F, to[-1], so[-1])
    d = res.complex.d(-k - 1)
    for (i, j), e in d.entries.items():
        y, b = src[i]
        block = _element_action(N, e, -b)
        for r, row in enumerate(block.rows):
            for c, v in enumerate(row):
                if v != 0:
                    mat.rows[to[j] + r][so[i] + c] = F.reduce(mat.rows[to[j] + r][so[i] + c] + v)
    return mat


def _offsets(N, gens):
    out = [0]
    for x, r in gens:
        out.append(out[-1] + N.dim(x, -r))
    # the final entry is the total dimension
    return out


def ext_from_resolution(res: Resolution, N: GradedModule, n):
    """``dim H^n Hom(P, N)``; needs ``P^{-n-1}`` unless the resolution is complete."""
    if n < 0:
        return 0
    if n + 1 > res.length and not res.complete:
        raise HorizonExceeded(f"Ext^{n} needs a resolution of length {n + 1}; have {res.length}")
    dim_n = _offsets(N, res.generators(n))[-1]
    if dim_n == 0:
        return 0
    out_rank = rank(hom_complex_differential(res, N, n)) if res.generators(n + 1) else 0
    in_rank = rank(hom_complex_differential(res, N, n - 1)) if n >= 1 and res.generators(n - 1) else 0
    return dim_n - out_rank - in_rank


def ext_general(M: GradedModule, N: GradedModule, n, horizon=None, res=None):
    """Graded ``dim Ext^n(M, N)`` through the Hom complex of a minimal resolution."""
    if res is None:
        A = M.algebra
        h = max(n + 1, horizon or 0)
        cap = None
        if not A.is_finite_dimensional:
            rng = N.degree_range()
            cap = max(rng[1] if rng else 0, (M.degree_range() or (0, 0))[1])
        res = minimal_projective_resolution(M, h, cap)
    return ext_from_resolution(res, N, n)


def ext_total(M: GradedModule, N: GradedModule, n, horizon=None):
    """Ungraded ``Ext^n``: the sum of graded ``Ext^n(M, N<r>)`` over all shifts."""
    res = minimal_projective_resolution(M, max(n + 1, horizon or 0))
    gens = [g for k in range(n + 1) for g in res.generators(k)]
    if not gens or N.is_zero():
        return 0
    lo, hi = N.degree_range()
    # N<r>_{-b}(x) = N_{r-b}(x) is nonzero only for lo <= r - b <= hi
    shifts = {r for x, b in res.generators(n) for r in range(lo + b, hi + b + 1)}
    return sum(ext_from_resolution(res, N.shift(r), n) for r in sorted(shifts))


# -- injective side -------------------------------------------------------------------

@dataclass
class InjectiveCoresolution:
    terms: dict  # position -> list of (x, r) generators of I^n
    target: GradedModule
    horizon: int
    complete: bool

    @property
    def length(self):
        return max(self.terms) if self.terms else 0


def minimal_injective_coresolution(M: GradedModule, horizon=DEFAULT_HORIZON, floor=None):
    """Iterated injective envelopes of cokernels, positions ``0..H``."""
    A = M.algebra
    if not A.is_finite_dimensional and floor is None:
        raise Unsupported(f"{A.name} is not finite-dimensional; pass a degree floor")
    if M.is_zero():
        return InjectiveCoresolution({}, M, horizon, True)
    terms = {}
    cur = M
    complete = False
    for n in range(horizon + 1):
        env = injective_envelope(cur, floor=floor)
        terms[n] = env.injective.gens
        C, _ = cokernel_module(env.mono)
        if C.is_zero():
            complete = True
            break
        cur = C
    return InjectiveCoresolution(terms, M, horizon, complete)


def injective_dimension_up_to(M: GradedModule, horizon=DEFAULT_HORIZON):
    """The injective dimension if it is at most ``horizon``, else ``None`` (unknown)."""
    co = minimal_injective_coresolution(M, horizon)
    return co.length if co.complete else None


def projective_dimension_up_to(M: GradedModule, horizon=DEFAULT_HORIZON):
    res = minimal_projective_resolution(M, horizon)
    return res.length if res.complete else None


# -- stable Hom -----------------------------------------------------------------------

def stable_hom(M: GradedModule, N: GradedModule):
    """``dim`` of ungraded Hom(M, N) modulo maps factoring through a projective.

    A map factors through a projective iff it factors through the projective
    cover ``P(N) -> N``.
    """
    if N.is_zero() or M.is_zero():
        return 0
    A = M.algebra
    if not A.is_finite_dimensional:
        raise Unsupported("stable Hom needs a finite-dimensional algebra")
    cover = projective_cover(N)
    Pm = cover.projective.module
    total = 0
    shifts = set(shift_window(M, N)) | set(shift_window(M, Pm))
    for r in sorted(shifts):
        Nr = N.shift(r)
        homs = hom_graded(M, Nr)
        if not homs:
            continue
        epi = cover.epi.shift(r)
        through = [epi @ h for h in hom_graded(M, Pm.shift(r))]
        F = M.field
        space = Subspace(F, len(homs[0].vector()), [h.vector() for h in homs])
        image = Subspace(F, space.ambient_dim, [h.vector() for h in through])
        total += space.dim - image.dim
    return total
