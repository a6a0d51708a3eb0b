"""The K-functor from graded modules over a quadratic algebra to linear complexes
of projectives over its quadratic dual, its extension to complexes, and the
shift-compatibility isomorphism.

For a module ``M`` over ``B`` (quiver ``Q^op``) and ``A = B^!`` (quiver ``Q``):

    K(M)^n = sum_x P_x<n> (x) M_n(x)

The entry from generator ``(x, n, j)`` to ``(y, n+1, j')`` is
``sum_alpha M(alpha)_n[j', j] * alpha`` over arrows ``alpha: y -> x`` of ``Q``
(the same arrow runs ``x -> y`` in ``Q^op`` and acts on ``M``).
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

from .algebra import Elem
from .complexes import ChainMap, DoubleComplex, ModuleComplex, NotAComplex, ProjMap, ProjectiveComplex
from .linalg import Matrix
from .modules import GradedModule, ModuleMorphism
from .quiver import quadratic_dual

_duals = weakref.WeakKeyDictionary()


def dual_algebra(A):
    """The algebra of the quadratic dual, with ``dual_algebra(dual_algebra(A)) is A``."""
    D = _duals.get(A)
    if D is None:
        D = quadratic_dual(A.presentation).algebra
        _duals[A] = D
        _duals[D] = A
    return D


def pair_algebras(A, B, check=True):
    """Register ``B`` as the dual of ``A``.

    With ``check=False`` a mismatched pair is accepted; the verifiers are
    expected to reject such pairings (used for sensitivity tests).
    """
    if check and quadratic_dual(A.presentation) != B.presentation:
        raise ValueError(f"{B.name} is not the quadratic dual of {A.name}")
    _duals[A] = B
    _duals[B] = A


def _generators(M: GradedModule):
    """Generators of ``K(M)`` by position with provenance ``(x, n, j)``."""
    vs = M.quiver.vertices
    gens, prov = {}, {}
    for n in M.degrees():
        for x in vs:
            for j in range(M.dim(x, n)):
                gens.setdefault(n, []).append((x, n))
                prov.setdefault(n, []).append((x, n, j))
    return gens, prov


def _index(prov_list):
    return {p: i for i, p in enumerate(prov_list)}


def _k_differential(M, A, prov, n):
    """K-differential from position ``n`` to ``n+1`` of ``K(M)``."""
    src_prov, tgt_prov = prov.get(n, []), prov.get(n + 1, [])
    src = [(x, n) for x, _, _ in src_prov]
    tgt = [(y, n + 1) for y, _, _ in tgt_prov]
    tidx = _index(tgt_prov)
    sidx = _index(src_prov)
    F = A.field
    entries = {}
    # arrows of the dual quiver carry the module action
    for arr in M.quiver.arrows:
        mat = M.act(arr.name, n)
        if mat.nrows == 0 or mat.ncols == 0:
            continue
        x, y = arr.source, arr.target  # in Q this arrow runs y -> x
        k = A.basis(1, y, x).index((arr.name,))
        for j in range(mat.ncols):
            si = sidx[(x, n, j)]
            for jj in range(mat.nrows):
                c = mat.rows[jj][j]
                if c == 0:
                    continue
                ti = tidx[(y, n + 1, jj)]
                coords = entries.get((ti, si))
                if coords is None:
                    coords = [F.zero] * A.dim(1, y, x)
                coords[k] = F.reduce(coords[k] + c)
                entries[(ti, si)] = coords
    out = {key: Elem(A, 1, tgt[key[0]][0], src[key[1]][0], v) for key, v in entries.items()}
    return src, tgt, out


@dataclass
class KOutput:
    complex: ProjectiveComplex
    source: GradedModule
    provenance: dict  # position -> list of (x, n, j)
    boundary: int | None = None  # lowest position, unreliable for truncated inputs


def k_module(M: GradedModule, target=None, check=True) -> KOutput:
    """``K(M)`` as a symbolic linear complex over the dual algebra."""
    A = target or dual_algebra(M.algebra)
    gens, prov = _generators(M)
    diffs = {}
    for n in gens:
        if n + 1 not in gens:
            continue
        src, tgt, entries = _k_differential(M, A, prov, n)
        diffs[n] = ProjMap(A, src, tgt, entries, check=False)
    try:
        C = ProjectiveComplex(A, gens, diffs, check=check, provenance=prov)
    except NotAComplex as e:
        raise NotAComplex(f"K(M) is not a complex ({e}); M violates the dual relations") from None
    low = min(gens) if gens else None
    return KOutput(C, M, prov, low)


def _identity_tensor(A, f: ModuleMorphism, n, sprov, tprov, src, tgt):
    """``1 (x) f`` between the position-``n`` terms of two K-images."""
    tidx = _index(tprov)
    entries = {}
    for si, (x, _, j) in enumerate(sprov):
        blk = f.block(x, n)
        for jj in range(blk.nrows):
            c = blk.rows[jj][j]
            if c != 0:
                entries[(tidx[(x, n, jj)], si)] = A.idempotent(x).scale(c)
    return ProjMap(A, src, tgt, entries, check=False)


def k_morphism(f: ModuleMorphism, KM: KOutput, KN: KOutput) -> ChainMap:
    """``K(f)``: identity on the projective factor, ``f`` on the multiplicity space."""
    A = KM.complex.algebra
    comps = {}
    for n, sprov in KM.provenance.items():
        tprov = KN.provenance.get(n)
        if tprov:
            comps[n] = _identity_tensor(A, f, n, sprov, tprov, KM.complex.term(n), KN.complex.term(n))
    return ChainMap(KM.complex, KN.complex, comps)


def k_inverse(S: ProjectiveComplex, target=None) -> GradedModule:
    """Module over the dual algebra whose K-image is ``S`` (``S`` must be linear)."""
    if not S.is_linear():
        raise ValueError("k_inverse needs a linear complex")
    B = target or dual_algebra(S.algebra)
    A = S.algebra
    F = A.field
    dims, local = {}, {}
    for n, g in S.terms.items():
        for i, (x, _) in enumerate(g):
            local[(n, i)] = dims.get((x, n), 0)
            dims[(x, n)] = dims.get((x, n), 0) + 1
    action = {}
    for n, d in S.diffs.items():
        for (i, j), e in d.entries.items():
            x = S.terms[n][j][0]
            y = S.terms[n + 1][i][0]
            for (name,), c in e.terms():
                key = (name, n)
                if key not in action:
                    action[key] = Matrix.zeros(F, dims[(y, n + 1)], dims[(x, n)])
                action[key].rows[local[(n + 1, i)]][local[(n, j)]] = c
    return GradedModule(B, dims, action)


# -- complexes of modules ---------------------------------------------------------

def big_k(X: ModuleComplex, target=None) -> DoubleComplex:
    """``KK(X)^{p,q} = sum_x P_x<q> (x) X^p_q(x)``; ``d1 = 1 (x) d``, ``d2`` the K-differential."""
    A = target or dual_algebra(X.algebra)
    outs = {p: k_module(M, A, check=False) for p, M in X.terms.items()}
    terms, prov, d1, d2 = {}, {}, {}, {}
    for p, ko in outs.items():
        for q, g in ko.complex.terms.items():
            terms[(p, q)] = g
            prov[(p, q)] = [(p,) + t for t in ko.provenance[q]]
        for q, d in ko.complex.diffs.items():
            d2[(p, q)] = d
    for p, f in X.diffs.items():
        if p + 1 not in outs:
            continue
        src, tgt = outs[p], outs[p + 1]
        for q, sprov in src.provenance.items():
            tprov = tgt.provenance.get(q)
            if tprov:
                d1[(p, q)] = _identity_tensor(A, f, q, sprov, tprov, terms[(p, q)], terms[(p + 1, q)])
    return DoubleComplex(A, terms, d1, d2, provenance=prov)


def quadratic_functor(X: ModuleComplex, target=None) -> ProjectiveComplex:
    """``F(X) = Tot(KK(X))``."""
    return big_k(X, target).tot()


def quadratic_functor_map(f, X: ModuleComplex, Y: ModuleComplex, target=None) -> ChainMap:
    """``F`` on a chain map ``f: X -> Y`` of module complexes (``f.comps[p]``)."""
    A = target or dual_algebra(X.algebra)
    DX, DY = big_k(X, A), big_k(Y, A)
    TX, TY = DX.tot(), DY.tot()
    comps = {}
    for n, sprov in TX.provenance.items():
        tprov = TY.provenance.get(n)
        if not tprov:
            continue
        tidx = _index(tprov)
        entries = {}
        for si, (p, x, q, j) in enumerate(sprov):
            blk = f.comp(p).block(x, q)
            for jj in range(blk.nrows):
                c = blk.rows[jj][j]
                if c != 0:
                    entries[(tidx[(p, x, q, jj)], si)] = A.idempotent(x).scale(c)
        comps[n] = ProjMap(A, TX.term(n), TY.term(n), entries, check=False)
    return ChainMap(TX, TY, comps)


# -- shift compatibility -----------------------------------------------------------

def shift_sign(i):
    """Sign of the shift-compatibility map on the summand ``(p, q)``: ``(-1)^{ip} (-1)^{iq}``."""
    return lambda p, q: (-1) ** ((i * p) % 2) * (-1) ** ((i * q) % 2)


@dataclass
class ShiftCompat:
    phi: dict  # position -> ProjMap
    src: ProjectiveComplex
    tgt: ProjectiveComplex
    is_chain_map: bool
    is_isomorphism: bool


def shift_compat_iso(X: ModuleComplex, i: int, sign=None, target=None) -> ShiftCompat:
    """``Phi: F(X<i>[-i]) -> F(X)<-i>``, identity on generators up to ``sign(p, q)``.

    ``(p, q)`` index the double complex of ``X<i>[-i]``; the summand lands in
    the ``(p - i, q + i)`` summand of ``KK(X)``.
    """
    A = target or dual_algebra(X.algebra)
    sign = sign or shift_sign(i)
    Y = X.grade_shift(i).shift(-i)
    src = quadratic_functor(Y, A)
    tgt = quadratic_functor(X, A).grade_shift(-i)
    phi = {}
    ok_shape = True
    for n, sprov in src.provenance.items():
        tprov = tgt.provenance.get(n, [])
        tidx = _index(tprov)
        entries = {}
        for si, (p, x, q, j) in enumerate(sprov):
            key = (p - i, x, q + i, j)
            if key not in tidx:
                ok_shape = False
                continue
            entries[(tidx[key], si)] = A.idempotent(x).scale(sign(p, q))
        phi[n] = ProjMap(A, src.term(n), tgt.term(n), entries)
    if not ok_shape or src.terms != tgt.terms:
        return ShiftCompat(phi, src, tgt, False, False)
    cm = ChainMap(src, tgt, phi, check=False)
    return ShiftCompat(phi, src, tgt, cm.violation() is None, cm.is_isomorphism())
