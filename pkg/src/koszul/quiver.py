"""Quivers, paths and quadratic presentations.

Paths are tuples of arrow names written right-to-left, as for composition of
functions: ``("b", "a")`` is "first ``a``, then ``b``".  The empty tuple is the
trivial path; its vertex is always carried alongside.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .linalg import Field, Subspace


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in arrows)
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow name")
        vs = set(self.vertices)
        for a in arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} has an undeclared endpoint")
        # canonical order: by name
        self.arrows = tuple(sorted(arrows, key=lambda a: a.name))
        self._by_name = {a.name: a for a in self.arrows}
        self._paths = {}

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        arr = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}; {arr})"

    def arrow(self, name) -> Arrow:
        return self._by_name[name]

    def has_arrow(self, name):
        return name in self._by_name

    def arrows_from(self, x):
        return [a for a in self.arrows if a.source == x]

    def arrows_to(self, z):
        return [a for a in self.arrows if a.target == z]

    def arrows_between(self, x, z):
        return [a for a in self.arrows if a.source == x and a.target == z]

    def opposite(self) -> "Quiver":
        """Opposite quiver; the reversed arrow keeps its name."""
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def path_ends(self, path, x=None):
        """(source, target) of a nonempty path; validates composability."""
        if not path:
            return (x, x)
        arrows = [self._by_name[n] for n in path]
        for later, earlier in zip(arrows, arrows[1:]):
            if later.source != earlier.target:
                raise ValueError(f"path {'*'.join(path)} is not composable")
        return arrows[-1].source, arrows[0].target

    def paths(self, n, x, z):
        """Sorted list of length-``n`` paths from ``x`` to ``z``."""
        key = (n, x, z)
        if key not in self._paths:
            if n == 0:
                out = [()] if x == z else []
            else:
                out = []
                for a in self.arrows_to(z):
                    for p in self.paths(n - 1, x, a.source):
                        out.append((a.name,) + p)
                out.sort()
            self._paths[key] = out
        return self._paths[key]


def opposite_path(path):
    """The path of the opposite quiver traversing ``path`` backwards."""
    return tuple(reversed(path))


class QuadraticPresentation:
    """A quiver, a field and a relation subspace for every (source, target) block.

    ``relations[(x, z)]`` is a :class:`Subspace` of the span of
    ``quiver.paths(2, x, z)``.  Blocks absent from the mapping carry no
    relations.
    """

    def __init__(self, quiver: Quiver, field: Field, relations=None, name: str = "A"):
        self.quiver = quiver
        self.field = field
        self.name = name
        rel = {}
        for (x, z), sub in (relations or {}).items():
            amb = len(quiver.paths(2, x, z))
            if not isinstance(sub, Subspace):
                sub = Subspace(field, amb, sub)
            if sub.ambient_dim != amb:
                raise ValueError(f"relation block ({x},{z}) has wrong ambient dimension")
            if sub.dim:
                rel[(x, z)] = sub
        self.relations = rel

    def relation_block(self, x, z) -> Subspace:
        sub = self.relations.get((x, z))
        if sub is None:
            return Subspace(self.field, len(self.quiver.paths(2, x, z)))
        return sub

    def blocks(self):
        """All (x, z) pairs that carry at least one length-two path."""
        return [(x, z) for x in self.quiver.vertices for z in self.quiver.vertices
                if self.quiver.paths(2, x, z)]

    def relation_vectors(self):
        """Yields ``(x, z, {path: coefficient})`` for every stored basis relation."""
        for (x, z) in sorted(self.relations, key=self._block_key):
            paths = self.quiver.paths(2, x, z)
            for row in self.relations[(x, z)].basis.rows:
                yield x, z, {p: c for p, c in zip(paths, row) if c != 0}

    def _block_key(self, xz):
        idx = {v: i for i, v in enumerate(self.quiver.vertices)}
        return (idx[xz[0]], idx[xz[1]])

    @property
    def num_relations(self):
        return sum(s.dim for s in self.relations.values())

    def __eq__(self, other):
        if not isinstance(other, QuadraticPresentation):
            return NotImplemented
        return (self.quiver == other.quiver and self.field == other.field
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.quiver, self.field, tuple(sorted(self.relations.items(), key=lambda kv: kv[0]))))

    def __repr__(self):
        return f"QuadraticPresentation({self.name!r}, {self.quiver}, {self.num_relations} relations over {self.field})"

    @cached_property
    def algebra(self):
        from .algebra import GradedAlgebra
        return GradedAlgebra(self)


def quadratic_dual(P: QuadraticPresentation, name: str | None = None) -> QuadraticPresentation:
    """Opposite quiver with the annihilator of each relation block.

    The block of paths ``x -> z`` pairs with the block ``z -> x`` of the
    opposite quiver via path reversal; coordinates are re-sorted into the
    opposite block's canonical order before the annihilator is stored.
    """
    Qop = P.quiver.opposite()
    rel = {}
    for (x, z) in P.blocks():
        paths = P.quiver.paths(2, x, z)
        ann = P.relation_block(x, z).annihilator()
        op_paths = Qop.paths(2, z, x)
        index = {p: i for i, p in enumerate(op_paths)}
        perm = [index[opposite_path(p)] for p in paths]
        vecs = []
        for row in ann.basis.rows:
            v = [P.field.zero] * len(op_paths)
            for i, c in enumerate(row):
                v[perm[i]] = c
            vecs.append(v)
        rel[(z, x)] = Subspace(P.field, len(op_paths), vecs)
    if name is None:
        name = P.name[:-1] if P.name.endswith("!") else P.name + "!"
    return QuadraticPresentation(Qop, P.field, rel, name=name)


class HomogeneousPresentation:
    """Relations of arbitrary path length (each relation homogeneous).

    ``relations`` is a list of ``(length, x, z, vector)`` with ``vector``
    indexed by ``quiver.paths(length, x, z)``.
    """

    def __init__(self, quiver, field, relations, name="A"):
        self.quiver = quiver
        self.field = field
        self.relations = [(n, x, z, [field(c) for c in v]) for n, x, z, v in relations]
        self.name = name

    @property
    def max_length(self):
        return max((n for n, *_ in self.relations), default=2)

    def higher_relations(self):
        return [r for r in self.relations if r[0] != 2]

    def __repr__(self):
        return f"HomogeneousPresentation({self.name!r}, {len(self.relations)} relations)"


def associated_quadratic(H: HomogeneousPresentation) -> QuadraticPresentation:
    """The quadratic presentation cut out by the degree-two relations alone."""
    if isinstance(H, QuadraticPresentation):
        return H
    blocks = {}
    for n, x, z, v in H.relations:
        if n == 2:
            blocks.setdefault((x, z), []).append(v)
        elif n < 2:
            raise ValueError("relations must have length at least two")
    rel = {xz: Subspace(H.field, len(H.quiver.paths(2, *xz)), vs) for xz, vs in blocks.items()}
    return QuadraticPresentation(H.quiver, H.field, rel, name=H.name)


def ideal_component(P: QuadraticPresentation, n: int, x, z) -> Subspace:
    """Degree-``n`` part of the ideal, inside the span of length-``n`` paths.

    Brute force: spans ``p * r * q`` over all relation basis vectors ``r`` and
    paths ``p``, ``q``.  Exponential in ``n``; used as an oracle and for
    membership of higher relations.
    """
    Q = P.quiver
    paths = Q.paths(n, x, z)
    index = {p: i for i, p in enumerate(paths)}
    vecs = []
    if n >= 2:
        for i in range(n - 1):
            j = n - 2 - i  # length of the right factor
            for (u, w), sub in P.relations.items():
                rpaths = Q.paths(2, u, w)
                for right in Q.paths(j, x, u):
                    for left in Q.paths(i, w, z):
                        for row in sub.basis.rows:
                            v = [P.field.zero] * len(paths)
                            for rp, c in zip(rpaths, row):
                                if c != 0:
                                    v[index[left + rp + right]] = c
                            vecs.append(v)
    return Subspace(P.field, len(paths), vecs)


def is_quadratic_ideal(H: HomogeneousPresentation) -> tuple[bool, tuple | None]:
    """Whether every higher relation lies in the ideal of the quadratic ones.

    Returns ``(ok, witness)`` where the witness is the first relation outside.
    """
    if isinstance(H, QuadraticPresentation):
        return True, None
    quad = associated_quadratic(H)
    for rel in H.higher_relations():
        n, x, z, v = rel
        if v not in ideal_component(quad, n, x, z):
            return False, rel
    return True, None


def is_well_directed(q: Quiver) -> tuple[bool, list | None]:
    """Total order with every arrow joining consecutive vertices, all pointing up.

    The underlying graph must be a disjoint union of paths with each path's
    arrows consistently oriented; the order concatenates the components.
    """
    if any(a.source == a.target for a in q.arrows):
        return False, None
    nbrs = {v: set() for v in q.vertices}
    for a in q.arrows:
        nbrs[a.source].add(a.target)
        nbrs[a.target].add(a.source)
    seen = set()
    order = []
    for v in q.vertices:
        if v in seen:
            continue
        comp = []
        stack = [v]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            comp.append(u)
            stack.extend(nbrs[u] - seen)
        edges = {frozenset((a.source, a.target)) for a in q.arrows if a.source in comp}
        if any(len(nbrs[u]) > 2 for u in comp) or len(edges) != len(comp) - 1:
            return False, None
        if len(comp) == 1:
            order.extend(comp)
            continue
        # walk from an endpoint
        start = next(u for u in comp if len(nbrs[u]) == 1)
        chain = [start]
        prev = None
        while len(chain) < len(comp):
            cur = chain[-1]
            nxt = next(w for w in nbrs[cur] if w != prev)
            prev = cur
            chain.append(nxt)
        forward = {(a, b) for a, b in zip(chain, chain[1:])}
        dirs = {(a.source, a.target) in forward for a in q.arrows if a.source in comp}
        if len(dirs) != 1:
            return False, None
        if dirs == {False}:
            chain.reverse()
        order.extend(chain)
    return True, order


def random_presentation(rng, field: Field, max_vertices=3, max_arrows=4, name="RAND"):
    """A random quadratic presentation with random relation subspaces."""
    nv = rng.randint(1, max_vertices)
    verts = [str(i) for i in range(nv)]
    na = rng.randint(1, max_arrows)
    arrows = [Arrow(f"a{i}", rng.choice(verts), rng.choice(verts)) for i in range(na)]
    Q = Quiver(verts, arrows)
    rel = {}
    for x, z in itertools.product(verts, verts):
        amb = len(Q.paths(2, x, z))
        if amb == 0:
            continue
        k = rng.randint(0, amb)
        vecs = [[field.random(rng) for _ in range(amb)] for _ in range(k)]
        rel[(x, z)] = Subspace(field, amb, vecs)
    return QuadraticPresentation(Q, field, rel, name=name)
