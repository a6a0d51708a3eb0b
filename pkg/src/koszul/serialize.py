"""JSON formats for modules, symbolic complexes and Ext tables.

Module files::

    {"algebra": "EXT1",
     "dims": [["v", 0, 1], ["v", 1, 1]],
     "action": {"a": [[0, [["1"]]]]}}

Scalars are strings (``"3/2"``, or residues for GF(p)).  A standard module can
be named instead::

    {"algebra": "EXT1", "standard": "simple", "vertex": "v", "shift": 0}

with ``standard`` one of ``simple``, ``projective``, ``injective`` and an
optional ``depth`` bounding path length over infinite algebras.
"""

from __future__ import annotations

import json

from .dsl import format_combination
from .linalg import Matrix
from .modules import GradedModule, injective, projective, simple

SCHEMA = 1


class FormatError(ValueError):
    pass


def module_to_dict(M: GradedModule):
    F = M.field
    dims = [[x, n, d] for (x, n), d in sorted(M.dims.items(), key=lambda kv: (kv[0][1], kv[0][0])) if d]
    action = {}
    for (a, n), mat in sorted(M.action.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        if mat.is_zero():
            continue
        action.setdefault(a, []).append([n, [[F.format(c) for c in row] for row in mat.rows]])
    return {"schema": SCHEMA, "algebra": M.algebra.name, "dims": dims, "action": action}


def module_from_dict(A, data):
    if not isinstance(data, dict):
        raise FormatError("module JSON must be an object")
    F = A.field
    if "standard" in data:
        kind = data["standard"]
        x = str(data.get("vertex", ""))
        if x not in A.vertices:
            raise FormatError(f"unknown vertex {x!r}")
        r = int(data.get("shift", 0))
        depth = data.get("depth")
        if kind == "simple":
            return simple(A, x, r)
        if kind == "projective":
            return projective(A, x, r, horizon=depth if depth is not None else _default_depth(A))
        if kind == "injective":
            return injective(A, x, r, horizon=depth if depth is not None else _default_depth(A))
        raise FormatError(f"unknown standard module {kind!r}")
    try:
        dims = {(str(x), int(n)): int(d) for x, n, d in data["dims"]}
    except (KeyError, TypeError, ValueError):
        raise FormatError("'dims' must be a list of [vertex, degree, dim]") from None
    for x, _ in dims:
        if x not in A.vertices:
            raise FormatError(f"unknown vertex {x!r}")
    action = {}
    for a, entries in data.get("action", {}).items():
        if not A.quiver.has_arrow(a):
            raise FormatError(f"unknown arrow {a!r}")
        arr = A.quiver.arrow(a)
        for n, rows in entries:
            n = int(n)
            nr, nc = dims.get((arr.target, n + 1), 0), dims.get((arr.source, n), 0)
            try:
                mat = Matrix(F, [[F.parse(str(c)) for c in row] for row in rows], nc)
            except (ValueError, ZeroDivisionError) as e:
                raise FormatError(f"bad matrix for {a} in degree {n}: {e}") from None
            if mat.shape != (nr, nc):
                raise FormatError(f"matrix for {a} in degree {n} has shape {mat.shape}, expected {(nr, nc)}")
            action[(a, n)] = mat
    return GradedModule(A, dims, action)


def _default_depth(A):
    return None if A.is_finite_dimensional else 6


def load_module(A, path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise FormatError(f"{path}: {e}") from None
    return module_from_dict(A, data)


def _runs(gens):
    """Run-length encoding ``[[x, r, multiplicity], ...]`` that keeps generator order."""
    out = []
    for x, r in gens:
        if out and out[-1][0] == x and out[-1][1] == r:
            out[-1][2] += 1
        else:
            out.append([x, r, 1])
    return out


def complex_to_dict(C, extra=None):
    """Symbolic complex: terms as ``[[n, [[x, r, mult], ...]], ...]`` and differentials
    as ``[[n, [[row, col, coords, paths], ...]], ...]`` with coordinates in the
    degree basis of the algebra."""
    F = C.algebra.field
    out = {"schema": SCHEMA, "algebra": C.algebra.name,
           "terms": [[n, _runs(g)] for n, g in sorted(C.terms.items())],
           "diffs": []}
    for n, d in sorted(C.diffs.items()):
        entries = []
        for (i, j), e in sorted(d.entries.items()):
            paths = {"*".join(p) if p else f"e_{e.src}": F.format(c) for p, c in e.terms()}
            entries.append([i, j, [F.format(c) for c in e.coords], paths])
        out["diffs"].append([n, entries])
    if extra:
        out.update(extra)
    return out


def ext_table_to_dict(A, table, horizon=None, cert=None):
    entries = [[n, x, y, i, d] for (n, x, y, i), d in sorted(table.items(), key=lambda kv: (
        kv[0][0], A.vertices.index(kv[0][1]), A.vertices.index(kv[0][2]), kv[0][3]))]
    out = {"schema": SCHEMA, "algebra": A.name, "horizon": horizon, "entries": entries}
    if cert is not None:
        out["verdict"] = str(cert)
    return out


def presentation_to_dict(P):
    F = P.field
    rels = [format_combination(F, combo) for _, _, combo in P.relation_vectors()]
    return {"schema": SCHEMA, "name": P.name, "field": "Q" if F.is_rational else f"GF {F.p}",
            "vertices": list(P.quiver.vertices),
            "arrows": [[a.name, a.source, a.target] for a in P.quiver.arrows],
            "relations": rels}


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2)
