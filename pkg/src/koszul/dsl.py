"""Line-oriented text format for presentations.

::

    algebra EXT2 over Q
    vertices v
    arrow a : v -> v
    arrow b : v -> v
    relation a*a
    relation b*b
    relation a*b + b*a

Paths are written right-to-left: ``b*a`` means "first ``a``, then ``b``".
``#`` starts a comment.
"""

from __future__ import annotations

import re
import warnings
from fractions import Fraction

from .linalg import Field
from .quiver import Arrow, HomogeneousPresentation, QuadraticPresentation, Quiver

IDENT = r"[A-Za-z_][A-Za-z0-9_'!]*"
_token_re = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<id>" + IDENT + r")|(?P<op>[-+*]))")


class DSLError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}" + (f", col {col}" if col is not None else "") if line else ""
        super().__init__(f"{where}: {message}" if where else message)


class NotQuadratic(DSLError):
    pass


class UnknownSymbol(DSLError):
    pass


class MixedBlocksWarning(UserWarning):
    pass


def _tokens(text, lineno, offset):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _token_re.match(text, pos)
        if not m or m.end() == pos:
            col = offset + pos + (len(text[pos:]) - len(text[pos:].lstrip())) + 1
            raise DSLError(f"unexpected character {text[pos:].lstrip()[:1]!r}", lineno, col)
        kind = m.lastgroup
        col = offset + m.start(kind) + 1
        out.append((kind, m.group(kind), col))
        pos = m.end()
    return out


def _parse_combination(text, lineno, offset, field, quiver):
    """Parse ``[coef] path (+|-) ...`` into a list of ``(coef, path, col)``."""
    toks = _tokens(text, lineno, offset)
    if not toks:
        raise DSLError("empty relation", lineno, offset + 1)
    terms = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(toks):
        kind, val, col = toks[i]
        if not expect_term:
            if kind == "op" and val in "+-":
                sign = 1 if val == "+" else -1
                expect_term = True
                i += 1
                continue
            raise DSLError(f"expected '+' or '-', got {val!r}", lineno, col)
        if kind == "op" and val in "+-":
            sign = -sign if val == "-" else sign
            i += 1
            continue
        coef = Fraction(1)
        start = col
        if kind == "num":
            coef = Fraction(val)
            i += 1
            if i < len(toks) and toks[i][0] == "op" and toks[i][1] == "*":
                i += 1
        path = []
        while i < len(toks) and toks[i][0] == "id":
            name, ncol = toks[i][1], toks[i][2]
            if not quiver.has_arrow(name):
                raise UnknownSymbol(f"unknown arrow {name!r}", lineno, ncol)
            path.append(name)
            i += 1
            if i < len(toks) and toks[i][0] == "op" and toks[i][1] == "*":
                i += 1
                if i >= len(toks) or toks[i][0] != "id":
                    raise DSLError("dangling '*'", lineno, toks[i - 1][2])
            else:
                break
        if not path:
            raise DSLError("a term needs a path", lineno, start)
        try:
            quiver.path_ends(tuple(path))
        except ValueError:
            raise DSLError(f"path {'*'.join(path)} is not composable", lineno, start) from None
        terms.append((field(coef * sign), tuple(path), start))
        sign = 1
        expect_term = False
    if expect_term:
        raise DSLError("relation ends with an operator", lineno, toks[-1][2])
    return terms


def parse_homogeneous(text: str):
    """Parse text allowing homogeneous relations of any length >= 2.

    Returns a :class:`QuadraticPresentation` when every relation is quadratic
    and a :class:`HomogeneousPresentation` otherwise.
    """
    return _parse(text, allow_higher=True)


def parse_presentation(text: str) -> QuadraticPresentation:
    return _parse(text, allow_higher=False)


def _parse(text, allow_higher):
    name, field, vertices, arrows = None, None, None, []
    rel_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        head, _, rest = stripped.partition(" ")
        rest_offset = indent + len(head) + 1
        if head == "algebra":
            m = re.match(r"\s*(" + IDENT + r")\s+over\s+(Q|GF\s+(\d+))\s*$", rest)
            if not m:
                raise DSLError("expected 'algebra <name> over Q' or 'over GF <p>'", lineno, rest_offset + 1)
            if name is not None:
                raise DSLError("duplicate algebra header", lineno, 1)
            name = m.group(1)
            try:
                field = Field(int(m.group(3))) if m.group(3) else Field()
            except ValueError as e:
                raise DSLError(str(e), lineno, rest_offset + m.start(3) + 1) from None
        elif head == "vertices":
            if vertices is not None:
                raise DSLError("duplicate vertices line", lineno, 1)
            vertices = rest.split()
            for v in vertices:
                if not re.match(r"[A-Za-z0-9_']+$", v):
                    raise DSLError(f"bad vertex name {v!r}", lineno, rest_offset + rest.index(v) + 1)
            if not vertices:
                raise DSLError("no vertices declared", lineno, rest_offset)
        elif head == "arrow":
            m = re.match(r"\s*(" + IDENT + r")\s*:\s*(\S+)\s*->\s*(\S+)\s*$", rest)
            if not m:
                raise DSLError("expected 'arrow <name> : <src> -> <tgt>'", lineno, rest_offset + 1)
            if vertices is None:
                raise DSLError("arrows must follow the vertices line", lineno, 1)
            for g in (2, 3):
                if m.group(g) not in vertices:
                    raise UnknownSymbol(f"unknown vertex {m.group(g)!r}", lineno, rest_offset + m.start(g) + 1)
            if any(a.name == m.group(1) for a in arrows):
                raise DSLError(f"duplicate arrow {m.group(1)!r}", lineno, rest_offset + m.start(1) + 1)
            arrows.append(Arrow(m.group(1), m.group(2), m.group(3)))
        elif head == "relation":
            rel_lines.append((lineno, rest, rest_offset))
        else:
            raise DSLError(f"unknown keyword {head!r}", lineno, indent + 1)
    if name is None:
        raise DSLError("missing 'algebra' header")
    if vertices is None:
        raise DSLError("missing 'vertices' line")
    quiver = Quiver(vertices, arrows)

    blocks = {}
    higher = []
    for lineno, body, offset in rel_lines:
        terms = _parse_combination(body, lineno, offset, field, quiver)
        lengths = {len(p) for _, p, _ in terms}
        for c, p, col in terms:
            if len(p) < 2 or (len(p) != 2 and not allow_higher):
                raise NotQuadratic(f"term {'*'.join(p)} has length {len(p)}, expected 2", lineno, col)
        if len(lengths) > 1:
            c, p, col = next(t for t in terms if len(t[1]) != min(lengths))
            raise NotQuadratic(f"relation is not homogeneous (term {'*'.join(p)})", lineno, col)
        (n,) = lengths
        split = {}
        for c, p, _ in terms:
            split.setdefault(quiver.path_ends(p), {}).setdefault(p, 0)
            split[quiver.path_ends(p)][p] = field.reduce(split[quiver.path_ends(p)][p] + c)
        if len(split) > 1:
            warnings.warn(f"line {lineno}: relation mixes {len(split)} vertex blocks; split into its blocks",
                          MixedBlocksWarning, stacklevel=3)
        for (x, z), combo in split.items():
            paths = quiver.paths(n, x, z)
            vec = [field.zero] * len(paths)
            for i, p in enumerate(paths):
                vec[i] = combo.get(p, field.zero)
            if n == 2:
                blocks.setdefault((x, z), []).append(vec)
            else:
                higher.append((n, x, z, vec))
    quad = QuadraticPresentation(quiver, field, blocks, name=name)
    if higher:
        rels = [(2, x, z, v) for (x, z), sub in quad.relations.items() for v in sub.vectors()]
        return HomogeneousPresentation(quiver, field, rels + higher, name=name)
    return quad


def format_path(path):
    return "*".join(path)


def format_combination(field, combo):
    """``{path: coef}`` as DSL text, terms in path order."""
    parts = []
    for p in sorted(combo):
        c = combo[p]
        if c == 0:
            continue
        s = field.format(c)
        neg = field.is_rational and s.startswith("-")
        if neg:
            s = s[1:]
        word = format_path(p) if s == "1" else f"{s}*{format_path(p)}"
        if not parts:
            parts.append(("-" if neg else "") + word)
        else:
            parts.append(("- " if neg else "+ ") + word)
    return " ".join(parts) if parts else "0"


def format_presentation(P) -> str:
    """Canonical DSL text; relations appear as the stored rref basis."""
    field = P.field
    lines = [f"algebra {P.name} over {'Q' if field.is_rational else f'GF {field.p}'}",
             "vertices " + " ".join(P.quiver.vertices)]
    for a in P.quiver.arrows:
        lines.append(f"arrow {a.name} : {a.source} -> {a.target}")
    if isinstance(P, HomogeneousPresentation):
        for n, x, z, v in P.relations:
            combo = dict(zip(P.quiver.paths(n, x, z), v))
            lines.append("relation " + format_combination(field, combo))
    else:
        for _, _, combo in P.relation_vectors():
            lines.append("relation " + format_combination(field, combo))
    return "\n".join(lines) + "\n"
