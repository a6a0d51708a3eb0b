"""Named example presentations.

``CORPUS`` holds the standard examples; ``EXTRA`` holds helpers used by the
verification suites (the path algebra of A3, whose dual is RSZ on the
opposite quiver).
"""

from __future__ import annotations

from .dsl import parse_presentation

_TEXTS = {
    "EXT1": """\
# exterior algebra on one generator: k[a]/(a^2)
algebra EXT1 over Q
vertices v
arrow a : v -> v
relation a*a
""",
    "EXT2": """\
# exterior algebra on two generators
algebra EXT2 over Q
vertices v
arrow a : v -> v
arrow b : v -> v
relation a*a
relation b*b
relation a*b + b*a
""",
    "SYM2": """\
# polynomial ring in two variables
algebra SYM2 over Q
vertices v
arrow a : v -> v
arrow b : v -> v
relation a*b - b*a
""",
    "RSZ_A3": """\
# radical square zero algebra of the linear A3 quiver
algebra RSZ_A3 over Q
vertices 1 2 3
arrow a : 1 -> 2
arrow b : 2 -> 3
relation b*a
""",
    "REM21": """\
# two vertices, one loop each, squares zero, alpha intertwines the loops
algebra REM21 over Q
vertices x y
arrow alpha : x -> y
arrow beta : y -> y
arrow gamma : x -> x
relation beta*beta
relation gamma*gamma
relation beta*alpha - alpha*gamma
""",
}

_EXTRA_TEXTS = {
    "KA3": """\
# path algebra of the linear A3 quiver
algebra KA3 over Q
vertices 1 2 3
arrow a : 1 -> 2
arrow b : 2 -> 3
""",
}


def beilinson_text(d: int) -> str:
    """Beilinson quiver: vertices 0..d, d+1 parallel arrows between neighbours.

    Arrow ``x{a}_{r}`` goes ``r -> r+1``; the relations make the arrows
    commute: ``x{a}_{r+1} * x{b}_{r} = x{b}_{r+1} * x{a}_{r}``.
    """
    lines = [f"# Beilinson algebra for d = {d}", f"algebra BEIL_{d} over Q",
             "vertices " + " ".join(str(r) for r in range(d + 1))]
    for r in range(d):
        for a in range(d + 1):
            lines.append(f"arrow x{a}_{r} : {r} -> {r + 1}")
    for r in range(d - 1):
        for a in range(d + 1):
            for b in range(a + 1, d + 1):
                lines.append(f"relation x{a}_{r + 1}*x{b}_{r} - x{b}_{r + 1}*x{a}_{r}")
    return "\n".join(lines) + "\n"


_TEXTS["BEIL_1"] = beilinson_text(1)
_TEXTS["BEIL_2"] = beilinson_text(2)

CORPUS = ("EXT1", "EXT2", "SYM2", "RSZ_A3", "BEIL_1", "BEIL_2", "REM21")
EXTRA = ("KA3",)

_cache = {}


def corpus_text(name: str) -> str:
    if name in _TEXTS:
        return _TEXTS[name]
    if name in _EXTRA_TEXTS:
        return _EXTRA_TEXTS[name]
    raise KeyError(f"unknown corpus algebra {name!r}; known: {', '.join(CORPUS + EXTRA)}")


def load(name: str):
    """The presentation of a corpus algebra (cached; presentations are immutable)."""
    if name not in _cache:
        _cache[name] = parse_presentation(corpus_text(name))
    return _cache[name]
