"""Command-line interface.

Exit status: 0 success, 1 a check failed, 2 usage or parse error,
3 only Inconclusive outcomes.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import warnings
from dataclasses import dataclass

from . import corpus
from .dsl import DSLError, format_presentation, parse_homogeneous
from .kfunctor import dual_algebra, k_module
from .quiver import HomogeneousPresentation, associated_quadratic, quadratic_dual
from .resolution import ext_simple_table, koszulity_check, minimal_projective_resolution
from .serialize import (FormatError, complex_to_dict, dumps, ext_table_to_dict, load_module,
                        presentation_to_dict)
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

IDENTITIES = ("involution", "generator-homs", "precovering", "orbit", "hilbert", "stable",
              "k-homotopy", "shift-compat")


@dataclass
class Config:
    field: str | None = None
    horizon: int = 6
    window: int = 3
    seed: int = 0
    format: str = "table"

    def validate(self):
        if self.horizon < 1:
            raise ValueError("horizon must be at least 1")
        if self.window < 0:
            raise ValueError("window must be non-negative")


class UsageError(Exception):
    pass


def read_presentation(source, field=None):
    """A file path or a corpus name; ``field`` (``Q`` or ``GF p``) overrides the header."""
    if os.path.exists(source):
        with open(source) as fh:
            text = fh.read()
    elif source in corpus.CORPUS + corpus.EXTRA:
        text = corpus.corpus_text(source)
    else:
        raise UsageError(f"no such file or corpus algebra: {source}")
    if field:
        f = "Q" if field.upper() == "Q" else "GF " + re.sub(r"(?i)^gf\s*", "", field)
        text = re.sub(r"(?m)^(\s*algebra\s+\S+\s+over\s+)(Q|GF\s+\d+)", lambda m: m.group(1) + f, text, count=1)
    return parse_homogeneous(text)


def _quadratic(P):
    return associated_quadratic(P) if isinstance(P, HomogeneousPresentation) else P


def _emit(cfg, data, table):
    if cfg.format == "json":
        print(dumps(data))
    else:
        print(table)


def build_parser():
    p = argparse.ArgumentParser(prog="koszul", description="Quadratic duals, resolutions and Koszul duality checks.")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--field", help="override the field: Q or GF<p>")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, **kw):
        s = sub.add_parser(name, **kw)
        s.add_argument("file", help="presentation file or corpus name")
        return s

    with_file("parse", help="parse and print the canonical presentation")
    with_file("dual", help="print the quadratic dual")
    s = with_file("koszul-check", help="scan the Ext table of the simples")
    s.add_argument("--horizon", type=int, default=6)
    s = with_file("resolve", help="minimal graded projective resolution of a module")
    s.add_argument("--module", required=True)
    s.add_argument("--horizon", type=int, default=6)
    s = with_file("ext-table", help="Ext between simples")
    s.add_argument("--horizon", type=int, default=6)
    s = with_file("kfunctor", help="K-image of a module over the algebra, a complex over its dual")
    s.add_argument("--module", required=True)
    s = sub.add_parser("verify", help="run a verification identity")
    s.add_argument("identity", choices=IDENTITIES + ("all",))
    s.add_argument("file")
    s.add_argument("--window", type=int, default=3)
    s.add_argument("--horizon", type=int, default=6)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=None)
    s = with_file("hilbert", help="Hilbert matrices and the alternating-sum diagnostic")
    s.add_argument("--n", type=int, default=6)
    s = sub.add_parser("corpus", help="built-in algebras")
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("name", nargs="?")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    cfg = Config(field=args.field, format=args.format, horizon=getattr(args, "horizon", 6),
                 window=getattr(args, "window", 3), seed=getattr(args, "seed", 0))
    try:
        cfg.validate()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return COMMANDS[args.command](args, cfg)
    except DSLError as e:
        print(f"parse error: {e}", file=sys.stderr)
    except (UsageError, FormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_USAGE


def cmd_parse(args, cfg):
    P = read_presentation(args.file, cfg.field)
    data = presentation_to_dict(_quadratic(P))
    if isinstance(P, HomogeneousPresentation):
        data["higher_relations"] = len([r for r in P.relations if r[0] > 2])
    _emit(cfg, data, format_presentation(P).rstrip())
    return EXIT_OK


def cmd_dual(args, cfg):
    P = read_presentation(args.file, cfg.field)
    if isinstance(P, HomogeneousPresentation):
        raise UsageError("the quadratic dual needs a quadratic presentation")
    D = quadratic_dual(P)
    _emit(cfg, presentation_to_dict(D), format_presentation(D).rstrip())
    return EXIT_OK


def cmd_koszul_check(args, cfg):
    P = read_presentation(args.file, cfg.field)
    cert = koszulity_check(P, cfg.horizon)
    data = {"schema": 1, "algebra": P.name, "horizon": cfg.horizon, "verdict": cert.verdict,
            "summary": str(cert), "witness": list(cert.witness) if cert.witness else None}
    _emit(cfg, data, f"{P.name}: {cert}")
    return EXIT_OK if cert.is_koszul_up_to else EXIT_FAIL


def cmd_resolve(args, cfg):
    A = _quadratic(read_presentation(args.file, cfg.field)).algebra
    M = load_module(A, args.module)
    res = minimal_projective_resolution(M, cfg.horizon)
    C = res.complex
    extra = {"complete": res.complete, "horizon": res.horizon, "cap": res.cap,
             "linear": C.is_linear(), "minimal": C.is_minimal()}
    head = f"resolution over {A.name} (complete={res.complete}, linear={C.is_linear()})"
    _emit(cfg, complex_to_dict(C, extra), head + "\n" + C.describe())
    return EXIT_OK


def cmd_ext_table(args, cfg):
    P = read_presentation(args.file, cfg.field)
    cert = koszulity_check(P, cfg.horizon)
    A = _quadratic(P).algebra
    table = cert.table or ext_simple_table(A, cfg.horizon)
    lines = [f"{'n':>3} {'x':>6} {'y':>6} {'shift':>6} {'dim':>4}"]
    data = ext_table_to_dict(A, table, cfg.horizon, cert)
    for n, x, y, i, d in data["entries"]:
        lines.append(f"{n:>3} {x:>6} {y:>6} {i:>6} {d:>4}")
    lines.append(str(cert))
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


def cmd_kfunctor(args, cfg):
    A = _quadratic(read_presentation(args.file, cfg.field)).algebra
    M = load_module(A, args.module)
    ko = k_module(M)
    C = ko.complex
    extra = {"source_algebra": A.name, "linear": C.is_linear(), "minimal": C.is_minimal()}
    _emit(cfg, complex_to_dict(C, extra), f"K(M) over {C.algebra.name}\n" + C.describe())
    return EXIT_OK


def _run_identity(name, P, cfg, samples):
    A = P.algebra
    if name == "involution":
        return [V.verify_involution(P)]
    if name == "generator-homs":
        return [V.verify_generator_homs(A, cfg.window, cfg.horizon)]
    if name == "precovering":
        return [V.verify_precovering(A, samples or 50, complexes=10 if A.is_finite_dimensional else 0,
                                     seed=cfg.seed)]
    if name == "orbit":
        if not dual_algebra(A).is_finite_dimensional:
            raise UsageError("the orbit identity needs a finite-dimensional dual")
        mods = V.orbit_test_modules(A)
        return [V.verify_orbit_homs(A, X, Y, cfg.window, cfg.horizon) for X in mods for Y in mods]
    if name == "hilbert":
        return [V.hilbert_diagnostic(A, cfg.horizon)]
    if name == "stable":
        return [V.verify_stable_smoke(A, cfg.seed)]
    if name == "k-homotopy":
        return [V.verify_k_homotopy(A, samples or 20, cfg.seed)]
    if name == "shift-compat":
        return [V.verify_shift_compat(A, samples or 4, seed=cfg.seed)]
    raise UsageError(f"unknown identity {name}")


def cmd_verify(args, cfg):
    P = read_presentation(args.file, cfg.field)
    if isinstance(P, HomogeneousPresentation):
        raise UsageError("verification needs a quadratic presentation")
    names = IDENTITIES if args.identity == "all" else (args.identity,)
    reports = []
    for name in names:
        if args.identity == "all" and name == "orbit" and not dual_algebra(P.algebra).is_finite_dimensional:
            continue
        reports += _run_identity(name, P, cfg, args.samples)
    verdicts = [r.verdict for r in reports]
    data = {"schema": 1, "seed": cfg.seed, "reports": [r.to_dict() for r in reports]}
    _emit(cfg, data, "\n".join(r.summary() for r in reports))
    if V.FAIL in verdicts:
        return EXIT_FAIL
    if V.INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_hilbert(args, cfg):
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    P = read_presentation(args.file, cfg.field)
    A = _quadratic(P).algebra
    B = dual_algebra(A)
    rep = V.hilbert_diagnostic(A, args.n)
    lines = [f"{'n':>3}  {A.name:>12} {B.name:>12}"]
    for n in range(args.n + 1):
        lines.append(f"{n:>3}  {sum(A.degree_dims(n).values()):>12} {sum(B.degree_dims(n).values()):>12}")
    lines.append(rep.summary())
    data = rep.to_dict()
    data["series"] = {A.name: [V.hilbert_matrix(A, n) for n in range(args.n + 1)],
                      B.name: [V.hilbert_matrix(B, n) for n in range(args.n + 1)]}
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_corpus(args, cfg):
    if args.action == "list":
        names = list(corpus.CORPUS + corpus.EXTRA)
        _emit(cfg, {"schema": 1, "corpus": names}, "\n".join(names))
        return EXIT_OK
    if not args.name:
        raise UsageError("corpus emit needs a name")
    if args.name not in corpus.CORPUS + corpus.EXTRA:
        raise UsageError(f"unknown corpus algebra {args.name}")
    print(corpus.corpus_text(args.name).rstrip())
    return EXIT_OK


COMMANDS = {"parse": cmd_parse, "dual": cmd_dual, "koszul-check": cmd_koszul_check, "resolve": cmd_resolve,
            "ext-table": cmd_ext_table, "kfunctor": cmd_kfunctor, "verify": cmd_verify, "hilbert": cmd_hilbert,
            "corpus": cmd_corpus}


if __name__ == "__main__":
    sys.exit(main())
