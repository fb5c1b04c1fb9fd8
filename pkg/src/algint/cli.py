"""Command-line entry point: ``algint <subcommand> ...``.

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input.

The circle algebra is only available through its finite quotients
``cyclic:<n>`` (group algebras of Z_n).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .algebra import AlgebraError
from .catalog import CatalogError, lookup, standard_entries
from .conjugation import DEFAULT_SEED, pick_invertible_c, solve_c_space
from .derivations import classify_derivations, ibp_defects, inner_derivation, theorem_roundtrip
from .integration import integrate
from .paragrassmann import direct_integral, trace_integral
from .pipeline import Analysis, Check, analyze
from .scalars import RATIONAL, FieldError
from .serialization import FormatError, c_to_dict, load_algebra, load_c, parse_coeffs

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _mark(ok: Optional[bool]) -> str:
    return {True: "✓", False: "✗", None: "-"}[ok]


def _load(args):
    """(algebra, user C, reference C) from --catalog / --algebra / positional."""
    path = args.algebra or getattr(args, "file", None)
    if args.catalog and path:
        raise InputError("give either --catalog or an algebra file, not both")
    if args.catalog:
        entry = lookup(args.catalog)
        alg, ref = entry.algebra(), entry.c_matrix()
    elif path:
        alg, ref = load_algebra(path), None
    else:
        raise InputError("no algebra given (use --catalog or --algebra)")
    user_c = load_c(args.c, alg.field) if args.c else None
    if user_c is not None and user_c.dim != alg.dim:
        raise InputError(f"C file has dim {user_c.dim}, algebra has dim {alg.dim}")
    return alg, user_c, ref


def _emit(args, doc: dict, lines: list[str]):
    if args.json:
        print(json.dumps(doc, indent=1, ensure_ascii=False, sort_keys=False))
    else:
        print("\n".join(lines))


def _check_lines(a: Analysis) -> list[str]:
    lines = [f"algebra: {a.algebra.name or 'unnamed'} (dim {a.algebra.dim}, "
             f"field {a.algebra.field.name})"]
    for c in a.checks:
        lines.append(f"  {c.name:<22} {_mark(c.passed)}  {c.detail}".rstrip())
    return lines


def _analysis(args) -> Analysis:
    alg, user_c, ref = _load(args)
    return analyze(alg, c=user_c, reference_c=ref, seed=args.seed)


def cmd_check(args) -> int:
    a = _analysis(args)
    lines = _check_lines(a)
    if a.functional:
        fmt = a.algebra.field.format
        lines.append("  integral of basis:  " + ", ".join(
            f"{a.algebra.label(i)}={fmt(v)}" for i, v in enumerate(a.functional.values)))
    _emit(args, a.to_dict(), lines)
    return EXIT_OK if a.ok else EXIT_FAIL


def cmd_cmatrix(args) -> int:
    alg, user_c, ref = _load(args)
    space = solve_c_space(alg)
    from .algebra import find_identity
    solver = pick_invertible_c(space, seed=args.seed, identity=find_identity(alg))
    chosen, source = (user_c, "user") if user_c is not None else \
        (ref, "reference") if ref is not None else \
        (solver.matrix if solver else None, "solver")
    a = analyze(alg, c=user_c, reference_c=ref, seed=args.seed, involution=False)
    doc = a.to_dict()
    doc["c_source"] = source
    doc["c"] = c_to_dict(chosen) if chosen is not None else None
    lines = [f"solution space rank: {len(space)}"]
    if len(space) > 1:
        lines.append("  (rank > 1: the integral depends on which C is chosen)")
    if chosen is None:
        lines.append("no invertible symmetric C found")
    else:
        lines.append(f"C ({source}):")
        lines.append(chosen.pretty())
    _emit(args, doc, lines)
    return EXIT_OK if chosen is not None and a.ok else EXIT_FAIL


def _need_functional(a: Analysis):
    if a.functional is None:
        failed = [c.name for c in a.checks if c.passed is False]
        raise _PipelineFailure(f"no integral: failed checks {failed}", a)
    return a.functional


class _PipelineFailure(Exception):
    def __init__(self, msg, analysis):
        super().__init__(msg)
        self.analysis = analysis


def cmd_integrate(args) -> int:
    a = _analysis(args)
    fn = _need_functional(a)
    if args.coeffs is None:
        raise InputError("integrate needs --coeffs")
    coeffs = parse_coeffs(args.coeffs, a.algebra.field, a.algebra.dim)
    value = integrate(fn, a.algebra.element(coeffs))
    text = a.algebra.field.format(value)
    doc = a.to_dict()
    doc["value"] = text
    _emit(args, doc, [text])
    return EXIT_OK


def cmd_derivations(args) -> int:
    alg, _, _ = _load(args)
    cls = classify_derivations(alg)
    fmt = alg.field.format
    lines = [f"derivation space rank: {cls.total_rank}",
             f"inner derivations rank: {cls.inner_rank}",
             f"outer (quotient) rank:  {cls.outer_rank}"]
    for n, d in enumerate(cls.derivations):
        lines.append(f"d[{n}]:")
        lines.append(d.d.pretty())
    doc = {"checks": [Check("inner_in_space", cls.inner_contained).to_dict()],
           "c_rank": 0, "integral": [],
           "derivation_rank": cls.total_rank, "inner_rank": cls.inner_rank,
           "outer_rank": cls.outer_rank,
           "basis": [[[fmt(x) for x in r] for r in d.d.rows] for d in cls.derivations]}
    _emit(args, doc, lines)
    return EXIT_OK if cls.inner_contained else EXIT_FAIL


def _generator(args, a: Analysis, text: Optional[str], flag: str):
    if text is None:
        raise InputError(f"{flag} is required")
    return a.algebra.element(parse_coeffs(text, a.algebra.field, a.algebra.dim))


def cmd_ibp(args) -> int:
    a = _analysis(args)
    fn = _need_functional(a)
    gen = _generator(args, a, args.element, "--element")
    der = inner_derivation(a.algebra, gen)
    defects = ibp_defects(fn, der)
    ok = not any(defects)
    fmt = a.algebra.field.format
    doc = a.to_dict()
    doc["checks"].append(Check("integration_by_parts", ok).to_dict())
    doc["d_integrals"] = [fmt(x) for x in defects]
    lines = [f"inner derivation D x = x a - a x with a = {gen!r}",
             "integral of D x_i: " + ", ".join(fmt(x) for x in defects),
             f"integration by parts: {_mark(ok)}"]
    _emit(args, doc, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_theorem(args) -> int:
    a = _analysis(args)
    fn = _need_functional(a)
    gen = _generator(args, a, args.generator, "--generator")
    der = inner_derivation(a.algebra, gen)
    rep = theorem_roundtrip(fn, der)
    legs = [("ibp", rep.ibp), ("infinitesimal_invariance", rep.infinitesimal),
            ("exponentiated_invariance", rep.exponentiated)]
    doc = a.to_dict()
    for name, v in legs:
        doc["checks"].append(Check(name, v).to_dict())
    doc["checks"].append(Check("legs_agree", rep.agree).to_dict())
    doc["method"] = rep.method
    doc["parameters"] = [str(p) for p in rep.parameters]
    lines = [f"{name:<26} {_mark(v)}" for name, v in legs]
    lines.append(f"{'legs agree':<26} {_mark(rep.agree)}")
    lines.append(f"exponentiated via {rep.method} at {[str(p) for p in rep.parameters]}")
    _emit(args, doc, lines)
    return EXIT_OK if rep.agree else EXIT_FAIL


def cmd_paragrassmann(args) -> int:
    p = args.p
    if p < 1:
        raise InputError("--p must be >= 1")
    if args.coeffs is None:
        raise InputError("paragrassmann needs --coeffs")
    coeffs = parse_coeffs(args.coeffs, RATIONAL, p + 1)
    if not 1 <= args.shift <= p + 1:
        raise InputError(f"--shift must lie in 1..{p + 1}")
    tr = trace_integral(p, coeffs, args.shift)
    direct = direct_integral(p, coeffs, args.shift)
    ok = tr == direct
    fmt = RATIONAL.format
    doc = {"checks": [Check("trace_equals_direct", ok).to_dict()], "c_rank": 0,
           "integral": [fmt(tr)], "trace": fmt(tr), "direct": fmt(direct)}
    _emit(args, doc, [f"trace path:  {fmt(tr)}", f"direct path: {fmt(direct)}"])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(args) -> int:
    entries = standard_entries()
    lines, rows, ok = [], [], True
    for e in entries:
        row = {"name": e.key, "summary": e.summary}
        if args.verify:
            a = analyze(e.algebra(), reference_c=e.c_matrix(), seed=args.seed)
            inv = None if a.involution is None else a.involution.is_involution
            got = dict(associative=a.check("associative"), unital=a.check("unital"),
                       self_conjugated=a.check("self_conjugated"), involutive=inv)
            want = dict(associative=e.associative, unital=e.unital,
                        self_conjugated=e.self_conjugated, involutive=e.involutive)
            match = all(want[k] is None or got[k] == want[k] for k in want)
            ok &= match
            row.update(got, matches_expected=match)
            lines.append(f"{e.key:<16} {_mark(match)}  " + " ".join(
                f"{k}={_mark(v)}" for k, v in got.items()))
        else:
            lines.append(f"{e.key:<16} {e.summary}")
        rows.append(row)
    doc = {"checks": [Check(r["name"], r.get("matches_expected")).to_dict() for r in rows],
           "c_rank": 0, "integral": [], "entries": rows}
    _emit(args, doc, lines)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="algint", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", help="builtin algebra, e.g. matrix:2, grassmann:1, "
                                          "quaternions, cyclic:3, torus:2")
    common.add_argument("--algebra", help="algebra definition JSON file")
    common.add_argument("--c", help="C matrix JSON file (overrides solver and catalog)")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for the invertible-C search")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, file_arg=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if file_arg:
            p.add_argument("file", nargs="?", help="algebra definition JSON file")
        p.set_defaults(func=fn)
        return p

    add("check", cmd_check, "run all structural checks")
    add("cmatrix", cmd_cmatrix, "solve for C and print the chosen matrix")
    p = add("integrate", cmd_integrate, "integrate an element")
    p.add_argument("--coeffs", help="comma-separated coefficients")
    add("derivations", cmd_derivations, "derivation space and inner/outer ranks")
    p = add("ibp", cmd_ibp, "integration by parts for an inner derivation")
    p.add_argument("--element", help="generator a of D x = x a - a x")
    p = add("theorem", cmd_theorem, "IBP / invariance roundtrip for an inner derivation")
    p.add_argument("--generator", help="generator a of D x = x a - a x")
    p = add("paragrassmann", cmd_paragrassmann, "projector-trace integral on G_p", False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--coeffs", help="coefficients of 1, theta, ..., theta^p")
    p.add_argument("--shift", type=int, default=1, help="projector e^(p+1,k) index k")
    p = add("catalog", cmd_catalog, "list builtin algebras", False)
    p.add_argument("--verify", action="store_true", help="check expected properties")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormatError, CatalogError, FieldError, AlgebraError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, CatalogError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except _PipelineFailure as exc:
        a = exc.analysis
        _emit(args, a.to_dict(), _check_lines(a) + [f"error: {exc}"])
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
