"""Command-line front end.

Subcommands:
    eval EXPR            evaluate a form expression, print the canonical form
    verify SUITE         run a seeded verification suite (exit 0 pass, 1 fail)
    basis                list coframe or vertical basis monomials of a degree
    model                print the contact form, its differential, the coframe
    cohomology           Betti numbers / classes of a finite algebra file

Exit codes: 0 success, 1 verification failure or domain error, 2 usage or
syntax error.
"""

from __future__ import annotations

import argparse
import sys

from ._version import __version__
from .errors import ConstructionError, DimensionError, DomainError
from .finite import FiniteGradedAlgebra, cohomology, heisenberg_ce_algebra, heisenberg_rumin_model
from .forms import ContactModel
from .parser import ParseError, eval_text
from .poly import kernel_name
from .suites import SUITE_NAMES, format_report, report_json, run_all, run_suite


def _add_model_arg(p) -> None:
    p.add_argument("--n", type=int, default=1, help="Heisenberg model parameter (dim = 2n+1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ruminalg",
        description="Exact Rumin-complex calculator on Heisenberg models",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"ruminalg {__version__} (kernel: {kernel_name()})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a form expression")
    p_eval.add_argument("expr", help="expression, e.g. 'pi(dx1^dy1)' or '(3/2*x1**2) dx1^dy1'")
    _add_model_arg(p_eval)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", nargs="?", choices=SUITE_NAMES, help="suite name")
    p_verify.add_argument("--suite", dest="suite_opt", choices=SUITE_NAMES, help="suite name (flag form)")
    _add_model_arg(p_verify)
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--max-poly-degree", type=int, default=2)
    p_verify.add_argument("--json", metavar="PATH", help="write the report as JSON")

    p_basis = sub.add_parser("basis", help="list basis monomials of a degree")
    _add_model_arg(p_basis)
    p_basis.add_argument("--degree", type=int, required=True)
    p_basis.add_argument("--vertical", action="store_true", help="only monomials containing theta")

    p_model = sub.add_parser("model", help="print the contact structure")
    _add_model_arg(p_model)

    p_coh = sub.add_parser("cohomology", help="cohomology of a finite graded algebra")
    p_coh.add_argument("path", nargs="?", help="algebra file (see README for the format)")
    p_coh.add_argument("--builtin", choices=["ce", "rumin"], help="use a built-in model instead of a file")
    p_coh.add_argument("--dump", action="store_true", help="print the algebra in file format and exit")

    return parser


def cmd_eval(args) -> int:
    model = ContactModel(args.n)
    try:
        result = eval_text(args.expr, model)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(result.to_text())
    return 0


def cmd_verify(args) -> int:
    suite = args.suite or args.suite_opt
    if suite is None:
        print("error: no suite given (positional or --suite)", file=sys.stderr)
        return 2
    kwargs = dict(n=args.n, trials=args.trials, seed=args.seed, max_poly_degree=args.max_poly_degree)
    if suite == "all":
        reports = run_all(**kwargs)
    else:
        reports = [run_suite(suite, **kwargs)]
    for report in reports:
        print(format_report(report))
    if args.json:
        report_json(reports[0] if suite != "all" else reports, args.json)
    return 0 if all(r.passed for r in reports) else 1


def cmd_basis(args) -> int:
    model = ContactModel(args.n)
    monos = (
        model.vertical_monomials(args.degree)
        if args.vertical
        else model.coframe_monomials(args.degree)
    )
    for idx in monos:
        print("^".join(model.coframe_label(i) for i in idx) or "1")
    return 0


def cmd_model(args) -> int:
    model = ContactModel(args.n)
    coords = [f"x{i}" for i in range(1, model.n + 1)] + [f"y{i}" for i in range(1, model.n + 1)] + ["z"]
    print(f"H^{model.dim} (n={model.n}), coordinates: {' '.join(coords)}")
    print("coframe: " + ", ".join(f"e{i}={model.coframe_label(i)}" for i in range(model.dim)))
    theta_coords = "dz" + "".join(f" - y{i}*dx{i}" for i in range(1, model.n + 1))
    print(f"theta = {theta_coords}")
    print(f"dtheta = {model.dtheta().to_text()}")
    print(f"volume theta^dtheta^{model.n} = {model.volume().to_text()}")
    return 0


def cmd_cohomology(args) -> int:
    if bool(args.path) == bool(args.builtin):
        print("error: give exactly one of PATH or --builtin", file=sys.stderr)
        return 2
    try:
        if args.builtin == "ce":
            algebra = heisenberg_ce_algebra()
        elif args.builtin == "rumin":
            algebra = heisenberg_rumin_model()
        else:
            with open(args.path, encoding="utf-8") as fh:
                algebra = FiniteGradedAlgebra.loads(fh.read())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.dump:
        print(algebra.dumps(), end="")
        return 0
    h = cohomology(algebra)
    name = algebra.name or "algebra"
    print(f"{name}: betti {h.betti_numbers()}")
    for deg in algebra.degrees:
        reps = h.representatives(deg)
        if reps:
            rendered = "; ".join(str(r) for r in reps)
            print(f"  H^{deg} (dim {len(reps)}): {rendered}")
        else:
            print(f"  H^{deg} (dim 0)")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "eval": cmd_eval,
        "verify": cmd_verify,
        "basis": cmd_basis,
        "model": cmd_model,
        "cohomology": cmd_cohomology,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
