"""Command-line interface.

Exit status: 0 on success (and every check passing), 1 when a verification
fails, 2 on bad input.  JSON output is key-sorted, so identical inputs and
seeds give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import nullcontext
from fractions import Fraction
from typing import List, Sequence

from .cartan import (
    CHARGE_KINDS,
    build_charge,
    codifferential,
    evolution_operator,
    exterior_derivative,
    hodge_star,
    interior_contraction,
    laplacian,
    lie_derivative,
)
from .controls import MUTATIONS, negative_control
from .errors import CartanError, MissingInputError
from .evolution import as_time, evolve_free, evolve_taylor
from .exact_arith import Polynomial, parse_scalar
from .forms import FormVector, vector_field_from_strings
from .grassmann import basis_from_linear, dimension
from .superalgebra import irrep_build, superalgebra_verify
from .verify import DEFAULT_MAX_N, DEFAULT_SAMPLES, SUITES, run_all, run_suite

OPS = ("d", "delta", "laplacian", "hodge", "iota", "lie", "H") + CHARGE_KINDS

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# -- helpers -----------------------------------------------------------------------


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, sort_keys=True, indent=2) + "\n" if args.format == "json" else text.rstrip("\n") + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _check_n(n: int, max_n: int) -> int:
    if n < 1:
        raise InputError(f"--n must be at least 1, got {n}")
    if n > max_n:
        raise InputError(f"--n {n} exceeds the maximum {max_n}; raise it with --max-n")
    return n


def _hamiltonian(args, n: int, required: bool = False) -> Polynomial | None:
    if args.hamiltonian is None:
        if required:
            raise InputError("this command needs --hamiltonian")
        return None
    return Polynomial.parse(args.hamiltonian, 2 * n)


def _beta(args):
    return None if args.beta is None else parse_scalar(args.beta)


def _read_form(path: str) -> FormVector:
    if path is None:
        raise InputError("this command needs --in <form.json>")
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}") from None
    if not isinstance(data, dict) or "n" not in data:
        raise InputError(f"{path}: a form document needs an 'n' field")
    return FormVector.from_json(data)


def _form_text(psi: FormVector) -> str:
    lines = [f"n={psi.n}"]
    for i, c in enumerate(psi.components):
        lines.append(f"{basis_from_linear(i, psi.n).label}: {c}")
    return "\n".join(lines)


def _matrix_text(m) -> str:
    return f"dim={m.dim}\n{m}"


def _build_op(args, n: int):
    op = args.op
    if op == "hodge":
        return hodge_star(n)
    if op == "d":
        return exterior_derivative(n)
    if op == "delta":
        return codifferential(n)
    if op == "laplacian":
        return laplacian(n)
    if op == "iota":
        if not args.vector_field:
            raise InputError("--op iota needs --vector-field with 2n polynomials (order p1 q1 p2 q2 ...)")
        return interior_contraction(vector_field_from_strings(args.vector_field, n))
    if op == "lie":
        return lie_derivative(_hamiltonian(args, n, True), n)
    if op == "H":
        return evolution_operator(_hamiltonian(args, n, True), n)
    h = _hamiltonian(args, n)
    beta = _beta(args)
    if op in ("QH", "QHbar") and beta is None:
        raise InputError(f"--op {op} needs --beta")
    return build_charge(op, h, beta, n)


# -- commands --------------------------------------------------------------------------------


def cmd_dump_op(args) -> int:
    n = _check_n(args.n, args.max_n)
    m = _build_op(args, n)
    payload = m.to_json()
    payload.setdefault("n", n)
    payload["op"] = args.op
    _emit(args, payload, f"op={args.op} " + (_matrix_text(m) if args.op == "hodge" else str(m)))
    return EXIT_OK


def cmd_apply(args) -> int:
    psi = _read_form(args.input)
    _check_n(psi.n, args.max_n)
    m = _build_op(args, psi.n)
    if args.op == "hodge":
        out = [Polynomial.zero(psi.nvars) for _ in range(dimension(psi.n))]
        for (r, c), v in m.entries.items():
            out[r] = out[r] + psi[c].scale(v)
        result = FormVector(psi.n, out)
    else:
        result = m.apply(psi)
    payload = result.to_json()
    payload["op"] = args.op
    _emit(args, payload, _form_text(result))
    return EXIT_OK


def cmd_verify(args) -> int:
    ns = args.n or [1]
    for n in ns:
        _check_n(n, args.max_n)
    suite = "all" if args.all else args.suite
    if suite is None:
        raise InputError("verify needs --suite <name> or --all")
    beta = _beta(args)
    if args.hamiltonian is not None:
        for n in ns:
            Polynomial.parse(args.hamiltonian, 2 * n)
    context = negative_control(args.mutate) if args.mutate else nullcontext()
    with context:
        if suite == "all":
            reports = run_all(ns, args.hamiltonian, beta, args.seed, args.samples, args.max_n)
        else:
            reports = []
            for n in ns:
                h = _hamiltonian(args, n, required=(suite == "susy"))
                reports.append(run_suite(suite, n, h, beta, args.seed, args.samples, args.max_n))
    ok = all(r.passed for r in reports)
    payload = {
        "mutation": args.mutate,
        "overall": "pass" if ok else "fail",
        "reports": [r.to_json() for r in reports],
    }
    summary = f"overall={'PASS' if ok else 'FAIL'} reports={len(reports)} checks={sum(len(r.checks) for r in reports)}"
    _emit(args, payload, "\n".join([r.to_text() for r in reports] + [summary]))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_evolve(args) -> int:
    psi = _read_form(args.input)
    t = as_time(args.t)
    if args.free:
        if psi.n != 1:
            raise InputError("--free evolution is for n=1 forms")
        result = evolve_free(psi, t)
    else:
        if args.order is None:
            raise InputError("series evolution needs --order (or use --free)")
        _check_n(psi.n, args.max_n)
        result = evolve_taylor(_hamiltonian(args, psi.n, True), psi, t, args.order)
    head = f"t={result.t} method={result.method}" + (f" order={result.order}" if result.order is not None else "")
    _emit(args, result.to_json(), head + "\n" + _form_text(result.psi))
    return EXIT_OK


def cmd_irrep(args) -> int:
    try:
        h = Fraction(args.h)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--h must be a rational number, got {args.h!r}") from None
    if h < 0:
        raise InputError("--h must be non-negative")
    rep = irrep_build(h)
    report = superalgebra_verify(h).sorted()
    payload = {"irrep": rep.to_json(), "report": report.to_json()}
    lines = [f"h={h}"]
    for name, m in sorted(rep.matrices.items()):
        lines.append(f"{name}:")
        lines.extend("  [" + "  ".join(row) + "]" for row in rep.to_json()["matrices"][name])
    lines.append(report.to_text())
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_hodge(args) -> int:
    n = _check_n(args.n, args.max_n)
    m = hodge_star(n)
    payload = m.to_json()
    payload["n"] = n
    _emit(args, payload, _matrix_text(m))
    return EXIT_OK


def cmd_basis(args) -> int:
    n = _check_n(args.n, args.max_n)
    rows = [basis_from_linear(i, n) for i in range(dimension(n))]
    payload = {
        "n": n,
        "basis": [{"index": b.linear, "subset": list(b.subset), "label": b.label, "degree": b.degree} for b in rows],
    }
    _emit(args, payload, "\n".join(f"{b.linear:>4}  deg {b.degree}  {b.label}" for b in rows))
    return EXIT_OK


# -- parser --------------------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="raise the n ceiling (default 3)")
    return p


def _physics() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--hamiltonian", help='polynomial in p1,q1,...; e.g. "p^2/2 + q^2/2"')
    p.add_argument("--beta", help="rational SUSY parameter")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cartanpauli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common, physics = _common(), _physics()

    p = sub.add_parser("dump-op", parents=[common, physics], help="print an operator matrix")
    p.add_argument("--op", choices=OPS, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--vector-field", nargs="+", metavar="POLY")
    p.set_defaults(func=cmd_dump_op)

    p = sub.add_parser("apply", parents=[common, physics], help="apply an operator to a form")
    p.add_argument("--op", choices=OPS, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--vector-field", nargs="+", metavar="POLY")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("verify", parents=[common, physics], help="run verification suites")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--suite", choices=SUITES + ("all",))
    group.add_argument("--all", action="store_true")
    p.add_argument("--n", type=int, action="append", help="repeatable; default 1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random forms per degree (geometry)")
    p.add_argument("--mutate", choices=sorted(MUTATIONS), help="run under a deliberate construction defect")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("evolve", parents=[common, physics], help="evolve a form in time")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--t", required=True, help="rational time")
    p.add_argument("--free", action="store_true", help="exact free-particle evolution (n=1)")
    p.add_argument("--order", type=int, help="series truncation order")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("irrep", parents=[common], help="4x4 representation with Casimir h")
    p.add_argument("--h", required=True)
    p.set_defaults(func=cmd_irrep)

    p = sub.add_parser("hodge", parents=[common], help="Hodge star matrix")
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("basis", parents=[common], help="list the form basis")
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_basis)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_n > DEFAULT_MAX_N:
        print(f"warning: --max-n {args.max_n} allows matrices of dimension up to {4 ** args.max_n}; "
              "exact composition may be slow", file=sys.stderr)
    if getattr(args, "suite", None) == "all":
        args.all = True
    try:
        return args.func(args)
    except (InputError, CartanError, MissingInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
