"""Command-line interface.

Every command prints one JSON document::

    {"manifest": {...}, "result": {...}, "elapsed_ms": N}

Everything except ``elapsed_ms`` is a deterministic function of the inputs.
Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 internal validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .hall import (
    InterpolationError,
    constant_term_mod,
    default_degree_bound,
    interpolate_hall_polynomial,
    word_monomial,
)
from .modp import PrimeField
from .monoid import ConsistencyError, GenericExtensionError, deg_leq, eval_word, generic_extension, monoid_element, orbit_dim
from .quiver_core import enumerate_classes, parse_multipartition, parse_word
from .repfq import canonical_rep, class_hom_dim, hall_number_brute, hom_dim
from .verify import SUITE_ALIASES, SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
        PrimeField(p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a prime") from exc
    return p


def _primes(text: str) -> list[int]:
    return [_prime(t) for t in text.split(",") if t.strip()]


def _mp(text: str, n: int):
    try:
        return parse_multipartition(text, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _word(text: str, n: int):
    try:
        return parse_word(text, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_hall(args):
    x, m, nn = (_mp(t, args.n) for t in (args.X, args.M, args.N))
    inputs = {"X": str(x), "M": str(m), "N": str(nn)}
    if args.poly:
        bound = default_degree_bound(x) if args.degree_bound is None else args.degree_bound
        poly = interpolate_hall_polynomial(x, m, nn, bound)
        inputs["degree_bound"] = bound
        return inputs, [], {"coeffs": [str(c) for c in poly.coeffs], "polynomial": str(poly)}
    if args.q is None:
        raise UsageError("hall needs --q PRIME or --poly")
    return inputs, [args.q], {"count": str(hall_number_brute(x, m, nn, args.q))}


def cmd_word(args):
    w = _word(args.letters, args.n)
    inputs = {"letters": str(w)}
    if args.mod:
        residues = constant_term_mod(w, args.primes)
        return inputs, args.primes, {
            "grade": list(w.grade),
            "constant_terms": [
                {"class": str(x), "value": "inconsistent" if r is None else str(r)}
                for x, r in residues.items()
            ],
            "certified_by": [str(p) for p in args.primes],
        }
    if args.q is None:
        raise UsageError("word needs --q PRIME or --mod")
    return inputs, [args.q], word_monomial(w, args.q).to_json()


def cmd_monoid(args):
    w = _word(args.letters, args.n)
    probes = tuple(args.primes)
    elem = monoid_element(w, probes)
    members = eval_word(w, probes).sorted()
    return {"letters": str(w)}, list(probes), {
        "grade": list(w.grade),
        "members": [str(m) for m in members],
        "generator": str(elem.generator),
    }


def cmd_verify(args):
    reports = run_suite(args.suite, args.n, args.dim_bound, jobs=args.jobs)
    passed = all(r.passed for r in reports)
    return {"suite": SUITE_ALIASES.get(args.suite, args.suite), "dim_bound": args.dim_bound}, [], {
        "passed": passed,
        "reports": [r.to_json() for r in reports],
    }


def cmd_classes(args):
    try:
        d = tuple(int(t) for t in args.dims.split(","))
    except ValueError as exc:
        raise UsageError(f"bad dimension vector {args.dims!r}") from exc
    if len(d) != args.n:
        raise UsageError(f"dimension vector {d} needs {args.n} entries")
    classes = enumerate_classes(d)
    return {"dims": list(d)}, [], {"count": str(len(classes)), "classes": [str(c) for c in classes]}


def cmd_hom(args):
    a, b = _mp(args.A, args.n), _mp(args.B, args.n)
    if args.q is not None:
        value = hom_dim(canonical_rep(a, args.q), canonical_rep(b, args.q))
        return {"A": str(a), "B": str(b)}, [args.q], {"hom_dim": str(value)}
    return {"A": str(a), "B": str(b)}, [], {"hom_dim": str(class_hom_dim(a, b))}


def cmd_degle(args):
    m, nn = _mp(args.M, args.n), _mp(args.N, args.n)
    return {"M": str(m), "N": str(nn)}, [], {"deg_leq": deg_leq(m, nn)}


def cmd_genext(args):
    m, nn = _mp(args.M, args.n), _mp(args.N, args.n)
    g = generic_extension(m, nn, tuple(args.primes))
    return {"M": str(m), "N": str(nn)}, list(args.primes), {
        "generic_extension": str(g),
        "orbit_dim": str(orbit_dim(g)),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclehall", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--n", type=int, required=True, help="number of vertices of the cycle")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
        p.add_argument("--pretty", action="store_true", help="human-readable text instead of JSON")
        p.set_defaults(fn=fn)
        return p

    p = add("hall", cmd_hall, "Hall number F^X_{MN} at q, or the Hall polynomial")
    p.add_argument("X")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("--q", type=_prime)
    p.add_argument("--poly", action="store_true")
    p.add_argument("--degree-bound", type=int, default=None)

    p = add("word", cmd_word, "monomial u_w of a word of semisimples")
    p.add_argument("--letters", required=True, help="e.g. '1,0;0,1'; empty for the unit")
    p.add_argument("--q", type=_prime)
    p.add_argument("--mod", action="store_true", help="constant terms (u_w mod q)")
    p.add_argument("--primes", type=_primes, default=[2, 3])

    p = add("monoid", cmd_monoid, "iso classes of A_w and its generic generator")
    p.add_argument("--letters", required=True)
    p.add_argument("--primes", type=_primes, default=[2, 3])

    p = add("verify", cmd_verify, "run a verification sweep")
    p.add_argument("--suite", choices=SUITES + tuple(SUITE_ALIASES) + ("all",), default="all")
    p.add_argument("--dim-bound", type=int, default=4)

    p = add("classes", cmd_classes, "list isomorphism classes of a dimension vector")
    p.add_argument("dims", help="comma-separated, e.g. 2,1")

    p = add("hom", cmd_hom, "dim Hom(A, B)")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--q", type=_prime, help="solve the intertwiner system over F_q instead")

    p = add("degle", cmd_degle, "degeneration order test M <=_deg N")
    p.add_argument("M")
    p.add_argument("N")

    p = add("genext", cmd_genext, "generic extension of M by N")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("--primes", type=_primes, default=[2, 3])
    return parser


def _pretty(payload: dict) -> str:
    man, res = payload["manifest"], payload["result"]
    lines = [f"{man['command']} on the {man['quiver_n']}-cycle  {man['inputs']}"]
    for key, value in res.items():
        if key == "reports":
            for r in value:
                status = "ok  " if not r["failures"] else "FAIL"
                lines.append(f"  {status} {r['check']:<22} {r['instances']:>6} instances  {len(r['failures'])} failures")
        elif key in ("terms", "constant_terms"):
            for t in value:
                lines.append(f"  {t['class']:<24} {t.get('coeff', t.get('value'))}")
        elif isinstance(value, list):
            lines.append(f"  {key}: " + ", ".join(map(str, value)))
        else:
            lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 1:
        parser.error("--n must be at least 1")
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    start = time.perf_counter()
    try:
        inputs, primes, result = args.fn(args)
    except UsageError as exc:
        print(f"cyclehall: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InterpolationError, ConsistencyError, GenericExtensionError, ArithmeticError) as exc:
        print(f"cyclehall: validation failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    payload = {
        "manifest": {
            "command": args.command,
            "quiver_n": args.n,
            "inputs": inputs,
            "primes": [str(p) for p in primes],
            "tool_version": __version__,
        },
        "result": result,
        "elapsed_ms": int((time.perf_counter() - start) * 1000),
    }
    print(_pretty(payload) if args.pretty else json.dumps(payload, indent=2))
    if args.command == "verify" and not result["passed"]:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
