"""Command-line front end.

Every subcommand builds a JSON object; ``--format text`` only re-renders it.
Exit status: 0 on success, 1 when ``verify`` finds a mismatch, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import DEFAULT_PRIME_BOUND, DEFAULT_PRIME_SAMPLE_SIZE, J, ReductionData, advice, bound_report, default_prime_sample
from .errors import SemistabError
from .groups import close_group
from .linalg import from_json as matrix_from_json
from .linalg import snf, to_json
from .pairings import GramForm, perfectize
from .rings import DEFAULT_PRECISION, LocalRing
from .spectra import DEFAULT_BUDGET, DEFAULT_SAMPLES, brute_force_spectrum
from .verify import SUITES, run_all


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _load_input(arg: str | None):
    if arg is None:
        raise InputError("--input is required (a file path, '-' for stdin, or inline JSON)")
    text = arg
    if arg == "-":
        text = sys.stdin.read()
    elif not arg.lstrip().startswith(("{", "[")):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _common(p: argparse.ArgumentParser):
    p.add_argument("--input", help="JSON file, '-' for stdin, or inline JSON")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="ell-adic working precision k")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND, help="largest prime listed as safe")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semistab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="full bound report for reduction data")
    _common(p)
    p.add_argument("--prime-sample", type=int, default=DEFAULT_PRIME_SAMPLE_SIZE, help="number of primes standing in for a density-one set")

    p = sub.add_parser("jn", help="the bound J(n)")
    _common(p)
    p.add_argument("n", type=int)

    p = sub.add_parser("advice", help="advice findings for reduction data")
    _common(p)
    p.add_argument("--prime-sample", type=int, default=DEFAULT_PRIME_SAMPLE_SIZE)

    p = sub.add_parser("snf", help="Smith normal form of {matrix, ring}")
    _common(p)

    p = sub.add_parser("perfectize", help="perfect invariant form from {form, generators}")
    _common(p)

    p = sub.add_parser("sp-orders", help="element-order spectrum of a classical group over F_ell")
    _common(p)
    p.add_argument("--m", type=int, required=True, help="half-rank for Sp, matrix size for GL and SL")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--family", choices=("Sp", "GL", "SL"), default="Sp")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("verify", help="run the oracle suites")
    _common(p)
    p.add_argument("--quick", action="store_true", help="smaller samples and instance counts")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="run only this suite (repeatable)")
    return parser


# -- commands ---------------------------------------------------------------------------


def _reduction_data(args) -> ReductionData:
    return ReductionData.from_json(_load_input(args.input))


def cmd_bounds(args) -> tuple[dict, int]:
    data = _reduction_data(args)
    primes = default_prime_sample(args.prime_sample)
    return bound_report(data, primes, args.prime_bound).to_json(), 0


def cmd_jn(args) -> tuple[dict, int]:
    if args.n < 0:
        raise InputError("n must be nonnegative")
    return {"n": args.n, "J": J(args.n).to_json()}, 0


def cmd_advice(args) -> tuple[dict, int]:
    data = _reduction_data(args)
    findings = advice(data, default_prime_sample(args.prime_sample))
    return {"input": data.to_json(), "advice": [f.to_json() for f in findings]}, 0


def cmd_snf(args) -> tuple[dict, int]:
    obj = _load_input(args.input)
    if isinstance(obj, list):
        obj = {"matrix": obj}
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise InputError('snf input needs {"matrix": [[...]], "ring": ...}')
    ring = LocalRing.from_json(obj.get("ring", "Z"))
    A = matrix_from_json(obj["matrix"], ring)
    dec = snf(A, ring)
    return {
        "ring": ring.to_json(),
        "diagonal": [str(x) for x in dec.diagonal],
        "rank": dec.rank,
        "U": to_json(dec.U),
        "D": to_json(dec.D),
        "V": to_json(dec.V),
    }, 0


def cmd_perfectize(args) -> tuple[dict, int]:
    obj = _load_input(args.input)
    if not isinstance(obj, dict) or "form" not in obj:
        raise InputError('perfectize input needs {"form": {ring, kind, gram}, "generators": [...]}')
    form = GramForm.from_json(obj["form"])
    gens = [matrix_from_json(g) for g in obj.get("generators", [])]
    G = close_group(gens, ring=form.ring, rank=form.rank)
    return perfectize(form, G, precision=args.precision).to_json(), 0


def cmd_sp_orders(args) -> tuple[dict, int]:
    mode = "exhaustive" if args.exhaustive else ("sampled" if args.samples is not None else "auto")
    spec = brute_force_spectrum(
        args.family,
        args.m,
        args.ell,
        budget=args.budget,
        seed=args.seed,
        samples=args.samples if args.samples is not None else DEFAULT_SAMPLES,
        mode=mode,
    )
    return spec.to_json(), 0


def cmd_verify(args) -> tuple[dict, int]:
    results = run_all(seed=args.seed, samples=args.samples, quick=args.quick, names=args.suite)
    ok = all(r.passed for r in results)
    return {"passed": ok, "suites": [r.to_json() for r in results]}, 0 if ok else 1


COMMANDS = {
    "bounds": cmd_bounds,
    "jn": cmd_jn,
    "advice": cmd_advice,
    "snf": cmd_snf,
    "perfectize": cmd_perfectize,
    "sp-orders": cmd_sp_orders,
    "verify": cmd_verify,
}


# -- rendering ------------------------------------------------------------------------------


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if set(obj) == {"factored", "decimal"}:
            return f"{pad}{obj['factored']} = {obj['decimal']}"
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {render_text(v).strip()}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if _is_flat(obj):
            return pad + ", ".join(render_text(x).strip() for x in obj)
        return "\n".join(
            (f"{pad}-\n" + render_text(x, indent + 1)) if isinstance(x, dict) and not _is_flat(x) else f"{pad}- {render_text(x).strip()}"
            for x in obj
        )
    if obj is None:
        return pad + "none"
    return f"{pad}{obj}"


def _is_flat(v) -> bool:
    if isinstance(v, dict):
        return set(v) == {"factored", "decimal"}
    return all(not isinstance(x, (dict, list)) for x in v)


def _emit(obj: dict, fmt: str):
    if fmt == "text":
        print(render_text(obj))
    else:
        print(json.dumps(obj, indent=2))


def main(argv: list[str] | None = None) -> int:
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.precision < 1:
            raise InputError("--precision must be positive")
        if args.samples is not None and args.samples < 1:
            raise InputError("--samples must be positive")
        out, status = COMMANDS[args.command](args)
    except (InputError, SemistabError, TypeError, ValueError, KeyError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}}, fmt)
        return 2
    _emit(out, fmt)
    return status


if __name__ == "__main__":
    sys.exit(main())
