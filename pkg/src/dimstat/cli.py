"""Command-line front end: ``dimstat <command> ...``.

Exit codes: 0 on success, 2 when a model has dimension violations or a
randomized verification fails, 1 on usage, input or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from .errors import DimstatError, Inconsistent, Underdetermined
from .homogeneity import check_homogeneity, classify_law_family, solve_parameter_dimensions
from .invariance import (
    VerificationReport,
    maximal_invariant_affine,
    maximal_invariant_scalar,
    verify_group_axioms,
    verify_invariance,
    verify_maximality,
)
from .model import ModelSpec, Role, parse_dataset, parse_model
from .pi import exponent_matrix, extract_pi_groups, nondimensionalize_dataset
from .quantity import ScaleKind, UnitRegistry, default_registry
from .stats import fit_power_law, rainfall_mc_check, synthetic_tree_data

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2
FAMILIES = ("scalar", "normal", "affine-i", "affine-i-det", "affine-ii")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Fail(Exception):
    pass


def _emit(args, payload: dict, text: list[str]) -> None:
    if args.json:
        payload = {"schema": SCHEMA, "command": args.command, **payload}
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text) + "\n")


def resolve_spec(path: str) -> Path:
    """The given path, or a bundled spec with the same basename."""
    p = Path(path)
    if p.is_file():
        return p
    bundled = resources.files("dimstat").joinpath("specs", p.name)
    if not p.suffix:
        bundled = resources.files("dimstat").joinpath("specs", p.name + ".dim")
    if bundled.is_file():
        return Path(str(bundled))
    raise _Fail(f"cannot read spec file {path!r}")


def _registry(args) -> UnitRegistry:
    reg = default_registry()
    if getattr(args, "registry", None):
        try:
            reg = reg.extend(Path(args.registry).read_text(encoding="utf-8"))
        except OSError as exc:
            raise _Fail(f"cannot read registry {args.registry!r}: {exc.strerror}") from None
    return reg


def _load(args) -> ModelSpec:
    path = resolve_spec(args.spec)
    return parse_model(path.read_text(encoding="utf-8"), _registry(args))


def _repeating(args):
    if not getattr(args, "repeating", None):
        return None
    return [s.strip() for s in args.repeating.split(",") if s.strip()]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_check(args) -> int:
    spec = _load(args)
    rep = check_homogeneity(spec)
    text = [f"{args.spec}: {rep.verdict}"]
    for v in rep.violations:
        text.append(f"  {v.line}:{v.col}  {v.code}  {v.message}")
    for k, d in sorted(rep.parameter_dims.items()):
        text.append(f"  [{k}] = {d}")
    _emit(args, rep.to_json(), text)
    return EXIT_OK if rep.homogeneous else EXIT_VIOLATION


def cmd_infer(args) -> int:
    spec = _load(args)
    try:
        dims = solve_parameter_dimensions(spec)
    except Underdetermined as exc:
        _emit(args, {"status": exc.code, "undetermined": list(exc.params), "message": str(exc)},
              [f"{exc.code}: {exc}"])
        return EXIT_VIOLATION
    except Inconsistent as exc:
        _emit(args, {"status": exc.code, "message": str(exc)}, [f"{exc.code}: {exc}"])
        return EXIT_VIOLATION
    _emit(args, {"status": "ok", "parameter_dims": {k: str(d) for k, d in sorted(dims.items())}},
          [f"[{k}] = {d}" for k, d in sorted(dims.items())] or ["no parameters to infer"])
    return EXIT_OK


def cmd_pi(args) -> int:
    spec = _load(args)
    m = exponent_matrix(spec)
    basis, trace = extract_pi_groups(spec, _repeating(args))
    payload = {
        "matrix": m.to_json(),
        "rank": m.rank,
        "p": len(m.quantities),
        "q": basis.q,
        **basis.to_json(),
        "trace": trace.to_json(),
    }
    text = [f"rank {m.rank}, {basis.q} group(s); repeating: {', '.join(basis.repeating) or '-'}"]
    text += trace.render()
    text += basis.render()
    _emit(args, payload, text)
    return EXIT_OK


def cmd_nondim(args) -> int:
    spec = _load(args)
    basis, _ = extract_pi_groups(spec, _repeating(args))
    try:
        raw = Path(args.data).read_bytes()
    except OSError as exc:
        raise _Fail(f"cannot read data file {args.data!r}: {exc.strerror}") from None
    data = parse_dataset(raw, spec, _registry(args))
    nd = nondimensionalize_dataset(data, basis)
    payload = {"groups": basis.render(), "columns": list(nd.columns), "rows": [list(r) for r in nd.rows]}
    _emit(args, payload, [nd.to_csv().rstrip("\n")])
    return EXIT_OK


def _invariant_for_spec(spec: ModelSpec):
    if any(v.role is Role.PRIMARY and v.scale is ScaleKind.INTERVAL for v in spec.variables):
        return maximal_invariant_affine(spec)
    return maximal_invariant_scalar(spec)


def cmd_invariance(args) -> int:
    reports: list[VerificationReport] = []
    if args.spec:
        inv = _invariant_for_spec(_load(args))
        reports += [verify_invariance(inv, args.trials, args.seed), verify_maximality(inv, args.trials, args.seed)]
        target = args.spec
    else:
        fam = args.family or "scalar"
        reports.append(verify_group_axioms(fam, args.trials, args.seed))
        if fam != "scalar":
            inv = maximal_invariant_affine(fam)
            reports += [verify_invariance(inv, args.trials, args.seed), verify_maximality(inv, args.trials, args.seed)]
        target = fam
    max_dev = max(r.max_deviation for r in reports)
    failures = sum(r.failures for r in reports)
    passed = all(r.passed for r in reports)
    payload = {
        "target": target,
        "trials": args.trials,
        "seed": args.seed,
        "max_deviation": max_dev,
        "failures": failures,
        "passed": passed,
        "checks": [r.to_json() for r in reports],
    }
    text = [f"{r.check}: {'PASS' if r.passed else 'FAIL'}  max deviation {r.max_deviation:.3e}, "
            f"{r.failures}/{r.trials} failures" for r in reports]
    _emit(args, payload, text)
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_fit(args) -> int:
    spec = _load(args)
    basis, _ = extract_pi_groups(spec, _repeating(args))
    if basis.q != 2:
        raise _Fail(f"fit needs exactly two Pi groups, the model gives {basis.q}")
    if args.data:
        try:
            raw = Path(args.data).read_bytes()
        except OSError as exc:
            raise _Fail(f"cannot read data file {args.data!r}: {exc.strerror}") from None
        data = parse_dataset(raw, spec, _registry(args))
    else:
        if args.seed is None:
            raise _Fail("synthetic data (no --data) requires --seed")
        data = synthetic_tree_data(args.n, args.gamma, args.k, args.noise, args.seed, _registry(args))
    nd = nondimensionalize_dataset(data, basis)
    r = args.response_pi - 1
    if r not in (0, 1):
        raise _Fail("--response-pi must be 1 or 2")
    res = fit_power_law(nd.column(nd.columns[1 - r]), nd.column(nd.columns[r]))
    payload = {**res.to_json(), "groups": basis.render(), "response_pi": args.response_pi}
    if not args.data:
        payload.update({"synthetic": True, "seed": args.seed, "gamma_true": args.gamma})
    text = basis.render() + [f"pi{args.response_pi} = k * pi{2 - r}^gamma",
                             f"gamma_hat = {res.gamma_hat!r}", f"k_hat = {res.k_hat!r}",
                             f"rss = {res.rss!r}, n = {res.n}"]
    _emit(args, payload, text)
    return EXIT_OK


def cmd_mc(args) -> int:
    try:
        rep = rainfall_mc_check(args.lam1, args.lam2, args.n, args.seed, bins=args.bins, ks_reps=args.ks_reps)
    except ValueError as exc:
        raise _Fail(str(exc)) from None
    text = [
        f"generator {rep.generator}, seed {rep.seed}, n = {rep.n}",
        f"conditional mean, closed form: max relative error {rep.max_rel_error_mean:.3e}",
        f"conditional mean, scaled: max relative error {rep.max_rel_error_scaled:.3e}",
        f"KS invariance: {rep.ks_passes}/{rep.ks_reps} p-values above {rep.ks_alpha}",
        f"{'PASS' if rep.passed else 'FAIL'}",
    ]
    _emit(args, rep.to_json(), text)
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def cmd_classify(args) -> int:
    fam = classify_law_family(_load(args))
    _emit(args, fam.to_json(), [f"{fam.kind}: {fam.description}"])
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--registry", metavar="FILE", help="extra unit definitions")

    p = _Parser(prog="dimstat", description="Dimensional analysis and invariance checks for declared models.")
    p.add_argument("--version", action="version", version=f"dimstat {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def spec_cmd(name, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("spec", help="model spec file (bundled specs are found by name)")
        return sp

    spec_cmd("check", "type-check a model for dimensional homogeneity").set_defaults(func=cmd_check)
    spec_cmd("infer", "infer dimensions of '?' parameters").set_defaults(func=cmd_infer)
    sp = spec_cmd("pi", "extract Buckingham Pi groups")
    sp.add_argument("--repeating", metavar="V1,V2,...")
    sp.set_defaults(func=cmd_pi)
    sp = spec_cmd("nondim", "convert a CSV dataset into Pi groups")
    sp.add_argument("data", help="CSV with name[unit] headers")
    sp.add_argument("--repeating", metavar="V1,V2,...")
    sp.set_defaults(func=cmd_nondim)
    spec_cmd("classify", "admissible law family for the response").set_defaults(func=cmd_classify)

    sp = sub.add_parser("invariance", parents=[common], help="randomized group and invariant checks")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--family", choices=FAMILIES)
    g.add_argument("--spec")
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=cmd_invariance)

    sp = spec_cmd("fit", "fit pi_r = k * pi_s^gamma on a two-group model")
    sp.add_argument("--data", help="CSV dataset; omit to simulate tree data")
    sp.add_argument("--repeating", metavar="V1,V2,...")
    sp.add_argument("--response-pi", type=int, default=2)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--n", type=int, default=100)
    sp.add_argument("--gamma", type=float, default=1.942)
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--noise", type=float, default=0.05)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("mc", parents=[common], help="rainfall model Monte Carlo check")
    sp.add_argument("--lam1", type=float, default=1.0)
    sp.add_argument("--lam2", type=float, default=1.0)
    sp.add_argument("--n", type=int, default=1_000_000)
    sp.add_argument("--bins", type=int, default=10)
    sp.add_argument("--ks-reps", type=int, default=100)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=cmd_mc)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be positive")
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"dimstat: error: {exc}", file=sys.stderr)
    except DimstatError as exc:
        print(f"dimstat: {exc.code}: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"dimstat: error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
