"""Batch front end: problem files in, machine-readable reports out.

Problem files are JSON: canonical-pair count, exact rational parameters,
named generator expressions in the DSL, and engine options.  Reports are
JSON too, with every polynomial serialized as canonical DSL text and every
rational as a string, so identical inputs always produce identical bytes.

Exit codes: 0 success, 2 input error, 3 algebra does not close (the report
is still written, with diagnostics), 4 I/O failure.

The environment variable PHASEALG_MAX_MEMORY_MB, when set, caps the address
space of the process before any exact arithmetic starts; runaway closures
then die with MemoryError instead of taking the machine down.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .closure import (
    SIGN_CONVENTION_NOTE,
    AlgebraElement,
    close_algebra,
    convention_notes,
    structure_constants,
)
from .context import PhaseContext
from .errors import NonClosingError, ParseError, PhaseAlgError, SeparationFailure
from .invariants import find_casimir, find_center, verify_invariant
from .parser import parse_expression
from .poly import PhasePoly, format_poly
from .rational import rat, rat_str
from .separation import jacobi_transform, separate_hamiltonian, two_body_transform, verify_canonical
from .spectra import (
    BoxLevel,
    box_potential,
    box_spectrum,
    composite_spectrum,
    coulomb_potential,
    fd_eigen_1d,
    harmonic_potential,
    internal_spectrum,
    read_tabulated,
)

_DEFAULT_OPTIONS = {
    "bracket": "poisson",
    "hbar": "1",
    "max_basis": 32,
    "max_degree": 16,
    "center_degree": 2,
    "f_of_M": "M",
}


class Problem:
    """Validated problem file contents."""

    def __init__(self, raw: dict, origin: str):
        if not isinstance(raw, dict):
            raise ValueError("problem file must hold a JSON object")
        self.origin = origin
        dof = raw.get("dof")
        if not isinstance(dof, int) or dof < 1:
            raise ValueError("problem field 'dof' must be a positive integer")
        self.dof = dof
        params = raw.get("params", {})
        if not isinstance(params, dict):
            raise ValueError("problem field 'params' must be an object")
        self.params = {name: rat(value) for name, value in params.items()}
        gens = raw.get("generators")
        if not isinstance(gens, dict) or not gens:
            raise ValueError("problem field 'generators' must be a nonempty object")
        for name, expr in gens.items():
            if not isinstance(expr, str):
                raise ValueError(f"generator {name!r} must map to an expression string")
        self.generators = dict(gens)
        options = dict(_DEFAULT_OPTIONS)
        extra = raw.get("options", {})
        if not isinstance(extra, dict):
            raise ValueError("problem field 'options' must be an object")
        unknown = set(extra) - set(_DEFAULT_OPTIONS)
        if unknown:
            raise ValueError(f"unknown options: {sorted(unknown)}")
        options.update(extra)
        if options["bracket"] not in ("poisson", "moyal"):
            raise ValueError("options.bracket must be 'poisson' or 'moyal'")
        self.bracket = options["bracket"]
        self.hbar = rat(options["hbar"])
        self.max_basis = int(options["max_basis"])
        self.max_degree = int(options["max_degree"])
        self.center_degree = int(options["center_degree"])
        self.f_of_m = str(options["f_of_M"])
        self.options = options

    def apply_overrides(self, pairs: list[str]) -> None:
        for item in pairs:
            name, sep, value = item.partition("=")
            if not sep or not name:
                raise ValueError(f"--set expects NAME=VALUE, got {item!r}")
            self.params[name] = rat(value)

    def context(self) -> PhaseContext:
        return PhaseContext(
            self.dof, params=self.params, hbar=self.hbar, max_degree=self.max_degree
        )

    def seeds(self, ctx: PhaseContext) -> list[AlgebraElement]:
        return [
            AlgebraElement(name, parse_expression(expr, ctx))
            for name, expr in self.generators.items()
        ]

    def echo(self, overrides: list[str]) -> dict:
        return {
            "source": self.origin,
            "dof": self.dof,
            "params": {k: rat_str(v) for k, v in self.params.items()},
            "generators": dict(self.generators),
            "options": {k: str(v) for k, v in self.options.items()},
            "overrides": list(overrides),
        }


def load_problem(spec_arg: str) -> Problem:
    """Read a problem file from disk or from the bundled fixtures.

    A plain name (optionally with a .problem or .json suffix) that does not
    exist as a path falls back to the packaged problems directory.
    """
    path = Path(spec_arg)
    if path.exists():
        text = path.read_text(encoding="utf-8")
    else:
        name = path.name
        for suffix in (".problem", ".json"):
            if name.endswith(suffix):
                name = name[: -len(suffix)]
        res = resources.files("phasealg") / "problems" / f"{name}.json"
        if not res.is_file():
            raise OSError(f"problem file not found: {spec_arg}")
        text = res.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"problem file is not valid JSON: {exc}") from exc
    return Problem(raw, origin=spec_arg)


def _jsonable(value):
    if isinstance(value, Fraction):
        return rat_str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _closure_payload(closure) -> dict:
    names = [e.name for e in closure.basis]
    return {
        "bracket": closure.bracket_kind,
        "size": len(closure.basis),
        "basis": [
            {
                "name": e.name,
                "expression": format_poly(e.poly),
                "identity": e.is_identity,
            }
            for e in closure.basis
        ],
        "structure_constants": [
            [names[i], names[j], names[k], rat_str(c)]
            for i, j, k, c in structure_constants(closure)
        ],
    }


def cmd_close(args) -> int:
    problem = load_problem(args.problem)
    problem.apply_overrides(args.set or [])
    ctx = problem.context()
    seeds = problem.seeds(ctx)
    report = {"command": "close", "problem": problem.echo(args.set or [])}
    try:
        closure = close_algebra(
            seeds,
            bracket_kind=problem.bracket,
            max_basis=problem.max_basis,
            max_degree=problem.max_degree,
        )
    except NonClosingError as exc:
        report.update(
            status="non-closing",
            diagnostics=[str(exc), SIGN_CONVENTION_NOTE],
            exit_code=3,
        )
        _emit(report, args.output)
        return 3
    report.update(
        status="ok",
        closure=_closure_payload(closure),
        diagnostics=convention_notes(closure),
        exit_code=0,
    )
    _emit(report, args.output)
    return 0


def cmd_invariants(args) -> int:
    problem = load_problem(args.problem)
    problem.apply_overrides(args.set or [])
    ctx = problem.context()
    seeds = problem.seeds(ctx)
    report = {"command": "invariants", "problem": problem.echo(args.set or [])}
    try:
        closure = close_algebra(
            seeds,
            bracket_kind=problem.bracket,
            max_basis=problem.max_basis,
            max_degree=problem.max_degree,
        )
    except NonClosingError as exc:
        report.update(
            status="non-closing",
            diagnostics=[str(exc), SIGN_CONVENTION_NOTE],
            exit_code=3,
        )
        _emit(report, args.output)
        return 3
    report["closure"] = _closure_payload(closure)

    want_casimir = args.casimir or not (args.casimir or args.center)
    want_center = args.center or not (args.casimir or args.center)

    if want_casimir:
        entries = []
        nontrivial = 0
        for sol in find_casimir(closure):
            gnames = sol.generator_names
            entries.append(
                {
                    "quadratic": {
                        f"{gnames[i]}*{gnames[j]}": rat_str(v)
                        for (i, j), v in sorted(sol.quadratic.items())
                    },
                    "linear": {
                        gnames[i]: rat_str(v) for i, v in sorted(sol.linear.items())
                    },
                    "constant": rat_str(sol.constant),
                    "realization": format_poly(sol.realization),
                    "trivial": sol.trivial,
                    "verified": verify_invariant(sol.realization, closure).passed,
                }
            )
            if not sol.trivial:
                nontrivial += 1
        report["casimir"] = {
            "solutions": entries,
            "nontrivial_count": nontrivial,
        }

    if want_center:
        degree = args.degree if args.degree is not None else problem.center_degree
        center = find_center(closure, max_total_degree=degree)
        nonconstant = center.nonconstant()
        payload = {
            "degree": degree,
            "solutions": [format_poly(p) for p in center.solutions],
            "nonconstant_count": len(nonconstant),
        }
        if not nonconstant:
            payload["note"] = (
                "the solution space is spanned by the constant polynomial: "
                "only multiples of the identity commute with the whole "
                "algebra (Schur's lemma), so any invariant Hamiltonian at "
                "this degree is a constant shift"
            )
        report["center"] = payload

    report["diagnostics"] = convention_notes(closure)
    report["exit_code"] = 0
    _emit(report, args.output)
    return 0


def _spectrum_levels(rep) -> list[dict]:
    out = []
    for lv in rep.levels:
        if isinstance(lv, BoxLevel):
            out.append({"n": list(lv.n), "energy": lv.energy, "group": lv.group})
        else:
            out.append(
                {"label": _jsonable(lv.label), "energy": lv.energy, "group": lv.group}
            )
    return out


def _spectrum_report(rep, command: str) -> dict:
    report = {
        "command": command,
        "mode": rep.mode,
        "levels": _spectrum_levels(rep),
        "metadata": _jsonable(rep.metadata),
        "exit_code": 0,
    }
    if rep.offset is not None:
        report["offset"] = rep.offset
    return report


def cmd_spectrum_box(args) -> int:
    rep = box_spectrum(args.mass, args.side, args.nmax)
    _emit(_spectrum_report(rep, "spectrum box"), args.output)
    return 0


def _potential_from_args(args):
    domain = tuple(float(v) for v in args.domain.split(","))
    if len(domain) != 2:
        raise ValueError("--domain expects A,B")
    if args.potential == "harmonic":
        return harmonic_potential(
            args.omega, mass=args.mass, domain=domain, grid=args.grid
        )
    if args.potential == "box":
        return box_potential(args.side, mass=args.mass, grid=args.grid)
    if args.potential == "coulomb":
        return coulomb_potential(
            args.kappa, args.rmin, mass=args.mass, domain=domain, grid=args.grid
        )
    if args.potential == "tabulated":
        if not args.table:
            raise ValueError("--potential tabulated needs --table PATH")
        return read_tabulated(args.table, mass=args.mass, grid=args.grid)
    raise ValueError(f"unknown potential {args.potential!r}")


def cmd_spectrum_internal(args) -> int:
    spec = _potential_from_args(args)
    rep = internal_spectrum(spec, args.count)
    _emit(_spectrum_report(rep, "spectrum internal"), args.output)
    return 0


def cmd_spectrum_composite(args) -> int:
    internal = [float(v) for v in args.internal.split(",") if v != ""]
    if args.mode == "right":
        offset = args.f if args.f is not None else args.mass
        if offset is None:
            raise ValueError("composite right mode needs --f or --mass")
        rep = composite_spectrum(internal, float(offset), "composite-right")
    else:
        if args.mass is None or args.side is None:
            raise ValueError("composite spurious mode needs --mass and --side")
        cm = box_spectrum(args.mass, args.side, args.nmax)
        rep = composite_spectrum(
            internal, cm, "composite-spurious", count=args.count
        )
    _emit(_spectrum_report(rep, "spectrum composite"), args.output)
    return 0


def _default_kinetic(ctx: PhaseContext, masses, dim: int) -> PhasePoly:
    h = PhasePoly.zero(ctx)
    for i, m in enumerate(masses):
        for c in range(dim):
            pvar = PhasePoly.variable(ctx, ctx.dof + i * dim + c)
            h = h + pvar * pvar / (2 * m)
    return h


def cmd_separate(args) -> int:
    masses = [rat(v) for v in args.masses.split(",") if v != ""]
    if len(masses) < 2:
        raise ValueError("--masses expects at least two comma-separated values")
    if len(masses) == 2:
        cmap = two_body_transform(masses[0], masses[1], d=args.dim)
        kind = "two-body"
    else:
        cmap = jacobi_transform(masses, d=args.dim)
        kind = "jacobi"
    canon = verify_canonical(cmap)
    ctx = cmap.old_context()
    if args.expr:
        h = parse_expression(args.expr, ctx)
    else:
        h = _default_kinetic(ctx, masses, args.dim)
    report = {
        "command": "separate",
        "kind": kind,
        "dim": args.dim,
        "masses": [rat_str(m) for m in masses],
        "position_labels": list(cmap.position_labels),
        "momentum_labels": list(cmap.momentum_labels),
        "position_matrix": _jsonable(cmap.a),
        "momentum_matrix": _jsonable(cmap.b),
        "canonical": {
            "passed": canon.passed,
            "violations": [
                [a, b, format_poly(p)] for a, b, p in canon.violations
            ],
        },
        "hamiltonian": format_poly(h),
    }
    try:
        h_cm, h_int, sep = separate_hamiltonian(h, cmap)
    except SeparationFailure as exc:
        report.update(
            status="mixed-terms",
            diagnostics=[
                "hamiltonian does not split into CM plus internal parts",
                *exc.mixed_terms,
            ],
            exit_code=2,
        )
        _emit(report, args.output)
        return 2
    report.update(
        status="ok",
        h_cm=format_poly(h_cm),
        h_int=format_poly(h_int),
        checks={
            "cm_is_free_kinetic": sep.cm_is_free_kinetic,
            "relative_kinetic_ok": sep.relative_kinetic_ok,
            "reassembly_ok": sep.reassembly_ok,
            "total_mass": rat_str(sep.total_mass),
            "reduced_mass": None if sep.reduced_mass is None else rat_str(sep.reduced_mass),
        },
        diagnostics=[],
        exit_code=0,
    )
    _emit(report, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasealg",
        description="Exact constraint-algebra closures, invariants and spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_close = sub.add_parser("close", help="close the bracket algebra of a problem")
    p_close.add_argument("problem", help="problem file path or bundled name")
    p_close.add_argument("-o", "--output", help="write the JSON report here")
    p_close.add_argument(
        "--set", action="append", metavar="NAME=VALUE", help="override a parameter"
    )
    p_close.set_defaults(func=cmd_close)

    p_inv = sub.add_parser("invariants", help="search for Casimir and centre elements")
    p_inv.add_argument("problem")
    p_inv.add_argument("--casimir", action="store_true", help="quadratic ansatz only")
    p_inv.add_argument("--center", action="store_true", help="bounded-degree centre only")
    p_inv.add_argument("--degree", type=int, help="centre ansatz total degree")
    p_inv.add_argument("-o", "--output")
    p_inv.add_argument("--set", action="append", metavar="NAME=VALUE")
    p_inv.set_defaults(func=cmd_invariants)

    p_spec = sub.add_parser("spectrum", help="numerical level tables")
    spec_sub = p_spec.add_subparsers(dest="spectrum_command", required=True)

    p_box = spec_sub.add_parser("box", help="exact levels of a boxed free particle")
    p_box.add_argument("--mass", type=float, default=1.0)
    p_box.add_argument("--side", type=float, default=1.0)
    p_box.add_argument("--nmax", type=int, default=3)
    p_box.add_argument("-o", "--output")
    p_box.set_defaults(func=cmd_spectrum_box)

    p_int = spec_sub.add_parser("internal", help="1D finite-difference levels")
    p_int.add_argument(
        "--potential",
        choices=("harmonic", "box", "coulomb", "tabulated"),
        default="harmonic",
    )
    p_int.add_argument("--omega", type=float, default=1.0)
    p_int.add_argument("--side", type=float, default=1.0)
    p_int.add_argument("--kappa", type=float, default=1.0)
    p_int.add_argument("--rmin", type=float, default=0.05)
    p_int.add_argument("--table", help="two-column file for tabulated potentials")
    p_int.add_argument("--mass", type=float, default=1.0)
    p_int.add_argument("--domain", default="-10,10", metavar="A,B")
    p_int.add_argument("--grid", type=int, default=2000)
    p_int.add_argument("--count", type=int, default=5)
    p_int.add_argument("-o", "--output")
    p_int.set_defaults(func=cmd_spectrum_internal)

    p_comp = spec_sub.add_parser("composite", help="internal plus CM spectra")
    p_comp.add_argument("--mode", choices=("right", "spurious"), required=True)
    p_comp.add_argument("--internal", required=True, metavar="E1,E2,...")
    p_comp.add_argument("--f", type=float, help="offset for right mode")
    p_comp.add_argument("--mass", type=float)
    p_comp.add_argument("--side", type=float)
    p_comp.add_argument("--nmax", type=int, default=3)
    p_comp.add_argument("--count", type=int, help="truncate spurious level list")
    p_comp.add_argument("-o", "--output")
    p_comp.set_defaults(func=cmd_spectrum_composite)

    p_sep = sub.add_parser("separate", help="split off the centre of mass")
    p_sep.add_argument("--masses", required=True, metavar="M1,M2[,...]")
    p_sep.add_argument("--dim", type=int, default=3)
    p_sep.add_argument(
        "--expr",
        help="Hamiltonian over q1..qNd, p1..pNd (default: total kinetic energy)",
    )
    p_sep.add_argument("-o", "--output")
    p_sep.set_defaults(func=cmd_separate)

    return parser


def _apply_memory_cap() -> None:
    cap = os.environ.get("PHASEALG_MAX_MEMORY_MB")
    if not cap:
        return
    try:
        megabytes = int(cap)
    except ValueError as exc:
        raise ValueError(
            f"PHASEALG_MAX_MEMORY_MB must be an integer, got {cap!r}"
        ) from exc
    if megabytes <= 0:
        raise ValueError("PHASEALG_MAX_MEMORY_MB must be positive")
    try:
        import resource
    except ImportError:  # pragma: no cover - non-POSIX platforms
        return
    soft = megabytes * 1024 * 1024
    _, hard = resource.getrlimit(resource.RLIMIT_AS)
    if hard != resource.RLIM_INFINITY:
        soft = min(soft, hard)
    resource.setrlimit(resource.RLIMIT_AS, (soft, hard))


def main(argv=None) -> int:
    try:
        _apply_memory_cap()
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse errors carry their own code
        code = exc.code
        return code if isinstance(code, int) else 2
    except NonClosingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, SeparationFailure, PhaseAlgError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
