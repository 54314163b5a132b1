"""Command line interface.

Subcommands: ``eig`` (one eigenvalue solve), ``steklov`` (first Steklov
eigenvalue by two routes), ``check`` (structural property suite over an
alpha grid), ``verify`` (annulus-versus-ball comparison sweep), ``sweep``
(Cartesian eigenvalue grid as CSV/JSON rows).

Reports go to stdout or ``--out FILE`` in JSON or CSV, always prefixed by
a reproducibility header with the resolved configuration and tolerances,
and are byte-deterministic for a fixed configuration.  When an output
file is set, companion figures are rendered next to it (``--figures DIR``
redirects them, ``--no-figures`` disables).  Errors print a single-line
JSON diagnostic on stderr; exit codes: 0 success, 2 validation, 3
numerical failure, 4 assertion/counterexample.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .ball import check_propositions
from .compare import verify_theorem
from .errors import RosspecError, ValidationError
from .geometry import ball_volume, make_space
from .sturm import (RadialDomain, RobinProblem, eigen_radial, steklov_first,
                    steklov_first_via_robin)
from .tolerances import ENV_VAR, PROFILES, Tolerances, active, profile
from . import report as rp

CHECK_COLUMNS = ("kind", "n", "k", "m", "R", "alpha", "check", "margin", "floor", "passed")
STEKLOV_COLUMNS = ("kind", "n", "k", "m", "R", "sigma1", "sigma1_via_robin_root",
                   "route_difference", "inverse_radius_margin")
VERIFY_COLUMNS = ("kind", "n", "k", "m", "volume", "alpha", "R1", "R2",
                  "lambda2_domain", "lambda2_ball", "mode_ell", "mode_index",
                  "gap", "asymmetry", "rayleigh_bound", "resolvable")


def _diag(kind: str, message: str, payload: dict | None = None) -> None:
    obj: dict[str, Any] = {"error": kind, "message": message}
    if payload:
        obj["payload"] = payload
    print(rp.dumps_line(obj), file=sys.stderr)


class _Parser(argparse.ArgumentParser):
    """Argparse variant whose errors match the diagnostic contract."""

    def error(self, message: str):
        _diag("validation", message)
        raise SystemExit(2)


def _parse_annulus(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValidationError(f"--annulus expects R1:R2, got {text!r}")
    try:
        r1, r2 = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValidationError(f"--annulus expects numbers, got {text!r}") from None
    return r1, r2


def _parse_inners(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"--inners expects a:b:N, got {text!r}")
    try:
        a, b, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValidationError(f"--inners expects a:b:N numbers, got {text!r}") from None
    if not 0.0 < a <= b:
        raise ValidationError(f"--inners needs 0 < a <= b, got a={a} b={b}")
    if count < 1 or (count == 1 and a != b):
        raise ValidationError(f"--inners needs N >= 2 for a range, got N={count}")
    return [float(x) for x in np.geomspace(a, b, count)]


def _floats_csv(text: str, flag: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise ValidationError(f"{flag} expects comma-separated numbers, got {text!r}") from None
    if not values:
        raise ValidationError(f"{flag} received no values")
    return values


def _ints_csv(text: str, flag: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise ValidationError(f"{flag} expects comma-separated integers, got {text!r}") from None
    if not values:
        raise ValidationError(f"{flag} received no values")
    return values


def _build_parser() -> _Parser:
    parser = _Parser(prog="rosspec", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", help="R | C | H | O (or real/complex/quaternion/octonion)")
    common.add_argument("--n", type=int, default=2, help="algebra dimension of the space (default 2)")
    common.add_argument("--tol-profile", choices=sorted(PROFILES),
                        help=f"tolerance profile (otherwise ${ENV_VAR} or default)")
    common.add_argument("--ode-tol", type=float, help="override ODE rel+abs tolerance")
    common.add_argument("--eig-tol", type=float, help="override eigenvalue abs+rel tolerance")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--figures", help="directory for companion figures")
    common.add_argument("--no-figures", action="store_true", help="disable figure rendering")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eig", parents=[common], help="solve one radial Robin eigenvalue")
    p.add_argument("--ball", type=float, help="ball radius")
    p.add_argument("--annulus", help="annulus radii as R1:R2")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--ell", type=int, choices=(0, 1), required=True)
    p.add_argument("--index", type=int, default=1)

    p = sub.add_parser("steklov", parents=[common], help="first Steklov eigenvalue, both routes")
    p.add_argument("--ball", type=float, required=True)

    p = sub.add_parser("check", parents=[common], help="structural property suite on a ball")
    p.add_argument("--ball", type=float, required=True)
    p.add_argument("--alpha", type=float, help="single Robin parameter")
    p.add_argument("--alpha-grid", type=int,
                   help="grid size over [-sigma1, 0] (default 9 when --alpha is absent)")

    p = sub.add_parser("verify", parents=[common], help="annulus-vs-ball comparison sweep")
    p.add_argument("--volume-of-ball", type=float, required=True,
                   help="radius whose ball volume fixes the sweep volume")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--inners", required=True,
                   help="a:b:N geometrically spaced inner radii")

    p = sub.add_parser("sweep", parents=[common], help="Cartesian eigenvalue grid")
    p.add_argument("--spaces", help="comma list of space kinds (default: --space)")
    p.add_argument("--radii", required=True, help="comma list of ball radii")
    p.add_argument("--alphas", required=True, help="comma list of Robin parameters")
    p.add_argument("--ells", default="0,1", help="comma list of modes (default 0,1)")
    p.add_argument("--indices", default="1,2", help="comma list of indices (default 1,2)")
    return parser


def _resolve_tols(args: argparse.Namespace) -> Tolerances:
    t = profile(args.tol_profile) if args.tol_profile else active()
    if args.ode_tol is not None:
        t = t.replace(ode_rtol=float(args.ode_tol), ode_atol=float(args.ode_tol))
    if args.eig_tol is not None:
        t = t.replace(eig_abs=float(args.eig_tol), eig_rel=float(args.eig_tol))
    return t


def _require_space(args: argparse.Namespace) -> str:
    if not args.space:
        raise ValidationError("--space is required")
    return args.space


def _common_config(args: argparse.Namespace) -> dict[str, Any]:
    return {
        "space": args.space,
        "n": args.n,
        "format": args.format,
        "out": args.out,
        "figures": args.figures,
        "no_figures": bool(args.no_figures),
        "tol_profile": args.tol_profile,
    }


def _write_output(args: argparse.Namespace, text: str) -> None:
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def _figure_target(args: argparse.Namespace, name: str) -> Path | None:
    if args.no_figures:
        return None
    if args.figures:
        return Path(args.figures) / name
    if args.out:
        out = Path(args.out)
        return out.parent / f"{out.stem}_{name}"
    return None


def _emit(args: argparse.Namespace, command: str, config: dict, t: Tolerances,
          result: Any, rows: list[dict], columns: Sequence[str]) -> None:
    if args.format == "json":
        text = rp.render_json(rp.build_report(command, config, t, result))
    else:
        header = {"command": command, "config": config, "tolerances": t.as_dict()}
        text = rp.render_csv(rows, columns, header)
    _write_output(args, text)


def _cmd_eig(args: argparse.Namespace, t: Tolerances) -> int:
    space = make_space(_require_space(args), args.n)
    if (args.ball is None) == (args.annulus is None):
        raise ValidationError("exactly one of --ball or --annulus is required")
    if args.ball is not None:
        domain = RadialDomain.ball(args.ball)
    else:
        domain = RadialDomain.annulus(*_parse_annulus(args.annulus))
    problem = RobinProblem(space, domain, args.alpha, args.ell)
    res = eigen_radial(problem, args.index, t)
    rec = rp.eigen_record(res)
    config = _common_config(args)
    config.update({"R1": domain.r_inner, "R2": domain.r_outer,
                   "alpha": args.alpha, "ell": args.ell, "index": args.index})
    _emit(args, "eig", config, t, rec, [rec], rp.CSV_COLUMNS)
    target = _figure_target(args, "profile.png")
    if target is not None:
        from . import figures
        figures.render_eig(res, target)
    return 0


def _cmd_steklov(args: argparse.Namespace, t: Tolerances) -> int:
    space = make_space(_require_space(args), args.n)
    R = float(args.ball)
    direct = steklov_first(space, R, t)
    via_robin = steklov_first_via_robin(space, R, t)
    rec = rp.steklov_record(space, R, direct, via_robin)
    config = _common_config(args)
    config.update({"R": R})
    _emit(args, "steklov", config, t, rec, [rec], STEKLOV_COLUMNS)
    target = _figure_target(args, "steklov.png")
    if target is not None:
        from . import figures
        radii = [float(x) for x in np.geomspace(R / 10.0, 10.0 * R, 9)]
        scaled = [steklov_first(space, x, t) * x for x in radii]
        figures.render_steklov(radii, scaled, R, target)
    return 0


def _cmd_check(args: argparse.Namespace, t: Tolerances) -> int:
    space = make_space(_require_space(args), args.n)
    R = float(args.ball)
    if args.alpha is not None and args.alpha_grid is not None:
        raise ValidationError("--alpha and --alpha-grid are mutually exclusive")
    if args.alpha is not None:
        alphas = [float(args.alpha)]
    else:
        count = args.alpha_grid if args.alpha_grid is not None else 9
        if count < 2:
            raise ValidationError(f"--alpha-grid needs at least 2 points, got {count}")
        sigma1 = steklov_first(space, R, t)
        alphas = [-sigma1 * (count - 1 - j) / (count - 1) for j in range(count)]
    reports = [check_propositions(space, R, a, t) for a in alphas]
    records = [rp.proposition_record(rep) for rep in reports]
    overall = all(rep.all_passed for rep in reports)
    config = _common_config(args)
    config.update({"R": R, "alpha": args.alpha, "alpha_grid": args.alpha_grid})
    result = {"reports": records, "all_passed": overall}
    rows = [
        {**rp.space_fields(rep.space), "R": rep.R, "alpha": rep.alpha,
         "check": entry.name, "margin": entry.margin, "floor": entry.floor,
         "passed": entry.passed}
        for rep in reports for entry in rep.entries
    ]
    _emit(args, "check", config, t, result, rows, CHECK_COLUMNS)
    target = _figure_target(args, "check.png")
    if target is not None:
        from . import figures
        figures.render_check(reports, target)
    if not overall:
        failing = [e.name for rep in reports for e in rep.entries if not e.passed]
        _diag("assertion", "structural checks failed", {"checks": sorted(set(failing))})
        return 4
    return 0


def _cmd_verify(args: argparse.Namespace, t: Tolerances) -> int:
    space = make_space(_require_space(args), args.n)
    volume = ball_volume(space, float(args.volume_of_ball), t)
    inners = _parse_inners(args.inners)
    rep = verify_theorem(space, volume, args.alpha, inners, t)
    rec = rp.theorem_record(rep)
    config = _common_config(args)
    config.update({"volume_of_ball": args.volume_of_ball, "alpha": args.alpha,
                   "inners": args.inners})
    rows = [
        {**rp.space_fields(space), "volume": rep.volume, "alpha": rep.alpha,
         "R1": row.r_inner, "R2": row.r_outer, "lambda2_domain": row.lam2_domain,
         "lambda2_ball": row.lam2_ball, "mode_ell": row.mode_ell,
         "mode_index": row.mode_index, "gap": row.gap, "asymmetry": row.asymmetry,
         "rayleigh_bound": row.rayleigh_bound, "resolvable": row.resolvable}
        for row in rep.rows
    ]
    _emit(args, "verify", config, t, rec, rows, VERIFY_COLUMNS)
    target = _figure_target(args, "verify.png")
    if target is not None:
        from . import figures
        figures.render_verify(rep, target)
    if not rep.all_gaps_positive:
        _diag("assertion", "a sweep row had a nonpositive eigenvalue gap",
              {"space": space.label(), "alpha": rep.alpha})
        return 4
    return 0


def _cmd_sweep(args: argparse.Namespace, t: Tolerances) -> int:
    kinds = ([part for part in args.spaces.split(",") if part]
             if args.spaces else [_require_space(args)])
    radii = _floats_csv(args.radii, "--radii")
    alphas = _floats_csv(args.alphas, "--alphas")
    ells = _ints_csv(args.ells, "--ells")
    indices = _ints_csv(args.indices, "--indices")
    records = []
    for kind in kinds:
        space = make_space(kind, args.n)
        for R in radii:
            domain = RadialDomain.ball(R)
            for alpha in alphas:
                for ell in ells:
                    for index in indices:
                        res = eigen_radial(RobinProblem(space, domain, alpha, ell), index, t)
                        records.append(rp.eigen_record(res))
    config = _common_config(args)
    config.update({"spaces": kinds, "radii": radii, "alphas": alphas,
                   "ells": ells, "indices": indices})
    _emit(args, "sweep", config, t, {"rows": records}, records, rp.CSV_COLUMNS)
    target = _figure_target(args, "sweep.png")
    if target is not None:
        from . import figures
        figures.render_sweep(records, target)
    return 0


_COMMANDS = {
    "eig": _cmd_eig,
    "steklov": _cmd_steklov,
    "check": _cmd_check,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        tols = _resolve_tols(args)
        return _COMMANDS[args.command](args, tols)
    except RosspecError as exc:
        _diag(type(exc).__name__, exc.message, exc.payload)
        return exc.exit_code
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    raise SystemExit(main())
