"""Command-line front end.

Subcommands

    surface      export a payoff surface as CSV plus a companion plot
                 script, and render a PNG alongside (disable with
                 --no-figure)
    equilibrium  search for an equilibrium, write a key/value report,
                 render the surface heatmap with the point marked
    classical    classical mixed-strategy solution of the payoff table
    verify       run the built-in numerical self-checks
    reproduce    run every preset against its expected results

Exit codes: 0 success, 2 config parse error, 3 config validation error,
4 infeasible strategy parameters, 5 reproduction failure, 6 I/O error,
1 anything else.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from .classical import fictitious_play, minimax_violation, solve_zero_sum
from .config import load_config
from .engine import evaluation_domain, payoff_at
from .equilibrium import find_equilibrium, sample_surface
from .errors import (
    ConfigParseError,
    ConfigValidationError,
    DomainError,
    InfeasibleParameterError,
    InvalidDimensionError,
    InvalidStateError,
    ShapeMismatchError,
)
from .presets import PRESETS, compare_values, evaluate_preset, get_preset
from .reporting import (
    VERSION,
    format_number,
    render_heatmap_png,
    render_surface_png,
    surface_metadata,
    write_kv_report,
    write_plot_script,
    write_surface_csv,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_INFEASIBLE = 4
EXIT_REPRODUCE = 5
EXIT_IO = 6


def _load_scenario(args):
    """(config, stem, label) from --preset or --config."""
    if args.preset:
        preset = get_preset(args.preset)
        return preset.config, preset.name, f"{preset.name} ({preset.description})"
    cfg = load_config(args.config)
    stem = Path(args.config).stem
    return cfg, stem, stem


def _resolve_out(out, default_name):
    """An --out that looks like a file is used verbatim; a directory gets
    the default file name placed inside it."""
    if out is None:
        return Path(default_name)
    out = Path(out)
    if out.suffix:
        out.parent.mkdir(parents=True, exist_ok=True)
        return out
    out.mkdir(parents=True, exist_ok=True)
    return out / default_name


def _domain_note(state):
    if state.is_product:
        return (
            "product state: parameters span [0,1]; outside the unitary "
            "interval the strategy acts as the equivalent classical mixture"
        )
    return "entangled state: parameters restricted to the unitary feasibility interval"


def _scenario_meta(cfg, command, label):
    dom_p = evaluation_domain(cfg.game.rows, cfg.state)
    dom_q = evaluation_domain(cfg.game.cols, cfg.state)
    return surface_metadata(
        cfg.game,
        cfg.state,
        extra={
            "command": command,
            "scenario": label,
            "p_domain": f"[{format_number(dom_p.p_min)}, 1]",
            "q_domain": f"[{format_number(dom_q.p_min)}, 1]",
            "domain_note": _domain_note(cfg.state),
        },
    )


def _cmd_surface(args):
    cfg, stem, label = _load_scenario(args)
    resolution = args.resolution or cfg.resolution
    surface = sample_surface(
        cfg.game, cfg.state, resolution=resolution, phase_sign=cfg.phase_sign
    )
    meta = _scenario_meta(cfg, "surface", stem)
    meta["resolution"] = str(resolution)
    csv_path = _resolve_out(args.out, f"{stem}_surface.csv")
    write_surface_csv(csv_path, surface, meta)
    print(f"wrote {csv_path} ({resolution}x{resolution} grid)")
    script_path = csv_path.with_name(csv_path.stem + "_plot.py")
    write_plot_script(script_path, csv_path.name)
    print(f"wrote {script_path}")
    if not args.no_figure:
        png_path = csv_path.with_suffix(".png")
        render_surface_png(png_path, surface, title=label)
        print(f"wrote {png_path}")
    return EXIT_OK


def _fmt_opt(value):
    return "none" if value is None else format_number(value)


def _equilibrium_mapping(cfg, label, report, classical, comparison):
    mapping = dict(_scenario_meta(cfg, "equilibrium", label))
    mapping.update(
        {
            "status": report.status,
            "point_p": _fmt_opt(report.point[0] if report.point else None),
            "point_q": _fmt_opt(report.point[1] if report.point else None),
            "value": _fmt_opt(report.value),
            "gradient_norm": _fmt_opt(report.gradient_norm),
            "best_response_gap_p": _fmt_opt(
                report.best_response_gaps[0] if report.best_response_gaps else None
            ),
            "best_response_gap_q": _fmt_opt(
                report.best_response_gaps[1] if report.best_response_gaps else None
            ),
            "response_tol": format_number(report.response_tol),
            "candidates_examined": str(report.candidates_examined),
            "saddle_count": str(len(report.saddles)),
            "saddle_points": (
                ";".join(
                    f"({format_number(p)},{format_number(q)})" for p, q in report.saddles
                )
                or "none"
            ),
            "boundary_count": str(report.boundary_count),
            "classical_value": format_number(classical.value),
            "classical_row_strategy": ",".join(
                format_number(v) for v in classical.row_strategy
            ),
            "classical_col_strategy": ",".join(
                format_number(v) for v in classical.col_strategy
            ),
            "classical_method": classical.method,
            "comparison": comparison,
        }
    )
    return mapping


def _cmd_equilibrium(args):
    cfg, stem, label = _load_scenario(args)
    report = find_equilibrium(
        cfg.game,
        cfg.state,
        scan_resolution=args.resolution or 1001,
        grad_tol=cfg.tolerances.gradient,
        tol_scale=cfg.tolerances.response_scale,
        phase_sign=cfg.phase_sign,
    )
    classical = solve_zero_sum(cfg.game)
    comparison = compare_values(report.value, classical.value)

    print(f"scenario: {label}")
    print(f"status:   {report.status}")
    if report.point is not None:
        print(
            f"point:    p = {format_number(report.point[0])}, "
            f"q = {format_number(report.point[1])}"
        )
        print(f"value:    {format_number(report.value)} (for player A; B gets the negative)")
    print(f"classical value: {format_number(classical.value)} -> {comparison}")

    fmt = args.format or cfg.output_format
    ext = "csv" if fmt == "csv" else "kv"
    report_path = _resolve_out(args.out, f"{stem}_equilibrium.{ext}")
    mapping = _equilibrium_mapping(cfg, label, report, classical, comparison)
    write_kv_report(report_path, mapping, fmt=fmt)
    print(f"report:   {report_path}")
    if not args.no_figure:
        surface = sample_surface(
            cfg.game, cfg.state, resolution=201, phase_sign=cfg.phase_sign
        )
        png_path = report_path.with_suffix(".png")
        render_heatmap_png(png_path, surface, title=label, point=report.point)
        print(f"figure:   {png_path}")
    return EXIT_OK


def _cmd_classical(args):
    cfg, stem, label = _load_scenario(args)
    solution = solve_zero_sum(cfg.game)
    print(f"scenario: {label}")
    print(f"value:    {format_number(solution.value)}")
    print(f"row strategy: {', '.join(format_number(v) for v in solution.row_strategy)}")
    print(f"col strategy: {', '.join(format_number(v) for v in solution.col_strategy)}")
    mapping = {
        "tool": f"qzsgame {VERSION}",
        "command": "classical",
        "scenario": label,
        "game_shape": f"{cfg.game.rows}x{cfg.game.cols}",
        "value": format_number(solution.value),
        "row_strategy": ",".join(format_number(v) for v in solution.row_strategy),
        "col_strategy": ",".join(format_number(v) for v in solution.col_strategy),
        "method": solution.method,
        "minimax_violation": format_number(minimax_violation(cfg.game, solution)),
    }
    if args.fictitious:
        approx = fictitious_play(cfg.game, iterations=args.fictitious)
        lo, hi = approx.value_bounds
        print(
            f"fictitious play ({args.fictitious} iterations): "
            f"{format_number(approx.value)} in [{format_number(lo)}, {format_number(hi)}]"
        )
        mapping.update(
            {
                "fictitious_value": format_number(approx.value),
                "fictitious_lower": format_number(lo),
                "fictitious_upper": format_number(hi),
                "fictitious_iterations": str(args.fictitious),
            }
        )
    fmt = args.format or cfg.output_format
    ext = "csv" if fmt == "csv" else "kv"
    report_path = _resolve_out(args.out, f"{stem}_classical.{ext}")
    write_kv_report(report_path, mapping, fmt=fmt)
    print(f"report:   {report_path}")
    return EXIT_OK


def _self_checks():
    """Deterministic first-principles checks; yields (label, ok, detail)."""
    from .strategy_space import build_mixing_matrix, build_unitary, feasible_domain, theta
    from .engine import (
        PayoffMatrix,
        SchmidtState,
        evolve,
        payoff_grid,
        probability_matrix,
    )

    rng = np.random.default_rng(424242)

    worst = 0.0
    for dim in range(2, 9):
        m = build_mixing_matrix(dim).entries
        dev = np.max(np.abs(m @ m - np.eye(dim) - (dim - 2) / np.sqrt(dim - 1) * m))
        worst = max(worst, float(dev))
    yield "mixing-identity", worst < 1e-12, f"max deviation {worst:.3e}"

    worst = 0.0
    for dim in (3, 4, 5, 6):
        dom = feasible_domain(dim)
        worst = max(worst, abs(theta(dom.p_min, dim)), abs(theta(1.0, dim) - np.pi / 2))
    yield "phase-endpoints", worst < 1e-7, f"max deviation {worst:.3e}"

    worst = 0.0
    for _ in range(500):
        dim = int(rng.integers(2, 7))
        dom = feasible_domain(dim)
        p = dom.p_min + (1.0 - dom.p_min) * rng.random()
        u = build_unitary(p, dim).matrix
        worst = max(worst, float(np.max(np.abs(u @ u.conj().T - np.eye(dim)))))
    yield "unitarity", worst < 1e-12, f"500 samples, max deviation {worst:.3e}"

    worst = 0.0
    for _ in range(200):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        k = min(n, m)
        raw = rng.random(k) + 0.05
        state = SchmidtState(raw / np.linalg.norm(raw))
        pa = feasible_domain(n)
        pb = feasible_domain(m)
        p = pa.p_min + (1 - pa.p_min) * rng.random()
        q = pb.p_min + (1 - pb.p_min) * rng.random()
        x = probability_matrix(evolve(state, build_unitary(p, n), build_unitary(q, m)))
        worst = max(worst, abs(float(np.sum(x.entries)) - 1.0))
    yield "normalization", worst < 1e-12, f"200 scenarios, max deviation {worst:.3e}"

    game = PayoffMatrix([[2.0, 3.0, -2.0], [-2.0, 4.0, 2.0]])
    state = SchmidtState([1.0, 0.0])
    corners = {
        (a, b): payoff_at(game, state, a, b) for a in (0.0, 1.0) for b in (0.0, 1.0)
    }
    worst = 0.0
    for p, q in rng.random((50, 2)):
        interp = (
            corners[(0.0, 0.0)] * (1 - p) * (1 - q)
            + corners[(1.0, 0.0)] * p * (1 - q)
            + corners[(0.0, 1.0)] * (1 - p) * q
            + corners[(1.0, 1.0)] * p * q
        )
        worst = max(worst, abs(payoff_at(game, state, p, q) - interp))
    yield "product-bilinearity", worst < 1e-10, f"50 points, max deviation {worst:.3e}"

    ps = np.linspace(0.0, 1.0, 31)
    grid = payoff_grid(game, state, ps, ps)
    worst = 0.0
    for i in (0, 13, 30):
        for j in (4, 17):
            worst = max(worst, abs(grid[i, j] - payoff_at(game, state, ps[i], ps[j])))
    yield "grid-consistency", worst < 1e-12, f"max deviation {worst:.3e}"

    worst_gap, worst_minimax = 0.0, 0.0
    for _ in range(40):
        a = rng.uniform(-5, 5, size=(int(rng.integers(2, 7)), int(rng.integers(2, 7))))
        primal = solve_zero_sum(a)
        dual = solve_zero_sum(-a.T)
        worst_gap = max(worst_gap, abs(primal.value + dual.value))
        worst_minimax = max(worst_minimax, minimax_violation(a, primal))
    yield "simplex-duality", worst_gap <= 1e-9, f"40 matrices, max gap {worst_gap:.3e}"
    yield "minimax-inequalities", worst_minimax <= 1e-6, f"max violation {worst_minimax:.3e}"

    ok = True
    for _ in range(5):
        a = rng.uniform(-5, 5, size=(3, 3))
        exact = solve_zero_sum(a).value
        lo, hi = fictitious_play(a, iterations=20_000).value_bounds
        ok = ok and (lo - 1e-9 <= exact <= hi + 1e-9)
    yield "fictitious-play-bracket", ok, "5 matrices at 20000 iterations"


def _cmd_verify(_args):
    failures = 0
    for label, ok, detail in _self_checks():
        print(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
        failures += 0 if ok else 1
    if failures:
        print(f"{failures} self-check(s) failed")
        return EXIT_ERROR
    print("all self-checks passed")
    return EXIT_OK


def _cmd_reproduce(args):
    out_dir = None
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
    all_passed = True
    for preset in PRESETS.values():
        result = evaluate_preset(preset)
        all_passed = all_passed and result.passed
        verdict = "PASS" if result.passed else "FAIL"
        summary = "; ".join(
            f"{label} ok" if ok else f"{label}: {detail}"
            for label, ok, detail in result.checks
        )
        print(f"{verdict} {preset.name}: {summary}")
        if out_dir is not None:
            cfg = preset.config
            mapping = _equilibrium_mapping(
                cfg,
                f"{preset.name} ({preset.description})",
                result.report,
                result.classical,
                result.comparison,
            )
            write_kv_report(out_dir / f"{preset.name}_equilibrium.kv", mapping)
            surface = sample_surface(
                cfg.game, cfg.state, resolution=cfg.resolution, phase_sign=cfg.phase_sign
            )
            meta = _scenario_meta(cfg, "surface", preset.name)
            meta["resolution"] = str(cfg.resolution)
            csv_path = out_dir / f"{preset.name}_surface.csv"
            write_surface_csv(csv_path, surface, meta)
            write_plot_script(out_dir / f"{preset.name}_surface_plot.py", csv_path.name)
            if not args.no_figure:
                marker = None
                if result.report.point is not None:
                    marker = (*result.report.point, result.report.value)
                render_surface_png(
                    out_dir / f"{preset.name}_surface.png",
                    surface,
                    title=f"{preset.name}: {preset.description}",
                    marker=marker,
                )
    if not all_passed:
        print("reproduction FAILED")
        return EXIT_REPRODUCE
    print("all presets reproduced")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qzsgame",
        description=(
            "Zero-sum quantum matrix games with one-parameter restricted "
            "unitary strategies: payoff surfaces, equilibrium search, and "
            "classical baselines."
        ),
        epilog=(
            "exit codes: 0 ok, 2 parse error, 3 validation error, "
            "4 infeasible parameters, 5 reproduction failure, 6 I/O error"
        ),
    )
    parser.add_argument("--version", action="version", version=f"qzsgame {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scenario(sp):
        group = sp.add_mutually_exclusive_group(required=True)
        group.add_argument(
            "--preset", choices=list(PRESETS), help="built-in scenario name"
        )
        group.add_argument("--config", metavar="PATH", help="JSON config file")

    sp = sub.add_parser("surface", help="export the payoff surface as CSV")
    add_scenario(sp)
    sp.add_argument("--resolution", type=int, metavar="N", help="grid points per axis")
    sp.add_argument("--out", metavar="PATH", help="output file or directory")
    sp.add_argument(
        "--no-figure", action="store_true", help="skip rendering the PNG figure"
    )
    sp.set_defaults(func=_cmd_surface)

    sp = sub.add_parser("equilibrium", help="search for an equilibrium")
    add_scenario(sp)
    sp.add_argument(
        "--resolution", type=int, metavar="N", help="consistency-scan resolution"
    )
    sp.add_argument("--out", metavar="PATH", help="output file or directory")
    sp.add_argument("--format", choices=["kv", "csv"], help="report format")
    sp.add_argument(
        "--no-figure", action="store_true", help="skip rendering the PNG figure"
    )
    sp.set_defaults(func=_cmd_equilibrium)

    sp = sub.add_parser("classical", help="classical mixed-strategy solution")
    add_scenario(sp)
    sp.add_argument("--out", metavar="PATH", help="output file or directory")
    sp.add_argument("--format", choices=["kv", "csv"], help="report format")
    sp.add_argument(
        "--fictitious",
        type=int,
        default=0,
        metavar="N",
        help="also run N iterations of fictitious play as a cross-check",
    )
    sp.set_defaults(func=_cmd_classical)

    sp = sub.add_parser("verify", help="run the numerical self-checks")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("reproduce", help="run all presets against expectations")
    sp.add_argument("--out", metavar="DIR", help="also write per-preset artifacts")
    sp.add_argument(
        "--no-figure", action="store_true", help="skip rendering PNG figures"
    )
    sp.set_defaults(func=_cmd_reproduce)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (
        ConfigValidationError,
        InvalidStateError,
        ShapeMismatchError,
        InvalidDimensionError,
    ) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except (InfeasibleParameterError, DomainError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
