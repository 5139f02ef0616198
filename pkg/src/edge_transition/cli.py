"""Command line: derive the correction kernels, verify them numerically, evaluate determinants.

Exit codes: 0 success, 2 a mathematical check failed, 3 precision or convergence
exhausted, 4 bad arguments.
"""

import logging
from pathlib import Path
from typing import Annotated, Any, Optional

import click
import mpmath
import numpy as np
import pandas as pd
import typer

from edge_transition.config import RunConfig, load_config
from edge_transition.errors import EdgeTransitionError, ParameterError, TheoryViolationError
from edge_transition.expansion import BranchConvention, anchor_report, assemble_kernel_expansion, emit_expansion
from edge_transition.fredholm import DeterminantResult, e2_hard, tracy_widom_F, transition_study
from edge_transition.kernels import asymptotic_residual, check_parametrix, parse_grid, residual_scan
from edge_transition.kernels.residuals import fit_slope
from edge_transition.reports import render_frame, write_output
from edge_transition.specfun import EvalContext

logger = logging.getLogger(__name__)

USAGE_EXIT_CODE = 4
SLOPE_TOLERANCE = 0.15
TRANSITION_BAND = (0.9, 1.1)
DET_TOLERANCE = 1e-12
JUMP_TOLERANCE = 1e-10
ASYMPTOTIC_RADII = (10.0, 20.0, 40.0)
ASYMPTOTIC_BAND = (-5.0, -4.0)

app = typer.Typer(no_args_is_help=True, add_completion=False, help=__doc__)
verify_app = typer.Typer(no_args_is_help=True, help="Numerical checks of the expansion and of the Airy model.")
fredholm_app = typer.Typer(no_args_is_help=True, help="Fredholm determinants F(t) and E_2^hard(s; nu).")
app.add_typer(verify_app, name="verify")
app.add_typer(fredholm_app, name="fredholm")

ConfigOpt = Annotated[Optional[Path], typer.Option("--config", help="YAML file with default values.")]
OrderOpt = Annotated[Optional[int], typer.Option("--order", help="Highest correction order.")]
NuOpt = Annotated[Optional[str], typer.Option("--nu", help="Comma-separated list of nu.")]
TOpt = Annotated[Optional[float], typer.Option("--t", help="Soft-edge variable t.")]
SOpt = Annotated[Optional[float], typer.Option("--s", help="Hard-edge gap end s.")]
MOpt = Annotated[Optional[int], typer.Option("--m", help="Highest order subtracted in the residual.")]
GridOpt = Annotated[Optional[str], typer.Option("--grid", help='Grid "x0:x1:n,y0:y1:n".')]
BitsOpt = Annotated[Optional[int], typer.Option("--precision-bits", help="Working precision in bits.")]
FormatOpt = Annotated[Optional[str], typer.Option("--format", help="json, latex or csv.")]
OutOpt = Annotated[Optional[Path], typer.Option("--out", help="Output file; standard output if omitted.")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Seed of the sampled test points.")]
BranchOpt = Annotated[Optional[str], typer.Option("--branch", help="printed or principal.")]
NodesOpt = Annotated[Optional[int], typer.Option("--nodes", help="Gauss-Legendre nodes.")]
EpsilonOpt = Annotated[Optional[float], typer.Option("--epsilon", help="Disc radius bounding the grid.")]
AnchorsOpt = Annotated[Optional[bool], typer.Option("--anchors/--no-anchors", help="Append intermediate values.")]


@app.callback()
def configure(
    ctx: typer.Context,
    log_level: Annotated[Optional[str], typer.Option("--log-level", help="Logging level.")] = None,
) -> None:
    """Derive and verify the hard-to-soft edge expansion of the Bessel kernel."""
    ctx.obj = {"log_level": log_level}


def _load(
    ctx: typer.Context,
    subcommand: str,
    config_file: Optional[Path],
    defaults: Optional[dict[str, Any]] = None,
    **flags: Any,
) -> RunConfig:
    """Resolve the configuration of a command and set up logging from it."""
    flags["log_level"] = (ctx.obj or {}).get("log_level")
    config = load_config(subcommand, flags, config_file, defaults=defaults)
    logging.basicConfig(
        level=config.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logger.info("running %s", subcommand)
    return config


def _emit_table(frame: pd.DataFrame, config: RunConfig) -> None:
    write_output(render_frame(frame, config.to_header(), config.format), config.out)


@app.command()
def derive(
    ctx: typer.Context,
    order: OrderOpt = None,
    fmt: FormatOpt = None,
    out: OutOpt = None,
    branch: BranchOpt = None,
    anchors: AnchorsOpt = None,
    config_file: ConfigOpt = None,
) -> None:
    """Write the exact correction kernels K_1..K_m as JSON or LaTeX."""
    config = _load(
        ctx,
        "derive",
        config_file,
        {"format": "json"},
        order=order,
        format=fmt,
        out=out,
        branch=branch,
        anchors=anchors,
    )
    if config.format == "csv":
        raise ParameterError("derive writes json or latex")
    expansion = assemble_kernel_expansion(config.order, config.branch, verify_padding=True)
    report = anchor_report(BranchConvention.PRINTED) if config.anchors else None
    write_output(emit_expansion(expansion, config.format, config.to_header(), report), config.out)


def _scan(config: RunConfig) -> dict[int, float]:
    expansion = assemble_kernel_expansion(config.m, config.branch)
    grid = residual_scan(
        config.nus,
        parse_grid(config.grid),
        config.m,
        expansion,
        EvalContext(config.precision_bits),
        config.epsilon,
    )
    _emit_table(grid.to_frame(), config)
    return grid.slopes


@app.command()
def scan(
    ctx: typer.Context,
    m: MOpt = None,
    nu: NuOpt = None,
    grid: GridOpt = None,
    precision_bits: BitsOpt = None,
    fmt: FormatOpt = None,
    out: OutOpt = None,
    branch: BranchOpt = None,
    epsilon: EpsilonOpt = None,
    config_file: ConfigOpt = None,
) -> None:
    """Weighted kernel residuals per nu and order, without judging the slopes."""
    config = _load(
        ctx,
        "scan",
        config_file,
        m=m,
        nus=nu,
        grid=grid,
        precision_bits=precision_bits,
        format=fmt,
        out=out,
        branch=branch,
        epsilon=epsilon,
    )
    _scan(config)


@verify_app.command("kernel")
def verify_kernel(
    ctx: typer.Context,
    m: MOpt = None,
    nu: NuOpt = None,
    grid: GridOpt = None,
    precision_bits: BitsOpt = None,
    fmt: FormatOpt = None,
    out: OutOpt = None,
    branch: BranchOpt = None,
    epsilon: EpsilonOpt = None,
    config_file: ConfigOpt = None,
) -> None:
    """Residual after subtracting orders 0..m decays like h^(k+1) for every k <= m."""
    config = _load(
        ctx,
        "verify-kernel",
        config_file,
        m=m,
        nus=nu,
        grid=grid,
        precision_bits=precision_bits,
        format=fmt,
        out=out,
        branch=branch,
        epsilon=epsilon,
    )
    slopes = _scan(config)
    for k, slope in sorted(slopes.items()):
        if abs(slope - (k + 1)) > SLOPE_TOLERANCE:
            raise TheoryViolationError(f"residual slope {slope:.3f}, expected {k + 1} +/- {SLOPE_TOLERANCE}", j=k)
        logger.info("order %d: slope %.3f", k, slope)


@verify_app.command("transition")
def verify_transition(
    ctx: typer.Context,
    t: TOpt = None,
    nu: NuOpt = None,
    nodes: NodesOpt = None,
    fmt: FormatOpt = None,
    out: OutOpt = None,
    config_file: ConfigOpt = None,
) -> None:
    """|E_2^hard(phi_nu(t); nu) - F(t)| decays like h."""
    config = _load(
        ctx, "verify-transition", config_file, t=t, nus=nu, nodes=nodes, format=fmt, out=out
    )
    if len(config.nus) < 3:
        raise ParameterError("verify transition needs at least three values of nu")
    report = transition_study(config.t, config.nus, config.nodes)
    _emit_table(report.to_frame(), config)
    low, high = TRANSITION_BAND
    if report.slope is None or not low <= report.slope <= high:
        raise TheoryViolationError(f"transition slope {report.slope}, expected within {TRANSITION_BAND}")


@verify_app.command("parametrix")
def verify_parametrix(
    ctx: typer.Context,
    precision_bits: BitsOpt = None,
    seed: SeedOpt = None,
    fmt: FormatOpt = None,
    out: OutOpt = None,
    config_file: ConfigOpt = None,
) -> None:
    """Unit determinant, jump conditions and large-z expansion of the Airy model."""
    config = _load(
        ctx, "verify-parametrix", config_file, precision_bits=precision_bits, seed=seed, format=fmt, out=out
    )
    eval_ctx = EvalContext(config.precision_bits)
    check = check_parametrix(eval_ctx, rng=np.random.default_rng(config.seed))
    asymptotic = [
        float(asymptotic_residual(r * mpmath.expjpi(mpmath.mpf(1) / 3), eval_ctx)) for r in ASYMPTOTIC_RADII
    ]
    decay = fit_slope(ASYMPTOTIC_RADII, asymptotic)
    rows = [{"check": "det", "ray": None, "r": None, "value": float(check.max_det_error)}]
    rows += [
        {"check": "jump", "ray": ray, "r": None, "value": float(v)} for ray, v in check.max_jump_residual.items()
    ]
    rows += [
        {"check": "asymptotic", "ray": None, "r": r, "value": v}
        for r, v in zip(ASYMPTOTIC_RADII, asymptotic, strict=True)
    ]
    rows.append({"check": "asymptotic_slope", "ray": None, "r": None, "value": decay})
    _emit_table(pd.DataFrame(rows, columns=["check", "ray", "r", "value"]), config)
    if check.max_det_error > DET_TOLERANCE:
        raise TheoryViolationError(f"det Phi deviates from 1 by {float(check.max_det_error):.2e}")
    if check.worst_jump > JUMP_TOLERANCE:
        raise TheoryViolationError(f"jump residual {float(check.worst_jump):.2e} above {JUMP_TOLERANCE}")
    if not ASYMPTOTIC_BAND[0] <= decay <= ASYMPTOTIC_BAND[1]:
        raise TheoryViolationError(f"asymptotic residual decays like |z|^{decay:.2f}")


def _determinant_row(
    name: str, t: Optional[float], nu: Optional[float], s: Optional[float], result: DeterminantResult
) -> dict[str, Any]:
    a, b = result.interval
    return {
        "quantity": name,
        "t": t,
        "nu": nu,
        "s": s,
        "value": result.value,
        "error_estimate": result.error_estimate,
        "n_nodes": result.n_nodes,
        "a": a,
        "b": b,
    }


@fredholm_app.command("F")
def fredholm_f(
    ctx: typer.Context,
    t: TOpt = None,
    nodes: NodesOpt = None,
    fmt: FormatOpt = None,
    out: OutOpt = None,
    config_file: ConfigOpt = None,
) -> None:
    """Tracy-Widom F(t) with its node-doubling error estimate."""
    config = _load(ctx, "fredholm-F", config_file, t=t, nodes=nodes, format=fmt, out=out)
    result = tracy_widom_F(config.t, config.nodes)
    _emit_table(pd.DataFrame([_determinant_row("F", config.t, None, None, result)]), config)


@fredholm_app.command("e2")
def fredholm_e2(
    ctx: typer.Context,
    s: SOpt = None,
    nu: NuOpt = None,
    nodes: NodesOpt = None,
    fmt: FormatOpt = None,
    out: OutOpt = None,
    config_file: ConfigOpt = None,
) -> None:
    """Hard-edge gap probability E_2^hard(s; nu), one row per nu."""
    config = _load(ctx, "fredholm-e2", config_file, s=s, nus=nu, nodes=nodes, format=fmt, out=out)
    if config.s is None:
        raise ParameterError("fredholm e2 needs --s")
    rows = [
        _determinant_row("E2", None, nu_i, config.s, e2_hard(config.s, nu_i, config.nodes)) for nu_i in config.nus
    ]
    _emit_table(pd.DataFrame(rows), config)


def main(argv: Optional[list[str]] = None) -> int:
    """Run the command line and return its exit code."""
    try:
        result = app(args=argv, prog_name="edge-transition", standalone_mode=False)
    except click.UsageError as err:
        err.show()
        return USAGE_EXIT_CODE
    except click.exceptions.Abort:
        return 1
    except EdgeTransitionError as err:
        logger.error("%s failed: %s", type(err).__name__, err)  # noqa: TRY400
        typer.echo(f"error: {err}", err=True)
        return err.exit_code
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    raise SystemExit(main())
