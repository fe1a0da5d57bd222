#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/22-下午4:18
import pathlib
import sys
from typing import Any, Dict, List, Optional, Tuple

from loguru import logger
from pydantic import ValidationError
from typer import BadParameter, Exit, Option, Typer, echo

from censoring_design import errors
from censoring_design.analysis import SearchMode
from censoring_design.config import Command, OutputFormat, RunConfig, build_run_config, load_config_file
from censoring_design.report import render
from censoring_design.runner import execute

app = Typer(name="censoring_design", help="cost-optimal progressive Type-II censoring plans for Weibull life tests")


def version_callback(value: bool):
    if value:
        from censoring_design._version import version

        print(f"Censoring Design: {version}")
        raise Exit()


def float_list_callback(value: Optional[str]) -> Optional[List[float]]:
    if value is None:
        return None
    try:
        return [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise BadParameter(f"expected comma separated numbers, got {value!r}")


def cost_list_callback(value: Optional[str]) -> Optional[List[Tuple[float, float, float]]]:
    if value is None:
        return None
    triples = []
    for item in value.split(","):
        parts = item.strip().split(":")
        if len(parts) != 3:
            raise BadParameter(f"cost triples look like k1:k2:k3, got {item!r}")
        try:
            triples.append(tuple(float(part) for part in parts))
        except ValueError:
            raise BadParameter(f"cost triples look like k1:k2:k3, got {item!r}")
    return triples


config_option = Option(None, "--config", "-c", help="flat TOML file with RunConfig keys; flags override it")
n_option = Option(None, "--n", help="units placed on test")
m_option = Option(None, "--m", help="failures observed")
shape_option = Option(None, "--shape", help="Weibull shape")
scale_rate_option = Option(None, "--scale-rate", help="Weibull scale rate (inverse scale)")
k1_option = Option(None, "--k1", help="cost per observed failure")
k2_option = Option(None, "--k2", help="cost per unit of test time")
k3_option = Option(None, "--k3", help="cost per unit of imprecision")
scheme_option = Option(None, "--scheme", help='removal plan such as "3*2,0*2,4"')
seed_option = Option(None, "--seed", help="random seed (64-bit unsigned)")
threads_option = Option(None, "--threads", help="concurrent cost evaluations")
budget_option = Option(None, "--budget", help="largest CS(n, m) searched exhaustively")
format_option = Option(None, "--format", "-f", help="report format")
progress_option = Option(False, "--progress", help="show a progress bar for exhaustive searches")
search_mode_option = Option(None, "--search-mode", help="optimizer used per cell")
population_size_option = Option(None, "--population-size")
tournament_size_option = Option(None, "--tournament-size")
crossover_rate_option = Option(None, "--crossover-rate")
blend_alpha_option = Option(None, "--blend-alpha")
mutation_rate_option = Option(None, "--mutation-rate")
max_generations_option = Option(None, "--max-generations")
stagnation_limit_option = Option(None, "--stagnation-limit")
elite_count_option = Option(None, "--elite-count")
max_iters_option = Option(None, "--max-iters", help="descent moves before the baseline stops")


def run(config: RunConfig) -> int:
    """Execute one command, write its report to stdout and return the exit status."""
    try:
        report = execute(config)
    except errors.CensoringDesignError as e:
        logger.debug(f"{config.command.value} failed: {e!r}")
        echo(f"Error: {e}", err=True)
        return e.exit_code
    echo(render(report, config.output_format), nl=False)
    return 0


def _invoke(command: Command, config_path: Optional[pathlib.Path], **flags: Any):
    try:
        file_values: Dict[str, Any] = load_config_file(config_path) if config_path is not None else {}
        if flags.get("progress") is False:
            flags["progress"] = None
        config = build_run_config(command, file_values, flags)
    except errors.CensoringDesignError as e:
        echo(f"Error: {e}", err=True)
        raise Exit(e.exit_code)
    except ValidationError as e:
        echo(f"Error: {e}", err=True)
        raise Exit(errors.InvalidArgumentError.exit_code)
    code = run(config)
    if code:
        raise Exit(code)


@app.command("evaluate")
def evaluate(
    config: Optional[pathlib.Path] = config_option,
    n: Optional[int] = n_option,
    m: Optional[int] = m_option,
    shape: Optional[float] = shape_option,
    scale_rate: Optional[float] = scale_rate_option,
    k1: Optional[float] = k1_option,
    k2: Optional[float] = k2_option,
    k3: Optional[float] = k3_option,
    scheme: Optional[str] = scheme_option,
    output_format: Optional[OutputFormat] = format_option,
):
    """cost, expected duration and imprecision of one scheme"""
    _invoke(
        Command.EVALUATE,
        config,
        n=n,
        m=m,
        shape=shape,
        scale_rate=scale_rate,
        k1=k1,
        k2=k2,
        k3=k3,
        scheme=scheme,
        output_format=output_format,
    )


@app.command("optimize")
def optimize(
    config: Optional[pathlib.Path] = config_option,
    n: Optional[int] = n_option,
    m: Optional[int] = m_option,
    shape: Optional[float] = shape_option,
    scale_rate: Optional[float] = scale_rate_option,
    k1: Optional[float] = k1_option,
    k2: Optional[float] = k2_option,
    k3: Optional[float] = k3_option,
    seed: Optional[int] = seed_option,
    threads: Optional[int] = threads_option,
    population_size: Optional[int] = population_size_option,
    tournament_size: Optional[int] = tournament_size_option,
    crossover_rate: Optional[float] = crossover_rate_option,
    blend_alpha: Optional[float] = blend_alpha_option,
    mutation_rate: Optional[float] = mutation_rate_option,
    max_generations: Optional[int] = max_generations_option,
    stagnation_limit: Optional[int] = stagnation_limit_option,
    elite_count: Optional[int] = elite_count_option,
    output_format: Optional[OutputFormat] = format_option,
):
    """genetic search for the cheapest scheme in CS(n, m)"""
    _invoke(
        Command.OPTIMIZE,
        config,
        n=n,
        m=m,
        shape=shape,
        scale_rate=scale_rate,
        k1=k1,
        k2=k2,
        k3=k3,
        seed=seed,
        threads=threads,
        population_size=population_size,
        tournament_size=tournament_size,
        crossover_rate=crossover_rate,
        blend_alpha=blend_alpha,
        mutation_rate=mutation_rate,
        max_generations=max_generations,
        stagnation_limit=stagnation_limit,
        elite_count=elite_count,
        output_format=output_format,
    )


@app.command("exhaustive")
def exhaustive(
    config: Optional[pathlib.Path] = config_option,
    n: Optional[int] = n_option,
    m: Optional[int] = m_option,
    shape: Optional[float] = shape_option,
    scale_rate: Optional[float] = scale_rate_option,
    k1: Optional[float] = k1_option,
    k2: Optional[float] = k2_option,
    k3: Optional[float] = k3_option,
    budget: Optional[int] = budget_option,
    threads: Optional[int] = threads_option,
    progress: bool = progress_option,
    output_format: Optional[OutputFormat] = format_option,
):
    """evaluate every scheme of CS(n, m)"""
    _invoke(
        Command.EXHAUSTIVE,
        config,
        n=n,
        m=m,
        shape=shape,
        scale_rate=scale_rate,
        k1=k1,
        k2=k2,
        k3=k3,
        budget=budget,
        threads=threads,
        progress=progress,
        output_format=output_format,
    )


@app.command("baseline")
def baseline(
    config: Optional[pathlib.Path] = config_option,
    n: Optional[int] = n_option,
    m: Optional[int] = m_option,
    shape: Optional[float] = shape_option,
    scale_rate: Optional[float] = scale_rate_option,
    k1: Optional[float] = k1_option,
    k2: Optional[float] = k2_option,
    k3: Optional[float] = k3_option,
    scheme: Optional[str] = Option(None, "--scheme", help="start of the descent, default OSC(m)"),
    max_iters: Optional[int] = max_iters_option,
    threads: Optional[int] = threads_option,
    output_format: Optional[OutputFormat] = format_option,
):
    """steepest descent over single-unit moves"""
    _invoke(
        Command.BASELINE,
        config,
        n=n,
        m=m,
        shape=shape,
        scale_rate=scale_rate,
        k1=k1,
        k2=k2,
        k3=k3,
        scheme=scheme,
        max_iters=max_iters,
        threads=threads,
        output_format=output_format,
    )


@app.command("sensitivity-shape")
def sensitivity_shape(
    config: Optional[pathlib.Path] = config_option,
    n: Optional[int] = n_option,
    m: Optional[int] = m_option,
    shape: Optional[float] = shape_option,
    k1: Optional[float] = k1_option,
    k2: Optional[float] = k2_option,
    k3: Optional[float] = k3_option,
    phi0: Optional[float] = Option(None, "--phi0", help="true shape, default --shape"),
    phis: Optional[str] = Option(
        None, "--phis", help="misspecified shapes, e.g. 1.85,1.9,2.1", callback=float_list_callback
    ),
    search_mode: Optional[SearchMode] = search_mode_option,
    seed: Optional[int] = seed_option,
    budget: Optional[int] = budget_option,
    threads: Optional[int] = threads_option,
    output_format: Optional[OutputFormat] = format_option,
):
    """relative efficiency of designs optimized under a wrong shape"""
    _invoke(
        Command.SENSITIVITY_SHAPE,
        config,
        n=n,
        m=m,
        shape=shape,
        k1=k1,
        k2=k2,
        k3=k3,
        phi0=phi0,
        phis=phis,
        search_mode=search_mode,
        seed=seed,
        budget=budget,
        threads=threads,
        output_format=output_format,
    )


@app.command("sensitivity-cost")
def sensitivity_cost(
    config: Optional[pathlib.Path] = config_option,
    n: Optional[int] = n_option,
    m: Optional[int] = m_option,
    shape: Optional[float] = shape_option,
    scale_rate: Optional[float] = scale_rate_option,
    k1: Optional[float] = k1_option,
    k2: Optional[float] = k2_option,
    k3: Optional[float] = k3_option,
    costs: Optional[str] = Option(
        None, "--costs", help="misspecified triples, e.g. 9:50:250,10:50:253", callback=cost_list_callback
    ),
    deltas: Optional[str] = Option(
        None, "--deltas", help="shift each coefficient by -d and +d, default 1,2,3", callback=float_list_callback
    ),
    search_mode: Optional[SearchMode] = search_mode_option,
    seed: Optional[int] = seed_option,
    budget: Optional[int] = budget_option,
    threads: Optional[int] = threads_option,
    output_format: Optional[OutputFormat] = format_option,
):
    """relative efficiency of designs optimized under wrong cost coefficients"""
    _invoke(
        Command.SENSITIVITY_COST,
        config,
        n=n,
        m=m,
        shape=shape,
        scale_rate=scale_rate,
        k1=k1,
        k2=k2,
        k3=k3,
        costs=costs,
        deltas=deltas,
        search_mode=search_mode,
        seed=seed,
        budget=budget,
        threads=threads,
        output_format=output_format,
    )


@app.command("optimal-m")
def optimal_m(
    config: Optional[pathlib.Path] = config_option,
    n: Optional[int] = n_option,
    shape: Optional[float] = shape_option,
    scale_rate: Optional[float] = scale_rate_option,
    k1: Optional[float] = k1_option,
    k2: Optional[float] = k2_option,
    k3: Optional[float] = k3_option,
    min_m: Optional[int] = Option(None, "--min-m", help="smallest m searched, default 1"),
    max_m: Optional[int] = Option(None, "--max-m", help="largest m searched, default n"),
    search_mode: Optional[SearchMode] = search_mode_option,
    seed: Optional[int] = seed_option,
    budget: Optional[int] = budget_option,
    threads: Optional[int] = threads_option,
    output_format: Optional[OutputFormat] = format_option,
):
    """joint minimization over the number of failures and the scheme"""
    _invoke(
        Command.OPTIMAL_M,
        config,
        n=n,
        shape=shape,
        scale_rate=scale_rate,
        k1=k1,
        k2=k2,
        k3=k3,
        min_m=min_m,
        max_m=max_m,
        search_mode=search_mode,
        seed=seed,
        budget=budget,
        threads=threads,
        output_format=output_format,
    )


@app.command("compare")
def compare(
    config: Optional[pathlib.Path] = config_option,
    n: Optional[int] = n_option,
    m: Optional[int] = m_option,
    shape: Optional[float] = shape_option,
    scale_rate: Optional[float] = scale_rate_option,
    k1: Optional[float] = k1_option,
    k2: Optional[float] = k2_option,
    k3: Optional[float] = k3_option,
    seed: Optional[int] = seed_option,
    budget: Optional[int] = budget_option,
    threads: Optional[int] = threads_option,
    max_iters: Optional[int] = max_iters_option,
    output_format: Optional[OutputFormat] = format_option,
):
    """GA, descent baseline and (within budget) exhaustive search on one instance"""
    _invoke(
        Command.COMPARE,
        config,
        n=n,
        m=m,
        shape=shape,
        scale_rate=scale_rate,
        k1=k1,
        k2=k2,
        k3=k3,
        seed=seed,
        budget=budget,
        threads=threads,
        max_iters=max_iters,
        output_format=output_format,
    )


@app.command("simulate")
def simulate(
    config: Optional[pathlib.Path] = config_option,
    n: Optional[int] = n_option,
    m: Optional[int] = m_option,
    shape: Optional[float] = shape_option,
    scale_rate: Optional[float] = scale_rate_option,
    scheme: Optional[str] = scheme_option,
    replications: Optional[int] = Option(None, "--replications", help="simulated experiments, at least 1000"),
    seed: Optional[int] = seed_option,
    threads: Optional[int] = threads_option,
    output_format: Optional[OutputFormat] = format_option,
):
    """Monte Carlo check of the expected test duration"""
    _invoke(
        Command.SIMULATE,
        config,
        n=n,
        m=m,
        shape=shape,
        scale_rate=scale_rate,
        scheme=scheme,
        replications=replications,
        seed=seed,
        threads=threads,
        output_format=output_format,
    )


@app.callback()
def main(
    version: Optional[bool] = Option(None, "--version", callback=version_callback, is_eager=True),
    verbose: bool = Option(False, "--verbose", "-v", help="debug logging on stderr"),
):
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")
