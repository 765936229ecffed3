"""Command-line interface: samplers, evaluators, verifiers, experiments.

Every stochastic command requires an explicit --seed; all randomness is
derived from it through counter-based substreams keyed by command and
replication index, so identical invocations produce byte-identical output
files and the worker count never changes the numbers.

Exit codes: 0 success, 1 verdict failure (an inequality violated beyond its
allowance, or a sampler giving up), 2 usage or input error.
"""

from __future__ import annotations

import csv
import json
import os
import sys
from pathlib import Path

import click

from . import interpolation as itp
from . import limits as lim
from . import seeding
from .config_model import (
    Bipartition,
    HalfEdgeSystem,
    PairingCounts,
    RejectionLimitError,
    sample_simple,
    sample_uniform_graph,
)
from .degree import DegreeDistribution, DegreeSequence, sample_iid, wasserstein
from .graphs import Multigraph, certify_parameter, parameter_from_name


def _fail_usage(message: str):
    raise click.UsageError(message)


def _parse_mu(text: str) -> DegreeDistribution:
    try:
        if text.lstrip().startswith("{"):
            return DegreeDistribution.from_json(text)
        return DegreeDistribution.from_json(Path(text).read_text())
    except (ValueError, OSError) as err:
        _fail_usage(f"bad degree distribution: {err}")


def _parse_degrees(text: str) -> tuple:
    try:
        parts = text.replace(",", " ").split()
        return DegreeSequence(tuple(int(p) for p in parts)).degrees
    except ValueError as err:
        _fail_usage(f"bad degree sequence: {err}")


def _parse_vertices(text: str) -> frozenset:
    if not text.strip():
        return frozenset()
    try:
        return frozenset(int(p) for p in text.replace(",", " ").split())
    except ValueError as err:
        _fail_usage(f"bad vertex list: {err}")


def _resolve_param(name: str, beta, q):
    try:
        return parameter_from_name(name, beta, q)
    except ValueError as err:
        _fail_usage(str(err))


def _write_csv(path: str, header: str, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header.split(","))
        for row in rows:
            writer.writerow(row)


def _write_json(path: str, payload):
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _emit_reports(output, fmt, header, reports):
    if output is None:
        return
    if fmt == "json":
        _write_json(output, [r.to_json_dict() for r in reports])
    else:
        _write_csv(output, header, [r.csv_row() for r in reports])


param_option = click.option("--param", required=True,
                            help="independence | maxcut | neg-components | "
                                 "pos-components | ising | potts")
beta_option = click.option("--beta", type=float, default=None,
                           help="interaction strength for ising/potts")
q_option = click.option("--q", type=int, default=None,
                        help="spin states for potts")
seed_option = click.option("--seed", type=int, required=True,
                           help="base seed; mandatory for stochastic commands")
workers_option = click.option("--workers", type=int,
                              default=lambda: os.cpu_count() or 1,
                              help="worker processes (results do not depend on this)")
output_option = click.option("--output", type=click.Path(), default=None,
                             help="write the full report here")
format_option = click.option("--format", "fmt",
                             type=click.Choice(["csv", "json"]), default="csv")


@click.group()
def main():
    """Prescribed-degree random graphs, graph parameters, and limit checks."""


@main.command()
@click.option("--degrees", default=None, help="comma-separated degree sequence")
@click.option("--mu", "mu_text", default=None, help="degree distribution (JSON or file)")
@click.option("--n", type=int, default=None, help="size when sampling degrees from --mu")
@click.option("--simple", is_flag=True, help="rejection-sample until simple")
@click.option("--max-tries", type=int, default=10_000)
@seed_option
@output_option
def sample(degrees, mu_text, n, simple, max_tries, seed, output):
    """Sample one prescribed-degree multigraph and write it as text."""
    rng = seeding.stream(seed, "sample")
    if degrees is not None:
        d = _parse_degrees(degrees)
    elif mu_text is not None and n is not None:
        d = sample_iid(_parse_mu(mu_text), n, rng).degrees
    else:
        _fail_usage("provide --degrees, or --mu with --n")
    try:
        g = sample_simple(d, rng, max_tries) if simple else sample_uniform_graph(d, rng)
    except RejectionLimitError as err:
        click.echo(f"sample: {err}", err=True)
        sys.exit(1)
    text = g.to_text()
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)
    click.echo(f"sample: n={g.n} edges={g.num_edges} seed={seed}", err=True)


@main.command("eval")
@param_option
@beta_option
@q_option
@click.option("--graph", "graph_path", required=True, type=click.Path())
def eval_command(param, beta, q, graph_path):
    """Evaluate a parameter on a graph file (text format: 'n m' then edges)."""
    f = _resolve_param(param, beta, q)
    try:
        g = Multigraph.from_text(Path(graph_path).read_text())
    except (ValueError, OSError) as err:
        _fail_usage(f"bad graph file: {err}")
    value = f.evaluate(g)
    click.echo(f"{value:g}" if isinstance(value, float) else str(value))


@main.command()
@param_option
@beta_option
@q_option
@click.option("--samples", type=int, default=200)
@click.option("--max-n", type=int, default=6)
@click.option("--max-edges", type=int, default=None)
@seed_option
@output_option
def certify(param, beta, q, samples, max_n, max_edges, seed, output):
    """Check additivity, the edge bound, and increment concavity on random
    multigraphs."""
    f = _resolve_param(param, beta, q)
    rng = seeding.stream(seed, "certify")
    report = certify_parameter(f, samples, max_n, rng, max_edges)
    if output:
        Path(output).write_text(report.to_json() + "\n")
    status = "PASS" if report.all_passed else "FAIL"
    click.echo(f"certify: {f.name} additive={report.additive.passed} "
               f"lipschitz={report.lipschitz.passed} concave={report.concave.passed} "
               f"[{status}]")
    if not report.all_passed:
        sys.exit(1)


@main.command("wasserstein")
@click.option("--mu", "mu_text", required=True)
@click.option("--mu2", "mu2_text", required=True)
def wasserstein_command(mu_text, mu2_text):
    """Transport distance between two degree distributions."""
    dist = wasserstein(_parse_mu(mu_text), _parse_mu(mu2_text))
    click.echo(repr(float(dist)))


@main.command("interp-verify")
@click.option("--sweep", is_flag=True, help="verify every inequality on all small instances")
@click.option("--max-total-degree", type=int, default=8)
@click.option("--max-vertices", type=int, default=4)
@click.option("--param", "params", multiple=True,
              default=("independence", "maxcut", "neg-components"))
@beta_option
@q_option
@click.option("--degrees", default=None, help="single-instance degree sequence")
@click.option("--side-a", default=None, help="comma-separated vertices of side A")
@click.option("--check", "check_name",
              type=click.Choice(["lipschitz", "local", "global", "main"]),
              default=None)
@click.option("--alpha", type=int, default=0)
@click.option("--beta-count", type=int, default=0,
              help="beta coordinate of the count triple")
@click.option("--gamma", type=int, default=0)
@click.option("--alpha2", type=int, default=None)
@click.option("--beta2", type=int, default=None)
@click.option("--gamma2", type=int, default=None)
@click.option("--delta", type=int, default=2)
@click.option("--mode", type=click.Choice(["exact", "mc"]), default="exact")
@click.option("--reps", type=int, default=2000)
@click.option("--phi-factor", type=float, default=itp.PENALTY_FACTOR, hidden=True)
@seed_option
@workers_option
@output_option
@format_option
def interp_verify(sweep, max_total_degree, max_vertices, params, beta, q,
                  degrees, side_a, check_name, alpha, beta_count, gamma,
                  alpha2, beta2, gamma2, delta, mode, reps, phi_factor, seed,
                  workers, output, fmt):
    """Verify interpolation inequalities, exhaustively or on one instance."""
    resolved = [_resolve_param(p, beta, q) for p in params]
    rng = seeding.stream(seed, "interp-verify")
    records = []

    if sweep:
        summary = itp.run_sweep(resolved, max_total_degree, max_vertices,
                                penalty_factor=phi_factor,
                                on_record=records.append if output else None)
        _emit_reports(output, fmt, itp.VerifyResult.CSV_HEADER, records)
        click.echo(f"interp-verify: {summary.total_checked} inequalities on "
                   f"{summary.instances} instances, "
                   f"{len(summary.violations)} violations")
        if not summary.all_hold:
            sys.exit(1)
        return

    if degrees is None or side_a is None or check_name is None:
        _fail_usage("single-instance mode needs --degrees, --side-a, --check")
    d = _parse_degrees(degrees)
    sys_ = HalfEdgeSystem(d)
    bp = Bipartition.of(sys_.n, _parse_vertices(side_a))
    f = resolved[0]
    counts = PairingCounts(alpha, beta_count, gamma)
    try:
        if check_name == "lipschitz":
            if alpha2 is None or beta2 is None or gamma2 is None:
                _fail_usage("lipschitz needs --alpha2/--beta2/--gamma2")
            inst = itp.InterpolationInstance(sys_, bp, f)
            result = itp.verify_lipschitz(inst, counts,
                                          PairingCounts(alpha2, beta2, gamma2))
        elif check_name == "local":
            inst = itp.InterpolationInstance(sys_, bp, f)
            result = itp.verify_local_superadd(inst, counts, delta)
        elif check_name == "global":
            inst = itp.InterpolationInstance(sys_, bp, f)
            result = itp.verify_global(inst, gamma, penalty_factor=phi_factor)
        else:
            result = itp.verify_main(f, d, bp, mode, rng, reps,
                                     penalty_factor=phi_factor, workers=workers)
    except ValueError as err:
        _fail_usage(str(err))
    _emit_reports(output, fmt, itp.VerifyResult.CSV_HEADER, [result])
    click.echo(f"interp-verify: {result.check} lhs={result.lhs:.6g} "
               f"rhs={result.rhs:.6g} verdict={result.verdict}")
    if not result.verdict:
        sys.exit(1)


@main.command()
@param_option
@beta_option
@q_option
@click.option("--mu", "mu_text", required=True)
@click.option("--n", "n_list", type=int, multiple=True, required=True)
@click.option("--reps", type=int, default=50)
@click.option("--mode", type=click.Choice(["fixed", "iid"]), default="iid")
@seed_option
@workers_option
@output_option
@format_option
def psi(param, beta, q, mu_text, n_list, reps, mode, seed, workers, output, fmt):
    """Estimate the per-vertex limit of a parameter under a degree law."""
    f = _resolve_param(param, beta, q)
    mu = _parse_mu(mu_text)
    rng = seeding.stream(seed, "psi")
    est = lim.estimate_psi(f, mu, n_list, reps, rng, mode, workers, seed)
    if output:
        if fmt == "json":
            _write_json(output, {"param": est.parameter, "mu": json.loads(est.mu.to_json()),
                                 "mode": est.mode, "seed": seed,
                                 "rows": [vars(r) for r in est.rows],
                                 "psi_hat": est.value})
        else:
            _write_csv(output, lim.PsiEstimate.CSV_HEADER, est.csv_rows())
    click.echo(f"psi: {f.name} psi_hat={est.value!r} stderr={est.stderr!r} "
               f"(largest n={est.rows[-1].n}, reps={reps})")


@main.command()
@param_option
@beta_option
@q_option
@click.option("--mu", "mu_text", required=True)
@click.option("--mu2", "mu2_text", required=True)
@click.option("--n", type=int, required=True)
@click.option("--reps", type=int, default=50)
@click.option("--mode", type=click.Choice(["fixed", "iid"]), default="iid")
@seed_option
@workers_option
@output_option
@format_option
def concavity(param, beta, q, mu_text, mu2_text, n, reps, mode, seed, workers,
              output, fmt):
    """Check midpoint concavity of the limit in the degree distribution."""
    f = _resolve_param(param, beta, q)
    rng = seeding.stream(seed, "concavity")
    try:
        report = lim.check_midpoint_concavity(f, _parse_mu(mu_text),
                                              _parse_mu(mu2_text), n, reps,
                                              rng, mode, workers, seed)
    except ValueError as err:
        _fail_usage(str(err))
    _emit_reports(output, fmt, lim.InequalityReport.CSV_HEADER, [report])
    click.echo(f"concavity: lhs={report.lhs:.6g} rhs={report.rhs:.6g} "
               f"allowance={report.allowance:.3g} verdict={report.verdict}")
    if not report.verdict:
        sys.exit(1)


@main.command("lipschitz-psi")
@param_option
@beta_option
@q_option
@click.option("--mu", "mu_text", required=True)
@click.option("--mu2", "mu2_text", required=True)
@click.option("--n", type=int, required=True)
@click.option("--reps", type=int, default=50)
@seed_option
@workers_option
@output_option
@format_option
def lipschitz_psi(param, beta, q, mu_text, mu2_text, n, reps, seed, workers,
                  output, fmt):
    """Check the transport-Lipschitz bound on limit estimates."""
    f = _resolve_param(param, beta, q)
    rng = seeding.stream(seed, "lipschitz-psi")
    report = lim.check_lipschitz_psi(f, _parse_mu(mu_text), _parse_mu(mu2_text),
                                     n, reps, rng, workers, seed)
    _emit_reports(output, fmt, lim.InequalityReport.CSV_HEADER, [report])
    click.echo(f"lipschitz-psi: lhs={report.lhs:.6g} rhs={report.rhs:.6g} "
               f"allowance={report.allowance:.3g} verdict={report.verdict}")
    if not report.verdict:
        sys.exit(1)


@main.command()
@param_option
@beta_option
@q_option
@click.option("--degrees", default=None)
@click.option("--constant-degree", type=int, default=None)
@click.option("--n", type=int, default=None, help="size for --constant-degree")
@click.option("--reps", type=int, default=2000)
@click.option("--eps", default="10,20,40,80", help="comma-separated grid")
@seed_option
@workers_option
@output_option
@format_option
def concentration(param, beta, q, degrees, constant_degree, n, reps, eps,
                  seed, workers, output, fmt):
    """Empirical tails of f(G_d) against the concentration bound."""
    f = _resolve_param(param, beta, q)
    if degrees is not None:
        d = _parse_degrees(degrees)
    elif constant_degree is not None and n is not None:
        d = (constant_degree,) * n
    else:
        _fail_usage("provide --degrees, or --constant-degree with --n")
    try:
        eps_grid = [float(x) for x in eps.replace(",", " ").split()]
    except ValueError as err:
        _fail_usage(f"bad eps grid: {err}")
    rng = seeding.stream(seed, "concentration")
    report = lim.check_concentration(f, d, reps, eps_grid, rng, workers, seed)
    if output:
        if fmt == "json":
            _write_json(output, {"param": report.parameter, "reps": reps,
                                 "total_degree": report.total_degree,
                                 "seed": seed,
                                 "rows": [vars(r) for r in report.rows]})
        else:
            _write_csv(output, lim.ConcentrationReport.CSV_HEADER,
                       report.csv_rows())
    worst = min(r.bound + lim.TAIL_SIGMAS * r.sigma - r.frequency
                for r in report.rows)
    click.echo(f"concentration: {len(report.rows)} grid points, "
               f"min margin {worst:.4g}, all_hold={report.all_hold}")
    if not report.all_hold:
        sys.exit(1)


@main.command()
@param_option
@beta_option
@q_option
@click.option("--degrees", required=True)
@click.option("--degrees2", required=True)
@click.option("--reps", type=int, default=50)
@seed_option
@workers_option
@output_option
@format_option
def compare(param, beta, q, degrees, degrees2, reps, seed, workers, output, fmt):
    """Compare normalized expectations of two degree sequences against the
    transport bound."""
    f = _resolve_param(param, beta, q)
    rng = seeding.stream(seed, "compare")
    try:
        report = lim.compare_expectations(f, _parse_degrees(degrees),
                                          _parse_degrees(degrees2), reps, rng,
                                          workers, seed)
    except ValueError as err:
        _fail_usage(str(err))
    _emit_reports(output, fmt, lim.InequalityReport.CSV_HEADER, [report])
    click.echo(f"compare: lhs={report.lhs:.6g} rhs={report.rhs:.6g} "
               f"allowance={report.allowance:.3g} verdict={report.verdict}")
    if not report.verdict:
        sys.exit(1)


@main.command()
@click.option("--gamma", type=int, required=True)
@click.option("--delta", type=int, required=True)
@click.option("--runs", type=int, default=100_000)
@seed_option
@output_option
@format_option
def walk(gamma, delta, runs, seed, output, fmt):
    """Corridor-exit frequency of the +-1 walk vs the maximal-inequality
    bound."""
    rng = seeding.stream(seed, "walk")
    try:
        report = itp.check_corridor_exit(gamma, delta, runs, rng)
    except ValueError as err:
        _fail_usage(str(err))
    if output:
        if fmt == "json":
            _write_json(output, report.to_json_dict())
        else:
            _write_csv(output, itp.CorridorExitReport.CSV_HEADER,
                       [report.csv_row()])
    click.echo(f"walk: frequency={report.frequency!r} bound={report.bound!r} "
               f"verdict={report.verdict}")
    if not report.verdict:
        sys.exit(1)


if __name__ == "__main__":
    main()
