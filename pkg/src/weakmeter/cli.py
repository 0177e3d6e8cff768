"""Command-line interface.

Usage:
    weakmeter dist --pre-ratio 1 --post-ratio 1 --deltaf 3 --out fig2.csv
    weakmeter sweep --out fig3.csv
    weakmeter weak --pre-ratio 1 --post-ratio -0.98019801980198
    weakmeter cat --x 0 --y 1
    weakmeter coin --alpha 0.5 --delta 0.99 --lambda 0.0098
    weakmeter sample --pre-ratio 1 --post-ratio 0.5 --deltaf 2 --n 100000 --dump readings.csv
"""

from __future__ import annotations

import csv
import functools
import io
import json
import sys

import click
import numpy as np

from . import catsmile, coin, limits, montecarlo, pointer
from .core import DichotomicObservable, Transition, TwoLevelState, parse_complex, path_amplitudes, state_from_ratio
from .errors import SingularTarget, WeakMeterError

DEFAULT_TARGETS = tuple(z for z in range(-20, 21) if z != -1)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


class WeakMeterGroup(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except WeakMeterError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            ctx.exit(exc.exit_code)


def _resolve_state(label: str, ratio: str | None, amps: tuple[float, ...] | None) -> TwoLevelState:
    if (ratio is None) == (not amps):
        raise click.UsageError(f"give exactly one of --{label}-ratio or --{label}")
    if ratio is not None:
        return state_from_ratio(parse_complex(ratio))
    return TwoLevelState.from_reals(amps)


def transition_options(func):
    @click.option("--pre-ratio", default=None, help="Pre-selected state as ratio c2/c1 (e.g. '0.5-0.5i').")
    @click.option("--post-ratio", default=None, help="Post-selected state as ratio c2/c1.")
    @click.option("--pre", type=float, nargs=4, default=None, help="Pre-selected state as 4 reals: c1.re c1.im c2.re c2.im.")
    @click.option("--post", type=float, nargs=4, default=None, help="Post-selected state as 4 reals.")
    @click.option("--s1", type=float, default=1.0, show_default=True)
    @click.option("--s2", type=float, default=-1.0, show_default=True)
    @functools.wraps(func)
    def wrapper(pre_ratio, post_ratio, pre, post, s1, s2, **kwargs):
        if s1 <= s2:
            raise click.BadParameter("need s1 > s2", param_hint="--s1/--s2")
        t = Transition(_resolve_state("pre", pre_ratio, pre), _resolve_state("post", post_ratio, post))
        return func(t=t, obs=DichotomicObservable(s1, s2), **kwargs)

    return wrapper


def out_option(func):
    return click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file (default stdout).")(func)


def seed_option(func):
    return click.option(
        "--seed", type=int, envvar="WEAKMETER_SEED", default=0, show_default=True,
        help="RNG seed; falls back to $WEAKMETER_SEED.",
    )(func)


def _positive(ctx, param, value):
    if value is not None and not value > 0:
        raise click.BadParameter("must be positive")
    return value


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2) + "\n", out)


def _csv_text(header: list[str], columns: list[np.ndarray]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in zip(*columns):
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _grid_for(obs, p, grid_points, f_min, f_max):
    if f_min is None and f_max is None:
        return pointer.default_grid(obs, p, grid_points)
    default = pointer.default_grid(obs, p, grid_points)
    return pointer.Grid(
        default.f_min if f_min is None else f_min,
        default.f_max if f_max is None else f_max,
        default.n_points,
    )


@click.group(cls=WeakMeterGroup)
@click.version_option(package_name="artifact")
def cli():
    """Von Neumann pointer measurements on pre- and post-selected two-level systems."""


@cli.command()
@transition_options
@click.option("--deltaf", type=float, required=True, callback=_positive, help="Pointer width.")
@click.option("--grid-points", type=int, default=None, help="Odd grid size (default 4001, more for narrow pointers).")
@click.option("--f-min", type=float, default=None)
@click.option("--f-max", type=float, default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@out_option
def dist(t, obs, deltaf, grid_points, f_min, f_max, fmt, out):
    """Reading density P(f) and its three route contributions."""
    p = pointer.GaussianPointer(deltaf)
    g = _grid_for(obs, p, grid_points, f_min, f_max)
    d = pointer.reading_distribution(t, obs, p, g)
    b1sq, b2sq, inter = pointer.distribution_components(t, obs, p, g)
    if fmt == "json":
        _emit_json({
            "f": d.f.tolist(), "P": d.values.tolist(), "B1sq": b1sq.tolist(),
            "B2sq": b2sq.tolist(), "interference": inter.tolist(), "norm": d.norm, "delta_f": deltaf,
        }, out)
    else:
        _emit(_csv_text(["f", "P", "B1sq", "B2sq", "interference"], [d.f, d.values, b1sq, b2sq, inter]), out)


@cli.command()
@transition_options
@click.option("--deltaf", type=float, required=True, callback=_positive)
@click.option("--method", type=click.Choice(["closed", "numeric", "both"]), default="closed", show_default=True)
@click.option("--grid-points", type=int, default=None)
@out_option
def mean(t, obs, deltaf, method, grid_points, out):
    """Mean pointer reading over post-selected runs."""
    p = pointer.GaussianPointer(deltaf)
    result = {"delta_f": deltaf}
    if method in ("closed", "both"):
        result["mean"] = pointer.mean_reading_closed(t, obs, p)
        result["norm"] = pointer.post_selection_norm(t, obs, p)
    if method in ("numeric", "both"):
        g = pointer.default_grid(obs, p, grid_points)
        d = pointer.reading_distribution(t, obs, p, g)
        key = "mean" if method == "numeric" else "mean_numeric"
        result[key] = pointer.mean_reading_numeric(t, obs, p, g)
        result["norm" if method == "numeric" else "norm_numeric"] = d.norm
    _emit_json(result, out)


def _parse_targets(ctx, param, value):
    if value is None:
        return DEFAULT_TARGETS
    try:
        return tuple(float(v) for v in value.split(","))
    except ValueError:
        raise click.BadParameter("comma-separated numbers expected") from None


def sweep_table(targets, deltafs, obs=limits.SIGMA_Z):
    """Mean reading vs pointer width for post-states tuned to each weak-value target."""
    pre = state_from_ratio(1.0)
    columns = []
    for z in targets:
        if z == -1:
            raise SingularTarget("target -1 cannot be reached")
        post = state_from_ratio(limits.ratio_product_for_target(z))
        t = Transition(pre, post)
        columns.append(np.array([pointer.mean_reading_closed(t, obs, pointer.GaussianPointer(d)) for d in deltafs]))
    return columns


@cli.command()
@click.option("--targets", default=None, callback=_parse_targets, help="Comma-separated weak-value targets (default -20..20 without -1).")
@click.option("--deltaf-min", type=float, default=0.01, show_default=True, callback=_positive)
@click.option("--deltaf-max", type=float, default=1000.0, show_default=True, callback=_positive)
@click.option("--n-deltaf", type=int, default=61, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@out_option
def sweep(targets, deltaf_min, deltaf_max, n_deltaf, fmt, out):
    """Strong-to-weak crossover curves, one column per target weak value."""
    if not deltaf_min < deltaf_max or n_deltaf < 2:
        raise click.BadParameter("need deltaf-min < deltaf-max and n-deltaf >= 2")
    deltafs = np.geomspace(deltaf_min, deltaf_max, n_deltaf)
    columns = sweep_table(targets, deltafs)
    names = [f"Z={z:g}" for z in targets]
    if fmt == "json":
        _emit_json({"delta_f": deltafs.tolist(), **{n: c.tolist() for n, c in zip(names, columns)}}, out)
    else:
        _emit(_csv_text(["delta_f", *names], [deltafs, *columns]), out)


@cli.command()
@transition_options
@out_option
def weak(t, obs, out):
    """Complex weak value and its signed weights."""
    wv = limits.weak_value(path_amplitudes(t, obs), obs)
    _emit_json(wv.to_dict(), out)


@cli.command()
@transition_options
@out_option
def strong(t, obs, out):
    """Strong-limit mean with its non-negative weights."""
    _emit_json(limits.strong_weights(path_amplitudes(t, obs), obs).to_dict(), out)


@cli.command()
@click.option("--x", "x", type=float, required=True, help="Target left-side spin weak value.")
@click.option("--y", "y", type=float, required=True, help="Target right-side spin weak value.")
@out_option
def cat(x, y, out):
    """States placing the location on the left and spin weak values X (left), Y (right)."""
    pre, post = catsmile.construct_states(catsmile.SmileTargets(x, y))
    wv = catsmile.local_weak_values(catsmile.route_amplitudes(pre, post))
    _emit_json({"pre": pre.to_reals(), "post": post.to_reals(), "weak_values": wv.to_dict()}, out)


@cli.command("coin")
@click.option("--alpha", type=click.FloatRange(0, 1), required=True, help="Outbound flip probability.")
@click.option("--delta", type=click.FloatRange(0, 1), required=True, help="One minus the return flip probability.")
@click.option("--trials", type=click.IntRange(min=1), default=1_000_000, show_default=True)
@click.option("--lambda", "lam", type=float, default=1.0, show_default=True, help="Recalibration divisor.")
@seed_option
@out_option
def coin_cmd(alpha, delta, trials, lam, seed, out):
    """Classical coin protocol: analytic and simulated post-selected mean."""
    proto = coin.CoinProtocol(alpha, delta)
    p1, p2 = coin.coin_weights(proto)
    stats = coin.coin_simulate(proto, trials, seed)
    recal = coin.recalibrated_average(proto, lam)
    _emit_json({
        "p1": p1, "p2": p2, "mean": p1 - p2,
        "empirical_mean": stats.mean, "kept": stats.kept,
        "lambda": lam, "recalibrated_mean": coin.recalibrated_mean(proto, lam),
        "recalibrated_anomalous": recal.anomalous,
    }, out)


@cli.command()
@transition_options
@click.option("--deltaf", type=float, required=True, callback=_positive)
@click.option("--n", "n_accept", type=click.IntRange(min=1), default=100_000, show_default=True, help="Accepted samples.")
@click.option("--noise", type=click.Choice(["gaussian", "uniform"]), default=None, help="Classical offset profile.")
@click.option("--noise-width", type=float, default=None, callback=_positive)
@click.option("--dump", type=click.Path(dir_okay=False), default=None, help="Write accepted readings as a one-column CSV.")
@seed_option
@out_option
def sample(t, obs, deltaf, n_accept, noise, noise_width, dump, seed, out):
    """Monte Carlo run of the three-step protocol."""
    p = pointer.GaussianPointer(deltaf)
    if noise is None:
        run = montecarlo.sample_readings(t, obs, p, n_accept, seed)
    else:
        if noise_width is None:
            raise click.UsageError("--noise needs --noise-width")
        run = montecarlo.sample_with_noise(t, obs, p, pointer.ClassicalNoise(noise, noise_width), n_accept, seed)
    if dump is not None:
        _emit(_csv_text(["f"], [run.readings]), dump)
    _emit_json({
        "empirical_mean": run.empirical_mean,
        "standard_error": run.standard_error,
        "mean_closed": pointer.mean_reading_closed(t, obs, p),
        "accepted": run.accepted,
        "attempted": run.attempted,
        "acceptance_rate": run.acceptance_rate,
        "post_selection_probability": pointer.post_selection_norm(t, obs, p),
        "seed": seed,
    }, out)


def main(argv=None):
    cli.main(args=argv, prog_name="weakmeter")


if __name__ == "__main__":
    main(sys.argv[1:])
