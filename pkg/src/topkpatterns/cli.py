"""Command-line surface: generate graphs, mine, run the exact oracle, bench."""

from __future__ import annotations

import functools
import json
import sys

import click

from . import graph as graphmod
from . import miner as minermod
from . import oracle as oraclemod
from .errors import CapacityError, ContractError, MiningError, ParameterError
from .pattern import interestingness

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3


def _exit_codes(fn):
    """Map error classes onto the documented exit codes."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CapacityError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_CAPACITY)
        except (FileNotFoundError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except (ParameterError, ContractError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except MiningError as exc:
            name = type(exc).__name__
            code = EXIT_INPUT if "Parse" in name or "Validation" in name else EXIT_INTERNAL
            click.echo(f"error: {exc}", err=True)
            sys.exit(code)
    return wrapper


@click.group()
def main():
    """Approximate top-k frequent pattern mining on one labeled graph."""


@main.command()
@click.option("--nodes", type=int, required=True)
@click.option("--edges", type=int, required=True)
@click.option("--labels", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_exit_codes
def gen(nodes, edges, labels, seed, out):
    """Generate a connected preferential-attachment graph as .lg."""
    G = graphmod.generate_preferential(nodes, edges, labels, seed)
    graphmod.write_lg(G, out)
    click.echo(f"wrote {out}: {G.node_count} nodes, {G.edge_count} edges")


@main.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False),
              required=True)
@click.option("--theta", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--m", type=int, default=2, show_default=True)
@click.option("--seed", type=int, default=None, help="Seed for --shuffle-candidates.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--trace", is_flag=True, help="Log every verified candidate to stderr.")
@click.option("--single-backward", is_flag=True,
              help="One cycle-closing round per tree pattern instead of full closure.")
@click.option("--shuffle-candidates", is_flag=True,
              help="Randomize traversal candidate order (seeded).")
@click.option("--timing", is_flag=True,
              help="Include real wall time in the output (breaks byte reproducibility).")
@click.option("--max-nodes", type=int, default=12, show_default=True,
              help="Largest pattern size to grow (match the oracle's cap of 8 "
                   "when comparing).")
@click.option("--threads", type=int, default=1, envvar="MINER_THREADS",
              show_default=True,
              help="Reserved; all values currently run the sequential reference path.")
@_exit_codes
def mine(graph_path, theta, k, m, seed, out, trace, single_backward,
         shuffle_candidates, timing, max_nodes, threads):
    """Mine the approximate top-k patterns; writes a result JSON."""
    _require_positive(theta=theta, k=k, m=m, max_nodes=max_nodes)
    G = graphmod.load_lg(graph_path)

    observer = None
    if trace:
        def observer(pattern, support, domain):
            click.echo(f"trace: candidate {pattern.canonical_code().hex()} "
                       f"support={support}", err=True)

    result = minermod.mine_topk(
        G, theta, k, m, rng_seed=seed, node_limit=max_nodes,
        single_backward=single_backward,
        shuffle_candidates=shuffle_candidates, observer=observer)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(result.to_json(include_timing=timing))
    click.echo(f"wrote {out}: {len(result.patterns)} patterns, "
               f"termination={result.stats['termination']}")


@main.command("oracle")
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False),
              required=True)
@click.option("--theta", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--compare", type=click.Path(exists=True, dir_okay=False), default=None,
              help="A prior mine output JSON to score against the exact result.")
@click.option("--step-cap", type=int, default=oraclemod.DEFAULT_STEP_CAP,
              show_default=True, help="Abort exhaustive search past this many steps.")
@_exit_codes
def oracle_cmd(graph_path, theta, k, out, compare, step_cap):
    """Exact exhaustive mining (desk scale); optionally score a mine run."""
    _require_positive(theta=theta, k=k)
    G = graphmod.load_lg(graph_path)
    exact = oraclemod.exact_topk(G, theta, k, step_cap=step_cap)
    doc = {
        "mode": "exact",
        "params": exact.params,
        "patterns": [exact.pattern_json(G.label_names, p, s) for p, s in exact.topk],
        "frequent_count": len(exact.frequent),
    }
    if compare:
        with open(compare, "r", encoding="utf-8") as fh:
            mined = json.load(fh)
        doc["recall"] = _score_against(mined, exact)
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        click.echo(f"wrote {out}")
    else:
        click.echo(text, nl=False)


def _score_against(mined: dict, exact: "oraclemod.ExactResult") -> dict:
    params = mined.get("params", {})
    if params.get("theta") != exact.params["theta"] or params.get("k") != exact.params["k"]:
        raise ContractError(
            f"compare file was mined with {params}, oracle ran with {exact.params}")
    exact_codes = {p.canonical_code().hex() for p, _ in exact.frequent}
    approx = mined.get("patterns", [])
    if approx:
        set_recall = sum(p["code"] in exact_codes for p in approx) / len(approx)
    else:
        set_recall = 1.0 if not exact.frequent else 0.0
    approx_sum = sum(p["interestingness"] for p in approx)
    exact_sum = sum(interestingness(p) for p, _ in exact.topk)
    itrs_ratio = approx_sum / exact_sum if exact_sum else 1.0
    return {"set_recall": set_recall, "itrs_ratio": itrs_ratio}


BENCH_HEADER = ("value,wall_ms_approx,wall_ms_oracle,frqchk_calls,"
                "domain_entries_peak,itrs_ratio,set_recall")


@main.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Input graph (theta/k/m sweeps).")
@click.option("--sweep", type=click.Choice(["theta", "k", "m", "size"]), required=True)
@click.option("--values", required=True, help="Comma-separated sweep values.")
@click.option("--theta", type=int, default=2, show_default=True)
@click.option("--k", type=int, default=10, show_default=True)
@click.option("--m", type=int, default=2, show_default=True)
@click.option("--labels", type=int, default=5, show_default=True,
              help="Label count for size-sweep graph generation.")
@click.option("--edge-factor", type=float, default=3.0, show_default=True,
              help="Edges per node for size-sweep graph generation.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-nodes", type=int, default=8, show_default=True,
              help="Pattern-size cap shared by the miner and the oracle rows.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_exit_codes
def bench(graph_path, sweep, values, theta, k, m, labels, edge_factor, seed,
          max_nodes, out):
    """Sweep exactly one of theta, k, m, or graph size; writes a CSV."""
    points = [int(v) for v in values.split(",")]
    if sweep != "size" and graph_path is None:
        raise ParameterError("--graph is required unless sweeping size")
    base_graph = graphmod.load_lg(graph_path) if graph_path else None

    rows = [BENCH_HEADER]
    for value in points:
        t, kk, mm = theta, k, m
        if sweep == "theta":
            t = value
        elif sweep == "k":
            kk = value
        elif sweep == "m":
            mm = value
        if sweep == "size":
            G = graphmod.generate_preferential(value, int(value * edge_factor),
                                               labels, seed)
        else:
            G = base_graph
        _require_positive(theta=t, k=kk, m=mm, max_nodes=max_nodes)
        result = minermod.mine_topk(G, t, kk, mm, node_limit=max_nodes)
        wall_oracle = ""
        itrs_ratio = ""
        set_recall = ""
        try:
            import time
            t0 = time.perf_counter()
            exact = oraclemod.exact_topk(
                G, t, kk, max_nodes=min(max_nodes, oraclemod.MAX_PATTERN_NODES))
            wall_oracle = str(int((time.perf_counter() - t0) * 1000))
            sr, ir = oraclemod.recall_metrics(result, exact)
            itrs_ratio = f"{ir:.4f}"
            set_recall = f"{sr:.4f}"
        except CapacityError:
            pass
        stats = result.stats
        rows.append(f"{value},{stats['wall_ms']},{wall_oracle},"
                    f"{stats['frqchk_calls']},{stats['domain_entries_peak']},"
                    f"{itrs_ratio},{set_recall}")

    with open(out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows) + "\n")
    click.echo(f"wrote {out}: {len(points)} rows")


def _require_positive(**params):
    for name, value in params.items():
        if value is None or value < 1:
            raise ParameterError(f"{name} must be >= 1, got {value}")


if __name__ == "__main__":
    main()
