"""Scaling measurements for the decision procedure.

Provides a parametric family of ontologies (a role chain of growing length
plus a collapse axiom that makes the chain's endpoints connect), timing
helpers, a log-log slope fit to estimate the empirical exponent, and
writers for a delimited results file and a rendered figure.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from typing import Sequence

from .concepts import Atom, Axiom, Exists, Ontology, Var, gci, ontology
from .entailment import Status, decide


@dataclass(frozen=True)
class BenchPoint:
    size: int
    seconds: float


def chain_family(n: int) -> tuple[Ontology, Axiom]:
    """An ontology with an n-step role chain and its end-to-end goal.

    The goal holds at expansion level one: the collapse axiom
    ``exists r.exists r.X SubClassOf exists r.X`` shortens the chain one
    link at a time once the chain's members enter the base.
    """
    if n < 1:
        raise ValueError("chain length must be at least 1")
    axioms = [
        gci(Atom(f"A{i}"), Exists("r", Atom(f"A{i + 1}"))) for i in range(n)
    ]
    axioms.append(
        gci(Exists("r", Exists("r", Var("X"))), Exists("r", Var("X")))
    )
    goal = gci(Atom("A0"), Exists("r", Atom(f"A{n}")))
    return ontology(axioms), goal


def measure(n: int, repeats: int = 3) -> BenchPoint:
    """Best-of-``repeats`` wall time for deciding the size-n chain goal."""
    kb, goal = chain_family(n)
    best = math.inf
    for _ in range(max(1, repeats)):
        start = time.perf_counter()
        verdict = decide(kb, goal)
        elapsed = time.perf_counter() - start
        if verdict.status is not Status.ENTAILED:
            raise AssertionError(
                f"chain family of size {n} unexpectedly not entailed"
            )
        best = min(best, elapsed)
    return BenchPoint(size=n, seconds=best)


def run_scaling(
    sizes: Sequence[int], repeats: int = 3
) -> list[BenchPoint]:
    return [measure(n, repeats) for n in sizes]


def fit_loglog_slope(points: Sequence[BenchPoint]) -> float:
    """Least-squares slope of log(time) against log(size)."""
    import numpy as np

    if len(points) < 2:
        raise ValueError("need at least two points to fit a slope")
    xs = np.log([p.size for p in points])
    ys = np.log([max(p.seconds, 1e-9) for p in points])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def write_csv(points: Sequence[BenchPoint], path: str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["size", "seconds"])
        for p in points:
            writer.writerow([p.size, f"{p.seconds:.6f}"])


def write_figure(points: Sequence[BenchPoint], path: str) -> None:
    """Render the scaling curve on log-log axes to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [p.size for p in points]
    ys = [p.seconds for p in points]
    ax.loglog(xs, ys, marker="o")
    ax.set_xlabel("chain length")
    ax.set_ylabel("seconds (best of repeats)")
    ax.set_title("entailment decision time vs. ontology size")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
