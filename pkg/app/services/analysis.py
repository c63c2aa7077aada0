import logging
import math
from pathlib import Path
from typing import List, Mapping, Sequence

import numpy as np
import pandas as pd

from app.core.errors import InsufficientDataError
from app.models.graph import RankedTerms
from app.models.network import Nnht
from app.models.schemas.analysis import DegreeDistribution, PowerLawFit, SweepPoint
from app.services.nnht import build_nnht, select_top

logger = logging.getLogger(__name__)

FIT_METHODS = ("loglog_ls", "mle")
MIN_BINS = 3


def out_degree_distribution(net: Nnht) -> DegreeDistribution:
    """Histogram of out-degrees over all nodes, zero included."""
    return DegreeDistribution.from_degrees(net.out_degrees())


def _normalize_method(method: str) -> str:
    if method == "loglog":
        return "loglog_ls"
    if method not in FIT_METHODS:
        raise ValueError(f"unknown fit method: {method}")
    return method


def fit_power_law(dist: DegreeDistribution, k_min: int = 1, method: str = "loglog_ls") -> PowerLawFit:
    """
    Fit p(k) = c * k^(-alpha) to a degree distribution.

    ``loglog_ls`` regresses log2 p(k) on log2 k over the non-empty bins with
    k >= k_min. ``mle`` uses the continuous approximation
    ``alpha = 1 + m / sum(ln(k_i / (k_min - 0.5)))`` over the m node degrees
    >= k_min.

    Args:
        dist: Degree histogram
        k_min: Smallest degree to fit (at least 1)
        method: ``loglog_ls`` (or ``loglog``) or ``mle``

    Returns:
        PowerLawFit: Exponent magnitude, prefactor and diagnostics
    """
    method = _normalize_method(method)
    if k_min < 1:
        raise ValueError("k_min must be >= 1")

    bins = sorted((k, c) for k, c in dist.counts.items() if k >= k_min and k > 0 and c > 0)
    if len(bins) < MIN_BINS:
        raise InsufficientDataError(
            f"insufficient data: {len(bins)} non-empty degree bin(s) with k >= {k_min}, need {MIN_BINS}",
            stage="analyze",
        )

    ks = np.array([k for k, _ in bins], dtype=float)
    cs = np.array([c for _, c in bins], dtype=float)
    nodes_used = int(cs.sum())

    if method == "loglog_ls":
        x = np.log2(ks)
        y = np.log2(cs / dist.total_nodes)
        (slope, intercept), residuals, _, _, _ = np.polyfit(x, y, 1, full=True)
        residual = float(residuals[0]) if len(residuals) else 0.0
        alpha = abs(float(slope))
        c = float(2.0 ** intercept)
    else:
        log_sum = float(np.sum(cs * np.log(ks / (k_min - 0.5))))
        alpha = 1.0 + nodes_used / log_sum
        c = (alpha - 1.0) * (k_min - 0.5) ** (alpha - 1.0) * nodes_used / dist.total_nodes
        residual = None

    if not alpha > 0 or not math.isfinite(alpha):
        raise InsufficientDataError(f"degenerate fit (alpha = {alpha})", stage="analyze")

    return PowerLawFit(
        alpha=alpha,
        c=c,
        k_min=k_min,
        method=method,
        residual=residual,
        bins_used=len(bins),
        nodes_used=nodes_used,
    )


def sweep_sizes(
    ranked: Mapping[int, RankedTerms], sizes: Sequence[int], method: str = "loglog_ls", k_min: int = 1
) -> List[SweepPoint]:
    """
    Build the network at several sizes from one ranking and fit each.

    Args:
        ranked: Ranking per tier
        sizes: Values of N
        method: Fit method
        k_min: Smallest fitted degree

    Returns:
        List[SweepPoint]: One point per size, with the fit or the reason it failed
    """
    points = []
    for n in sizes:
        net = build_nnht(select_top(ranked, n))
        point = SweepPoint(n=n, nodes=net.number_of_nodes(), edges=net.number_of_edges())
        try:
            point.fit = fit_power_law(out_degree_distribution(net), k_min=k_min, method=method)
        except InsufficientDataError as e:
            point.error = e.message
        points.append(point)
    return points


def write_degree_tsv(dist: DegreeDistribution, path: str) -> None:
    """Write ``k<TAB>count<TAB>p(k)`` rows, ascending k."""
    frame = pd.DataFrame(dist.to_rows(), columns=["k", "count", "p"])
    frame.to_csv(Path(path), sep="\t", index=False, header=False, float_format="%.6g", lineterminator="\n")


def format_report(dist: DegreeDistribution, fit: PowerLawFit = None) -> str:
    """Plain-text analysis report."""
    lines = ["k\tcount\tp(k)"]
    lines.extend(f"{k}\t{c}\t{p:.6g}" for k, c, p in dist.to_rows())
    lines.append(f"nodes\t{dist.total_nodes}")
    lines.append(f"edges\t{dist.edge_count()}")
    if fit is not None:
        lines.append(f"method\t{fit.method}")
        lines.append(f"k_min\t{fit.k_min}")
        lines.append(f"bins_used\t{fit.bins_used}")
        lines.append(f"alpha\t{fit.alpha:.6g}")
        lines.append(f"c\t{fit.c:.6g}")
        if fit.residual is not None:
            lines.append(f"residual\t{fit.residual:.6g}")
    return "\n".join(lines) + "\n"
