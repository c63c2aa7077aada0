"""
Build and analysis runs: every stage in order, each failure tagged with its stage.
"""
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed

from app.core.errors import CorpusError, InsufficientDataError, NnhtError, PipelineError
from app.models.document import Document, StopDictionary, TokenizedDocument
from app.models.graph import RankedTerms
from app.models.network import Nnht
from app.models.schemas.analysis import DegreeDistribution, PowerLawFit, SweepPoint
from app.models.schemas.network import BuildSummary, TierSummary
from app.models.schemas.pipeline import PipelineConfig
from app.models.terms import TIER_NAMES, VALID_TIERS, TermWeightTable
from app.services import analysis, corpus, export, hvg, nnht, weighting

logger = logging.getLogger(__name__)


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Re-raise any stage failure as a PipelineError naming ``name``."""
    try:
        yield
    except PipelineError:
        raise
    except (NnhtError, OSError, ValueError, KeyError) as e:
        raise PipelineError(name, e) from e


@dataclass
class TierResult:
    """Everything one tier contributes to a build."""

    tier: int
    table: TermWeightTable
    ranked: RankedTerms
    positions: int
    hvg_edges: int
    dropped_self_loops: int
    candidates: int


@dataclass
class BuildResult:
    summary: BuildSummary
    network: Nnht
    tiers: Dict[int, TierResult] = field(default_factory=dict)


def process_tier(
    docs: List[TokenizedDocument],
    n: int,
    stop: StopDictionary,
    chvg_weight: str = "simple",
    stopword_ngrams: str = "strict",
) -> TierResult:
    """
    Weight, visibility-graph and rank the n-grams of one tier.

    Args:
        docs: Tokenized corpus
        n: Tier (n-gram size)
        stop: Stop-dictionary
        chvg_weight: CHVG node weight mode
        stopword_ngrams: Stop policy for n-grams

    Returns:
        TierResult: Table, ranking and graph statistics
    """
    with stage("weighting"):
        table = weighting.compute_tfidf(docs, n)
        series = weighting.build_weight_series(docs, table, n)
    with stage("hvg"):
        graph = hvg.build_hvg(series)
        chvg = hvg.compact_hvg(graph, series, weight_mode=chvg_weight)
    with stage("rank"):
        ranked = hvg.rank_terms(chvg, stop, stopword_ngrams=stopword_ngrams)
    return TierResult(
        tier=n,
        table=table,
        ranked=ranked,
        positions=len(series),
        hvg_edges=len(graph),
        dropped_self_loops=chvg.dropped_self_loops,
        candidates=len(ranked),
    )


def _load_inputs(
    config: PipelineConfig,
    documents: Optional[List[Document]],
    stop: Optional[StopDictionary],
) -> Tuple[List[TokenizedDocument], StopDictionary]:
    with stage("load"):
        if documents is None:
            if not config.input:
                raise CorpusError("no input corpus given")
            documents = corpus.load_corpus(config.input, config.format)
        else:
            corpus.check_unique_ids(documents)
        if not documents:
            raise CorpusError("empty corpus")

    with stage("tokenize"):
        docs = corpus.tokenize_corpus(documents, config.stemmer, workers=config.worker_count)

    with stage("stopwords"):
        if stop is None:
            stop = corpus.load_stop_dictionary(config.stopwords, config.stemmer)
    return docs, stop


def rank_tiers(
    config: PipelineConfig,
    documents: Optional[List[Document]] = None,
    stop: Optional[StopDictionary] = None,
) -> Tuple[List[TokenizedDocument], Dict[int, TierResult]]:
    """
    Run the pipeline up to per-tier rankings.

    The three tiers are independent jobs; their results are keyed by tier so
    the worker count never changes the output.
    """
    docs, stop = _load_inputs(config, documents, stop)
    jobs = (
        delayed(process_tier)(docs, n, stop, config.chvg_weight, config.stopword_ngrams) for n in VALID_TIERS
    )
    results = Parallel(n_jobs=min(config.worker_count, len(VALID_TIERS)))(jobs)
    return docs, {result.tier: result for result in results}


def _export(config: PipelineConfig, net: Nnht, tiers: Dict[int, TierResult]) -> List[str]:
    prefix = Path(config.out_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    artifacts = []

    layout = None
    if "layout" in config.export:
        layout = export.spiral_layout(net, c=config.spiral_c, dtheta=config.spiral_dtheta)
        path = f"{prefix}.layout.tsv"
        export.write_layout_tsv(layout, path)
        artifacts.append(path)
    if "csv" in config.export:
        path = f"{prefix}.edges.csv"
        export.write_edge_csv(net, path)
        artifacts.append(path)
    if "gexf" in config.export:
        path = f"{prefix}.gexf"
        export.write_gexf(net, layout, path)
        artifacts.append(path)
    if "debug" in config.export:
        for n, result in sorted(tiers.items()):
            path = f"{prefix}.tier{n}.tfidf.tsv"
            weighting.write_tfidf_dump(result.table, path)
            artifacts.append(path)
            path = f"{prefix}.tier{n}.chvg.tsv"
            hvg.write_ranking_dump(result.ranked, path)
            artifacts.append(path)
    return sorted(artifacts)


def run_build(
    config: PipelineConfig,
    documents: Optional[List[Document]] = None,
    stop: Optional[StopDictionary] = None,
    write_artifacts: bool = True,
) -> BuildResult:
    """
    Build the N + N + N term network and write the requested exports.

    Args:
        config: Run options
        documents: In-memory corpus; loaded from ``config.input`` when omitted
        stop: In-memory stop-dictionary; loaded from ``config.stopwords`` when omitted
        write_artifacts: Whether to write the export files

    Returns:
        BuildResult: Summary, network and per-tier results
    """
    docs, tiers = rank_tiers(config, documents, stop)

    with stage("select"):
        selection = nnht.select_top({n: result.ranked for n, result in tiers.items()}, config.n)

    with stage("network"):
        net = nnht.build_nnht(selection)

    artifacts: List[str] = []
    if write_artifacts:
        with stage("export"):
            artifacts = _export(config, net, tiers)

    selected = selection.by_tier()
    summary = BuildSummary(
        documents=len(docs),
        tokens=sum(len(doc) for doc in docs),
        n_requested=config.n,
        tiers=[
            TierSummary(
                tier=n,
                name=TIER_NAMES[n],
                positions=result.positions,
                hvg_edges=result.hvg_edges,
                dropped_self_loops=result.dropped_self_loops,
                candidates=result.candidates,
                selected=len(selected[n]),
            )
            for n, result in sorted(tiers.items())
        ],
        nodes=net.number_of_nodes(),
        edges=net.number_of_edges(),
        warnings=selection.warnings,
        artifacts=artifacts,
    )
    return BuildResult(summary=summary, network=net, tiers=tiers)


def load_distribution(csv_path: str, tsv_out: Optional[str] = None) -> DegreeDistribution:
    """Read an exported network and histogram its out-degrees."""
    with stage("load"):
        net = export.read_edge_csv(csv_path)
    dist = analysis.out_degree_distribution(net)
    if tsv_out:
        with stage("export"):
            analysis.write_degree_tsv(dist, tsv_out)
    return dist


def run_analyze(
    csv_path: str, method: str = "loglog_ls", k_min: int = 1, tsv_out: Optional[str] = None
) -> Tuple[DegreeDistribution, PowerLawFit]:
    """Fit the out-degree distribution of an exported network."""
    dist = load_distribution(csv_path, tsv_out)
    with stage("analyze"):
        fit = analysis.fit_power_law(dist, k_min=k_min, method=method)
    return dist, fit


def is_insufficient_data(error: BaseException) -> bool:
    """Whether a (possibly stage-wrapped) error means too few degree bins."""
    return isinstance(error, InsufficientDataError) or isinstance(
        getattr(error, "cause", None), InsufficientDataError
    )


def run_sweep(
    config: PipelineConfig,
    sizes: Sequence[int],
    documents: Optional[List[Document]] = None,
    stop: Optional[StopDictionary] = None,
) -> List[SweepPoint]:
    """Rank once, then build and fit the network at every size."""
    _, tiers = rank_tiers(config, documents, stop)
    with stage("analyze"):
        return analysis.sweep_sizes(
            {n: result.ranked for n, result in tiers.items()}, sizes, method=config.fit_method, k_min=config.k_min
        )


def run_fragment(csv_path: str, term: str, radius: int = 1) -> Nnht:
    """Neighbourhood of one term in an exported network."""
    with stage("load"):
        net = export.read_edge_csv(csv_path)
    with stage("network"):
        return nnht.extract_fragment(net, term, radius=radius)


def format_summary(summary: BuildSummary) -> str:
    """Plain-text build summary for standard output."""
    lines = [
        f"documents\t{summary.documents}",
        f"tokens\t{summary.tokens}",
        f"n\t{summary.n_requested}",
    ]
    for tier in summary.tiers:
        lines.append(f"{tier.name}\tcandidates={tier.candidates}\tselected={tier.selected}")
    lines.append(f"nodes\t{summary.nodes}")
    lines.append(f"edges\t{summary.edges}")
    lines.extend(f"warning\t{warning}" for warning in summary.warnings)
    lines.extend(f"artifact\t{artifact}" for artifact in summary.artifacts)
    return "\n".join(lines) + "\n"
