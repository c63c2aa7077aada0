"""
Command-line entry point.

    python -m app build --input data/sample_abstracts.jsonl -n 20
    python -m app analyze --csv output/nnht.edges.csv
"""
import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from app.core.config import load_config_file, settings
from app.core.errors import ConfigError, NnhtError
from app.core.logging import configure_logging
from app.models.schemas.pipeline import PipelineConfig
from app.services import analysis, export, pipeline

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INSUFFICIENT_DATA = 2

DEFAULT_SWEEP_SIZES = "20,50,100,150,200"


def _add_global_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="key = value config file; flags override it")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")


def _add_corpus_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", metavar="PATH", help="corpus file (jsonl) or directory (text-dir)")
    parser.add_argument("--format", choices=["jsonl", "text-dir", "text_dir"], help="corpus format")
    parser.add_argument("--stopwords", metavar="PATH", help="stop-dictionary, one word per line")
    parser.add_argument("--stemmer", choices=["porter", "none"], help="token stemming")
    parser.add_argument("--chvg-weight", choices=["simple", "multi"], help="CHVG node weight")
    parser.add_argument("--stopword-ngrams", choices=["strict", "off"], help="stop policy for n-grams")
    parser.add_argument("--workers", type=int, metavar="INT", help="parallel workers")


def _add_fit_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fit", choices=["loglog", "mle"], help="power-law fit method")
    parser.add_argument("--k-min", type=int, metavar="INT", help="smallest fitted degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nnht",
        description="Build three-tier networks of term hierarchies from text corpora.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", help="build the network and write exports")
    _add_global_options(build)
    _add_corpus_options(build)
    _add_fit_options(build)
    build.add_argument("-n", type=int, metavar="INT", help="terms selected per tier")
    build.add_argument("--export", metavar="LIST", help="comma-separated: csv,gexf,layout,debug")
    build.add_argument("--out-prefix", metavar="PATH", help="artifact path prefix")
    build.add_argument("--spiral-c", type=float, metavar="FLOAT", help="spiral radial constant")
    build.add_argument("--spiral-dtheta", type=float, metavar="FLOAT", help="spiral angular step (rad)")

    analyze = subparsers.add_parser("analyze", help="fit the out-degree distribution of an edge CSV")
    _add_global_options(analyze)
    _add_fit_options(analyze)
    analyze.add_argument("--csv", metavar="PATH", help="edge CSV (defaults to --input)")
    analyze.add_argument("--input", metavar="PATH", help=argparse.SUPPRESS)
    analyze.add_argument("--tsv-out", metavar="PATH", help="also write k<TAB>count<TAB>p(k)")

    sweep = subparsers.add_parser("sweep", help="fit alpha for several network sizes")
    _add_global_options(sweep)
    _add_corpus_options(sweep)
    _add_fit_options(sweep)
    sweep.add_argument("--sizes", default=DEFAULT_SWEEP_SIZES, metavar="LIST", help="comma-separated values of N")

    fragment = subparsers.add_parser("fragment", help="print the neighbourhood of one term")
    _add_global_options(fragment)
    fragment.add_argument("--csv", metavar="PATH", required=True, help="edge CSV")
    fragment.add_argument("--term", required=True, help="centre term (stemmed form)")
    fragment.add_argument("--radius", type=int, default=1, metavar="INT", help="link distance")

    return parser


def _config_from_args(args: argparse.Namespace) -> PipelineConfig:
    file_values: Dict[str, Any] = load_config_file(args.config) if args.config else {}
    flag_values = {key: value for key, value in vars(args).items() if key in PipelineConfig.model_fields}
    return PipelineConfig.from_sources(file_values, flag_values)


def _parse_sizes(text: str) -> List[int]:
    try:
        sizes = [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise ConfigError(f"invalid --sizes: {text}", stage="config") from None
    if not sizes or any(size < 1 for size in sizes):
        raise ConfigError(f"invalid --sizes: {text}", stage="config")
    return sizes


def _run_build(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    result = pipeline.run_build(config)
    sys.stdout.write(pipeline.format_summary(result.summary))
    return EXIT_OK


def _run_analyze(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    csv_path = args.csv or config.input
    if not csv_path:
        raise ConfigError("analyze needs --csv PATH", stage="config")

    dist = pipeline.load_distribution(csv_path, args.tsv_out)
    try:
        with pipeline.stage("analyze"):
            fit = analysis.fit_power_law(dist, k_min=config.k_min, method=config.fit_method)
    except NnhtError as e:
        sys.stdout.write(analysis.format_report(dist))
        if pipeline.is_insufficient_data(e):
            logger.error("%s", e)
            return EXIT_INSUFFICIENT_DATA
        raise
    sys.stdout.write(analysis.format_report(dist, fit))
    return EXIT_OK


def _run_sweep(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    sizes = _parse_sizes(args.sizes)
    points = pipeline.run_sweep(config, sizes)
    lines = ["n\tnodes\tedges\talpha"]
    for point in points:
        alpha = f"{point.fit.alpha:.6g}" if point.fit is not None else "NA"
        lines.append(f"{point.n}\t{point.nodes}\t{point.edges}\t{alpha}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _run_fragment(args: argparse.Namespace) -> int:
    if args.radius < 0:
        raise ConfigError("--radius must be >= 0", stage="config")
    fragment = pipeline.run_fragment(args.csv, args.term, radius=args.radius)
    sys.stdout.write(export.edge_csv_text(fragment))
    return EXIT_OK


COMMANDS = {
    "build": _run_build,
    "analyze": _run_analyze,
    "sweep": _run_sweep,
    "fragment": _run_fragment,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        int: 0 on success, 1 on error, 2 when there is too little data to fit
    """
    args = build_parser().parse_args(argv)
    level = "DEBUG" if args.verbose else "WARNING" if args.quiet else settings.LOG_LEVEL
    configure_logging(level)

    try:
        return COMMANDS[args.command](args)
    except NnhtError as e:
        logger.error("%s", e)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
