import csv
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

import networkx as nx
import pandas as pd
from networkx.readwrite.gexf import GEXFWriter

from app.core.config import settings
from app.core.errors import ExportError
from app.models.network import Nnht

logger = logging.getLogger(__name__)

CSV_HEADER = ["source", "target", "source_tier", "target_tier"]
GEXF_VERSION = "1.2draft"


def format_float(value: float) -> float:
    """Round to 6 significant digits so serialized text is reproducible."""
    rounded = float(f"{value:.6g}")
    return 0.0 if rounded == 0 else rounded


@dataclass
class SpiralLayout:
    """Archimedean spiral placement, heaviest node at the centre."""

    c: float
    dtheta: float
    placements: List[Tuple[str, float, float]] = field(default_factory=list)

    def positions(self) -> dict:
        return {term: (x, y) for term, x, y in self.placements}


def _sorted_edges(net: Nnht) -> List[Tuple[str, str]]:
    return sorted(net.edges)


def edge_csv_text(net: Nnht) -> str:
    """Edge-list CSV of the network as a string."""
    buffer = io.StringIO()
    buffer.write(",".join(CSV_HEADER) + "\n")
    writer = csv.writer(buffer, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    for source, target in _sorted_edges(net):
        writer.writerow([source, target, net.tier(source), net.tier(target)])
    return buffer.getvalue()


def write_edge_csv(net: Nnht, path: str) -> None:
    """
    Write the network as an edge list.

    Terms are always quoted; rows are sorted by (source, target).

    Args:
        net: Network
        path: Output file
    """
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(edge_csv_text(net))
    except OSError as e:
        raise ExportError(f"cannot write edge CSV {path}: {e.strerror or e}") from e


def _parse_tier(value: str, line_number: int, source: str) -> int:
    try:
        tier = int(value)
    except ValueError:
        raise ExportError(f"{source}:{line_number}: tier is not an integer: {value!r}") from None
    if tier not in (1, 2, 3):
        raise ExportError(f"{source}:{line_number}: tier {tier} outside 1..3")
    return tier


def _check_term(term: str, tier: int, line_number: int, source: str) -> None:
    tokens = term.split(" ")
    if not term or any(not token for token in tokens):
        raise ExportError(f"{source}:{line_number}: malformed term {term!r}")
    if len(tokens) != tier:
        raise ExportError(f"{source}:{line_number}: term {term!r} does not have {tier} word(s)")


def parse_edge_csv(lines: Iterable[str], source: str = "<csv>") -> Nnht:
    """
    Parse edge-list CSV lines into a network.

    Node weights are unknown and left as ``None``.

    Args:
        lines: CSV text lines
        source: Name used in error messages

    Returns:
        Nnht: Network of the listed edges and their endpoints
    """
    net = Nnht()
    reader = csv.reader(lines)
    try:
        header = next(reader, None)
        if header is None:
            raise ExportError(f"{source}:1: missing header")
        if header != CSV_HEADER:
            raise ExportError(f"{source}:1: expected header {','.join(CSV_HEADER)}")
        for row in reader:
            line_number = reader.line_num
            if not row:
                continue
            if len(row) != 4:
                raise ExportError(f"{source}:{line_number}: expected 4 fields, got {len(row)}")
            src, dst = row[0], row[1]
            src_tier = _parse_tier(row[2], line_number, source)
            dst_tier = _parse_tier(row[3], line_number, source)
            _check_term(src, src_tier, line_number, source)
            _check_term(dst, dst_tier, line_number, source)
            if src_tier >= dst_tier:
                raise ExportError(f"{source}:{line_number}: link must point to a higher tier")
            for term, tier in ((src, src_tier), (dst, dst_tier)):
                if term not in net.graph:
                    net.add_term(term, tier)
                elif net.tier(term) != tier:
                    raise ExportError(f"{source}:{line_number}: term {term!r} listed with two tiers")
            net.add_link(src, dst)
    except csv.Error as e:
        raise ExportError(f"{source}:{reader.line_num}: malformed CSV: {e}") from e
    return net


def network_from_links(links: Iterable[Tuple[str, str]], source: str = "<links>") -> Nnht:
    """Network from bare (source, target) pairs; tiers are the word counts."""
    rows = [",".join(CSV_HEADER)]
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    for src, dst in links:
        writer.writerow([src, dst, len(src.split(" ")), len(dst.split(" "))])
    rows.extend(buffer.getvalue().splitlines())
    return parse_edge_csv(rows, source=source)


def read_edge_csv(path: str) -> Nnht:
    """Load a network written by :func:`write_edge_csv`."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            return parse_edge_csv(f, source=path)
    except OSError as e:
        raise ExportError(f"cannot read edge CSV {path}: {e.strerror or e}") from e
    except UnicodeDecodeError as e:
        raise ExportError(f"{path}: not UTF-8 text") from e


def _placement_order(net: Nnht) -> List[str]:
    return sorted(net.graph.nodes, key=lambda term: (-(net.weight(term) or 0), term))


def spiral_layout(net: Nnht, c: float = 1.0, dtheta: float = 0.5) -> SpiralLayout:
    """
    Place nodes along an Archimedean spiral r = c * theta.

    Node i (by weight descending, term ascending) sits at theta = i * dtheta.

    Args:
        net: Network
        c: Radial constant
        dtheta: Angular step in radians

    Returns:
        SpiralLayout: Placements in order
    """
    if not c > 0 or not dtheta > 0:
        raise ValueError("spiral parameters must be positive")
    placements = []
    for i, term in enumerate(_placement_order(net)):
        theta = i * dtheta
        r = c * theta
        placements.append((term, r * math.cos(theta), r * math.sin(theta)))
    return SpiralLayout(c=c, dtheta=dtheta, placements=placements)


def write_layout_tsv(layout: SpiralLayout, path: str) -> None:
    """Write ``term<TAB>x<TAB>y``."""
    frame = pd.DataFrame(layout.placements, columns=["term", "x", "y"])
    try:
        frame.to_csv(Path(path), sep="\t", index=False, header=False, float_format="%.6g", lineterminator="\n")
    except OSError as e:
        raise ExportError(f"cannot write layout {path}: {e.strerror or e}") from e


def to_gexf_graph(net: Nnht, layout: Optional[SpiralLayout] = None) -> nx.DiGraph:
    """Copy of the network with GEXF node attributes, nodes and edges sorted."""
    positions = layout.positions() if layout is not None else {}
    graph = nx.DiGraph()
    for term in sorted(net.graph.nodes):
        attrs = {"label": term, "tier": int(net.tier(term))}
        weight = net.weight(term)
        if weight is not None:
            attrs["weight"] = int(weight)
        if term in positions:
            x, y = positions[term]
            attrs["viz"] = {"position": {"x": format_float(x), "y": format_float(y), "z": 0.0}}
        graph.add_node(term, **attrs)
    graph.add_edges_from(_sorted_edges(net))
    return graph


def write_gexf(net: Nnht, layout: Optional[SpiralLayout], path: str) -> None:
    """
    Write the network as a directed GEXF graph for Gephi.

    Args:
        net: Network
        layout: Optional spiral positions, written as viz positions
        path: Output file
    """
    writer = GEXFWriter(encoding="utf-8", prettyprint=True, version=GEXF_VERSION)

    # Fixed creator and no date keep the file byte-identical across runs
    meta = writer.xml.find("meta")
    if meta is not None:
        meta.attrib.pop("lastmodifieddate", None)
        creator = meta.find("creator")
        if creator is not None:
            creator.text = settings.APP_NAME

    writer.add_graph(to_gexf_graph(net, layout))
    try:
        writer.write(path)
    except OSError as e:
        raise ExportError(f"cannot write GEXF {path}: {e.strerror or e}") from e
