import logging
from typing import Any, Literal

from fastapi import APIRouter, File, HTTPException, Query, UploadFile, status

from app.core.errors import NnhtError
from app.models.document import Document
from app.models.network import Nnht
from app.models.schemas.network import (
    AnalyzeResponse,
    BuildRequest,
    BuildResponse,
    EdgeOut,
    FragmentRequest,
    NetworkOut,
    NodeOut,
)
from app.models.schemas.pipeline import PipelineConfig
from app.services import analysis, corpus, export, nnht, pipeline

logger = logging.getLogger(__name__)

router = APIRouter()


def _network_out(net: Nnht) -> NetworkOut:
    return NetworkOut(
        nodes=[NodeOut(term=term, tier=tier, weight=weight) for term, tier, weight in sorted(net.nodes)],
        edges=[EdgeOut(source=source, target=target) for source, target in sorted(net.edges)],
    )


def _http_error(e: NnhtError) -> HTTPException:
    if pipeline.is_insufficient_data(e):
        code = 422
    else:
        code = status.HTTP_400_BAD_REQUEST
    return HTTPException(status_code=code, detail={"stage": e.stage, "message": e.message})


@router.post("/build", response_model=BuildResponse)
def build_network(request: BuildRequest) -> Any:
    """
    Build a network from an inline corpus. Nothing is written to disk.
    """
    config = PipelineConfig(
        stemmer=request.stemmer,
        n=request.n,
        chvg_weight=request.chvg_weight,
        stopword_ngrams=request.stopword_ngrams,
        workers=1,
    )
    documents = [Document(id=doc.id, raw_text=doc.text) for doc in request.documents]
    try:
        stop = corpus.stop_dictionary_from_words(request.stopwords, request.stemmer)
        result = pipeline.run_build(config, documents=documents, stop=stop, write_artifacts=False)
    except NnhtError as e:
        logger.warning("Build request failed: %s", e)
        raise _http_error(e)
    return BuildResponse(summary=result.summary, network=_network_out(result.network))


@router.post("/analyze", response_model=AnalyzeResponse)
async def analyze_network(
    file: UploadFile = File(...),
    method: Literal["loglog", "loglog_ls", "mle"] = Query("loglog"),
    k_min: int = Query(1, ge=1),
) -> Any:
    """
    Fit a power law to the out-degrees of an uploaded edge CSV.
    """
    content = await file.read()
    try:
        text = content.decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail="edge CSV must be UTF-8 text")

    source = file.filename or "<upload>"
    try:
        with pipeline.stage("load"):
            net = export.parse_edge_csv(text.splitlines(), source=source)
        dist = analysis.out_degree_distribution(net)
        with pipeline.stage("analyze"):
            fit = analysis.fit_power_law(dist, k_min=k_min, method=method)
    except NnhtError as e:
        logger.warning("Analyze request failed: %s", e)
        raise _http_error(e)
    return AnalyzeResponse(distribution=dist, fit=fit)


@router.post("/fragment", response_model=NetworkOut)
def network_fragment(request: FragmentRequest) -> Any:
    """
    Neighbourhood of one term in a network given as links.
    """
    try:
        with pipeline.stage("load"):
            net = export.network_from_links((edge.source, edge.target) for edge in request.edges)
        with pipeline.stage("network"):
            fragment = nnht.extract_fragment(net, request.term, radius=request.radius)
    except NnhtError as e:
        raise _http_error(e)
    return _network_out(fragment)
