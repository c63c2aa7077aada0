# Import schemas here for easy access
from app.models.schemas.analysis import DegreeDistribution, PowerLawFit, SweepPoint
from app.models.schemas.network import BuildRequest, BuildResponse, BuildSummary, NetworkOut
from app.models.schemas.pipeline import PipelineConfig
