from fastapi import APIRouter

from app.api.v1.endpoints import networks

api_router = APIRouter()

# Include routers
api_router.include_router(networks.router, prefix="/networks", tags=["networks"])
