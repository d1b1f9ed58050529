"""HTTP service: configuration, loaded state, payload views, FastAPI app."""

from .app import create_app
from .config import ENV_PREFIX, ServiceConfig, load_config
from .state import ServiceState, StateHolder, build_state
from .views import dump_json

__all__ = [
    "ENV_PREFIX",
    "ServiceConfig",
    "ServiceState",
    "StateHolder",
    "build_state",
    "create_app",
    "dump_json",
    "load_config",
]
