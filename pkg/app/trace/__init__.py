from .client import Tracer, get_tracer, set_tracer
from .run import Run
from .step import Step

__all__ = ["Tracer", "Run", "Step", "get_tracer", "set_tracer"]
