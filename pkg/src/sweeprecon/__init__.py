"""Sweep-based reconstruction of extruded objects from one front-view image."""
from ._core import BACKEND
from .errors import ReconstructionError
from .pipeline import ReconstructSettings, Reconstruction, reconstruct

__all__ = ["BACKEND", "ReconstructionError", "ReconstructSettings", "Reconstruction",
           "reconstruct"]
__version__ = "0.1.0"
