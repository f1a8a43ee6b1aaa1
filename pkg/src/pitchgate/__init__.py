"""Voice-pitch rehabilitation engine: detectors, pipeline, game, service."""
from __future__ import annotations

__version__ = "0.1.0"
