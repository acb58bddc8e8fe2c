"""HTTP service wrapping the inference engine."""

from .app import create_app

__all__ = ["create_app"]
