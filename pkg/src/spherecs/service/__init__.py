"""HTTP service exposing the state constructions and diagnostics."""

from .app import app, create_app

__all__ = ["app", "create_app"]
