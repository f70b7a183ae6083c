"""HTTP service wrapping the shortest-path engine."""

from .app import GraphStore, app, create_app

__all__ = ["GraphStore", "app", "create_app"]
