"""HTTP facade over the hyperbolicity toolkit."""

from .app import create_app

__all__ = ["create_app"]
