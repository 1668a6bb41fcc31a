"""Shared utilities package."""

from src.shared.utils.logger import Logger

__all__ = ["Logger"]