"""Shared domain primitives."""

from src.shared.domain.errors import DomainError

__all__ = ["DomainError"]
