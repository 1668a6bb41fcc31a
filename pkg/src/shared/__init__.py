"""Shared package containing common utilities and infrastructure."""
