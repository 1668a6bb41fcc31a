"""Psychosocial application layer."""
