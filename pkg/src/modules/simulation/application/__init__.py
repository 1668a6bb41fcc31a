"""Simulation application layer."""
