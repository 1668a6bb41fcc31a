"""Simulation command-line commands."""
