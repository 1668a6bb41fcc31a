"""Simulation infrastructure layer - adapters for files and the command line."""
