"""Simulation module - closed-loop integration, scenarios and run certificates."""
