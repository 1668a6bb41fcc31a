"""Welfare module - cost, utility and the psycho-social-physical optimization problem."""
