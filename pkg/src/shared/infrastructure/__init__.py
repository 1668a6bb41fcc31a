"""Shared infrastructure components."""