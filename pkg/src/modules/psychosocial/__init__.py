"""Psychosocial module - motives-based flexibility estimation and comfort tuning."""
