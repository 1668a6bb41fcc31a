"""Test suite for the DC grid welfare controller."""
