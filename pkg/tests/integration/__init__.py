"""Integration tests for the FLEXT-Polar API."""
