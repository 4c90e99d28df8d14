"""End-to-end tests for FLEXT-Polar command-line workflows."""
