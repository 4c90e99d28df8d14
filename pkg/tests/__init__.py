"""Test package for flext-polar."""
