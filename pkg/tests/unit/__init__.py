"""Unit tests package for flext-polar."""
