"""Tests for src.operators modules."""
