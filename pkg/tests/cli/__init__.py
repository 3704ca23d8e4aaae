"""Tests for src.cli modules."""
