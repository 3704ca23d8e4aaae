"""Tests for src.workflows modules."""
