"""Tests for src.storage modules."""
