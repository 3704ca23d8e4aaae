"""Tests for src.fock modules."""
