"""Tests for hetsqueeze."""
