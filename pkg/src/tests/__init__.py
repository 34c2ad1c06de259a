"""Tests for modules in the src directory."""
