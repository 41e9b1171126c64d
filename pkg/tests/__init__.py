"""Test package for bellpigeon."""
