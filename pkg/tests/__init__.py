"""Tests package for the parking planner."""
