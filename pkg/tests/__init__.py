"""Test suite for the clustered planarity toolkit."""
