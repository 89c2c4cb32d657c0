"""Test suite for veccoh."""
