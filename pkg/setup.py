"""Setup script for veccoh (fallback for older pip)."""

from setuptools import setup

setup()
