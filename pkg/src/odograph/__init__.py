"""Exact computation for boundary quotients of products of odometers."""

__version__ = "0.1.0"
