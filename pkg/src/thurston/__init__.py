"""Homological lower bounds for the Thurston norm from group presentations."""

__version__ = "0.1.0"
