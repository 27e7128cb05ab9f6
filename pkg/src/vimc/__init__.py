"""Model checking FO and MSO sentences on graphs of small vertex integrity."""

__version__ = "0.1.0"
