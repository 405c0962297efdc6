"""Online learning of lifted STRIPS operators with oracle-guided exploration."""

__version__ = "0.1.0"
