"""Version information for noma-relay."""
__version__ = "0.1.0"
