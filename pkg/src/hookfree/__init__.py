"""Surface-code syndrome-extraction compiler, simulator, and certifier."""

__version__ = "0.1.0"
