"""coverhom: exact cohomology of covers, arrangements and quadric sign sets."""

__version__ = "0.1.0"
