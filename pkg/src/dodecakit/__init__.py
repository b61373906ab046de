"""Computer-assisted verification toolkit for the dodecahedral conjecture."""

__version__ = "0.1.0"
