__version__ = "0.1.0"
__date__ = "17/10/2026"
