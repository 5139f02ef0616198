"""Hard-to-soft edge transition of the Bessel kernel: exact expansion and numerical checks."""

__version__ = "0.1.0"
