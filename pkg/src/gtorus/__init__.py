"""Torus actions on G(4,2) and CP^5: Plücker machinery, strata, orbit parameters and orbit-space models."""

__version__ = "0.1.0"
