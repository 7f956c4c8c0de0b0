"""twlab: exact finite-structure verification of Tall-Wraith monoids."""

__version__ = "0.1.0"
