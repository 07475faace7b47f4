"""WOG Toric - toric-ideal invariants and robustness of weighted oriented graphs."""

__version__ = "0.1.0"
__author__ = "WOG Toric"
__email__ = ""
