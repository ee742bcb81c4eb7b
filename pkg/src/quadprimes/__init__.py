"""Primes of the form X^2 + c with a prescribed smallest prime divisor of E_c."""

__version__ = "0.1.0"
