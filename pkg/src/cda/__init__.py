"""Exact computations for squid, Coxeter-Dynkin and canonical algebras."""

__version__ = "0.1.0"
