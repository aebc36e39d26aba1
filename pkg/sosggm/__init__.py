"""Periodic boundary laws and gradient Gibbs measures of the SOS model on Cayley trees."""

__version__ = "0.1.0"
