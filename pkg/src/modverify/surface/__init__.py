"""Fundamental domain reduction, K-Bessel and Whittaker functions, and integration over the modular surface."""
