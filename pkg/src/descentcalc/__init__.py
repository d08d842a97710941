"""Descent of enhanced L-parameters and spectra of Bessel/Fourier-Jacobi branching, as a formal calculator."""

__version__ = "0.1.0"
