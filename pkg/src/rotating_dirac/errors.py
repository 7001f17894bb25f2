#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Exceptions raised by the library.

All errors derive from `RotatingDiracError` so that the command line front end can map them to exit codes.
"""


class RotatingDiracError(Exception):
    """Base class of every error raised by ``rotating_dirac``."""


class ConfigurationError(RotatingDiracError, ValueError):
    """Invalid parameters: sign values, non-positive frequency, unknown enum values or malformed files."""


class SingularTransformError(RotatingDiracError):
    """The coefficient matrix of the frame transformation cannot be inverted."""


class QuantizationError(RotatingDiracError):
    """The winding condition cannot be solved, or a mode does not satisfy it."""

    def __init__(self, message, signs=None):
        super().__init__(message)
        self.signs = signs


class PoleProximityError(RotatingDiracError):
    """A characteristic root lies within tolerance of the pole of the rational form."""

    def __init__(self, message, roots=None, pole=None):
        super().__init__(message)
        self.roots = roots
        self.pole = pole


class CharacteristicResidualError(RotatingDiracError):
    """The normalized energy handed to a state constructor does not solve the characteristic equation."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class StateConstructionError(RotatingDiracError):
    """The requested state family cannot be built from the given parameters."""


class QuadratureError(RotatingDiracError):
    """The cross-section quadrature did not reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class StepSizeError(RotatingDiracError):
    """The finite difference step underflows for the coordinate scale at hand."""
