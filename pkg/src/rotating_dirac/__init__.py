#!/usr/bin/env python3
# -*- coding: utf-8 -*-

__version__ = "0.1.0"

#: Derivative schemes understood by the residual verifier.
SCHEMES = [
    "analytic",
    "fd2",
    "fd4",
    "richardson",
]

#: Families of exact states that can be built from a run configuration.
FAMILIES = [
    "ground",
    "excited",
    "flipped",
    "massless",
    "massless-zero",
]

#: Axes a parameter scan can sweep.
SCAN_AXES = [
    "h",
    "E0",
    "Lambda",
    "tau_omega",
    "n",
]

#: Coordinate directions of the resting-frame derivatives.
DIRECTIONS = [
    "t",
    "x",
    "y",
    "z",
]

#: Upper bound of the fundamental time constant, in seconds.
DEFAULT_TAU = 1e-17

#: Version of the JSON report layout.
REPORT_SCHEMA = 1
