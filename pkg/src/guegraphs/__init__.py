"""Exact GUE correlators and large-genus graph enumeration."""

from .asymptotics import AsymptoticReport, fit_and_verify, sequence
from .exact import Poly, RationalFunction, expand_at_infinity, rational_reconstruct
from .expansion import (correlator_polynomial, normalized_og, normalized_rg, og_count,
                        rg_count)
from .resolvent import one_point_correlator, resolvent_coeff
from .wick import connected_correlator, moment_polynomial, one_face_count

__version__ = "0.1.0"
