"""Entanglement witnesses, distillability searches and decomposition
certificates for small multipartite states.

Operators are passed as ``(matrix, factors)`` where ``matrix`` is a complex
square array and ``factors`` lists ``(party, index, dim)`` tuples in basis
order (leftmost factor slowest).
"""

import json

import numpy as np

from . import _core
from ._core import Error, two_qubit_distillable, thresholds, DEFAULT_Y

__all__ = [
    "Error",
    "DEFAULT_Y",
    "rho_alpha",
    "projector_p",
    "partial_transpose",
    "build_witness",
    "check_ew",
    "paper_certificate",
    "distill_search",
    "two_qubit_distillable",
    "analyze",
    "reproduce_paper",
    "sweep",
    "thresholds",
]


def _matrix(m):
    return np.ascontiguousarray(m, dtype=np.complex128)


def rho_alpha(alpha):
    return _core.rho_alpha(alpha)


def projector_p():
    return _core.projector_p()


def partial_transpose(matrix, factors, party):
    return _core.partial_transpose(_matrix(matrix), factors, party)


def build_witness(matrix, factors, construction, copies=1):
    return _core.build_witness(_matrix(matrix), factors, construction, copies)


def check_ew(matrix, factors, construction, copies=1, seed=42, restarts=200, threads=1):
    """Product-vector search on a witness produced by build_witness."""
    return json.loads(_core.check_ew(_matrix(matrix), factors, construction, copies, seed, restarts, threads))


def paper_certificate(alpha, copies=1, y=DEFAULT_Y, allow_outside=False):
    return json.loads(_core.paper_certificate(alpha, copies, y, allow_outside))


def distill_search(matrix, factors, copies=1, cut="bc", seed=42, restarts=200, threads=1):
    return json.loads(_core.distill_search(_matrix(matrix), factors, copies, cut, seed, restarts, threads))


def analyze(matrix, factors, copies=1, certificate=None, seed=42, restarts=200, threads=1,
            search_decomposition=True):
    cert = json.dumps(certificate) if certificate is not None else ""
    return json.loads(_core.analyze(_matrix(matrix), factors, copies, cert, seed, restarts, threads,
                                    search_decomposition))


def reproduce_paper(seed=42, restarts=200, grid_points=15):
    return json.loads(_core.reproduce_paper(seed, restarts, grid_points))


def sweep(spec, seed=42, restarts=200):
    """CSV text for a sweep spec given as a dict."""
    return _core.sweep(json.dumps(spec), seed, restarts)
