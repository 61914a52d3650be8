"""de Branges-Rovnyak spaces H(b) for nonextreme rational b.

Thin wrappers over the compiled core; reports come back as dicts parsed from
the same JSON the command line tool prints.
"""

import json

import numpy as np

from ._hbspace import SCHEMA, HbError, parse_rational, run
from . import _hbspace as _core

__all__ = ["SCHEMA", "HbError", "parse_rational", "run", "pair", "kernel", "hb_inner", "defect", "verify"]


def pair(b, tol=None):
    return json.loads(_core.pair_json(b, tol or {}))


def kernel(b, w, m=0, N=512, tol=None):
    """Coefficients (complex ndarray) and H(b) norm of the order-m kernel at w."""
    coeffs, norm = _core.kernel(b, complex(w), m, N, tol or {})
    return np.asarray(coeffs, dtype=complex), norm


def hb_inner(b, f, g, N=512, tol=None):
    return _core.hb_inner(b, list(np.asarray(f, dtype=complex)), list(np.asarray(g, dtype=complex)), N, tol or {})


def defect(b, N=512, tol=None):
    return json.loads(_core.defect_json(b, N, tol or {}))


def verify(b, z0, k=0, N=512, seed=0, tol=None):
    return json.loads(_core.verify_json(b, complex(z0), k, N, seed, tol or {}))
