"""Crystal, global and perfect bases of Borcherds-Bozec quantum groups."""

import json

from . import _core
from ._core import InvalidDatum, InvalidInput

__all__ = ["InvalidDatum", "InvalidInput", "validate_datum", "crystal", "global_basis", "perfect", "verify_all", "run_cli"]


def validate_datum(text):
    return json.loads(_core.validate_datum(text))


def crystal(A, D, height, dom=()):
    """B(infinity) when dom is empty, else B(lambda)."""
    return json.loads(_core.crystal(A, D, height, list(dom)))


def global_basis(A, D, height, dom=()):
    return json.loads(_core.global_basis(A, D, height, list(dom)))


def perfect(A, D, height, dom=(), upper=False):
    """Certificate of the global basis (or its dual when upper)."""
    return json.loads(_core.perfect(A, D, height, list(dom), upper))


def verify_all(A, D, height, dom=(), seed=1):
    return json.loads(_core.verify_all(A, D, height, list(dom), seed))


def run_cli(args):
    """Returns (exit code, stdout, stderr)."""
    return _core.run_cli(list(args))
