"""Python access to the gpd core.

Diagrams travel as the same JSON documents the ``gpd`` CLI reads and writes.
``diagram`` and ``erosion_distance`` return parsed Python values.
"""

import json
from fractions import Fraction

from . import _gpd
from ._gpd import GpdError, NoBGroupError, NonSplitError, ValidationError

__all__ = [
    "GpdError",
    "NoBGroupError",
    "NonSplitError",
    "ValidationError",
    "diagram",
    "erosion_distance",
    "erosion_exists",
    "module",
    "render",
]


def _text(source):
    return source if isinstance(source, str) else json.dumps(source)


def diagram(source, kind="A", degree=0, coeff="Z", components=False):
    """Type A or B diagram of a filtration (text) or module (JSON text or dict)."""
    return json.loads(_gpd.diagram(_text(source), kind, degree, coeff, components))


def module(source, degree=0, coeff="Z", components=False):
    return json.loads(_gpd.module_json(_text(source), degree, coeff, components))


def erosion_distance(a, b):
    """Exact distance as a Fraction; None when no erosion exists."""
    d = _gpd.erosion_distance(_text(a), _text(b))
    return None if d is None else Fraction(d)


def erosion_exists(a, b, eps):
    return _gpd.erosion_exists(_text(a), _text(b), str(Fraction(eps)))


def render(diag, fmt="tsv"):
    return _gpd.render(_text(diag), fmt)
