"""Auslander-Reiten theory for quiver representations over prime fields.

The heavy lifting happens in the compiled extension; this package adds a
file-loading convenience and re-exports the public surface.
"""

from ._core import (
    Document,
    NegativeResult,
    Rep,
    almost_split,
    approx,
    ar_quiver,
    ar_quiver_dot,
    decompose,
    dtr,
    ext_dim,
    hom_dim,
    inf_ass,
    inf_dtr,
    parse,
    subcat_ass,
    torsion_canonical,
    torsion_transfer,
    trd,
)

__version__ = "0.1.0"

__all__ = [
    "Document",
    "NegativeResult",
    "Rep",
    "almost_split",
    "approx",
    "ar_quiver",
    "ar_quiver_dot",
    "decompose",
    "dtr",
    "ext_dim",
    "hom_dim",
    "inf_ass",
    "inf_dtr",
    "load",
    "parse",
    "subcat_ass",
    "torsion_canonical",
    "torsion_transfer",
    "trd",
]


def load(path):
    """Parse a .arq document from a file path."""
    with open(path, "r", encoding="utf-8") as f:
        return parse(f.read(), str(path))
