"""Python access to the pbg library.

Reports come back as dicts. ``run`` drives the command line tool in-process.
"""

import json

from . import _core
from ._core import PbgError, catalog_document, catalog_files, gauge_aut, gauge_nerve_sizes, roundtrip, stanzas

__all__ = [
    "PbgError",
    "run",
    "catalog_document",
    "catalog_files",
    "roundtrip",
    "stanzas",
    "check_crossed_module",
    "gauge_phi",
    "gauge_nerve_sizes",
    "gauge_aut",
    "fiber_product_morita",
]


def run(*args):
    """Return (exit code, parsed report or None, stderr)."""
    code, out, err = _core.run([str(a) for a in args])
    return code, (json.loads(out) if out.strip() else None), err


def check_crossed_module(name):
    return json.loads(_core.check_crossed_module(name))


def gauge_phi(n, m):
    arrows, base_arrows, report = _core.gauge_phi(n, m)
    return arrows, base_arrows, json.loads(report)


def fiber_product_morita(domain, codomain, mapping):
    return json.loads(_core.fiber_product_morita(list(domain), list(codomain), list(mapping)))
