"""Exact finite checks for multiple recurrence, joinings and density Hales-Jewett."""

import json
from fractions import Fraction

from . import _ergolab
from ._ergolab import ErgolabError, line_count, max_line_free

__all__ = [
    "ErgolabError",
    "build_correspondence",
    "furstenberg_joining",
    "line_count",
    "max_line_free",
    "recurrence_certificate",
    "run",
    "validate",
]


def _frac(text):
    return Fraction(text)


def _doc(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def run(*args):
    """Run a CLI command. Returns (exit_code, report_dict_or_None, stderr)."""
    code, out, err = _ergolab.run([str(a) for a in args])
    report = json.loads(out) if out.startswith("{") else None
    return code, report, err


def recurrence_certificate(system, indices):
    r = json.loads(_ergolab.recurrence_certificate(_doc(system), list(indices)))
    return _frac(r["limit"]), r["witness_n"]


def furstenberg_joining(system):
    r = json.loads(_ergolab.furstenberg_joining(_doc(system)))
    mass = {tuple(e["tuple"]): _frac(e["value"]) for e in r["coupling"]["mass"]}
    return mass, r["period"]


def build_correspondence(words, k, N, L):
    r = json.loads(_ergolab.build_correspondence(list(words), k, N, L))
    return {e["config"]: _frac(e["value"]) for e in r["mass"]}


def validate(document, schema="auto"):
    _ergolab.validate(_doc(document), schema)
