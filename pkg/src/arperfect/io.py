"""Flat-file formats for modules and complexes (JSON objects).

Module file::

    {"algebra": "a5", "dim": 2, "action": [[[...], ...], ...]}

``action`` lists one dim x dim matrix per algebra basis element.

Complex file::

    {"algebra": "a3",
     "terms": {"0": [1], "1": [1]},
     "diffs": {"1": [[[0, 0, 1]]]}}

``terms`` gives the multiplicity of each indecomposable projective in a
degree; summands are ordered by idempotent.  ``diffs[n]`` is the block matrix
from degree n to n-1, one coefficient vector (length dim of the algebra) per
block.  The writer minimizes first and emits degrees in increasing order.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import homotopy as ho
from . import modrep as mr
from .algebra import ValidatedAlgebra
from .errors import AlgebraMismatch, FormatError


def _read_json(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return data


def _check_algebra(data: dict, alg: ValidatedAlgebra, where: str):
    name = data.get("algebra")
    if name != alg.name:
        raise AlgebraMismatch(f"{where}: file is over algebra {name!r}, loaded algebra is {alg.name!r}")


# -- modules ----------------------------------------------------------------


def module_to_dict(m: mr.ModuleRep) -> dict:
    return {"algebra": m.alg.name, "dim": m.dim, "action": (m.action % m.p).tolist()}


def module_from_dict(data: dict, alg: ValidatedAlgebra, where: str = "module") -> mr.ModuleRep:
    _check_algebra(data, alg, where)
    try:
        d = int(data["dim"])
        action = np.asarray(data["action"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{where}: bad module data ({exc})") from None
    if action.shape != (alg.dim, d, d):
        raise FormatError(f"{where}: action has shape {action.shape}, expected {(alg.dim, d, d)}")
    return mr.ModuleRep(alg, action % alg.p)


def write_module(m: mr.ModuleRep, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(module_to_dict(m)) + "\n")
    return path


def read_module(path, alg: ValidatedAlgebra) -> mr.ModuleRep:
    return module_from_dict(_read_json(path), alg, str(path))


# -- complexes --------------------------------------------------------------


def canonical_order(c: ho.PerfectComplex) -> ho.PerfectComplex:
    """Same complex with the summands of every term sorted by idempotent."""
    order = {n: sorted(range(len(t)), key=lambda a, t=t: t[a]) for n, t in c.types.items()}
    types = {n: tuple(c.types[n][a] for a in order[n]) for n in c.types}
    diffs = {}
    for n, d in c.diffs.items():
        if n in order and n - 1 in order:
            diffs[n] = d[order[n]][:, order[n - 1]]
    return ho.PerfectComplex(c.alg, types, diffs, check=False)


def complex_to_dict(c: ho.PerfectComplex, minimize: bool = True) -> dict:
    if minimize:
        c = ho.minimize(c)
    c = canonical_order(c)
    n_simples = c.alg.n_simples
    terms, diffs = {}, {}
    for n in sorted(c.types):
        terms[str(n)] = [c.types[n].count(s) for s in range(n_simples)]
    for n in sorted(c.diffs):
        if n in c.types and n - 1 in c.types:
            diffs[str(n)] = (c.diff(n) % c.p).tolist()
    return {"algebra": c.alg.name, "terms": terms, "diffs": diffs}


def complex_from_dict(data: dict, alg: ValidatedAlgebra, where: str = "complex") -> ho.PerfectComplex:
    _check_algebra(data, alg, where)
    try:
        types = {}
        for deg, mults in data["terms"].items():
            if len(mults) != alg.n_simples:
                raise FormatError(f"{where}: degree {deg} lists {len(mults)} multiplicities, expected {alg.n_simples}")
            t = tuple(s for s, k in enumerate(mults) for _ in range(int(k)))
            if t:
                types[int(deg)] = t
        diffs = {}
        for deg, block in data.get("diffs", {}).items():
            n = int(deg)
            shape = (len(types.get(n, ())), len(types.get(n - 1, ())), alg.dim)
            arr = np.asarray(block, dtype=np.int64)
            if arr.size == 0:
                continue
            if arr.shape != shape:
                raise FormatError(f"{where}: differential {n} has shape {arr.shape}, expected {shape}")
            diffs[n] = arr % alg.p
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise FormatError(f"{where}: bad complex data ({exc})") from None
    return ho.PerfectComplex(alg, types, diffs)


def write_complex(c: ho.PerfectComplex, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(complex_to_dict(c)) + "\n")
    return path


def read_complex(path, alg: ValidatedAlgebra) -> ho.PerfectComplex:
    return complex_from_dict(_read_json(path), alg, str(path))
