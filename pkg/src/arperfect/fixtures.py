"""Builders for the shipped example algebras, modules and complexes.

The ``.alg`` files under ``data/`` are generated from these builders (see
:func:`write_data_files`); loading by name reads the files so the CLI and the
library see identical inputs.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .algebra import AlgebraSpec, ValidatedAlgebra, validate
from .errors import FormatError

FIXTURE_NAMES = ("a2", "a3", "a5", "n22", "n2l2", "a2q", "a3q")


def truncated_polynomial(name: str, p: int, n: int) -> AlgebraSpec:
    """k[X]/(X^n) with basis 1, x, ..., x^(n-1)."""
    mult = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mult[i, j, i + j] = 1
    labels = tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(n))
    return AlgebraSpec(name, p, n, labels, (0,), tuple(range(1, n)), mult)


def _path_algebra(name: str, p: int, paths: list, vertices: int, cyclic: bool, length_bound: int) -> AlgebraSpec:
    # paths are (start, length); the product q*r means "r then q"
    index = {pth: k for k, pth in enumerate(paths)}
    d = len(paths)
    mult = np.zeros((d, d, d), dtype=np.int64)
    for (qs, ql), a in index.items():
        for (rs, rl), b in index.items():
            end = (rs + rl) % vertices if cyclic else rs + rl
            if end != qs:
                continue
            total = rl + ql
            if total < length_bound and (rs, total) in index:
                mult[a, b, index[(rs, total)]] = 1
    labels = tuple(f"e{s}" if l == 0 else f"p{s}_{l}" for s, l in paths)
    idem = tuple(index[(s, 0)] for s in range(vertices))
    rad = tuple(k for k, (s, l) in enumerate(paths) if l > 0)
    return AlgebraSpec(name, p, d, labels, idem, rad, mult)


def cyclic_nakayama(name: str, p: int, vertices: int, loewy: int) -> AlgebraSpec:
    """Path algebra of the oriented cycle on ``vertices`` vertices modulo paths of length ``loewy``."""
    paths = [(s, l) for s in range(vertices) for l in range(loewy)]
    return _path_algebra(name, p, paths, vertices, True, loewy)


def linear_path(name: str, p: int, vertices: int) -> AlgebraSpec:
    """Path algebra of the linearly oriented A_n quiver (not self-injective for n >= 2)."""
    paths = [(s, l) for s in range(vertices) for l in range(vertices - s)]
    return _path_algebra(name, p, paths, vertices, False, vertices)


def builder_specs() -> dict:
    return {
        "a2": truncated_polynomial("a2", 2, 2),
        "a3": truncated_polynomial("a3", 2, 3),
        "a5": truncated_polynomial("a5", 5, 5),
        "n22": cyclic_nakayama("n22", 3, 2, 3),
        "n2l2": cyclic_nakayama("n2l2", 3, 2, 2),
        "a2q": linear_path("a2q", 2, 2),
        "a3q": linear_path("a3q", 3, 3),
    }


def data_dir() -> Path:
    return Path(str(resources.files("arperfect") / "data"))


def write_data_files(directory: Path | None = None) -> list:
    directory = Path(directory) if directory else data_dir()
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, spec in builder_specs().items():
        path = directory / f"{name}.alg"
        path.write_text(json.dumps(spec.to_dict()) + "\n")
        written.append(path)
    return written


def load_spec(path) -> AlgebraSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from None
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return AlgebraSpec.from_dict(data)


@lru_cache(maxsize=None)
def algebra(name: str) -> ValidatedAlgebra:
    """Validated fixture algebra by name (cached so identity comparisons work)."""
    if name not in FIXTURE_NAMES:
        raise FormatError(f"unknown fixture algebra {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    path = data_dir() / f"{name}.alg"
    spec = load_spec(path) if path.exists() else builder_specs()[name]
    return validate(spec)
