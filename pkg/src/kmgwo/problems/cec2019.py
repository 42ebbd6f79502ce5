"""CEC2019 "100-Digit Challenge" single-objective suite, F1 to F10.

Definitions follow the competition's reference C code:

* F1 Storn's Chebyshev fitting (D=9, [-8192, 8192])
* F2 inverse Hilbert matrix (D=16, [-16384, 16384])
* F3 Lennard-Jones cluster of 6 atoms (D=18, [-4, 4])
* F4 to F10 are shifted and rotated Rastrigin, Griewank, Weierstrass,
  modified Schwefel, expanded Schaffer F6, Happy Cat and Ackley (D=10,
  [-100, 100]). Before rotation the shifted vector is scaled by a
  per-function shrink rate, as the reference does.

Every function adds 1 so the global minimum value is 1. F4-F10 read their
shift vector and rotation matrix from the official text files
``shift_data_<id>.txt`` and ``M_<id>_D10.txt``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import partial
from importlib import resources
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np

from .. import _kernels
from ..core import Bounds, DataIngestionError, InputError, Problem

DIMENSIONS = {1: 9, 2: 16, 3: 18, 4: 10, 5: 10, 6: 10, 7: 10, 8: 10, 9: 10, 10: 10}
RANGES = {1: 8192.0, 2: 16384.0, 3: 4.0}
SHIFTED_IDS = (4, 5, 6, 7, 8, 9, 10)
SHRINK = {4: 5.12 / 100.0, 5: 600.0 / 100.0, 6: 0.5 / 100.0, 7: 1000.0 / 100.0, 8: 1.0, 9: 5.0 / 100.0, 10: 1.0}
NAMES = {
    1: "Storn's Chebyshev polynomial fitting",
    2: "Inverse Hilbert matrix",
    3: "Lennard-Jones minimum energy cluster",
    4: "Shifted and rotated Rastrigin",
    5: "Shifted and rotated Griewank",
    6: "Shifted and rotated Weierstrass",
    7: "Shifted and rotated modified Schwefel",
    8: "Shifted and rotated expanded Schaffer F6",
    9: "Shifted and rotated Happy Cat",
    10: "Shifted and rotated Ackley",
}
LJ_OFFSET = 12.7120622568  # negated LJ6 ground-state energy, as in the reference
BIAS = 1.0

PathLike = Union[str, "os.PathLike[str]"]


def shift_filename(fid: int) -> str:
    return f"shift_data_{fid}.txt"


def rotation_filename(fid: int) -> str:
    return f"M_{fid}_D{DIMENSIONS[fid]}.txt"


def default_data_dir() -> Path:
    """The copy of the official data files shipped with the package."""
    return Path(str(resources.files("kmgwo.problems") / "data" / "cec2019"))


# ---------------------------------------------------------------- data files


def _read_numbers(path: Path) -> np.ndarray:
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataIngestionError(f"cannot read {path}: {exc}") from exc
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        col = 0
        for token in line.split():
            col = line.index(token, col) + 1
            try:
                values.append(float(token))
            except ValueError:
                raise DataIngestionError(
                    f"{path}:{lineno}:{col}: malformed number {token!r}"
                ) from None
            col += len(token) - 1
    return np.array(values, dtype=float)


def load_cec2019_data(directory: PathLike) -> Dict[int, Tuple[np.ndarray, np.ndarray]]:
    """Parse shift vectors and rotation matrices for F4-F10.

    Shift files may hold more values than the function dimension (the
    official ones hold 100); the leading ``D`` values are used, like the
    reference reader. Rotation files must hold exactly ``D*D`` values in
    row-major order.
    """
    directory = Path(directory)
    table = {}
    for fid in SHIFTED_IDS:
        dim = DIMENSIONS[fid]
        shift_path = directory / shift_filename(fid)
        rot_path = directory / rotation_filename(fid)
        for path in (shift_path, rot_path):
            if not path.is_file():
                raise DataIngestionError(f"F{fid}: missing data file {path.name} in {directory}")
        shift = _read_numbers(shift_path)
        if shift.size < dim:
            raise DataIngestionError(
                f"F{fid}: {shift_path.name} holds {shift.size} values, need at least {dim}"
            )
        rot = _read_numbers(rot_path)
        if rot.size != dim * dim:
            raise DataIngestionError(
                f"F{fid}: {rot_path.name} holds {rot.size} values, expected {dim * dim} for a {dim}x{dim} matrix"
            )
        shift = shift[:dim].copy()
        rot = rot.reshape(dim, dim)
        shift.setflags(write=False)
        rot.setflags(write=False)
        table[fid] = (shift, rot)
    return table


def format_numbers(values: np.ndarray, per_line: Optional[int] = None) -> str:
    """Render values in the official whitespace layout, losslessly."""
    values = np.atleast_2d(np.asarray(values, dtype=float))
    if per_line is not None:
        values = values.reshape(-1, per_line)
    return "\n".join("".join(f"{v:25.16e}" for v in row) for row in values) + "\n"


def write_cec2019_data(table: Dict[int, Tuple[np.ndarray, np.ndarray]], directory: PathLike) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for fid, (shift, rot) in table.items():
        (directory / shift_filename(fid)).write_text(format_numbers(shift))
        (directory / rotation_filename(fid)).write_text(format_numbers(rot))


# ------------------------------------------------------------ base functions


def _hilbert(X: np.ndarray) -> np.ndarray:
    n, d = X.shape
    b = int(math.isqrt(d))
    idx = np.arange(b)
    H = 1.0 / (idx[:, None] + idx[None, :] + 1.0)
    Y = np.einsum("ji,nik->njk", H, X[:, : b * b].reshape(n, b, b))
    return np.abs(Y - np.eye(b)).sum(axis=(1, 2))


def _rastrigin(z):
    return np.sum(z * z - 10.0 * np.cos(2.0 * np.pi * z) + 10.0, axis=1)


def _griewank(z):
    d = z.shape[1]
    s = np.sum(z * z, axis=1)
    p = np.prod(np.cos(z / np.sqrt(np.arange(1, d + 1))), axis=1)
    return 1.0 + s / 4000.0 - p


_W_A = 0.5 ** np.arange(21)
_W_B = 3.0 ** np.arange(21)


def _weierstrass(z):
    d = z.shape[1]
    terms = _W_A * np.cos(2.0 * np.pi * _W_B * (z[:, :, None] + 0.5))
    offset = np.sum(_W_A * np.cos(2.0 * np.pi * _W_B * 0.5))
    return terms.sum(axis=(1, 2)) - d * offset


def _schwefel(z):
    d = z.shape[1]
    z = z + 4.209687462275036e002
    out = np.zeros_like(z)
    hi = z > 500.0
    lo = z < -500.0
    mid = ~(hi | lo)
    m = np.fmod(z[hi], 500.0)
    out[hi] = -(500.0 - m) * np.sin(np.sqrt(500.0 - m)) + ((z[hi] - 500.0) / 100.0) ** 2 / d
    m = np.fmod(np.abs(z[lo]), 500.0)
    out[lo] = -(-500.0 + m) * np.sin(np.sqrt(500.0 - m)) + ((z[lo] + 500.0) / 100.0) ** 2 / d
    out[mid] = -z[mid] * np.sin(np.sqrt(np.abs(z[mid])))
    return out.sum(axis=1) + 4.189828872724338e002 * d


def _expanded_schaffer_f6(z):
    nxt = np.roll(z, -1, axis=1)
    s = z * z + nxt * nxt
    t1 = np.sin(np.sqrt(s)) ** 2
    t2 = 1.0 + 0.001 * s
    return np.sum(0.5 + (t1 - 0.5) / (t2 * t2), axis=1)


def _happy_cat(z):
    d = z.shape[1]
    z = z - 1.0
    r2 = np.sum(z * z, axis=1)
    sz = np.sum(z, axis=1)
    return np.abs(r2 - d) ** 0.25 + (0.5 * r2 + sz) / d + 0.5


def _ackley(z):
    d = z.shape[1]
    s1 = np.sum(z * z, axis=1)
    s2 = np.sum(np.cos(2.0 * np.pi * z), axis=1)
    return math.e - 20.0 * np.exp(-0.2 * np.sqrt(s1 / d)) - np.exp(s2 / d) + 20.0


_BASE = {
    4: _rastrigin,
    5: _griewank,
    6: _weierstrass,
    7: _schwefel,
    8: _expanded_schaffer_f6,
    9: _happy_cat,
    10: _ackley,
}


# ----------------------------------------------------------------- functions


@dataclass(frozen=True)
class Cec2019Function:
    id: int
    shift_vector: Optional[np.ndarray] = field(default=None, repr=False)
    rotation_matrix: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.id not in DIMENSIONS:
            raise InputError(f"CEC2019 function ids run from 1 to 10, got {self.id}")
        dim = DIMENSIONS[self.id]
        if self.id in SHIFTED_IDS:
            if self.shift_vector is None or self.rotation_matrix is None:
                raise InputError(f"F{self.id} needs a shift vector and a rotation matrix")
            if np.shape(self.shift_vector) != (dim,):
                raise InputError(f"F{self.id}: shift vector must have length {dim}")
            if np.shape(self.rotation_matrix) != (dim, dim):
                raise InputError(f"F{self.id}: rotation matrix must be {dim}x{dim}")

    @property
    def dimension(self) -> int:
        return DIMENSIONS[self.id]

    @property
    def name(self) -> str:
        return f"cec19:f{self.id}"

    @property
    def bounds(self) -> Bounds:
        r = RANGES.get(self.id, 100.0)
        return Bounds.uniform(-r, r, self.dimension)

    def evaluate_many(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dimension:
            raise InputError(f"F{self.id} takes vectors of length {self.dimension}, got shape {X.shape}")
        if self.id == 1:
            base = _kernels.chebyshev(X)
        elif self.id == 2:
            base = _hilbert(X)
        elif self.id == 3:
            base = _kernels.lennard_jones(X) + LJ_OFFSET
        else:
            # einsum keeps each row's rounding independent of the batch size (BLAS does not)
            z = np.einsum("ij,kj->ik", SHRINK[self.id] * (X - self.shift_vector), self.rotation_matrix)
            base = _BASE[self.id](z)
        return base + BIAS

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise InputError(f"F{self.id} takes vectors of length {self.dimension}, got shape {x.shape}")
        return float(self.evaluate_many(x[None, :])[0])

    def problem(self) -> Problem:
        return Problem(name=self.name, bounds=self.bounds, objective=self.evaluate, batch_objective=self.evaluate_many)


def evaluate_cec2019(function: Cec2019Function, x) -> float:
    return function.evaluate(x)


_TABLE_CACHE: Dict[str, Dict[int, Tuple[np.ndarray, np.ndarray]]] = {}


def cec2019_function(fid: int, data_dir: Optional[PathLike] = None) -> Cec2019Function:
    """Build function ``fid``, loading data from ``data_dir`` (default: bundled copy)."""
    if fid not in DIMENSIONS:
        raise InputError(f"CEC2019 function ids run from 1 to 10, got {fid}")
    if fid not in SHIFTED_IDS:
        return Cec2019Function(fid)
    key = str(Path(data_dir) if data_dir is not None else default_data_dir())
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = load_cec2019_data(key)
    shift, rot = _TABLE_CACHE[key][fid]
    return Cec2019Function(fid, shift, rot)
