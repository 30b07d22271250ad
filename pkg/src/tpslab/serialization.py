"""JSON formats for states, frames and Gaussian states.

Complex numbers are written as ``[re, im]`` pairs and matrices row-major;
all numbers are plain IEEE-754 doubles in decimal.  Parsing is strict:
unknown or missing keys are rejected rather than ignored.
"""

from __future__ import annotations

import json

import numpy as np

from .findim import DensityMatrix, Factorization, PureState, TpsFrame
from .gaussian import CovarianceMatrix, GaussianState

__all__ = [
    "pure_state_to_dict",
    "pure_state_from_dict",
    "density_matrix_to_dict",
    "density_matrix_from_dict",
    "frame_to_dict",
    "frame_from_dict",
    "gaussian_state_to_dict",
    "gaussian_state_from_dict",
    "load_json",
    "dump_json",
]


def _check_keys(data: dict, required: set, optional: set = frozenset()) -> None:
    if not isinstance(data, dict):
        raise ValueError(f"expected a JSON object, got {type(data).__name__}")
    keys = set(data)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise ValueError(f"missing keys: {sorted(missing)}")
    if unknown:
        raise ValueError(f"unknown keys: {sorted(unknown)}")


def _complex_vector_to_pairs(vec: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in vec]


def _pairs_to_complex_vector(pairs, length: int) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.shape != (length, 2):
        raise ValueError(f"expected {length} [re, im] pairs, got shape {arr.shape}")
    return arr[:, 0] + 1j * arr[:, 1]


def _complex_matrix_to_pairs(mat: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def _pairs_to_complex_matrix(rows, dim: int) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.shape != (dim, dim, 2):
        raise ValueError(f"expected a {dim}x{dim} matrix of [re, im] pairs, got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def pure_state_to_dict(state: PureState) -> dict:
    return {"dim": state.dim, "amplitudes": _complex_vector_to_pairs(state.amplitudes)}


def pure_state_from_dict(data: dict) -> PureState:
    _check_keys(data, {"dim", "amplitudes"})
    dim = int(data["dim"])
    return PureState(dim, _pairs_to_complex_vector(data["amplitudes"], dim))


def density_matrix_to_dict(rho: DensityMatrix) -> dict:
    return {"dim": rho.dim, "matrix": _complex_matrix_to_pairs(rho.matrix)}


def density_matrix_from_dict(data: dict) -> DensityMatrix:
    _check_keys(data, {"dim", "matrix"})
    dim = int(data["dim"])
    return DensityMatrix(dim, _pairs_to_complex_matrix(data["matrix"], dim))


def frame_to_dict(frame: TpsFrame) -> dict:
    return {
        "d": frame.d,
        "factors": [frame.k1, frame.k2],
        "frame": _complex_matrix_to_pairs(frame.frame),
    }


def frame_from_dict(data: dict) -> TpsFrame:
    _check_keys(data, {"d", "factors", "frame"})
    d = int(data["d"])
    factors = data["factors"]
    if len(factors) != 2:
        raise ValueError(f"factors must be a pair, got {factors}")
    factorization = Factorization(d, (int(factors[0]), int(factors[1])))
    if data["frame"] == "identity":
        return TpsFrame.identity(factorization)
    return TpsFrame(factorization, _pairs_to_complex_matrix(data["frame"], d))


def gaussian_state_to_dict(state: GaussianState) -> dict:
    return {
        "n_modes": state.n_modes,
        "sigma": [[float(x) for x in row] for row in state.cov.sigma],
        "mean": [float(x) for x in state.mean],
    }


def gaussian_state_from_dict(data: dict) -> GaussianState:
    _check_keys(data, {"n_modes", "sigma"}, optional={"mean"})
    n = int(data["n_modes"])
    sigma = np.asarray(data["sigma"], dtype=float)
    if sigma.shape != (2 * n, 2 * n):
        raise ValueError(f"sigma must be {2 * n}x{2 * n}, got {sigma.shape}")
    mean = np.asarray(data.get("mean", np.zeros(2 * n)), dtype=float)
    return GaussianState(CovarianceMatrix(n, sigma), mean)


def load_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(path, data: dict) -> None:
    """Write a JSON document with LF endings and a trailing newline."""
    text = json.dumps(data) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
