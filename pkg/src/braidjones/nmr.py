"""Density-operator simulation of an ensemble expectation-value machine.

The machine returns expectation values to a hard precision: a measurement
of M on rho yields x with |x - trace(M*rho)| <= epsilon * Lambda(M), where
Lambda(M) is the spread between extreme eigenvalues of M.  The trace
estimation pipeline is

    rho_1 = (1/N) * (1 - alpha_1 * I_1x)          N = 2^(n+1)
    rho_2 = cU * rho_1 * cU^dagger                cU = identity (+) U
    z     = <I_1x + i*I_1y> on rho_2              proportional to trace(U)

The proportionality constant is deliberately not hard coded: it is measured
once per (size, alpha_1) by a noise-free U = identity run, which makes the
returned estimate immune to sign and normalization conventions of the
product operators.  Noise is a seeded uniform perturbation in
[-epsilon*Lambda, +epsilon*Lambda] per quadrature (uniform, not Gaussian,
because the precision contract is a hard bound), so the rescaled estimate
always satisfies |estimate - trace(U)| <= sqrt(2)*epsilon*Lambda/|c|.

First-order thermal states are used verbatim; positivity is not enforced
for large polarizations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "PROBE_LAMBDA",
    "MeasurementPrecision",
    "DensityOperator",
    "product_operator",
    "thermal_state",
    "prepare_rho1",
    "controlled_u",
    "apply_cu",
    "measure_probe",
    "estimate_trace",
    "trace_error_bound",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# eigenvalue spread of the probe operators I_1x and I_1y (eigenvalues +-1/2)
PROBE_LAMBDA = 1.0

_HERMITIAN_TOL = 1e-12
_UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class MeasurementPrecision:
    """Measurement precision epsilon, probe polarization alpha1 and noise seed."""

    epsilon: float = 0.0
    alpha1: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.epsilon < 0.0:
            raise ValueError("epsilon cannot be negative")
        if self.alpha1 <= 0.0:
            raise ValueError("alpha1 must be positive")


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian unit-trace matrix on ``qubits`` qubits (positivity unchecked)."""

    qubits: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        dim = 2**self.qubits
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        if mat.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix for {self.qubits} qubits")
        if np.max(np.abs(mat - mat.conj().T)) > _HERMITIAN_TOL:
            raise ValueError("density operator must be Hermitian")
        if abs(np.trace(mat) - 1.0) > _HERMITIAN_TOL:
            raise ValueError("density operator must have unit trace")


@lru_cache(maxsize=None)
def _product_operator_cached(m: int, slot: int, axis: str) -> np.ndarray:
    sigma = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}[axis]
    op = np.eye(1, dtype=complex)
    for l in range(1, m + 1):
        op = np.kron(op, sigma if l == slot else np.eye(2, dtype=complex))
    op = 0.5 * op
    op.setflags(write=False)
    return op


def product_operator(m: int, slot: int, axis: str) -> np.ndarray:
    """I_{l,axis}: half of a Pauli on qubit ``slot`` (1-based), identity elsewhere."""
    if not 1 <= slot <= m:
        raise ValueError(f"qubit slot {slot} out of range for {m} qubits")
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be x, y or z, got {axis!r}")
    return _product_operator_cached(m, slot, axis)


def thermal_state(alphas: list[float], m: int) -> DensityOperator:
    """First-order thermal state (1/N) * (1 - sum_l alpha_l * I_lz)."""
    if len(alphas) != m:
        raise ValueError(f"need {m} polarizations, got {len(alphas)}")
    dim = 2**m
    mat = np.eye(dim, dtype=complex)
    for l, alpha in enumerate(alphas, start=1):
        mat = mat - alpha * product_operator(m, l, "z")
    return DensityOperator(m, mat / dim)


def prepare_rho1(m: int, alpha1: float) -> DensityOperator:
    """Initial state (1/N) * (1 - alpha1 * I_1x): probe coherence on qubit 1.

    The off-diagonal blocks are -(alpha1/2N) times the identity on the
    work register.  Built directly; the experimental preparation sequence
    is out of scope.
    """
    if m < 2:
        raise ValueError("need a probe qubit plus at least one work qubit")
    dim = 2**m
    mat = (np.eye(dim, dtype=complex) - alpha1 * product_operator(m, 1, "x")) / dim
    return DensityOperator(m, mat)


def _check_unitary(u: np.ndarray, tol: float) -> None:
    dim = u.shape[0]
    if u.ndim != 2 or u.shape != (dim, dim):
        raise ValueError("expected a square matrix")
    if np.max(np.abs(u.conj().T @ u - np.eye(dim))) > tol:
        raise ValueError("matrix is not unitary")


def controlled_u(U: np.ndarray) -> np.ndarray:
    """Block unitary identity (+) U: acts as U only when the probe is |1>."""
    u = np.asarray(U, dtype=complex)
    _check_unitary(u, _UNITARY_TOL)
    dim = u.shape[0]
    cu = np.zeros((2 * dim, 2 * dim), dtype=complex)
    cu[:dim, :dim] = np.eye(dim)
    cu[dim:, dim:] = u
    return cu


def apply_cu(rho1: DensityOperator, U: np.ndarray) -> DensityOperator:
    """rho_2 = cU * rho_1 * cU^dagger with cU = controlled_u(U)."""
    u = np.asarray(U, dtype=complex)
    if 2 * u.shape[0] != rho1.matrix.shape[0]:
        raise ValueError(
            f"dimension mismatch: U is {u.shape[0]}x{u.shape[0]}, "
            f"state is {rho1.matrix.shape[0]}x{rho1.matrix.shape[0]}"
        )
    cu = controlled_u(u)
    return DensityOperator(rho1.qubits, cu @ rho1.matrix @ cu.conj().T)


def measure_probe(rho2: DensityOperator, prec: MeasurementPrecision) -> complex:
    """Expectation <I_1x + i*I_1y>, perturbed within the hard precision band.

    With epsilon > 0, independent perturbations uniform in
    [-epsilon*PROBE_LAMBDA, +epsilon*PROBE_LAMBDA] are added to the real
    and imaginary parts, drawn from a generator seeded with prec.seed, so a
    fixed seed reproduces the measurement exactly.
    """
    m = rho2.qubits
    observable = product_operator(m, 1, "x") + 1j * product_operator(m, 1, "y")
    z = complex(np.trace(observable @ rho2.matrix))
    if prec.epsilon > 0.0:
        rng = np.random.default_rng(prec.seed)
        bound = prec.epsilon * PROBE_LAMBDA
        dre, dim_ = rng.uniform(-bound, bound, size=2)
        z += complex(dre, dim_)
    return z


_calibration_cache: dict[tuple[int, float], complex] = {}


def _calibration_constant(work_qubits: int, alpha1: float) -> complex:
    """Measured z / trace ratio from a noise-free U = identity run.

    Cached per (size, alpha1); dividing estimates by this constant removes
    any sign or normalization convention from the readout chain.
    """
    key = (work_qubits, float(alpha1))
    c = _calibration_cache.get(key)
    if c is None:
        rho1 = prepare_rho1(work_qubits + 1, alpha1)
        rho2 = apply_cu(rho1, np.eye(2**work_qubits, dtype=complex))
        z0 = measure_probe(rho2, MeasurementPrecision(epsilon=0.0, alpha1=alpha1))
        c = z0 / 2**work_qubits
        if abs(c) < 1e-300:
            raise ValueError("calibration produced a vanishing constant")
        _calibration_cache[key] = c
    return c


def estimate_trace(U: np.ndarray, prec: MeasurementPrecision = MeasurementPrecision()) -> complex:
    """End-to-end trace estimate of a unitary U; exact when epsilon = 0."""
    u = np.asarray(U, dtype=complex)
    dim = u.shape[0]
    n = dim.bit_length() - 1
    if u.ndim != 2 or u.shape != (dim, dim) or 2**n != dim:
        raise ValueError("U must be square with power-of-two dimension")
    _check_unitary(u, _UNITARY_TOL)
    c = _calibration_constant(n, prec.alpha1)
    rho1 = prepare_rho1(n + 1, prec.alpha1)
    rho2 = apply_cu(rho1, u)
    return measure_probe(rho2, prec) / c


def trace_error_bound(dim: int, prec: MeasurementPrecision) -> float:
    """Hard bound on |estimate_trace(U) - trace(U)| for dim x dim unitaries.

    Each quadrature of the raw measurement errs by at most
    epsilon*PROBE_LAMBDA, and the estimate divides by the calibration
    constant c, so the bound is sqrt(2)*epsilon*PROBE_LAMBDA/|c|.  Zero
    violations are expected: the precision contract is a hard bound, not a
    distribution.
    """
    n = dim.bit_length() - 1
    if 2**n != dim:
        raise ValueError("dimension must be a power of two")
    c = _calibration_constant(n, prec.alpha1)
    return math.sqrt(2.0) * prec.epsilon * PROBE_LAMBDA / abs(c)
