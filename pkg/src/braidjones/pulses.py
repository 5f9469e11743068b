"""Two-spin pulse programs realizing controlled braid-generator gates.

Instruction propagators (two spin-1/2 nuclei, 4x4 matrices):

    rotation spin s, axis v, angle phi:  exp(-i*phi * (sigma_v/2 on spin s))
    coupling angle phi (= pi*J*t):       exp(-i*phi * 2*Iz*Sz),
                                         2*Iz*Sz = (sigma_z x sigma_z)/2
    phase angle phi:                     exp(i*phi) * identity

Instructions are listed in time order; the program propagator multiplies
right to left (the last instruction is the leftmost matrix factor).

The compiler targets cU = identity (+) s_j with s_j = rho(sigma_j).  It
ZYZ-factors s_j = exp(i*d0) * Rz(a) * Ry(b) * Rz(c) and assembles the
controlled version from sector-selective pieces: a z rotation on spin 2
paired with a coupling period of matched angle acts only in one control
sector, which turns the shared y pulses into a controlled Ry.  The
determinant offset exp(i*d0) of the target block cannot be produced by
spin-2 pulses and couplings alone (those always leave the two control
sectors with equal determinants), so the program carries exactly one z
rotation on spin 1 plus one global phase to supply it.

The rotation-angle formulas alpha = pi/2 - 2*theta, beta = pi/2 + theta and
gamma = atan(cos(4*theta)/sqrt(4*cos^2(2*theta) - 1)) + pi/2 used by the
hardware-style sequence are exposed by ``pulse_angles``.  The gamma
denominator is read as sqrt(4*cos^2(2*theta) - 1), the reading under which
it is real exactly on [0, pi/6]; at theta = pi/6 the one-sided limit gives
gamma = 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .braid import BraidGenerator
from .nmr import SIGMA_Y, SIGMA_Z
from .tlrep import ReprParams, rho_generator

__all__ = [
    "PulseInstruction",
    "PulseProgram",
    "rot",
    "couple",
    "phase",
    "pulse_angles",
    "compile_controlled_s",
    "simulate_program",
    "verify_program",
    "format_program",
    "parse_program",
]

_KINDS = ("rotation", "coupling", "phase")
_AXES = ("y", "z")


@dataclass(frozen=True)
class PulseInstruction:
    """One program step.

    ``angle`` carries the rotation angle, the dimensionless coupling angle
    pi*J*t, or the phase value, depending on ``kind``; spin and axis are
    set exactly for rotations.
    """

    kind: str
    spin: int | None = None
    axis: str | None = None
    angle: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown instruction kind {self.kind!r}")
        if self.kind == "rotation":
            if self.spin not in (1, 2):
                raise ValueError(f"rotation spin must be 1 or 2, got {self.spin}")
            if self.axis not in _AXES:
                raise ValueError(f"rotation axis must be y or z, got {self.axis!r}")
        elif self.spin is not None or self.axis is not None:
            raise ValueError(f"{self.kind} instructions take only an angle")
        if not math.isfinite(self.angle):
            raise ValueError("angle must be finite")


def rot(spin: int, axis: str, angle: float) -> PulseInstruction:
    return PulseInstruction("rotation", spin=spin, axis=axis, angle=angle)


def couple(angle: float) -> PulseInstruction:
    return PulseInstruction("coupling", angle=angle)


def phase(angle: float) -> PulseInstruction:
    return PulseInstruction("phase", angle=angle)


@dataclass(frozen=True)
class PulseProgram:
    """Time-ordered instruction list plus a human-readable target label."""

    instructions: tuple[PulseInstruction, ...]
    target: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "instructions", tuple(self.instructions))
        if not self.instructions:
            raise ValueError("a pulse program cannot be empty")


def pulse_angles(theta: float, which: int) -> tuple[float, float, float]:
    """Rotation angles (alpha, beta, gamma) of the hardware-style sequence.

    Valid for theta in [0, pi/6].  gamma is forced to 0 for which == 1; at
    theta = pi/6 the gamma formula's denominator vanishes with a negative
    numerator, and the one-sided limit gamma = 0 is returned.
    """
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which}")
    if not -1e-12 <= theta <= math.pi / 6 + 1e-12:
        raise ValueError(f"theta must lie in [0, pi/6], got {theta!r}")
    alpha = 0.5 * math.pi - 2.0 * theta
    beta = 0.5 * math.pi + theta
    if which == 1:
        gamma = 0.0
    else:
        den_sq = 4.0 * math.cos(2.0 * theta) ** 2 - 1.0
        if den_sq <= 1e-15:
            gamma = 0.0
        else:
            gamma = math.atan(math.cos(4.0 * theta) / math.sqrt(den_sq)) + 0.5 * math.pi
    return alpha, beta, gamma


def compile_controlled_s(which: int, theta: float, inverse: bool = False) -> PulseProgram:
    """Pulse program whose propagator is identity (+) rho(sigma_which).

    theta must lie in [0, pi/6]; with inverse=True the target block is the
    conjugate transpose.  The construction is exact, so verifying against
    the block target returns fidelity 1 up to floating-point rounding.
    """
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which}")
    if not -1e-12 <= theta <= math.pi / 6 + 1e-12:
        raise ValueError(f"theta must lie in [0, pi/6], got {theta!r}")
    params = ReprParams.from_theta(theta)
    s = rho_generator(BraidGenerator(which, -1 if inverse else 1), params)
    d0 = 0.5 * cmath.phase(complex(np.linalg.det(s)))
    su = cmath.exp(-1j * d0) * s
    b = 2.0 * math.atan2(abs(su[1, 0]), abs(su[0, 0]))
    half_sum = -cmath.phase(complex(su[0, 0])) if abs(su[0, 0]) > 1e-15 else 0.0
    half_diff = cmath.phase(complex(su[1, 0])) if abs(su[1, 0]) > 1e-15 else 0.0
    a = half_sum + half_diff
    c = half_sum - half_diff
    pi = math.pi
    instructions = (
        rot(2, "z", 0.5 * c),
        couple(-0.5 * c),
        rot(2, "y", 0.5 * b),
        rot(2, "z", -0.5 * pi),
        couple(-0.5 * pi),
        rot(2, "y", 0.5 * b),
        rot(2, "z", 0.5 * (a + pi)),
        couple(0.5 * (pi - a)),
        rot(1, "z", d0),
        phase(0.5 * d0),
    )
    label = f"controlled-s{which}" + ("^-1" if inverse else "") + f" theta={theta!r}"
    return PulseProgram(instructions, target=label)


def _instruction_propagator(instr: PulseInstruction) -> np.ndarray:
    if instr.kind == "rotation":
        half = 0.5 * instr.angle
        sigma = SIGMA_Y if instr.axis == "y" else SIGMA_Z
        r = math.cos(half) * np.eye(2, dtype=complex) - 1j * math.sin(half) * sigma
        return np.kron(r, np.eye(2)) if instr.spin == 1 else np.kron(np.eye(2), r)
    if instr.kind == "coupling":
        half = 0.5 * instr.angle
        return np.diag(np.exp(-1j * half * np.array([1.0, -1.0, -1.0, 1.0])))
    return cmath.exp(1j * instr.angle) * np.eye(4, dtype=complex)


def simulate_program(p: PulseProgram) -> np.ndarray:
    """Exact 4x4 propagator of the program (closed-form exponentials only)."""
    u = np.eye(4, dtype=complex)
    for instr in p.instructions:
        u = _instruction_propagator(instr) @ u
    return u


def verify_program(p: PulseProgram, target: np.ndarray) -> float:
    """Global-phase-invariant fidelity |trace(target^dagger * U_p)| / dim."""
    t = np.asarray(target, dtype=complex)
    u = simulate_program(p)
    if t.shape != u.shape:
        raise ValueError(f"dimension mismatch: target {t.shape}, program {u.shape}")
    return float(abs(np.trace(t.conj().T @ u)) / u.shape[0])


def format_program(p: PulseProgram) -> str:
    """One instruction per line; floats use repr so parsing is lossless."""
    lines = []
    for ins in p.instructions:
        if ins.kind == "rotation":
            lines.append(f"ROT spin={ins.spin} axis={ins.axis} angle={ins.angle!r}")
        elif ins.kind == "coupling":
            lines.append(f"COUPLE angle={ins.angle!r}")
        else:
            lines.append(f"PHASE angle={ins.angle!r}")
    return "\n".join(lines)


def parse_program(text: str, target: str = "") -> PulseProgram:
    """Inverse of format_program; blank lines are skipped."""
    instructions: list[PulseInstruction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split()
        try:
            kw = dict(f.split("=", 1) for f in fields[1:])
            if fields[0] == "ROT":
                instructions.append(rot(int(kw["spin"]), kw["axis"], float(kw["angle"])))
            elif fields[0] == "COUPLE":
                instructions.append(couple(float(kw["angle"])))
            elif fields[0] == "PHASE":
                instructions.append(phase(float(kw["angle"])))
            else:
                raise ValueError(f"unknown instruction {fields[0]!r}")
        except (KeyError, ValueError) as exc:
            raise ValueError(f"line {lineno}: cannot parse {line!r}: {exc}") from None
    return PulseProgram(tuple(instructions), target=target)
