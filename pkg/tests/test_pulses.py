import math

import numpy as np
import pytest

from braidjones.braid import BraidGenerator
from braidjones.nmr import controlled_u
from braidjones.pulses import (
    PulseInstruction,
    PulseProgram,
    compile_controlled_s,
    couple,
    format_program,
    parse_program,
    phase,
    pulse_angles,
    rot,
    simulate_program,
    verify_program,
)
from braidjones.tlrep import ReprParams, rho_generator


def _target(which, theta, inverse=False):
    params = ReprParams.from_theta(theta)
    s = rho_generator(BraidGenerator(which, -1 if inverse else 1), params)
    return controlled_u(s)


def test_pulse_angles_at_zero():
    alpha, beta, gamma = pulse_angles(0.0, 2)
    assert abs(alpha - math.pi / 2) < 1e-12
    assert abs(beta - math.pi / 2) < 1e-12
    assert abs(gamma - 2 * math.pi / 3) < 1e-12


def test_pulse_angles_gamma_zero_for_first_generator():
    for theta in (0.0, 0.1, math.pi / 6):
        assert pulse_angles(theta, 1)[2] == 0.0


def test_pulse_angles_endpoint_limit():
    assert pulse_angles(math.pi / 6, 2)[2] == 0.0


def test_pulse_angles_domain():
    with pytest.raises(ValueError, match="which"):
        pulse_angles(0.1, 3)
    with pytest.raises(ValueError, match="theta"):
        pulse_angles(math.pi / 4, 2)
    with pytest.raises(ValueError, match="theta"):
        pulse_angles(-0.1, 2)


def test_pulse_angles_gamma_continuity():
    # gamma has a square-root cusp at pi/6 (gamma ~ 5.3*sqrt(pi/6 - theta)),
    # so a 1e-4-spaced scan sees steps up to ~5.3e-2 near the endpoint; a
    # 1e-8-spaced scan at the endpoint confirms continuity there
    thetas = [k * 1e-4 for k in range(int(math.pi / 6 / 1e-4) + 1)] + [math.pi / 6]
    values = [pulse_angles(t, 2)[2] for t in thetas]
    steps = np.abs(np.diff(values))
    assert steps.max() < 6e-2
    away_from_cusp = steps[: -int(1e-3 / 1e-4)]
    assert away_from_cusp.max() < 1e-2
    fine = [math.pi / 6 - k * 1e-8 for k in range(10, -1, -1)]
    fine_steps = np.abs(np.diff([pulse_angles(t, 2)[2] for t in fine]))
    assert fine_steps.max() < 1e-3


def test_instruction_validation():
    with pytest.raises(ValueError, match="kind"):
        PulseInstruction("wiggle", angle=1.0)
    with pytest.raises(ValueError, match="axis"):
        rot(2, "x", 1.0)
    with pytest.raises(ValueError, match="spin"):
        rot(3, "y", 1.0)
    with pytest.raises(ValueError, match="only an angle"):
        PulseInstruction("coupling", spin=2, angle=1.0)
    with pytest.raises(ValueError, match="empty"):
        PulseProgram(())


def test_simulate_phase_instruction():
    program = PulseProgram((phase(0.7),))
    assert np.allclose(
        simulate_program(program), np.exp(0.7j) * np.eye(4), atol=1e-12
    )


def test_simulate_pi_rotation_on_spin_two():
    program = PulseProgram((rot(2, "y", math.pi),))
    block = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert np.allclose(simulate_program(program), np.kron(np.eye(2), block), atol=1e-12)


def test_simulate_pi_coupling():
    program = PulseProgram((couple(math.pi),))
    expected = np.diag(np.exp(-0.5j * math.pi * np.array([1.0, -1.0, -1.0, 1.0])))
    assert np.allclose(simulate_program(program), expected, atol=1e-12)


def test_simulate_is_time_ordered():
    # y then z must equal Rz @ Ry on spin 2
    program = PulseProgram((rot(2, "y", 0.5), rot(2, "z", 0.8)))
    ry = simulate_program(PulseProgram((rot(2, "y", 0.5),)))
    rz = simulate_program(PulseProgram((rot(2, "z", 0.8),)))
    assert np.allclose(simulate_program(program), rz @ ry, atol=1e-12)


def test_compiled_cs1_at_zero_is_controlled_z():
    program = compile_controlled_s(1, 0.0)
    sim = simulate_program(program)
    aligned = sim / sim[0, 0]
    assert np.allclose(aligned, np.diag([1.0, 1.0, -1.0, 1.0]), atol=1e-10)


def test_compiled_fidelity_across_range():
    for which in (1, 2):
        for k in range(25):
            theta = k * (math.pi / 6) / 24
            program = compile_controlled_s(which, theta)
            assert verify_program(program, _target(which, theta)) >= 1.0 - 1e-10


def test_compiled_inverse_fidelity():
    program = compile_controlled_s(2, math.pi / 12, inverse=True)
    assert verify_program(program, _target(2, math.pi / 12, inverse=True)) >= 1.0 - 1e-10


def test_forward_inverse_composes_to_identity():
    for which in (1, 2):
        fwd = compile_controlled_s(which, math.pi / 12)
        bwd = compile_controlled_s(which, math.pi / 12, inverse=True)
        both = PulseProgram(fwd.instructions + bwd.instructions)
        assert verify_program(both, np.eye(4)) >= 1.0 - 1e-10


def test_compile_validates_arguments():
    with pytest.raises(ValueError, match="which"):
        compile_controlled_s(0, 0.1)
    with pytest.raises(ValueError, match="theta"):
        compile_controlled_s(1, 1.0)


def test_verify_program_properties():
    program = compile_controlled_s(2, math.pi / 12)
    target = _target(2, math.pi / 12)
    assert verify_program(program, target) == pytest.approx(1.0, abs=1e-12)
    assert verify_program(program, np.exp(0.3j) * target) == pytest.approx(1.0, abs=1e-12)
    assert verify_program(program, np.eye(4)) < 1.0 - 1e-3
    with pytest.raises(ValueError, match="mismatch"):
        verify_program(program, np.eye(2))


def test_program_print_parse_round_trip():
    for which in (1, 2):
        for theta in (0.0, 0.2, math.pi / 6):
            program = compile_controlled_s(which, theta)
            parsed = parse_program(format_program(program))
            assert parsed.instructions == program.instructions


def test_parse_program_errors():
    with pytest.raises(ValueError, match="line 1"):
        parse_program("WOBBLE angle=1.0")
    with pytest.raises(ValueError, match="line 2"):
        parse_program("PHASE angle=0.5\nROT spin=2 angle=1.0")
