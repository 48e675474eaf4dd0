import math

import numpy as np
import pytest

from groverlab.core import (
    TAU,
    IterationKernel,
    PhaseSchedule,
    ProblemSpec,
    ScheduleKind,
    apply_iteration,
    batch_success_probability,
    initial_reduced_state,
    optimal_iterations,
    phase_matching_angle,
    rotation_angle,
    schedule_phases,
    success_probability,
)


class TestProblemSpec:
    def test_accepts_valid_sizes(self):
        spec = ProblemSpec(9, 2)
        assert spec.register_size == 9
        assert spec.num_solutions == 2

    @pytest.mark.parametrize("size", [0, 1, -3])
    def test_rejects_tiny_registers(self, size):
        with pytest.raises(ValueError):
            ProblemSpec(size)

    def test_rejects_zero_solutions(self):
        with pytest.raises(ValueError):
            ProblemSpec(8, 0)

    def test_rejects_majority_solutions(self):
        # the reduced rotation picture needs M <= N/2
        with pytest.raises(ValueError):
            ProblemSpec(8, 5)


def test_rotation_angle_closed_form():
    spec = ProblemSpec(9)
    assert rotation_angle(spec) == pytest.approx(2.0 * math.asin(1.0 / 3.0), abs=1e-15)


def test_initial_state_lies_on_rotation_circle():
    spec = ProblemSpec(16, 3)
    half = rotation_angle(spec) / 2.0
    state = initial_reduced_state(spec)
    assert state.amp_alpha == pytest.approx(math.cos(half), abs=1e-15)
    assert state.amp_beta == pytest.approx(math.sin(half), abs=1e-15)
    assert abs(state.amp_beta) ** 2 == pytest.approx(3.0 / 16.0, abs=1e-15)


@pytest.mark.parametrize(
    ("size", "expected"),
    [(2, 1), (4, 1), (6, 1), (7, 2), (9, 2), (14, 2), (15, 3), (26, 4),
     (36, 4), (72, 6), (100, 7), (104, 8), (110, 8)],
)
def test_iteration_count_examples(size, expected):
    assert optimal_iterations(ProblemSpec(size)) == expected


def test_iteration_count_scales_with_solution_count():
    assert optimal_iterations(ProblemSpec(36, 4)) == 2
    assert optimal_iterations(ProblemSpec(100, 25)) == 1


class TestSchedulePhases:
    def test_constant_kinds_ignore_iteration_index(self):
        for kind in (ScheduleKind.OPH, ScheduleKind.SPM):
            schedule = PhaseSchedule(kind, 1.0, 2.5)
            assert [schedule_phases(schedule, j, 4) for j in range(4)] == [(1.0, 2.5)] * 4

    def test_alternating_diffusion_sign(self):
        schedule = PhaseSchedule(ScheduleKind.ACSP, 1.0, 2.5)
        got = [schedule_phases(schedule, j, 5) for j in range(5)]
        neg = TAU - 2.5
        assert got == [(1.0, 2.5), (1.0, neg), (1.0, 2.5), (1.0, neg), (1.0, 2.5)]

    def test_alternating_both_signs(self):
        schedule = PhaseSchedule(ScheduleKind.ACBP, 1.0, 2.5)
        got = [schedule_phases(schedule, j, 4) for j in range(4)]
        assert got == [
            (TAU - 1.0, 2.5),
            (1.0, TAU - 2.5),
            (TAU - 1.0, 2.5),
            (1.0, TAU - 2.5),
        ]

    def test_half_run_flip_even_length(self):
        schedule = PhaseSchedule(ScheduleKind.HIDP, 1.0, 2.5)
        got = [schedule_phases(schedule, j, 4) for j in range(4)]
        assert got == [
            (1.0, TAU - 2.5),
            (1.0, TAU - 2.5),
            (TAU - 1.0, 2.5),
            (TAU - 1.0, 2.5),
        ]

    def test_half_run_flip_odd_length_front_loads_extra_step(self):
        schedule = PhaseSchedule(ScheduleKind.HIDP, 1.0, 2.5)
        got = [schedule_phases(schedule, j, 5) for j in range(5)]
        first, second = (1.0, TAU - 2.5), (TAU - 1.0, 2.5)
        assert got == [first, first, first, second, second]

    def test_negation_is_modular(self):
        # sign flips stay in [0, 2*pi); zero maps to itself
        schedule = PhaseSchedule(ScheduleKind.ACBP, 0.0, 0.0)
        assert schedule_phases(schedule, 0, 2) == (0.0, 0.0)

    def test_custom_pairs_are_returned_verbatim(self):
        pairs = ((0.1, 0.2), (0.3, 0.4))
        schedule = PhaseSchedule(ScheduleKind.CUSTOM, custom_pairs=pairs)
        assert schedule_phases(schedule, 1, 2) == (0.3, 0.4)

    def test_custom_length_mismatch(self):
        schedule = PhaseSchedule(ScheduleKind.CUSTOM, custom_pairs=((0.1, 0.2),))
        with pytest.raises(ValueError):
            schedule_phases(schedule, 0, 3)

    def test_index_bounds(self):
        schedule = PhaseSchedule(ScheduleKind.OPH)
        with pytest.raises(IndexError):
            schedule_phases(schedule, 4, 4)
        with pytest.raises(IndexError):
            schedule_phases(schedule, -1, 4)

    def test_kernel_follows_kind(self):
        assert PhaseSchedule(ScheduleKind.SPM).kernel is IterationKernel.MINUS
        assert PhaseSchedule(ScheduleKind.OPH).kernel is IterationKernel.PLUS
        assert PhaseSchedule(ScheduleKind.HIDP).kernel is IterationKernel.PLUS


class TestSuccessProbability:
    def test_exact_phases_small_register(self):
        # N=4 reaches certainty in a single ordinary iteration
        spec = ProblemSpec(4)
        schedule = PhaseSchedule(ScheduleKind.OPH, math.pi, math.pi)
        assert success_probability(spec, schedule) == pytest.approx(1.0, abs=1e-14)

    def test_zero_phases_do_nothing(self):
        spec = ProblemSpec(9)
        schedule = PhaseSchedule(ScheduleKind.OPH, 0.0, 0.0)
        assert success_probability(spec, schedule, iters=5) == pytest.approx(
            1.0 / 9.0, abs=1e-14
        )

    def test_zero_iterations_returns_initial_overlap(self):
        spec = ProblemSpec(10, 3)
        schedule = PhaseSchedule(ScheduleKind.OPH)
        assert success_probability(spec, schedule, iters=0) == pytest.approx(
            0.3, abs=1e-15
        )

    def test_rotation_formula_at_exact_phases(self):
        schedule = PhaseSchedule(ScheduleKind.OPH, math.pi, math.pi)
        for size in (5, 17, 60, 110):
            spec = ProblemSpec(size)
            k = optimal_iterations(spec)
            expected = math.sin((2 * k + 1) * rotation_angle(spec) / 2.0) ** 2
            assert success_probability(spec, schedule) == pytest.approx(
                expected, abs=1e-13
            )

    def test_conjugation_symmetry(self):
        # flipping both phase signs conjugates the evolution, so p is unchanged
        spec = ProblemSpec(23)
        rng = np.random.default_rng(5)
        for kind in (ScheduleKind.OPH, ScheduleKind.ACSP, ScheduleKind.HIDP):
            phi, omega = rng.uniform(0.0, TAU, 2)
            p1 = success_probability(spec, PhaseSchedule(kind, phi, omega))
            p2 = success_probability(
                spec, PhaseSchedule(kind, (-phi) % TAU, (-omega) % TAU)
            )
            assert p1 == pytest.approx(p2, abs=1e-13)

    def test_kernel_duality_scalar(self):
        spec = ProblemSpec(12)
        phi, omega = 2.2, 0.9
        minus = success_probability(spec, PhaseSchedule(ScheduleKind.SPM, phi, omega))
        plus = success_probability(
            spec, PhaseSchedule(ScheduleKind.OPH, phi, TAU - omega)
        )
        assert minus == pytest.approx(plus, abs=1e-14)

    def test_negative_iterations_rejected(self):
        with pytest.raises(ValueError):
            success_probability(ProblemSpec(4), PhaseSchedule(ScheduleKind.OPH), iters=-1)


class TestBatchProbability:
    def test_matches_scalar_path(self):
        spec = ProblemSpec(19)
        rng = np.random.default_rng(11)
        phis = rng.uniform(0.0, TAU, 40)
        omegas = rng.uniform(0.0, TAU, 40)
        for kind in (ScheduleKind.OPH, ScheduleKind.SPM, ScheduleKind.ACBP):
            schedule = PhaseSchedule(kind)
            batch = batch_success_probability(spec, schedule, phis, omegas)
            for i in range(40):
                single = success_probability(
                    spec, PhaseSchedule(kind, phis[i], omegas[i])
                )
                assert batch[i] == pytest.approx(single, abs=1e-13)

    def test_broadcasts_scalar_argument(self):
        spec = ProblemSpec(9)
        schedule = PhaseSchedule(ScheduleKind.OPH)
        phis = np.linspace(0.0, TAU, 7)
        batch = batch_success_probability(spec, schedule, phis, math.pi)
        assert batch.shape == (7,)

    def test_zero_iterations(self):
        spec = ProblemSpec(8, 2)
        out = batch_success_probability(
            spec, PhaseSchedule(ScheduleKind.OPH), np.array([1.0]), np.array([2.0]),
            iters=0,
        )
        assert out[0] == pytest.approx(0.25, abs=1e-15)

    def test_rejects_custom_schedules(self):
        schedule = PhaseSchedule(ScheduleKind.CUSTOM, custom_pairs=((1.0, 1.0),))
        with pytest.raises(ValueError):
            batch_success_probability(
                ProblemSpec(4), schedule, np.array([1.0]), np.array([1.0])
            )


def test_apply_iteration_preserves_norm():
    spec = ProblemSpec(30, 4)
    theta = rotation_angle(spec)
    state = initial_reduced_state(spec)
    rng = np.random.default_rng(3)
    for _ in range(6):
        phi, omega = rng.uniform(0.0, TAU, 2)
        state = apply_iteration(state, theta, phi, omega, IterationKernel.PLUS)
        norm = abs(state.amp_alpha) ** 2 + abs(state.amp_beta) ** 2
        assert norm == pytest.approx(1.0, abs=1e-12)


class TestPhaseMatching:
    def test_small_register_angle_is_pi(self):
        result = phase_matching_angle(ProblemSpec(4))
        # arcsin rounding keeps the angle a few 1e-8 shy of pi exactly
        assert result.angle == pytest.approx(math.pi, abs=1e-7)
        assert result.iterations == 1
        assert result.probability == pytest.approx(1.0, abs=1e-12)

    def test_matched_run_is_certain(self):
        for size in (7, 9, 33, 110):
            spec = ProblemSpec(size)
            result = phase_matching_angle(spec)
            assert result.branch == "formula"
            assert result.probability == pytest.approx(1.0, abs=1e-10)

    def test_matched_pair_also_works_for_negative_kernel(self):
        spec = ProblemSpec(9)
        result = phase_matching_angle(spec)
        schedule = PhaseSchedule(
            ScheduleKind.SPM, result.angle, (-result.angle) % TAU
        )
        p = success_probability(spec, schedule, iters=result.iterations)
        assert p == pytest.approx(1.0, abs=1e-10)
