import numpy as np
import pytest

from groverlab.core import (
    TAU,
    PhaseSchedule,
    ScheduleKind,
    batch_success_probability,
)
from groverlab.verify import (
    run_suites,
    suite_names,
    verify_analytic_n9,
    verify_closed_form,
    verify_duality,
    verify_equivalences,
    verify_oracle_equivalence,
    verify_phase_matching,
)


def test_registry_names_are_stable():
    assert suite_names() == (
        "analytic-n9",
        "closed-form",
        "oracle-equivalence",
        "duality",
        "equivalences",
        "phase-matching",
    )


def test_all_suites_pass():
    results = run_suites()
    assert [r.name for r in results] == list(suite_names())
    for result in results:
        assert result.passed, result.summary_line()


def test_analytic_suite_counts():
    result = verify_analytic_n9()
    assert result.checks == 4 * 64
    assert result.failures == 0
    # printed 5-decimal coefficients limit the agreement
    assert 1e-6 < result.max_error < 5e-4


def test_closed_form_is_tight():
    result = verify_closed_form()
    assert result.checks == 109
    assert result.max_error < 1e-12


def test_oracle_case_count_meets_floor():
    result = verify_oracle_equivalence()
    assert result.checks >= 6000
    assert result.failures == 0
    assert result.max_error < 1e-10


def test_equivalences_cover_both_sizes():
    result = verify_equivalences()
    assert result.checks == 10 * 25 * 25 * 2
    assert result.failures == 0
    assert result.max_error < 1e-12


def test_phase_matching_reports_fallbacks():
    result = verify_phase_matching()
    assert result.failures == 0
    assert "numeric-fallback sizes:" in result.note


def test_duality_negative_control():
    def kernel_blind(spec, kind, phis, omegas, iters):
        # deliberately ignores the kernel sign: the minus variant is
        # evaluated as plus, which breaks the mirror identity
        if kind is ScheduleKind.SPM:
            kind = ScheduleKind.OPH
        return batch_success_probability(
            spec, PhaseSchedule(kind), phis, omegas, iters=iters
        )

    result = run_suites(["duality"], duality_probability_fn=kernel_blind)[0]
    assert not result.passed
    assert result.failures > 1000
    assert result.max_error > 0.1


def test_suite_filter_and_unknown_name():
    results = run_suites(["closed-form"])
    assert len(results) == 1 and results[0].name == "closed-form"
    with pytest.raises(ValueError, match="unknown suite"):
        run_suites(["closed-form", "bogus"])


def test_summary_line_shape():
    result = verify_closed_form()
    line = result.summary_line()
    assert line.startswith("closed-form: PASS (109 checks")
