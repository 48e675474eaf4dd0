import json
import math

import pytest

from groverlab.core import ScheduleKind
from groverlab.pipeline import (
    RECORD_COLUMNS,
    RobustnessRecord,
    iteration_breakpoints,
    load_records,
    report_to_dict,
    save_records,
    save_report,
    scan,
    select_dependences,
    summarize,
)
from groverlab.sweep import Dependence


def _record(size, kind=ScheduleKind.OPH, dep=Dependence.OMEGA_EQ_PHI, *,
            iterations=2, half_width=1.0, converged=True):
    return RobustnessRecord(
        register_size=size,
        num_solutions=1,
        schedule=kind,
        dependence=dep,
        iterations=iterations,
        height=0.9,
        half_width=half_width,
        steepness=4.0,
        center=math.pi,
        sigma=0.03,
        converged=converged,
    )


class TestScan:
    def test_small_scan_contents(self):
        records = scan(
            ScheduleKind.OPH,
            size_min=9,
            size_max=12,
            dependences=(Dependence.OMEGA_EQ_PHI, Dependence.OMEGA_EQ_PI),
            samples=301,
        )
        assert len(records) == 8
        assert records == sorted(records, key=lambda r: r.sort_key())
        assert all(r.converged for r in records)
        nine = records[0]
        assert nine.register_size == 9 and nine.iterations == 2
        # the bell fit centres on the exact-phase peak
        assert nine.center == pytest.approx(math.pi, abs=0.05)

    def test_scan_is_deterministic(self):
        kwargs = dict(
            size_min=7,
            size_max=16,
            dependences=(Dependence.OMEGA_EQ_2PI_MINUS_PHI,),
            samples=301,
        )
        assert scan(ScheduleKind.ACSP, **kwargs) == scan(ScheduleKind.ACSP, **kwargs)

    def test_scan_rejects_custom(self):
        with pytest.raises(ValueError):
            scan(ScheduleKind.CUSTOM, size_min=9, size_max=10)

    def test_scan_validates_range(self):
        with pytest.raises(ValueError):
            scan(ScheduleKind.OPH, size_min=10, size_max=9)
        with pytest.raises(ValueError):
            scan(ScheduleKind.OPH, size_min=9, size_max=10, dependences=())

    def test_one_phase_patterns_coincide_on_fixed_oracle_line(self):
        # with the oracle phase pinned at pi, sign flips on it are invisible,
        # so the two alternating schedules produce identical records
        kwargs = dict(
            size_min=9, size_max=14, dependences=(Dependence.PHI_EQ_PI,), samples=301
        )
        a = scan(ScheduleKind.ACSP, **kwargs)
        b = scan(ScheduleKind.ACBP, **kwargs)
        for ra, rb in zip(a, b):
            assert ra.height == rb.height
            assert ra.half_width == rb.half_width
            assert ra.steepness == rb.steepness
            assert ra.sigma == rb.sigma


class TestRecordsCsv:
    def test_round_trip_is_exact(self, tmp_path):
        records = scan(
            ScheduleKind.HIDP,
            size_min=9,
            size_max=12,
            dependences=(Dependence.OMEGA_EQ_PHI,),
            samples=301,
        )
        path = tmp_path / "records.csv"
        save_records(records, path)
        assert load_records(path) == records

    def test_header_and_determinism(self, tmp_path):
        records = [_record(9), _record(10)]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        save_records(records, a)
        save_records(records, b)
        assert a.read_bytes() == b.read_bytes()
        header = a.read_text().splitlines()[0]
        assert header == ",".join(RECORD_COLUMNS) == (
            "N,M,schedule,dependence,k_iter,b,k,n,c,sigma,converged"
        )

    def test_header_only_file_loads_empty(self, tmp_path):
        path = tmp_path / "empty.csv"
        save_records([], path)
        assert load_records(path) == []

    def test_wrong_header_is_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n")
        with pytest.raises(ValueError, match="header"):
            load_records(path)

    def test_malformed_row_reports_line_number(self, tmp_path):
        path = tmp_path / "bad.csv"
        save_records([_record(9)], path)
        with open(path, "a") as fh:
            fh.write("9,1,oph,omega-eq-phi,2,nope,1,1,3.14,0.1,true\n")
        with pytest.raises(ValueError, match="line 3"):
            load_records(path)

    def test_unknown_schedule_name_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        save_records([], path)
        with open(path, "a") as fh:
            fh.write("9,1,zzz,omega-eq-phi,2,0.9,1,4,3.14,0.1,true\n")
        with pytest.raises(ValueError, match="line 2"):
            load_records(path)


class TestBreakpoints:
    def test_steps_up_are_flagged(self):
        records = [
            _record(9, iterations=2),
            _record(10, iterations=2),
            _record(11, iterations=3),
            _record(15, iterations=3),
            _record(16, iterations=4),
        ]
        assert iteration_breakpoints(records) == (11, 16)

    def test_conflicting_counts_rejected(self):
        records = [
            _record(9, iterations=2),
            _record(9, dep=Dependence.OMEGA_EQ_PI, iterations=3),
        ]
        with pytest.raises(ValueError, match="conflicting"):
            iteration_breakpoints(records)


class TestSelectDependences:
    def test_fixed_choices(self):
        assert select_dependences([], ScheduleKind.OPH) == (
            Dependence.OMEGA_EQ_PHI,
            Dependence.OMEGA_EQ_2PI_MINUS_PHI,
        )
        assert select_dependences([], ScheduleKind.SPM) == (
            Dependence.OMEGA_EQ_2PI_MINUS_PHI,
            Dependence.OMEGA_EQ_PHI,
        )
        assert select_dependences([], ScheduleKind.ACSP) == (
            Dependence.PHI_EQ_PI,
            Dependence.OMEGA_EQ_PI,
        )

    def test_data_driven_fragile_side(self):
        kind = ScheduleKind.ACBP
        records = [
            _record(100, kind, Dependence.OMEGA_EQ_PHI, half_width=0.4),
            _record(100, kind, Dependence.OMEGA_EQ_2PI_MINUS_PHI, half_width=0.9),
        ]
        assert select_dependences(records, kind) == (
            Dependence.PHI_EQ_PI,
            Dependence.OMEGA_EQ_PHI,
        )

    def test_unconverged_candidates_are_rejected(self):
        kind = ScheduleKind.HIDP
        records = [
            _record(100, kind, Dependence.OMEGA_EQ_PHI, converged=False),
            _record(100, kind, Dependence.OMEGA_EQ_PI, half_width=0.5),
            _record(100, kind, Dependence.PHI_EQ_PI, half_width=0.6),
        ]
        with pytest.raises(ValueError, match="no converged records"):
            select_dependences(records, kind)


class TestSummarize:
    def test_insufficient_records_are_reported(self):
        records = [_record(size) for size in (9, 10, 11)]
        records += [
            _record(size, dep=Dependence.OMEGA_EQ_2PI_MINUS_PHI)
            for size in (9, 10, 11)
        ]
        with pytest.raises(ValueError, match="insufficient converged records"):
            summarize(records)

    def test_report_structure_and_save(self, tmp_path, full_scans):
        records = full_scans[ScheduleKind.OPH]
        report = summarize(records, target_size=1000.0)
        doc = report_to_dict(report)
        assert doc["target_size"] == 1000.0
        assert doc["ranking"] == ["oph"]
        assert [s["role"] for s in doc["summaries"]] == ["best", "worst"]
        for summary in doc["summaries"]:
            for series in ("half_width", "height", "steepness"):
                assert "extrapolated" in summary[series]
                assert summary[series]["converged"] is True
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        save_report(report, a)
        save_report(report, b)
        assert a.read_bytes() == b.read_bytes()
        assert json.loads(a.read_text())["ranking"] == ["oph"]

    def test_ranking_orders_by_extrapolated_width(self, full_scans):
        records = [
            r
            for kind in (ScheduleKind.OPH, ScheduleKind.HIDP)
            for r in full_scans[kind]
        ]
        report = summarize(records)
        # the constant schedule keeps the widest robust plateau at large sizes
        assert report.ranking == (ScheduleKind.OPH, ScheduleKind.HIDP)
