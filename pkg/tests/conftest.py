"""Shared fixtures: the full-size robustness scans are expensive (a few
seconds per schedule), so they are computed once per session and shared by
the pipeline and acceptance tests."""

from typing import Dict, List

import pytest

from groverlab.core import ScheduleKind
from groverlab.pipeline import RobustnessRecord, scan


@pytest.fixture(scope="session")
def full_scans() -> Dict[ScheduleKind, List[RobustnessRecord]]:
    kinds = (
        ScheduleKind.OPH,
        ScheduleKind.SPM,
        ScheduleKind.ACSP,
        ScheduleKind.ACBP,
        ScheduleKind.HIDP,
    )
    return {kind: scan(kind) for kind in kinds}
