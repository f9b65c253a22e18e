from __future__ import annotations

from collections import defaultdict

import pytest

# criterion number -> list of (sub-check, ok, detail)
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = defaultdict(list)

TITLES = {
    1: "structure constants (Racah + Cartan-Weyl)",
    2: "metric / involution",
    3: "supertrace Casimirs",
    4: "characteristic identity",
    5: "invariant cross-validation grid",
    6: "hand values osp(1|2) > sp(2)",
    7: "operator-level invariants on osp(3|2)",
    8: "convention consistency osp(2|n)",
    9: "closed-form root regression",
}


class Recorder:
    def __init__(self, criterion: int):
        self.criterion = criterion

    def __call__(self, name: str, ok: bool, detail: str = "") -> bool:
        ACCEPTANCE[self.criterion].append((name, bool(ok), detail))
        return bool(ok)


@pytest.fixture
def record(request) -> Recorder:
    marker = request.node.get_closest_marker("criterion")
    return Recorder(marker.args[0])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def summary_lines() -> list[str]:
    lines = []
    for n in sorted(ACCEPTANCE):
        rows = ACCEPTANCE[n]
        failed = [r for r in rows if not r[1]]
        verdict = "PASS" if not failed else "FAIL"
        notes = "; ".join(f"{name}: {detail}".rstrip(": ") for name, _, detail in (failed or rows[-1:]))
        lines.append(f"criterion {n} {verdict:4} {TITLES[n]} [{len(rows) - len(failed)}/{len(rows)}] {notes}")
    return lines


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in summary_lines():
        terminalreporter.write_line(line)
