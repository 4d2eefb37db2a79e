import re

from hypothesis import settings

settings.register_profile("suite", max_examples=40, deadline=None)
settings.load_profile("suite")

_CRIT = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = _CRIT.search(getattr(rep, "nodeid", ""))
            if not m:
                continue
            key = int(m.group(1))
            prev = rows.get(key)
            ok = outcome == "passed" and (prev is None or prev[1])
            dur = (prev[2] if prev else 0.0) + getattr(rep, "duration", 0.0)
            rows[key] = (m.group(2).replace("_", " "), ok, dur)
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(rows):
        name, ok, dur = rows[key]
        terminalreporter.write_line(f"criterion {key:2d} {'PASS' if ok else 'FAIL'}  {name}  ({dur:.1f} s)")
