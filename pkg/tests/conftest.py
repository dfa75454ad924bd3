import os

from hypothesis import HealthCheck, settings

settings.register_profile("artifact", max_examples=60, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "artifact"))

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {note}")
