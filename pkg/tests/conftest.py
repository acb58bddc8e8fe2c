import re

CRITERION_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    results = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if outcome == "passed" and getattr(report, "when", "call") != "call":
                continue
            match = CRITERION_PATTERN.search(getattr(report, "nodeid", ""))
            if match:
                number = int(match.group(1))
                label = match.group(2).replace("_", " ")
                verdict = "PASS" if outcome == "passed" else "FAIL"
                results[number] = (label, verdict)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            label, verdict = results[number]
            terminalreporter.write_line(f"criterion {number} ({label}): {verdict}")
