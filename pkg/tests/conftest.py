import pytest

from librelog.synthetic import generate_corpus


@pytest.fixture
def small_corpus():
    return generate_corpus(n_templates=5, n_lines=200, seed=3)


class GarbageBackend:
    """Answers every prompt with unusable text."""

    def __init__(self, text="???"):
        self.text = text
        self.calls = 0

    def complete(self, prompt):
        from librelog.llm_backend import CompletionResult

        self.calls += 1
        return CompletionResult(self.text, 0.0)


@pytest.fixture
def garbage_backend():
    return GarbageBackend()


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _acceptance[name] = "SKIP" if report.skipped else ("PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{outcome:4}  {name}")
