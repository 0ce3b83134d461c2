import pytest
from hypothesis import HealthCheck, settings

# exact-arithmetic geometry is slow per example; never let the example
# clock interfere with shrinking
settings.register_profile(
    "torquot",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("torquot")

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: builds a large fan (minutes, not seconds)")
    config.addinivalue_line(
        "markers", "property: module-level invariant over sampled inputs")
    config.addinivalue_line(
        "markers", "acceptance: one end-to-end acceptance criterion")


def pytest_collection_modifyitems(config, items):
    # every hypothesis-driven test is a property test; mark them all so
    # `-m property` selects the whole invariant suite without decoration
    for item in items:
        fn = getattr(item, "obj", None)
        if fn is not None and getattr(fn, "hypothesis", None) is not None:
            item.add_marker(pytest.mark.property)


@pytest.fixture(scope="session")
def criteria_log():
    return _CRITERIA


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status, text = _CRITERIA[num]
        terminalreporter.write_line(
            f"CRITERION {num:>2}: {status} - {text}")
