import warnings
from functools import lru_cache

import pytest

from sgcount.derivation import cache_path, system_from_tally, tally_assignments
from sgcount.sequences import initial_vector, iterate
from sgcount.topology import build_schema

warnings.filterwarnings("ignore", message=".*TBB threading layer.*")


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    # derived fresh once per session, never taken from a user cache
    return tmp_path_factory.mktemp("systems")


@pytest.fixture(scope="session")
def tally():
    @lru_cache(maxsize=None)
    def get(d, b):
        return tally_assignments(build_schema(d, b))

    return get


@pytest.fixture(scope="session")
def system(cache_dir, tally):
    @lru_cache(maxsize=None)
    def get(d, b):
        s = system_from_tally(build_schema(d, b), tally(d, b))
        # seed the CLI cache so command tests reuse this derivation
        cache_path(cache_dir, d, b).write_text(s.to_json())
        return s

    return get


@pytest.fixture(scope="session")
def vectors(system):
    @lru_cache(maxsize=None)
    def get(d, b, stages):
        return tuple(iterate(system(d, b), initial_vector(d), stages))

    return get


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        terminalreporter.write_line(results[key])
