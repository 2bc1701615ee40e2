import functools

import pytest

from chordpi import Catalog, CatalogConfig, ChordSelector, Frame, build_catalog


@functools.lru_cache(maxsize=None)
def cached_catalog(n: int, steps: tuple = None, frame: Frame = Frame.SIDE,
                   include_vertices: bool = True) -> Catalog:
    selector = ChordSelector.all_chords() if steps is None else ChordSelector.of_steps(steps)
    return build_catalog(CatalogConfig(n, selector, frame, include_vertices))


@pytest.fixture(scope="session")
def catalog12() -> Catalog:
    return cached_catalog(12)


# one human-readable verdict line per acceptance criterion, echoed after the
# test summary so they survive output capture
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
