from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from lgk import (
    Alphabet,
    LabeledGraph,
    MarkovDyck,
    SftForbidden,
    SoficGraph,
    from_names,
)

# Derandomized so the suite is reproducible run to run; individual tests
# that need more examples override locally.
settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")

FIB = ((1, 1), (1, 0))


def golden_mean_spec() -> SftForbidden:
    ab = Alphabet(("0", "1"))
    return SftForbidden(ab, frozenset({(1, 1)}))


def even_shift_graph() -> LabeledGraph:
    # Fischer cover of the even shift: runs of 0s between 1s have even
    # length.  Left-resolving: u has in-edges labeled 1 (from u) and 0
    # (from w); w only the 0 from u.
    ab = Alphabet(("0", "1"))
    return from_names(ab, ("u", "w"), [("u", "1", "u"), ("u", "0", "w"), ("w", "0", "u")])


def even_shift_spec() -> SoficGraph:
    return SoficGraph(even_shift_graph())


def fibonacci_dyck_spec() -> MarkovDyck:
    return MarkovDyck(FIB)


@pytest.fixture
def golden_mean() -> SftForbidden:
    return golden_mean_spec()


@pytest.fixture
def even_shift() -> SoficGraph:
    return even_shift_spec()
