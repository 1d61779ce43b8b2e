import time
from contextlib import contextmanager

import pytest
from hypothesis import strategies as st

_ACCEPTANCE: list[tuple[int, str, float, str]] = []


@pytest.fixture
def criterion():
    """Context manager recording one acceptance criterion's verdict."""

    @contextmanager
    def _record(num: int, label: str):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException:
            _ACCEPTANCE.append((num, label, time.perf_counter() - t0, "FAIL"))
            raise
        _ACCEPTANCE.append((num, label, time.perf_counter() - t0, "PASS"))

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, label, secs, status in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num:>2} {status:<4} ({secs:6.1f}s)  {label}")


# --- shared hypothesis strategies -----------------------------------------

def permutations_up_to(max_n: int, min_n: int = 0):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations(list(range(1, n + 1)))
    ).map(tuple)


def pattern_bodies(max_len: int = 4):
    return st.integers(2, max_len).flatmap(
        lambda k: st.permutations(list(range(1, k + 1)))
    ).map(tuple)


def _tree_to_dyck(tree) -> str:
    if tree is None:
        return ""
    left, right = tree
    return "U" + _tree_to_dyck(left) + "D" + _tree_to_dyck(right)


def dyck_words(max_semilength: int = 8):
    trees = st.recursive(st.none(), lambda c: st.tuples(c, c), max_leaves=max_semilength + 1)
    return trees.map(_tree_to_dyck)
