"""Desk-scale resource bounds for exhaustive scans over S_n."""

# Single pass over S_n (machine image tallies, counting scans).
SCAN_BOUND = 9

# Scans that pay a second factorial-ish factor (per-target fibers, closure tests).
PAIRWISE_BOUND = 8


class ResourceBoundError(RuntimeError):
    """An exhaustive operation was asked to exceed its desk-scale bound."""


def check_scan_bound(n: int, max_n: int, what: str) -> None:
    if n > max_n:
        raise ResourceBoundError(
            f"{what} requires n <= {max_n}, got n = {n}; "
            f"pass a larger max_n (or --unsafe-n) to override"
        )
