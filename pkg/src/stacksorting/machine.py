"""Right-greedy stack machines driven by forbidden stack patterns.

A machine pushes the next input entry whenever the resulting stack, read from
top to bottom, avoids every forbidden pattern; otherwise it pops the top entry
to the output.  Once the input is exhausted the stack is drained.  Because the
current stack always avoids the forbidden patterns, a push can only be illegal
through an occurrence whose first entry is the incoming one, which is what the
compiled deciders below test.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .permutations import (
    PatternSpec,
    Perm,
    ascending_runs,
    classical,
    consecutive,
    descending_runs,
    occurs_with_first_entry,
    run_ends,
    run_interior,
)


@dataclass(frozen=True)
class MachineSpec:
    """The forbidden patterns of one right-greedy stack machine."""

    forbidden: tuple[PatternSpec, ...]

    def __post_init__(self):
        pats = tuple(self.forbidden)
        if not pats:
            raise ValueError("a machine needs at least one forbidden pattern")
        if not all(isinstance(p, PatternSpec) for p in pats):
            raise ValueError("forbidden entries must be PatternSpec values")
        object.__setattr__(self, "forbidden", pats)

    def __str__(self) -> str:
        return "machine{" + ", ".join(str(p) for p in self.forbidden) + "}"


def consecutive_machine(*bodies: Iterable[int]) -> MachineSpec:
    """Stack must avoid each body as a consecutive pattern."""
    return MachineSpec(tuple(consecutive(b) for b in bodies))


def classical_machine(*bodies: Iterable[int]) -> MachineSpec:
    """Stack must avoid each body as a classical pattern."""
    return MachineSpec(tuple(classical(b) for b in bodies))


def machine_of(patterns: Iterable[PatternSpec]) -> MachineSpec:
    return MachineSpec(tuple(patterns))


# ---------------------------------------------------------------------------
# push deciders
# ---------------------------------------------------------------------------

def _push_blocked_reference(spec: MachineSpec, stack: Sequence[int], c: int) -> bool:
    """Would pushing c create a forbidden occurrence?  (reference decider)

    The stack is given bottom-to-top; the hypothetical stack reading is c
    followed by the current entries from top to bottom.  Any new occurrence
    must start at c, so only occurrences with first entry c are searched.
    """
    host = (c, *reversed(stack))
    return any(occurs_with_first_entry(host, p) for p in spec.forbidden)


@lru_cache(maxsize=None)
def _compiled_runner(spec: MachineSpec) -> Callable[[Sequence[int]], Perm]:
    """Build a fast closure computing the machine image of a permutation."""
    pats = spec.forbidden

    if all(p.is_consecutive for p in pats):
        if len(pats) == 1 and len(pats[0].body) == 3:
            b = pats[0].body
            b01, b02, b12 = b[0] < b[1], b[0] < b[2], b[1] < b[2]

            def run_consec3(perm):
                stack: list[int] = []
                out: list[int] = []
                d = 0
                for c in perm:
                    while d >= 2:
                        t1 = stack[-1]
                        t2 = stack[-2]
                        if (c < t1) == b01 and (c < t2) == b02 and (t1 < t2) == b12:
                            out.append(stack.pop())
                            d -= 1
                        else:
                            break
                    stack.append(c)
                    d += 1
                while stack:
                    out.append(stack.pop())
                return tuple(out)

            return run_consec3

        rels = tuple((len(p.body), _pairs(p.body)) for p in pats)

        def run_consecutive(perm):
            stack: list[int] = []
            out: list[int] = []
            d = 0
            for c in perm:
                popped = True
                while popped:
                    popped = False
                    for k, rel in rels:
                        if d < k - 1:
                            continue
                        hit = True
                        for i, j, less in rel:
                            wi = c if i == 0 else stack[-i]
                            wj = stack[-j]
                            if (wi < wj) != less:
                                hit = False
                                break
                        if hit:
                            out.append(stack.pop())
                            d -= 1
                            popped = True
                            break
                stack.append(c)
                d += 1
            while stack:
                out.append(stack.pop())
            return tuple(out)

        return run_consecutive

    if len(pats) == 1 and pats[0].is_classical and len(pats[0].body) == 3:
        b = pats[0].body
        p_above = b[0] < b[1]   # relation of the middle occurrence entry to c
        q_above = b[0] < b[2]   # relation of the last occurrence entry to c
        p_gt_q = b[1] > b[2]

        def run_classical3(perm):
            stack: list[int] = []
            out: list[int] = []
            for c in perm:
                while stack:
                    # scan top to bottom for entries v_p, v_q (p above q) with
                    # the relative order of (c, v_p, v_q) matching the body
                    best = None
                    hit = False
                    for idx in range(len(stack) - 1, -1, -1):
                        v = stack[idx]
                        if (
                            best is not None
                            and (v > c) == q_above
                            and ((best > v) if p_gt_q else (best < v))
                        ):
                            hit = True
                            break
                        if (v > c) == p_above and (
                            best is None or ((v > best) if p_gt_q else (v < best))
                        ):
                            best = v
                    if hit:
                        out.append(stack.pop())
                    else:
                        break
                stack.append(c)
            while stack:
                out.append(stack.pop())
            return tuple(out)

        return run_classical3

    def run_generic(perm):
        stack: list[int] = []
        out: list[int] = []
        for c in perm:
            while stack and _push_blocked_reference(spec, stack, c):
                out.append(stack.pop())
            stack.append(c)
        while stack:
            out.append(stack.pop())
        return tuple(out)

    return run_generic


def _pairs(body: Sequence[int]):
    k = len(body)
    return tuple((i, j, body[i] < body[j]) for i in range(k) for j in range(i + 1, k))


def run(spec: MachineSpec, perm: Sequence[int]) -> Perm:
    """Send a permutation through the machine and return the output.

    >>> run(consecutive_machine((2, 3, 1)), (2, 6, 5, 4, 1, 3))
    (6, 5, 3, 1, 4, 2)
    """
    return _compiled_runner(spec)(tuple(perm))


# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TraceStep:
    kind: str  # "push" | "pop"
    value: int
    stack_after: Perm | None  # read top to bottom; None when not recorded


def trace(spec: MachineSpec, perm: Sequence[int], record_stacks: bool = True) -> list[TraceStep]:
    """The full push/pop sequence of one machine run.

    Uses the reference decider; agreement with the compiled runners is part of
    the test suite.
    """
    steps: list[TraceStep] = []
    stack: list[int] = []

    def snap() -> Perm | None:
        return tuple(reversed(stack)) if record_stacks else None

    for c in perm:
        while stack and _push_blocked_reference(spec, stack, c):
            v = stack.pop()
            steps.append(TraceStep("pop", v, snap()))
        stack.append(c)
        steps.append(TraceStep("push", c, snap()))
    while stack:
        v = stack.pop()
        steps.append(TraceStep("pop", v, snap()))
    return steps


def output_of_trace(steps: Iterable[TraceStep]) -> Perm:
    return tuple(s.value for s in steps if s.kind == "pop")


def premature_entries(spec: MachineSpec, perm: Sequence[int]) -> list[int]:
    """Entries popped before the final input entry has been pushed, in pop order."""
    n = len(perm)
    pushes = 0
    out: list[int] = []
    for step in trace(spec, perm, record_stacks=False):
        if step.kind == "push":
            pushes += 1
        elif pushes < n:
            out.append(step.value)
    return out


# ---------------------------------------------------------------------------
# simulation-free images for the two monotone length-3 machines
# ---------------------------------------------------------------------------

def consecutive_321_image(perm: Sequence[int]) -> Perm:
    """Image under the 321-forbidding consecutive machine, from ascending runs.

    Each run contributes its interior immediately and its two ends at drain
    time, so the output is the interiors in order followed by the reversed
    concatenation of the run ends.
    """
    runs = ascending_runs(perm)
    out = [v for r in runs for v in run_interior(r)]
    tail = [v for r in runs for v in run_ends(r)]
    out.extend(reversed(tail))
    return tuple(out)


def consecutive_123_image(perm: Sequence[int]) -> Perm:
    """Image under the 123-forbidding consecutive machine, from descending runs."""
    runs = descending_runs(perm)
    out = [v for r in runs for v in run_interior(r)]
    tail = [v for r in runs for v in run_ends(r)]
    out.extend(reversed(tail))
    return tuple(out)


# ---------------------------------------------------------------------------
# the classic one-pass stack sort (the 21-forbidding machine)
# ---------------------------------------------------------------------------

def stack_sort(perm: Sequence[int]) -> Perm:
    """One pass through a stack whose reading must stay increasing."""
    stack: list[int] = []
    out: list[int] = []
    for c in perm:
        while stack and stack[-1] < c:
            out.append(stack.pop())
        stack.append(c)
    while stack:
        out.append(stack.pop())
    return tuple(out)
