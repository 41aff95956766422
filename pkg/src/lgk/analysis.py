"""Dynamical checks on leveled systems: branching, irreducibility,
synchronization, and the word-succession relation.

These properties quantify over all levels of the untruncated system, so on a
depth-L truncation most of them are only semi-decidable.  Every check here
returns a tri-state :class:`Verdict`: `yes` when a finite certificate was
found, `no` when a refutation is provable inside the truncation (possible
for constant systems, whose levels repeat forever), and `unknown` with a
witness otherwise.  A `no` is never issued on evidence that deeper levels
could overturn.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .alphabet import Word
from .subshift import DEFAULT_BUDGET, Budget, BudgetExceeded, SubshiftSpec, _Meter
from .system import (
    LambdaGraphSystem,
    build_lambda_synchronizing,
    iota_fiber,
    iota_image,
    label_words_from,
    read_down,
    step_down,
    terminal_vertices,
)
from .verdict import Verdict


def _is_constant(sys: LambdaGraphSystem) -> bool:
    """All levels repeat the same graph with the identity collapse.

    Such systems (the output of the finite-cover builder) extend uniquely to
    every depth, so searches that stabilize in them are conclusive.
    """
    first = sys.levels[0].size
    if any(level.size != first for level in sys.levels):
        return False
    if any(layer != sys.edges[0] for layer in sys.edges[1:]):
        return False
    return all(mapping == tuple(range(first)) for mapping in sys.iota)


def _successors(sys: LambdaGraphSystem, level: int, sources: frozenset[int]) -> frozenset[int]:
    return frozenset(t for s, _, t in sys.edges[level] if s in sources)


def _graph_reachable(sys: LambdaGraphSystem, start: int, goal: int) -> bool:
    """Reachability in the repeated graph of a constant system."""
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for s, _, t in sys.edges[0]:
            if s == v and t not in seen:
                seen.add(t)
                frontier.append(t)
    return goal in seen


# -- condition (I): branching futures ------------------------------------


def _out_labels(sys: LambdaGraphSystem, level: int, sources: frozenset[int]) -> set[int]:
    return {a for s, a, _ in sys.edges[level] if s in sources}


def _branches_within(sys: LambdaGraphSystem, level: int, vertex: int, length: int) -> bool:
    """Does the label tree from `vertex` fork within `length` steps?"""
    current = frozenset([vertex])
    for k in range(length):
        labels = _out_labels(sys, level + k, current)
        if len(labels) >= 2:
            return True
        if not labels:
            return False
        current = step_down(sys, level + k, current, labels.pop())
    return False


def check_condition_I(sys: LambdaGraphSystem, depth: int = 3) -> Verdict:
    """Every vertex should admit two distinct label words of length `depth`.

    Levels 0..L-depth are inspected, so the words stay inside the
    truncation.  A single forking anywhere along the unique prefix
    certifies the vertex.  For constant systems a non-forking vertex is
    followed until its deterministic state set cycles, which refutes the
    property outright; otherwise an unbranched vertex is only `unknown`.
    """
    if not (1 <= depth <= sys.depth):
        raise ValueError(f"depth must be between 1 and {sys.depth}")
    constant = _is_constant(sys)
    for level in range(sys.depth - depth + 1):
        for vertex in range(sys.levels[level].size):
            if _branches_within(sys, level, vertex, depth):
                continue
            if not constant:
                return Verdict.unknown(
                    witness=(level, vertex),
                    note=(
                        f"vertex {vertex} at level {level} shows a single label "
                        f"word of length {depth}; deeper levels undecided"
                    ),
                )
            # Constant system: follow the deterministic word until the
            # state set repeats; a cycle without forking is a refutation.
            current = frozenset([vertex])
            seen = {current}
            while True:
                labels = _out_labels(sys, 0, current)
                if len(labels) >= 2:
                    break
                if not labels:
                    return Verdict.no(
                        witness=(level, vertex),
                        note=f"vertex {vertex} at level {level} emits no label word",
                    )
                current = step_down(sys, 0, current, labels.pop())
                if current in seen:
                    return Verdict.no(
                        witness=(level, vertex),
                        note=(
                            f"vertex {vertex} at level {level} has a unique "
                            f"label future (deterministic cycle)"
                        ),
                    )
                seen.add(current)
    return Verdict.yes()


# -- irreducibility ------------------------------------------------------


def check_lambda_irreducible(
    sys: LambdaGraphSystem,
    bound: Optional[int] = None,
    max_level: int = 2,
) -> Verdict:
    """For each ordered vertex pair (u, v) on a level, some depth step L
    must make every vertex in the collapse fiber over u reachable from v by
    a path of length exactly L.  Searches L up to `bound` within the
    truncation; conclusive refutation only for constant systems."""
    constant = _is_constant(sys)
    for level in range(min(max_level, sys.depth - 1) + 1):
        size = sys.levels[level].size
        for u in range(size):
            for v in range(size):
                limit = sys.depth - level if bound is None else min(bound, sys.depth - level)
                ok = False
                for steps in range(1, limit + 1):
                    fiber = iota_fiber(sys, level, u, steps)
                    reach = frozenset([v])
                    for k in range(steps):
                        reach = _successors(sys, level + k, reach)
                    if fiber and fiber <= reach:
                        ok = True
                        break
                if ok:
                    continue
                if constant:
                    # Identity collapse: the fiber is {u}; reachability at
                    # some exact length is plain graph reachability.
                    if not _graph_reachable(sys, v, u):
                        return Verdict.no(
                            witness=(level, u, v),
                            note=(
                                f"vertex {u} is unreachable from {v}, so no "
                                f"level can cover the fiber over {u}"
                            ),
                        )
                    continue
                return Verdict.unknown(
                    witness=(level, u, v),
                    note=(
                        f"no step count up to {limit} lets vertex {v} reach the "
                        f"whole fiber over vertex {u} at level {level}"
                    ),
                )
    return Verdict.yes()


def _labeled_paths(
    sys: LambdaGraphSystem, level: int, vertex: int, max_len: int
) -> Iterator[tuple[Word, int]]:
    """(label word, endpoint) pairs of paths from `vertex`, lengths 1..max_len."""
    stack: list[tuple[Word, int, int]] = [((), level, vertex)]
    while stack:
        word, l, v = stack.pop()
        if len(word) >= max_len or l >= sys.depth:
            continue
        for s, a, t in sys.edges[l]:
            if s == v:
                yield word + (a,), t
                stack.append((word + (a,), l + 1, t))


def check_iota_irreducible(
    sys: LambdaGraphSystem,
    bound: int = 3,
    max_level: int = 2,
    path_len: int = 2,
) -> Verdict:
    """Any labeled path from u should be shadowed, compatibly with the
    collapse, by a path starting from any other vertex v of the same level:
    v reaches some u' collapsing onto u, from which the same label word runs
    to a vertex collapsing onto the original endpoint."""
    constant = _is_constant(sys)
    partial: set[int] = set()
    for level in range(min(max_level, sys.depth - 2) + 1):
        size = sys.levels[level].size
        for u in range(size):
            for v in range(size):
                if u == v:
                    continue  # shadowed trivially with zero collapse steps
                if constant:
                    if _graph_reachable(sys, v, u):
                        continue
                    return Verdict.no(
                        witness=(level, v, u),
                        note=f"vertex {u} is unreachable from {v}",
                    )
                for word, end in _labeled_paths(sys, level, u, path_len):
                    room = sys.depth - level - len(word)
                    if room < 1:
                        # No collapse step fits below the truncation for
                        # this word length; skip rather than fail.
                        partial.add(level)
                        continue
                    found = False
                    for steps in range(1, min(bound, room) + 1):
                        fiber = iota_fiber(sys, level, u, steps)
                        reach = frozenset([v])
                        for k in range(steps):
                            reach = _successors(sys, level + k, reach)
                        for shadow_start in sorted(fiber & reach):
                            ends = read_down(
                                sys, level + steps, frozenset([shadow_start]), word
                            )
                            target_level = level + steps + len(word)
                            if any(
                                iota_image(sys, target_level, e, steps) == end
                                for e in ends
                            ):
                                found = True
                                break
                        if found:
                            break
                    if not found:
                        if room < bound:
                            # the truncation cut the step search short, so
                            # a deeper shadow may exist below it
                            partial.add(level)
                            continue
                        return Verdict.unknown(
                            witness=(level, v, u, word),
                            note=(
                                f"within {bound} collapse steps, no path from "
                                f"vertex {v} shadows the word "
                                f"{sys.alphabet.text(word)!r} out of vertex {u} "
                                f"at level {level}"
                            ),
                        )
    if partial:
        return Verdict.yes(
            note=(
                f"levels {sorted(partial)} verified only for the word lengths "
                f"that fit the truncation"
            )
        )
    return Verdict.yes()


# -- launching words and synchronization ---------------------------------


def launching_vertex(sys: LambdaGraphSystem, word: Word, level: int) -> Optional[int]:
    """The unique vertex at `level` that can read `word`, if unique."""
    if len(word) == 0:
        raise ValueError("launching words must be nonempty")
    if level + len(word) > sys.depth:
        raise ValueError("word does not fit below the level")
    starters = [
        v
        for v in range(sys.levels[level].size)
        if read_down(sys, level, frozenset([v]), word)
    ]
    if len(starters) == 1:
        return starters[0]
    return None


def _unseparated_vertices(
    sys: LambdaGraphSystem, level: int, max_len: int, meter: _Meter
) -> set[int]:
    """Vertices at `level` with no launching word of length <= max_len.

    Walks the determinized reader: a state maps each still-alive origin
    vertex to where its reading currently stands; an origin left as sole
    survivor has been launched by the word read so far.
    """
    size = sys.levels[level].size
    missing = set(range(size))
    frontier = [tuple((v, frozenset([v])) for v in range(size))]
    visited = set(frontier)
    for length in range(1, max_len + 1):
        if not missing:
            break
        layer = sys.edges[level + length - 1]
        next_frontier = []
        for state in frontier:
            alive = frozenset().union(*(ends for _, ends in state))
            for a in sorted({a for s, a, _ in layer if s in alive}):
                meter.tick()
                advanced = tuple(
                    (v, moved)
                    for v, ends in state
                    if (moved := step_down(sys, level + length - 1, ends, a))
                )
                if not advanced:
                    continue
                if len(advanced) == 1:
                    missing.discard(advanced[0][0])
                if advanced not in visited:
                    visited.add(advanced)
                    next_frontier.append(advanced)
        frontier = next_frontier
    return missing


def _launching_closure_constant(sys: LambdaGraphSystem, meter: _Meter) -> Verdict:
    """Exact decision for constant systems: explore the full reader-state
    closure of the repeated graph.  Finite, so exhaustion without a sole
    survivor refutes the property."""
    layer = sys.edges[0]
    size = sys.levels[0].size
    missing = set(range(size))
    start = tuple((v, frozenset([v])) for v in range(size))
    visited = {start}
    frontier = [start]
    while frontier and missing:
        state = frontier.pop()
        alive = frozenset().union(*(ends for _, ends in state))
        for a in sorted({a for s, a, _ in layer if s in alive}):
            meter.tick()
            advanced = tuple(
                (v, moved)
                for v, ends in state
                if (moved := frozenset(t for s, b, t in layer if b == a and s in ends))
            )
            if not advanced or advanced in visited:
                if advanced and len(advanced) == 1:
                    missing.discard(advanced[0][0])
                continue
            if len(advanced) == 1:
                missing.discard(advanced[0][0])
            visited.add(advanced)
            frontier.append(advanced)
    if missing:
        vertex = min(missing)
        return Verdict.no(
            witness=(0, vertex),
            note=(
                f"vertex {vertex} (every level) is never the unique reader of "
                f"any word; reader-state closure exhausted"
            ),
        )
    return Verdict.yes()


def is_lambda_synchronizing_system(
    sys: LambdaGraphSystem,
    depth: Optional[int] = None,
    budget: Budget = DEFAULT_BUDGET,
) -> Verdict:
    """Does every vertex launch some word, readable from it and from no
    sibling?  Word lengths up to `depth` (default: half the truncation) are
    searched with the determinized reader automaton.

    Launching words legitimately grow with the level (a level-l vertex may
    need a length-l word), so only levels up to min(depth, L - depth) are
    required to pass: there the search length is not capped by the room
    below, and the candidate lengths fit the search.  Misses on deeper
    levels are reported in the note rather than degrading the verdict,
    since their launching words may simply not fit the truncation.
    Constant systems are decided exactly by exhausting the reader-state
    closure.
    """
    meter = _Meter(budget)
    try:
        if _is_constant(sys):
            return _launching_closure_constant(sys, meter)
        if depth is None:
            depth = max(1, sys.depth // 2)
        unverified: list[tuple[int, int]] = []
        for level in range(sys.depth):
            room = sys.depth - level
            missing = _unseparated_vertices(sys, level, min(depth, room), meter)
            if not missing:
                continue
            vertex = min(missing)
            if level <= min(depth, sys.depth - depth):
                return Verdict.unknown(
                    witness=(level, vertex),
                    note=(
                        f"no word of length <= {min(depth, room)} is readable "
                        f"from vertex {vertex} at level {level} alone"
                    ),
                )
            unverified.append((level, vertex))
    except BudgetExceeded as exc:
        return Verdict.unknown(note=str(exc))
    if unverified:
        levels = sorted({l for l, _ in unverified})
        return Verdict.yes(
            note=(
                f"levels {levels} only partially verified: their launching "
                f"words may exceed the remaining truncation room"
            )
        )
    return Verdict.yes()


# -- succession relation and transitivity --------------------------------


def follower_equal(sys: LambdaGraphSystem, first: Word, second: Word) -> bool:
    """Do two admissible words share their follower set in the system?

    With p <= q the words' path-endpoint sets live at levels p and q; the
    shorter word's endpoints are lifted through the collapse to level q and
    compared there.  Exact for systems built from synchronization classes.
    """
    if len(first) > len(second):
        first, second = second, first
    p, q = len(first), len(second)
    if q > sys.depth:
        raise ValueError("word exceeds the truncated depth")
    ends_first = terminal_vertices(sys, first)
    ends_second = terminal_vertices(sys, second)
    if not ends_first or not ends_second:
        raise ValueError("both words must be readable in the system")
    lifted = frozenset(
        w for w in range(sys.levels[q].size) if iota_image(sys, q, w, q - p) in ends_first
    )
    return lifted == ends_second


def _words_from_set(
    sys: LambdaGraphSystem, level: int, sources: frozenset[int], max_len: int
) -> Iterator[Word]:
    """Distinct label words of length 0..max_len readable from `sources`,
    in (length, lexicographic) order."""
    layer = [((), sources)]
    yield ()
    for length in range(max_len):
        next_layer = []
        for word, ends in layer:
            for a in sorted({x for s, x, _ in sys.edges[level + length] if s in ends}):
                moved = step_down(sys, level + length, ends, a)
                next_layer.append((word + (a,), moved))
                yield word + (a,)
        layer = next_layer


def succ_relation(
    sys: LambdaGraphSystem,
    first: Word,
    second: Word,
    bound: int = 2,
    budget: Budget = DEFAULT_BUDGET,
) -> Verdict:
    """Search for a bridge word making `second` follower-equivalent to
    first + bridge + second.  `yes` carries the bridge as witness; absence
    within `bound` is `unknown` (a longer bridge may exist)."""
    meter = _Meter(budget)
    ends_first = terminal_vertices(sys, first)
    if not ends_first or not terminal_vertices(sys, second):
        raise ValueError("both words must be readable in the system")
    level = len(first)
    for bridge in _words_from_set(sys, level, ends_first, bound):
        total = len(first) + len(bridge) + len(second)
        if total > sys.depth:
            continue
        meter.tick()
        combined = first + bridge + second
        if not terminal_vertices(sys, combined):
            continue
        if follower_equal(sys, second, combined):
            return Verdict.yes(
                witness=bridge,
                note=f"bridge {sys.alphabet.text(bridge)!r}",
            )
    return Verdict.unknown(
        note=f"no bridge of length <= {bound} found within the truncation"
    )


def check_synchronizingly_transitive(
    target: "SubshiftSpec | LambdaGraphSystem",
    word_len: int = 2,
    bound: int = 2,
    budget: Budget = DEFAULT_BUDGET,
) -> Verdict:
    """Succession must hold both ways between every pair of admissible words
    up to `word_len`.  Accepts a subshift spec (its canonical system is
    built at depth 2*word_len + bound) or a prebuilt system."""
    if isinstance(target, LambdaGraphSystem):
        sys = target
    else:
        sys = build_lambda_synchronizing(target, 2 * word_len + bound, budget=budget)
    if 2 * word_len + bound > sys.depth:
        raise ValueError("truncation too shallow for the requested word length")
    top = frozenset(range(sys.levels[0].size))
    words = [w for w in _words_from_set(sys, 0, top, word_len) if w]
    for first in words:
        for second in words:
            verdict = succ_relation(sys, first, second, bound=bound, budget=budget)
            if not verdict.is_yes:
                return Verdict.unknown(
                    witness=(first, second),
                    note=(
                        f"no bridge from {sys.alphabet.text(first)!r} to "
                        f"{sys.alphabet.text(second)!r} within bound {bound}"
                    ),
                )
    return Verdict.yes()


def simplicity_prediction(transitive: Verdict, branching: Verdict) -> Verdict:
    """Combine transitivity and the branching condition.

    Both together predict a simple associated algebra; either failing
    refutes the prediction; anything undecided stays unknown.
    """
    if transitive.is_yes and branching.is_yes:
        return Verdict.yes()
    if transitive.is_no or branching.is_no:
        return Verdict.no(note="prerequisite fails")
    return Verdict.unknown(note="prerequisites undecided")
