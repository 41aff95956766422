"""Finite labeled directed graphs used as subshift presentations.

A labeled graph presents a sofic shift: points are label sequences of
bi-infinite edge paths.  Throughout, "left-resolving" means no vertex has two
incoming edges with the same label, so reading a word backwards from a vertex
is deterministic.  That determinism is what makes the past-equivalence
machinery below exact rather than approximate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .alphabet import Alphabet, Word


@dataclass(frozen=True)
class LabeledGraph:
    """Vertices are names; edges are (source index, symbol index, target index)."""

    alphabet: Alphabet
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        n, k = len(self.vertices), len(self.alphabet)
        for s, a, t in self.edges:
            if not (0 <= s < n and 0 <= t < n and 0 <= a < k):
                raise ValueError(f"edge {(s, a, t)} out of range")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edges")

    # -- indexes ---------------------------------------------------------

    @property
    def out_by_vertex(self) -> dict[int, list[tuple[int, int]]]:
        """vertex -> [(label, target)]"""
        out: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(self.vertices))}
        for s, a, t in self.edges:
            out[s].append((a, t))
        return out

    @property
    def in_by_vertex(self) -> dict[int, list[tuple[int, int]]]:
        """vertex -> [(label, source)]"""
        inc: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(self.vertices))}
        for s, a, t in self.edges:
            inc[t].append((a, s))
        return inc

    def vertex_index(self, name: str) -> int:
        return self.vertices.index(name)


def from_names(
    alphabet: Alphabet,
    vertices: Iterable[str],
    edges: Iterable[tuple[str, str, str]],
) -> LabeledGraph:
    """Build a graph from (source name, label name, target name) triples.

    Edge order is normalized, so graphs given the same triples in any order
    compare equal (and serialize identically)."""
    vs = tuple(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    es = tuple(sorted(
        (pos[s], alphabet.index(a), pos[t]) for s, a, t in edges
    ))
    return LabeledGraph(alphabet, vs, es)


# -- structural checks ---------------------------------------------------


def left_resolving_violation(g: LabeledGraph) -> tuple[int, int] | None:
    """Return (vertex, label) with two incoming edges sharing the label, if any."""
    seen: set[tuple[int, int]] = set()
    for _, a, t in sorted(g.edges):
        if (t, a) in seen:
            return (t, a)
        seen.add((t, a))
    return None


def is_left_resolving(g: LabeledGraph) -> bool:
    return left_resolving_violation(g) is None


def stranded_vertices(g: LabeledGraph) -> set[int]:
    """Vertices lacking an outgoing or an incoming edge."""
    has_out = {s for s, _, _ in g.edges}
    has_in = {t for _, _, t in g.edges}
    return {v for v in range(len(g.vertices)) if v not in has_out or v not in has_in}


def is_essential(g: LabeledGraph) -> bool:
    return not stranded_vertices(g)


def essential_subgraph(g: LabeledGraph) -> LabeledGraph:
    """Iteratively delete stranded vertices until every vertex lies on a
    bi-infinite path.  May return a graph with no vertices."""
    alive = set(range(len(g.vertices)))
    edges = set(g.edges)
    while True:
        has_out = {s for s, _, _ in edges}
        has_in = {t for _, _, t in edges}
        dead = {v for v in alive if v not in has_out or v not in has_in}
        if not dead:
            break
        alive -= dead
        edges = {(s, a, t) for s, a, t in edges if s in alive and t in alive}
    order = sorted(alive)
    pos = {v: i for i, v in enumerate(order)}
    return LabeledGraph(
        g.alphabet,
        tuple(g.vertices[v] for v in order),
        tuple(sorted((pos[s], a, pos[t]) for s, a, t in edges)),
    )


def is_irreducible(g: LabeledGraph) -> bool:
    """Strong connectivity of the underlying digraph (labels ignored)."""
    n = len(g.vertices)
    if n == 0:
        return False
    succ: dict[int, set[int]] = {v: set() for v in range(n)}
    pred: dict[int, set[int]] = {v: set() for v in range(n)}
    for s, _, t in g.edges:
        succ[s].add(t)
        pred[t].add(s)

    def reach(start: int, nbrs: dict[int, set[int]]) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in nbrs[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    return len(reach(0, succ)) == n and len(reach(0, pred)) == n


# -- word reading --------------------------------------------------------


def read_forward(g: LabeledGraph, start: set[int], word: Word) -> set[int]:
    """Endpoints of word-labeled paths starting anywhere in `start`."""
    out = g.out_by_vertex
    cur = set(start)
    for a in word:
        cur = {t for v in cur for b, t in out[v] if b == a}
        if not cur:
            break
    return cur


def read_backward(g: LabeledGraph, end: set[int], word: Word) -> set[int]:
    """Startpoints of word-labeled paths ending anywhere in `end`."""
    inc = g.in_by_vertex
    cur = set(end)
    for a in reversed(word):
        cur = {s for v in cur for b, s in inc[v] if b == a}
        if not cur:
            break
    return cur


def reads_word(g: LabeledGraph, word: Word) -> bool:
    return bool(read_forward(g, set(range(len(g.vertices))), word))


def words_of_length(g: LabeledGraph, length: int, start: set[int] | None = None) -> Iterator[Word]:
    """All words of exactly `length` labeling paths from `start` (default: anywhere)."""
    out = g.out_by_vertex
    init = set(range(len(g.vertices))) if start is None else set(start)

    def go(cur: frozenset[int], prefix: Word) -> Iterator[Word]:
        if len(prefix) == length:
            yield prefix
            return
        nexts: dict[int, set[int]] = {}
        for v in cur:
            for a, t in out[v]:
                nexts.setdefault(a, set()).add(t)
        for a in sorted(nexts):
            yield from go(frozenset(nexts[a]), prefix + (a,))

    if init:
        yield from go(frozenset(init), ())


def words_into(g: LabeledGraph, end: set[int], length: int) -> Iterator[Word]:
    """All words of exactly `length` labeling paths that end inside `end`."""
    inc = g.in_by_vertex

    def go(cur: frozenset[int], suffix: Word) -> Iterator[Word]:
        if len(suffix) == length:
            yield suffix
            return
        prevs: dict[int, set[int]] = {}
        for v in cur:
            for a, s in inc[v]:
                prevs.setdefault(a, set()).add(s)
        for a in sorted(prevs):
            yield from go(frozenset(prevs[a]), (a,) + suffix)

    if end:
        yield from go(frozenset(end), ())


# -- past equivalence ----------------------------------------------------


class PastClassifier:
    """Exact depth-l past-language equality for vertex sets.

    For a vertex set S, the depth-l past language is the set of length-l
    words labeling paths that end inside S.  Because reading backwards by a
    label maps sets to sets deterministically, two sets have equal depth-l
    past languages iff their recursive backward fingerprints agree, computed
    here with memoization.  Works for any labeled graph; exactness needs no
    assumption beyond finiteness.
    """

    def __init__(self, g: LabeledGraph):
        self._g = g
        self._inc = g.in_by_vertex
        self._memo: dict[tuple[frozenset[int], int], object] = {}

    def _preds(self, cur: frozenset[int]) -> dict[int, frozenset[int]]:
        prevs: dict[int, set[int]] = {}
        for v in cur:
            for a, s in self._inc[v]:
                prevs.setdefault(a, set()).add(s)
        return {a: frozenset(vs) for a, vs in prevs.items()}

    def fingerprint(self, vertex_set: Iterable[int], depth: int) -> object:
        cur = frozenset(vertex_set)
        key = (cur, depth)
        if key in self._memo:
            return self._memo[key]
        if depth == 0:
            result: object = ()
        else:
            result = tuple(
                sorted(
                    (a, self.fingerprint(vs, depth - 1))
                    for a, vs in self._preds(cur).items()
                )
            )
        self._memo[key] = result
        return result

    def equal_pasts(self, s1: Iterable[int], s2: Iterable[int], depth: int) -> bool:
        return self.fingerprint(s1, depth) == self.fingerprint(s2, depth)


def past_partition(g: LabeledGraph, depth: int) -> list[list[int]]:
    """Partition single vertices by depth-`depth` past language.

    Returns, for each refinement level 0..depth, a list mapping vertex ->
    class id.  Class ids are consecutive integers in order of first
    appearance when scanning vertices in index order.
    """
    pc = PastClassifier(g)
    levels: list[list[int]] = []
    for l in range(depth + 1):
        key_to_id: dict[object, int] = {}
        ids: list[int] = []
        for v in range(len(g.vertices)):
            k = pc.fingerprint([v], l)
            if k not in key_to_id:
                key_to_id[k] = len(key_to_id)
            ids.append(key_to_id[k])
        levels.append(ids)
    return levels


def follower_source_family(g: LabeledGraph) -> set[frozenset[int]]:
    """All nonempty sets of the form {v : word readable from v}, over all words.

    Computed as the closure of the full vertex set under label-wise
    backward steps; every member is realized by some finite word.
    """
    inc = g.in_by_vertex
    full = frozenset(range(len(g.vertices)))
    family = {full}
    frontier = [full]
    while frontier:
        cur = frontier.pop()
        prevs: dict[int, set[int]] = {}
        for v in cur:
            for a, s in inc[v]:
                prevs.setdefault(a, set()).add(s)
        for vs in prevs.values():
            f = frozenset(vs)
            if f not in family:
                family.add(f)
                frontier.append(f)
    return family
