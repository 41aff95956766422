"""Leveled labeled graphs with a level-collapsing map.

A system consists of vertex levels ``V_0 .. V_L``, labeled edge layers
``E_l`` from ``V_l`` to ``V_{l+1}``, and surjections ``iota_l`` collapsing
``V_{l+1}`` onto ``V_l``.  The five structural axioms (left-resolving edge
layers, predecessor-separated levels, surjective collapse, label sets
compatible with the collapse, and the local in/out matching property) are
checked by the ``verify_*`` functions, which return tri-state verdicts with
witnesses rather than booleans.

Builders:

* :func:`build_from_finite_graph` repeats a left-resolving cover at every
  level with the identity collapse;
* :func:`build_cantor_horizon_dyck` / :func:`build_cantor_horizon_markov_dyck`
  realize the Cantor-horizon systems of bracket shifts, whose level-``l``
  vertices are the admissible state words of length ``l``;
* :func:`build_lambda_synchronizing` constructs the canonical system of a
  subshift from the past-equivalence classes of its synchronizing words.

:func:`canonical_form` renames every vertex by its predecessor structure,
giving a byte-stable normal form used for isomorphism checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .alphabet import Alphabet, Word, bracket_alphabet
from .dyck import Matrix01, all_ones, state_words, validate_transition_matrix
from .labeled_graph import (
    LabeledGraph,
    is_essential,
    left_resolving_violation,
    past_partition,
    stranded_vertices,
)
from .linalg import Matrix
from .subshift import (
    DEFAULT_BUDGET,
    Budget,
    DyckN,
    Expanded,
    FullShift,
    MarkovDyck,
    SftForbidden,
    SoficGraph,
    SubshiftSpec,
    is_admissible,
    is_synchronizing,
    predecessor_words,
    sft_cover,
    spec_alphabet,
    synchronizing_classes,
)
from .verdict import Verdict


class ConstructionError(ValueError):
    """A builder hit a word that breaks its synchronization assumptions."""


@dataclass(frozen=True)
class VertexLevel:
    """One vertex level: `size` vertices carrying display tags."""

    size: int
    tags: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("vertex level must be nonempty")
        if len(self.tags) != self.size:
            raise ValueError(f"expected {self.size} tags, got {len(self.tags)}")


Edge = tuple[int, int, int]  # (source, symbol, target)


@dataclass(frozen=True)
class LambdaGraphSystem:
    """Truncated leveled system; `edges[l]` joins level l to l+1.

    `iota[l]` maps each level-(l+1) vertex to its level-l image.  Only
    shape constraints are enforced here; the structural axioms are the
    business of the `verify_*` functions.
    """

    alphabet: Alphabet
    levels: tuple[VertexLevel, ...]
    edges: tuple[tuple[Edge, ...], ...]
    iota: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValueError("system needs at least one level")
        depth = len(self.levels) - 1
        if len(self.edges) != depth or len(self.iota) != depth:
            raise ValueError("edges and iota must have one layer per level gap")
        for l, layer in enumerate(self.edges):
            if list(layer) != sorted(set(layer)):
                raise ValueError(f"edge layer {l} must be sorted and duplicate-free")
            for s, a, t in layer:
                if not (0 <= s < self.levels[l].size):
                    raise ValueError(f"edge source {s} out of range at level {l}")
                if not (0 <= t < self.levels[l + 1].size):
                    raise ValueError(f"edge target {t} out of range at level {l}")
                if not (0 <= a < len(self.alphabet)):
                    raise ValueError(f"edge symbol {a} out of alphabet range")
        for l, mapping in enumerate(self.iota):
            if len(mapping) != self.levels[l + 1].size:
                raise ValueError(f"iota layer {l} must cover level {l + 1}")
            for v, image in enumerate(mapping):
                if not (0 <= image < self.levels[l].size):
                    raise ValueError(f"iota image {image} out of range at level {l}")

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(level.size for level in self.levels)

    def out_index(self, l: int) -> dict[int, list[tuple[int, int]]]:
        """source -> [(symbol, target)] within edge layer l."""
        table: dict[int, list[tuple[int, int]]] = {}
        for s, a, t in self.edges[l]:
            table.setdefault(s, []).append((a, t))
        return table

    def in_index(self, l: int) -> dict[int, list[tuple[int, int]]]:
        """target -> [(symbol, source)] within edge layer l."""
        table: dict[int, list[tuple[int, int]]] = {}
        for s, a, t in self.edges[l]:
            table.setdefault(t, []).append((a, s))
        return table


# -- walking helpers -----------------------------------------------------


def step_down(sys: LambdaGraphSystem, level: int, sources: frozenset[int], symbol: int) -> frozenset[int]:
    """Targets one level below `sources` reachable by a `symbol`-edge."""
    return frozenset(t for s, a, t in sys.edges[level] if a == symbol and s in sources)


def read_down(sys: LambdaGraphSystem, level: int, sources: frozenset[int], word: Word) -> frozenset[int]:
    """Vertices reached from `sources` at `level` by reading `word`."""
    if level + len(word) > sys.depth:
        raise ValueError(f"word of length {len(word)} does not fit below level {level}")
    current = sources
    for offset, symbol in enumerate(word):
        current = step_down(sys, level + offset, current, symbol)
        if not current:
            break
    return current

def terminal_vertices(sys: LambdaGraphSystem, word: Word) -> frozenset[int]:
    """Endpoints at level `len(word)` of every `word`-labeled path from the top."""
    start = frozenset(range(sys.levels[0].size))
    return read_down(sys, 0, start, word)


def label_words_from(sys: LambdaGraphSystem, level: int, vertex: int, length: int) -> Iterator[Word]:
    """Distinct label words of exactly `length` readable from `vertex`."""
    if level + length > sys.depth:
        raise ValueError("word length exceeds remaining depth")

    def walk(l: int, current: frozenset[int], prefix: Word) -> Iterator[Word]:
        if len(prefix) == length:
            yield prefix
            return
        symbols = sorted({a for s, a, t in sys.edges[l] if s in current})
        for a in symbols:
            yield from walk(l + 1, step_down(sys, l, current, a), prefix + (a,))

    yield from walk(level, frozenset([vertex]), ())


def iota_image(sys: LambdaGraphSystem, level: int, vertex: int, steps: int) -> int:
    """Apply the collapse `steps` times to a vertex at `level`."""
    v = vertex
    for k in range(steps):
        v = sys.iota[level - 1 - k][v]
    return v


def iota_fiber(sys: LambdaGraphSystem, level: int, vertex: int, steps: int) -> frozenset[int]:
    """Vertices at `level + steps` collapsing onto `vertex` at `level`."""
    fiber = frozenset([vertex])
    for k in range(steps):
        mapping = sys.iota[level + k]
        fiber = frozenset(v for v, image in enumerate(mapping) if image in fiber)
    return fiber


# -- structural verifiers ------------------------------------------------


def _tag(sys: LambdaGraphSystem, level: int, vertex: int) -> str:
    tag = sys.levels[level].tags[vertex]
    return tag if tag else f"v{vertex}"


def verify_left_resolving(sys: LambdaGraphSystem) -> Verdict:
    """Each vertex has at most one in-edge per symbol."""
    for l, layer in enumerate(sys.edges):
        seen: dict[tuple[int, int], int] = {}
        for s, a, t in layer:
            if (t, a) in seen:
                return Verdict.no(
                    witness=(l + 1, t, a),
                    note=(
                        f"vertex {_tag(sys, l + 1, t)} at level {l + 1} has two "
                        f"in-edges labeled {sys.alphabet.names[a]!r} "
                        f"(from {_tag(sys, l, seen[(t, a)])} and {_tag(sys, l, s)})"
                    ),
                )
            seen[(t, a)] = s
    return Verdict.yes()


def verify_predecessor_separated(sys: LambdaGraphSystem) -> Verdict:
    """Distinct vertices at levels >= 1 have distinct predecessor-word sets.

    Classes are refined level by level: a vertex's key is its set of
    (symbol, class of source) pairs, with every top vertex in one class
    (the empty past).  Words partition by their last symbol, so for
    left-resolving systems key equality is exactly predecessor-word-set
    equality; one-step source identity would be too coarse (two disjoint
    equally-labeled loops have distinct in-edges but identical pasts).
    """
    classes = [0] * sys.levels[0].size
    for l in range(sys.depth):
        groups: list[set[tuple[int, int]]] = [
            set() for _ in range(sys.levels[l + 1].size)
        ]
        for s, a, t in sys.edges[l]:
            groups[t].add((a, classes[s]))
        seen: dict[frozenset[tuple[int, int]], int] = {}
        for v in range(sys.levels[l + 1].size):
            key = frozenset(groups[v])
            if key in seen:
                return Verdict.no(
                    witness=(l + 1, seen[key], v),
                    note=(
                        f"vertices {_tag(sys, l + 1, seen[key])} and "
                        f"{_tag(sys, l + 1, v)} at level {l + 1} have identical "
                        f"predecessor words"
                    ),
                )
            seen[key] = v
        classes = list(range(sys.levels[l + 1].size))
    return Verdict.yes()


def verify_iota_surjective(sys: LambdaGraphSystem) -> Verdict:
    for l, mapping in enumerate(sys.iota):
        missing = set(range(sys.levels[l].size)) - set(mapping)
        if missing:
            v = min(missing)
            return Verdict.no(
                witness=(l, v),
                note=f"vertex {_tag(sys, l, v)} at level {l} has no preimage under the collapse",
            )
    return Verdict.yes()


def _in_label_sets(sys: LambdaGraphSystem, l: int) -> dict[int, frozenset[int]]:
    """In-label set of each vertex at level l >= 1 (edge layer l-1)."""
    table: dict[int, set[int]] = {v: set() for v in range(sys.levels[l].size)}
    for s, a, t in sys.edges[l - 1]:
        table[t].add(a)
    return {v: frozenset(labels) for v, labels in table.items()}


def verify_label_iota_compatible(sys: LambdaGraphSystem) -> Verdict:
    """In-label sets are preserved by the collapse (checkable below level 1)."""
    for l in range(1, sys.depth):
        lower = _in_label_sets(sys, l)
        upper = _in_label_sets(sys, l + 1)
        for v in range(sys.levels[l + 1].size):
            image = sys.iota[l][v]
            if upper[v] != lower[image]:
                got = sorted(sys.alphabet.names[a] for a in upper[v])
                want = sorted(sys.alphabet.names[a] for a in lower[image])
                return Verdict.no(
                    witness=(l + 1, v),
                    note=(
                        f"vertex {_tag(sys, l + 1, v)} at level {l + 1} has "
                        f"in-labels {got} but its collapse image "
                        f"{_tag(sys, l, image)} has {want}"
                    ),
                )
    return Verdict.yes()


def verify_local_property(sys: LambdaGraphSystem) -> Verdict:
    """In-edges of v from the fiber over u match out-edges of u into iota(v).

    For u two levels above v's level, the labels of edges into v whose
    sources collapse to u must agree, with multiplicity, with the labels of
    edges from u into the collapse image of v.
    """
    for l in range(1, sys.depth):
        down_in = sys.in_index(l)
        up_out = sys.out_index(l - 1)
        for v in range(sys.levels[l + 1].size):
            image = sys.iota[l][v]
            incoming: dict[int, list[int]] = {}
            for a, s in down_in.get(v, []):
                incoming.setdefault(sys.iota[l - 1][s], []).append(a)
            outgoing: dict[int, list[int]] = {}
            for u in range(sys.levels[l - 1].size):
                labels = [a for a, t in up_out.get(u, []) if t == image]
                if labels:
                    outgoing[u] = labels
            for u in set(incoming) | set(outgoing):
                have = sorted(incoming.get(u, []))
                want = sorted(outgoing.get(u, []))
                if have != want:
                    return Verdict.no(
                        witness=(l, u, v),
                        note=(
                            f"between {_tag(sys, l - 1, u)} at level {l - 1} and "
                            f"{_tag(sys, l + 1, v)} at level {l + 1}: fiber "
                            f"in-labels {[sys.alphabet.names[a] for a in have]} vs "
                            f"out-labels {[sys.alphabet.names[a] for a in want]}"
                        ),
                    )
    return Verdict.yes()


def verify_essential(sys: LambdaGraphSystem) -> Verdict:
    """Every vertex emits an edge (below the last level) and receives one (above the first)."""
    for l, layer in enumerate(sys.edges):
        sources = {s for s, a, t in layer}
        targets = {t for s, a, t in layer}
        for v in range(sys.levels[l].size):
            if v not in sources:
                return Verdict.no(
                    witness=(l, v),
                    note=f"vertex {_tag(sys, l, v)} at level {l} has no outgoing edge",
                )
        for v in range(sys.levels[l + 1].size):
            if v not in targets:
                return Verdict.no(
                    witness=(l + 1, v),
                    note=f"vertex {_tag(sys, l + 1, v)} at level {l + 1} has no incoming edge",
                )
    return Verdict.yes()


VERIFIER_ORDER = (
    ("essential", verify_essential),
    ("left-resolving", verify_left_resolving),
    ("predecessor-separated", verify_predecessor_separated),
    ("collapse surjective", verify_iota_surjective),
    ("label-collapse compatible", verify_label_iota_compatible),
    ("local property", verify_local_property),
)


def verify_all(sys: LambdaGraphSystem) -> dict[str, Verdict]:
    return {name: check(sys) for name, check in VERIFIER_ORDER}


# -- transition matrices -------------------------------------------------


@dataclass(frozen=True)
class TransitionMatrices:
    """Per-level symbolic matrix data of a system.

    `a[l][i][j]` counts edges from vertex i at level l to vertex j at level
    l+1; `by_symbol[l][sym]` splits that count by edge label (so `a[l]` is
    the entrywise sum over symbols); `i[l][i][j]` is 1 exactly when vertex j
    collapses onto vertex i.
    """

    sizes: tuple[int, ...]
    a: tuple[Matrix, ...]
    i: tuple[Matrix, ...]
    by_symbol: tuple[tuple[Matrix, ...], ...]

    def symbol_slice(self, l: int, symbol: int) -> Matrix:
        return self.by_symbol[l][symbol]


def transition_matrices(sys: LambdaGraphSystem) -> TransitionMatrices:
    a_list: list[Matrix] = []
    i_list: list[Matrix] = []
    sliced: list[tuple[Matrix, ...]] = []
    for l in range(sys.depth):
        rows, cols = sys.levels[l].size, sys.levels[l + 1].size
        total = [[0] * cols for _ in range(rows)]
        per_symbol = [[[0] * cols for _ in range(rows)] for _ in range(len(sys.alphabet))]
        for s, sym, t in sys.edges[l]:
            total[s][t] += 1
            per_symbol[sym][s][t] += 1
        collapse = [[0] * cols for _ in range(rows)]
        for v, image in enumerate(sys.iota[l]):
            collapse[image][v] = 1
        a_list.append(tuple(tuple(r) for r in total))
        i_list.append(tuple(tuple(r) for r in collapse))
        sliced.append(tuple(tuple(tuple(r) for r in m) for m in per_symbol))
    return TransitionMatrices(
        sizes=sys.sizes,
        a=tuple(a_list),
        i=tuple(i_list),
        by_symbol=tuple(sliced),
    )


def matrix_compatibility_violation(tm: TransitionMatrices) -> Optional[int]:
    """First level l where A_l I_{l+1} != I_l A_{l+1}, or None."""
    from .linalg import mat_eq, mat_mul

    for l in range(len(tm.a) - 1):
        if not mat_eq(mat_mul(tm.a[l], tm.i[l + 1]), mat_mul(tm.i[l], tm.a[l + 1])):
            return l
    return None


# -- builders ------------------------------------------------------------


def build_from_finite_graph(graph: LabeledGraph, depth: int) -> LambdaGraphSystem:
    """Repeat a left-resolving essential cover at every level, identity collapse."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    bad = left_resolving_violation(graph)
    if bad is not None:
        v, a = bad
        offenders = [
            (graph.vertices[s], graph.alphabet.names[sym], graph.vertices[t])
            for s, sym, t in graph.edges
            if t == v and sym == a
        ]
        raise ConstructionError(
            f"cover is not left-resolving: edges {offenders} share label and target"
        )
    stranded = stranded_vertices(graph)
    if stranded:
        names = [graph.vertices[v] for v in sorted(stranded)]
        raise ConstructionError(f"cover is not essential: stranded vertices {names}")
    n = len(graph.vertices)
    layer = tuple(sorted(graph.edges))
    level = VertexLevel(size=n, tags=tuple(graph.vertices))
    identity = tuple(range(n))
    return LambdaGraphSystem(
        alphabet=graph.alphabet,
        levels=(level,) * (depth + 1),
        edges=(layer,) * depth,
        iota=(identity,) * depth,
    )


def build_cantor_horizon_markov_dyck(matrix: Matrix01, depth: int) -> LambdaGraphSystem:
    """Cantor-horizon system of the bracket shift of a 0-1 matrix.

    Level-l vertices are the matrix-admissible state words of length l.  An
    opening symbol prepends its index to the state; a closing symbol pops
    indices revealed below the truncation, which at the level of state words
    shifts the word right by one.  The collapse drops the rightmost index.
    """
    validate_transition_matrix(matrix)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    n = len(matrix)
    alphabet = bracket_alphabet(n)
    words = [state_words(matrix, l) for l in range(depth + 1)]
    index = [{w: i for i, w in enumerate(level)} for level in words]
    levels = tuple(
        VertexLevel(
            size=len(level),
            tags=tuple(alphabet.text(tuple(n + s for s in w)) for w in level),
        )
        for level in words
    )
    edges: list[tuple[Edge, ...]] = []
    iota: list[tuple[int, ...]] = []
    for l in range(depth):
        layer: set[Edge] = set()
        for j, y in enumerate(words[l + 1]):
            # Opening edge: the state below is y with its newest index removed.
            layer.add((index[l][y[1:]], y[0], j))
            # Closing edges: reading b_k re-exposes state (k, y...) truncated.
            for k in range(n):
                if matrix[k][y[0]] == 1:
                    source = ((k,) + y)[:l]
                    layer.add((index[l][source], n + k, j))
        edges.append(tuple(sorted(layer)))
        iota.append(tuple(index[l][y[:-1]] for y in words[l + 1]))
    return LambdaGraphSystem(
        alphabet=alphabet,
        levels=levels,
        edges=tuple(edges),
        iota=tuple(iota),
    )


def build_cantor_horizon_dyck(n: int, depth: int) -> LambdaGraphSystem:
    """Cantor-horizon system of the Dyck shift on n bracket pairs."""
    return build_cantor_horizon_markov_dyck(all_ones(n), depth)


def _quotient_system(graph: LabeledGraph, depth: int) -> LambdaGraphSystem:
    """Collapse a cover by depth-l past equivalence at each level l."""
    partition = past_partition(graph, depth)
    counts = [max(ids) + 1 for ids in partition]
    levels = []
    for l, ids in enumerate(partition):
        members: dict[int, list[str]] = {}
        for v, c in enumerate(ids):
            members.setdefault(c, []).append(graph.vertices[v])
        tags = tuple("|".join(sorted(members[c])) for c in range(counts[l]))
        levels.append(VertexLevel(size=counts[l], tags=tags))
    edges: list[tuple[Edge, ...]] = []
    iota: list[tuple[int, ...]] = []
    for l in range(depth):
        low, high = partition[l], partition[l + 1]
        layer = {(low[s], a, high[t]) for s, a, t in graph.edges}
        edges.append(tuple(sorted(layer)))
        image = [0] * counts[l + 1]
        for v, c in enumerate(high):
            image[c] = low[v]
        iota.append(tuple(image))
    return LambdaGraphSystem(
        alphabet=graph.alphabet,
        levels=tuple(levels),
        edges=tuple(edges),
        iota=tuple(iota),
    )


def _full_shift_chain(spec: FullShift, depth: int) -> LambdaGraphSystem:
    alphabet = spec.alphabet
    layer = tuple((0, a, 0) for a in range(len(alphabet)))
    level = VertexLevel(size=1, tags=("",))
    return LambdaGraphSystem(
        alphabet=alphabet,
        levels=(level,) * (depth + 1),
        edges=(layer,) * depth,
        iota=((0,),) * depth,
    )


def _class_system(spec: SubshiftSpec, depth: int, budget: Budget) -> LambdaGraphSystem:
    """Canonical system from past-equivalence classes of synchronizing words.

    Level-l vertices are the classes of level-l synchronizing words.  For a
    class with representative nu at level l+1 and a symbol x, the word
    x.nu must synchronize at level l and its predecessor fingerprint must
    name a known class; both are asserted, so an incomplete class census
    surfaces as a construction error instead of a wrong system.
    """
    alphabet = spec_alphabet(spec)
    classes = [synchronizing_classes(spec, l, budget=budget) for l in range(depth + 1)]
    index = [{c.fingerprint: i for i, c in enumerate(level)} for level in classes]
    levels = tuple(
        VertexLevel(
            size=len(level),
            tags=tuple(alphabet.text(c.representative) for c in level),
        )
        for level in classes
    )
    edges: list[tuple[Edge, ...]] = []
    iota: list[tuple[int, ...]] = []
    for l in range(depth):
        layer: set[Edge] = set()
        image: list[int] = []
        for j, cls in enumerate(classes[l + 1]):
            nu = cls.representative
            for symbol in range(len(alphabet)):
                extended = (symbol,) + nu
                if not is_admissible(spec, extended):
                    continue
                verdict = is_synchronizing(spec, extended, l, budget=budget)
                if not verdict.is_yes:
                    raise ConstructionError(
                        f"word {alphabet.text(extended)!r} is not known to "
                        f"synchronize at level {l}: {verdict.note or verdict.kind}"
                    )
                fp = frozenset(predecessor_words(spec, extended, l, budget=budget))
                source = index[l].get(fp)
                if source is None:
                    raise ConstructionError(
                        f"predecessor class of {alphabet.text(extended)!r} at "
                        f"level {l} is not in the class census"
                    )
                layer.add((source, symbol, j))
            fp = frozenset(predecessor_words(spec, nu, l, budget=budget))
            down = index[l].get(fp)
            if down is None:
                raise ConstructionError(
                    f"collapse image of class {alphabet.text(nu)!r} at level {l} "
                    f"is not in the class census"
                )
            image.append(down)
        edges.append(tuple(sorted(layer)))
        iota.append(tuple(image))
    return LambdaGraphSystem(
        alphabet=alphabet,
        levels=levels,
        edges=tuple(edges),
        iota=tuple(iota),
    )


def build_lambda_synchronizing(
    spec: SubshiftSpec,
    depth: int,
    budget: Budget = DEFAULT_BUDGET,
) -> LambdaGraphSystem:
    """Canonical system of a subshift, truncated at `depth`.

    Shifts of finite type and sofic covers go through an exact quotient of
    their cover by past equivalence; full shifts collapse to a single-vertex
    chain; bracket shifts and their expansions use the generic class-based
    construction.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if depth > budget.max_depth:
        raise ValueError(f"depth {depth} exceeds budget cap {budget.max_depth}")
    if isinstance(spec, SftForbidden):
        cover, _ = sft_cover(spec)
        return _quotient_system(cover, depth)
    if isinstance(spec, SoficGraph):
        return _quotient_system(spec.graph, depth)
    if isinstance(spec, FullShift):
        return _full_shift_chain(spec, depth)
    return _class_system(spec, depth, budget)


# -- canonical form ------------------------------------------------------


def canonical_form(sys: LambdaGraphSystem) -> LambdaGraphSystem:
    """Rename vertices by predecessor structure; byte-stable normal form.

    Multiple top-level vertices are first merged into a single root (their
    out-edges are pooled, which preserves left-resolvedness because a
    left-resolving layer has at most one source per (symbol, target) pair).
    Each vertex then gets a key built from the labels and keys of its
    predecessors; key clashes mean the system is not predecessor-separated
    and are an error.  Vertices are sorted by key and tags are cleared, so
    two systems are level-isomorphic exactly when their canonical forms are
    equal.
    """
    edges = [set(layer) for layer in sys.edges]
    iota = [list(mapping) for mapping in sys.iota]
    sizes = list(sys.sizes)
    if sizes[0] > 1:
        if sys.depth >= 1:
            edges[0] = {(0, a, t) for s, a, t in edges[0]}
            iota[0] = [0] * sizes[1]
        sizes[0] = 1

    keys: list[list] = [[()] * sizes[0]]
    for l in range(1, len(sizes)):
        incoming: list[list[tuple[int, tuple]]] = [[] for _ in range(sizes[l])]
        for s, a, t in edges[l - 1]:
            incoming[t].append((a, keys[l - 1][s]))
        level_keys = [tuple(sorted(pairs)) for pairs in incoming]
        seen: dict[tuple, int] = {}
        for v, key in enumerate(level_keys):
            if key in seen:
                raise ValueError(
                    f"not predecessor-separated: vertices {seen[key]} and {v} "
                    f"at level {l} have identical predecessor structure"
                )
            seen[key] = v
        keys.append(level_keys)

    orders = [sorted(range(sizes[l]), key=lambda v: keys[l][v]) for l in range(len(sizes))]
    rename = [{old: new for new, old in enumerate(order)} for order in orders]
    new_edges = tuple(
        tuple(sorted((rename[l][s], a, rename[l + 1][t]) for s, a, t in edges[l]))
        for l in range(len(sizes) - 1)
    )
    new_iota = tuple(
        tuple(rename[l][iota[l][orders[l + 1][v]]] for v in range(sizes[l + 1]))
        for l in range(len(sizes) - 1)
    )
    levels = tuple(VertexLevel(size=m, tags=("",) * m) for m in sizes)
    return LambdaGraphSystem(
        alphabet=sys.alphabet,
        levels=levels,
        edges=new_edges,
        iota=new_iota,
    )


def level_isomorphic(first: LambdaGraphSystem, second: LambdaGraphSystem) -> bool:
    """Level-preserving isomorphism of systems, via canonical forms."""
    return canonical_form(first) == canonical_form(second)
