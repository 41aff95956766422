"""Reduction calculus for Dyck and Markov-Dyck shifts.

Alphabet convention: a bracket alphabet over n pairs has opening symbols
a1..an (ids 0..n-1) followed by closing symbols b1..bn (ids n..2n-1).
Reading left to right, a_i opens a bracket that a later b_i must close;
an adjacent pair a_i b_j cancels when i = j and kills the word when i != j.

Words reduce to the normal form (unmatched closes)(unmatched opens).  In the
Markov case a 0/1 transition matrix A constrains three things:

* consecutive unmatched closes b_i b_j need A(i,j) = 1;
* an open pushed on top of a pending open a_i a_j needs A(j,i) = 1
  (the later-read bracket is the inner one);
* cancellation a_i b_i is not the identity: it leaves behind a one-step
  constraint "the next state must be reachable from i".  The reduction
  state therefore carries a support set: the set of states the next
  unmatched close (or the interior of the next open run) may start with.

The support set is what makes zero-detection exact; matching brackets and
checking A alone accepts words that are zero in the underlying monoid
(e.g. over A = [[0,1],[1,0]] the word "a1 b1 a1" forces support
{k: A(1,k)=1} ∩ {k: A(1,k)=1} = {2} and survives, while "a1 b1 a2"
needs a state reachable from both 1 and 2 and dies).
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import Word

Matrix01 = tuple[tuple[int, ...], ...]


def all_ones(n: int) -> Matrix01:
    return tuple(tuple(1 for _ in range(n)) for _ in range(n))


def row_supports(matrix: Matrix01) -> tuple[frozenset[int], ...]:
    return tuple(
        frozenset(j for j, x in enumerate(row) if x) for row in matrix
    )


def validate_transition_matrix(matrix: Matrix01) -> None:
    n = len(matrix)
    if n < 2:
        raise ValueError("transition matrix must be at least 2x2")
    for row in matrix:
        if len(row) != n:
            raise ValueError("transition matrix must be square")
        for x in row:
            if x not in (0, 1):
                raise ValueError("transition matrix entries must be 0 or 1")
    for i in range(n):
        if not any(matrix[i][j] for j in range(n)):
            raise ValueError(f"zero row {i} in transition matrix")
        if not any(matrix[j][i] for j in range(n)):
            raise ValueError(f"zero column {i} in transition matrix")


@dataclass(frozen=True)
class DyckReduction:
    """Normal form of a bracket word, or Zero.

    `closes`: bracket indices (0-based) of the unmatched closing symbols, in
    reading order; these form the inert left part of the reduced word.
    `opens`: bracket indices of the pending opening symbols, in reading
    order; the last entry is the innermost (most recently opened).
    `support`: states allowed to start whatever is read next at nesting
    depth zero; None for Zero.
    """

    is_zero: bool
    closes: Word = ()
    opens: Word = ()
    support: frozenset[int] | None = None

    @staticmethod
    def zero() -> "DyckReduction":
        return DyckReduction(True)

    def reduced_word(self, n: int) -> Word:
        """The reduced word over the 2n-symbol bracket alphabet."""
        if self.is_zero:
            raise ValueError("zero has no reduced word")
        return tuple(n + j for j in self.closes) + tuple(self.opens)

    @property
    def is_trivial(self) -> bool:
        return not self.is_zero and not self.closes and not self.opens


class BracketMachine:
    """Incremental reducer; states are (support, opens, close_count).

    close_count counts unmatched closes emitted so far: reading the word
    after any length-l past, at most l pending opens of the past exist and
    each emitted close consumes one while any remain, so a word with
    close_count >= l behaves identically after every admissible length-l
    past.  That is the synchronization criterion used elsewhere.
    """

    def __init__(self, matrix: Matrix01):
        validate_transition_matrix(matrix)
        self.matrix = matrix
        self.n = len(matrix)
        self.rows = row_supports(matrix)
        self.full = frozenset(range(self.n))

    @property
    def start(self) -> tuple[frozenset[int], Word, int]:
        return (self.full, (), 0)

    def step(
        self, state: tuple[frozenset[int], Word, int], symbol: int
    ) -> tuple[frozenset[int], Word, int] | None:
        """Apply one symbol; None means the word is zero."""
        support, opens, emitted = state
        n = self.n
        if symbol < n:  # opening bracket
            i = symbol
            if opens:
                if not self.matrix[i][opens[-1]]:
                    return None
                return (support, opens + (i,), emitted)
            s = support & self.rows[i]
            if not s:
                return None
            return (s, (i,), emitted)
        j = symbol - n  # closing bracket
        if opens:
            if opens[-1] != j:
                return None
            rest = opens[:-1]
            if rest:
                return (support, rest, emitted)
            s = support & self.rows[j]
            if not s:
                return None
            return (s, (), emitted)
        if j not in support:
            return None
        return (self.rows[j], (), emitted + 1)

    def run(self, word: Word) -> tuple[frozenset[int], Word, int] | None:
        state = self.start
        for sym in word:
            state = self.step(state, sym)
            if state is None:
                return None
        return state


def reduce_brackets(matrix: Matrix01, word: Word) -> DyckReduction:
    """Reduce a bracket word; exact zero-detection for the Markov case.

    Tracks the full unmatched-close sequence (the machine itself only
    counts them).
    """
    machine = BracketMachine(matrix)
    support = machine.full
    closes: list[int] = []
    opens: list[int] = []
    n = machine.n
    for sym in word:
        if sym < n:
            i = sym
            if opens:
                if not matrix[i][opens[-1]]:
                    return DyckReduction.zero()
                opens.append(i)
            else:
                s = support & machine.rows[i]
                if not s:
                    return DyckReduction.zero()
                support = s
                opens.append(i)
        else:
            j = sym - n
            if opens:
                if opens[-1] != j:
                    return DyckReduction.zero()
                opens.pop()
                if not opens:
                    s = support & machine.rows[j]
                    if not s:
                        return DyckReduction.zero()
                    support = s
            else:
                if j not in support:
                    return DyckReduction.zero()
                closes.append(j)
                support = machine.rows[j]
    return DyckReduction(False, tuple(closes), tuple(opens), support)


def state_words(matrix: Matrix01, length: int) -> list[Word]:
    """A-admissible state sequences of the given length, lexicographic.

    These index the closing words b_{x1}..b_{xl} of the Markov-Dyck shift
    (all state sequences, for the plain Dyck shift over all-ones A).
    """
    n = len(matrix)
    if length == 0:
        return [()]
    out: list[Word] = []

    def go(prefix: tuple[int, ...]) -> None:
        if len(prefix) == length:
            out.append(prefix)
            return
        for k in range(n):
            if not prefix or matrix[prefix[-1]][k]:
                go(prefix + (k,))

    go(())
    return out
