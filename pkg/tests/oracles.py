"""Independent oracles the tests compare the package against.

Everything here is written from scratch on purpose, without importing the
package under test, so that agreement between the two codebases is evidence
rather than a tautology.  The implementations favour the most naive correct
method available: determinantal divisors instead of elimination, explicit
coset enumeration instead of normal forms, partial maps on words instead of
a reduction calculus.
"""

from __future__ import annotations

from itertools import product
from math import gcd


# -- exact linear algebra, redone the slow way ---------------------------


def det_small(m: list[list[int]]) -> int:
    """Determinant by Laplace expansion; fine for the sizes used in tests."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        sub = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_small(sub)
    return total


def adjugate(m: list[list[int]]) -> list[list[int]]:
    n = len(m)
    if n == 1:
        return [[1]]
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [
                [m[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            out[i][j] = (-1) ** (i + j) * det_small(sub)
    return out


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def cokernel_2x2_by_divisors(m: list[list[int]]) -> tuple[int, tuple[int, ...]]:
    """Invariant factors of Z^2 modulo the column lattice of a 2x2 matrix.

    The k-th determinantal divisor (gcd of all k x k minors) equals the
    product of the first k invariant factors, so for a 2x2 matrix the two
    factors are d1 = gcd of the entries and d2 = |det| / d1.  Returns
    (free rank, torsion orders > 1) without any elimination.
    """
    entries = [m[0][0], m[0][1], m[1][0], m[1][1]]
    d1 = gcd_all(entries)
    det = abs(det_small(m))
    if d1 == 0:
        return 2, ()
    if det == 0:
        return 1, (d1,) if d1 > 1 else ()
    d2 = det // d1
    return 0, tuple(d for d in (d1, d2) if d > 1)


def coset_census(m: list[list[int]]) -> tuple[int, dict[int, int]]:
    """Count cosets of the column lattice, and how many each scalar kills.

    Requires det != 0.  Every coset has a representative in [0, |det|)^n
    because det * Z^n lies inside the lattice (M * adj(M) = det * I), and
    x, y are in the same coset iff adj(M) * (x - y) vanishes mod det.  So
    the map x -> adj(M) * x mod |det| separates cosets exactly.

    Returns (#cosets, {k: #cosets c with k*c = 0}) for k = 1..|det|.
    The second value determines a finite abelian group uniquely: a group
    with invariant factors (d_i) has prod gcd(k, d_i) cosets killed by k.
    """
    n = len(m)
    det = det_small(m)
    if det == 0:
        raise ValueError("census needs a nonsingular matrix")
    d = abs(det)
    adj = adjugate(m)
    classes: set[tuple[int, ...]] = set()
    for x in product(range(d), repeat=n):
        v = tuple(sum(adj[i][k] * x[k] for k in range(n)) % d for i in range(n))
        classes.add(v)
    killed = {
        k: sum(1 for v in classes if all((k * c) % d == 0 for c in v))
        for k in range(1, d + 1)
    }
    return len(classes), killed


def killed_counts(torsion: tuple[int, ...], up_to: int) -> dict[int, int]:
    """How many elements of the finite group with these invariant factors
    are killed by each scalar k = 1..up_to."""
    out = {}
    for k in range(1, up_to + 1):
        count = 1
        for t in torsion:
            count *= gcd(k, t)
        out[k] = count
    return out


# -- bracket words via partial maps on state words -----------------------
#
# The bracket monoid of a 0/1 matrix A acts on one-sided admissible state
# sequences: the opening symbol for state i (id i) deletes a leading i, the
# closing symbol (id n+i) prepends i when A(i, first letter) = 1.  A word
# over the bracket alphabet is nonzero iff the composite partial map is
# nonzero, and because each step changes the length by one, testing all
# admissible state words of length len(word) + 1 is exhaustive: the state
# never empties mid-run, so the truncation is never consulted beyond what
# it holds.  The last letter of the word acts first.


def chain_words(matrix, length: int) -> list[tuple[int, ...]]:
    n = len(matrix)
    return [
        w
        for w in product(range(n), repeat=length)
        if all(matrix[w[i]][w[i + 1]] for i in range(length - 1))
    ]


def apply_bracket(matrix, state: tuple[int, ...], symbol: int):
    """One generator acting on a state word; None when undefined."""
    n = len(matrix)
    if symbol < n:
        if state and state[0] == symbol:
            return state[1:]
        return None
    j = symbol - n
    if state and matrix[j][state[0]]:
        return (j,) + state
    return None


def bracket_word_nonzero(matrix, word: tuple[int, ...]) -> bool:
    for base in chain_words(matrix, len(word) + 1):
        state = base
        for symbol in reversed(word):
            state = apply_bracket(matrix, state, symbol)
            if state is None:
                break
        else:
            return True
    return False
