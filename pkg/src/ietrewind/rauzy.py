"""Forward induction moves, their visitation matrices, and matrix decoders.

A move of type t takes the last symbol of row t as winner and the last
symbol of the other row as loser; the loser is reinserted immediately after
the winner in its own row.  Each move emits the unimodular matrix
``identity + E(winner, loser)`` (pair flavor) or the corresponding
position-indexed matrix (permutation flavor).
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Pair,
    Permutation,
    is_irreducible_pair,
    is_irreducible_perm,
)
from .matrices import Matrix, elementary, entry_sum, matmul


class NonIrreducible(Exception):
    """Induction is undefined on reducible data."""


class MalformedMatrix(Exception):
    """A matrix does not have the shape its decoder requires."""


@dataclass(frozen=True)
class MoveRecord:
    """One induction event.

    ``losers`` is the set of symbols that lose during the event and ``power``
    the number of elementary moves it bundles (1 for a plain move).  ``k``
    accompanies permutation-flavor type-1 moves only.
    """

    winner: object
    losers: frozenset
    type_tag: int | None = None
    k: int | None = None
    power: int = 1

    def __post_init__(self):
        if not self.losers:
            raise ValueError("losers must be non-empty")
        if self.winner in self.losers:
            raise ValueError("the winner cannot also lose")
        if self.k is not None and self.type_tag != 1:
            raise ValueError("k only accompanies type-1 moves")


@dataclass(frozen=True)
class RauzyPath:
    """A simulated path: one matrix and one record per elementary move.

    ``index`` is the matrix legend (alphabet symbols for pair flavor, the
    tuple 1..n otherwise); ``states`` holds the visited states including the
    start, hence one entry more than ``moves``.
    """

    flavor: str
    index: tuple
    start: object
    moves: tuple
    matrices: tuple
    states: tuple | None = None

    @property
    def n(self) -> int:
        return len(self.index)


def rauzy_step_pair(pair: Pair, t: int):
    """One move of type t on a pair; returns (new pair, matrix, record)."""
    if t not in (0, 1):
        raise ValueError("move type must be 0 or 1")
    if not is_irreducible_pair(pair):
        raise NonIrreducible("induction needs an irreducible pair")
    rows = [pair.row0, pair.row1]
    winner = rows[t][-1]
    loser = rows[1 - t][-1]
    other = rows[1 - t]
    cut = other.index(winner) + 1
    rows[1 - t] = other[:cut] + (loser,) + other[cut:-1]
    new_pair = Pair(pair.alphabet, rows[0], rows[1])
    pos = {s: i for i, s in enumerate(pair.alphabet)}
    theta = elementary(pair.n, pos[winner], pos[loser])
    record = MoveRecord(winner, frozenset((loser,)), type_tag=t)
    return new_pair, theta, record


def type1_matrix(n: int, k: int) -> Matrix:
    """The visitation matrix of a type-1 move made at state position k."""
    if not 1 <= k <= n - 1:
        raise ValueError("k must lie in 1..n-1")
    return tuple(
        tuple(
            1
            if (
                (i == j and i <= k)
                or (j == i + 1 and i >= k)
                or (i == n and j == k + 1)
            )
            else 0
            for j in range(1, n + 1)
        )
        for i in range(1, n + 1)
    )


def rauzy_step_perm(perm: Permutation, t: int):
    """One move of type t on a permutation; returns (new perm, matrix, record)."""
    if t not in (0, 1):
        raise ValueError("move type must be 0 or 1")
    if not is_irreducible_perm(perm):
        raise NonIrreducible("induction needs an irreducible permutation")
    n = perm.n
    img = perm.image
    if t == 0:
        last = img[-1]
        new = tuple(v if v <= last else (last + 1 if v == n else v + 1) for v in img)
        loser = img.index(n) + 1
        mat = elementary(n, n - 1, loser - 1)
        record = MoveRecord(n, frozenset((loser,)), type_tag=0)
        return Permutation(new), mat, record
    k = img.index(n) + 1
    new = img[:k] + (img[-1],) + img[k:-1]
    record = MoveRecord(k, frozenset((n,)), type_tag=1, k=k)
    return Permutation(new), type1_matrix(n, k), record


def simulate_pair(start: Pair, types) -> RauzyPath:
    state = start
    moves, mats, states = [], [], [start]
    for t in types:
        state, theta, record = rauzy_step_pair(state, t)
        moves.append(record)
        mats.append(theta)
        states.append(state)
    return RauzyPath("pair", start.alphabet, start, tuple(moves), tuple(mats), tuple(states))


def simulate_perm(start: Permutation, types) -> RauzyPath:
    state = start
    moves, mats, states = [], [], [start]
    for t in types:
        state, mat, record = rauzy_step_perm(state, t)
        moves.append(record)
        mats.append(mat)
        states.append(state)
    index = tuple(range(1, start.n + 1))
    return RauzyPath("permutation", index, start, tuple(moves), tuple(mats), tuple(states))


def _check_square(a) -> Matrix:
    mat = tuple(tuple(int(v) for v in row) for row in a)
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise MalformedMatrix("matrix must be square and non-empty")
    return mat


def decode_theta(theta: Matrix, legend=None):
    """Read (winner, loser) off a single pair-flavor move matrix."""
    mat = _check_square(theta)
    n = len(mat)
    legend = tuple(legend) if legend is not None else tuple(range(1, n + 1))
    hit = None
    for i, row in enumerate(mat):
        for j, v in enumerate(row):
            if i == j:
                if v != 1:
                    raise MalformedMatrix("diagonal entries must all be 1")
            elif v == 1:
                if hit is not None:
                    raise MalformedMatrix("more than one off-diagonal entry")
                hit = (i, j)
            elif v != 0:
                raise MalformedMatrix("entries must be 0 or 1")
    if hit is None:
        raise MalformedMatrix("the identity matrix encodes no move")
    return legend[hit[0]], legend[hit[1]]


def _is_type0_product(mat: Matrix) -> bool:
    n = len(mat)
    for i in range(n - 1):
        for j, v in enumerate(mat[i]):
            if v != (1 if i == j else 0):
                return False
    last = mat[n - 1]
    if last[n - 1] != 1 or any(v < 0 for v in last):
        return False
    return any(v > 0 for j, v in enumerate(last) if j != n - 1)


def decode_A(a: Matrix):
    """Classify a permutation-flavor product matrix.

    Returns (0, None, 1) for a type-0 product (reading the loser counts off
    the last row is the caller's business), or (1, k, p) when the matrix is
    the p-th power of the type-1 matrix at position k.
    """
    mat = _check_square(a)
    n = len(mat)
    if _is_type0_product(mat):
        return 0, None, 1
    total = entry_sum(mat)
    for k in range(1, n):
        base = type1_matrix(n, k)
        power = base
        p = 1
        while True:
            if power == mat:
                return 1, k, p
            if entry_sum(power) >= total:
                break
            power = matmul(power, base)
            p += 1
    raise MalformedMatrix("neither a type-0 product nor a type-1 power")


def type0_loser_counts(a: Matrix) -> dict:
    """Per-position visit counts read off the last row of a type-0 product."""
    mat = _check_square(a)
    n = len(mat)
    if not _is_type0_product(mat):
        raise MalformedMatrix("not a type-0 product matrix")
    return {j + 1: v for j, v in enumerate(mat[n - 1]) if j != n - 1 and v}


def is_complete(winners, alphabet) -> bool:
    """Does every symbol win at least once?"""
    return set(alphabet) <= set(winners)


def c_completeness(winners, alphabet):
    """Greedy count of disjoint complete prefixes.

    Returns (C, boundaries) where boundaries[i] is the 1-based index at
    which the (i+1)-th complete stretch closes.
    """
    target = set(alphabet)
    seen: set = set()
    boundaries = []
    for i, w in enumerate(winners, 1):
        seen.add(w)
        if target <= seen:
            boundaries.append(i)
            seen = set()
    return len(boundaries), tuple(boundaries)
