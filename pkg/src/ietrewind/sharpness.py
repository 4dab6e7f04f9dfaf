"""Counterexample paths showing the recovery bound cannot be improved.

``build_ambiguous_path`` produces, for any alphabet size n >= 8, a move
record whose winner sequence contains floor(log2 n) - 1 complete stretches
while recovery still cannot settle the rows: roughly n / 2^C letters stay
bunched in a single block.  The construction works backwards from the
ambiguous end state, so every intermediate state is checked by the same
rewind rules the recovery code uses.

The end states all share one shape, captured by :class:`PivotWitness`: each
row is a run of singletons, except possibly one unresolved block at the far
left, and each row's first singleton letter is the other row's last letter.
That shape is what lets a path cycle back to the very same knowledge
state (``refresh_cycle_path``) or halve the unresolved block at the cost
of one more complete stretch (``halving_path``).
"""
from __future__ import annotations

from dataclasses import dataclass

from .rauzy import MoveRecord, c_completeness
from .recovery import (
    PartiallyOrderedPair,
    _loser_row_rewind,
    _winner_row_rewind,
    enumerate_agreeing,
)


class BadN(ValueError):
    """The requested size is outside what the construction supports."""


class PreconditionFailed(Exception):
    """The witness state lacks a property the requested path needs."""


def _only(block):
    return next(iter(block))


@dataclass(frozen=True)
class PivotWitness:
    """A knowledge state in pivot form, with its two hinge letters.

    ``pivots[t]`` is row t's leftmost singleton letter, which pivot form
    places at the right end of row 1-t.
    """

    pop: PartiallyOrderedPair
    pivots: tuple

    @property
    def alphabet(self) -> tuple:
        return self.pop.alphabet


def pivot_form(pop: PartiallyOrderedPair):
    """The :class:`PivotWitness` for ``pop``, or None if it is not in form.

    Pivot form: any non-singleton block sits leftmost in its row, every row
    ends in a singleton, and the two hinge letters are distinct.
    """
    lead = []
    trail = []
    for t in (0, 1):
        row = pop.row(t)
        if any(len(b) > 1 for b in row[1:]):
            return None
        sing = [_only(b) for b in row if len(b) == 1]
        if not sing:
            return None
        lead.append(sing[0])
        trail.append(_only(row[-1]))
    if lead[0] != trail[1] or lead[1] != trail[0] or lead[0] == lead[1]:
        return None
    return PivotWitness(pop=pop, pivots=(lead[0], lead[1]))


class _Backward:
    """Builds a path last-move-first, checking each claim as it is made.

    ``push`` applies the recovery rewind for one elementary move, so an
    impossible construction step raises instead of producing a bogus path.
    ``moves``/``types`` are in backward order: entry 0 is the final move.
    """

    def __init__(self, alphabet, rows=None):
        self.alphabet = tuple(alphabet)
        self.universe = frozenset(alphabet)
        self.rows = [tuple(r) for r in rows] if rows is not None else None
        self.moves: list = []
        self.types: list = []

    def push(self, winner, loser, t):
        step = len(self.moves) + 1
        if self.rows is None:
            # Seeding fixes the path's final move; type 0 is the convention
            # the recovery side assumes for it.
            assert t == 0
            self.rows = [None, None]
            self.rows[t] = (
                frozenset(self.universe - {winner}),
                frozenset((winner,)),
            )
            self.rows[1 - t] = (
                frozenset(self.universe - {loser}),
                frozenset((loser,)),
            )
        else:
            if self.moves:
                same_winner = winner == self.moves[-1][0]
                same_type = t == self.types[-1]
                assert same_winner == same_type, "winner change must flip the type"
            self.rows[t] = _winner_row_rewind(self.rows[t], winner, step)
            self.rows[1 - t] = _loser_row_rewind(
                self.rows[1 - t], winner, frozenset((loser,)), step
            )
        self.moves.append((winner, loser))
        self.types.append(t)

    def pop_state(self) -> PartiallyOrderedPair:
        return PartiallyOrderedPair(self.alphabet, self.rows[0], self.rows[1])

    def settled_row(self) -> int:
        for t in (0, 1):
            if all(len(b) == 1 for b in self.rows[t]):
                return t
        raise AssertionError("no fully settled row")

    def singleton_letters(self, t: int):
        return {_only(b) for b in self.rows[t] if len(b) == 1}

    def forward_moves(self) -> tuple:
        return tuple(
            MoveRecord(winner=w, losers=frozenset((l,)), type_tag=t)
            for (w, l), t in zip(reversed(self.moves), reversed(self.types))
        )


def _push_first_segment(builder: _Backward, n: int):
    # A ladder 1 beats 2, 2 beats 3, ... settles one row completely once n
    # sweeps the survivors of the other row.
    for i in range(1, n):
        builder.push(i, i + 1, (i + 1) % 2)
    t = 1 if n % 2 == 0 else 0
    for loser in range(n - 2, 0, -2):
        builder.push(n, loser, t)


def _push_refresh(builder: _Backward, r: int):
    """A complete stretch that returns to the exact same knowledge state."""
    start = (builder.rows[0], builder.rows[1])
    row = builder.rows[r]
    sing_positions = [i for i, b in enumerate(row) if len(b) == 1]
    hinge = _only(row[sing_positions[0]])
    both = builder.singleton_letters(r) & builder.singleton_letters(1 - r)
    tail = [_only(row[i]) for i in sing_positions[1:]]
    for letter in tail:
        builder.push(hinge, letter, 1 - r)
        if letter in both:
            other = builder.rows[1 - r]
            pos = other.index(frozenset((letter,)))
            for blk in other[pos + 1:]:
                assert len(blk) == 1
                builder.push(letter, _only(blk), r)
    assert (builder.rows[0], builder.rows[1]) == start


def _row_signature(builder: _Backward, r: int):
    """(singletons of row r in order, singletons of row 1-r after its block)."""
    s = [_only(b) for b in builder.rows[r] if len(b) == 1]
    other = builder.rows[1 - r]
    first = 1 if len(other[0]) > 1 else 0
    sig = []
    for blk in other[first:]:
        assert len(blk) == 1
        sig.append(_only(blk))
    return s, sig


def _push_pair_path(builder: _Backward, r: int, b1, b2):
    """Extract ``b2`` from the unresolved block, pinning it against ``b1``.

    Costs one complete stretch; afterwards the surviving letters of the
    block hold the very same positions as before.
    """
    s, sig = _row_signature(builder, r)
    d0 = s.index(b1)
    e0 = s.index(b2)
    for x in s[1:d0 + 1]:
        builder.push(s[0], x, 1 - r)
    builder.push(b1, b2, r)
    for x in s[e0 + 1:]:
        builder.push(b2, x, 1 - r)
    for x in sig[1:]:
        builder.push(sig[0], x, r)


def _push_odd_path(builder: _Backward, r: int, b3):
    # When the unresolved block has odd size the leftover letter splits off
    # on its own, becoming the new hinge of its row.
    s, sig = _row_signature(builder, r)
    f0 = s.index(b3)
    for x in s[1:f0 + 1]:
        builder.push(s[0], x, 1 - r)
    for x in sig:
        builder.push(b3, x, r)


@dataclass(frozen=True)
class SharpnessResult:
    """An ambiguous path: ``depth`` complete stretches, settled start not
    recoverable; ``unresolved`` letters stay bunched per row."""

    n: int
    depth: int
    moves: tuple
    start: PartiallyOrderedPair
    checkpoints: tuple
    unresolved: int


def build_ambiguous_path(n: int) -> SharpnessResult:
    if n < 8:
        raise BadN("the construction needs an alphabet of at least 8 letters")
    depth = n.bit_length() - 2
    alphabet = tuple(range(1, n + 1))
    builder = _Backward(alphabet)
    _push_first_segment(builder, n)
    checkpoints = [("segment", builder.pop_state())]
    for i in range(depth - 1):
        r = builder.settled_row()
        _push_refresh(builder, r)
        checkpoints.append((f"refresh{i}", builder.pop_state()))
        unresolved_block = builder.rows[1 - r][0]
        u = len(unresolved_block)
        assert u >= 4
        position = {_only(b): p for p, b in enumerate(builder.rows[r])}
        order = sorted(unresolved_block, key=position.__getitem__)
        for j in range(0, u - 1, 2):
            _push_pair_path(builder, r, order[j], order[j + 1])
            checkpoints.append((f"pair{i}.{j // 2}", builder.pop_state()))
        if u % 2:
            _push_odd_path(builder, r, order[-1])
            checkpoints.append((f"odd{i}", builder.pop_state()))
    start = builder.pop_state()
    moves = builder.forward_moves()
    winners = [m.winner for m in moves]
    stretches, _ = c_completeness(winners, alphabet)
    assert stretches == depth
    unresolved = n - min(len(start.singletons(0)), len(start.singletons(1)))
    assert unresolved == n >> depth
    return SharpnessResult(
        n=n,
        depth=depth,
        moves=moves,
        start=start,
        checkpoints=tuple(checkpoints),
        unresolved=unresolved,
    )


def refresh_cycle_path(witness: PivotWitness) -> list:
    """Forward (winner, loser) moves of a stretch leaving the knowledge
    state of ``witness`` unchanged.

    Every letter settled in both rows wins along the way, so on a fully
    settled witness the stretch is complete.
    """
    pop = witness.pop
    if pop.singletons(0) | pop.singletons(1) != set(pop.alphabet):
        raise PreconditionFailed("every letter must be settled in some row")
    builder = _Backward(pop.alphabet, rows=(pop.q0, pop.q1))
    _push_refresh(builder, 0)
    return [(w, l) for w, l in reversed(builder.moves)]


def halving_path(witness: PivotWitness, r: int):
    """Forward moves cutting row 1-r's unresolved block to half its size.

    Returns (moves, start) where ``start`` is the pivot witness the longer
    path now begins from.
    """
    pop = witness.pop
    private = pop.singletons(r) - pop.singletons(1 - r)
    if len(private) < 4:
        raise PreconditionFailed("the unresolved block must hold at least 4 letters")
    builder = _Backward(pop.alphabet, rows=(pop.q0, pop.q1))
    position = {}
    for p, b in enumerate(builder.rows[r]):
        if len(b) == 1:
            position[_only(b)] = p
    order = sorted(private, key=position.__getitem__)
    u = len(order)
    for j in range(0, u - 1, 2):
        _push_pair_path(builder, r, order[j], order[j + 1])
    if u % 2:
        _push_odd_path(builder, r, order[-1])
    start = pivot_form(builder.pop_state())
    assert start is not None
    return [(w, l) for w, l in reversed(builder.moves)], start


def has_definitive_positions(pop: PartiallyOrderedPair, bound=None) -> dict:
    """Letters inside unresolved blocks that every agreeing pair places at
    one same position anyway, by row."""
    candidates = enumerate_agreeing(pop, irreducible_only=True, bound=bound)
    if not candidates:
        raise PreconditionFailed("no irreducible pair agrees with the knowledge")
    out = {}
    for t in (0, 1):
        hidden = {a for b in pop.row(t) if len(b) > 1 for a in b}
        pinned = set()
        for a in hidden:
            spots = {c.position(t, a) for c in candidates}
            if len(spots) == 1:
                pinned.add(a)
        out[t] = frozenset(pinned)
    return out
