"""Translating permutation-flavor paths into labeled pair-flavor paths.

A labeling tau attaches symbols to positions.  Under induction the labeling
drifts: a type-1 move at position k composes tau with the cycle-like shift
``delta(k, n)``, a type-0 move leaves it alone.  Conjugating each
permutation-flavor matrix by the labeling matrices on both sides recovers
the symbol-indexed matrix of the lifted pair path.
"""
from __future__ import annotations

from .core import Permutation, perm_power, sorted_symbols
from .matrices import Matrix, matmul, transpose
from .rauzy import decode_A
from .zorich import ZorichPath


class BadK(Exception):
    """A shift index outside 1..n-1."""


def delta(k: int, n: int) -> Permutation:
    """The relabeling shift: fixes 1..k, sends k+1 to n, shifts the rest down."""
    if not 1 <= k <= n - 1:
        raise BadK(f"shift index {k} outside 1..{n - 1}")
    return Permutation(
        tuple(j if j <= k else (n if j == k + 1 else j - 1) for j in range(1, n + 1))
    )


def sigma(t: int, k: int | None, n: int) -> Permutation:
    """Per-move relabeling: identity for type 0, ``delta(k, n)`` for type 1."""
    if t == 0:
        return Permutation(tuple(range(1, n + 1)))
    if k is None:
        raise BadK("type-1 relabeling needs k")
    return delta(k, n)


def relabel(tau, shift: Permutation) -> tuple:
    """The labeling tau composed with a position shift."""
    tau = tuple(tau)
    return tuple(tau[v - 1] for v in shift.image)


def psi_matrix(tau, legend) -> Matrix:
    """0/1 change-of-index matrix: rows follow ``legend``, columns positions."""
    tau = tuple(tau)
    legend = tuple(legend)
    n = len(tau)
    if len(legend) != n or set(legend) != set(tau):
        raise ValueError("legend must order exactly the labeling's symbols")
    return tuple(tuple(1 if tau[i] == a else 0 for i in range(n)) for a in legend)


def lift_step(matrix: Matrix, tau, legend, t: int, k: int | None = None, power: int = 1):
    """Conjugate one permutation-flavor matrix into symbol indexing.

    Returns (theta, next_tau) where theta = Psi_tau . matrix . Psi*_next_tau
    and next_tau is the labeling after the move(s).
    """
    n = len(tau)
    if t == 0:
        nxt = tuple(tau)
    else:
        nxt = relabel(tau, perm_power(delta(k, n), power))
    theta = matmul(matmul(psi_matrix(tau, legend), matrix), transpose(psi_matrix(nxt, legend)))
    return theta, nxt


def lift_zorich_path(path: ZorichPath, tau=None):
    """Lift a permutation-flavor path blockwise; returns (pair path, final tau)."""
    if path.flavor != "permutation":
        raise ValueError("only permutation-flavor paths can be lifted")
    n = path.n
    current = tuple(tau) if tau is not None else tuple(range(1, n + 1))
    if len(current) != n:
        raise ValueError("labeling size must match the path")
    legend = sorted_symbols(current)
    thetas = []
    for mat in path.matrices:
        t, k, p = decode_A(mat)
        theta, current = lift_step(mat, current, legend, t, k, p)
        thetas.append(theta)
    lifted = ZorichPath("pair", legend, tuple(thetas), path.grouping, None)
    return lifted, current
