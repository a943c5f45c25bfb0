"""Canonical forms, isomorphism tests, and edge orbits for coloured boards.

Two boards are isomorphic when some vertex permutation maps one onto the
other preserving every edge state (absent edges included, so isomorphisms
of partial colourings of a base graph are exactly base automorphisms).

The canonical form is found by iterated colour refinement followed by a
backtracking search over partition-respecting permutations, keeping the
lexicographically least edge-state sequence.  The search also yields the
full automorphism group of the board, which the generator reuses to expand
only one move per edge orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .board import ColoredBoard, EdgeId, colex_index, edge_endpoints, encode

Permutation = tuple[int, ...]


@lru_cache(maxsize=None)
def _edge_table(n: int) -> tuple[tuple[int, ...], ...]:
    """EDGE[u][v] = colex index, with EDGE[u][u] unused."""
    table = [[0] * n for _ in range(n)]
    for u in range(1, n):
        for v in range(u):
            table[u][v] = table[v][u] = colex_index(u, v)
    return tuple(tuple(row) for row in table)


def relabel(board: ColoredBoard, perm: Permutation) -> ColoredBoard:
    """Board with vertex x renamed perm[x]."""
    n = board.n
    edge = _edge_table(n)
    states = board.states
    out = bytearray(len(states))
    for u in range(1, n):
        pu = perm[u]
        row = edge[u]
        prow = edge[pu]
        for v in range(u):
            out[prow[perm[v]]] = states[row[v]]
    return ColoredBoard(n, bytes(out))


def invert(perm: Permutation) -> Permutation:
    inv = [0] * len(perm)
    for x, px in enumerate(perm):
        inv[px] = x
    return tuple(inv)


def permute_edge(e: EdgeId, perm: Permutation) -> EdgeId:
    u, v = edge_endpoints(e)
    return colex_index(perm[u], perm[v])


def _refine(n: int, states: bytes) -> list[list[int]]:
    """Stable ordered partition of vertices under iterated signature refinement.

    A vertex's signature is its current class plus the multiset of
    (neighbour class, edge state) pairs over all other vertices.  Cells are
    ordered by signature, which is label-independent.
    """
    edge = _edge_table(n)
    cls = [0] * n
    count = 1
    while True:
        sigs = []
        for v in range(n):
            row = edge[v]
            profile = sorted((cls[u], states[row[u]]) for u in range(n) if u != v)
            sigs.append((cls[v], tuple(profile)))
        ranking = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new_cls = [ranking[sig] for sig in sigs]
        new_count = len(ranking)
        if new_count == count:
            cls = new_cls
            break
        cls, count = new_cls, new_count
    cells: list[list[int]] = [[] for _ in range(count)]
    for v in range(n):
        cells[cls[v]].append(v)
    return cells


@dataclass(frozen=True)
class CanonicalResult:
    """Canonical key plus the witnesses the search produced.

    key:    encoded bytes of the canonically relabelled board
    states: edge states of that relabelled board, one byte per edge
    perm:   one permutation (old vertex -> new label) achieving the key
    auts:   the board's full automorphism group, expressed on canonical labels
    """

    key: bytes
    states: bytes
    perm: Permutation
    auts: tuple[Permutation, ...]


def canonical_full(board: ColoredBoard) -> CanonicalResult:
    n = board.n
    states = board.states
    edge = _edge_table(n)
    cells = _refine(n, states)

    if all(len(cell) == 1 for cell in cells):
        perm = [0] * n
        for label, cell in enumerate(cells):
            perm[cell[0]] = label
        perm_t = tuple(perm)
        canon = relabel(board, perm_t)
        return CanonicalResult(encode(canon), canon.states, perm_t, (tuple(range(n)),))

    # cell_at[label] = vertices eligible for that position
    cell_at: list[list[int]] = []
    for cell in cells:
        cell_at.extend([cell] * len(cell))

    best: list[tuple[int, ...] | None] = [None] * n
    minimal: list[tuple[int, ...]] = []  # assignments: new label -> old vertex
    assigned: list[int] = [0] * n
    used = [False] * n

    def dfs(level: int) -> None:
        if level == n:
            minimal.append(tuple(assigned))
            return
        for w in cell_at[level]:
            if used[w]:
                continue
            row = edge[w]
            block = tuple(states[row[assigned[j]]] for j in range(level))
            prev = best[level]
            if prev is None or block < prev:
                best[level] = block
                for k in range(level + 1, n):
                    best[k] = None
                minimal.clear()
            elif block > prev:
                continue
            used[w] = True
            assigned[level] = w
            dfs(level + 1)
            used[w] = False
        return

    dfs(0)

    first = minimal[0]
    perm = invert(first)  # old vertex -> new label
    canon = relabel(board, perm)
    # assignments a, b both minimal  =>  label map b^-1 . a fixes the canon board
    auts = []
    for other in minimal:
        tau = [0] * n
        inv_other = invert(other)
        for label in range(n):
            tau[label] = inv_other[first[label]]
        auts.append(tuple(tau))
    return CanonicalResult(encode(canon), canon.states, perm, tuple(auts))


def canonical_form(board: ColoredBoard) -> bytes:
    """Label-invariant key: equal keys exactly for isomorphic boards."""
    return canonical_full(board).key


def is_isomorphic(a: ColoredBoard, b: ColoredBoard) -> bool:
    if a.n != b.n:
        return False
    return canonical_form(a) == canonical_form(b)


def _orbit_partition(edges: list[EdgeId], auts: tuple[Permutation, ...]) -> list[list[EdgeId]]:
    parent: dict[EdgeId, EdgeId] = {e: e for e in edges}

    def find(x: EdgeId) -> EdgeId:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for tau in auts:
        if all(tau[i] == i for i in range(len(tau))):
            continue
        for e in edges:
            f = permute_edge(e, tau)
            ra, rb = find(e), find(f)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[EdgeId, list[EdgeId]] = {}
    for e in edges:
        groups.setdefault(find(e), []).append(e)
    return [sorted(groups[r]) for r in sorted(groups)]


def automorphisms(board: ColoredBoard) -> tuple[Permutation, ...]:
    """The board's full automorphism group on its own vertex labels."""
    result = canonical_full(board)
    inv = invert(result.perm)
    return tuple(
        tuple(inv[tau[result.perm[x]]] for x in range(board.n)) for tau in result.auts
    )


def edge_orbits(board: ColoredBoard) -> list[list[EdgeId]]:
    """Orbits of the present edges under the board's automorphisms.

    Classes are sorted internally and ordered by their minimum edge index.
    """
    return _orbit_partition(board.present_edges, automorphisms(board))
