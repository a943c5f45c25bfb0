"""Terminal scoring for the four game kinds, and the solver's objective.

Each game kind maps a fully coloured board to a pair of scores (a, b) for
player 1 (red) and player 2 (blue).  Comparison between outcomes is always
lexicographic on (a - b, a); the integer objective below realises exactly
that order, which lets the solver store plain ints.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import ColoredBoard, EdgeState, GameKind, GameSpec, Player, edge_endpoints


@dataclass(frozen=True, order=False)
class Outcome:
    """Final scores of player 1 (a) and player 2 (b)."""

    a: int
    b: int

    @property
    def s(self) -> int:
        return self.a - self.b


def colour_adjacency(board: ColoredBoard, colour: EdgeState) -> list[int]:
    """Bitmask adjacency rows of the spanning subgraph in one colour."""
    adj = [0] * board.n
    for e, s in enumerate(board.states):
        if s == colour:
            u, v = edge_endpoints(e)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return adj


def _max_clique(adj: list[int], n: int) -> int:
    best = 1 if n >= 1 else 0

    def expand(cand: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            expand(cand & adj[v], size + 1)

    for v in range(n):
        expand(adj[v] & ~((1 << (v + 1)) - 1), 1)
    return best


def _maximal_cliques(adj: list[int], n: int) -> list[int]:
    """Vertex masks of all maximal cliques (Bron-Kerbosch with pivoting)."""
    out: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best_deg = -1
        pool = pivot_pool
        while pool:
            u = (pool & -pool).bit_length() - 1
            pool &= pool - 1
            d = (adj[u] & p).bit_count()
            if d > best_deg:
                best_deg, pivot = d, u
        ext = p & ~adj[pivot]
        while ext:
            v = (ext & -ext).bit_length() - 1
            ext &= ext - 1
            bk(r | (1 << v), p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, (1 << n) - 1, 0)
    return out


def clique_score(board: ColoredBoard, colour: EdgeState) -> int:
    """Clique number of the colour's spanning subgraph; 1 when it has no edges.

    Every vertex is a 1-clique, so the score is at least 1 on any board.
    """
    return _max_clique(colour_adjacency(board, colour), board.n)


def star_score(board: ColoredBoard, colour: EdgeState) -> int:
    """Maximum degree in the colour's subgraph; 0 when it has no edges."""
    return max((row.bit_count() for row in colour_adjacency(board, colour)), default=0)


def vc_score(board: ColoredBoard) -> Outcome:
    """Vertex capturing: a vertex goes to the player with more incident edges.

    Ties at a vertex count for neither player.
    """
    red = colour_adjacency(board, EdgeState.RED)
    blue = colour_adjacency(board, EdgeState.BLUE)
    a = b = 0
    for v in range(board.n):
        dr, db = red[v].bit_count(), blue[v].bit_count()
        if dr > db:
            a += 1
        elif db > dr:
            b += 1
    return Outcome(a, b)


def colex_score(board: ColoredBoard, colour: EdgeState) -> int:
    """Largest m such that C(m) is a (not necessarily induced) subgraph.

    C(m) is K_k plus one vertex joined to m - C(k, 2) clique vertices, so it
    embeds exactly when some clique of size k has an outside vertex with that
    many neighbours inside; only maximal cliques need checking.  Score 0 when
    the colour class is empty.
    """
    adj = colour_adjacency(board, colour)
    if not any(adj):
        return 0
    n = board.n
    best = 0
    for mask in _maximal_cliques(adj, n):
        k = mask.bit_count()
        if k < 2:
            continue
        base = k * (k - 1) // 2
        extra = 0
        outside = ((1 << n) - 1) & ~mask
        while outside:
            v = (outside & -outside).bit_length() - 1
            outside &= outside - 1
            extra = max(extra, min((adj[v] & mask).bit_count(), k - 1))
        best = max(best, base + extra)
    return best


def score_pair(board: ColoredBoard, kind: GameKind) -> Outcome:
    """Terminal scores for both players under the given game kind."""
    if kind is GameKind.CLIQUE:
        return Outcome(clique_score(board, EdgeState.RED), clique_score(board, EdgeState.BLUE))
    if kind is GameKind.STAR:
        return Outcome(star_score(board, EdgeState.RED), star_score(board, EdgeState.BLUE))
    if kind is GameKind.VC:
        return vc_score(board)
    if kind is GameKind.COLEX:
        return Outcome(colex_score(board, EdgeState.RED), colex_score(board, EdgeState.BLUE))
    raise ValueError(f"unknown game kind {kind!r}")


def score_cap(spec: GameSpec) -> int:
    """Tight upper bound on either player's score, used to pack outcomes.

    Clique, star and vertex capture scores never exceed the order; a colex
    score never exceeds the number of present edges.
    """
    if spec.kind is GameKind.COLEX:
        return len(spec.base.present_edges)
    return spec.n


def objective(o: Outcome, cap: int) -> int:
    """Integer whose order is lexicographic on (a - b, a) for scores <= cap."""
    if not (0 <= o.a <= cap and 0 <= o.b <= cap):
        raise ValueError(f"scores {o} exceed cap {cap}")
    return (cap + 2) * o.a - (cap + 1) * o.b


def decode_objective(f: int, cap: int) -> Outcome:
    """Recover (a, b) from an objective value; exact for scores <= cap."""
    s, a = divmod(f, cap + 1)
    return Outcome(a, a - s)


def winner(o: Outcome, bias: tuple[int, int]) -> Player:
    """Who wins the game: the quota-advantaged player must strictly lead.

    With equal quotas a tie goes to player 2; when player 2 has the larger
    quota they must beat player 1 outright, and symmetrically for player 1.
    """
    p, q = bias
    if q > p:
        return Player.P2 if o.b > o.a else Player.P1
    return Player.P1 if o.a > o.b else Player.P2
