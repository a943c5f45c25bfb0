"""Hand-crafted second-player blocking strategies and their verification.

Two strategy families are implemented as deterministic responders:

* `bob13`: one red move answered by three blue moves.  Bob pairs vertices as
  Alice touches them, keeps every pair joined by a blue spoke, and mirrors
  Alice's moves through the pairing; small leftover vertex sets switch to
  explicit endgame casework.
* `bob12`: one red move answered by two blue moves.  The vertex set splits
  into triples (plus up to two floaters) and every edge except the floater
  edge belongs to exactly one edge-triple; Bob always completes the triple
  Alice played in.

`verify_strategy` walks every Alice move sequence against a responder and
reports the first losing line, if any.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .board import (
    CapacityError,
    ColoredBoard,
    EdgeId,
    EdgeState,
    GameSpec,
    Player,
    apply_move,
    colex_index,
    edge_endpoints,
)
from .scoring import Outcome, score_pair


class StrategyError(RuntimeError):
    """A responder broke its own contract (wrong count, coloured edge...)."""


@dataclass
class StrategyMemory:
    """Bob's private notebook: vertex pairing plus endgame roles.

    Only strategy-case moves update it; quota padding never does.
    """

    n: int
    phase: str = "initial"
    partner: dict[int, int] = field(default_factory=dict)
    role: dict[str, int] = field(default_factory=dict)
    vl: int | None = None  # anchor vertex of the odd-order case-1 endgame
    xy_first: int | None = None  # which of x/y Alice entered the 2x3 block at

    def copy(self) -> "StrategyMemory":
        return StrategyMemory(
            self.n, self.phase, dict(self.partner), dict(self.role), self.vl, self.xy_first
        )

    def is_labeled(self, w: int) -> bool:
        return w in self.partner or w in self.role.values()

    def unlabeled_vertices(self) -> list[int]:
        return [w for w in range(self.n) if not self.is_labeled(w)]

    def fingerprint(self) -> tuple:
        return (
            self.phase,
            tuple(sorted(self.partner.items())),
            tuple(sorted(self.role.items())),
            self.vl,
            self.xy_first,
        )


def _mirror_triple(u: int, v: int, partner: dict[int, int]) -> list[EdgeId]:
    # remaining three edges of the 4-cycle on {u, v} and their partners
    pu, pv = partner[u], partner[v]
    return [colex_index(u, pv), colex_index(pu, pv), colex_index(v, pu)]


def _finalize(board: ColoredBoard, prescribed: list[EdgeId], quota: int) -> list[EdgeId]:
    """Filter to playable edges, then pad with lowest uncoloured edge ids."""
    out: list[EdgeId] = []
    for e in dict.fromkeys(prescribed):
        if board.state(e) == EdgeState.UNCOLORED:
            out.append(e)
    free = board.uncolored_edges
    need = min(quota, len(free))
    if len(out) < need:
        chosen = set(out)
        for e in free:
            if e not in chosen:
                out.append(e)
                chosen.add(e)
                if len(out) == need:
                    break
    return out


# --- 1-vs-3 pairing strategy --------------------------------------------------


def bob13_memory(n: int) -> StrategyMemory:
    return StrategyMemory(n)


def bob13_respond(mem: StrategyMemory, board: ColoredBoard, alice: EdgeId) -> list[EdgeId]:
    """Bob's three blue edges after Alice coloured `alice` red.

    The board already contains Alice's move.  Pairing and endgame roles
    resolve ties by lowest vertex index, so the responder is deterministic.
    """
    u, v = edge_endpoints(alice)
    if u > v:
        u, v = v, u
    P = mem.partner
    prescribed: list[EdgeId] = []

    if mem.phase == "initial":
        lu, lv = mem.is_labeled(u), mem.is_labeled(v)
        free = mem.unlabeled_vertices()
        if not lu and not lv:
            if len(free) == 5:
                # odd survivor count 5: park u, v and wall off the other three
                mem.phase = "case3"
                mem.role["x"], mem.role["y"] = u, v
                a, b, c = (w for w in free if w not in (u, v))
                mem.role["a"], mem.role["b"], mem.role["c"] = a, b, c
                prescribed = [colex_index(a, b), colex_index(a, c), colex_index(b, c)]
            elif len(free) == 3:
                mem.phase = "case2"
                c = next(w for w in free if w not in (u, v))
                mem.role["a"], mem.role["b"], mem.role["c"] = u, v, c
                prescribed = [colex_index(u, c), colex_index(v, c)]
            else:
                p1, p2 = [w for w in free if w not in (u, v)][:2]
                P[u], P[p1] = p1, u
                P[v], P[p2] = p2, v
                prescribed = [
                    colex_index(u, p1),
                    colex_index(p1, p2),
                    colex_index(v, p2),
                ]
        elif lu != lv:
            w = v if lu else u  # fresh endpoint
            anchor = u if lu else v
            if len(free) == 3:
                mem.phase = "case1"
                mem.vl = anchor
                b, c = (z for z in free if z != w)
                mem.role["a"], mem.role["b"], mem.role["c"] = w, b, c
                prescribed = [colex_index(w, b), colex_index(w, c), colex_index(b, c)]
            else:
                mate = next(z for z in free if z != w)
                P[w], P[mate] = mate, w
                prescribed = [colex_index(P[anchor], mate), colex_index(w, mate)]
        else:
            prescribed = _mirror_triple(u, v, P)
        if mem.phase == "initial" and len(mem.unlabeled_vertices()) == 2:
            mem.role["x"], mem.role["y"] = mem.unlabeled_vertices()
            mem.phase = "finishing"

    elif mem.phase == "finishing":
        x, y = mem.role["x"], mem.role["y"]
        if u in P and v in P:
            prescribed = _mirror_triple(u, v, P)
        elif {u, v} == {x, y}:
            prescribed = []
        else:
            z = u if u in (x, y) else v
            t = v if z == u else u
            mate = P[t]
            if z == x:
                prescribed = [colex_index(x, mate), colex_index(y, t), colex_index(y, mate)]
            else:
                prescribed = [colex_index(x, t), colex_index(x, mate), colex_index(y, mate)]

    elif mem.phase == "case1":
        abc = [mem.role["a"], mem.role["b"], mem.role["c"]]
        if u in P and v in P:
            prescribed = _mirror_triple(u, v, P)
        else:
            d = u if u in abc else v
            t = v if d == u else u
            if t == mem.vl or t == P[mem.vl]:
                prescribed = []  # edges into the anchor pair need no answer
            else:
                mate = P[t]
                primary = [
                    colex_index(w, mate)
                    for w in abc
                    if board.state(colex_index(w, mate)) == EdgeState.UNCOLORED
                ]
                prescribed = primary if primary else [colex_index(w, t) for w in abc]

    elif mem.phase == "case2":
        a, b, c = mem.role["a"], mem.role["b"], mem.role["c"]
        if u in P and v in P:
            prescribed = _mirror_triple(u, v, P)
        else:
            d = u if u in (a, b, c) else v
            t = v if d == u else u
            mate = P[t]
            if d == a:
                prescribed = [colex_index(b, t), colex_index(b, mate), colex_index(c, mate)]
            elif d == b:
                prescribed = [colex_index(a, t), colex_index(a, mate), colex_index(c, mate)]
            else:
                prescribed = [colex_index(a, mate), colex_index(b, mate), colex_index(c, mate)]

    elif mem.phase == "case3":
        x, y = mem.role["x"], mem.role["y"]
        abc = [mem.role["a"], mem.role["b"], mem.role["c"]]
        if u in P and v in P:
            prescribed = _mirror_triple(u, v, P)
        elif (u in (x, y)) and (v in abc) or (v in (x, y)) and (u in abc):
            z = u if u in (x, y) else v
            d = v if z == u else u
            if mem.xy_first is None:
                mem.xy_first = z
                zbar = y if z == x else x
                prescribed = [colex_index(w, zbar) for w in abc]
            else:
                prescribed = [colex_index(w, z) for w in abc if w != d]
        elif u in (x, y) or v in (x, y):
            z = u if u in (x, y) else v
            t = v if z == u else u
            mate = P[t]
            zo = y if z == x else x
            prescribed = [colex_index(z, mate), colex_index(zo, t), colex_index(zo, mate)]
        else:
            d = u if u in abc else v
            t = v if d == u else u
            mate = P[t]
            prescribed = [colex_index(w, mate) for w in abc]

    return _finalize(board, prescribed, 3)


# --- 1-vs-2 triple-system strategy --------------------------------------------


def _bob12_triple(n: int, e: EdgeId) -> list[EdgeId] | None:
    """The edge-triple containing `e`, or None for the floater edge.

    Vertices split into blocks {3i, 3i+1, 3i+2}; leftovers (one or two) are
    floaters.  Triples: each block's triangle, the three parallel edges
    between two blocks within one class, the cyclic cross-class triple
    {(3i, 3j+1), (3i+1, 3j+2), (3i+2, 3j)} for each ordered block pair, and
    each floater's star into a block.
    """
    k = n // 3
    a, b = edge_endpoints(e)
    if b >= 3 * k:  # both endpoints floaters (a > b): no triple
        return None
    if a >= 3 * k:  # floater star into b's block
        base = 3 * (b // 3)
        return [colex_index(a, base), colex_index(a, base + 1), colex_index(a, base + 2)]
    ci, ii = a % 3, a // 3
    cj, jj = b % 3, b // 3
    if ii == jj:
        base = 3 * ii
        return [
            colex_index(base, base + 1),
            colex_index(base, base + 2),
            colex_index(base + 1, base + 2),
        ]
    if ci == cj:
        return [colex_index(3 * ii + t, 3 * jj + t) for t in range(3)]
    if (ci, cj) in ((0, 1), (1, 2), (2, 0)):
        i, j = ii, jj
    else:
        i, j = jj, ii
    return [
        colex_index(3 * i, 3 * j + 1),
        colex_index(3 * i + 1, 3 * j + 2),
        colex_index(3 * i + 2, 3 * j),
    ]


def bob12_memory(n: int) -> StrategyMemory:
    return StrategyMemory(n, phase="static")


def bob12_respond(mem: StrategyMemory, board: ColoredBoard, alice: EdgeId) -> list[EdgeId]:
    triple = _bob12_triple(board.n, alice)
    prescribed = [] if triple is None else [e for e in triple if e != alice]
    return _finalize(board, prescribed, 2)


@dataclass(frozen=True)
class Strategy:
    name: str
    quota: int
    memory: Callable[[int], StrategyMemory]
    respond: Callable[[StrategyMemory, ColoredBoard, EdgeId], list[EdgeId]]


STRATEGIES: dict[str, Strategy] = {
    "bob13": Strategy("bob13", 3, bob13_memory, bob13_respond),
    "bob12": Strategy("bob12", 2, bob12_memory, bob12_respond),
}


# --- exhaustive verification ---------------------------------------------------


@dataclass
class Trace:
    moves: list[tuple[Player, EdgeId, EdgeState]]
    outcome: Outcome

    def render(self) -> str:
        parts = []
        for mover, e, stone in self.moves:
            a, b = edge_endpoints(e)
            parts.append(f"{mover.name} {EdgeState(stone).name.lower()}s {b}-{a}")
        parts.append(f"final outcome a={self.outcome.a} b={self.outcome.b}")
        return "\n".join(parts)


@dataclass
class StrategyReport:
    ok: bool
    lines: int
    counterexample: Trace | None = None


def verify_strategy(
    strategy: Strategy | str,
    spec: GameSpec,
    predicate: Callable[[Outcome], bool] | None = None,
    dedup: bool | None = None,
    state_cap: int | None = None,
) -> StrategyReport:
    """Play every Alice line against the responder; stop at the first loss.

    `predicate` judges terminal outcomes (default: Bob strictly ahead,
    b > a, under `spec.kind` scoring).  Without `dedup`, the number of
    explored lines equals the product of Alice's choice counts along each
    line; with it, repeated (board, memory) states are expanded once.
    `state_cap` bounds the dedup set; exceeding it raises CapacityError
    instead of exhausting memory on instances that are too large.
    """
    if isinstance(strategy, str):
        strategy = STRATEGIES[strategy]
    if spec.bias != (1, strategy.quota):
        raise ValueError(
            f"{strategy.name} expects bias (1, {strategy.quota}), spec has {spec.bias}"
        )
    if predicate is None:
        predicate = lambda out: out.b > out.a  # noqa: E731
    if dedup is None:
        dedup = spec.n >= 8
    root = spec.start_board()
    visited: set = set()
    state = {"lines": 0, "counter": None}

    def walk(board: ColoredBoard, mem: StrategyMemory, trace: list) -> bool:
        free = board.uncolored_edges
        if not free:
            state["lines"] += 1
            out = score_pair(board, spec.kind)
            if predicate(out):
                return True
            state["counter"] = Trace(list(trace), out)
            return False
        if dedup:
            key = (board.states, mem.fingerprint())
            if key in visited:
                return True
            if state_cap is not None and len(visited) >= state_cap:
                raise CapacityError(
                    f"{strategy.name} verification exceeded {state_cap} dedup states"
                )
            visited.add(key)
        for e in free:
            after_red = apply_move(board, e, EdgeState.RED)
            mem2 = mem.copy()
            reply = strategy.respond(mem2, after_red, e)
            expected = min(strategy.quota, len(after_red.uncolored_edges))
            if len(reply) != expected or len(set(reply)) != len(reply):
                raise StrategyError(
                    f"{strategy.name} returned {reply} (want {expected} distinct edges)"
                )
            cur = after_red
            moves = [(Player.P1, e, EdgeState.RED)]
            for r in reply:
                try:
                    cur = apply_move(cur, r, EdgeState.BLUE)
                except Exception as exc:
                    raise StrategyError(
                        f"{strategy.name} tried to colour unplayable edge {r}"
                    ) from exc
                moves.append((Player.P2, r, EdgeState.BLUE))
            trace.extend(moves)
            ok = walk(cur, mem2, trace)
            del trace[-len(moves):]
            if not ok:
                return False
        return True

    ok = walk(root, strategy.memory(spec.n), [])
    return StrategyReport(ok, state["lines"], state["counter"])
