"""Exact game values by backward induction over canonical layers.

Terminal boards are scored, interior values propagate by max (player 1
plies) or min (player 2 plies) over child values.  Values are plain ints in
the lexicographic objective encoding, so recovering (a, b) at the root is a
single division.  A deliberately unclever minimax over raw boards serves as
the cross-checking oracle on small instances.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import dataclass

from .board import (
    CapacityError,
    ColoredBoard,
    EdgeId,
    EdgeState,
    GameKind,
    GameSpec,
    Player,
    apply_move,
    board_to_text,
    colex_index,
    complete_board,
    edge_endpoints,
    encoded_length,
)
from .canonical import canonical_form, canonical_full, permute_edge
from .generator import Layer, _key_states, build_layers, mover_at
from .scoring import Outcome, decode_objective, objective, score_cap, score_pair, winner

log = logging.getLogger(__name__)

NAIVE_MAX_EDGES = 12


@dataclass
class SolveResult:
    spec: GameSpec
    outcome: Outcome
    value: int
    winner: Player
    classes: int
    layers: list[Layer] | None = None


def solve(
    spec: GameSpec,
    layers: list[Layer] | None = None,
    retain: bool = False,
) -> SolveResult:
    """Exact outcome under optimal play from both sides.

    Pass prebuilt `layers` to share the (kind-independent) state space
    between game kinds; values inside are overwritten.  With `retain`, the
    valued layers are kept on the result for move queries.
    """
    if layers is None:
        layers = build_layers(spec)
    n = spec.n
    cap = score_cap(spec)
    kind = spec.kind
    last = len(layers) - 1
    for key, entry in layers[last].entries.items():
        board = ColoredBoard(n, _key_states(n, key))
        entry.value = objective(score_pair(board, kind), cap)
    width = encoded_length(n)
    for t in range(last - 1, -1, -1):
        nxt = layers[t + 1].entries
        maximize = mover_at(t, spec.bias) is Player.P1
        pick = max if maximize else min
        for entry in layers[t].entries.values():
            kids = entry.children
            entry.value = pick(
                nxt[kids[i : i + width]].value for i in range(0, len(kids), width)
            )
    root_value = next(iter(layers[0].entries.values())).value
    outcome = decode_objective(root_value, cap)
    classes = sum(len(layer) for layer in layers)
    return SolveResult(
        spec=spec,
        outcome=outcome,
        value=root_value,
        winner=winner(outcome, spec.bias),
        classes=classes,
        layers=layers if retain else None,
    )


def naive_minimax(spec: GameSpec) -> Outcome:
    """Oracle: plain minimax over raw boards, no isomorphism reduction.

    Memoises on exact board bytes only (the ply is implied by the number of
    coloured edges).  Limited to small edge counts by design.
    """
    root = spec.start_board()
    todo = root.count(EdgeState.UNCOLORED)
    if todo > NAIVE_MAX_EDGES:
        raise CapacityError(
            f"naive minimax handles <= {NAIVE_MAX_EDGES} uncoloured edges, got {todo}"
        )
    n = spec.n
    cap = score_cap(spec)
    kind = spec.kind
    bias = spec.bias
    pre_coloured = len(root.present_edges) - todo
    memo: dict[bytes, int] = {}

    def value(states: bytes) -> int:
        cached = memo.get(states)
        if cached is not None:
            return cached
        uncol = [e for e, s in enumerate(states) if s == EdgeState.UNCOLORED]
        if not uncol:
            v = objective(score_pair(ColoredBoard(n, states), kind), cap)
        else:
            coloured = sum(1 for s in states if s in (EdgeState.RED, EdgeState.BLUE))
            mover = mover_at(coloured - pre_coloured, bias)
            stone = mover.stone
            best: int | None = None
            for e in uncol:
                child = bytearray(states)
                child[e] = stone
                cv = value(bytes(child))
                if (
                    best is None
                    or (mover is Player.P1 and cv > best)
                    or (mover is Player.P2 and cv < best)
                ):
                    best = cv
            v = best  # type: ignore[assignment]
        memo[states] = v
        return v

    return decode_objective(value(root.states), cap)


def best_move(
    board: ColoredBoard, ply: int, spec: GameSpec, solved: SolveResult
) -> EdgeId:
    """A value-preserving move for the player on turn at `ply`.

    The board may be any member of its isomorphism class.  Ties break on the
    smallest edge index after mapping through the board's canonical
    permutation, so isomorphic queries pick corresponding moves.
    """
    if solved.layers is None:
        raise ValueError("best_move needs a solve(..., retain=True) result")
    res = canonical_full(board)
    entry = solved.layers[ply].entries.get(res.key)
    if entry is None:
        raise ValueError(f"position not found in layer {ply}")
    stone = mover_at(ply, spec.bias).stone
    nxt = solved.layers[ply + 1].entries
    candidates = []
    for e in board.uncolored_edges:
        child_key = canonical_form(apply_move(board, e, stone))
        if nxt[child_key].value == entry.value:
            candidates.append(e)
    if not candidates:
        raise ValueError("no moves available: board fully coloured")
    return min(candidates, key=lambda e: permute_edge(e, res.perm))


def verify_vc_mirror(n: int) -> bool:
    """Check the pairing strategy for vertex capture on K_n, n = 1 mod 4.

    After Alice's opening edge uv, Bob answers moves at u or v with the
    paired edge at the other vertex and plays the remaining K_{n-2}
    optimally as its first player.  Exhausts every Alice move sequence
    (all openings included) and reports whether Bob ever loses.

    n=5 finishes in well under a second; n=9 is exact but expect hours
    (36 openings, each memoised separately).
    """
    if n < 5 or n % 4 != 1:
        raise ValueError(f"mirror strategy needs n = 1 mod 4 and n >= 5, got {n}")
    if n > 9:
        raise CapacityError(f"mirror verification supported for n <= 9, got {n}")

    sub_spec = GameSpec(GameKind.VC, complete_board(n - 2))
    sub_solved = solve(sub_spec, retain=True)
    full = complete_board(n)

    for first in range(len(full.states)):
        u, v = edge_endpoints(first)
        others = [w for w in range(n) if w not in (u, v)]
        sub_of = {w: i for i, w in enumerate(others)}
        main_of = {i: w for i, w in enumerate(others)}

        def sub_edge(e: EdgeId) -> EdgeId:
            a, b = edge_endpoints(e)
            return colex_index(sub_of[a], sub_of[b])

        def main_edge(e: EdgeId) -> EdgeId:
            a, b = edge_endpoints(e)
            return colex_index(main_of[a], main_of[b])

        def bob_reply(
            board: ColoredBoard, alice: EdgeId, sub_board: ColoredBoard, sub_ply: int
        ) -> tuple[ColoredBoard, ColoredBoard, int]:
            a, b = edge_endpoints(alice)
            if u in (a, b) or v in (a, b):
                w = a if b in (u, v) else b
                anchor = v if u in (a, b) else u
                partner = colex_index(anchor, w)
                return apply_move(board, partner, EdgeState.BLUE), sub_board, sub_ply
            # Alice played inside K_{n-2}: record it and answer optimally there
            sub_board = apply_move(sub_board, sub_edge(alice), EdgeState.BLUE)
            reply = best_move(sub_board, sub_ply + 1, sub_spec, sub_solved)
            sub_board = apply_move(sub_board, reply, EdgeState.RED)
            board = apply_move(board, main_edge(reply), EdgeState.BLUE)
            return board, sub_board, sub_ply + 2

        board = apply_move(full, first, EdgeState.RED)
        sub_board = complete_board(n - 2)
        opening = best_move(sub_board, 0, sub_spec, sub_solved)
        sub_board = apply_move(sub_board, opening, EdgeState.RED)
        board = apply_move(board, main_edge(opening), EdgeState.BLUE)

        seen: set[bytes] = set()

        def search(board: ColoredBoard, sub_board: ColoredBoard, sub_ply: int) -> bool:
            uncol = board.uncolored_edges
            if not uncol:
                out = score_pair(board, GameKind.VC)
                return out.s <= 0
            if board.states in seen:
                return True
            seen.add(board.states)
            for e in uncol:
                b1 = apply_move(board, e, EdgeState.RED)
                b2, s2, sp2 = bob_reply(b1, e, sub_board, sub_ply)
                if not search(b2, s2, sp2):
                    return False
            return True

        if not search(board, sub_board, 1):
            log.info("mirror strategy fails after opening edge %d", first)
            return False
    return True


# --- result cache -----------------------------------------------------------


def spec_fingerprint(spec: GameSpec) -> str:
    payload = "|".join(
        [
            spec.kind.value,
            board_to_text(spec.base),
            f"{spec.bias[0]},{spec.bias[1]}",
            ";".join(f"{e}:{EdgeState(s).name}" for e, s in sorted(spec.start)),
        ]
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def cache_record(spec: GameSpec, result: SolveResult, seconds: float) -> dict:
    return {
        "fingerprint": spec_fingerprint(spec),
        "game": spec.kind.value,
        "base": board_to_text(spec.base),
        "bias": list(spec.bias),
        "start": [[e, EdgeState(s).name] for e, s in spec.start],
        "a": result.outcome.a,
        "b": result.outcome.b,
        "winner": result.winner.name,
        "classes": result.classes,
        "seconds": round(seconds, 3),
    }


def cache_append(path: str, record: dict) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")


def cache_lookup(path: str, spec: GameSpec) -> Outcome | None:
    """Find a previously solved outcome; full-field match guards collisions."""
    fp = spec_fingerprint(spec)
    want_base = board_to_text(spec.base)
    want_start = [[e, EdgeState(s).name] for e, s in spec.start]
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError:
        return None
    with fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                log.warning("skipping malformed cache line in %s", path)
                continue
            if (
                rec.get("fingerprint") == fp
                and rec.get("game") == spec.kind.value
                and rec.get("base") == want_base
                and rec.get("bias") == list(spec.bias)
                and rec.get("start") == want_start
            ):
                return Outcome(rec["a"], rec["b"])
    return None


def solve_with_cache(spec: GameSpec, cache_path: str | None) -> tuple[Outcome, bool]:
    """Outcome via cache when possible; (outcome, from_cache)."""
    if cache_path:
        hit = cache_lookup(cache_path, spec)
        if hit is not None:
            return hit, True
    started = time.monotonic()
    result = solve(spec)
    if cache_path:
        cache_append(cache_path, cache_record(spec, result, time.monotonic() - started))
    return result.outcome, False
