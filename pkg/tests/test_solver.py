"""Layered solver against the naive oracle, plus move-query behaviour."""

import random

import pytest

from graphgame.board import (
    CapacityError,
    EdgeState,
    GameKind,
    GameSpec,
    apply_move,
    board_from_edges,
    colex_board,
    colex_index,
    complete_board,
)
from graphgame.canonical import relabel
from graphgame.solver import (
    best_move,
    cache_lookup,
    cache_record,
    cache_append,
    naive_minimax,
    solve,
    solve_with_cache,
    spec_fingerprint,
    verify_vc_mirror,
)


def connected(n: int, pairs: list[tuple[int, int]]) -> bool:
    adj = {w: set() for w in range(n)}
    for u, v in pairs:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def random_connected_subgraph(rng: random.Random, n: int = 5) -> list[tuple[int, int]]:
    all_pairs = [(u, v) for u in range(n) for v in range(u)]
    while True:
        k = rng.randint(n - 1, len(all_pairs))
        pairs = rng.sample(all_pairs, k)
        if connected(n, pairs):
            return pairs


def test_solver_matches_oracle_on_colex_bases():
    for m in range(1, 8):
        for kind in GameKind:
            spec = GameSpec(kind, colex_board(m))
            assert solve(spec).outcome == naive_minimax(spec), (m, kind)


def test_solver_matches_oracle_with_bias_and_start():
    cases = [
        GameSpec(GameKind.CLIQUE, complete_board(4), bias=(1, 3)),
        GameSpec(GameKind.STAR, complete_board(4), bias=(2, 1)),
        GameSpec(GameKind.VC, colex_board(8), bias=(1, 2)),
        GameSpec(GameKind.COLEX, colex_board(9), bias=(3, 1)),
        GameSpec(
            GameKind.VC,
            complete_board(4),
            start=((colex_index(0, 1), EdgeState.RED),),
        ),
        GameSpec(
            GameKind.CLIQUE,
            complete_board(5),
            start=(
                (colex_index(0, 1), EdgeState.RED),
                (colex_index(2, 3), EdgeState.BLUE),
            ),
        ),
    ]
    for spec in cases:
        assert solve(spec).outcome == naive_minimax(spec), spec.describe()


def test_solver_matches_oracle_on_random_subgraphs():
    rng = random.Random(51)
    for _ in range(8):
        base = board_from_edges(5, present=random_connected_subgraph(rng))
        for kind in GameKind:
            spec = GameSpec(kind, base)
            assert solve(spec).outcome == naive_minimax(spec), spec.describe()


def test_naive_capacity_guard():
    with pytest.raises(CapacityError):
        naive_minimax(GameSpec(GameKind.CLIQUE, complete_board(6)))


def test_known_values():
    # vertex capture margins on complete boards
    margins = {2: 2, 3: 1, 4: 0, 5: 0, 6: 0}
    for n, s in margins.items():
        out = solve(GameSpec(GameKind.VC, complete_board(n))).outcome
        assert out.s == s, (n, out)
    # clique game is drawn on small complete boards
    for n in (3, 4, 5):
        assert solve(GameSpec(GameKind.CLIQUE, complete_board(n))).outcome.s == 0


def test_best_move_on_empty_triangle():
    spec = GameSpec(GameKind.CLIQUE, complete_board(3))
    solved = solve(spec, retain=True)
    assert best_move(complete_board(3), 0, spec, solved) == 0


def test_best_move_preserves_value_along_a_game():
    from graphgame.generator import mover_at
    from graphgame.scoring import score_pair

    spec = GameSpec(GameKind.VC, complete_board(5))
    solved = solve(spec, retain=True)
    board = complete_board(5)
    for ply in range(10):
        e = best_move(board, ply, spec, solved)
        board = apply_move(board, e, mover_at(ply, spec.bias).stone)
    assert score_pair(board, spec.kind) == solved.outcome


def test_best_move_consistent_across_relabellings():
    # isomorphic positions must pick corresponding edges
    spec = GameSpec(GameKind.STAR, complete_board(4))
    solved = solve(spec, retain=True)
    board = apply_move(complete_board(4), colex_index(0, 1), EdgeState.RED)
    perm = (2, 3, 1, 0)
    twin = relabel(board, perm)
    e1 = best_move(board, 1, spec, solved)
    e2 = best_move(twin, 1, spec, solved)
    from graphgame.canonical import permute_edge

    # not necessarily equal edges, but equal after aligning frames
    from graphgame.canonical import canonical_full

    s1 = canonical_full(board).perm
    s2 = canonical_full(twin).perm
    assert permute_edge(e1, s1) == permute_edge(e2, s2)


def test_best_move_requires_retained_layers():
    spec = GameSpec(GameKind.CLIQUE, complete_board(3))
    solved = solve(spec)
    with pytest.raises(ValueError):
        best_move(complete_board(3), 0, spec, solved)


def test_solve_reuses_prebuilt_layers():
    from graphgame.generator import build_layers

    base = colex_board(6)
    layers = build_layers(GameSpec(GameKind.CLIQUE, base))
    a = solve(GameSpec(GameKind.STAR, base), layers=layers).outcome
    b = solve(GameSpec(GameKind.VC, base), layers=layers).outcome
    assert a == solve(GameSpec(GameKind.STAR, base)).outcome
    assert b == solve(GameSpec(GameKind.VC, base)).outcome


def test_vc_mirror_strategy_on_k5():
    assert verify_vc_mirror(5)


def test_vc_mirror_rejects_bad_orders():
    with pytest.raises(ValueError):
        verify_vc_mirror(7)
    with pytest.raises(CapacityError):
        verify_vc_mirror(13)


def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    spec = GameSpec(GameKind.VC, complete_board(4))
    assert cache_lookup(path, spec) is None
    out1, hit1 = solve_with_cache(spec, path)
    out2, hit2 = solve_with_cache(spec, path)
    assert (hit1, hit2) == (False, True)
    assert out1 == out2
    # a different spec with the same base must miss
    other = GameSpec(GameKind.STAR, complete_board(4))
    assert cache_lookup(path, other) is None


def test_cache_ignores_colliding_garbage(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    spec = GameSpec(GameKind.VC, complete_board(4))
    record = cache_record(spec, solve(spec), 0.0)
    record["game"] = "star"  # fingerprint kept, fields lie
    cache_append(path, record)
    assert cache_lookup(path, spec) is None
    assert spec_fingerprint(spec) == record["fingerprint"]
