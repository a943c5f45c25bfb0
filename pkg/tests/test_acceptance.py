"""Acceptance gate: one verdict line per contract criterion.

Run with `pytest tests/test_acceptance.py -s` to see the verdict lines as
they appear; without -s they show up for failing criteria only.  Criteria
whose instances exceed the configured capacity are reported as SKIP lines
with the reason, never as silently wrong values.  Long-running extensions
are marked `stretch` and gated behind GRAPHGAME_STRETCH=1.
"""

import os
import random
import time

import pytest

from graphgame.board import (
    CapacityError,
    ColoredBoard,
    EdgeState,
    GameKind,
    GameSpec,
    Player,
    board_from_edges,
    colex_board,
    colex_index,
    complete_board,
)
from graphgame.canonical import canonical_form, relabel
from graphgame.cli import DEFAULT_MAX_EDGES, _guard_capacity, parse_base, parse_start
from graphgame.generator import build_layers
from graphgame.report import compute_table
from graphgame.scoring import Outcome, decode_objective, objective, score_pair, winner
from graphgame.solver import naive_minimax, solve, verify_vc_mirror
from graphgame.strategies import verify_strategy

STRETCH = os.environ.get("GRAPHGAME_STRETCH") == "1"
needs_stretch = pytest.mark.skipif(not STRETCH, reason="set GRAPHGAME_STRETCH=1 to run")

# expected outcome table for the three symmetric games on the m-edge colex
# base: m -> (colex game, largest-star game, vertex-capture game)
EXPECTED_ROWS = {
    1: ((1, 0), (1, 0), (2, 0)),
    2: ((1, 1), (1, 1), (1, 1)),
    3: ((2, 1), (2, 1), (1, 0)),
    4: ((2, 2), (2, 2), (2, 1)),
    5: ((2, 1), (2, 1), (2, 0)),
    6: ((2, 2), (2, 2), (2, 2)),
    7: ((2, 2), (3, 2), (3, 2)),
    8: ((2, 2), (3, 2), (2, 1)),
    9: ((4, 2), (3, 2), (2, 1)),
    10: ((4, 4), (3, 3), (1, 1)),
    11: ((4, 4), (3, 3), (3, 1)),
    12: ((4, 4), (3, 3), (2, 1)),
    13: ((4, 4), (3, 3), (3, 2)),
    14: ((4, 4), (3, 3), (3, 3)),
    15: ((5, 5), (4, 4), (3, 3)),
    16: ((5, 5), (4, 4), (4, 3)),
    17: ((5, 5), (4, 3), (3, 2)),
    18: ((5, 5), (4, 4), (3, 3)),
    19: ((5, 5), (4, 4), (3, 2)),
    20: ((5, 5), (4, 4), (2, 2)),
    21: ((5, 5), (4, 4), (2, 1)),
}


def verdict(criterion: str, ok: bool, detail: str) -> None:
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}", flush=True)
    assert ok, f"criterion {criterion}: {detail}"


@pytest.fixture(scope="module")
def k7_layers():
    # the big shared build: every unbiased K7 game reads these layers
    return build_layers(GameSpec(GameKind.CLIQUE, complete_board(7)))


def test_criterion_1_outcome_table_rows_1_to_16():
    t0 = time.monotonic()
    rows = compute_table(range(1, 17), DEFAULT_MAX_EDGES)
    elapsed = time.monotonic() - t0
    bad = [
        (r.m, r.col, r.delta, r.vc)
        for r in rows
        if r.skipped or (r.col, r.delta, r.vc) != EXPECTED_ROWS[r.m]
    ]
    verdict(
        "1",
        not bad and elapsed < 900,
        f"rows m=1..16 exact in {elapsed:.1f}s (limit 900s)"
        + (f", mismatches: {bad}" if bad else ""),
    )


def test_criterion_2_oversize_rows_carry_skip_markers():
    rows = compute_table([22, 23, 24, 28], DEFAULT_MAX_EDGES)
    ok = all(r.skipped for r in rows) and [r.m for r in rows] == [22, 23, 24, 28]
    csv_lines = [r.csv() for r in rows]
    verdict(
        "2 (capacity markers)",
        ok and all(line.endswith("skipped") for line in csv_lines),
        "rows m=22,23,24,28 are marked skipped, never emitted as values",
    )


@pytest.mark.stretch
@needs_stretch
def test_criterion_2_stretch_rows_17_to_21():
    t0 = time.monotonic()
    rows = compute_table(range(17, 22), DEFAULT_MAX_EDGES, progress=True)
    elapsed = time.monotonic() - t0
    bad = [
        (r.m, r.col, r.delta, r.vc)
        for r in rows
        if r.skipped or (r.col, r.delta, r.vc) != EXPECTED_ROWS[r.m]
    ]
    verdict(
        "2 (stretch)",
        not bad,
        f"rows m=17..21 exact in {elapsed:.0f}s"
        + (f", mismatches: {bad}" if bad else ""),
    )


def test_criterion_3_clique_game_is_drawn_on_k3_to_k7(k7_layers):
    scores = {}
    for n in range(3, 7):
        scores[n] = solve(GameSpec(GameKind.CLIQUE, complete_board(n))).outcome.s
    spec7 = GameSpec(GameKind.CLIQUE, complete_board(7))
    scores[7] = solve(spec7, layers=k7_layers).outcome.s
    verdict(
        "3",
        all(s == 0 for s in scores.values()),
        f"clique score n=3..7 all 0 (got {scores});"
        " n=8 stretch skipped: 28 open edges exceed solver capacity",
    )


def test_criterion_4_vertex_capture_margins(k7_layers):
    want = {2: 2, 3: 1, 4: 0, 5: 0, 6: 0, 7: 1}
    got = {}
    for n in range(2, 7):
        got[n] = solve(GameSpec(GameKind.VC, complete_board(n))).outcome.s
    got[7] = solve(GameSpec(GameKind.VC, complete_board(7)), layers=k7_layers).outcome.s
    verdict(
        "4",
        got == want,
        f"capture margins n=2..7 are {got} (want {want});"
        " n=8 stretch skipped: exceeds solver capacity",
    )


def test_criterion_5_biased_games_favour_player_two():
    t0 = time.monotonic()
    losses = []
    for n in (4, 5, 6):
        spec = GameSpec(GameKind.CLIQUE, complete_board(n), bias=(1, 3))
        out = solve(spec).outcome
        if winner(out, spec.bias) is not Player.P2:
            losses.append(("clique(1,3)", n, out))
    for n in (3, 4, 5, 6):
        base = complete_board(n)
        layers = build_layers(GameSpec(GameKind.STAR, base, bias=(1, 2)))
        for kind in (GameKind.STAR, GameKind.VC):
            spec = GameSpec(kind, base, bias=(1, 2))
            out = solve(spec, layers=layers).outcome
            if winner(out, spec.bias) is not Player.P2:
                losses.append((f"{kind.value}(1,2)", n, out))
    elapsed = time.monotonic() - t0
    verdict(
        "5",
        not losses and elapsed < 300,
        f"clique(1,3) n=4..6 and star/vc(1,2) n=3..6 all second-player wins"
        f" in {elapsed:.1f}s (limit 300s)" + (f", losses: {losses}" if losses else ""),
    )


def test_criterion_6_strategy_verification():
    t0 = time.monotonic()
    failed = []
    lines = 0
    for n in (4, 5, 6, 7):
        rep = verify_strategy(
            "bob13", GameSpec(GameKind.CLIQUE, complete_board(n), bias=(1, 3))
        )
        lines += rep.lines
        if not rep.ok:
            failed.append(f"bob13 K{n}")
    for n in (3, 4, 5, 6):
        for kind in (GameKind.STAR, GameKind.VC):
            rep = verify_strategy(
                "bob12", GameSpec(kind, complete_board(n), bias=(1, 2))
            )
            lines += rep.lines
            if not rep.ok:
                failed.append(f"bob12 {kind.value} K{n}")
    if not verify_vc_mirror(5):
        failed.append("mirror K5")
    elapsed = time.monotonic() - t0
    verdict(
        "6",
        not failed,
        f"bob13 n=4..7, bob12 n=3..6 (star and vc), mirror n=5:"
        f" {lines} lines checked in {elapsed:.1f}s"
        + (f", failures: {failed}" if failed else ""),
    )


@pytest.mark.stretch
@needs_stretch
def test_criterion_6_stretch_bob13_on_k8():
    t0 = time.monotonic()
    try:
        rep = verify_strategy(
            "bob13",
            GameSpec(GameKind.CLIQUE, complete_board(8), bias=(1, 3)),
            dedup=True,
            state_cap=12_000_000,
        )
    except CapacityError as exc:
        print(f"criterion 6 (stretch): SKIP - bob13 K8 stopped cleanly ({exc})", flush=True)
        return
    verdict(
        "6 (stretch)",
        rep.ok,
        f"bob13 K8 with dedup: {rep.lines} deduplicated lines"
        f" in {time.monotonic() - t0:.0f}s",
    )


def connected(n: int, pairs: list) -> bool:
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


def test_criterion_7_layered_solver_equals_naive_minimax():
    t0 = time.monotonic()
    mismatches = []
    for m in range(1, 10):
        base = colex_board(m)
        layers = build_layers(GameSpec(GameKind.CLIQUE, base))
        for kind in GameKind:
            spec = GameSpec(kind, base)
            fast = solve(spec, layers=layers).outcome
            slow = naive_minimax(spec)
            if fast != slow:
                mismatches.append((f"C{m}", kind.value, fast, slow))
    rng = random.Random(2024)
    all_pairs = [(u, v) for u in range(5) for v in range(u)]
    for _ in range(20):
        while True:
            pairs = rng.sample(all_pairs, rng.randint(4, 10))
            if connected(5, pairs):
                break
        base = board_from_edges(5, pairs)
        layers = build_layers(GameSpec(GameKind.CLIQUE, base))
        for kind in GameKind:
            spec = GameSpec(kind, base)
            fast = solve(spec, layers=layers).outcome
            slow = naive_minimax(spec)
            if fast != slow:
                mismatches.append((sorted(pairs), kind.value, fast, slow))
    elapsed = time.monotonic() - t0
    verdict(
        "7",
        not mismatches and elapsed < 120,
        f"colex bases m=1..9 and 20 random connected 5-vertex graphs,"
        f" all four games, in {elapsed:.1f}s (limit 120s)"
        + (f", mismatches: {mismatches}" if mismatches else ""),
    )


def test_criterion_8_advantage_games_refused_at_capacity():
    """Pre-coloured openings parse and apply; solving them is out of reach.

    The four advantage instances (a red triangle or claw granted to player 1
    before play) each leave 23-25 edges open, beyond what the layered solver
    can hold in memory, so the contract is a clean capacity refusal rather
    than a value.
    """
    cases = [
        ("red triangle on K8", "K8", "0-1:R,0-2:R,1-2:R"),
        ("red claw on K8", "K8", "1-0:R,2-0:R,3-0:R"),
        ("red claw on C26", "C26", "1-0:R,2-0:R,3-0:R"),
        ("red claw on C27", "C27", "1-0:R,2-0:R,3-0:R"),
    ]
    for name, base_text, start_text in cases:
        spec = GameSpec(
            GameKind.CLIQUE, parse_base(base_text), start=parse_start(start_text)
        )
        board = spec.start_board()
        for item in start_text.split(","):
            ends, _ = item.split(":")
            u, v = (int(x) for x in ends.split("-"))
            assert board.state(colex_index(u, v)) == EdgeState.RED, name
        assert len(board.uncolored_edges) > DEFAULT_MAX_EDGES, name
        with pytest.raises(CapacityError):
            _guard_capacity(spec, DEFAULT_MAX_EDGES)
    print(
        "criterion 8: SKIP - advantage instances (red K3/claw on K8, claw on"
        " C26/C27) parse and pre-colour correctly but exceed solver capacity;"
        " refused with exit code 3, no values emitted",
        flush=True,
    )


def test_criterion_9_property_suites(k7_layers):
    # canonical form is invariant under vertex relabelling
    rng = random.Random(99)
    violations = 0
    for _ in range(1000):
        n = rng.randint(1, 7)
        states = bytes(rng.choice((0, 1, 2, 3)) for _ in range(n * (n - 1) // 2))
        board = ColoredBoard(n, states)
        perm = list(range(n))
        rng.shuffle(perm)
        if canonical_form(board) != canonical_form(relabel(board, tuple(perm))):
            violations += 1

    # packed objective is exactly the lexicographic order on (a-b, a)
    lex_ok = True
    for cap in range(1, 11):
        outs = [Outcome(a, b) for a in range(cap + 1) for b in range(cap + 1)]
        for x in outs:
            if decode_objective(objective(x, cap), cap) != x:
                lex_ok = False
            for y in outs:
                want = ((x.s, x.a) > (y.s, y.a))
                if (objective(x, cap) > objective(y, cap)) != want:
                    lex_ok = False

    # unbiased scores stay in the proven ranges
    range_ok = True
    seen_scores = {GameKind.CLIQUE: set(), GameKind.STAR: set(), GameKind.VC: set()}
    for n in range(2, 7):
        base = complete_board(n)
        layers = build_layers(GameSpec(GameKind.CLIQUE, base))
        for kind in seen_scores:
            out = solve(GameSpec(kind, base), layers=layers).outcome
            seen_scores[kind].add(out.s)
    for kind in seen_scores:
        out = solve(GameSpec(kind, complete_board(7)), layers=k7_layers).outcome
        seen_scores[kind].add(out.s)
    for m in range(1, 11):
        base = colex_board(m)
        layers = build_layers(GameSpec(GameKind.STAR, base))
        seen_scores[GameKind.STAR].add(
            solve(GameSpec(GameKind.STAR, base), layers=layers).outcome.s
        )
        seen_scores[GameKind.VC].add(
            solve(GameSpec(GameKind.VC, base), layers=layers).outcome.s
        )
    if not seen_scores[GameKind.CLIQUE] <= {0, 1}:
        range_ok = False
    if not seen_scores[GameKind.STAR] <= {0, 1}:
        range_ok = False
    if not seen_scores[GameKind.VC] <= {0, 1, 2}:
        range_ok = False

    # captured vertices never exceed the board order
    capture_ok = True
    for n in range(2, 8):
        for _ in range(200):
            states = bytes(rng.choice((2, 3)) for _ in range(n * (n - 1) // 2))
            out = score_pair(ColoredBoard(n, states), GameKind.VC)
            if out.a + out.b > n:
                capture_ok = False

    verdict(
        "9",
        violations == 0 and lex_ok and range_ok and capture_ok,
        "canonical invariance (1000 boards, 0 violations),"
        " lexicographic objective (caps 1..10, exhaustive),"
        f" score ranges {sorted(seen_scores[GameKind.CLIQUE])}/"
        f"{sorted(seen_scores[GameKind.STAR])}/{sorted(seen_scores[GameKind.VC])}"
        " within 0-1/0-1/0-2, capture totals bounded by n",
    )
