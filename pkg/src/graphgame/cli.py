"""Command-line front end.

Subcommands: solve (one exact game value), table (CSV + figure across colex
bases), generate (layered state-space census), verify-strategy (exhaustive
strategy checks), play (interactive game against the solved tree), selftest
(fast internal cross-checks).

Exit codes: 0 success, 1 a verification/selftest found a failure, 2 bad
usage or malformed input, 3 instance exceeds the configured capacity.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time

from .board import (
    CapacityError,
    ColoredBoard,
    EdgeState,
    FormatError,
    GameKind,
    GameSpec,
    Player,
    apply_move,
    colex_board,
    colex_index,
    complete_board,
    edge_endpoints,
    load_base_graph,
)
from .generator import build_layers, mover_at, write_layer_dump
from .report import compute_table, render_figure, write_csv
from .scoring import score_pair, winner
from .solver import best_move, naive_minimax, solve, solve_with_cache, verify_vc_mirror
from .strategies import verify_strategy

DEFAULT_MAX_EDGES = 21


def parse_base(text: str) -> ColoredBoard:
    if text.startswith("file:"):
        return load_base_graph(text[5:])
    if len(text) >= 2 and text[0] in "KC" and text[1:].isdigit():
        value = int(text[1:])
        return complete_board(value) if text[0] == "K" else colex_board(value)
    raise FormatError(f"base must be Kn, Cm or file:PATH, got {text!r}")


def parse_bias(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise FormatError(f"bias must be 'p,q' with positive integers, got {text!r}")
    return int(parts[0]), int(parts[1])


def parse_start(text: str) -> tuple[tuple[int, EdgeState], ...]:
    """Comma-separated pre-coloured edges, e.g. '0-1:R,2-3:B'."""
    out = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        try:
            ends, colour = item.rsplit(":", 1)
            u, v = ends.split("-")
            state = {"R": EdgeState.RED, "B": EdgeState.BLUE}[colour.upper()]
            out.append((colex_index(int(u), int(v)), state))
        except (ValueError, KeyError) as exc:
            raise FormatError(f"bad start edge {item!r}, want 'u-v:R' or 'u-v:B'") from exc
    return tuple(out)


_TABLE_GAME_NAMES = {
    "colex": GameKind.COLEX,
    "star": GameKind.STAR,
    "vc": GameKind.VC,
}


def parse_games(text: str) -> tuple[GameKind, ...]:
    """Comma list of table games; CSV cells of unlisted games stay empty."""
    kinds: list[GameKind] = []
    for token in filter(None, (s.strip() for s in text.split(","))):
        if token not in _TABLE_GAME_NAMES:
            raise FormatError(
                f"unknown table game {token!r}, choose from colex,star,vc"
            )
        if _TABLE_GAME_NAMES[token] not in kinds:
            kinds.append(_TABLE_GAME_NAMES[token])
    if not kinds:
        raise FormatError("at least one table game is required")
    return tuple(kinds)


def parse_m_range(text: str) -> list[int]:
    """Ranges and singletons: '1..16' or '1..24,28'."""
    ms: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if ".." in token:
            lo, hi = token.split("..", 1)
            if not (lo.isdigit() and hi.isdigit()) or int(lo) > int(hi) or int(lo) < 1:
                raise FormatError(f"bad range {token!r}")
            ms.extend(range(int(lo), int(hi) + 1))
        elif token.isdigit() and int(token) >= 1:
            ms.append(int(token))
        else:
            raise FormatError(f"bad range token {token!r}")
    return ms


def _spec_from_args(args: argparse.Namespace) -> GameSpec:
    return GameSpec(
        GameKind(args.game),
        parse_base(args.base),
        bias=parse_bias(args.bias),
        start=parse_start(args.start),
    )


def _guard_capacity(spec: GameSpec, max_edges: int) -> None:
    todo = len(spec.start_board().uncolored_edges)
    if todo > max_edges:
        raise CapacityError(
            f"{todo} uncoloured edges exceeds the limit of {max_edges}"
            " (raise with --max-edges)"
        )


def _add_common(sub: argparse.ArgumentParser, with_game: bool = True) -> None:
    if with_game:
        sub.add_argument(
            "--game",
            required=True,
            choices=[k.value for k in GameKind],
            help="scoring rule for terminal boards",
        )
    sub.add_argument("--base", required=True, help="base graph: Kn, Cm or file:PATH")
    sub.add_argument("--bias", default="1,1", help="moves per round as 'p,q' (default 1,1)")
    sub.add_argument("--start", default="", help="pre-coloured edges 'u-v:R,u-v:B,...'")
    sub.add_argument(
        "--max-edges",
        type=int,
        default=DEFAULT_MAX_EDGES,
        help=f"refuse instances with more uncoloured edges (default {DEFAULT_MAX_EDGES})",
    )


def cmd_solve(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    _guard_capacity(spec, args.max_edges)
    started = time.monotonic()
    outcome, cached = solve_with_cache(spec, args.cache)
    print(f"solved in {time.monotonic() - started:.2f}s"
          + (" (cache hit)" if cached else ""), file=sys.stderr)
    win = winner(outcome, spec.bias)
    print(
        f"game={spec.kind.value} base={args.base} bias={spec.bias[0]},{spec.bias[1]}"
        f" a={outcome.a} b={outcome.b} s={outcome.s} winner={win.name}"
    )
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    ms = parse_m_range(args.m_range)
    kinds = parse_games(args.games)
    os.makedirs(args.out, exist_ok=True)
    rows = compute_table(
        ms, args.max_edges, cache_path=args.cache, progress=True, kinds=kinds
    )
    csv_path = os.path.join(args.out, "table.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        write_csv(rows, fh)
    write_csv(rows, sys.stdout)
    fig_path = os.path.join(args.out, "table.png")
    render_figure(rows, fig_path)
    print(f"wrote {csv_path} and {fig_path}", file=sys.stderr)
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    spec = GameSpec(
        GameKind(args.game),  # the census itself is identical for every rule
        parse_base(args.base),
        bias=parse_bias(args.bias),
        start=parse_start(args.start),
    )
    _guard_capacity(spec, args.max_edges)
    layers = build_layers(spec)
    for layer in layers:
        print(f"ply={layer.ply} classes={len(layer)}")
    print(f"total={sum(len(layer) for layer in layers)}")
    if args.dump:
        os.makedirs(args.dump, exist_ok=True)
        for layer in layers:
            path = os.path.join(args.dump, f"layer_{layer.ply:03d}.bin")
            write_layer_dump(path, spec.n, layer)
        print(f"wrote {len(layers)} layer files to {args.dump}", file=sys.stderr)
    return 0


def cmd_verify_strategy(args: argparse.Namespace) -> int:
    n = args.n
    failures = 0
    if args.strategy == "mirror":
        ok = verify_vc_mirror(n)
        print(f"strategy=mirror n={n} ok={str(ok).lower()}")
        print("VERIFIED" if ok else "FAILED")
        return 0 if ok else 1
    if args.strategy == "bob13":
        checks = [(GameKind.CLIQUE, (1, 3))]
    else:
        checks = [(GameKind.STAR, (1, 2)), (GameKind.VC, (1, 2))]
    for kind, bias in checks:
        spec = GameSpec(kind, complete_board(n), bias=bias)
        report = verify_strategy(args.strategy, spec)
        print(
            f"strategy={args.strategy} game={kind.value} n={n}"
            f" ok={str(report.ok).lower()} lines={report.lines}"
        )
        if not report.ok:
            failures += 1
            assert report.counterexample is not None
            print(report.counterexample.render())
    print("VERIFIED" if failures == 0 else "FAILED")
    return 1 if failures else 0


def _read_move(board: ColoredBoard, stone: EdgeState) -> int | None:
    free = board.uncolored_edges
    shown = " ".join(f"{v}-{u}" for u, v in map(edge_endpoints, free))
    while True:
        print(f"open edges: {shown}")
        try:
            line = input(f"your move ({stone.name.lower()}) u-v> ").strip()
        except EOFError:
            return None
        try:
            u, v = (int(x) for x in line.replace("-", " ").split())
            e = colex_index(u, v)
        except (ValueError, TypeError):
            print("could not parse, use 'u-v' or 'u v'")
            continue
        if e not in free:
            print("that edge is not open")
            continue
        return e


def cmd_play(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    _guard_capacity(spec, args.max_edges)
    print("solving the game first, hold on ...", file=sys.stderr)
    solved = solve(spec, retain=True)
    human = Player.P1 if args.human == "alice" else Player.P2
    board = spec.start_board()
    ply = 0
    while board.uncolored_edges:
        mover = mover_at(ply, spec.bias)
        stone = mover.stone
        if mover is human:
            e = _read_move(board, stone)
            if e is None:
                print("\ngame abandoned")
                return 0
        else:
            e = best_move(board, ply, spec, solved)
            u, v = edge_endpoints(e)
            print(f"engine ({mover.name}) colours {v}-{u} {stone.name.lower()}")
        board = apply_move(board, e, stone)
        ply += 1
    out = score_pair(board, spec.kind)
    print(f"final: a={out.a} b={out.b} s={out.s} winner={winner(out, spec.bias).name}")
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    del args
    failures = 0

    def check(name: str, fn) -> None:
        nonlocal failures
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report, do not crash
            failures += 1
            print(f"FAIL: {name} ({exc})")
        else:
            print(f"PASS: {name}")

    def roundtrips() -> None:
        from .board import board_from_text, board_to_text

        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(1, 8)
            states = bytes(rng.choice((0, 1, 2, 3)) for _ in range(n * (n - 1) // 2))
            board = ColoredBoard(n, states)
            assert board_from_text(board_to_text(board)) == board

    def canonical_invariance() -> None:
        from .canonical import canonical_form, relabel

        rng = random.Random(11)
        for _ in range(30):
            n = rng.randint(2, 7)
            states = bytes(rng.choice((0, 1, 2, 3)) for _ in range(n * (n - 1) // 2))
            board = ColoredBoard(n, states)
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_form(board) == canonical_form(relabel(board, tuple(perm)))

    def small_table() -> None:
        from .report import compute_row

        want = {
            1: ((1, 0), (1, 0), (2, 0)),
            2: ((1, 1), (1, 1), (1, 1)),
            3: ((2, 1), (2, 1), (1, 0)),
            4: ((2, 2), (2, 2), (2, 1)),
            5: ((2, 1), (2, 1), (2, 0)),
            6: ((2, 2), (2, 2), (2, 2)),
        }
        for m, (col, delta, vc) in want.items():
            row = compute_row(m)
            assert (row.col, row.delta, row.vc) == (col, delta, vc), m

    def oracle_agreement() -> None:
        for kind in GameKind:
            spec = GameSpec(kind, colex_board(7))
            assert solve(spec).outcome == naive_minimax(spec)

    def strategy_checks() -> None:
        rep = verify_strategy("bob13", GameSpec(GameKind.CLIQUE, complete_board(4), bias=(1, 3)))
        assert rep.ok and rep.lines == 12
        for kind in (GameKind.STAR, GameKind.VC):
            rep = verify_strategy("bob12", GameSpec(kind, complete_board(4), bias=(1, 2)))
            assert rep.ok and rep.lines == 18

    def mirror_check() -> None:
        assert verify_vc_mirror(5)

    check("text round trips", roundtrips)
    check("canonical form is relabelling-invariant", canonical_invariance)
    check("small colex table", small_table)
    check("layered solver matches naive minimax", oracle_agreement)
    check("blocking strategies on K4", strategy_checks)
    check("vertex-capture pairing on K5", mirror_check)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphgame",
        description="Exact solving and strategy checking for edge-colouring score games.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted for interface compatibility; execution is serial",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact value of one game")
    _add_common(p)
    p.add_argument("--cache", default=os.environ.get("GRAPHGAME_CACHE"),
                   help="JSONL result cache (default: $GRAPHGAME_CACHE)")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("table", help="outcome table over colex bases, CSV + figure")
    p.add_argument("--m-range", default="1..16", help="edge counts, e.g. '1..24,28'")
    p.add_argument("--games", default="colex,star,vc",
                   help="which table games to solve; others' cells stay empty")
    p.add_argument("--out", default=".", help="directory for table.csv and table.png")
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES,
                   help="emit 'skipped' rows beyond this size")
    p.add_argument("--cache", default=os.environ.get("GRAPHGAME_CACHE"),
                   help="JSONL result cache (default: $GRAPHGAME_CACHE)")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("generate", help="count isomorphism classes per ply")
    _add_common(p, with_game=False)
    p.add_argument("--game", default="clique", choices=[k.value for k in GameKind],
                   help="accepted for symmetry; the census is the same for all games")
    p.add_argument("--dump", default=None, help="directory for binary layer dumps")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("verify-strategy", help="exhaustively check a blocking strategy")
    p.add_argument("--strategy", required=True, choices=["bob13", "bob12", "mirror"])
    p.add_argument("--n", required=True, type=int, help="order of the complete board")
    p.set_defaults(fn=cmd_verify_strategy)

    p = sub.add_parser("play", help="play against the exact solver")
    _add_common(p)
    p.add_argument("--human", required=True, choices=["alice", "bob"],
                   help="which side you take (alice = first player)")
    p.set_defaults(fn=cmd_play)

    p = sub.add_parser("selftest", help="fast internal consistency checks")
    p.set_defaults(fn=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
