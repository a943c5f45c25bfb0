"""Tabulated outcomes over colex bases, as CSV and as rendered figures.

Rows carry exact integers only; formatting is fixed so repeated runs emit
byte-identical CSV.  The figure is a convenience view of the same rows and
never feeds back into the data path.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import IO, Iterable

from .board import GameKind, GameSpec, colex_board
from .generator import build_layers
from .solver import cache_append, cache_lookup, cache_record, solve

CSV_HEADER = "m,col_a,col_b,delta_a,delta_b,svc,vc_a,vc_b"

_TABLE_KINDS = (GameKind.COLEX, GameKind.STAR, GameKind.VC)


@dataclass(frozen=True)
class TableRow:
    m: int
    skipped: bool = False
    col: tuple[int, int] | None = None
    delta: tuple[int, int] | None = None
    vc: tuple[int, int] | None = None

    def csv(self) -> str:
        # cells of games that were not requested stay empty, so column
        # positions never move
        if self.skipped:
            return f"{self.m},skipped"
        parts = [str(self.m)]
        for pair in (self.col, self.delta):
            parts += [str(pair[0]), str(pair[1])] if pair else ["", ""]
        parts.append(str(self.vc[0] - self.vc[1]) if self.vc else "")
        parts += [str(self.vc[0]), str(self.vc[1])] if self.vc else ["", ""]
        return ",".join(parts)


def compute_row(
    m: int,
    cache_path: str | None = None,
    kinds: tuple[GameKind, ...] = _TABLE_KINDS,
) -> TableRow:
    """Solve the requested scored games on the m-edge colex base.

    The layered state space is built once and shared by all backward
    passes; cached outcomes skip the build entirely.
    """
    base = colex_board(m)
    outcomes: dict[GameKind, tuple[int, int]] = {}
    if cache_path:
        for kind in kinds:
            hit = cache_lookup(cache_path, GameSpec(kind, base))
            if hit is not None:
                outcomes[kind] = (hit.a, hit.b)
    missing = [k for k in kinds if k not in outcomes]
    if missing:
        layers = build_layers(GameSpec(missing[0], base))
        for kind in missing:
            spec = GameSpec(kind, base)
            started = time.monotonic()
            result = solve(spec, layers=layers)
            outcomes[kind] = (result.outcome.a, result.outcome.b)
            if cache_path:
                cache_append(
                    cache_path, cache_record(spec, result, time.monotonic() - started)
                )
    return TableRow(
        m,
        col=outcomes.get(GameKind.COLEX),
        delta=outcomes.get(GameKind.STAR),
        vc=outcomes.get(GameKind.VC),
    )


def compute_table(
    ms: Iterable[int],
    max_edges: int,
    cache_path: str | None = None,
    progress: bool = False,
    kinds: tuple[GameKind, ...] = _TABLE_KINDS,
) -> list[TableRow]:
    rows = []
    for m in ms:
        if m > max_edges:
            rows.append(TableRow(m, skipped=True))
            continue
        if progress:
            print(f"solving m={m} ...", file=sys.stderr, flush=True)
        rows.append(compute_row(m, cache_path, kinds))
    return rows


def write_csv(rows: list[TableRow], fh: IO[str]) -> None:
    fh.write(CSV_HEADER + "\n")
    for row in rows:
        fh.write(row.csv() + "\n")


def render_figure(rows: list[TableRow], path: str) -> None:
    """Draw first/second player scores per game kind across the row range."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    solved = [r for r in rows if not r.skipped]
    fig, axes = plt.subplots(3, 1, figsize=(7, 8), sharex=True)
    panels = [
        ("colex score", lambda r: r.col),
        ("largest monochromatic star", lambda r: r.delta),
        ("captured vertices", lambda r: r.vc),
    ]
    xs = [r.m for r in solved]
    for ax, (title, pick) in zip(axes, panels):
        have = [r for r in solved if pick(r) is not None]
        hx = [r.m for r in have]
        ax.plot(hx, [pick(r)[0] for r in have], "o-", color="#c33", label="player 1")
        ax.plot(hx, [pick(r)[1] for r in have], "s-", color="#36c", label="player 2")
        ax.set_ylabel(title, fontsize=9)
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
    axes[-1].set_xlabel("edges in colex base graph")
    if xs:
        axes[-1].set_xticks(xs)
    fig.suptitle("Optimal outcomes on colex graphs")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
