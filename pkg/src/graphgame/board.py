"""Edge-coloured game boards over colexicographically indexed vertex pairs.

A board holds one state per vertex pair of K_n: the pair may be absent from
the base graph, present but uncoloured, or coloured by one of the two
players.  Boards are immutable values; every move produces a new board.

Edges are identified by their colex index: pair (u, v) with u > v has index
C(u, 2) + v, so the pairs enumerate as (1,0), (2,0), (2,1), (3,0), ...
This makes the first C(m, 2) indices exactly the edge set of K_m.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from math import isqrt
from pathlib import Path

EdgeId = int

MAX_ORDER = 12


class FormatError(ValueError):
    """Malformed serialised board or base-graph file."""


class IllegalMoveError(ValueError):
    """Move targets an edge that is absent or already coloured."""


class CapacityError(RuntimeError):
    """Instance exceeds a configured implementation limit."""


class EdgeState(IntEnum):
    """Per-edge state, stored as the 2-bit code used on the wire.

    The numeric values are fixed by the serialisation format: 00 absent,
    01 uncoloured, 10 coloured by player 2, 11 coloured by player 1.
    """

    ABSENT = 0b00
    UNCOLORED = 0b01
    BLUE = 0b10
    RED = 0b11


class Player(IntEnum):
    P1 = 1
    P2 = 2

    @property
    def stone(self) -> EdgeState:
        return EdgeState.RED if self is Player.P1 else EdgeState.BLUE


class GameKind(Enum):
    CLIQUE = "clique"
    STAR = "star"
    VC = "vc"
    COLEX = "colex"


def edge_count(n: int) -> int:
    return n * (n - 1) // 2


def colex_index(u: int, v: int) -> EdgeId:
    """Colex index of the pair {u, v}; endpoint order does not matter."""
    if u == v or u < 0 or v < 0:
        raise ValueError(f"not a vertex pair: ({u}, {v})")
    if u < v:
        u, v = v, u
    return u * (u - 1) // 2 + v


def edge_endpoints(e: EdgeId) -> tuple[int, int]:
    """Endpoints (u, v) with u > v of the edge with colex index e."""
    if e < 0:
        raise ValueError(f"negative edge index: {e}")
    # u is the largest vertex with C(u, 2) <= e.
    u = (1 + isqrt(8 * e + 1)) // 2
    while u * (u - 1) // 2 > e:
        u -= 1
    while (u + 1) * u // 2 <= e:
        u += 1
    return u, e - u * (u - 1) // 2


def encoded_length(n: int) -> int:
    """Bytes needed for n-vertex boards: 2 bits per pair, 4 pairs per byte."""
    return (edge_count(n) + 3) // 4


@dataclass(frozen=True)
class ColoredBoard:
    """Immutable assignment of an EdgeState to every vertex pair of K_n.

    `states` holds one byte per colex pair (values 0..3).  The packed wire
    form is produced by :func:`encode`.
    """

    n: int
    states: bytes

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"order must be at least 1, got {self.n}")
        if self.n > MAX_ORDER:
            raise CapacityError(f"order {self.n} exceeds supported maximum {MAX_ORDER}")
        if len(self.states) != edge_count(self.n):
            raise ValueError(
                f"expected {edge_count(self.n)} edge states for n={self.n}, "
                f"got {len(self.states)}"
            )
        if any(s > 3 for s in self.states):
            raise ValueError("edge state out of range")

    def state(self, e: EdgeId) -> EdgeState:
        return EdgeState(self.states[e])

    def edges_in_state(self, s: EdgeState) -> list[EdgeId]:
        return [e for e, x in enumerate(self.states) if x == s]

    @property
    def present_edges(self) -> list[EdgeId]:
        return [e for e, x in enumerate(self.states) if x != EdgeState.ABSENT]

    @property
    def uncolored_edges(self) -> list[EdgeId]:
        return [e for e, x in enumerate(self.states) if x == EdgeState.UNCOLORED]

    def count(self, s: EdgeState) -> int:
        return self.states.count(s)

    def __str__(self) -> str:
        return board_to_text(self)


def complete_board(n: int) -> ColoredBoard:
    """Uncoloured K_n."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    return ColoredBoard(n, bytes([EdgeState.UNCOLORED]) * edge_count(n))


def colex_order(m: int) -> int:
    """Order of the colex graph C(m): smallest n with C(n, 2) >= m."""
    if m < 1:
        raise ValueError(f"colex size must be positive, got {m}")
    n = 1
    while edge_count(n) < m:
        n += 1
    return n


def colex_board(m: int) -> ColoredBoard:
    """Uncoloured C(m): the first m colex pairs present, the rest absent."""
    n = colex_order(m)
    states = bytearray([EdgeState.ABSENT]) * edge_count(n)
    for e in range(m):
        states[e] = EdgeState.UNCOLORED
    return ColoredBoard(n, bytes(states))


def apply_move(board: ColoredBoard, e: EdgeId, s: EdgeState) -> ColoredBoard:
    """Colour the uncoloured edge e; returns a new board."""
    if s not in (EdgeState.RED, EdgeState.BLUE):
        raise IllegalMoveError(f"moves must colour an edge red or blue, got {s!r}")
    if not 0 <= e < len(board.states):
        raise IllegalMoveError(f"edge {e} out of range for n={board.n}")
    if board.states[e] != EdgeState.UNCOLORED:
        raise IllegalMoveError(
            f"edge {e} is {EdgeState(board.states[e]).name}, not UNCOLORED"
        )
    states = bytearray(board.states)
    states[e] = s
    return ColoredBoard(board.n, bytes(states))


def encode(board: ColoredBoard) -> bytes:
    """Pack 2-bit edge states little-endian: edge i sits at bit offset 2i."""
    out = bytearray(encoded_length(board.n))
    for e, s in enumerate(board.states):
        out[e >> 2] |= s << ((e & 3) << 1)
    return bytes(out)


def decode(n: int, data: bytes) -> ColoredBoard:
    """Inverse of :func:`encode`; rejects wrong lengths and trailing bits."""
    if len(data) != encoded_length(n):
        raise FormatError(
            f"encoded board for n={n} must be {encoded_length(n)} bytes, "
            f"got {len(data)}"
        )
    m = edge_count(n)
    states = bytes((data[e >> 2] >> ((e & 3) << 1)) & 3 for e in range(m))
    used_bits = 2 * m
    if used_bits % 8 and data[-1] >> (used_bits % 8):
        raise FormatError("nonzero padding bits in encoded board")
    return ColoredBoard(n, states)


def board_to_text(board: ColoredBoard) -> str:
    """Text form `n:<hex>` with lowercase hex of the packed encoding."""
    return f"{board.n}:{encode(board).hex()}"


def board_from_text(text: str) -> ColoredBoard:
    m = re.fullmatch(r"(\d+):([0-9a-f]*)", text.strip())
    if not m:
        raise FormatError(f"board text must look like 'n:hex', got {text!r}")
    n = int(m.group(1))
    if n < 1:
        raise FormatError(f"board order must be positive, got {text!r}")
    try:
        data = bytes.fromhex(m.group(2))
    except ValueError as exc:
        raise FormatError(f"bad hex payload in {text!r}") from exc
    return decode(n, data)


def board_from_edges(
    n: int,
    present: list[tuple[int, int]] | None = None,
    red: list[tuple[int, int]] | None = None,
    blue: list[tuple[int, int]] | None = None,
) -> ColoredBoard:
    """Build a board from endpoint pairs; `present=None` means complete K_n.

    Pairs in `red`/`blue` are implicitly present.
    """
    if present is None:
        states = bytearray([EdgeState.UNCOLORED]) * edge_count(n)
    else:
        states = bytearray([EdgeState.ABSENT]) * edge_count(n)
        for u, v in present:
            states[colex_index(u, v)] = EdgeState.UNCOLORED
    for pairs, s in ((red, EdgeState.RED), (blue, EdgeState.BLUE)):
        for u, v in pairs or []:
            states[colex_index(u, v)] = s
    board = ColoredBoard(n, bytes(states))
    if max((max(edge_endpoints(e)) for e in board.present_edges), default=0) >= n:
        raise ValueError("endpoint out of range")
    return board


def load_base_graph(source: str | Path) -> ColoredBoard:
    """Read a base graph file: first line n, then one `u v` pair per line.

    Blank lines and lines starting with `#` are ignored.  Listed pairs
    become uncoloured edges; all other pairs are absent.
    """
    lines = Path(source).read_text().splitlines()
    rows = [ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith("#")]
    if not rows:
        raise FormatError(f"{source}: empty base graph file")
    try:
        n = int(rows[0])
    except ValueError:
        raise FormatError(f"{source}: first line must be the vertex count") from None
    if not 1 <= n <= MAX_ORDER:
        raise FormatError(f"{source}: vertex count {n} outside 1..{MAX_ORDER}")
    states = bytearray([EdgeState.ABSENT]) * edge_count(n)
    for row in rows[1:]:
        parts = row.split()
        if len(parts) != 2:
            raise FormatError(f"{source}: expected 'u v', got {row!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"{source}: non-integer endpoint in {row!r}") from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise FormatError(f"{source}: invalid pair {row!r} for n={n}")
        states[colex_index(u, v)] = EdgeState.UNCOLORED
    return ColoredBoard(n, bytes(states))


@dataclass(frozen=True)
class GameSpec:
    """One solvable instance: game kind, base graph, move quotas, pre-colouring.

    `bias` = (p, q) gives player 1 the first p single-edge plies of every
    period of p+q plies.  `start` pre-colours edges before play begins; those
    edges consume no plies.
    """

    kind: GameKind
    base: ColoredBoard
    bias: tuple[int, int] = (1, 1)
    start: tuple[tuple[EdgeId, EdgeState], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        p, q = self.bias
        if p < 1 or q < 1:
            raise ValueError(f"bias parts must be positive, got {self.bias}")
        coloured = [e for e in range(len(self.base.states))
                    if self.base.states[e] in (EdgeState.RED, EdgeState.BLUE)]
        if coloured:
            raise ValueError("base graph must be uncoloured; use start for pre-colouring")
        seen: set[EdgeId] = set()
        for e, s in self.start:
            if s not in (EdgeState.RED, EdgeState.BLUE):
                raise ValueError(f"start colour must be RED or BLUE, got {s!r}")
            if not 0 <= e < len(self.base.states):
                raise ValueError(f"start edge {e} out of range")
            if self.base.states[e] != EdgeState.UNCOLORED:
                raise ValueError(f"start edge {e} not present in base graph")
            if e in seen:
                raise ValueError(f"start edge {e} listed twice")
            seen.add(e)

    @property
    def n(self) -> int:
        return self.base.n

    def start_board(self) -> ColoredBoard:
        board = self.base
        for e, s in self.start:
            board = apply_move(board, e, s)
        return board

    def describe(self) -> str:
        p, q = self.bias
        parts = [self.kind.value, f"n={self.n}", f"bias={p},{q}"]
        if self.start:
            parts.append(f"start={len(self.start)} edges")
        return " ".join(parts)
