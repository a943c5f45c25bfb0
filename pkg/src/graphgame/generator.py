"""Forward construction of the game's state space, one layer per ply.

Layer t holds one entry per isomorphism class of positions reachable after
t plies, keyed by canonical form.  Expansion tries one move per orbit of
uncoloured edges (moves inside an orbit give isomorphic children) and then
deduplicates children by canonical form, which is what makes exhaustive
solving of K_7-sized boards feasible.
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass, field

from .board import (
    ColoredBoard,
    EdgeState,
    GameSpec,
    Player,
    encoded_length,
)
from .canonical import CanonicalResult, _orbit_partition, canonical_full

log = logging.getLogger(__name__)


def mover_at(t: int, bias: tuple[int, int]) -> Player:
    """Who colours the t-th edge: the first p plies of each period go to P1."""
    p, q = bias
    return Player.P1 if t % (p + q) < p else Player.P2


def red_quota(t: int, bias: tuple[int, int]) -> int:
    """Number of plies among 0..t-1 assigned to player 1."""
    p, q = bias
    full, rest = divmod(t, p + q)
    return full * p + min(rest, p)


class LayerEntry:
    """Per-class bookkeeping; `reps` and `children` are packed byte strings.

    reps:     orbit representatives of uncoloured edges, one byte per edge id
    children: canonical keys of the children, concatenated fixed-width
    value:    objective value, filled in by the solver's backward pass
    """

    __slots__ = ("reps", "children", "value")

    def __init__(self, reps: bytes) -> None:
        self.reps = reps
        self.children: bytes | None = None
        self.value: int | None = None


@dataclass
class Layer:
    ply: int
    entries: dict[bytes, LayerEntry] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)


def _uncolored_orbit_reps(states: bytes, result: CanonicalResult) -> bytes:
    uncol = [e for e, s in enumerate(states) if s == EdgeState.UNCOLORED]
    if len(result.auts) == 1 or not uncol:
        return bytes(uncol)
    orbits = _orbit_partition(uncol, result.auts)
    return bytes(orbit[0] for orbit in orbits)


def _entry_for(result: CanonicalResult) -> LayerEntry:
    return LayerEntry(_uncolored_orbit_reps(result.states, result))


def successors(board: ColoredBoard, mover: Player) -> dict[bytes, ColoredBoard]:
    """One canonically labelled child per isomorphism class of moves."""
    res = canonical_full(board)
    out: dict[bytes, ColoredBoard] = {}
    stone = mover.stone
    for e in _uncolored_orbit_reps(res.states, res):
        child_states = bytearray(res.states)
        child_states[e] = stone
        cres = canonical_full(ColoredBoard(board.n, bytes(child_states)))
        if cres.key not in out:
            out[cres.key] = ColoredBoard(board.n, cres.states)
    return out


def build_layers(spec: GameSpec) -> list[Layer]:
    """All layers of the game, from the start position to fully coloured.

    The move schedule depends only on the bias, so the same layers serve
    every game kind on the same base, start and bias.
    """
    n = spec.n
    root = spec.start_board()
    total = root.count(EdgeState.UNCOLORED)
    res = canonical_full(root)
    layers = [Layer(0, {res.key: _entry_for(res)})]
    for t in range(total):
        stone = mover_at(t, spec.bias).stone
        nxt: dict[bytes, LayerEntry] = {}
        for key, entry in layers[t].entries.items():
            states = _key_states(n, key)
            child_keys = bytearray()
            for e in entry.reps:
                child_states = bytearray(states)
                child_states[e] = stone
                cres = canonical_full(ColoredBoard(n, bytes(child_states)))
                if cres.key not in nxt:
                    nxt[cres.key] = _entry_for(cres)
                child_keys += cres.key
            entry.children = bytes(child_keys)
        layers.append(Layer(t + 1, nxt))
        log.debug("layer %d: %d classes", t + 1, len(nxt))
    return layers


def _key_states(n: int, key: bytes) -> bytes:
    """Unpack a canonical key back into one state byte per edge."""
    m = n * (n - 1) // 2
    return bytes((key[e >> 2] >> ((e & 3) << 1)) & 3 for e in range(m))


def layer_sizes(spec: GameSpec) -> list[int]:
    return [len(layer) for layer in build_layers(spec)]


_DUMP_HEADER = struct.Struct("<III")


def write_layer_dump(path: str, n: int, layer: Layer) -> None:
    """Binary dump: header (n, ply, count), then sorted fixed-width keys."""
    with open(path, "wb") as fh:
        fh.write(_DUMP_HEADER.pack(n, layer.ply, len(layer.entries)))
        for key in sorted(layer.entries):
            fh.write(key)


def read_layer_dump(path: str) -> tuple[int, int, list[bytes]]:
    with open(path, "rb") as fh:
        n, ply, count = _DUMP_HEADER.unpack(fh.read(_DUMP_HEADER.size))
        width = encoded_length(n)
        keys = [fh.read(width) for _ in range(count)]
    if len(keys) != count or any(len(k) != width for k in keys):
        raise ValueError(f"{path}: truncated layer dump")
    return n, ply, keys
