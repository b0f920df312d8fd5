"""Undirected simple graphs, graph6 I/O, the five-vertex fixtures, and a
brute-force Max-Cut oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from qaoa_landscape.errors import CapacityError, ContractError, Graph6Error

MAX_ENUMERATION_VERTICES = 24
GRAPH6_HEADER = ">>graph6<<"


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0 .. n-1``.

    Edges are normalised to ``(j, k)`` with ``j < k`` and stored sorted, so two
    graphs with the same edge set compare equal.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ContractError(f"vertex count must be positive, got {self.n}")
        normalised = set()
        for j, k in self.edges:
            if j == k:
                raise ContractError(f"self-loop on vertex {j}")
            j, k = min(j, k), max(j, k)
            if j < 0 or k >= self.n:
                raise ContractError(f"edge ({j}, {k}) out of range for n={self.n}")
            normalised.add((int(j), int(k)))
        object.__setattr__(self, "edges", tuple(sorted(normalised)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for j, k in self.edges:
            adj[j].add(k)
            adj[k].add(j)
        return adj

    def relabel(self, perm) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, tuple((perm[j], perm[k]) for j, k in self.edges))


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def _upper_pairs(n: int) -> Iterator[tuple[int, int]]:
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    for k in range(1, n):
        for j in range(k):
            yield j, k


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 record (short form only, ``n <= 62``)."""
    record = text.strip()
    if record.startswith(GRAPH6_HEADER):
        record = record[len(GRAPH6_HEADER):]
    data = record.encode("ascii", errors="replace")
    if not data:
        raise Graph6Error("empty graph6 record", 0)
    for offset, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"character {chr(byte)!r} outside graph6 range 63-126", offset)
    if data[0] == 126:
        raise Graph6Error("multi-byte vertex count (n > 62) is not supported", 0)
    n = data[0] - 63
    if n == 0:
        raise Graph6Error("graph6 record encodes zero vertices", 0)

    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = data[1:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes for n={n}, found {len(body)}",
            min(len(data), 1 + nbytes),
        )

    bits = []
    for byte in body:
        value = byte - 63
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    for pos in range(nbits, len(bits)):
        if bits[pos]:
            raise Graph6Error("nonzero padding bits", 1 + pos // 6)

    edges = tuple(pair for pair, bit in zip(_upper_pairs(n), bits) if bit)
    return Graph(n, edges)


def encode_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ContractError("graph6 short form supports at most 62 vertices")
    edge_set = set(g.edges)
    bits = [1 if pair in edge_set else 0 for pair in _upper_pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        value = 0
        for bit in bits[i:i + 6]:
            value = (value << 1) | bit
        chars.append(chr(value + 63))
    return "".join(chars)


def read_graph6_file(path) -> list[Graph]:
    """Read every non-blank record of a graph6 dataset file.

    Parse errors are re-raised with ``path:line`` context.
    """
    graphs = []
    path = Path(path)
    with path.open("r", encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                graphs.append(parse_graph6(line))
            except Graph6Error as exc:
                raise Graph6Error(f"{path}:{lineno}: {exc.args[0]}", exc.offset) from exc
    return graphs


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

# Edge lists of the eight five-vertex experiment graphs, read off the figure
# of the experiment graphs (node labels 0-4 as drawn there).
_FIXTURE_EDGES: dict[int, tuple[tuple[int, int], ...]] = {
    1: ((0, 4),),
    2: ((0, 4), (1, 4)),
    3: ((0, 4), (1, 4), (2, 4)),
    7: ((0, 3), (0, 4), (3, 4)),
    13: ((0, 3), (0, 4), (1, 3), (1, 4)),
    18: ((0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)),
    23: ((0, 2), (0, 3), (0, 4), (2, 3), (2, 4), (3, 4)),
    33: tuple((j, k) for k in range(5) for j in range(k)),
}
FIXTURE_IDS: tuple[int, ...] = tuple(sorted(_FIXTURE_EDGES))


def fixture_graph(exp_id: int) -> Graph:
    try:
        edges = _FIXTURE_EDGES[int(exp_id)]
    except (KeyError, ValueError):
        raise LookupError(
            f"unknown experiment id {exp_id!r}; expected one of {FIXTURE_IDS}"
        ) from None
    return Graph(5, edges)


# ---------------------------------------------------------------------------
# structure and brute force
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeStructure:
    degree: tuple[int, ...]
    # edge -> number of common neighbours (triangles through the edge)
    shared_edges: dict[tuple[int, int], int] = field(default_factory=dict)


def edge_structure(g: Graph) -> EdgeStructure:
    adj = g.neighbors()
    degree = tuple(len(a) for a in adj)
    shared = {(j, k): len(adj[j] & adj[k]) for j, k in g.edges}
    return EdgeStructure(degree, shared)


@dataclass(frozen=True)
class CutResult:
    best_value: int
    # characteristic vectors (x_0, ..., x_{n-1}) attaining best_value
    best_assignments: tuple[tuple[int, ...], ...]


def _check_capacity(n: int) -> None:
    if n > MAX_ENUMERATION_VERTICES:
        raise CapacityError(
            f"exhaustive enumeration limited to n <= {MAX_ENUMERATION_VERTICES}, got n={n}"
        )


def cut_values(g: Graph) -> np.ndarray:
    """Cut size of every assignment; entry ``i`` has ``x_j = (i >> j) & 1``."""
    _check_capacity(g.n)
    index = np.arange(1 << g.n, dtype=np.int64)
    cuts = np.zeros(1 << g.n, dtype=np.int64)
    for j, k in g.edges:
        cuts += ((index >> j) ^ (index >> k)) & 1
    return cuts


def index_to_bits(index: int, n: int) -> tuple[int, ...]:
    return tuple((index >> j) & 1 for j in range(n))


def brute_force_maxcut(g: Graph) -> CutResult:
    """Enumerate all ``2**n`` cuts and return every optimum."""
    cuts = cut_values(g)
    best = int(cuts.max())
    optima = tuple(index_to_bits(int(i), g.n) for i in np.flatnonzero(cuts == best))
    return CutResult(best, optima)
