"""Latin squares and their complete-bipartite colour encodings.

A Latin square of order n maps to K_{n,n} with rows as vertices 0..n-1,
columns as vertices n..2n-1, and the edge (i, n + j) coloured by the cell
symbol.  The colouring is proper, and transversals of the square are
exactly the rainbow perfect matchings of the encoding.
"""

from __future__ import annotations

from .errors import (
    NotCompleteBipartite,
    OrderTooLarge,
    ParseError,
    WrongColourCount,
)
from .graphs import EdgeColoredGraph, build_graph

TRANSVERSAL_ORDER_CAP = 9


class LatinSquare:
    """Order-n square over symbols 1..n, each row and column a permutation."""

    __slots__ = ("n", "cells")

    def __init__(self, cells) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in cells)
        n = len(rows)
        if n == 0:
            raise ValueError("square must have at least one row")
        full = set(range(1, n + 1))
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} cells, expected {n}")
            if set(row) != full:
                raise ValueError(f"row {i} is not a permutation of 1..{n}")
        for j in range(n):
            if {row[j] for row in rows} != full:
                raise ValueError(f"column {j} is not a permutation of 1..{n}")
        self.n = n
        self.cells = rows

    @classmethod
    def from_rows(cls, rows) -> "LatinSquare":
        """Build from rows over an arbitrary symbol alphabet.

        Symbols are normalised to 1..n, by sorted order when the alphabet
        is orderable and by string representation otherwise.
        """
        symbols = {x for row in rows for x in row}
        try:
            ordered = sorted(symbols)
        except TypeError:
            ordered = sorted(symbols, key=repr)
        remap = {sym: i + 1 for i, sym in enumerate(ordered)}
        return cls([[remap[x] for x in row] for row in rows])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        return f"LatinSquare(order={self.n})"


def cyclic_square(n: int) -> LatinSquare:
    """Addition table of the integers mod n: cell (i, j) = ((i+j) mod n) + 1."""
    if n < 1:
        raise ValueError("order must be positive")
    return LatinSquare([[(i + j) % n + 1 for j in range(n)] for i in range(n)])


def latin_to_graph(square: LatinSquare) -> EdgeColoredGraph:
    """K_{n,n} encoding with rows 0..n-1 and columns n..2n-1."""
    n = square.n
    return build_graph(
        2 * n,
        [(i, n + j, square.cells[i][j]) for i in range(n) for j in range(n)],
    )


def graph_to_latin(graph: EdgeColoredGraph) -> LatinSquare:
    """Decode a properly coloured balanced complete bipartite graph.

    The bipartition is recovered by two-colouring; the side containing
    vertex 0 becomes the rows.  Exactly n colours are required.  Raises
    :class:`NotCompleteBipartite` or :class:`WrongColourCount`.
    """
    if graph.n == 0 or graph.n % 2:
        raise NotCompleteBipartite(f"{graph.n} vertices cannot split evenly")
    n = graph.n // 2
    side = [-1] * graph.n
    for start in range(graph.n):
        if side[start] != -1:
            continue
        side[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for idx in graph.incidence[v]:
                a, b, _c = graph.edges[idx]
                w = b if a == v else a
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    raise NotCompleteBipartite(f"odd cycle through vertices {v} and {w}")
    rows = [v for v in range(graph.n) if side[v] == 0]
    cols = [v for v in range(graph.n) if side[v] == 1]
    if len(rows) != n or len(graph.edges) != n * n:
        raise NotCompleteBipartite(
            f"expected K_{{{n},{n}}} with {n * n} edges, got sides "
            f"{len(rows)}/{len(cols)} and {len(graph.edges)} edges"
        )
    colors = sorted(graph.colors)
    if len(colors) != n:
        raise WrongColourCount(f"expected {n} colours, got {len(colors)}")
    remap = {c: i + 1 for i, c in enumerate(colors)}
    cells = []
    for i in rows:
        row = []
        for j in cols:
            c = graph.color_of(i, j)
            if c is None:
                raise NotCompleteBipartite(f"missing edge between {i} and {j}")
            row.append(remap[c])
        cells.append(row)
    return LatinSquare(cells)


def count_transversals(square: LatinSquare) -> int:
    """Exact transversal count by backtracking over the n! column choices.

    A transversal picks one cell per row and column with all symbols
    distinct.  Orders above 9 raise :class:`OrderTooLarge`.
    """
    n = square.n
    if n > TRANSVERSAL_ORDER_CAP:
        raise OrderTooLarge(f"order {n} exceeds exact cap {TRANSVERSAL_ORDER_CAP}")
    cells = square.cells
    col_free = [True] * n
    sym_free = [True] * (n + 1)
    count = 0

    def fill(row: int) -> None:
        nonlocal count
        if row == n:
            count += 1
            return
        for col in range(n):
            if not col_free[col]:
                continue
            sym = cells[row][col]
            if not sym_free[sym]:
                continue
            col_free[col] = False
            sym_free[sym] = False
            fill(row + 1)
            sym_free[sym] = True
            col_free[col] = True

    fill(0)
    return count


def parse_square(text: str) -> LatinSquare:
    """Parse the text format: first line is n, then n whitespace-split rows."""
    lines = [ln for ln in (raw.split("#", 1)[0].strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ParseError("empty square input")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"expected order on first line, got {lines[0]!r}", 1) from None
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} rows after the header, got {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != n:
            raise ParseError(f"expected {n} cells, got {len(parts)}", i)
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            raise ParseError("cells must be integers", i) from None
    try:
        return LatinSquare(rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def dumps_square(square: LatinSquare) -> str:
    lines = [str(square.n)]
    lines.extend(" ".join(str(x) for x in row) for row in square.cells)
    return "\n".join(lines) + "\n"


def load_square(path) -> LatinSquare:
    from pathlib import Path

    return parse_square(Path(path).read_text())
