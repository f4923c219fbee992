"""Cells, polyomino shapes, and the shift/rotation algebra on the square grid.

Coordinates are 1-based: a cell lives in column ``col`` counted from the left
and row ``row`` counted from the top, so ``Cell(1, 1)`` is the upper-left
corner.  Free-standing shapes are always stored normalized, meaning the
minimum column and the minimum row over the cells are both 1;  positions on a
board are expressed through placements, never through denormalized cell sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Union


class Cell(NamedTuple):
    col: int
    row: int


CellsLike = Union["Shape", Iterable[Cell]]


def _rotate_cell(cell: Cell, m: int) -> Cell:
    """Rotate a cell m quarter turns clockwise about the grid origin."""
    i, j = cell
    m %= 4
    if m == 0:
        return Cell(i, j)
    if m == 1:
        return Cell(-j, i)
    if m == 2:
        return Cell(-i, -j)
    return Cell(j, -i)


@dataclass(frozen=True)
class Transform:
    """A clockwise quarter-turn count followed by an integer shift."""

    rotation: int = 0
    shift: tuple[int, int] = (0, 0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation", self.rotation % 4)

    def apply(self, cell: Cell) -> Cell:
        i, j = _rotate_cell(Cell(*cell), self.rotation)
        return Cell(i + self.shift[0], j + self.shift[1])

    def then(self, other: "Transform") -> "Transform":
        """The transform equivalent to applying self first, then other."""
        c, d = _rotate_cell(Cell(*self.shift), other.rotation)
        return Transform(self.rotation + other.rotation,
                         (c + other.shift[0], d + other.shift[1]))


def _norm_shift(cells: Iterable[Cell]) -> tuple[int, int]:
    cs = list(cells)
    if not cs:
        raise ValueError("cannot normalize an empty cell set")
    return 1 - min(c.col for c in cs), 1 - min(c.row for c in cs)


def normalize(cells: Iterable[Cell]) -> frozenset[Cell]:
    """Translate a cell set so its minimum column and minimum row are 1."""
    cs = {Cell(*c) for c in cells}
    dc, dr = _norm_shift(cs)
    return frozenset(Cell(c.col + dc, c.row + dr) for c in cs)


@dataclass(frozen=True)
class Shape:
    """A normalized polyomino with a designated anchor cell.

    Two shapes compare equal when their cells and anchor agree; the family
    tag and parameters are descriptive metadata and do not affect equality.
    """

    cells: frozenset[Cell]
    anchor: Cell
    family: str = field(default="custom", compare=False)
    params: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        cells = frozenset(Cell(*c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "anchor", Cell(*self.anchor))
        if not cells:
            raise ValueError("a shape needs at least one cell")
        if min(c.col for c in cells) != 1 or min(c.row for c in cells) != 1:
            raise ValueError("shape cells must be normalized (min col = min row = 1)")
        if self.anchor not in cells:
            raise ValueError(f"anchor {tuple(self.anchor)} is not one of the shape's cells")

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def width(self) -> int:
        return max(c.col for c in self.cells)

    @property
    def height(self) -> int:
        return max(c.row for c in self.cells)

    def sorted_cells(self) -> tuple[Cell, ...]:
        return tuple(sorted(self.cells))


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def rect(a: int, b: int) -> Shape:
    """The a-wide, b-tall rectangle."""
    _require(a >= 1 and b >= 1, f"rect requires a >= 1 and b >= 1, got a={a}, b={b}")
    cells = frozenset(Cell(i, j) for i in range(1, a + 1) for j in range(1, b + 1))
    anchor = Cell(max(1, a // 2), max(1, b // 2))
    return Shape(cells, anchor, "rect", (a, b))


def straight_v(n: int) -> Shape:
    """Vertical 1 x n straight."""
    _require(n >= 1, f"straight-v requires n >= 1, got n={n}")
    cells = frozenset(Cell(1, j) for j in range(1, n + 1))
    return Shape(cells, Cell(1, max(1, n // 2)), "straight-v", (n,))


def straight_h(n: int) -> Shape:
    """Horizontal n x 1 straight."""
    _require(n >= 1, f"straight-h requires n >= 1, got n={n}")
    cells = frozenset(Cell(i, 1) for i in range(1, n + 1))
    return Shape(cells, Cell(max(1, n // 2), 1), "straight-h", (n,))


def ell(a: int, b: int) -> Shape:
    """L shape: a+1 cells along the top row, b more cells down the left column.

    The short arm may not exceed the long arm (0 < a <= b); the corner cell
    is the anchor.
    """
    _require(0 < a <= b, f"L requires 0 < a <= b, got a={a}, b={b}")
    cells = frozenset(Cell(i, 1) for i in range(1, a + 2)) | \
        frozenset(Cell(1, j) for j in range(2, b + 2))
    return Shape(frozenset(cells), Cell(1, 1), "L", (a, b))


def tee(a: int, b: int) -> Shape:
    """T shape: a 2a+1 bar along the top row with a b-cell stem below its center."""
    _require(a >= 1 and b >= 1, f"T requires a >= 1 and b >= 1, got a={a}, b={b}")
    cells = frozenset(Cell(i, 1) for i in range(1, 2 * a + 2)) | \
        frozenset(Cell(a + 1, j) for j in range(2, b + 2))
    return Shape(frozenset(cells), Cell(a + 1, 1), "T", (a, b))


def plus(a: int) -> Shape:
    """Plus shape: two crossing 2a+1 bars sharing their center."""
    _require(a >= 1, f"plus requires a >= 1, got a={a}")
    cells = frozenset(Cell(i, a + 1) for i in range(1, 2 * a + 2)) | \
        frozenset(Cell(a + 1, j) for j in range(1, 2 * a + 2))
    return Shape(frozenset(cells), Cell(a + 1, a + 1), "plus", (a,))


def gen_tee(a: int, b: int, c: int) -> Shape:
    """Asymmetric T: top bar with a cells left and b cells right of the stem column."""
    _require(a >= 1 and b >= 1 and c >= 1,
             f"gen-T requires a, b, c >= 1, got a={a}, b={b}, c={c}")
    cells = frozenset(Cell(i, 1) for i in range(1, a + b + 2)) | \
        frozenset(Cell(a + 1, j) for j in range(2, c + 2))
    return Shape(frozenset(cells), Cell(a + 1, 1), "gen-T", (a, b, c))


def gen_plus(a: int, b: int, c: int, d: int) -> Shape:
    """Asymmetric plus: arms of length a (left), b (right), c (down), d (up)."""
    _require(a >= 1 and b >= 1 and c >= 1 and d >= 1,
             f"gen-plus requires a, b, c, d >= 1, got a={a}, b={b}, c={c}, d={d}")
    cells = frozenset(Cell(i, d + 1) for i in range(1, a + b + 2)) | \
        frozenset(Cell(a + 1, j) for j in range(1, c + d + 2))
    return Shape(frozenset(cells), Cell(a + 1, d + 1), "gen-plus", (a, b, c, d))


def custom(cells: Iterable[Cell], anchor: Cell | None = None) -> Shape:
    """A user-supplied cell set, normalized; the anchor defaults to the
    lexicographically least cell."""
    raw = {Cell(*c) for c in cells}
    dc, dr = _norm_shift(raw)
    norm = frozenset(Cell(c.col + dc, c.row + dr) for c in raw)
    if anchor is None:
        a = min(norm)
    else:
        a = Cell(anchor[0] + dc, anchor[1] + dr)
        _require(a in norm, f"anchor {tuple(anchor)} is not one of the supplied cells")
    return Shape(norm, a, "custom", ())


_FAMILY_BUILDERS = {
    "rect": rect,
    "straight-v": straight_v,
    "straight-h": straight_h,
    "l": ell,
    "t": tee,
    "plus": plus,
    "gen-t": gen_tee,
    "gen-plus": gen_plus,
}

FAMILIES = ("rect", "straight-v", "straight-h", "L", "T", "plus",
            "gen-T", "gen-plus", "custom")


def make_shape(family: str, params: Iterable[int] = (),
               custom_cells: Iterable[Cell] | None = None,
               anchor: Cell | None = None) -> Shape:
    """Build a shape from a family name and its integer parameters."""
    key = str(family).lower()
    ps = tuple(int(p) for p in params)
    if key == "custom":
        if not custom_cells:
            raise ValueError("family custom requires a cell list")
        return custom(custom_cells, anchor)
    builder = _FAMILY_BUILDERS.get(key)
    if builder is None:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    arity = builder.__code__.co_argcount
    if len(ps) != arity:
        raise ValueError(f"family {family!r} takes {arity} parameter(s), got {len(ps)}")
    return builder(*ps)


def rotate(shape: Shape, m: int) -> Shape:
    """Rotate a shape m quarter turns clockwise and renormalize.

    The anchor travels with its cell.  Family metadata is kept so a rotated
    piece still reports what it was built from.
    """
    m %= 4
    if m == 0:
        return shape
    moved = [_rotate_cell(c, m) for c in shape.cells]
    dc, dr = _norm_shift(moved)
    cells = frozenset(Cell(c.col + dc, c.row + dr) for c in moved)
    a = _rotate_cell(shape.anchor, m)
    return Shape(cells, Cell(a.col + dc, a.row + dr), shape.family, shape.params)


def _cellset(obj: CellsLike) -> frozenset[Cell]:
    if isinstance(obj, Shape):
        return obj.cells
    return frozenset(Cell(*c) for c in obj)


def fixed_equivalent(p: CellsLike, q: CellsLike) -> bool:
    """True when q's cells are a translate of p's (no rotation allowed)."""
    return normalize(_cellset(p)) == normalize(_cellset(q))


def canonical_form(obj: CellsLike) -> tuple[Cell, ...]:
    """Least sorted normalized cell tuple over the four rotations.

    Two cell sets are related by rotation plus translation exactly when
    their canonical forms coincide.
    """
    base = _cellset(obj)
    best: tuple[Cell, ...] | None = None
    for m in range(4):
        cand = tuple(sorted(normalize(_rotate_cell(c, m) for c in base)))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def free_equivalent(p: CellsLike, q: CellsLike) -> bool:
    """True when q's cells are a rotation and/or translate of p's."""
    return canonical_form(p) == canonical_form(q)
