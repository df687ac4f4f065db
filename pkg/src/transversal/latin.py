"""Latin rectangles and squares: row extension, completion, exhaustive
counting, and Youden squares built from block designs."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from . import _bitmatch
from .birkhoff import _permanent_rows
from .errors import AlreadyCompleteError, ResourceLimitError, ValidationError

EXTENSION_COUNT_CEILING = 8
SQUARE_COUNT_CEILING = 5


class LatinRectangle:
    """An m-by-n array over symbols 1..n, each symbol once per row and at
    most once per column.  Square when m equals n."""

    __slots__ = ("m", "n", "rows", "_col_masks")

    def __init__(self, n, rows):
        rows = tuple(tuple(row) for row in rows)
        if n < 0:
            raise ValidationError("width must be nonnegative", field="n")
        if len(rows) > n:
            raise ValidationError(f"{len(rows)} rows will not fit width {n}", field="rows")
        col_masks = [0] * n
        for r, row in enumerate(rows):
            if len(row) != n:
                raise ValidationError(f"row {r} has {len(row)} entries, expected {n}",
                                      field=f"rows[{r}]")
            row_mask = 0
            for c, symbol in enumerate(row):
                if not isinstance(symbol, int) or not 1 <= symbol <= n:
                    raise ValidationError(f"row {r} holds {symbol!r}, not a symbol in 1..{n}",
                                          field=f"rows[{r}]")
                bit = 1 << (symbol - 1)
                if row_mask & bit:
                    raise ValidationError(f"row {r} repeats symbol {symbol}",
                                          field=f"rows[{r}]")
                if col_masks[c] & bit:
                    raise ValidationError(f"column {c} repeats symbol {symbol}",
                                          field=f"rows[{r}]")
                row_mask |= bit
                col_masks[c] |= bit
        self.m = len(rows)
        self.n = n
        self.rows = rows
        self._col_masks = col_masks

    @property
    def is_square(self) -> bool:
        return self.m == self.n

    def column_deficiencies(self) -> list[int]:
        """Per column, the bitmask of symbols not yet used in it."""
        full = (1 << self.n) - 1
        return [full & ~mask for mask in self._col_masks]

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [list(row) for row in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "LatinRectangle":
        if not isinstance(obj, dict) or "n" not in obj or "rows" not in obj:
            raise ValidationError("rectangle file needs 'n' and 'rows'", field="n")
        rows = obj["rows"]
        if "alphabet" in obj:
            order = {x: k + 1 for k, x in enumerate(obj["alphabet"])}
            if len(order) != len(obj["alphabet"]):
                raise ValidationError("alphabet repeats a letter", field="alphabet")
            try:
                rows = [[order[x] for x in row] for row in rows]
            except KeyError as exc:
                raise ValidationError(f"letter {exc.args[0]!r} is not in the alphabet",
                                      field="rows") from exc
        return cls(obj["n"], rows)


def extend_row(rect: LatinRectangle) -> LatinRectangle:
    """Add one more valid row; always possible while m < n.

    The new row is a system of distinct representatives for the column
    deficiency sets, which form an (n-m)-regular family, so the search
    cannot fail; the lexicographically least row is chosen.
    """
    if rect.is_square:
        raise AlreadyCompleteError("rectangle is already a square")
    masks = rect.column_deficiencies()
    assignment = _bitmatch.lex_least_assignment(masks, rect.n)
    if assignment is None:  # ruled out by regularity
        raise AssertionError("deficiency family unexpectedly has no SDR")
    new_row = tuple(c + 1 for c in assignment)
    return LatinRectangle(rect.n, rect.rows + (new_row,))


def complete(rect: LatinRectangle) -> LatinRectangle:
    """Extend row by row until square."""
    while not rect.is_square:
        rect = extend_row(rect)
    return rect


def count_extensions(rect: LatinRectangle, *, ceiling: int = EXTENSION_COUNT_CEILING) -> int:
    """Exact number of valid next rows, as a permanent of the availability
    matrix (column against symbol)."""
    if rect.is_square:
        raise AlreadyCompleteError("rectangle is already a square")
    if rect.n > ceiling:
        raise ResourceLimitError(f"width {rect.n} is above the counting ceiling {ceiling}")
    masks = rect.column_deficiencies()
    rows = [[(mask >> s) & 1 for s in range(rect.n)] for mask in masks]
    return int(_permanent_rows(rows))


def count_latin_squares(n: int, *, ceiling: int = SQUARE_COUNT_CEILING) -> int:
    """Exhaustive count of all n-by-n Latin squares over symbols 1..n."""
    if n < 1:
        raise ValidationError("n must be positive")
    if n > ceiling:
        raise ResourceLimitError(f"order {n} is above the counting ceiling {ceiling}")
    full = (1 << n) - 1
    col_masks = [0] * n
    count = 0

    def fill(r, c, row_mask):
        nonlocal count
        if c == n:
            if r == n - 1:
                count += 1
                return
            fill(r + 1, 0, 0)
            return
        avail = full & ~row_mask & ~col_masks[c]
        while avail:
            low = avail & -avail
            avail ^= low
            col_masks[c] |= low
            fill(r, c + 1, row_mask | low)
            col_masks[c] ^= low

    fill(0, 0, 0)
    return count


def latin_lower_bound(n: int) -> Fraction:
    """The counting bound (n!)^(2n) / n^(n^2)."""
    if n < 1:
        raise ValidationError("n must be positive")
    return Fraction(factorial(n) ** (2 * n), n ** (n * n))


class BlockDesign:
    """Points and blocks; the raw material for Youden squares.

    ``replication`` is the common number of blocks through each point when
    the design is equireplicate, else None; ``block_size`` likewise for the
    common block cardinality.
    """

    __slots__ = ("points", "blocks", "_index", "_block_masks")

    def __init__(self, points, blocks):
        points = tuple(points)
        index: dict = {}
        for pos, x in enumerate(points):
            if x in index:
                raise ValidationError(f"duplicate point {x!r}", field="points")
            index[x] = pos
        block_masks = []
        kept = []
        for b, block in enumerate(blocks):
            mask = 0
            for x in block:
                pos = index.get(x)
                if pos is None:
                    raise ValidationError(f"block {b} holds {x!r}, not a point",
                                          field=f"blocks[{b}]")
                mask |= 1 << pos
            if mask == 0:
                raise ValidationError(f"block {b} is empty", field=f"blocks[{b}]")
            block_masks.append(mask)
            kept.append(tuple(points[p] for p in _bitmatch.bits_of(mask)))
        self.points = points
        self.blocks = tuple(kept)
        self._index = index
        self._block_masks = block_masks

    @property
    def v(self) -> int:
        return len(self.points)

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int | None:
        sizes = {mask.bit_count() for mask in self._block_masks}
        if len(sizes) == 1:
            return sizes.pop()
        return None

    @property
    def replication(self) -> int | None:
        counts = [0] * self.v
        for mask in self._block_masks:
            for p in _bitmatch.bits_of(mask):
                counts[p] += 1
        if counts and len(set(counts)) == 1:
            return counts[0]
        return None

    def is_symmetric_bibd(self) -> bool:
        """v = b, constant block size, and every point pair in a constant
        number of blocks."""
        if self.v != self.b or self.block_size is None or self.replication is None:
            return False
        lambdas = set()
        for i in range(self.v):
            for j in range(i + 1, self.v):
                pair = (1 << i) | (1 << j)
                lambdas.add(sum(1 for m in self._block_masks if m & pair == pair))
        return len(lambdas) <= 1

    @classmethod
    def from_json(cls, obj: dict) -> "BlockDesign":
        if not isinstance(obj, dict) or "points" not in obj or "blocks" not in obj:
            raise ValidationError("design file needs 'points' and 'blocks'", field="points")
        return cls(obj["points"], obj["blocks"])


def youden_from_design(d: BlockDesign):
    """A k-by-v array whose column j holds exactly the letters of block j
    and whose every row uses each letter once.

    Needs an equireplicate design with constant block size and as many
    blocks as points.  Each row is a distinct-representative system for the
    unused block remainders, which stay regular, so all k rows exist.
    """
    if d.v != d.b:
        raise ValidationError(f"need as many blocks as points, got v={d.v}, b={d.b}")
    k = d.block_size
    if k is None:
        raise ValidationError("blocks must share one size")
    if d.replication is None:
        raise ValidationError("design must be equireplicate")
    remaining = list(d._block_masks)
    out = []
    for _ in range(k):
        assignment = _bitmatch.lex_least_assignment(remaining, d.v)
        if assignment is None:  # ruled out by regularity
            raise AssertionError("remainder family unexpectedly has no SDR")
        out.append(tuple(d.points[p] for p in assignment))
        for j, p in enumerate(assignment):
            remaining[j] &= ~(1 << p)
    return tuple(out)


def validate_youden(d: BlockDesign, array) -> tuple[bool, str | None]:
    """Columns must equal their blocks as sets; rows must not repeat letters."""
    array = tuple(tuple(row) for row in array)
    k = d.block_size
    if k is None or len(array) != k:
        return False, "array height differs from the block size"
    for r, row in enumerate(array):
        if len(row) != d.b:
            return False, f"row {r} has {len(row)} entries, expected {d.b}"
        if len(set(row)) != len(row):
            return False, f"row {r} repeats a letter"
    for j in range(d.b):
        column = {array[r][j] for r in range(k)}
        if column != set(d.blocks[j]):
            return False, f"column {j} does not equal its block"
    return True, None
