"""Isotopy moves on book representations.

Each public move takes and returns a :class:`BookRep`.  The ``_*_masks``
kernels do the same work on tuples of sheet bitmasks and are shared with the
orbit search in :mod:`bookrep.equivalence`.

Sheet adjacency is cyclic: the top and bottom sheets are neighbours, because
shifting the sheets is itself a move.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._tables import tables
from .graph import DomainError, Edge, as_edge, chords_cross, is_interior, vertex_map
from .model import BookRep, validate


class MoveInapplicable(ValueError):
    """The requested move's preconditions do not hold."""


def _relabel(rep: BookRep, vmap) -> tuple[frozenset[Edge], ...]:
    return tuple(frozenset(Edge(vmap(e.a), vmap(e.b)) for e in sheet) for sheet in rep.sheets)


def rotate_vertices(rep: BookRep, delta: int = 1) -> BookRep:
    """Add ``delta`` to every vertex label, mod n."""
    return BookRep(rep.n, _relabel(rep, vertex_map(rep.n, delta, False)))


def shift_sheets(rep: BookRep, delta: int = 1) -> BookRep:
    """Cyclically shift sheet numbers; ``delta=+1`` moves the top sheet to the bottom."""
    s = len(rep.sheets)
    if s == 0:
        return rep
    k = delta % s
    return BookRep(rep.n, rep.sheets[k:] + rep.sheets[:k])


def _axis(n: int, axis) -> int:
    if isinstance(axis, int):
        return axis % n
    e = as_edge(axis)
    if (e.b - e.a) * 2 != n:
        raise DomainError(f"{e} is not a diameter of the {n}-gon")
    return (2 * e.a) % n


def reflect_vertices(rep: BookRep, axis) -> BookRep:
    """Single reflection through a diameter of the boundary circle.

    ``axis`` is either a vertex diameter such as ``"14"`` or an integer ``c``
    for the reflection ``v -> c - v`` (mod n); ``c`` odd for n even gives the
    diameters through edge midpoints.  This alone is a mirror image, not an
    isotopy.
    """
    return BookRep(rep.n, _relabel(rep, vertex_map(rep.n, _axis(rep.n, axis), True)))


def mirror(rep: BookRep) -> BookRep:
    """Reflection through the plane of the circle: reverse the sheet order."""
    return BookRep(rep.n, tuple(reversed(rep.sheets)))


def double_reflection(rep: BookRep, axis, second_axis=None) -> BookRep:
    """Compose two reflections.

    With only ``axis`` this is the diameter reflection followed by the plane
    reflection.  With ``second_axis`` the two diameter reflections are composed,
    which is a rotation.
    """
    if second_axis is not None:
        return reflect_vertices(reflect_vertices(rep, axis), second_axis)
    return mirror(reflect_vertices(rep, axis))


def insert_sheet(rep: BookRep, position: int) -> BookRep:
    """Insert an empty sheet so that it becomes sheet ``position + 1`` (0 = new top)."""
    if not 0 <= position <= len(rep.sheets):
        raise MoveInapplicable(f"cannot insert at position {position} of {len(rep.sheets)} sheets")
    return BookRep(rep.n, rep.sheets[:position] + (frozenset(),) + rep.sheets[position:])


def delete_sheet(rep: BookRep, position: int) -> BookRep:
    """Remove the empty sheet numbered ``position`` (1-based)."""
    if not 1 <= position <= len(rep.sheets):
        raise MoveInapplicable(f"no sheet {position}")
    if rep.sheets[position - 1]:
        edges = ",".join(str(e) for e in sorted(rep.sheets[position - 1]))
        raise MoveInapplicable(f"sheet {position} is not empty ({edges})")
    return BookRep(rep.n, rep.sheets[: position - 1] + rep.sheets[position:])


def _target_sheet(rep: BookRep, e: Edge, direction) -> tuple[int, int]:
    s = len(rep.sheets)
    try:
        src = rep.sheet_index[e]
    except KeyError:
        raise MoveInapplicable(f"edge {e} is not stored in any sheet") from None
    if s < 2:
        raise MoveInapplicable("no adjacent sheet")
    if direction in ("up", -1):
        return src, (src - 1) % s
    if direction in ("down", +1):
        return src, (src + 1) % s
    raise DomainError(f"direction must be 'up' or 'down', got {direction!r}")


def edge_move(rep: BookRep, e, direction, *, prune: bool = True) -> BookRep:
    """Move ``e`` into the adjacent sheet above (``"up"``) or below (``"down"``).

    Sheet 1's upper neighbour is the bottom sheet.  An emptied source sheet is
    dropped unless ``prune`` is false.
    """
    e = as_edge(e)
    src, dst = _target_sheet(rep, e, direction)
    for f in sorted(rep.sheets[dst]):
        if chords_cross(e, f, rep.n):
            raise MoveInapplicable(f"edge {e} crosses {f} in sheet {dst + 1}")
    sheets = list(rep.sheets)
    sheets[src] = sheets[src] - {e}
    sheets[dst] = sheets[dst] | {e}
    out = BookRep(rep.n, tuple(sheets))
    return out.normalized() if prune else out


def move_edge_to(rep: BookRep, e, sheet: int, *, prune: bool = True) -> BookRep:
    """Edge move addressed by target sheet number (1-based, must be adjacent)."""
    e = as_edge(e)
    s = len(rep.sheets)
    src = rep.sheet_index.get(e)
    if src is None:
        raise MoveInapplicable(f"edge {e} is not stored in any sheet")
    dst = sheet - 1
    if dst == (src + 1) % s:
        return edge_move(rep, e, "down", prune=prune)
    if dst == (src - 1) % s:
        return edge_move(rep, e, "up", prune=prune)
    raise MoveInapplicable(f"sheet {sheet} is not adjacent to sheet {src + 1} holding {e}")


def split_edge(rep: BookRep, e, direction) -> BookRep:
    """Insert an empty sheet next to ``e``'s sheet and move ``e`` into it."""
    e = as_edge(e)
    src = rep.sheet_index[e]
    pos = src if direction in ("up", -1) else src + 1
    bumped = insert_sheet(rep, pos)
    return edge_move(bumped, e, direction)


# -- vertex exchange ---------------------------------------------------------


@dataclass(frozen=True)
class ExchangeInfo:
    """Sheet ranges (0-based) of the interior edges at two adjacent vertices."""

    low: int  # vertex whose edges sit in the upper (lower-numbered) sheets
    high: int
    low_sheets: frozenset[int]
    high_sheets: frozenset[int]
    num_sheets: int

    def allowed(self, vertex: int) -> range:
        """Sheets where the exterior edge at ``vertex`` may be parked."""
        if vertex == self.low:
            return range(0, min(self.high_sheets))
        return range(max(self.low_sheets) + 1, self.num_sheets)

    def default(self, vertex: int) -> int:
        """The outermost sheet already used by ``vertex``."""
        if vertex == self.low:
            return min(self.low_sheets)
        return max(self.high_sheets)


def _adjacent(n: int, v: int, w: int) -> bool:
    return (w - v) % n in (1, n - 1)


def exchange_info(rep: BookRep, v: int, w: int) -> ExchangeInfo:
    """Check the vertex-exchange precondition, raising :class:`MoveInapplicable`."""
    n = rep.n
    for x in (v, w):
        if not 1 <= x <= n:
            raise DomainError(f"vertex {x} outside 1..{n}")
    if not _adjacent(n, v, w):
        raise MoveInapplicable(f"vertices {v} and {w} are not adjacent on the circle")
    idx = rep.sheet_index
    vs = frozenset(i for e, i in idx.items() if v in e and w not in e)
    ws = frozenset(i for e, i in idx.items() if w in e and v not in e)
    if not vs or not ws:
        raise MoveInapplicable(f"vertex {v if not vs else w} has no interior edges")
    if max(vs) < min(ws):
        return ExchangeInfo(v, w, vs, ws, len(rep.sheets))
    if max(ws) < min(vs):
        return ExchangeInfo(w, v, ws, vs, len(rep.sheets))
    raise MoveInapplicable(
        f"sheets of edges at {v} ({','.join(str(i + 1) for i in sorted(vs))}) and at "
        f"{w} ({','.join(str(i + 1) for i in sorted(ws))}) overlap"
    )


def _other_neighbour(n: int, v: int, w: int) -> int:
    left = (v - 2) % n + 1
    right = v % n + 1
    return right if left == w else left


def vertex_exchange(rep: BookRep, v: int, w: int, v_sheet: int | None = None,
                    w_sheet: int | None = None, *, prune: bool = True) -> BookRep:
    """Swap adjacent vertices ``v`` and ``w`` and relabel.

    Every interior edge at one vertex must lie strictly above every interior
    edge at the other (the edge ``vw`` itself is exterior).  The exterior edge
    from ``v`` to its other neighbour becomes interior after the swap; it is
    placed in sheet ``v_sheet`` (1-based), which must lie on ``v``'s side.  By
    default it goes in the outermost sheet already used by ``v``.  Likewise for
    ``w_sheet``.
    """
    info = exchange_info(rep, v, w)
    n = rep.n
    sheets_for = {}
    for vertex, choice in ((v, v_sheet), (w, w_sheet)):
        allowed = info.allowed(vertex)
        if choice is None:
            sheets_for[vertex] = info.default(vertex)
        elif choice - 1 in allowed:
            sheets_for[vertex] = choice - 1
        else:
            raise MoveInapplicable(
                f"sheet {choice} is not on vertex {vertex}'s side "
                f"(allowed {allowed.start + 1}..{allowed.stop})"
            )

    if sheets_for[info.low] >= sheets_for[info.high]:
        raise MoveInapplicable(
            f"the new edges at {info.low} and {info.high} would cross in sheet "
            f"{sheets_for[info.high] + 1}; the one at {info.low} must lie higher"
        )

    def swap(x):
        return w if x == v else v if x == w else x

    new = [set() for _ in rep.sheets]
    for i, sheet in enumerate(rep.sheets):
        for e in sheet:
            f = Edge(swap(e.a), swap(e.b))
            if is_interior(f, n):
                new[i].add(f)
    for vertex in (v, w):
        partner = w if vertex == v else v
        outer = _other_neighbour(n, vertex, partner)
        gained = Edge(outer, swap(vertex))
        new[sheets_for[vertex]].add(gained)
    out = BookRep(n, tuple(frozenset(sh) for sh in new))
    return out.normalized() if prune else out


# -- mask kernels for the orbit search ---------------------------------------


class _ExchangeTable:
    """Edge relabelling for swapping the adjacent vertices v and v+1."""

    def __init__(self, t, v: int):
        n = t.n
        w = v % n + 1
        self.v, self.w = v, w
        self.v_mask = sum(1 << i for i, e in enumerate(t.edges) if v in e and w not in e)
        self.w_mask = sum(1 << i for i, e in enumerate(t.edges) if w in e and v not in e)

        def swap(x):
            return w if x == v else v if x == w else x

        perm = []
        for e in t.edges:
            f = Edge(swap(e.a), swap(e.b))
            perm.append(t.index.get(f, -1))
        self.perm = tuple(perm)
        u = _other_neighbour(n, v, w)
        x = _other_neighbour(n, w, v)
        self.gain_v = 1 << t.index[Edge(u, w)]  # from the exterior edge uv
        self.gain_w = 1 << t.index[Edge(x, v)]  # from the exterior edge wx
        self.table = tuple(self._map(mk) for mk in range(1 << t.m)) if t.m <= 14 else None

    def _map(self, mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1 and self.perm[i] >= 0:
                out |= 1 << self.perm[i]
            mask >>= 1
            i += 1
        return out

    def map(self, mask: int) -> int:
        return self.table[mask] if self.table is not None else self._map(mask)


_exchange_cache: dict[int, tuple[_ExchangeTable, ...]] = {}


def _exchange_tables(t):
    if t.n not in _exchange_cache:
        _exchange_cache[t.n] = tuple(_ExchangeTable(t, v) for v in range(1, t.n + 1))
    return _exchange_cache[t.n]


def _exchange_neighbours(t, masks):
    """All results of vertex exchanges, over every legal exterior-edge placement."""
    s = len(masks)
    for xt in _exchange_tables(t):
        vs = [i for i, mk in enumerate(masks) if mk & xt.v_mask]
        ws = [i for i, mk in enumerate(masks) if mk & xt.w_mask]
        if not vs or not ws:
            continue
        if vs[-1] < ws[0]:
            v_range = range(0, ws[0])
            w_range = range(vs[-1] + 1, s)
        elif ws[-1] < vs[0]:
            v_range = range(vs[-1] + 1, s)
            w_range = range(0, vs[0])
        else:
            continue
        base = [xt.map(mk) for mk in masks]
        v_upper = vs[-1] < ws[0]
        for i in v_range:
            for j in w_range:
                # the two gained edges always cross each other
                if (i >= j) if v_upper else (j >= i):
                    continue
                new = list(base)
                new[i] |= xt.gain_v
                new[j] |= xt.gain_w
                yield tuple(mk for mk in new if mk)


def _edge_neighbours(t, masks):
    """Edge moves into adjacent sheets (cyclically) and splits into new sheets."""
    s = len(masks)
    cross = t.cross
    for src in range(s):
        mk = masks[src]
        alone = mk & (mk - 1) == 0
        rest = mk
        while rest:
            low = rest & -rest
            rest ^= low
            e = low.bit_length() - 1
            if s > 1:
                for dst in sorted({(src - 1) % s, (src + 1) % s}):
                    if not cross[e] & masks[dst]:
                        new = list(masks)
                        new[src] = mk ^ low
                        new[dst] = masks[dst] | low
                        yield tuple(x for x in new if x)
            if not alone:
                yield masks[:src] + (low, mk ^ low) + masks[src + 1:]
                yield masks[:src] + (mk ^ low, low) + masks[src + 1:]


def neighbour_masks(t, masks):
    """Every normal form one non-symmetry move away from ``masks``."""
    yield from _edge_neighbours(t, masks)
    yield from _exchange_neighbours(t, masks)


# -- move scripts -------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    """One scripted move; ``args`` are the already-parsed arguments."""

    name: str
    args: tuple
    line: int = 0
    text: str = ""

    def apply(self, rep: BookRep) -> BookRep:
        return _APPLY[self.name](rep, *self.args)


def _apply_vexchange(rep, v, w, vs=None, ws=None):
    return vertex_exchange(rep, v, w, vs, ws, prune=False)


_APPLY = {
    "rotate": lambda rep, d: rotate_vertices(rep, d),
    "shift": lambda rep, d: shift_sheets(rep, d),
    "edgemove": lambda rep, e, d: edge_move(rep, e, d, prune=False),
    "moveto": lambda rep, e, s: move_edge_to(rep, e, s, prune=False),
    "vexchange": _apply_vexchange,
    "insert": lambda rep, p: insert_sheet(rep, p - 1),
    "delete": lambda rep, p: delete_sheet(rep, p),
    "reflect2": lambda rep, a: double_reflection(rep, a),
    "mirror": lambda rep: mirror(rep),
}


def _signed(token: str) -> int:
    return int(token)


def parse_script(text: str) -> list[Move]:
    """Parse a move script, one move per line; ``#`` starts a comment.

    Commands::

        insert P            new empty sheet becomes sheet P
        delete P            remove empty sheet P
        edgemove E up|down  edge move into an adjacent sheet
        moveto E S          edge move addressed by the adjacent target sheet S
        vexchange V W [SV SW]
        shift +1|-1
        rotate +1|-1
        reflect2 AXIS       double reflection, AXIS like 14 or an integer
        mirror              plane reflection only (not an isotopy)
    """
    moves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, *args = line.split()
        try:
            if name in ("shift", "rotate"):
                (d,) = args
                parsed = (_signed(d),)
            elif name in ("insert", "delete"):
                (p,) = args
                parsed = (int(p),)
            elif name == "edgemove":
                e, d = args
                if d not in ("up", "down"):
                    raise ValueError(d)
                parsed = (Edge.parse(e), d)
            elif name == "moveto":
                e, s = args
                parsed = (Edge.parse(e), int(s))
            elif name == "vexchange":
                if len(args) not in (2, 4):
                    raise ValueError(args)
                parsed = tuple(int(a) for a in args)
            elif name == "reflect2":
                (a,) = args
                parsed = (int(a) if a.lstrip("-").isdigit() and len(a) < 2 else Edge.parse(a),)
            elif name == "mirror":
                if args:
                    raise ValueError(args)
                parsed = ()
            else:
                raise ValueError(name)
        except (ValueError, DomainError) as exc:
            raise ScriptError(f"line {lineno}: cannot parse {raw.strip()!r}", lineno) from exc
        moves.append(Move(name, parsed, lineno, line))
    return moves


class ScriptError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(message)
        self.line = line


@dataclass
class ReplayStep:
    move: Move | None
    rep: BookRep
    valid: bool


def replay(rep: BookRep, moves) -> list[ReplayStep]:
    """Apply ``moves`` in order, recording every intermediate state.

    Empty sheets are kept (they only disappear through ``delete``), so the
    recorded states can be transiently invalid; ``valid`` ignores empty sheets.
    Raises :class:`MoveInapplicable` annotated with the failing line.
    """
    if isinstance(moves, str):
        moves = parse_script(moves)
    steps = [ReplayStep(None, rep, _valid_ignoring_empty(rep))]
    for move in moves:
        try:
            rep = move.apply(rep)
        except (MoveInapplicable, DomainError) as exc:
            raise MoveInapplicable(f"step {len(steps)} (line {move.line}, {move.text!r}): {exc}") from exc
        steps.append(ReplayStep(move, rep, _valid_ignoring_empty(rep)))
    return steps


def _valid_ignoring_empty(rep: BookRep) -> bool:
    return validate(rep.normalized()) is None


__all__ = [
    "MoveInapplicable", "ScriptError", "Move", "ReplayStep", "ExchangeInfo",
    "rotate_vertices", "shift_sheets", "reflect_vertices", "mirror", "double_reflection",
    "insert_sheet", "delete_sheet", "edge_move", "move_edge_to", "split_edge",
    "exchange_info", "vertex_exchange", "neighbour_masks", "parse_script", "replay",
    "tables",
]
