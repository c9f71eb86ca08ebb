"""Plain-text formats for complexes, binary complexes, chain maps and representations.

Complex::

    ring Z
    degree 0 rank 1
    degree 1 rank 1
    d 1
    2

``d i`` is followed by rank(i-1) rows of rank(i) entries and may be left out
when it is zero.  Binary complexes add ``dtilde i`` blocks (a ``binary`` line
after the ring marks one whose blocks are all zero).  A chain map has a
``source`` and a ``target`` section (each a complex body) and ``f i`` blocks.
A representation reads::

    ring Q
    group S3            # or: group cyclic 3 / group klein4 / group table <n> + rows
    rank 2
    generator 1
    0 1
    1 0

Text after ``#`` is ignored.
"""

from __future__ import annotations

from .binary import BinaryComplex, BinaryError
from .complexes import ChainComplex, ChainMap, ComplexError
from .equivariant import FiniteGroup, GRep, GroupError, RepError
from .linalg import Matrix
from .rings import RingError, RingTag, ring_from_name


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}" + (f", column {column}" if column else "") if line else "input"
        super().__init__(f"{where}: {message}")


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            if body.strip():
                tokens = []
                pos = 0
                for tok in body.split():
                    col = body.index(tok, pos)
                    tokens.append((tok, col + 1))
                    pos = col + len(tok)
                self.items.append((no, tokens))
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else None

    def next(self):
        item = self.peek()
        if item is None:
            last = self.items[-1][0] if self.items else 1
            raise ParseError("unexpected end of input", last)
        self.i += 1
        return item

    def done(self):
        return self.i >= len(self.items)


def _int(tok, line, what="integer"):
    text, col = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected {what}, got {text!r}", line, col) from None


def _matrix(lines: _Lines, ring: RingTag, rows: int, cols: int, after_line: int) -> Matrix:
    data = []
    for _ in range(rows):
        if lines.peek() is None:
            raise ParseError(f"matrix needs {rows} rows of {cols} entries", after_line)
        no, toks = lines.next()
        if len(toks) != cols:
            col = toks[cols][1] if len(toks) > cols else toks[-1][1] + len(toks[-1][0])
            raise ParseError(f"expected {cols} entries, found {len(toks)}", no, col)
        row = []
        for text, col in toks:
            try:
                row.append(ring.parse(text))
            except RingError as exc:
                raise ParseError(str(exc), no, col) from None
        data.append(row)
    return Matrix.from_rows(ring, data, cols)


def _header_ring(lines: _Lines) -> RingTag:
    no, toks = lines.next()
    if toks[0][0] != "ring" or len(toks) < 2:
        raise ParseError("first line must be 'ring Z|Q|Fp'", no, toks[0][1])
    try:
        return ring_from_name(" ".join(t for t, _ in toks[1:]))
    except RingError as exc:
        raise ParseError(str(exc), no, toks[1][1]) from None


_SECTION_END = {"source", "target", "f"}


def _complex_body(lines: _Lines, ring: RingTag, allow_tilde: bool):
    ranks = {}
    blocks = {"d": {}, "dtilde": {}}
    pending = []
    while not lines.done():
        no, toks = lines.peek()
        key = toks[0][0]
        if key in _SECTION_END:
            break
        lines.next()
        if key == "degree":
            if len(toks) != 4 or toks[2][0] != "rank":
                raise ParseError("expected 'degree <i> rank <r>'", no, toks[0][1])
            i = _int(toks[1], no, "degree")
            r = _int(toks[3], no, "rank")
            if i < 0 or r < 0:
                raise ParseError("degrees and ranks must be non-negative", no, toks[1][1])
            if i in ranks:
                raise ParseError(f"degree {i} declared twice", no, toks[1][1])
            ranks[i] = r
        elif key in ("d", "dtilde"):
            if key == "dtilde" and not allow_tilde:
                raise ParseError("'dtilde' is only allowed in binary complexes", no, toks[0][1])
            if len(toks) != 2:
                raise ParseError(f"expected '{key} <i>'", no, toks[0][1])
            i = _int(toks[1], no, "degree")
            if i < 1:
                raise ParseError("differential index must be at least 1", no, toks[1][1])
            if i in blocks[key]:
                raise ParseError(f"{key} {i} given twice", no, toks[0][1])
            r_out, r_in = ranks.get(i - 1), ranks.get(i)
            if r_out is None or r_in is None:
                raise ParseError(f"declare degrees {i - 1} and {i} before {key} {i}", no, toks[0][1])
            blocks[key][i] = _matrix(lines, ring, r_out, r_in, no)
            pending.append((key, i, no))
        else:
            raise ParseError(f"unknown keyword {key!r}", no, toks[0][1])
    if not ranks:
        top = 0
    else:
        top = max(ranks)
    rank_list = [ranks.get(n, 0) for n in range(top + 1)]
    for key, i, no in pending:
        if i > top:
            raise ParseError(f"{key} {i} lies above the top degree", no)

    def diffs(key):
        return [blocks[key].get(n, Matrix.zeros(ring, rank_list[n - 1], rank_list[n]))
                for n in range(1, top + 1)]

    return rank_list, diffs("d"), diffs("dtilde"), bool(blocks["dtilde"])


def _complex(lines, ring, line_hint):
    ranks, d, _, _ = _complex_body(lines, ring, allow_tilde=False)
    try:
        return ChainComplex(ring, ranks, d)
    except ComplexError as exc:
        raise ParseError(f"invalid complex: {exc}", line_hint) from None


def parse_complex(text: str):
    """ChainComplex, BinaryComplex, ChainMap or GRep, depending on the content."""
    lines = _Lines(text)
    if lines.done():
        raise ParseError("empty input", 1)
    ring = _header_ring(lines)
    first = lines.peek()
    if first is not None and first[1][0][0] == "group":
        return _rep(lines, ring)
    if first is not None and first[1][0][0] == "source":
        return _chain_map(lines, ring)
    forced = first is not None and first[1][0][0] == "binary"
    if forced:
        lines.next()
    ranks, d, dt, binary = _complex_body(lines, ring, allow_tilde=True)
    binary = binary or forced
    if not lines.done():
        no, toks = lines.peek()
        raise ParseError(f"unexpected {toks[0][0]!r}", no, toks[0][1])
    try:
        if binary:
            return BinaryComplex(ring, ranks, d, dt)
        return ChainComplex(ring, ranks, d)
    except (ComplexError, BinaryError) as exc:
        raise ParseError(f"invalid complex: {exc}") from None


def _chain_map(lines: _Lines, ring: RingTag) -> ChainMap:
    no, _ = lines.next()
    source = _complex(lines, ring, no)
    no2, toks = lines.next()
    if toks[0][0] != "target":
        raise ParseError("expected 'target'", no2, toks[0][1])
    target = _complex(lines, ring, no2)
    comps = {}
    while not lines.done():
        no, toks = lines.next()
        if toks[0][0] != "f" or len(toks) != 2:
            raise ParseError("expected 'f <i>'", no, toks[0][1])
        i = _int(toks[1], no, "degree")
        if i in comps:
            raise ParseError(f"f {i} given twice", no, toks[1][1])
        comps[i] = _matrix(lines, ring, target.rank(i), source.rank(i), no)
    top = max(source.top, target.top)
    if comps and max(comps) > top:
        raise ParseError(f"f {max(comps)} lies above the top degree")
    mats = [comps.get(n, Matrix.zeros(ring, target.rank(n), source.rank(n))) for n in range(top + 1)]
    try:
        return ChainMap(source, target, mats)
    except ComplexError as exc:
        raise ParseError(f"invalid chain map: {exc}") from None


def _rep(lines: _Lines, ring: RingTag) -> GRep:
    no, toks = lines.next()
    if len(toks) < 2:
        raise ParseError("expected 'group <preset>' or 'group table <n>'", no, toks[0][1])
    try:
        if toks[1][0] == "table":
            if len(toks) != 3:
                raise ParseError("expected 'group table <n>'", no, toks[1][1])
            n = _int(toks[2], no, "group order")
            rows = []
            for _ in range(n):
                rno, rtoks = lines.next()
                if len(rtoks) != n:
                    raise ParseError(f"table rows need {n} entries", rno, rtoks[0][1])
                rows.append([_int(t, rno, "element") for t in rtoks])
            group = FiniteGroup(rows)
        else:
            group = FiniteGroup.preset(" ".join(t for t, _ in toks[1:]))
    except GroupError as exc:
        raise ParseError(str(exc), no, toks[1][1]) from None
    no, toks = lines.next()
    if toks[0][0] != "rank" or len(toks) != 2:
        raise ParseError("expected 'rank <n>'", no, toks[0][1])
    n = _int(toks[1], no, "rank")
    gens = {}
    while not lines.done():
        gno, gtoks = lines.next()
        if gtoks[0][0] != "generator" or len(gtoks) != 2:
            raise ParseError("expected 'generator <element>'", gno, gtoks[0][1])
        g = _int(gtoks[1], gno, "element")
        if not 0 <= g < group.order:
            raise ParseError(f"element {g} outside the group", gno, gtoks[1][1])
        gens[g] = _matrix(lines, ring, n, n, gno)
    if not gens:
        gens = {0: Matrix.identity(ring, n)} if group.order == 1 else gens
    try:
        if not gens:
            raise RepError("need at least one generator")
        return GRep.from_generators(group, ring, gens)
    except (RepError, RingError) as exc:
        raise ParseError(f"invalid representation: {exc}") from None


def parse_file(path) -> object:
    with open(path, encoding="utf-8") as fh:
        return parse_complex(fh.read())


# ---------------------------------------------------------------------------

def _rows(M: Matrix):
    return [" ".join(M.ring.format(x) for x in M.row(i)) for i in range(M.rows)]


def _complex_lines(ranks, blocks):
    out = [f"degree {n} rank {r}" for n, r in enumerate(ranks)]
    for key, mats in blocks:
        for n, M in enumerate(mats, start=1):
            if M.rows and M.cols and not M.is_zero():
                out.append(f"{key} {n}")
                out.extend(_rows(M))
    return out


def serialize(obj) -> str:
    """Canonical text; ``parse_complex(serialize(x)) == x``."""
    if isinstance(obj, ChainComplex):
        C = obj.trimmed()
        lines = [f"ring {C.ring.name}"] + _complex_lines(C.ranks, [("d", C.diffs)])
    elif isinstance(obj, BinaryComplex):
        lines = [f"ring {obj.ring.name}", "binary"] + _complex_lines(
            obj.ranks, [("d", obj.d_diffs), ("dtilde", obj.dt_diffs)])
    elif isinstance(obj, ChainMap):
        S, T = obj.source, obj.target
        lines = [f"ring {S.ring.name}", "source"] + _complex_lines(S.ranks, [("d", S.diffs)])
        lines += ["target"] + _complex_lines(T.ranks, [("d", T.diffs)])
        for n, M in enumerate(obj.components):
            if M.rows and M.cols and not M.is_zero():
                lines.append(f"f {n}")
                lines.extend(_rows(M))
    elif isinstance(obj, GRep):
        G = obj.group
        lines = [f"ring {obj.ring.name}", f"group table {G.order}"]
        lines += [" ".join(str(x) for x in row) for row in G.table]
        lines.append(f"rank {obj.rank}")
        for g in range(1, G.order) if G.order > 1 else [0]:
            lines.append(f"generator {g}")
            lines.extend(_rows(obj.matrices[g]))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"
