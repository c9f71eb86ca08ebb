"""Exact matrices over Z, Q and F_p.

A :class:`Matrix` is immutable.  Subsets used to index exterior powers are
always enumerated in lexicographic order (``itertools.combinations``).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .rings import RingTag, RingError, ZZ


class MatrixError(ValueError):
    pass


class Matrix:
    __slots__ = ("ring", "rows", "cols", "_data", "_hash")

    def __init__(self, ring: RingTag, rows: int, cols: int, data=None, *, _trusted=False):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if data is None:
            z = ring.zero
            data = tuple((z,) * cols for _ in range(rows))
        elif not _trusted:
            data = tuple(tuple(ring.coerce(x) for x in row) for row in data)
            if len(data) != rows or any(len(r) != cols for r in data):
                raise MatrixError(f"entry grid does not match shape {rows}x{cols}")
        self._data = data
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rows(cls, ring: RingTag, rows, cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise MatrixError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        return cls(ring, len(rows), cols, rows)

    @classmethod
    def zeros(cls, ring: RingTag, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring: RingTag, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        data = tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        return cls(ring, n, n, data, _trusted=True)

    @classmethod
    def diagonal(cls, ring: RingTag, entries, rows=None, cols=None) -> "Matrix":
        entries = [ring.coerce(e) for e in entries]
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        data = [[ring.zero] * cols for _ in range(rows)]
        for i, e in enumerate(entries):
            data[i][i] = e
        return cls(ring, rows, cols, tuple(map(tuple, data)), _trusted=True)

    @classmethod
    def from_columns(cls, ring: RingTag, columns, rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(ring, rows, len(columns), data)

    @classmethod
    def from_sparse(cls, ring: RingTag, rows: int, cols: int, entries) -> "Matrix":
        """``entries`` maps (i, j) to a scalar; repeated keys are not allowed."""
        data = [[ring.zero] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            data[i][j] = ring.coerce(v)
        return cls(ring, rows, cols, tuple(map(tuple, data)), _trusted=True)

    # -- access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def col(self, j):
        return tuple(r[j] for r in self._data)

    def tolist(self):
        return [list(r) for r in self._data]

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.format(x) for x in r) for r in self._data)
        return f"Matrix[{self.ring.name}]({self.rows}x{self.cols}: {body})"

    # -- arithmetic -------------------------------------------------------
    def _check_ring(self, other: "Matrix"):
        if self.ring != other.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _wrap(self, rows, cols, data) -> "Matrix":
        if self.ring.kind == "Fp":
            p = self.ring.p
            data = tuple(tuple(x % p for x in r) for r in data)
        else:
            data = tuple(tuple(r) for r in data)
        return Matrix(self.ring, rows, cols, data, _trusted=True)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.shape != other.shape:
            raise MatrixError(f"shape mismatch {self.shape} + {other.shape}")
        return self._wrap(self.rows, self.cols,
                          ([a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)))

    def __neg__(self) -> "Matrix":
        return self._wrap(self.rows, self.cols, ([-a for a in r] for r in self._data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.ring.coerce(c)
        return self._wrap(self.rows, self.cols, ([c * a for a in r] for r in self._data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.cols != other.rows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return Matrix.zeros(self.ring, self.rows, other.cols)
        # row-by-row accumulation over the nonzero entries of both factors
        rhs = [[(j, b) for j, b in enumerate(r) if b] for r in other._data]
        n = other.cols
        data = []
        for r in self._data:
            acc = [0] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in rhs[k]:
                        acc[j] += a * b
            data.append(acc)
        if self.ring.kind == "Q":
            from fractions import Fraction
            data = [[Fraction(x) for x in r] for r in data]
        return self._wrap(self.rows, other.cols, data)

    @property
    def T(self) -> "Matrix":
        data = tuple(zip(*self._data)) if self.rows else tuple(() for _ in range(self.cols))
        return Matrix(self.ring, self.cols, self.rows, data, _trusted=True)

    def submatrix(self, rows, cols) -> "Matrix":
        rows, cols = list(rows), list(cols)
        data = tuple(tuple(self._data[i][j] for j in cols) for i in rows)
        return Matrix(self.ring, len(rows), len(cols), data, _trusted=True)

    def hstack(self, *others: "Matrix") -> "Matrix":
        return hstack(self.ring, [self, *others], rows=self.rows)

    def vstack(self, *others: "Matrix") -> "Matrix":
        return vstack(self.ring, [self, *others], cols=self.cols)


def hstack(ring: RingTag, blocks, rows: int) -> Matrix:
    for b in blocks:
        if b.rows != rows:
            raise MatrixError("hstack row mismatch")
    data = tuple(sum((b._data[i] for b in blocks), ()) for i in range(rows))
    return Matrix(ring, rows, sum(b.cols for b in blocks), data, _trusted=True)


def vstack(ring: RingTag, blocks, cols: int) -> Matrix:
    for b in blocks:
        if b.cols != cols:
            raise MatrixError("vstack column mismatch")
    data = tuple(r for b in blocks for r in b._data)
    return Matrix(ring, len(data), cols, data, _trusted=True)


def block_matrix(ring: RingTag, blocks, row_sizes, col_sizes) -> Matrix:
    """Assemble from a grid of blocks; ``None`` stands for a zero block."""
    data = []
    for bi, rs in enumerate(row_sizes):
        for i in range(rs):
            row = []
            for bj, cs in enumerate(col_sizes):
                b = blocks[bi][bj]
                if b is None:
                    row.extend([ring.zero] * cs)
                else:
                    if b.shape != (rs, cs):
                        raise MatrixError(f"block ({bi},{bj}) has shape {b.shape}, expected {(rs, cs)}")
                    row.extend(b._data[i])
            data.append(tuple(row))
    return Matrix(ring, sum(row_sizes), sum(col_sizes), tuple(data), _trusted=True)


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    return block_matrix(a.ring, [[a, None], [None, b]], [a.rows, b.rows], [a.cols, b.cols])


# ---------------------------------------------------------------------------
# Smith normal form over Z, elimination over fields

@dataclass(frozen=True)
class SmithForm:
    left: Matrix
    right: Matrix
    diag: tuple

    @property
    def rank(self) -> int:
        return len(self.diag)


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for r in M:
        r[i], r[j] = r[j], r[i]


def _snf_integer(A: list[list[int]], m: int, n: int, track: bool):
    M = [list(r) for r in A]
    L = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    R = [[int(i == j) for j in range(n)] for i in range(n)] if track else None
    t = 0
    diag = []
    while t < min(m, n):
        best = None
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, n):
                v = Mi[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        if i0 != t:
            _swap_rows(M, i0, t)
            if track:
                _swap_rows(L, i0, t)
        if j0 != t:
            _swap_cols(M, j0, t)
            if track:
                _swap_cols(R, j0, t)
        while True:
            p = M[t][t]
            dirty = False
            # clear column t
            Mt = M[t]
            support = [j for j in range(t, n) if Mt[j]]
            for i in range(t + 1, m):
                v = M[i][t]
                if v:
                    q = v // p
                    if q:
                        Mi = M[i]
                        for j in support:
                            Mi[j] -= q * Mt[j]
                        if track:
                            Lt, Li = L[t], L[i]
                            for j in range(m):
                                if Lt[j]:
                                    Li[j] -= q * Lt[j]
                    if M[i][t]:
                        dirty = True
            # clear row t
            Mt = M[t]
            for j in range(t + 1, n):
                v = Mt[j]
                if v:
                    q = v // p
                    if q:
                        for r in M[t:]:
                            if r[t]:
                                r[j] -= q * r[t]
                        if track:
                            for r in R:
                                if r[t]:
                                    r[j] -= q * r[t]
                    if Mt[j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t to the pivot
                best = (abs(p), t, t)
                for i in range(t + 1, m):
                    v = M[i][t]
                    if v and abs(v) < best[0]:
                        best = (abs(v), i, t)
                for j in range(t + 1, n):
                    v = M[t][j]
                    if v and abs(v) < best[0]:
                        best = (abs(v), t, j)
                _, i0, j0 = best
                if i0 != t:
                    _swap_rows(M, i0, t)
                    if track:
                        _swap_rows(L, i0, t)
                if j0 != t:
                    _swap_cols(M, j0, t)
                    if track:
                        _swap_cols(R, j0, t)
                continue
            # divisibility condition on the remaining block
            bad = None
            for i in range(t + 1, m):
                Mi = M[i]
                for j in range(t + 1, n):
                    if Mi[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            Mt, Mb = M[t], M[bad]
            for j in range(t, n):
                Mt[j] += Mb[j]
            if track:
                Lt, Lb = L[t], L[bad]
                for j in range(m):
                    Lt[j] += Lb[j]
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            if track:
                L[t] = [-x for x in L[t]]
        diag.append(M[t][t])
        t += 1
    return diag, L, R


def _field_elim(A: Matrix, track: bool):
    """Full pivoting elimination over a field: L·A·R = diag(1,…,1,0,…)."""
    ring = A.ring
    m, n = A.shape
    M = A.tolist()
    L = Matrix.identity(ring, m).tolist() if track else None
    R = Matrix.identity(ring, n).tolist() if track else None
    red = ring.coerce if ring.kind == "Fp" else (lambda x: x)
    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            _swap_rows(M, i0, t)
            if track:
                _swap_rows(L, i0, t)
        if j0 != t:
            _swap_cols(M, j0, t)
            if track:
                _swap_cols(R, j0, t)
        inv = ring.inv(M[t][t])
        M[t] = [red(x * inv) for x in M[t]]
        if track:
            L[t] = [red(x * inv) for x in L[t]]
        for i in range(m):
            if i != t and M[i][t] != 0:
                c = M[i][t]
                M[i] = [red(a - c * b) for a, b in zip(M[i], M[t])]
                if track:
                    L[i] = [red(a - c * b) for a, b in zip(L[i], L[t])]
        Mt = M[t]
        for j in range(t + 1, n):
            c = Mt[j]
            if c != 0:
                for r in M:
                    r[j] = red(r[j] - c * r[t])
                if track:
                    for r in R:
                        r[j] = red(r[j] - c * r[t])
        t += 1
    return [ring.one] * t, L, R


def smith_normal_form(A: Matrix) -> SmithForm:
    """Return ``left``, ``right`` invertible with ``left @ A @ right`` diagonal.

    Over Z the diagonal entries are the invariant factors d1 | d2 | ...;
    over a field they are all 1.  Only nonzero factors are listed.
    """
    ring = A.ring
    m, n = A.shape
    if ring.is_field:
        diag, L, R = _field_elim(A, True)
    else:
        diag, L, R = _snf_integer(A.tolist(), m, n, True)
    return SmithForm(Matrix(ring, m, m, L), Matrix(ring, n, n, R), tuple(diag))


def _unit_pivot_reduce(data, p):
    """Sparse elimination on unit pivots (±1 over ℤ, any nonzero mod p).

    Each step picks a unit in a shortest row, preferring the sparsest column,
    clears its column by row operations and drops the pivot row and column;
    this splits off a unit invariant factor.  Returns the pivot count and the
    untouched remainder as dense integer rows.
    """
    rows = {}
    cols = {}
    for i, r in enumerate(data):
        d = {}
        for j, x in enumerate(r):
            if p:
                x %= p
            if x:
                d[j] = x
                cols.setdefault(j, set()).add(i)
        if d:
            rows[i] = d

    def is_unit(x):
        return True if p else x in (1, -1)

    heap = [(len(d), i) for i, d in rows.items()]
    heapq.heapify(heap)
    count = 0
    while heap:
        size, i = heapq.heappop(heap)
        d = rows.get(i)
        if d is None or len(d) != size:
            continue
        units = [j for j, x in d.items() if is_unit(x)]
        if not units:
            continue
        j = min(units, key=lambda c: (len(cols[c]), c))
        inv = pow(d[j], -1, p) if p else d[j]
        del rows[i]
        for c in d:
            cols[c].discard(i)
        for t in sorted(cols[j]):
            row = rows[t]
            f = row[j] * inv
            for c, x in d.items():
                v = row.get(c, 0) - f * x
                if p:
                    v %= p
                if v:
                    if c not in row:
                        cols[c].add(t)
                    row[c] = v
                elif c in row:
                    del row[c]
                    cols[c].discard(t)
            if row:
                heapq.heappush(heap, (len(row), t))
            else:
                del rows[t]
        count += 1
    live = sorted({c for d in rows.values() for c in d})
    rest = [[d.get(c, 0) for c in live] for _, d in sorted(rows.items())]
    return count, rest, len(live)


def invariant_factors(A: Matrix) -> tuple:
    """Nonzero invariant factors, without the transforms."""
    if A.ring.is_field:
        return (A.ring.one,) * rank(A)
    count, rest, n = _unit_pivot_reduce(A._data, None)
    return (1,) * count + tuple(_snf_integer(rest, len(rest), n, False)[0])


def rank(A: Matrix) -> int:
    if A.ring.kind == "Q":
        data, p = _clear_denominators(A), None
    else:
        data, p = A._data, (A.ring.p if A.ring.kind != "Z" else None)
    count, rest, n = _unit_pivot_reduce(data, p)
    return count + _rank_rref(rest, len(rest), n, p)


def _clear_denominators(A: Matrix):
    out = []
    for r in A._data:
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def _rank_rref(M, m, n, p):
    """Rank by gcd-normalized integer elimination (or mod p when ``p`` is set)."""
    M = [list(r) for r in M]
    rk = 0
    for j in range(n):
        piv = None
        for i in range(rk, m):
            if M[i][j] % p if p else M[i][j]:
                piv = i
                break
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        a = M[rk][j]
        if p:
            inv = pow(a, -1, p)
            M[rk] = [x * inv % p for x in M[rk]]
            prow = M[rk]
            support = [k for k in range(j, n) if prow[k]]
            for i in range(rk + 1, m):
                c = M[i][j] % p
                if c:
                    Mi = M[i]
                    for k in support:
                        Mi[k] = (Mi[k] - c * prow[k]) % p
        else:
            prow = M[rk]
            support = [k for k in range(j, n) if prow[k]]
            for i in range(rk + 1, m):
                c = M[i][j]
                if c:
                    g = gcd(a, c)
                    fa, fc = a // g, c // g
                    Mi = M[i]
                    if fa != 1:
                        Mi = [fa * x for x in Mi]
                    for k in support:
                        Mi[k] -= fc * prow[k]
                    h = 0
                    for x in Mi:
                        if x:
                            h = gcd(h, x)
                            if h == 1:
                                break
                    if h > 1:
                        Mi = [x // h for x in Mi]
                    M[i] = Mi
        rk += 1
        if rk == m:
            break
    return rk


# ---------------------------------------------------------------------------
# echelon forms, kernels, images

def _rref_field(A: Matrix):
    ring = A.ring
    M = A.tolist()
    m, n = A.shape
    red = ring.coerce if ring.kind == "Fp" else (lambda x: x)
    pivots = []
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if M[i][j] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = ring.inv(M[r][j])
        M[r] = [red(x * inv) for x in M[r]]
        for i in range(m):
            if i != r and M[i][j] != 0:
                c = M[i][j]
                M[i] = [red(a - c * b) for a, b in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    return M[:r], pivots


def hermite_rows(rows: list[list[int]], n: int) -> list[list[int]]:
    """Row-style Hermite normal form of an integer row lattice (zero rows dropped).

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``; the result is unique for the lattice.
    """
    M = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while M and col < n:
        nz = [r for r in M if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in M if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                rr = [a - q * b for a, b in zip(r, piv)]
                if rr[col]:
                    new.append(rr)
                elif any(rr):
                    rest.append(rr)
            nz = new
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        M = rest
        col += 1
    # reduce entries above pivots
    pivcols = [next(j for j, x in enumerate(r) if x) for r in out]
    for k in range(len(out)):
        pc, pv = pivcols[k], out[k][pivcols[k]]
        for i in range(k):
            q = out[i][pc] // pv
            if q:
                out[i] = [a - q * b for a, b in zip(out[i], out[k])]
    return out


def kernel_basis(A: Matrix) -> Matrix:
    """Columns form a canonical basis of ker(A).

    Over a field the basis comes from the reduced row echelon form; over Z it
    is the Hermite basis of the saturated lattice ker(A) ∩ Z^n.
    """
    ring = A.ring
    n = A.cols
    if ring.is_field:
        R, piv = _rref_field(A)
        free = [j for j in range(n) if j not in set(piv)]
        cols = []
        for f in free:
            v = [ring.zero] * n
            v[f] = ring.one
            for r, pj in enumerate(piv):
                v[pj] = ring.coerce(-R[r][f])
            cols.append(v)
        return Matrix.from_columns(ring, cols, n)
    # Z: rational nullspace, scaled, then saturated and put in Hermite form
    from fractions import Fraction
    from .rings import QQ
    Aq = Matrix(QQ, A.rows, A.cols, [[Fraction(x) for x in r] for r in A._data])
    K = kernel_basis(Aq)
    if K.cols == 0:
        return Matrix.zeros(ring, n, 0)
    cols = []
    for c in K.columns():
        den = 1
        for x in c:
            den = den * x.denominator // gcd(den, x.denominator)
        cols.append([int(x * den) for x in c])
    B = Matrix.from_columns(ZZ, cols, n)
    sat = saturate(B)
    rows = hermite_rows([list(c) for c in sat.columns()], n)
    return Matrix.from_columns(ZZ, rows, n)


def saturate(B: Matrix) -> Matrix:
    """Basis of (span_Q B) ∩ Z^n for a full-column-rank integer matrix B."""
    if B.cols == 0:
        return B
    snf = smith_normal_form(B)
    Linv = inverse(snf.left)
    return Linv.submatrix(range(B.rows), range(snf.rank))


def image_basis(A: Matrix) -> Matrix:
    """Columns form a canonical basis of the column span.

    Over Z this is a basis of the image lattice itself, not its saturation.
    """
    ring = A.ring
    if ring.is_field:
        R, _ = _rref_field(A.T)
        return Matrix.from_columns(ring, R, A.rows) if R else Matrix.zeros(ring, A.rows, 0)
    rows = hermite_rows(A.T.tolist(), A.rows)
    return Matrix.from_columns(ring, rows, A.rows) if rows else Matrix.zeros(ring, A.rows, 0)


def solve(A: Matrix, B: Matrix) -> Matrix | None:
    """Some X with A @ X == B, or None when no solution exists over the ring."""
    ring = A.ring
    if A.rows != B.rows:
        raise MatrixError("solve: row mismatch")
    snf = smith_normal_form(A)
    # A = L^-1 D R^-1, so A X = B  <=>  D (R^-1 X) = L B
    LB = snf.left @ B
    r = snf.rank
    Y = [[ring.zero] * B.cols for _ in range(A.cols)]
    for i in range(A.rows):
        for j in range(B.cols):
            v = LB[i, j]
            if i < r:
                d = snf.diag[i]
                if ring.is_field:
                    Y[i][j] = ring.div(v, d)
                else:
                    if v % d:
                        return None
                    Y[i][j] = v // d
            elif v != 0:
                return None
    return snf.right @ Matrix(ring, A.cols, B.cols, Y)


def in_span(A: Matrix, B: Matrix) -> bool:
    return solve(A, B) is not None


def det(A: Matrix):
    if not A.is_square():
        raise MatrixError("determinant of a non-square matrix")
    ring = A.ring
    n = A.rows
    if n == 0:
        return ring.one
    if ring.is_field:
        M = A.tolist()
        red = ring.coerce if ring.kind == "Fp" else (lambda x: x)
        d = ring.one
        for j in range(n):
            piv = next((i for i in range(j, n) if M[i][j] != 0), None)
            if piv is None:
                return ring.zero
            if piv != j:
                M[j], M[piv] = M[piv], M[j]
                d = red(-d)
            d = red(d * M[j][j])
            inv = ring.inv(M[j][j])
            for i in range(j + 1, n):
                if M[i][j] != 0:
                    c = red(M[i][j] * inv)
                    M[i] = [red(a - c * b) for a, b in zip(M[i], M[j])]
        return d
    # Bareiss
    M = A.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse(A: Matrix) -> Matrix:
    ring = A.ring
    if not A.is_square():
        raise MatrixError("inverse of a non-square matrix")
    if ring.kind == "Z":
        from fractions import Fraction
        from .rings import QQ
        Aq = Matrix(QQ, A.rows, A.cols, [[Fraction(x) for x in r] for r in A._data])
        Iq = inverse(Aq)
        try:
            return Matrix(ZZ, A.rows, A.cols, Iq.tolist())
        except RingError:
            raise MatrixError("matrix is not invertible over Z") from None
    n = A.rows
    aug = hstack(ring, [A, Matrix.identity(ring, n)], n)
    R, piv = _rref_field(aug)
    if piv[:n] != list(range(n)):
        raise MatrixError("matrix is singular")
    return Matrix(ring, n, n, [r[n:] for r in R])


def is_invertible(A: Matrix) -> bool:
    if not A.is_square():
        return False
    return A.ring.is_unit(det(A))


# ---------------------------------------------------------------------------
# multilinear constructions

def wedge_vectors(vectors, ring: RingTag) -> dict:
    """Expand v1 ∧ … ∧ vk in the basis of sorted index tuples.

    Each vector is a dict {index: coefficient}.  Returns {sorted tuple: coeff}.
    """
    acc = {(): ring.one}
    for v in vectors:
        nxt = {}
        for S, c in acc.items():
            for i, a in v.items():
                if a == 0 or i in S:
                    continue
                # position where i would be inserted; sign from passing the larger ones
                pos = 0
                for s in S:
                    if s < i:
                        pos += 1
                sign = -1 if (len(S) - pos) % 2 else 1
                T = S[:pos] + (i,) + S[pos:]
                nxt[T] = nxt.get(T, 0) + sign * c * a
        acc = {S: c for S, c in nxt.items() if c}
        if ring.kind == "Fp":
            acc = {S: c % ring.p for S, c in acc.items() if c % ring.p}
    return acc


def exterior_power_matrix(A: Matrix, k: int) -> Matrix:
    """Matrix of Λ^k(A): entry (S, T) is the minor on rows S, columns T.

    Rows and columns are indexed by k-subsets in lexicographic order.
    """
    if k < 0:
        raise MatrixError("negative exterior power")
    ring = A.ring
    rsubs = list(combinations(range(A.rows), k))
    csubs = list(combinations(range(A.cols), k))
    rindex = {S: i for i, S in enumerate(rsubs)}
    colvecs = [{i: x for i, x in enumerate(A.col(j)) if x != 0} for j in range(A.cols)]
    entries = {}
    for jc, T in enumerate(csubs):
        for S, c in wedge_vectors([colvecs[t] for t in T], ring).items():
            entries[(rindex[S], jc)] = c
    return Matrix.from_sparse(ring, len(rsubs), len(csubs), entries)


def symmetric_power_matrix(A: Matrix, k: int) -> Matrix:
    """Matrix of Sym^k(A) on monomial bases (multisets, lexicographic order)."""
    from itertools import combinations_with_replacement
    ring = A.ring
    rsubs = list(combinations_with_replacement(range(A.rows), k))
    csubs = list(combinations_with_replacement(range(A.cols), k))
    rindex = {S: i for i, S in enumerate(rsubs)}
    colvecs = [{i: x for i, x in enumerate(A.col(j)) if x != 0} for j in range(A.cols)]
    entries = {}
    for jc, T in enumerate(csubs):
        acc = {(): ring.one}
        for t in T:
            nxt = {}
            for S, c in acc.items():
                for i, a in colvecs[t].items():
                    U = tuple(sorted(S + (i,)))
                    nxt[U] = nxt.get(U, 0) + c * a
            acc = nxt
        for S, c in acc.items():
            c = ring.coerce(c)
            if c != 0:
                entries[(rindex[S], jc)] = c
    return Matrix.from_sparse(ring, len(rsubs), len(csubs), entries)


def kronecker(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product; pair (i, j) sits at row-major position i*B.rows + j."""
    A._check_ring(B)
    data = []
    for ra in A._data:
        for rb in B._data:
            data.append([a * b for a in ra for b in rb])
    return A._wrap(A.rows * B.rows, A.cols * B.cols, data)
