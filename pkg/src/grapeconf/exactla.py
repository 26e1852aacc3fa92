"""Exact sparse rank computation over the rationals and prime fields.

The rational path does fraction-free elimination: rows are kept as integer
dictionaries, pivots of magnitude one update rows without division, larger
pivots use cross-multiplication followed by a content reduction.  Pivot
order is singleton cascade first, then minimum column degree with a
preference for unit entries, which keeps fill-in low on the boundary
matrices this module exists for (entries in {-1, +1}).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2**62."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Rationals:
    """Field marker: exact arithmetic over Q (the default, authoritative field)."""

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("QQ")


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p % 2 == 0 or self.p >= 1 << 62 or not is_prime(self.p):
            raise ValueError(f"{self.p} is not an odd prime below 2**62")

    def __repr__(self) -> str:
        return f"GF({self.p})"


QQ = Rationals()
FieldSpec = Rationals | PrimeField


@dataclass(frozen=True)
class SparseMatrix:
    """Coordinate-format sparse matrix with exact scalar entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, int | Fraction], ...]

    def __post_init__(self):
        seen = set()
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DimensionMismatch(f"entry ({r},{c}) out of bounds")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry at ({r},{c})")
            if v == 0:
                raise ValueError("stored zeros are not allowed")
            seen.add((r, c))
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    @staticmethod
    def from_dict(rows: int, cols: int, data: dict[tuple[int, int], int | Fraction]) -> "SparseMatrix":
        return SparseMatrix(rows, cols, tuple((r, c, v) for (r, c), v in data.items() if v != 0))

    @staticmethod
    def from_columns(rows: int, columns: list[dict[int, int | Fraction]]) -> "SparseMatrix":
        entries = []
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v != 0:
                    entries.append((r, c, v))
        return SparseMatrix(rows, len(columns), tuple(entries))

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, tuple((c, r, v) for r, c, v in self.entries))

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ")
        shifted = tuple((r, c + self.cols, v) for r, c, v in other.entries)
        return SparseMatrix(self.rows, self.cols + other.cols, self.entries + shifted)

    def row_dicts(self) -> dict[int, dict[int, int | Fraction]]:
        rows: dict[int, dict[int, int | Fraction]] = {}
        for r, c, v in self.entries:
            rows.setdefault(r, {})[c] = v
        return rows


def _integerize_rows(rows: dict[int, dict[int, int | Fraction]]) -> dict[int, dict[int, int]]:
    """Scale each row by the lcm of denominators (rank preserving)."""
    out: dict[int, dict[int, int]] = {}
    for r, row in rows.items():
        scale = 1
        for v in row.values():
            if isinstance(v, Fraction):
                scale = scale * v.denominator // gcd(scale, v.denominator)
        out[r] = {c: int(v * scale) for c, v in row.items()}
    return out


def _content_reduce(row: dict[int, int]) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] //= g


def rank(m: SparseMatrix, field: FieldSpec = QQ) -> int:
    """Matrix rank over the requested field."""
    p = field.p if isinstance(field, PrimeField) else None
    if p is None:
        rows = _integerize_rows(m.row_dicts())
    else:
        rows = {}
        for r, row in m.row_dicts().items():
            reduced = {}
            for c, v in row.items():
                if isinstance(v, Fraction):
                    val = v.numerator * pow(v.denominator, -1, p) % p
                else:
                    val = v % p
                if val:
                    reduced[c] = val
            if reduced:
                rows[r] = reduced
    rows = {r: row for r, row in rows.items() if row}
    return _eliminate(rows, p)


def _eliminate(rows: dict[int, dict[int, int]], p: int | None) -> int:
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    rank_count = 0
    heap: list[tuple[int, int]] = []       # lazy (column degree, column)
    col_single: list[int] = []             # candidate singleton columns
    row_single: list[int] = []             # candidate singleton rows

    def note_col(c: int) -> None:
        s = cols.get(c)
        if s is None:
            return
        if len(s) == 1:
            col_single.append(c)
        else:
            heapq.heappush(heap, (len(s), c))

    def note_row(r: int) -> None:
        row = rows.get(r)
        if row is not None and len(row) == 1:
            row_single.append(r)

    def remove_row(r: int) -> None:
        """Drop a used-up pivot row; no arithmetic on others is needed."""
        for c in rows.pop(r):
            s = cols.get(c)
            if s is not None:
                s.discard(r)
                if not s:
                    del cols[c]
                else:
                    note_col(c)

    def remove_col(c: int) -> None:
        """Eliminate a column whose pivot row has no other entries."""
        for r in list(cols.pop(c, ())):
            row = rows[r]
            del row[c]
            if not row:
                del rows[r]
            else:
                note_row(r)

    def pivot(r0: int, c0: int) -> None:
        nonlocal rank_count
        rank_count += 1
        piv_row = rows[r0]
        piv_val = piv_row[c0]
        for r in [r for r in cols[c0] if r != r0]:
            row = rows[r]
            val = row.pop(c0)
            cols[c0].discard(r)
            if p is not None:
                factor = val * pow(piv_val, -1, p) % p
                scale = None
            elif piv_val in (1, -1):
                factor = val * piv_val
                scale = None
            else:
                factor = val
                scale = piv_val
            if scale is not None:
                for c in row:
                    row[c] *= scale
            for c, pv in piv_row.items():
                if c == c0:
                    continue
                nv = row.get(c, 0) - factor * pv
                if p is not None:
                    nv %= p
                if nv:
                    if c not in row:
                        cols.setdefault(c, set()).add(r)
                        note_col(c)
                    row[c] = nv
                else:
                    if c in row:
                        del row[c]
                        s = cols[c]
                        s.discard(r)
                        if not s:
                            del cols[c]
                        else:
                            note_col(c)
            if scale is not None:
                _content_reduce(row)
            if not row:
                del rows[r]
            else:
                note_row(r)
        remove_row(r0)

    for c in cols:
        note_col(c)
    for r in rows:
        note_row(r)
    while cols:
        progressed = False
        while col_single:
            c = col_single.pop()
            s = cols.get(c)
            if s is None or len(s) != 1:
                continue
            (r,) = s
            rank_count += 1
            remove_row(r)
            cols.pop(c, None)
            progressed = True
        if not cols:
            break
        while row_single:
            r = row_single.pop()
            row = rows.get(r)
            if row is None or len(row) != 1:
                continue
            (c,) = row
            rank_count += 1
            remove_col(c)
            progressed = True
            if col_single:
                break
        if progressed:
            continue
        while heap:
            cnt, c = heapq.heappop(heap)
            if c in cols and len(cols[c]) == cnt:
                break
        else:
            for c, s in cols.items():
                heapq.heappush(heap, (len(s), c))
            continue
        candidates = cols[c]
        if p is None:
            r0 = min(candidates, key=lambda r: (abs(rows[r][c]) != 1, len(rows[r]), r))
        else:
            r0 = min(candidates, key=lambda r: (len(rows[r]), r))
        pivot(r0, c)
    return rank_count


def rank_of_span_mod(z: SparseMatrix, b: SparseMatrix, field: FieldSpec = QQ) -> int:
    """Dimension of the image of z's columns in the quotient by span(b)."""
    if z.rows != b.rows:
        raise DimensionMismatch("candidate and subspace matrices must share rows")
    return rank(z.hstack(b), field) - rank(b, field)


def nullspace(m: SparseMatrix, field: FieldSpec = QQ) -> list[dict[int, Fraction | int]]:
    """Basis of {x : m @ x = 0}, as sparse column dictionaries.

    Dense-ish column elimination; intended for the moderate slice sizes of
    the stabilization checks, not for the big rank-only workloads.
    """
    p = field.p if isinstance(field, PrimeField) else None
    columns: list[dict[int, Fraction | int]] = [{} for _ in range(m.cols)]
    for r, c, v in m.entries:
        columns[c][r] = (v % p) if p is not None else Fraction(v)
    pivots: list[tuple[int, dict[int, Fraction | int], dict[int, Fraction | int]]] = []
    kernel: list[dict[int, Fraction | int]] = []
    for c, col in enumerate(columns):
        comb: dict[int, Fraction | int] = {c: 1 if p is not None else Fraction(1)}
        col = dict(col)
        for lead, pcol, pcomb in pivots:
            if lead in col:
                factor = col[lead]
                for r, v in pcol.items():
                    nv = col.get(r, 0) - factor * v
                    if p is not None:
                        nv %= p
                    if nv:
                        col[r] = nv
                    else:
                        col.pop(r, None)
                for r, v in pcomb.items():
                    nv = comb.get(r, 0) - factor * v
                    if p is not None:
                        nv %= p
                    if nv:
                        comb[r] = nv
                    else:
                        comb.pop(r, None)
        if col:
            lead = min(col)
            inv = pow(col[lead], -1, p) if p is not None else 1 / col[lead]
            col = {r: (v * inv % p) if p is not None else v * inv for r, v in col.items()}
            comb = {r: (v * inv % p) if p is not None else v * inv for r, v in comb.items()}
            pivots.append((lead, col, comb))
        else:
            kernel.append(comb)
    return kernel
