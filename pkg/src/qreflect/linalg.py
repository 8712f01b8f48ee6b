"""Dense exact linear algebra over Scalar, plus a sparse echelon engine.

Rank and kernel go through fraction-free elimination on integer-polynomial
rows (denominators cleared per row, content divided out after each step),
so no rounding ever happens.  Matrices arising here are weight-graded and
therefore highly block-structured; elimination first splits the columns
into connected components, which keeps the dense work tiny.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from qreflect.scalars import (
    PoleError,
    S_ONE,
    S_ZERO,
    Scalar,
    poly_div_exact,
    poly_eval,
    poly_gcd,
    poly_mul,
    poly_neg,
    poly_sub,
    poly_trim,
)


class ExactMatrix:
    """Dense matrix over Scalar, row-major, immutable by convention."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.rows = rows
        self.cols = cols
        self.entries = list(entries)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zeros(rows, cols=None):
        cols = rows if cols is None else cols
        return ExactMatrix(rows, cols, [S_ZERO] * (rows * cols))

    @staticmethod
    def identity(n):
        m = ExactMatrix.zeros(n, n)
        for i in range(n):
            m.entries[i * n + i] = S_ONE
        return m

    @staticmethod
    def from_rows(rows):
        r = len(rows)
        c = len(rows[0]) if rows else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(Scalar(x) if isinstance(x, int) else x for x in row)
        return ExactMatrix(r, c, flat)

    @staticmethod
    def unit(n, i, j, value=S_ONE):
        """n x n matrix with a single entry at (i, j), 0-indexed."""
        m = ExactMatrix.zeros(n, n)
        m.entries[i * n + j] = value
        return m

    # -- access ---------------------------------------------------------------

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def copy(self):
        return ExactMatrix(self.rows, self.cols, list(self.entries))

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        self._shape_check(other)
        return ExactMatrix(
            self.rows, self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __sub__(self, other):
        self._shape_check(other)
        return ExactMatrix(
            self.rows, self.cols,
            [a - b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, s):
        s = Scalar(s) if isinstance(s, int) else s
        return ExactMatrix(self.rows, self.cols, [s * a for a in self.entries])

    def _shape_check(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        if self.cols != other.rows:
            raise ValueError("inner dimension mismatch")
        # sparse-aware triple loop; operators here are mostly near-diagonal
        other_rows = [
            [(j, v) for j, v in enumerate(other.row(k)) if v]
            for k in range(other.rows)
        ]
        out = [S_ZERO] * (self.rows * other.cols)
        for i in range(self.rows):
            base = i * self.cols
            obase = i * other.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if not a:
                    continue
                for j, b in other_rows[k]:
                    out[obase + j] = out[obase + j] + a * b
        return ExactMatrix(self.rows, other.cols, out)

    __rmul__ = scale

    def apply(self, vec):
        """Matrix times coordinate vector (list of Scalars)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [S_ZERO] * self.rows
        for i in range(self.rows):
            base = i * self.cols
            acc = S_ZERO
            for j, v in enumerate(vec):
                if v:
                    a = self.entries[base + j]
                    if a:
                        acc = acc + a * v
            out[i] = acc
        return out

    def transpose(self):
        out = [S_ZERO] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j * self.rows + i] = self.entries[i * self.cols + j]
        return ExactMatrix(self.cols, self.rows, out)

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        acc = S_ZERO
        for i in range(self.rows):
            acc = acc + self.at(i, i)
        return acc

    def commutes_with(self, other):
        return (self * other - other * self).is_zero()

    def power(self, k):
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = ExactMatrix.identity(self.rows)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self):
        """Exact inverse via kernel-free solving; raises on singular input."""
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        cols = []
        ident = ExactMatrix.identity(n)
        for j in range(n):
            x = solve(self, ident.col(j))
            if x is None:
                raise ZeroDivisionError("matrix is singular")
            cols.append(x)
        out = ExactMatrix.zeros(n, n)
        for j, c in enumerate(cols):
            for i in range(n):
                out.entries[i * n + j] = c[i]
        return out

    # -- evaluation --------------------------------------------------------------

    def specialize(self, p0):
        """Entrywise exact evaluation at p = p0; raises PoleError on any pole."""
        p0 = Fraction(p0)
        return [
            [self.at(i, j).evaluate(p0) for j in range(self.cols)]
            for i in range(self.rows)
        ]

    # -- serialization -------------------------------------------------------------

    def to_json(self, params):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [
                [params.to_text(self.at(i, j)) for j in range(self.cols)]
                for i in range(self.rows)
            ],
        }

    @staticmethod
    def from_json(obj, params):
        rows, cols = obj["rows"], obj["cols"]
        lines = obj["entries"]
        if len(lines) != rows or any(len(line) != cols for line in lines):
            raise ValueError("matrix JSON shape mismatch")
        flat = [params.parse(text) for line in lines for text in line]
        return ExactMatrix(rows, cols, flat)


def kron(a, b):
    """Kronecker product in the lexicographic leg order (left leg outer)."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = [S_ZERO] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.at(i, j)
            if not x:
                continue
            for k in range(b.rows):
                rbase = (i * b.rows + k) * cols + j * b.cols
                bbase = k * b.cols
                for l in range(b.cols):
                    y = b.entries[bbase + l]
                    if y:
                        out[rbase + l] = x * y
    return ExactMatrix(rows, cols, out)


def kron_all(mats):
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


# ---------------------------------------------------------------------------
# labeled tensor vectors


@dataclass(frozen=True)
class TensorVec:
    """Vector in a labeled tensor-product basis (legs ordered left to right)."""

    legs: tuple
    dims: tuple
    coords: tuple

    def __post_init__(self):
        size = 1
        for d in self.dims:
            size *= d
        if len(self.coords) != size:
            raise ValueError("coordinate count does not match leg dimensions")

    @staticmethod
    def make(legs, dims, coords):
        return TensorVec(tuple(legs), tuple(dims), tuple(coords))

    @staticmethod
    def basis_vector(legs, dims, index, value=S_ONE):
        size = 1
        for d in dims:
            size *= d
        coords = [S_ZERO] * size
        coords[index] = value
        return TensorVec.make(legs, dims, coords)

    def flat_index(self, multi):
        idx = 0
        for pos, d in zip(multi, self.dims):
            idx = idx * d + pos
        return idx

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def add(self, other):
        self._compat(other)
        return TensorVec.make(
            self.legs, self.dims,
            [a + b for a, b in zip(self.coords, other.coords)],
        )

    def sub(self, other):
        self._compat(other)
        return TensorVec.make(
            self.legs, self.dims,
            [a - b for a, b in zip(self.coords, other.coords)],
        )

    def scale(self, s):
        s = Scalar(s) if isinstance(s, int) else s
        return TensorVec.make(self.legs, self.dims, [s * a for a in self.coords])

    def _compat(self, other):
        if self.legs != other.legs or self.dims != other.dims:
            raise ValueError("tensor space mismatch")

    def to_json(self, params):
        return {
            "legs": list(self.legs),
            "dims": list(self.dims),
            "coords": [params.to_text(c) for c in self.coords],
        }

    @staticmethod
    def from_json(obj, params):
        return TensorVec.make(
            obj["legs"], obj["dims"], [params.parse(t) for t in obj["coords"]]
        )


# ---------------------------------------------------------------------------
# fraction-free elimination


def _rows_to_poly(matrix_rows):
    """Clear denominators row by row; returns rows of integer polynomials."""
    out = []
    for row in matrix_rows:
        den = (1,)
        for e in row:
            if e and e.den != (1,):
                g = poly_gcd(den, e.den)
                den = poly_div_exact(poly_mul(den, e.den), g)
        prow = []
        for e in row:
            if not e:
                prow.append(())
            else:
                extra = poly_div_exact(den, e.den)
                prow.append(poly_mul(e.num, extra))
        out.append(_strip_content(prow))
    return out


def _strip_content(prow):
    g = ()
    for c in prow:
        if c:
            g = poly_gcd(g, c)
            if g == (1,):
                return prow
    if not g or g == (1,):
        return prow
    return [poly_div_exact(c, g) if c else () for c in prow]


def _bareiss_echelon(prows, ncols):
    """Row echelon by fraction-free cross-multiplication, content divided out
    per row after every step.  Returns (pivot_cols, echelon_rows)."""
    rows = [list(r) for r in prows if any(r)]
    pivot_cols = []
    echelon = []
    col = 0
    while rows and col < ncols:
        cand = [r for r in rows if r[col]]
        if not cand:
            col += 1
            continue
        piv = min(
            cand,
            key=lambda r: (sum(1 for c in r if c), max(len(c) for c in r if c)),
        )
        rows.remove(piv)
        pv = piv[col]
        nxt = []
        for r in rows:
            if r[col]:
                rv = r[col]
                new = [
                    poly_sub(poly_mul(pv, r[j]), poly_mul(rv, piv[j]))
                    for j in range(ncols)
                ]
                new = _strip_content(new)
                if any(new):
                    nxt.append(new)
            else:
                nxt.append(r)
        rows = nxt
        pivot_cols.append(col)
        echelon.append(piv)
        col += 1
    return pivot_cols, echelon


def _column_components(matrix_rows, ncols):
    """Union-find over columns linked by shared row support."""
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    row_supports = []
    for row in matrix_rows:
        sup = [j for j, e in enumerate(row) if e]
        row_supports.append(sup)
        for j in sup[1:]:
            a, b = find(sup[0]), find(j)
            if a != b:
                parent[b] = a
    comps = {}
    for j in range(ncols):
        comps.setdefault(find(j), []).append(j)
    return list(comps.values()), row_supports


def echelon_data(matrix_rows, ncols):
    """Pivot columns and reduced data per column component.

    Returns (rank, pivot_cols, pieces) where each piece is
    (component_cols, local_pivot_cols, local echelon rows as Scalars).
    """
    comps, supports = _column_components(matrix_rows, ncols)
    total_pivots = []
    pieces = []
    for comp in comps:
        cset = set(comp)
        local_index = {c: k for k, c in enumerate(comp)}
        local_rows = []
        for row, sup in zip(matrix_rows, supports):
            if sup and sup[0] in cset:
                local_rows.append([row[c] for c in comp])
        if not local_rows:
            pieces.append((comp, [], []))
            continue
        prows = _rows_to_poly(local_rows)
        pcols, ech = _bareiss_echelon(prows, len(comp))
        sech = [[Scalar(c) if c else S_ZERO for c in r] for r in ech]
        pieces.append((comp, pcols, sech))
        total_pivots.extend(comp[c] for c in pcols)
    total_pivots.sort()
    return len(total_pivots), total_pivots, pieces


def rank(m):
    """Exact rank over Q(p)."""
    rows = [m.row(i) for i in range(m.rows)]
    r, _, _ = echelon_data(rows, m.cols)
    return r


def _local_kernel(ncols, pcols, sech):
    """Kernel basis of an echelon system via back-substitution."""
    pivset = set(pcols)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = [S_ZERO] * ncols
        v[f] = S_ONE
        for row, pc in zip(reversed(sech), reversed(pcols)):
            acc = S_ZERO
            for j in range(pc + 1, ncols):
                if v[j] and row[j]:
                    acc = acc + row[j] * v[j]
            v[pc] = -acc / row[pc]
        basis.append(v)
    return basis


def kernel(m):
    """Exact basis of the right null space, as lists of Scalars."""
    rows = [m.row(i) for i in range(m.rows)]
    _, _, pieces = echelon_data(rows, m.cols)
    basis = []
    for comp, pcols, sech in pieces:
        for lv in _local_kernel(len(comp), pcols, sech):
            v = [S_ZERO] * m.cols
            for c, val in zip(comp, lv):
                v[c] = val
            basis.append(v)
    return basis


def solve(m, b):
    """One exact solution of m x = b, or None if inconsistent (free vars 0)."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    rows = [m.row(i) + [b[i]] for i in range(m.rows)]
    _, _, pieces = echelon_data(rows, m.cols + 1)
    x = [S_ZERO] * m.cols
    bcol = m.cols
    for comp, pcols, sech in pieces:
        if bcol not in comp:
            continue
        local_b = comp.index(bcol)
        if local_b in pcols:
            return None  # a pivot in the augmented column: inconsistent
        for row, pc in zip(reversed(sech), reversed(pcols)):
            acc = row[local_b]
            for j in range(pc + 1, len(comp)):
                if j == local_b:
                    continue
                xv = x[comp[j]]
                if row[j] and xv:
                    acc = acc - row[j] * xv
            x[comp[pc]] = acc / row[pc]
    return x


def span_membership(v, basis):
    """Is v in the exact span of basis?  Returns (bool, coefficients or None).

    Accepts TensorVecs (labels must match) or plain coordinate lists.
    """
    if isinstance(v, TensorVec):
        for b in basis:
            v._compat(b)
        vec = list(v.coords)
        cols = [list(b.coords) for b in basis]
    else:
        vec = list(v)
        cols = [list(b) for b in basis]
    if any(len(c) != len(vec) for c in cols):
        raise ValueError("dimension mismatch")
    if not cols:
        return (all(not c for c in vec), [] if all(not c for c in vec) else None)
    m = ExactMatrix.zeros(len(vec), len(cols))
    for j, c in enumerate(cols):
        for i in range(len(vec)):
            m.entries[i * len(cols) + j] = c[i]
    x = solve(m, vec)
    if x is None:
        return False, None
    return True, x


def same_span(vecs_a, vecs_b):
    """Exact equality of spans (mutual membership via rank comparisons)."""
    rows_a = [list(v.coords) if isinstance(v, TensorVec) else list(v) for v in vecs_a]
    rows_b = [list(v.coords) if isinstance(v, TensorVec) else list(v) for v in vecs_b]
    if not rows_a and not rows_b:
        return True
    ncols = len(rows_a[0] if rows_a else rows_b[0])
    ra, _, _ = echelon_data(rows_a, ncols) if rows_a else (0, [], [])
    rb, _, _ = echelon_data(rows_b, ncols) if rows_b else (0, [], [])
    rab, _, _ = echelon_data(rows_a + rows_b, ncols)
    return ra == rb == rab


def rank_specialized(m, p0):
    """Rank of the specialized rational matrix; a randomized pre-check only."""
    try:
        rows = m.specialize(p0)
    except PoleError:
        return None
    ncols = m.cols
    rank_v = 0
    rows = [r[:] for r in rows if any(r)]
    col = 0
    while rows and col < ncols:
        piv = None
        for r in rows:
            if r[col]:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        rank_v += 1
        for r in rows:
            if r[col]:
                f = r[col] / piv[col]
                for j in range(col, ncols):
                    r[j] -= f * piv[j]
        rows = [r for r in rows if any(r)]
        col += 1
    return rank_v


# ---------------------------------------------------------------------------
# incremental sparse reduced echelon (used by the quadratic-algebra engine)


class SparseEchelon:
    """Reduced row echelon form maintained incrementally on sparse rows.

    Rows are dicts {column: coefficient}.  Pivot entries are normalized to 1
    and every stored row is fully back-reduced, so tails only touch
    non-pivot columns; with a small quotient this keeps rows short.
    The pivot of a row is its greatest column under `key`.
    """

    def __init__(self, key=None):
        self.key = key if key is not None else (lambda c: c)
        self.rows = {}      # pivot column -> {column: coeff} with row[pivot] == 1
        self.uses = {}      # column -> set of pivot columns whose rows touch it

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, row):
        """Fully reduce a row dict against the basis; returns a new dict."""
        out = {}
        todo = list(row.items())
        for col, val in todo:
            if not val:
                continue
            pivot_row = self.rows.get(col)
            if pivot_row is None:
                acc = out.get(col)
                out[col] = val if acc is None else acc + val
                if not out[col]:
                    del out[col]
            else:
                # tails never touch pivot columns, so one pass is enough
                for c2, v2 in pivot_row.items():
                    if c2 == col:
                        continue
                    acc = out.get(c2)
                    nv = -val * v2 if acc is None else acc - val * v2
                    if nv:
                        out[c2] = nv
                    elif acc is not None:
                        del out[c2]
        return out

    def insert(self, row):
        """Reduce and adjoin a row; returns its pivot column or None."""
        red = self.reduce(row)
        if not red:
            return None
        pivot = max(red, key=self.key)
        pv = red[pivot]
        norm = {c: v / pv for c, v in red.items()}
        norm[pivot] = pv / pv  # field unit, works over any coefficient field
        # back-reduce existing rows that use the new pivot column
        for pc in list(self.uses.get(pivot, ())):
            r = self.rows[pc]
            coeff = r.get(pivot)
            if coeff is None:
                continue
            for c2, v2 in norm.items():
                if c2 == pivot:
                    continue
                acc = r.get(c2)
                nv = -coeff * v2 if acc is None else acc - coeff * v2
                if nv:
                    r[c2] = nv
                    self.uses.setdefault(c2, set()).add(pc)
                elif acc is not None:
                    del r[c2]
                    self.uses[c2].discard(pc)
            del r[pivot]
        self.uses.pop(pivot, None)
        self.rows[pivot] = norm
        for c in norm:
            if c != pivot:
                self.uses.setdefault(c, set()).add(pivot)
        return pivot

    def kernel(self, columns):
        """Kernel basis over the given column universe (RREF formula)."""
        pivset = set(self.rows)
        basis = []
        for f in columns:
            if f in pivset:
                continue
            vec = {f: S_ONE}
            for pc, row in self.rows.items():
                coeff = row.get(f)
                if coeff:
                    vec[pc] = -coeff
            basis.append(vec)
        return basis
