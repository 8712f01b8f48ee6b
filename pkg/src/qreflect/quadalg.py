"""Degree-bounded engine for quadratic and quadratic-linear algebras.

Free-algebra elements are dicts from words (tuples of generator indices)
to coefficients.  Dimensions and normal forms come from a reduced row
echelon of the truncated ideal span, maintained incrementally level by
level with deglex pivots; generator weights split the columns into many
independent blocks, which is what keeps the ranks cheap.

For filtered presentations the degree-D truncation may under-approximate
the ideal, so dimension queries report a stability flag obtained by
re-running one level deeper.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from qreflect import fundrep as fr
from qreflect import qperm as qp
from qreflect.linalg import SparseEchelon
from qreflect.scalars import S_ONE, Scalar


def deglex_key(word):
    return (len(word), word)


# ---------------------------------------------------------------------------
# free-algebra elements as dicts


def fe_add(a, b):
    out = dict(a)
    for w, c in b.items():
        acc = out.get(w)
        nv = c if acc is None else acc + c
        if nv:
            out[w] = nv
        elif acc is not None:
            del out[w]
    return out


def fe_scale(s, a):
    if not s:
        return {}
    return {w: s * c for w, c in a.items()}


def fe_neg(a):
    return {w: -c for w, c in a.items()}


def fe_mul(a, b):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            c = ca * cb
            acc = out.get(w)
            nv = c if acc is None else acc + c
            if nv:
                out[w] = nv
            elif acc is not None:
                del out[w]
    return out


def fe_degree(a):
    return max((len(w) for w in a), default=0)


class CapExceeded(RuntimeError):
    """Raised when a truncation request would allocate too many monomials."""


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    """Generators plus relations; each relation is one free element mixing
    quadratic, linear and constant parts (zero lin/const when homogeneous)."""

    gen_count: int
    relations: tuple
    grading: str                 # 'homogeneous' | 'filtered'
    gen_weights: tuple = None    # per-generator integer weight vectors
    label: str = ""

    def __post_init__(self):
        if self.grading == "homogeneous":
            for r in self.relations:
                if any(len(w) != 2 for w in r):
                    raise ValueError("homogeneous presentation with non-quadratic terms")

    def to_json(self, params):
        def word_text(w):
            return list(w)

        return {
            "label": self.label,
            "generators": self.gen_count,
            "grading": self.grading,
            "relations": [
                [[word_text(w), params.to_text(c)] for w, c in sorted(r.items())]
                for r in self.relations
            ],
        }


def independent_relations(relations):
    """Deterministic linearly independent generating subset."""
    ech = SparseEchelon(key=deglex_key)
    out = []
    for r in relations:
        if ech.insert(dict(r)) is not None:
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# the levelwise reduction engine


class DegreeEngine:
    """Reduced echelon of the span of a r b over words of length <= D."""

    def __init__(self, pres, max_degree, cap=2_000_000):
        self.pres = pres
        self.max_degree = max_degree
        total = sum(pres.gen_count ** k for k in range(max_degree + 1))
        if total > cap:
            raise CapExceeded(
                f"{total} monomials up to degree {max_degree} exceed the cap {cap}"
            )
        self.blocks = {}
        self.pivot_lengths = []
        self._pending = []
        self._build()

    # -- weights --------------------------------------------------------------

    def _word_weight(self, word):
        gw = self.pres.gen_weights
        if gw is None:
            return None
        acc = [0] * len(gw[0])
        for g in word:
            for i, x in enumerate(gw[g]):
                acc[i] += x
        return tuple(acc)

    def _row_weight(self, row):
        it = iter(row)
        try:
            w0 = self._word_weight(next(it))
        except StopIteration:
            return None
        for w in it:
            if self._word_weight(w) != w0:
                raise ValueError("relation row mixes weights; drop gen_weights")
        return w0

    # -- construction ------------------------------------------------------------

    def _insert(self, row):
        if not row:
            return None
        wt = self._row_weight(row)
        ech = self.blocks.get(wt)
        if ech is None:
            ech = self.blocks[wt] = SparseEchelon(key=deglex_key)
        pivot = ech.insert(row)
        if pivot is None:
            return None
        self.pivot_lengths.append(len(pivot))
        # snapshot at insertion time: later back-reductions are row
        # operations inside the basis, so multiplying snapshots once each
        # still spans generator times everything
        self._pending.append([dict(ech.rows[pivot]), len(pivot), False])
        return pivot

    def _build(self):
        for r in self.pres.relations:
            if fe_degree(r) > self.max_degree:
                continue
            self._insert(dict(r))
        gens = range(self.pres.gen_count)
        for level in range(3, self.max_degree + 1):
            batch = [p for p in self._pending if not p[2] and p[1] <= level - 1]
            for p in batch:
                p[2] = True
                snap = p[0]
                for g in gens:
                    left = {}
                    right = {}
                    for w, c in snap.items():
                        left[(g,) + w] = c
                        right[w + (g,)] = c
                    self._insert(left)
                    self._insert(right)

    # -- queries --------------------------------------------------------------

    def rank_upto(self, d):
        return sum(1 for length in self.pivot_lengths if length <= d)

    def rank_at(self, d):
        return sum(1 for length in self.pivot_lengths if length == d)

    def graded_dim(self, d):
        return self.pres.gen_count ** d - self.rank_at(d)

    def filtered_dim(self, d):
        free = sum(self.pres.gen_count ** k for k in range(d + 1))
        return free - self.rank_upto(d)

    def reduce(self, element):
        """Canonical representative modulo the truncated span (a projection)."""
        if self.pres.gen_weights is None:
            ech = self.blocks.get(None)
            return dict(ech.reduce(element)) if ech else dict(element)
        parts = {}
        for w, c in element.items():
            parts.setdefault(self._word_weight(w), {})[w] = c
        out = {}
        for wt, part in parts.items():
            ech = self.blocks.get(wt)
            red = ech.reduce(part) if ech else part
            for w, c in red.items():
                acc = out.get(w)
                nv = c if acc is None else acc + c
                if nv:
                    out[w] = nv
                elif acc is not None:
                    del out[w]
        return out

    def reduces_to_zero(self, element):
        return not self.reduce(element)


_ENGINE_CACHE = {}


def get_engine(pres, max_degree, cap=2_000_000):
    key = (id(pres), max_degree)
    eng = _ENGINE_CACHE.get(key)
    if eng is None:
        eng = DegreeEngine(pres, max_degree, cap=cap)
        _ENGINE_CACHE[key] = eng
    return eng


def graded_dim(pres, d, cap=2_000_000):
    if pres.grading != "homogeneous":
        raise ValueError("graded_dim requires a homogeneous presentation")
    if d < 0:
        raise ValueError("negative degree")
    if d == 0:
        return 1
    return get_engine(pres, d, cap).graded_dim(d)


def filtered_dim(pres, d, closure_degree=None, check_stability=True, cap=2_000_000):
    """Dimension of filtration level d using ideal spans up to the closure
    degree; returns (dim, stable)."""
    if d < 0:
        raise ValueError("negative degree")
    closure = closure_degree if closure_degree is not None else d + 2
    if closure < d:
        raise ValueError("closure degree below the requested level")
    dim = get_engine(pres, closure, cap).filtered_dim(d)
    stable = None
    if check_stability:
        stable = get_engine(pres, closure + 1, cap).filtered_dim(d) == dim
    return dim, stable


def normal_form(element, pres, closure_degree, cap=2_000_000):
    if fe_degree(element) > closure_degree:
        raise CapExceeded("element degree exceeds the closure degree")
    return get_engine(pres, closure_degree, cap).reduce(element)


# ---------------------------------------------------------------------------
# symbolic generator matrices


def gen_index(n, i, j):
    """Generator number of T^i_j / L^i_j, 0-based row-major."""
    return i * n + j


def generator_matrix(n):
    """n x n matrix whose entries are the degree-one free elements."""
    return [[{(gen_index(n, i, j),): S_ONE} for j in range(n)] for i in range(n)]


def scalar_matrix_to_free(m):
    return [
        [({(): m.at(i, j)} if m.at(i, j) else {}) for j in range(m.cols)]
        for i in range(m.rows)
    ]


def fmat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[{} for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if not aik:
                continue
            for j in range(cols):
                bkj = b[k][j]
                if bkj:
                    out[i][j] = fe_add(out[i][j], fe_mul(aik, bkj))
    return out


def fmat_sub(a, b):
    return [
        [fe_add(x, fe_neg(y)) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)
    ]


def fmat_power(a, k):
    n = len(a)
    out = [[{(): S_ONE} if i == j else {} for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = fmat_mul(out, a)
    return out


def matrix_unit_weights(n):
    """Weight vector of T^i_j (or L^i_j): e_i - e_j in Z^n."""
    out = []
    for i in range(n):
        for j in range(n):
            w = [0] * n
            w[i] += 1
            w[j] -= 1
            out.append(tuple(w))
    return tuple(out)


def _l2_matrix(params):
    """Id (x) L on V (x) V, entries in the free algebra."""
    n = params.n
    d = n * n
    out = [[{} for _ in range(d)] for _ in range(d)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for e in range(n):
                    if a == c:
                        out[a * n + b][c * n + e] = {(gen_index(n, b, e),): S_ONE}
    return out


def _t1t2_matrix(params):
    """T1 T2 on V (x) V: entry ((i1,i2),(j1,j2)) = T^i1_j1 T^i2_j2."""
    n = params.n
    d = n * n
    out = [[{} for _ in range(d)] for _ in range(d)]
    for i1 in range(n):
        for i2 in range(n):
            for j1 in range(n):
                for j2 in range(n):
                    word = (gen_index(n, i1, j1), gen_index(n, i2, j2))
                    out[i1 * n + i2][j1 * n + j2] = {word: S_ONE}
    return out


def presentation_frt(params):
    """Quadratic algebra of the braid-matrix exchange relations on T."""
    n = params.n
    s = scalar_matrix_to_free(fr.hecke(params))
    tt = _t1t2_matrix(params)
    residual = fmat_sub(fmat_mul(s, tt), fmat_mul(tt, s))
    rels = [e for row in residual for e in row if e]
    rels = independent_relations(rels)
    return AlgebraPresentation(
        n * n, tuple(rels), "homogeneous", matrix_unit_weights(n), label=f"frt-{n}"
    )


def presentation_re(params):
    """Quadratic algebra of the reflection-equation relations on L."""
    n = params.n
    s = scalar_matrix_to_free(fr.hecke(params))
    l2 = _l2_matrix(params)
    lhs = fmat_mul(fmat_mul(fmat_mul(s, l2), s), l2)
    rhs = fmat_mul(fmat_mul(fmat_mul(l2, s), l2), s)
    residual = fmat_sub(lhs, rhs)
    rels = [e for row in residual for e in row if e]
    rels = independent_relations(rels)
    return AlgebraPresentation(
        n * n, tuple(rels), "homogeneous", matrix_unit_weights(n), label=f"re-{n}"
    )


def traceless_gen_weights(params):
    """Weights of the traceless-basis generators used by the t-family."""
    n = params.n
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                w = [0] * n
                w[i] += 1
                w[j] -= 1
                out.append(tuple(w))
    for _ in range(n - 1):
        out.append((0,) * n)
    return tuple(out)


def presentation_sqt(params, t):
    """Quadratic-linear family on the traceless subspace: for every skew
    eigenvector v of the reduced permutation, v - (t/2) bracket(v)."""
    from qreflect import reatool

    d = qp.g_dim(params)
    bracket = reatool.bracket_q(params)
    _, minus = qp.split(qp.tau_re_reduced(params))
    half_t = (t if isinstance(t, Scalar) else Scalar(t)) / Scalar(2)
    rels = []
    for v in minus:
        rel = {}
        for a in range(d):
            for b in range(d):
                c = v[a * d + b]
                if c:
                    rel[(a, b)] = c
        bv = bracket.apply(v)
        for g, c in enumerate(bv):
            if c:
                rel = fe_add(rel, {(g,): -half_t * c})
        rels.append(rel)
    rels = independent_relations(rels)
    grading = "homogeneous" if half_t.is_zero() else "filtered"
    return AlgebraPresentation(
        d, tuple(rels), grading, traceless_gen_weights(params), label=f"sqt-{params.n}"
    )


def det_q(params):
    """Quantum determinant as a degree-n free element on the T generators."""
    n = params.n
    out = {}
    for perm in itertools.permutations(range(n)):
        inv = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        word = tuple(gen_index(n, i, perm[i]) for i in range(n))
        out[word] = (-params.q) ** inv
    return out


def quantum_minor(params, rows, cols):
    """det_q of the submatrix with the given 0-based row/column lists."""
    out = {}
    k = len(rows)
    n = params.n
    for perm in itertools.permutations(range(k)):
        inv = sum(
            1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b]
        )
        word = tuple(gen_index(n, rows[i], cols[perm[i]]) for i in range(k))
        out[word] = (-params.q) ** inv
    return out


def presentation_fq_group(params):
    """Function algebra of the quantum group: exchange relations plus the
    quantum determinant pinned to one."""
    base = presentation_frt(params)
    det_rel = fe_add(det_q(params), {(): Scalar(-1)})
    rels = list(base.relations) + [det_rel]
    return AlgebraPresentation(
        base.gen_count,
        tuple(rels),
        "filtered",
        base.gen_weights,
        label=f"fq-group-{params.n}",
    )


def classical_presentation(pres):
    """Coefficients specialized at p = 1; the classical comparison oracle."""
    rels = []
    for r in pres.relations:
        nr = {}
        for w, c in r.items():
            v = c.evaluate(1)
            if v:
                nr[w] = v
        if nr:
            rels.append(nr)
    return AlgebraPresentation(
        pres.gen_count,
        tuple(rels),
        pres.grading,
        pres.gen_weights,
        label=pres.label + "-classical",
    )
