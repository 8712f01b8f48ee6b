"""Involutive quantum permutations and their composites.

The elementary moves on V(x)V, V*(x)V*, V(x)V* carry a sign correction
relative to their printed form: the second term of the two-term rows must
read e_j (x) e_i (resp. f^j (x) f^i), otherwise weight conservation and
involutivity fail.  Both facts are asserted in the test suite; the literal
variant is kept here only so the failure stays demonstrable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from qreflect import fundrep as fr
from qreflect.linalg import ExactMatrix, kernel, kron
from qreflect.scalars import S_ONE, S_ZERO, Scalar


@dataclass(frozen=True)
class QuantumPermutation:
    """An involutive equivariant operator on a labeled tensor square."""

    name: str
    domain: str
    matrix: ExactMatrix
    equivariance: tuple  # tuple of leg-style tuples, each checked separately

    def is_involutive(self):
        m = self.matrix
        return (m * m - ExactMatrix.identity(m.rows)).is_zero()

    def is_equivariant(self, params):
        return all(
            fr.equivariance_check(self.matrix, params, styles=styles)
            for styles in self.equivariance
        )


def _two_leg_permutation(params, sign_of, corrected=True):
    """Shared shape of the V(x)V and V*(x)V* moves; sign_of orders the pair."""
    n = params.n
    q = params.q
    one = S_ONE
    a = (one - q * q) / (one + q * q)
    b = (q + q) / (one + q * q)
    m = ExactMatrix.zeros(n * n, n * n)

    def setat(o1, o2, i1, i2, val):
        m.entries[(o1 * n + o2) * n * n + (i1 * n + i2)] = val

    for i in range(n):
        setat(i, i, i, i, one)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s = a if sign_of(i, j) > 0 else -a
            setat(i, j, i, j, s)
            if corrected:
                setat(j, i, i, j, b)
            else:
                setat(j, j, i, j, b)
    return m


@lru_cache(maxsize=None)
def tau_vv(params):
    m = _two_leg_permutation(params, lambda i, j: j - i)
    return QuantumPermutation("tau-vv", "V.V", m, (("lV", "lV"),))


@lru_cache(maxsize=None)
def tau_vstarvstar(params):
    m = _two_leg_permutation(params, lambda i, j: i - j)
    return QuantumPermutation("tau-v*v*", "V*.V*", m, (("lV*", "lV*"),))


@lru_cache(maxsize=None)
def tau_r_vv(params):
    m = _two_leg_permutation(params, lambda i, j: i - j)
    return QuantumPermutation("tau-r-vv", "V.V", m, (("rV", "rV"),))


def literal_tau_vv(params):
    """The uncorrected printed operator; fails involutivity (see tests)."""
    m = _two_leg_permutation(params, lambda i, j: j - i, corrected=False)
    return QuantumPermutation("tau-vv-literal", "V.V", m, (("lV", "lV"),))


@lru_cache(maxsize=None)
def tau_vvstar(params):
    """Map V (x) V* -> V* (x) V: e_j (x) f^i to q^(-1/n)-weighted rows."""
    n = params.n
    f = params.qpow(-1, n)
    q = params.q
    om = params.omega
    m = ExactMatrix.zeros(n * n, n * n)

    def setat(i_out, j_out, j_in, i_in, val):
        # output f^i (x) e_j, input e_j (x) f^i
        m.entries[(i_out * n + j_out) * n * n + (j_in * n + i_in)] = val

    for i in range(n):
        for j in range(n):
            if i != j:
                setat(i, j, j, i, f)
        setat(i, i, i, i, f * q)
        for k in range(i + 1, n):
            setat(k, k, i, i, f * om)
    return m


@lru_cache(maxsize=None)
def tau_vvstar_inv(params):
    """Exact inverse map V* (x) V -> V (x) V*."""
    return tau_vvstar(params).inverse()


def _on_legs(params, op, position, total_legs=4):
    """Embed a two-leg operator at (position, position+1) of an n^total space."""
    n = params.n
    left = ExactMatrix.identity(n ** (position - 1)) if position > 1 else None
    right_dim = total_legs - position - 1
    right = ExactMatrix.identity(n ** right_dim) if right_dim > 0 else None
    out = op
    if left is not None:
        out = kron(left, out)
    if right is not None:
        out = kron(out, right)
    return out


@lru_cache(maxsize=None)
def tau_frt(params):
    """Composite on (V x V*)^2 built from the right-hand elementary moves."""
    n = params.n
    sigma23 = _on_legs(params, fr.flip_matrix(params), 2)
    mid = kron(tau_r_vv(params).matrix, tau_vstarvstar(params).matrix)
    m = sigma23 * mid * sigma23
    return QuantumPermutation(
        "tau-frt",
        "(V.V*)^2",
        m,
        (("rV", None, "rV", None), (None, "lV*", None, "lV*")),
    )


@lru_cache(maxsize=None)
def tau_re(params):
    """Composite on (V x V*)^2 equivariant under the diagonal left action."""
    t23 = _on_legs(params, tau_vvstar(params), 2)
    t23_inv = _on_legs(params, tau_vvstar_inv(params), 2)
    mid = kron(tau_vv(params).matrix, tau_vstarvstar(params).matrix)
    m = t23 * mid * t23_inv
    return QuantumPermutation(
        "tau-re", "(V.V*)^2", m, (("lV", "lV*", "lV", "lV*"),)
    )


@lru_cache(maxsize=None)
def pair_flip(params):
    """Classical flip of the two (V x V*) factors; the q = 1 oracle."""
    n = params.n
    d = n * n
    m = ExactMatrix.zeros(d * d, d * d)
    for a in range(d):
        for b in range(d):
            m.entries[(b * d + a) * d * d + (a * d + b)] = S_ONE
    return m


# ---------------------------------------------------------------------------
# reduction to the q-traceless part


@lru_cache(maxsize=None)
def traceless_split(params):
    """Basis adapted to the invariant decomposition of the coadjoint space.

    Column 0 is the invariant element D = sum q^(-2i+2) e^i_i spanning m0.
    The complement submodule is the kernel of the invariant functional,
    which in these coordinates is the ordinary trace, so the g-columns are
    the off-diagonal units followed by e^k_k - e^(k+1)_(k+1).
    """
    n = params.n
    cols = []
    d0 = [S_ZERO] * (n * n)
    for i in range(n):
        d0[i * n + i] = params.qpow(-2 * i)
    cols.append(d0)
    for i in range(n):
        for j in range(n):
            if i != j:
                v = [S_ZERO] * (n * n)
                v[i * n + j] = S_ONE
                cols.append(v)
    for k in range(n - 1):
        v = [S_ZERO] * (n * n)
        v[k * n + k] = S_ONE
        v[(k + 1) * n + (k + 1)] = Scalar(-1)
        cols.append(v)
    basis = ExactMatrix.zeros(n * n, n * n)
    for j, c in enumerate(cols):
        for i in range(n * n):
            basis.entries[i * n * n + j] = c[i]
    return basis, basis.inverse()


def g_dim(params):
    return params.n * params.n - 1


@lru_cache(maxsize=None)
def g_embed_project(params):
    """(E, P): embedding g -> M* and projection M* -> g along m0."""
    n2 = params.n * params.n
    basis, inv = traceless_split(params)
    d = n2 - 1
    emb = ExactMatrix.zeros(n2, d)
    for i in range(n2):
        for j in range(d):
            emb.entries[i * d + j] = basis.at(i, j + 1)
    proj = ExactMatrix.zeros(d, n2)
    for i in range(d):
        for j in range(n2):
            proj.entries[i * n2 + j] = inv.at(i + 1, j)
    return emb, proj


@lru_cache(maxsize=None)
def tau_re_on_mstar2(params):
    """tau_RE transported to matrix-space coordinates on M*^2."""
    phi = fr.mstar_to_vvstar(params)
    phi2 = kron(phi, phi)
    return phi2.transpose() * tau_re(params).matrix * phi2


def compression_to_g2(params):
    """Plain compression of tau_RE to g^2 along m0 (x) M* + M* (x) m0.

    Not involutive: the projected images of the two g-type eigenvectors
    that mix with the m0 legs overlap.  Kept as a counterexample; the
    reduction below works with projected eigenspaces instead.
    """
    emb, proj = g_embed_project(params)
    t = tau_re_on_mstar2(params)
    return kron(proj, proj) * t * kron(emb, emb)


@lru_cache(maxsize=None)
def tau_re_reduced(params):
    """Reduction of tau_RE to the traceless square g^2.

    The skew eigenspace descends along the projection (it carries the
    relation span of the reduced quadratic family), while the symmetric
    eigenspace is cut out by intersecting with g^2; the two are exact
    complements of the flat dimensions, which makes the induced involution
    well defined.  A plain operator compression fails involutivity, see
    compression_to_g2.
    """
    emb, proj = g_embed_project(params)
    p2 = kron(proj, proj)
    e2 = kron(emb, emb)
    t = tau_re_on_mstar2(params)
    plus_up, minus_up = split(QuantumPermutation("t", "m", t, ()))
    d = g_dim(params) ** 2
    mcols = _independent_columns([p2.apply(v) for v in minus_up], d)
    pcols = _intersect_with_image([list(v) for v in plus_up], e2, d)
    if len(pcols) + len(mcols) != d:
        raise AssertionError("reduced eigenspaces are not complementary")
    basis = ExactMatrix.zeros(d, d)
    for j, c in enumerate(pcols + mcols):
        for i in range(d):
            basis.entries[i * d + j] = c[i]
    inv = basis.inverse()
    sign = ExactMatrix.zeros(d, d)
    for j in range(d):
        sign.entries[j * d + j] = S_ONE if j < len(pcols) else Scalar(-1)
    m = basis * sign * inv
    return QuantumPermutation("tau-re-reduced", "g^2", m, ())


def _intersect_with_image(span_vectors, embed, d):
    """Basis of {v in coordinate space : embed(v) in span(span_vectors)}."""
    big = embed.rows
    cols = span_vectors + [
        [-embed.at(r, j) for r in range(big)] for j in range(d)
    ]
    m = ExactMatrix.zeros(big, len(cols))
    for j, c in enumerate(cols):
        for i in range(big):
            m.entries[i * len(cols) + j] = c[i]
    out = []
    for v in kernel(m):
        gpart = v[len(span_vectors):]
        if any(gpart):
            out.append(list(gpart))
    return _independent_columns(out, d)


def _independent_columns(vectors, dim):
    """Greedy extraction of an exact basis from a spanning list."""
    from qreflect.linalg import SparseEchelon

    ech = SparseEchelon()
    out = []
    for v in vectors:
        row = {i: c for i, c in enumerate(v) if c}
        if ech.insert(row) is not None:
            out.append(v)
    return out


def g_action_matrix(params, gen, i):
    """Generator action on g^2, compressed from the two-leg coadjoint action."""
    emb, proj = g_embed_project(params)
    act = fr.action_matrix(params, "dt", gen, i)
    return kron(proj, proj) * act * kron(emb, emb)


def g_single_action_matrix(params, gen, i):
    emb, proj = g_embed_project(params)
    act = fr.action_matrix(params, "coad", gen, i)
    return proj * act * emb


def tau_re_reduced_equivariant(params):
    t = tau_re_reduced(params).matrix
    for gen, i in fr.generators(params):
        if not t.commutes_with(g_action_matrix(params, gen, i)):
            return False
    return True


@lru_cache(maxsize=None)
def g_flip(params):
    d = g_dim(params)
    m = ExactMatrix.zeros(d * d, d * d)
    for a in range(d):
        for b in range(d):
            m.entries[(b * d + a) * d * d + (a * d + b)] = S_ONE
    return m


# ---------------------------------------------------------------------------
# eigenspace split and the braiding on M*^2


def split(perm):
    """Exact (+1, -1) eigenbases of an involutive permutation."""
    m = perm.matrix if isinstance(perm, QuantumPermutation) else perm
    ident = ExactMatrix.identity(m.rows)
    if not (m * m - ident).is_zero():
        raise ValueError("split requires an involutive operator")
    plus = kernel(m - ident)
    minus = kernel(m + ident)
    if len(plus) + len(minus) != m.rows:
        raise AssertionError("eigenspace dimensions do not fill the space")
    return plus, minus


def partial_transpose(m, n, leg):
    """Transpose one leg of an operator on an n (x) n space."""
    out = ExactMatrix.zeros(m.rows, m.cols)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    v = m.at(a * n + b, c * n + d)
                    if v:
                        if leg == 1:
                            out.entries[(c * n + b) * m.cols + (a * n + d)] = v
                        else:
                            out.entries[(a * n + d) * m.cols + (c * n + b)] = v
    return out


@lru_cache(maxsize=None)
def elementary_braidings(params):
    """Braidings c_{X,Y} on the four two-leg spaces, from the R image.

    c_{V,V} = flip . (R transposed on both legs), c_{V*,V*} = flip . R,
    c_{V,V*} = flip . (R^-1 transposed on the first leg), and c_{V*,V} is
    the exact inverse of the explicit V (x) V* move.
    """
    n = params.n
    rm = fr.rmatrix(params)
    rm_inv = rm.inverse()
    fl = fr.flip_matrix(params)
    c_vv = fl * rm.transpose()
    c_ww = fl * rm
    c_vw = fl * partial_transpose(rm_inv, n, 1)
    c_wv = tau_vvstar_inv(params)
    return {"VV": c_vv, "V*V*": c_ww, "VV*": c_vw, "V*V": c_wv}


@lru_cache(maxsize=None)
def braiding_mstar2(params):
    """The R-matrix braiding on M*^2, assembled leg by leg.

    For W = V (x) V*, c_{W,W} factors through the hexagon relations into
    elementary braidings acting on adjacent legs of V V* V V*.
    """
    c = elementary_braidings(params)
    # c_{W,W} = (c_{V,?} x id) chains: move legs (1,2) across legs (3,4)
    m23_wv = _on_legs(params, c["V*V"], 2)
    m34_ww = _on_legs(params, c["V*V*"], 3)
    m12_vv = _on_legs(params, c["VV"], 1)
    m23_vw = _on_legs(params, c["VV*"], 2)
    braid = m23_vw * m12_vv * m34_ww * m23_wv
    phi = fr.mstar_to_vvstar(params)
    phi2 = kron(phi, phi)
    return phi2.transpose() * braid * phi2
