"""Fundamental representation, R-matrix, Hecke matrix, and named actions.

Matrix units are read as plain matrices (e^i_j has its 1 in row i, column j)
and every operator acts on coordinate columns.  With that reading the
braid matrix S = q^(1/n) * flip . R commutes with the coproduct action of
every generator, the q-symmetrizer has rank n(n+1)/2, and the printed
catalog of numeric reflection-equation solutions passes as displayed.

Right actions are stored as the matrices that act on coordinates, so a
right action satisfies M(xy) = M(y) M(x); equivariance checks are plain
commutators either way.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from qreflect.linalg import ExactMatrix, kron, kron_all
from qreflect.scalars import S_ONE, S_ZERO, Scalar, SessionParams


# ---------------------------------------------------------------------------
# generator atoms and their images

# atoms: ('H', i), ('X+', i), ('X-', i), ('K', i, s) for q^(s H_i / 2), ('1',)


def rho(params, atom):
    """Image of a generator atom in n x n matrices."""
    n = params.n
    kind = atom[0]
    if kind == "1":
        return ExactMatrix.identity(n)
    i = atom[1]
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    m = ExactMatrix.zeros(n, n)
    if kind == "H":
        m.entries[(i - 1) * n + (i - 1)] = S_ONE
        m.entries[i * n + i] = Scalar(-1)
        return m
    if kind == "X+":
        m.entries[(i - 1) * n + i] = S_ONE
        return m
    if kind == "X-":
        m.entries[i * n + (i - 1)] = S_ONE
        return m
    if kind == "K":
        s = atom[2]
        for k in range(n):
            if k == i - 1:
                m.entries[k * n + k] = params.qpow(s, 2)
            elif k == i:
                m.entries[k * n + k] = params.qpow(-s, 2)
            else:
                m.entries[k * n + k] = S_ONE
        return m
    raise ValueError(f"unknown atom {atom}")


def rho_antipode(params, atom):
    """Image of the antipode of an atom: H -> -H, X+- -> -q^(-+1) X+-."""
    kind = atom[0]
    if kind == "1":
        return rho(params, atom)
    if kind == "H":
        return -rho(params, atom)
    if kind == "X+":
        return rho(params, atom).scale(-params.qpow(-1))
    if kind == "X-":
        return rho(params, atom).scale(-params.qpow(1))
    if kind == "K":
        return rho(params, (atom[0], atom[1], -atom[2]))
    raise ValueError(f"unknown atom {atom}")


def coproduct_terms(gen, i, slots):
    """Sweedler terms of the (slots-1)-fold coproduct of one generator.

    H spreads as H in one slot and 1 elsewhere; X+- sits in one slot with
    q^(H/2) on earlier slots and q^(-H/2) on later ones.
    """
    out = []
    for k in range(slots):
        legs = []
        for pos in range(slots):
            if pos == k:
                legs.append((gen, i))
            elif gen == "H":
                legs.append(("1",))
            elif pos < k:
                legs.append(("K", i, +1))
            else:
                legs.append(("K", i, -1))
        out.append(tuple(legs))
    return out


def generators(params):
    for i in range(1, params.n):
        for g in ("H", "X+", "X-"):
            yield g, i


@dataclass(frozen=True)
class RepGenerators:
    """Explicit images of the Chevalley generators on V = C^n."""

    params: SessionParams

    def h(self, i):
        return rho(self.params, ("H", i))

    def xplus(self, i):
        return rho(self.params, ("X+", i))

    def xminus(self, i):
        return rho(self.params, ("X-", i))

    def khalf(self, i, sign=+1):
        return rho(self.params, ("K", i, sign))


# ---------------------------------------------------------------------------
# leg styles: how one coproduct slot acts on one tensor leg

_LEG_DIM_V = "V"


def _leg_matrix(params, style, atom):
    if style == "rV":          # right action on V
        return rho(params, atom).transpose()
    if style == "rV*":         # right action on V*
        return rho_antipode(params, atom)
    if style == "lV":          # left action on V
        return rho_antipode(params, atom).transpose()
    if style == "lV*":         # left action on V*
        return rho(params, atom)
    raise ValueError(f"unknown leg style {style}")


def _m_leg(params, pre, post, conj):
    """Operator A -> P A Q on matrix-space coordinates, flattened row-major."""
    if conj == "ad":           # P = rho(gamma(pre)), Q = rho(post)
        p = rho_antipode(params, pre)
        qm = rho(params, post)
    else:                      # coad: P = rho(post), Q = rho(gamma(pre))
        p = rho(params, post)
        qm = rho_antipode(params, pre)
    return kron(p, qm.transpose())


@dataclass(frozen=True)
class ActionSpec:
    """A named action of the quantum group on a labeled tensor space."""

    name: str
    side: str          # 'left' or 'right'
    slots: int         # coproduct legs consumed
    space_dim_power: int  # dimension = n ** space_dim_power

    def space_dim(self, n):
        return n ** self.space_dim_power


def _build_action(params, name, atoms):
    """Per-leg matrices for one Sweedler term of the named action."""
    n = params.n
    if name == "ractions-V":
        return [_leg_matrix(params, "rV", atoms[0])]
    if name == "ractions-V*":
        return [_leg_matrix(params, "rV*", atoms[0])]
    if name == "actions-V":
        return [_leg_matrix(params, "lV", atoms[0])]
    if name == "actions-V*":
        return [_leg_matrix(params, "lV*", atoms[0])]
    if name == "ad":
        return [_m_leg(params, atoms[0], atoms[1], "ad")]
    if name == "coad":
        return [_m_leg(params, atoms[0], atoms[1], "coad")]
    if name == "al":
        return [
            _m_leg(params, atoms[1], atoms[2], "ad"),
            _m_leg(params, atoms[0], atoms[3], "ad"),
        ]
    if name == "bt":
        return [
            _m_leg(params, atoms[0], atoms[1], "ad"),
            _m_leg(params, atoms[2], atoms[3], "ad"),
        ]
    if name == "dt":
        return [
            _m_leg(params, atoms[0], atoms[1], "coad"),
            _m_leg(params, atoms[2], atoms[3], "coad"),
        ]
    raise ValueError(f"unknown action {name}")


ACTIONS = {
    "ractions-V": ActionSpec("ractions-V", "right", 1, 1),
    "ractions-V*": ActionSpec("ractions-V*", "right", 1, 1),
    "actions-V": ActionSpec("actions-V", "left", 1, 1),
    "actions-V*": ActionSpec("actions-V*", "left", 1, 1),
    "ad": ActionSpec("ad", "right", 2, 2),
    "coad": ActionSpec("coad", "left", 2, 2),
    "al": ActionSpec("al", "right", 4, 4),
    "bt": ActionSpec("bt", "right", 4, 4),
    "dt": ActionSpec("dt", "left", 4, 4),
}


@lru_cache(maxsize=None)
def action_matrix(params, name, gen, i):
    """Exact matrix of one Chevalley generator under a named action."""
    spec = ACTIONS[name]
    total = None
    for term in coproduct_terms(gen, i, spec.slots):
        mats = _build_action(params, name, term)
        piece = kron_all(mats) if len(mats) > 1 else mats[0]
        total = piece if total is None else total + piece
    return total


@lru_cache(maxsize=None)
def leg_action_matrix(params, styles, gen, i):
    """Generator action on a tensor space given per-leg styles.

    styles is a tuple over legs: one of 'rV', 'rV*', 'lV', 'lV*' or None
    for a spectator leg (identity); coproduct slots go to non-None legs
    left to right.
    """
    active = [s for s in styles if s is not None]
    n = params.n
    total = None
    for term in coproduct_terms(gen, i, len(active)):
        mats = []
        ti = 0
        for s in styles:
            if s is None:
                mats.append(ExactMatrix.identity(n))
            else:
                mats.append(_leg_matrix(params, s, term[ti]))
                ti += 1
        piece = kron_all(mats)
        total = piece if total is None else total + piece
    return total


def equivariance_check(op, params, name=None, styles=None):
    """True iff op commutes with the action of every Chevalley generator."""
    for gen, i in generators(params):
        if name is not None:
            act = action_matrix(params, name, gen, i)
        else:
            act = leg_action_matrix(params, tuple(styles), gen, i)
        if op.rows != act.rows:
            raise ValueError("operator does not match the action space")
        if not op.commutes_with(act):
            return False
    return True


def intertwiner_check(op, params, src, dst):
    """True iff op . act_src(x) = act_dst(x) . op for all generators.

    src and dst are action names or leg-style tuples.
    """
    for gen, i in generators(params):
        a = (
            action_matrix(params, src, gen, i)
            if isinstance(src, str)
            else leg_action_matrix(params, tuple(src), gen, i)
        )
        b = (
            action_matrix(params, dst, gen, i)
            if isinstance(dst, str)
            else leg_action_matrix(params, tuple(dst), gen, i)
        )
        if not (op * a - b * op).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# R-matrix, Hecke matrix, projectors


@lru_cache(maxsize=None)
def rmatrix(params):
    """The R-matrix on V (x) V, including the overall q^(-1/n) factor."""
    n = params.n
    if n < 2:
        raise ValueError("R-matrix needs n >= 2")
    f = params.qpow(-1, n)
    q = params.q
    om = params.omega
    m = ExactMatrix.zeros(n * n, n * n)

    def setat(a, b, c, d, val):
        m.entries[(a * n + b) * n * n + (c * n + d)] = val

    for i in range(n):
        setat(i, i, i, i, f * q)
    for i in range(n):
        for j in range(n):
            if i != j:
                setat(i, j, i, j, f)
    for i in range(n):
        for k in range(i + 1, n):
            setat(k, i, i, k, f * om)
    return m


@lru_cache(maxsize=None)
def flip_matrix(params, d1=None, d2=None):
    """Classical flip X (x) Y -> Y (x) X on coordinate spaces."""
    n = params.n
    d1 = n if d1 is None else d1
    d2 = d1 if d2 is None else d2
    m = ExactMatrix.zeros(d1 * d2, d1 * d2)
    for a in range(d1):
        for b in range(d2):
            m.entries[(b * d1 + a) * d1 * d2 + (a * d2 + b)] = S_ONE
    return m


@lru_cache(maxsize=None)
def hecke(params):
    """S = q^(1/n) flip . R; satisfies S^2 = omega S + 1."""
    return (flip_matrix(params) * rmatrix(params)).scale(params.qpow(1, params.n))


@lru_cache(maxsize=None)
def projectors(params):
    """(P+, P-): the q-antisymmetrizer and q-symmetrizer for S."""
    s = hecke(params)
    ident = ExactMatrix.identity(s.rows)
    two_q = params.q + params.qpow(-1)
    pp = (ident.scale(params.q) - s).scale(two_q.inverse())
    pm = (s + ident.scale(params.qpow(-1))).scale(two_q.inverse())
    return pp, pm


def ybe_residual(params):
    """R12 R13 R23 - R23 R13 R12 on V (x) V (x) V."""
    n = params.n
    ident = ExactMatrix.identity(n)
    r = rmatrix(params)
    r12 = kron(r, ident)
    r23 = kron(ident, r)
    s12 = kron(flip_matrix(params), ident)
    r13 = s12 * r23 * s12
    return r12 * r13 * r23 - r23 * r13 * r12


# ---------------------------------------------------------------------------
# identifications between matrix-space and (V, V*) pictures


@lru_cache(maxsize=None)
def mstar_to_vvstar(params):
    """Coordinate map M* -> V (x) V*, sending e^i_j to e_j (x) f^i."""
    n = params.n
    m = ExactMatrix.zeros(n * n, n * n)
    for i in range(n):
        for j in range(n):
            m.entries[(j * n + i) * n * n + (i * n + j)] = S_ONE
    return m


def serre_residuals(params):
    """All Serre and commutation relation residuals for the rho images."""
    p = params
    out = []
    n = p.n
    om = p.omega
    for i in range(1, n):
        for j in range(1, n):
            hi, xj_p, xj_m = rho(p, ("H", i)), rho(p, ("X+", j)), rho(p, ("X-", j))
            target = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
            out.append(hi * xj_p - xj_p * hi - xj_p.scale(Scalar(target)))
            out.append(hi * xj_m - xj_m * hi - xj_m.scale(Scalar(-target)))
            comm = rho(p, ("X+", i)) * xj_m - xj_m * rho(p, ("X+", i))
            if i == j:
                kk = rho(p, ("K", i, 1))
                target_m = (kk * kk - rho(p, ("K", i, -1)).power(2)).scale(om.inverse())
                out.append(comm - target_m)
            else:
                out.append(comm)
    two_q = p.q + p.qpow(-1)
    for kind in ("X+", "X-"):
        for i in range(1, n):
            for j in (i - 1, i + 1):
                if not 1 <= j <= n - 1:
                    continue
                a, b = rho(p, (kind, i)), rho(p, (kind, j))
                out.append(a * a * b - (a * b * a).scale(two_q) + b * a * a)
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) > 1:
                    a, b = rho(p, (kind, i)), rho(p, (kind, j))
                    out.append(a * b - b * a)
    return out
