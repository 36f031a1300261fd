"""Exact kernel for gl(3)/sl(3): brackets, grading, adjoint actions, exponentials.

All algebraic operations are exact over Fraction.  Floats appear only in
`exp_group` / `exp_ad`, the numerical exponentials used by the dynamics side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rational import (
    IDENTITY3,
    Scalar,
    adjugate3,
    det3,
    in_span,
    mat3,
    mat_mul,
    mat_scale,
    mat_sub,
    nullspace,
    rank,
    solve,
    span_equal,
    transpose3,
)

__all__ = [
    "LieVec",
    "GroupElem",
    "Subalgebra",
    "bracket",
    "grade_decompose",
    "quotient_adjoint",
    "quotient_adjoint_bruteforce",
    "centralizer",
    "normalizer",
    "conjugate",
    "ad_matrix",
    "Ad_matrix",
    "exp_group",
    "exp_ad",
    "theta_involution",
    "theta_group",
    "BASIS",
    "BASIS_NAMES",
]


class NotUpperTriangularError(ValueError):
    pass


@dataclass(frozen=True)
class LieVec:
    """Element of gl(3) over exact rationals."""

    entries: tuple

    @staticmethod
    def of(rows) -> "LieVec":
        return LieVec(mat3(rows))

    @staticmethod
    def zero() -> "LieVec":
        return LieVec(mat3([[0] * 3] * 3))

    @staticmethod
    def elementary(i: int, j: int) -> "LieVec":
        rows = [[0] * 3 for _ in range(3)]
        rows[i][j] = 1
        return LieVec.of(rows)

    @staticmethod
    def diag(a, b, c) -> "LieVec":
        return LieVec.of([[a, 0, 0], [0, b, 0], [0, 0, c]])

    def __add__(self, other: "LieVec") -> "LieVec":
        return LieVec(tuple(tuple(a + b for a, b in zip(r, s))
                            for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "LieVec") -> "LieVec":
        return LieVec(mat_sub(self.entries, other.entries))

    def __neg__(self) -> "LieVec":
        return LieVec(mat_scale(-1, self.entries))

    def scale(self, c) -> "LieVec":
        return LieVec(mat_scale(c, self.entries))

    def __matmul__(self, other: "LieVec") -> "LieVec":
        return LieVec(mat_mul(self.entries, other.entries))

    def trace(self) -> Scalar:
        return self.entries[0][0] + self.entries[1][1] + self.entries[2][2]

    def is_traceless(self) -> bool:
        return self.trace() == 0

    def transpose(self) -> "LieVec":
        return LieVec(transpose3(self.entries))

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def flat(self):
        return [e for row in self.entries for e in row]

    def to_float(self) -> np.ndarray:
        return np.array([[float(e) for e in row] for row in self.entries])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]


def bracket(u: LieVec, v: LieVec) -> LieVec:
    """Commutator uv - vu, exact."""
    return (u @ v) - (v @ u)


# Basis of the traceless 3x3 matrices adapted to the two-step grading.
E_0 = LieVec.elementary(2, 0)
E_ALPHA = LieVec.elementary(2, 1)
E_BETA = LieVec.elementary(1, 0)
E_1 = LieVec.diag(1, -1, 0)
E_2 = LieVec.diag(0, 1, -1)
E_SUP_ALPHA = LieVec.elementary(1, 2)
E_SUP_BETA = LieVec.elementary(0, 1)
E_SUP_0 = LieVec.elementary(0, 2)

BASIS = (E_0, E_ALPHA, E_BETA, E_1, E_2, E_SUP_ALPHA, E_SUP_BETA, E_SUP_0)
BASIS_NAMES = ("e_0", "e_alpha", "e_beta", "e_1", "e_2",
               "e^alpha", "e^beta", "e^0")

# Positive part of the filtration (grades >= 1).
POSITIVE_BASIS = (E_SUP_ALPHA, E_SUP_BETA, E_SUP_0)


def traceless_coords(v: LieVec):
    """Coordinates of a traceless v in BASIS (exact)."""
    if not v.is_traceless():
        raise ValueError("expected a traceless matrix")
    cols = [b.flat() for b in BASIS]
    rows = [[cols[j][i] for j in range(8)] for i in range(9)]
    sol = solve(rows, v.flat())
    if sol is None:
        raise ValueError("not in the traceless space")
    return sol


def from_traceless_coords(coords) -> LieVec:
    out = LieVec.zero()
    for c, b in zip(coords, BASIS):
        out = out + b.scale(c)
    return out


def grade_of_position(i: int, j: int) -> int:
    return j - i


def grade_decompose(v: LieVec) -> dict:
    """Split a traceless matrix into its graded components, keyed -2..2.

    Component k is supported exactly on the entry positions of grade k
    (grade of position (i, j) is j - i; the diagonal is grade 0).
    """
    if not v.is_traceless():
        raise ValueError("grade decomposition is defined on traceless matrices")
    parts = {}
    for k in range(-2, 3):
        rows = [[v.entries[i][j] if j - i == k else Fraction(0)
                 for j in range(3)] for i in range(3)]
        parts[k] = LieVec.of(rows)
    return parts


class GroupElem:
    """Projective transformation: invertible 3x3 rational matrix up to scale.

    The stored representative is canonical: the first nonzero entry in
    row-major order is exactly 1, so projective equality is structural
    equality (and the class is hashable).
    """

    __slots__ = ("entries",)

    def __init__(self, rows):
        m = mat3(rows)
        if det3(m) == 0:
            raise ValueError("projective transformation must be invertible")
        lead = next(e for row in m for e in row if e != 0)
        self.entries = mat_scale(Fraction(1) / lead, m)

    @staticmethod
    def identity() -> "GroupElem":
        return GroupElem(IDENTITY3)

    def __matmul__(self, other: "GroupElem") -> "GroupElem":
        return GroupElem(mat_mul(self.entries, other.entries))

    def inverse(self) -> "GroupElem":
        return GroupElem(adjugate3(self.entries))

    def transpose(self) -> "GroupElem":
        return GroupElem(transpose3(self.entries))

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElem) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"GroupElem({[list(map(str, r)) for r in self.entries]})"

    def is_upper_triangular(self) -> bool:
        e = self.entries
        return e[1][0] == 0 and e[2][0] == 0 and e[2][1] == 0

    def diagonal(self):
        return (self.entries[0][0], self.entries[1][1], self.entries[2][2])

    def to_float(self) -> np.ndarray:
        return np.array([[float(e) for e in row] for row in self.entries])


def conjugate(g: GroupElem, v: LieVec) -> LieVec:
    """g v g^{-1}, exact.  Scale invariant in the representative of g, so it
    is well defined on projective classes."""
    inv = mat_scale(Fraction(1) / det3(g.entries), adjugate3(g.entries))
    return LieVec(mat_mul(mat_mul(g.entries, v.entries), inv))


def theta_involution(v: LieVec) -> LieVec:
    """Lie algebra involution v -> -v^T (exchanges the two circle directions)."""
    return -v.transpose()


def theta_group(g: GroupElem) -> GroupElem:
    """Group involution g -> (g^T)^{-1}, the flip-equivariance morphism."""
    return g.transpose().inverse()


# ---------------------------------------------------------------------------
# quotient adjoint action on sl3 / (upper triangular)
# ---------------------------------------------------------------------------

def _strictly_lower_class(m: LieVec):
    """Class of m modulo upper-triangular matrices, as coordinates over
    the images of (e_alpha, e_beta, e_0)."""
    e = m.entries
    return (e[2][1], e[1][0], e[2][0])


def quotient_adjoint(p: GroupElem):
    """Matrix of the induced adjoint action of upper-triangular p on the
    quotient of sl3 by the upper-triangular subalgebra, over the ordered
    basis of classes (e_alpha, e_beta, e_0).

    Closed form, scale invariant in the projective representative: with
    diagonal (d1, d2, d3) and entries p12, p23,

        e_alpha -> (d3/d2) e_alpha
        e_beta  -> (d2/d1) e_beta
        e_0     -> -(d3 p12/(d1 d2)) e_alpha + (p23/d1) e_beta + (d3/d1) e_0
    """
    if not p.is_upper_triangular():
        raise NotUpperTriangularError("quotient adjoint needs an upper-triangular element")
    e = p.entries
    d1, d2, d3 = e[0][0], e[1][1], e[2][2]
    p12, p23 = e[0][1], e[1][2]
    return mat3([
        [d3 / d2, 0, -(d3 * p12) / (d1 * d2)],
        [0, d2 / d1, p23 / d1],
        [0, 0, d3 / d1],
    ])


def quotient_adjoint_bruteforce(p: GroupElem):
    """Independent computation: conjugate each class generator by p and
    project modulo the upper-triangular part."""
    if not p.is_upper_triangular():
        raise NotUpperTriangularError("quotient adjoint needs an upper-triangular element")
    cols = [(_strictly_lower_class(conjugate(p, gen)))
            for gen in (E_ALPHA, E_BETA, E_0)]
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


# ---------------------------------------------------------------------------
# centralizers, normalizers, subalgebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subalgebra:
    """Subalgebra of sl(3) given by a linearly independent basis."""

    basis: tuple

    @staticmethod
    def of(vectors) -> "Subalgebra":
        vecs = tuple(vectors)
        if rank([v.flat() for v in vecs]) != len(vecs):
            raise ValueError("basis is linearly dependent")
        return Subalgebra(vecs)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: LieVec) -> bool:
        return in_span([b.flat() for b in self.basis], v.flat())

    def is_subalgebra(self) -> bool:
        flats = [b.flat() for b in self.basis]
        for i, u in enumerate(self.basis):
            for w in self.basis[i + 1:]:
                if not in_span(flats, bracket(u, w).flat()):
                    return False
        return True

    def span_equals(self, other: "Subalgebra") -> bool:
        return span_equal([b.flat() for b in self.basis],
                          [b.flat() for b in other.basis])

    def map(self, f) -> "Subalgebra":
        return Subalgebra.of([f(b) for b in self.basis])


def _traceless_constraint_rows(condition):
    """Rows of the linear system condition(v) = 0 for v in the traceless
    space, where condition maps a LieVec to a list of Fractions."""
    rows = None
    for k, b in enumerate(BASIS):
        vals = condition(b)
        if rows is None:
            rows = [[Fraction(0)] * 8 for _ in vals]
        for i, val in enumerate(vals):
            rows[i][k] = val
    return rows


def centralizer(s: Subalgebra) -> Subalgebra:
    """Exact solution of [v, s] = 0 over the traceless 3x3 matrices."""
    def cond(v):
        out = []
        for b in s.basis:
            out.extend(bracket(v, b).flat())
        return out

    rows = _traceless_constraint_rows(cond)
    return Subalgebra(tuple(from_traceless_coords(c) for c in nullspace(rows)))


def normalizer(s: Subalgebra) -> Subalgebra:
    """Exact solution of [v, s] contained in s over the traceless matrices."""
    span = [b.flat() for b in s.basis]
    red, pivots = _span_projector(span)

    def cond(v):
        out = []
        for b in s.basis:
            out.extend(_residual_mod_span(bracket(v, b).flat(), red, pivots))
        return out

    rows = _traceless_constraint_rows(cond)
    return Subalgebra(tuple(from_traceless_coords(c) for c in nullspace(rows)))


def _span_projector(span):
    """Row-reduced span data used to compute residuals modulo the span."""
    from .rational import rref

    return rref(span)


def _residual_mod_span(vec, red, pivots):
    v = list(map(Fraction, vec))
    for row, pc in zip(red, pivots):
        if v[pc] != 0:
            f = v[pc]
            v = [a - f * b for a, b in zip(v, row)]
    return v


# ---------------------------------------------------------------------------
# adjoint matrices and exponentials
# ---------------------------------------------------------------------------

def ad_matrix(v: LieVec):
    """8x8 exact matrix of ad(v) = [v, .] over BASIS."""
    cols = [traceless_coords(bracket(v, b)) for b in BASIS]
    return tuple(tuple(cols[j][i] for j in range(8)) for i in range(8))


def Ad_matrix(g: GroupElem):
    """8x8 exact matrix of the conjugation action of g over BASIS.

    Well defined on projective classes: rescaling g does not change it.
    """
    cols = [traceless_coords(conjugate(g, b)) for b in BASIS]
    return tuple(tuple(cols[j][i] for j in range(8)) for i in range(8))


_EXP_ORDER = 18


def _exp_series(m: np.ndarray) -> np.ndarray:
    out = np.eye(m.shape[0])
    term = np.eye(m.shape[0])
    for k in range(1, _EXP_ORDER + 1):
        term = term @ m / k
        out = out + term
    return out


def exp_float(m: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a fixed series order."""
    norm = np.linalg.norm(m, ord=np.inf)
    squarings = max(0, int(np.ceil(np.log2(norm / 0.5))) if norm > 0.5 else 0)
    out = _exp_series(m / (2 ** squarings))
    for _ in range(squarings):
        out = out @ out
    return out


def exp_group(v: LieVec, t: float = 1.0) -> np.ndarray:
    """exp(t v) as a float 3x3 matrix."""
    return exp_float(v.to_float() * t)


def exp_ad(v: LieVec, t: float = 1.0) -> np.ndarray:
    """exp(t ad v) as a float 8x8 matrix."""
    adv = np.array([[float(e) for e in row] for row in ad_matrix(v)])
    return exp_float(adv * t)


def Ad_of_exp(v: LieVec, t: float = 1.0) -> np.ndarray:
    """Conjugation action of exp(t v) over BASIS, float path.

    Computed from exp_group directly (independent of exp_ad); the two must
    agree to roughly 1e-9 for moderate inputs.
    """
    g = exp_group(v, t)
    ginv = np.linalg.inv(g)
    basis_f = [b.to_float() for b in BASIS]
    flat_basis = np.array([bf.flatten() for bf in basis_f]).T
    cols = []
    for bf in basis_f:
        conj = (g @ bf @ ginv).flatten()
        coords, *_ = np.linalg.lstsq(flat_basis, conj, rcond=None)
        cols.append(coords)
    return np.array(cols).T
