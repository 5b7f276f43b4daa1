"""4x4 matrices of normal-ordered expressions and the Dirac-sector builders."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from chronon.exact import ExactComplex, I
from chronon.ncalg.expr import NCExpr, constraint_reduce, nc_multiply
from chronon.ncalg.ring import HBAR, LIGHT, MASS, Coef

# Explicit Pauli matrices; sigma symbols are never stored.
PAULI = (
    ((ExactComplex(0), ExactComplex(1)), (ExactComplex(1), ExactComplex(0))),
    ((ExactComplex(0), -I), (I, ExactComplex(0))),
    ((ExactComplex(1), ExactComplex(0)), (ExactComplex(0), ExactComplex(-1))),
)


class NCMatrix:
    """Square matrix with :class:`NCExpr` entries (size 4 for the Dirac sector)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[NCExpr]]):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("NCMatrix must be square")
        self.rows = tuple(tuple(_as_expr(x) for x in r) for r in rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def zeros(cls, n: int = 4) -> "NCMatrix":
        return cls([[NCExpr() for _ in range(n)] for _ in range(n)])

    @classmethod
    def identity(cls, n: int = 4, value=1) -> "NCMatrix":
        v = _as_expr(value)
        return cls([[v if i == j else NCExpr() for j in range(n)] for i in range(n)])

    @classmethod
    def from_blocks(cls, a, b, c, d) -> "NCMatrix":
        """Assemble ``[[a, b], [c, d]]`` from 2x2 blocks (nested lists)."""
        top = [list(a[i]) + list(b[i]) for i in range(2)]
        bottom = [list(c[i]) + list(d[i]) for i in range(2)]
        return cls(top + bottom)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: "NCMatrix") -> "NCMatrix":
        self._check(other)
        return NCMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "NCMatrix":
        return NCMatrix([[-a for a in r] for r in self.rows])

    def __sub__(self, other: "NCMatrix") -> "NCMatrix":
        return self + (-other)

    def __matmul__(self, other: "NCMatrix") -> "NCMatrix":
        self._check(other)
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = NCExpr()
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a.terms and b.terms:
                        acc = acc + nc_multiply(a, b)
                row.append(acc)
            out.append(row)
        return NCMatrix(out)

    def map(self, fn) -> "NCMatrix":
        return NCMatrix([[fn(a) for a in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def block(self, bi: int, bj: int) -> "NCMatrix":
        return NCMatrix([[self.rows[2 * bi + i][2 * bj + j] for j in range(2)] for i in range(2)])

    def nonzero_entries(self):
        return [(i, j, a) for i, r in enumerate(self.rows) for j, a in enumerate(r) if not a.is_zero()]

    def __eq__(self, other):
        if not isinstance(other, NCMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def _check(self, other):
        if self.size != other.size:
            raise ValueError("matrix size mismatch")

    def __str__(self):
        return "\n".join(f"[{i},{j}] {a}" for i, j, a in self.nonzero_entries()) or "0"


def _as_expr(x) -> NCExpr:
    if isinstance(x, NCExpr):
        return x
    if isinstance(x, Coef):
        return NCExpr.scalar(x)
    return NCExpr.scalar(ExactComplex.coerce(x))


def nc_commutator_matrix(a: NCMatrix, b: NCMatrix) -> NCMatrix:
    return (a @ b) - (b @ a)


def sigma_dot(vec: Sequence[NCExpr]):
    """2x2 expansion of ``sigma . vec`` for an operator-valued 3-vector."""
    out = [[NCExpr(), NCExpr()], [NCExpr(), NCExpr()]]
    for axis, comp in enumerate(vec):
        for i in range(2):
            for j in range(2):
                s = PAULI[axis][i][j]
                if s:
                    out[i][j] = out[i][j] + comp * NCExpr.scalar(s)
    return out


def scale_block(block, factor):
    f = _as_expr(factor)
    return [[f * x for x in row] for row in block]


def scalar_block(value):
    v = _as_expr(value)
    return [[v, NCExpr()], [NCExpr(), v]]


def position_vector():
    return [NCExpr.r(i) for i in range(3)]


def momentum_vector():
    return [NCExpr.p(i) for i in range(3)]


def dot(a, b) -> NCExpr:
    """Ordered dot product ``sum_i a_i b_i``."""
    acc = NCExpr()
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc


def cross(a, b):
    """Ordered cross product ``(a x b)_k = eps_ijk a_i b_j``."""
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def angular_momentum():
    return cross(position_vector(), momentum_vector())


HBAR_C = Coef.symbol(HBAR)
M_C = Coef.symbol(MASS)
C_C = Coef.symbol(LIGHT)


def time_operator_diagonal(prefactor=Fraction(1, 6)) -> NCExpr:
    """``prefactor * m * S**-1 (3 p.r - r.p)`` in normal form; the 3-D scalar operator uses 1/6."""
    r, p = position_vector(), momentum_vector()
    inner = dot(p, r) * 3 - dot(r, p)
    lead = NCExpr.scalar(Coef.inv_S() * M_C * ExactComplex.coerce(prefactor))
    return lead * inner


def build_E_dirac() -> NCMatrix:
    """Dirac Hamiltonian ``[[m c^2, c sigma.p], [c sigma.p, -m c^2]]``."""
    mc2 = M_C * C_C * C_C
    sp = scale_block(sigma_dot(momentum_vector()), C_C)
    return NCMatrix.from_blocks(scalar_block(mc2), sp, sp, scalar_block(-mc2))


def build_T_dirac() -> NCMatrix:
    """Relativistic time operator with diagonal ``+-(m/6S)(3p.r - r.p)`` and
    off-diagonal ``sigma.r / 3c`` blocks."""
    diag = time_operator_diagonal()
    sr = scale_block(sigma_dot(position_vector()), Coef.symbol(LIGHT, -1, Fraction(1, 3)))
    return NCMatrix.from_blocks(scalar_block(diag), sr, sr, scalar_block(-diag))


def constraint_reduce_matrix(mat: NCMatrix) -> NCMatrix:
    return mat.map(constraint_reduce)
