"""Z2-graded linear algebra on V = C^3 and its tensor powers.

Basis vectors of V are indexed 1, 2, 3 with parities (0, 1, 0).  Tensor
powers are indexed row-major by tuples in {1,2,3}^n.  All Koszul signs are
concentrated in `graded_kron`; ordinary matrix products of already-built
graded matrices need no extra signs.
"""

from __future__ import annotations

import math
from fractions import Fraction

PARITY = {1: 0, 2: 1, 3: 0}

_ZERO = Fraction(0)
_ONE = Fraction(1)


def parity_of_tuple(idx) -> int:
    return sum(PARITY[i] for i in idx) % 2


def index_tuples(factors: int):
    """Row-major tuples in {1,2,3}^factors."""
    if factors == 0:
        return [()]
    out = [()]
    for _ in range(factors):
        out = [t + (i,) for t in out for i in (1, 2, 3)]
    return out


def flat_index(idx) -> int:
    k = 0
    for i in idx:
        k = 3 * k + (i - 1)
    return k


class GradedMatrix:
    """Dense square matrix over Fraction on V^{tensor factors}."""

    __slots__ = ("factors", "dim", "rows")

    def __init__(self, factors: int, rows=None):
        self.factors = factors
        self.dim = 3 ** factors
        if rows is None:
            self.rows = [[_ZERO] * self.dim for _ in range(self.dim)]
        else:
            self.rows = rows

    @classmethod
    def identity(cls, factors: int) -> "GradedMatrix":
        m = cls(factors)
        for i in range(m.dim):
            m.rows[i][i] = _ONE
        return m

    def copy(self) -> "GradedMatrix":
        return GradedMatrix(self.factors, [row[:] for row in self.rows])

    def __getitem__(self, rc):
        r, c = rc
        if isinstance(r, tuple):
            r = flat_index(r)
        if isinstance(c, tuple):
            c = flat_index(c)
        return self.rows[r][c]

    def __setitem__(self, rc, value):
        r, c = rc
        if isinstance(r, tuple):
            r = flat_index(r)
        if isinstance(c, tuple):
            c = flat_index(c)
        self.rows[r][c] = Fraction(value)

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.factors == other.factors and self.rows == other.rows

    def __add__(self, other):
        self._check(other)
        return GradedMatrix(
            self.factors,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        self._check(other)
        return GradedMatrix(
            self.factors,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, r) -> "GradedMatrix":
        r = Fraction(r)
        return GradedMatrix(self.factors, [[r * a for a in row] for row in self.rows])

    __rmul__ = scale

    def _check(self, other):
        if self.factors != other.factors:
            raise ValueError(
                f"dimension mismatch: {self.dim} vs {other.dim} (tensor factors differ)"
            )

    def __mul__(self, other):
        if not isinstance(other, GradedMatrix):
            return self.scale(other)
        self._check(other)
        n = self.dim
        # Clear denominators once so the inner loop runs on plain ints.
        da = math.lcm(*(c.denominator for row in self.rows for c in row))
        db = math.lcm(*(c.denominator for row in other.rows for c in row))
        ia = [[int(c * da) for c in row] for row in self.rows]
        ib = [[int(c * db) for c in row] for row in other.rows]
        d = da * db
        cols = list(zip(*ib))
        out = [
            [Fraction(sum(x * y for x, y in zip(row, col)), d) for col in cols]
            for row in ia
        ]
        return GradedMatrix(self.factors, out)

    def max_abs(self) -> Fraction:
        return max((abs(c) for row in self.rows for c in row), default=_ZERO)

    def is_zero(self) -> bool:
        return all(c == 0 for row in self.rows for c in row)

    def even_part(self) -> "GradedMatrix":
        return self._parity_part(0)

    def odd_part(self) -> "GradedMatrix":
        return self._parity_part(1)

    def _parity_part(self, p: int) -> "GradedMatrix":
        tups = index_tuples(self.factors)
        out = GradedMatrix(self.factors)
        for r, tr in enumerate(tups):
            for c, tc in enumerate(tups):
                if (parity_of_tuple(tr) + parity_of_tuple(tc)) % 2 == p:
                    out.rows[r][c] = self.rows[r][c]
        return out

    def parity(self):
        """Parity of a homogeneous matrix, or None if mixed."""
        found = None
        tups = index_tuples(self.factors)
        for r, tr in enumerate(tups):
            for c, tc in enumerate(tups):
                if self.rows[r][c] != 0:
                    p = (parity_of_tuple(tr) + parity_of_tuple(tc)) % 2
                    if found is None:
                        found = p
                    elif found != p:
                        return None
        return 0 if found is None else found

    def to_float(self):
        return [[float(c) for c in row] for row in self.rows]

    def dumps(self) -> str:
        """Row-major plain-text dump, entries as p/q, one row per line."""
        lines = []
        for row in self.rows:
            lines.append(" ".join(str(c) for c in row))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"GradedMatrix(factors={self.factors})\n" + self.dumps()


def elementary(i: int, j: int) -> GradedMatrix:
    """3x3 matrix unit E_ij (1-based indices)."""
    m = GradedMatrix(1)
    m.rows[i - 1][j - 1] = _ONE
    return m


def graded_kron(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    """Koszul-signed tensor product.

    Entry at row (I,J), column (K,L) is (-1)^{(p(J)+p(L)) p(K)} a[I,K] b[J,L],
    which makes (a (x) 1)(1 (x) b) = a (x) b and
    (1 (x) b)(a (x) 1) = (-1)^{p(a) p(b)} a (x) b on homogeneous factors.
    """
    ta = index_tuples(a.factors)
    tb = index_tuples(b.factors)
    out = GradedMatrix(a.factors + b.factors)
    db = b.dim
    for ri, ti in enumerate(ta):
        for ci, tk in enumerate(ta):
            x = a.rows[ri][ci]
            if x == 0:
                continue
            pk = parity_of_tuple(tk)
            for rj, tj in enumerate(tb):
                prj = parity_of_tuple(tj)
                row = out.rows[ri * db + rj]
                base = ci * db
                brow = b.rows[rj]
                for cj, tl in enumerate(tb):
                    y = brow[cj]
                    if y == 0:
                        continue
                    if pk and (prj + parity_of_tuple(tl)) % 2:
                        row[base + cj] = -(x * y)
                    else:
                        row[base + cj] = x * y
    return out


def super_permutation() -> GradedMatrix:
    """P on V (x) V:  P(x (x) y) = (-1)^{p(x) p(y)} y (x) x."""
    p = GradedMatrix(2)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            sign = -_ONE if PARITY[j] else _ONE
            p = p + graded_kron(elementary(i, j), elementary(j, i)).scale(sign)
    return p


# J = E_31 + E_22 - E_13 entering the super transposition.
J_ENTRIES = {(3, 1): _ONE, (2, 2): _ONE, (1, 3): -_ONE}


def j_matrix() -> GradedMatrix:
    m = GradedMatrix(1)
    for (i, j), v in J_ENTRIES.items():
        m.rows[i - 1][j - 1] = v
    return m


def transpose_usual(a: GradedMatrix) -> GradedMatrix:
    """The plain super transpose  A^T = sum (-1)^{p(j)(p(i)+p(j))} A^{ji} E_ij."""
    if a.factors != 1:
        raise ValueError("transpose_usual is defined on V only")
    out = GradedMatrix(1)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            s = -_ONE if PARITY[j] and (PARITY[i] + PARITY[j]) % 2 else _ONE
            out.rows[i - 1][j - 1] = s * a.rows[j - 1][i - 1]
    return out


def super_transpose(a: GradedMatrix) -> GradedMatrix:
    """J-conjugated super transpose on V, entry by entry:

        (A^t)^{il} = sum_{j,k} (-1)^{p(i)p(l)+p(i)} J^{ij} A^{kj} J^{lk}.

    This is the convention under which the crossing relation and the
    unitarity rows of C(u) come out right; on even matrices it agrees with
    J A^T J^{-1}.
    """
    if a.factors != 1:
        raise ValueError("super_transpose is defined on V; use partial_transpose_first")
    out = GradedMatrix(1)
    for (i, j), vij in J_ENTRIES.items():
        for (l, k), vlk in J_ENTRIES.items():
            s = vij * vlk
            if (PARITY[i] * PARITY[l] + PARITY[i]) % 2:
                s = -s
            out.rows[i - 1][l - 1] += s * a.rows[k - 1][j - 1]
    return out


def aux_blocks(m: GradedMatrix):
    """Invert graded_kron on the first factor: m = sum_{i,k} E_ik (x) B[i,k].

    Returns a dict {(i, k): 3x3 GradedMatrix} over the auxiliary indices.
    """
    if m.factors != 2:
        raise ValueError("aux_blocks expects a matrix on V (x) V")
    blocks = {}
    for i in (1, 2, 3):
        for k in (1, 2, 3):
            b = GradedMatrix(1)
            pk = PARITY[k]
            for j in (1, 2, 3):
                for l in (1, 2, 3):
                    v = m[( (i, j), (k, l) )]
                    if pk and (PARITY[j] + PARITY[l]) % 2:
                        v = -v
                    b.rows[j - 1][l - 1] = v
            blocks[(i, k)] = b
    return blocks


def partial_transpose_first(m: GradedMatrix) -> GradedMatrix:
    """Super transposition in the first tensor factor of V (x) V."""
    blocks = aux_blocks(m)
    out = GradedMatrix(2)
    for (i, k), b in blocks.items():
        if b.is_zero():
            continue
        out = out + graded_kron(super_transpose(elementary(i, k)), b)
    return out


def mat_inverse_3(a: GradedMatrix) -> GradedMatrix:
    """Exact inverse of a 3x3 matrix via the adjugate; raises on singular."""
    if a.factors != 1:
        raise ValueError("mat_inverse_3 expects a 3x3 matrix")
    r = a.rows
    det = (
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    )
    if det == 0:
        raise ZeroDivisionError("matrix is singular")
    cof = [
        [
            r[1][1] * r[2][2] - r[1][2] * r[2][1],
            -(r[1][0] * r[2][2] - r[1][2] * r[2][0]),
            r[1][0] * r[2][1] - r[1][1] * r[2][0],
        ],
        [
            -(r[0][1] * r[2][2] - r[0][2] * r[2][1]),
            r[0][0] * r[2][2] - r[0][2] * r[2][0],
            -(r[0][0] * r[2][1] - r[0][1] * r[2][0]),
        ],
        [
            r[0][1] * r[1][2] - r[0][2] * r[1][1],
            -(r[0][0] * r[1][2] - r[0][2] * r[1][0]),
            r[0][0] * r[1][1] - r[0][1] * r[1][0],
        ],
    ]
    inv = [[cof[j][i] / det for j in range(3)] for i in range(3)]
    return GradedMatrix(1, inv)
