"""Exact arithmetic in the real quadratic tower Q(sqrt2, sqrt3).

Elements are stored as a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational
coefficients.  All comparisons go through an exact sign routine, so no
floating point is ever consulted for a decision.  Floats are available
only as a convenience embedding for display.

The module also carries the small amount of exact linear algebra the rest
of the package needs: vectors, matrices, Gaussian elimination (rank,
determinant, nullspace, solving), and a phase-1 simplex for feasibility
questions over the field.  Everything works verbatim over Fraction as
well, since Fraction supports the same operator protocol.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Rat = Fraction

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_SQRT6 = math.sqrt(6.0)


def _sign_rat(q: Rat) -> int:
    return (q > 0) - (q < 0)


def _sign_q2(a: Rat, b: Rat) -> int:
    """Exact sign of a + b*sqrt2."""
    if b == 0:
        return _sign_rat(a)
    if a == 0:
        return _sign_rat(b)
    sa, sb = _sign_rat(a), _sign_rat(b)
    if sa == sb:
        return sa
    # opposite signs: |a| vs |b|*sqrt2 decided by squaring
    return _sign_rat(a * a - 2 * b * b) * sa


class FieldElem:
    """An element of Q(sqrt2, sqrt3)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))
        object.__setattr__(self, "d", Fraction(d))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    @classmethod
    def sqrt2(cls) -> "FieldElem":
        return cls(0, 1, 0, 0)

    @classmethod
    def sqrt3(cls) -> "FieldElem":
        return cls(0, 0, 1, 0)

    @classmethod
    def sqrt6(cls) -> "FieldElem":
        return cls(0, 0, 0, 1)

    def coeffs(self):
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash(self.coeffs())

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElem(self.a + other.a, self.b + other.b,
                         self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a1, b1, c1, d1 = self.coeffs()
        a2, b2, c2, d2 = other.coeffs()
        return FieldElem(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def conj_sqrt2(self) -> "FieldElem":
        """Galois conjugate negating sqrt2 (and hence sqrt6)."""
        return FieldElem(self.a, -self.b, self.c, -self.d)

    def conj_sqrt3(self) -> "FieldElem":
        """Galois conjugate negating sqrt3 (and hence sqrt6)."""
        return FieldElem(self.a, self.b, -self.c, -self.d)

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # x * conj2(x) lies in Q(sqrt3); multiplying by its sqrt3-conjugate
        # lands in Q, so the product of the three conjugates over the norm
        # is the inverse.
        y = self * self.conj_sqrt2()
        norm = y * y.conj_sqrt3()
        assert norm.is_rational() and norm.a != 0
        return self.conj_sqrt2() * y.conj_sqrt3() * FieldElem(1 / norm.a)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}.

        Writing x = p + q*sqrt3 with p, q in Q(sqrt2), the sign reduces to
        signs in Q(sqrt2): when p and q disagree in sign the comparison
        p^2 vs 3*q^2 settles it, and p^2 - 3*q^2 again lives in Q(sqrt2).
        """
        pa, pb = self.a, self.b
        qa, qb = self.c, self.d
        if qa == 0 and qb == 0:
            return _sign_q2(pa, pb)
        if pa == 0 and pb == 0:
            return _sign_q2(qa, qb)
        sp = _sign_q2(pa, pb)
        sq = _sign_q2(qa, qb)
        if sp == sq:
            return sp
        # p^2 - 3 q^2 in Q(sqrt2); it cannot vanish since sqrt3 is not in
        # Q(sqrt2).
        ta = pa * pa + 2 * pb * pb - 3 * (qa * qa + 2 * qb * qb)
        tb = 2 * pa * pb - 6 * qa * qb
        s = _sign_q2(ta, tb)
        assert s != 0
        return s * sp

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return (float(self.a) + float(self.b) * _SQRT2
                + float(self.c) * _SQRT3 + float(self.d) * _SQRT6)

    def __repr__(self):
        parts = []
        for coeff, tag in zip(self.coeffs(), ("", "*s2", "*s3", "*s6")):
            if coeff:
                parts.append(f"{coeff}{tag}")
        return "FE(" + (" + ".join(parts) if parts else "0") + ")"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b),
                "c": str(self.c), "d": str(self.d)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldElem":
        return cls(Fraction(data["a"]), Fraction(data["b"]),
                   Fraction(data["c"]), Fraction(data["d"]))


def _coerce(x):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElem(x)
    return NotImplemented


ZERO = FieldElem(0)
ONE = FieldElem(1)

# A vector is a tuple of FieldElem; a matrix is a list of row lists.
Vec = tuple
Mat = list


def vec(*entries) -> Vec:
    return tuple(e if isinstance(e, FieldElem) else FieldElem(e) for e in entries)


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(s: FieldElem, u: Vec) -> Vec:
    return tuple(s * a for a in u)


def vec_dot(u: Vec, v: Vec) -> FieldElem:
    acc = ZERO
    for a, b in zip(u, v, strict=True):
        acc = acc + a * b
    return acc


def vec_is_zero(u: Vec) -> bool:
    return all(a.is_zero() for a in u)


def mat_identity(n: int) -> Mat:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(m1: Mat, m2: Mat) -> Mat:
    cols = list(zip(*m2))
    return [[vec_dot(tuple(row), col) for col in cols] for row in m1]


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(vec_dot(tuple(row), v) for row in m)


def mat_transpose(m: Mat) -> Mat:
    return [list(col) for col in zip(*m)]


def mat_pow(m: Mat, k: int) -> Mat:
    out = mat_identity(len(m))
    for _ in range(k):
        out = mat_mul(m, out)
    return out


def _echelon(rows: Mat):
    """Row-reduce a copy of `rows`; returns (rref rows, pivot columns)."""
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if work[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = ONE / work[r][col] if isinstance(work[r][col], FieldElem) else 1 / work[r][col]
        work[r] = [x * inv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return work, pivots


def mat_rank(m: Mat) -> int:
    if not m:
        return 0
    return len(_echelon(m)[1])


def mat_rref(m: Mat):
    return _echelon(m)


def mat_det(m: Mat) -> FieldElem:
    n = len(m)
    work = [list(r) for r in m]
    zero = work[0][0] - work[0][0]
    det = zero + 1
    sign_flip = 1
    for col in range(n):
        pivot_row = None
        for i in range(col, n):
            if work[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            return zero
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            sign_flip = -sign_flip
        p = work[col][col]
        det = det * p
        for i in range(col + 1, n):
            if work[i][col]:
                f = work[i][col] / p
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    return det if sign_flip == 1 else -det


def mat_nullspace(m: Mat) -> list[Vec]:
    """Basis of {x : m @ x = 0}; free variables set to one in column order."""
    if not m:
        return []
    ncols = len(m[0])
    rref, pivots = _echelon(m)
    pivot_set = set(pivots)
    zero = m[0][0] - m[0][0]
    one = zero + 1 if not isinstance(zero, FieldElem) else ONE
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][free]
        basis.append(tuple(v))
    return basis


def mat_solve(m: Mat, rhs: Vec):
    """One exact solution of m @ x = rhs, or None if inconsistent."""
    aug = [list(row) + [b] for row, b in zip(m, rhs, strict=True)]
    rref, pivots = _echelon(aug)
    ncols = len(m[0])
    if ncols in pivots:
        return None
    zero = m[0][0] - m[0][0]
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][-1]
    return tuple(x)


def rotation_12() -> Mat:
    """Quarter turn in the first two coordinates of R^5 (order four)."""
    m = mat_identity(5)
    m[0][0], m[0][1] = ZERO, FieldElem(-1)
    m[1][0], m[1][1] = ONE, ZERO
    return m


def rotation_34() -> Mat:
    """Sixth turn in coordinates three and four of R^5 (order six)."""
    half = FieldElem(Fraction(1, 2))
    s3half = FieldElem(0, 0, Fraction(1, 2), 0)
    m = mat_identity(5)
    m[2][2], m[2][3] = half, -s3half
    m[3][2], m[3][3] = s3half, half
    return m


def reflection_e4() -> Mat:
    """Reflection negating the fourth coordinate of R^5."""
    m = mat_identity(5)
    m[3][3] = FieldElem(-1)
    return m


def lp_feasible(eq_rows: Sequence[Sequence[FieldElem]], rhs: Sequence[FieldElem]) -> bool:
    """Exact feasibility of {x >= 0 : A x = b} by phase-1 simplex.

    Bland's rule keeps the pivoting finite and deterministic.  Works for
    FieldElem or Fraction entries.
    """
    if not eq_rows:
        return True
    m = len(eq_rows)
    n = len(eq_rows[0])
    zero = eq_rows[0][0] - eq_rows[0][0]
    one = zero + 1 if not isinstance(zero, FieldElem) else ONE

    # tableau rows: [A | I | b] with b >= 0, artificial basis
    tab = []
    for row, b in zip(eq_rows, rhs, strict=True):
        r = list(row)
        bb = b
        if _sign_of(bb) < 0:
            r = [-x for x in r]
            bb = -bb
        tab.append(r + [zero] * m + [bb])
    for i in range(m):
        tab[i][n + i] = one
    basis = list(range(n, n + m))
    # objective: minimize sum of artificials; reduced cost row is the
    # artificial costs minus the sum of the tableau rows
    cost = [zero] * (n + m + 1)
    for i in range(m):
        cost = [c - t for c, t in zip(cost, tab[i])]
    for j in range(n, n + m):
        cost[j] = cost[j] + one

    while True:
        enter = None
        for j in range(n + m):
            if _sign_of(cost[j]) < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if _sign_of(tab[i][enter]) > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or _sign_of(ratio - best) < 0 or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave is None:
            # phase-1 objective is bounded below by zero, so this cannot
            # happen; guard anyway
            raise ArithmeticError("unbounded phase-1 simplex")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and _sign_of(tab[i][enter]) != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if _sign_of(cost[enter]) != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter

    # optimum of the artificial objective is -cost[-1]
    return _sign_of(cost[-1]) == 0


def _sign_of(x) -> int:
    if isinstance(x, FieldElem):
        return x.sign()
    return (x > 0) - (x < 0)


def in_convex_hull(point: Vec, points: Sequence[Vec]) -> bool:
    """Is `point` a convex combination of `points`?  Exact."""
    if not points:
        return False
    dim = len(point)
    rows = [[p[i] for p in points] for i in range(dim)]
    one = ONE if isinstance(point[0], FieldElem) else Fraction(1)
    rows.append([one] * len(points))
    rhs = list(point) + [one]
    return lp_feasible(rows, rhs)


def in_cone(point: Vec, rays: Sequence[Vec]) -> bool:
    """Is `point` a nonnegative combination of `rays`?  Exact."""
    if not rays:
        return vec_is_zero(point)
    dim = len(point)
    rows = [[r[i] for r in rays] for i in range(dim)]
    return lp_feasible(rows, list(point))
