"""Toroidal groups X = C^n / Gamma with period matrix (I_n  S).

The real frame: ``s_j`` are the columns of S for j <= m and ``i*e_j``
for j > m; ``A = Re(s_1..s_n)``, ``B = Im(s_1..s_n)``, ``C = B^-1``.
Real coordinates are ``t_j = x_j - sum_k (AC)_jk y_k`` and
``t_{n+j} = sum_k c_jk y_k``, so every lattice generator is a unit vector.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import SingularBError, ValidationError
from .scalars import linalg
from .scalars.field import ComplexElement, build_field


def _complex_entry(fld, entry):
    if isinstance(entry, ComplexElement):
        return ComplexElement(fld(entry.re), fld(entry.im))
    if isinstance(entry, tuple) and len(entry) == 2:
        return ComplexElement(fld(entry[0]), fld(entry[1]))
    return ComplexElement(fld(entry), fld.zero)


def _descriptors(entry):
    if isinstance(entry, tuple):
        return list(entry)
    if isinstance(entry, ComplexElement):
        return []
    return [entry]


@dataclass(frozen=True)
class PeriodMatrix:
    """First normal form ``P = (I_n  S)`` with S an n x m complex matrix.

    ``S[i][j]`` is a ComplexElement over ``field``.  Build one with
    :meth:`from_entries` from (re, im) descriptor pairs.
    """

    n: int
    m: int
    S: tuple
    field: object

    def __post_init__(self):
        if not (1 <= self.m <= self.n):
            raise ValidationError("need 1 <= m <= n")
        if len(self.S) != self.n or any(len(row) != self.m for row in self.S):
            raise ValidationError(f"S must be {self.n} x {self.m}")
        im_s1 = [[self.S[i][j].im for j in range(self.m)] for i in range(self.m)]
        if _provably_singular(im_s1):
            raise ValidationError("det Im(S_1) = 0")

    @classmethod
    def from_entries(cls, n, m, entries, field=None, extra=()):
        """``entries[i][j]`` is a (re, im) pair of scalar descriptors (or a
        bare descriptor for a real entry).  ``extra`` lists further
        descriptors (e.g. bundle data) that must share the field."""
        if field is None:
            descs = [d for row in entries for e in row for d in _descriptors(e)]
            field = build_field(descs + list(extra))
        S = tuple(tuple(_complex_entry(field, e) for e in row) for row in entries)
        return cls(n, m, S, field)

    @property
    def S1(self):
        return [list(self.S[i]) for i in range(self.m)]

    @property
    def certified(self):
        return self.field.certified

    def column(self, j):
        """The lattice generator s_j (0-based j < n) as a list of n complex entries."""
        if j < self.m:
            return [self.S[i][j] for i in range(self.n)]
        f = self.field
        return [ComplexElement(f.zero, f.one if i == j else f.zero) for i in range(self.n)]

    def to_numpy(self):
        return np.array([[complex(z) for z in row] for row in self.S], dtype=complex)


def _provably_singular(mat):
    """True only for exact data; float data is left to build_frame."""
    try:
        linalg.inverse(mat)
    except SingularBError:
        return mat[0][0].field.certified
    return False


@dataclass(frozen=True)
class RealCoordFrame:
    group: PeriodMatrix
    A: tuple
    B: tuple
    C: tuple
    AC: tuple

    @property
    def n(self):
        return self.group.n

    @property
    def m(self):
        return self.group.m

    @property
    def A1(self):
        return linalg.block(self.A, self.m, self.m)

    @property
    def C1(self):
        return linalg.block(self.C, self.m, self.m)

    @property
    def C1_inverse(self):
        return linalg.inverse(self.C1)

    def numeric(self):
        """(A, B, C) as float arrays."""
        conv = lambda M: np.array([[float(x) for x in row] for row in M])
        return conv(self.A), conv(self.B), conv(self.C)


def build_frame(P):
    """Real frame (A, B, C = B^-1) of a period matrix, computed exactly."""
    cols = [P.column(j) for j in range(P.n)]
    A = [[cols[j][i].re for j in range(P.n)] for i in range(P.n)]
    B = [[cols[j][i].im for j in range(P.n)] for i in range(P.n)]
    C = linalg.inverse(B)
    AC = linalg.matmul(A, C)
    tup = lambda M: tuple(tuple(r) for r in M)
    return RealCoordFrame(P, tup(A), tup(B), tup(C), tup(AC))


def _to_pair(z, fld):
    if isinstance(z, ComplexElement):
        return z.re, z.im
    if isinstance(z, (int, Fraction)):
        return fld(z), fld.zero
    if isinstance(z, tuple):
        return fld(z[0]), fld(z[1])
    raise TypeError(f"unsupported coordinate {z!r}")


def coord_map(frame, direction, point):
    """Map between complex coordinates z (n entries) and real t (2n entries).

    Exact inputs (ComplexElement / field elements / Fractions) give exact
    results; Python floats and complex numbers are handled in float64.
    """
    n = frame.n
    numeric = any(isinstance(p, (float, complex, np.floating, np.complexfloating)) for p in point)
    if direction in ("z->t", "z→t"):
        if len(point) != n:
            raise ValidationError(f"z needs {n} entries")
        if numeric:
            A, B, C = frame.numeric()
            z = np.asarray(point, dtype=complex)
            x, y = z.real, z.imag
            return np.concatenate([x - A @ C @ y, C @ y])
        fld = frame.group.field
        pairs = [_to_pair(p, fld) for p in point]
        x = [p[0] for p in pairs]
        y = [p[1] for p in pairs]
        acy = linalg.matvec(frame.AC, y)
        cy = linalg.matvec(frame.C, y)
        return [xi - v for xi, v in zip(x, acy)] + cy
    if direction in ("t->z", "t→z"):
        if len(point) != 2 * n:
            raise ValidationError(f"t needs {2 * n} entries")
        if numeric:
            A, B, _ = frame.numeric()
            t = np.asarray(point, dtype=float)
            return t[:n] + A @ t[n:] + 1j * (B @ t[n:])
        fld = frame.group.field
        t = [fld(v) if not hasattr(v, "field") else v for v in point]
        y = linalg.matvec(frame.B, t[n:])
        at = linalg.matvec(frame.A, t[n:])
        return [ComplexElement(t[k] + at[k], y[k]) for k in range(n)]
    raise ValidationError(f"unknown direction {direction!r}")


def dbar_vector(frame, j):
    """Coefficients of d/dzbar_j on d/dt_1 .. d/dt_2n (j is 1-based)."""
    n = frame.n
    if not 1 <= j <= n:
        raise ValidationError(f"j must be in 1..{n}")
    f = frame.group.field
    half = Fraction(1, 2)
    jj = j - 1
    out = []
    for k in range(n):
        re = f(half) if k == jj else f.zero
        out.append(ComplexElement(re, -frame.AC[k][jj] * half))
    for k in range(n):
        out.append(ComplexElement(f.zero, frame.C[k][jj] * half))
    return out


def coordinate_coefficients(frame, k, conjugate=False):
    """z_k (or conj z_k) as a linear form in t_1..t_2n."""
    f = frame.group.field
    n = frame.n
    out = [ComplexElement(f.one if i == k else f.zero) for i in range(n)]
    sgn = -1 if conjugate else 1
    for l in range(n):
        out.append(ComplexElement(frame.A[k][l], frame.B[k][l] * sgn))
    return out


def apply_vector(vec, linear_form):
    """Pair a tangent vector with a linear form in t (both length 2n)."""
    total = None
    for a, b in zip(vec, linear_form):
        t = a * b
        total = t if total is None else total + t
    return total


# --------------------------------------------------------------------------
# Irrationality condition


@dataclass
class IrrationalityReport:
    status: str
    tau: tuple = None
    search_bound: int = 0
    method: str = ""
    notes: list = field(default_factory=list)

    @property
    def holds(self):
        return self.status in ("certified_holds", "evidence_holds")

    def to_json(self):
        return {
            "status": self.status,
            "tau": list(self.tau) if self.tau is not None else None,
            "search_bound": self.search_bound,
            "method": self.method,
        }


def shell(dim, radius):
    """Integer vectors of l1-norm exactly ``radius``, in a fixed order:
    first nonzero entry positive ones first, then lexicographic."""
    out = []

    def rec(prefix, left, slots):
        if slots == 0:
            if left == 0:
                out.append(tuple(prefix))
            return
        for a in range(-left, left + 1):
            rec(prefix + [a], left - abs(a), slots - 1)

    rec([], radius, dim)
    return out


def _tau_order(v):
    first = next((x for x in v if x != 0), 0)
    return (0 if first > 0 else 1, tuple(-x if first < 0 else x for x in v), v)


def _tau_violates(P, tau):
    """Exact test of tau*S in Z^m."""
    for j in range(P.m):
        z = None
        for i in range(P.n):
            if tau[i]:
                t = P.S[i][j] * tau[i]
                z = t if z is None else z + t
        if z is None:
            continue
        if not z.im.is_identically_zero() or not z.re.is_rational():
            return False
        if z.re.rational_value().denominator != 1:
            return False
    return True


def _search(P, bound, test):
    for r in range(1, bound + 1):
        for tau in sorted(shell(P.n, r), key=_tau_order):
            first = next(x for x in tau if x != 0)
            if first < 0:
                continue
            if test(tau):
                return tau
    return None


def _float_violates(P, tau):
    """Whether the enclosure of tau*S is compatible with an integer vector."""
    for j in range(P.m):
        z = None
        for i in range(P.n):
            if tau[i]:
                t = P.S[i][j] * tau[i]
                z = t if z is None else z + t
        if z is None:
            continue
        im = z.im.interval()
        re = z.re.interval()
        if not im.contains_zero():
            return False
        if math.floor(re.hi) < re.lo:
            return False
    return True


def _linear_relations(P):
    """Rational equations in (tau, w) equivalent to tau*S - w = 0."""
    rows = []
    for j in range(P.m):
        for part in ("re", "im"):
            elems = [getattr(P.S[i][j], part) for i in range(P.n)]
            elems.append(P.field.one if part == "re" else P.field.zero)
            coords = linalg.linearize(elems)
            width = len(coords[0])
            for c in range(width):
                row = [coords[i][c] for i in range(P.n)] + [Fraction(0)] * P.m
                row[P.n + j] = -coords[P.n][c]
                rows.append(row)
    return rows


def check_irrationality(P, tau_bound=6):
    """Decide (IS): tau*S is never an integer vector for tau in Z^n minus 0."""
    if tau_bound < 1:
        raise ValidationError("tau_bound must be >= 1")
    if not P.field.certified:
        hit = _search(P, tau_bound, lambda t: _float_violates(P, t))
        if hit is None:
            return IrrationalityReport("evidence_holds", None, tau_bound, "bounded search")
        return IrrationalityReport(
            "unknown", hit, tau_bound, "bounded search",
            ["float data cannot certify tau*S integral"],
        )
    rows = _linear_relations(P)
    basis = linalg.nullspace(rows) if rows else []
    witnesses = [v[: P.n] for v in basis if any(v[: P.n])]
    if not witnesses:
        return IrrationalityReport("certified_holds", None, tau_bound, "rational linearization")
    hit = _search(P, tau_bound, lambda t: _tau_violates(P, t))
    if hit is not None:
        return IrrationalityReport("certified_fails", hit, tau_bound, "exhaustive search")
    tau = _integer_solution(P, basis)
    return IrrationalityReport("certified_fails", tau, tau_bound, "rational linearization")


def _integer_solution(P, basis):
    """An integral tau from the rational solution space (clearing denominators)."""
    for v in basis:
        tau = tuple(int(x) for x in v[: P.n])
        if any(tau):
            first = next(x for x in tau if x)
            tau = tuple(-x for x in tau) if first < 0 else tau
            k = 1
            while not _tau_violates(P, tuple(k * x for x in tau)):
                k += 1
            return tuple(k * x for x in tau)
    return None
