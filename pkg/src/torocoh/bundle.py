"""Homogeneous line bundles rho = e(d) on a toroidal group.

``d`` is given on the generators e_1..e_n, s_1..s_m.  Normalization
replaces d by an equivalent real homomorphism vanishing on e_{m+1}..e_n;
the bundle invariants are then

    alpha = d_e' - i (d_s - d_e' A_1) C_1,   beta = pi i conj(alpha),
    d(L)  = i conj(alpha) C_1^-1.

``beta`` is stored divided by pi so that everything stays in the exact
field; multiply by pi for the actual value.
"""
import math
from dataclasses import dataclass

from .errors import ValidationError
from .scalars import linalg
from .scalars.field import ComplexElement
from .torus import PeriodMatrix, apply_vector, coord_map, coordinate_coefficients, dbar_vector
from .torus import _complex_entry, _descriptors


@dataclass(frozen=True)
class Homomorphism:
    """Values of d on e_1..e_n (``d_e``) and s_1..s_m (``d_s``), as ComplexElements."""

    d_e: tuple
    d_s: tuple

    @classmethod
    def from_entries(cls, group, d_e, d_s):
        f = group.field
        de = tuple(_complex_entry(f, x) for x in d_e)
        ds = tuple(_complex_entry(f, x) for x in d_s)
        if len(de) != group.n or len(ds) != group.m:
            raise ValidationError(f"need {group.n} values on e and {group.m} on s")
        return cls(de, ds)

    @property
    def is_real(self):
        return all(x.im.is_identically_zero() for x in self.d_e + self.d_s)

    def values(self):
        return self.d_e + self.d_s


def make_instance(n, m, S, d_e, d_s):
    """Period matrix and homomorphism over one shared field."""
    extra = [d for x in list(d_e) + list(d_s) for d in _descriptors(x)]
    P = PeriodMatrix.from_entries(n, m, S, extra=extra)
    return P, Homomorphism.from_entries(P, d_e, d_s)


@dataclass(frozen=True)
class NormalizationCertificate:
    integer_shift: tuple  # integers subtracted from Re d(e_{m+1..n})
    ell0: tuple  # real C-linear form killing Re d(e_{m+j})
    k_e: tuple  # R-linear form k on e_1..e_n
    k_s: tuple  # and on s_1..s_n (zero beyond m)
    ell1: tuple  # ell(v) = k(i v) + i k(v), as coefficients on z
    d_tilde: tuple

    @property
    def ell(self):
        return tuple(a + b for a, b in zip(self.ell0, self.ell1))

    def k(self, t):
        """k on a vector given by its real coordinates t."""
        n = len(self.k_e)
        return linalg._dot(self.k_e, t[:n]) + linalg._dot(self.k_s, t[n:])


def _ell_at(coeffs, v):
    total = None
    for c, x in zip(coeffs, v):
        t = c * x
        total = t if total is None else total + t
    return total


def normalize(d, frame):
    """Equivalent real homomorphism with d(e_{m+j}) = 0, plus its certificate."""
    P = frame.group
    n, m, f = P.n, P.m, P.field
    # integer parts of Re d(e_{m+j}) do not change rho
    shift = []
    de = list(d.d_e)
    for j in range(m, n):
        re = de[j].re
        s = math.floor(re.rational_value()) if re.is_rational() else 0
        shift.append(s)
        de[j] = de[j] - s
    ds = list(d.d_s)
    # step 1: remove the real parts on e_{m+j} with a real C-linear form
    ell0 = [f.zero] * m + [de[j].re for j in range(m, n)]
    ell0 = tuple(ComplexElement(x) for x in ell0)
    cols = [P.column(j) for j in range(n)]
    d1_e = [de[j] - _ell_at(ell0, _unit(f, n, j)) for j in range(n)]
    d1_s = [ds[j] - _ell_at(ell0, cols[j]) for j in range(m)]
    # step 2: k = Im d1, extended R-linearly with k(s_{m+j}) = 0
    k_e = [x.im for x in d1_e]
    k_s = [x.im for x in d1_s] + [f.zero] * (n - m)
    ell1 = []
    for c in range(n):
        # i*e_c in real coordinates: t' = -(AC) e_c, t'' = C e_c
        k_ie = None
        for j in range(n):
            term = k_s[j] * frame.C[j][c] - k_e[j] * frame.AC[j][c]
            k_ie = term if k_ie is None else k_ie + term
        ell1.append(ComplexElement(k_ie, k_e[c]))
    ell1 = tuple(ell1)
    dt_e = [d1_e[j] - _ell_at(ell1, _unit(f, n, j)) for j in range(n)]
    dt_s = [d1_s[j] - _ell_at(ell1, cols[j]) for j in range(m)]
    for x in dt_e + dt_s:
        if not x.im.is_identically_zero() and f.certified:
            raise AssertionError("normalization left an imaginary part")
    dt = Homomorphism(tuple(ComplexElement(x.re) for x in dt_e), tuple(ComplexElement(x.re) for x in dt_s))
    cert = NormalizationCertificate(
        tuple(shift), ell0, tuple(k_e), tuple(k_s), ell1, dt.values()
    )
    return dt, cert


def _unit(f, n, j):
    return [ComplexElement(f.one if i == j else f.zero) for i in range(n)]


def check_ell_linearity(cert, frame):
    """ell1(v) = k(i v) + i k(v) on the 2n real basis vectors, exactly."""
    P = frame.group
    n, f = P.n, P.field
    basis = [_unit(f, n, j) for j in range(n)] + [P.column(j) for j in range(n)]
    out = []
    for v in basis:
        lhs = _ell_at(cert.ell1, v)
        tv = coord_map(frame, "z->t", v)
        tiv = coord_map(frame, "z->t", [z.times_i() for z in v])
        rhs = ComplexElement(cert.k(tiv), cert.k(tv))
        out.append((lhs - rhs).is_identically_zero())
    return out


@dataclass(frozen=True)
class BundleInvariants:
    d: Homomorphism
    a_coeffs: tuple  # coefficients of t_1..t_m then t_{n+1}..t_{n+m}
    alpha: tuple
    beta_over_pi: tuple
    dL: tuple
    trivial: bool

    @property
    def m(self):
        return len(self.alpha)

    def beta(self):
        """beta as complex floats."""
        return [math.pi * complex(b) for b in self.beta_over_pi]

    def a_vector(self, n):
        """a(t) as a full length-2n coefficient vector."""
        m = self.m
        f = self.a_coeffs[0].field
        out = [f.zero] * (2 * n)
        for i in range(m):
            out[i] = self.a_coeffs[i]
            out[n + i] = self.a_coeffs[m + i]
        return out


def invariants(d, frame):
    """alpha, beta/pi, d(L) and the summand a(t) of a normalized homomorphism."""
    P = frame.group
    n, m = P.n, P.m
    if not d.is_real:
        raise ValidationError("normalize the homomorphism first")
    for j in range(m, n):
        if not d.d_e[j].is_identically_zero():
            raise ValidationError("d(e_{m+j}) must vanish after normalization")
    de1 = [d.d_e[i].re for i in range(m)]
    ds = [d.d_s[i].re for i in range(m)]
    A1, C1 = frame.A1, frame.C1
    inner = [x - y for x, y in zip(ds, linalg.vecmat(de1, A1))]
    im_part = linalg.vecmat(inner, C1)
    alpha = tuple(ComplexElement(de1[j], -im_part[j]) for j in range(m))
    beta = tuple(a.conjugate().times_i() for a in alpha)
    dL = tuple(linalg.vecmat(list(beta), [[ComplexElement(x) for x in row] for row in frame.C1_inverse]))
    a_coeffs = tuple([-x for x in de1] + [-x for x in ds])
    trivial = all(a.is_identically_zero() for a in alpha) or all(
        x.re.is_rational() and x.re.rational_value().denominator == 1 for x in d.values()
    )
    return BundleInvariants(d, a_coeffs, alpha, beta, dL, trivial)


def summand(inv, t):
    """a(t) = -sum d(e_i) t_i - sum d(s_i) t_{n+i} (i <= m) at a real 2n-vector t."""
    n = len(t) // 2
    return linalg._dot(inv.a_vector(n), list(t))


def check_cocycle(inv, frame):
    """a(t + gamma) + d(gamma) - a(t) = 0 for every generator; list of (name, ok)."""
    n, m = frame.n, frame.m
    a = inv.a_vector(n)
    out = []
    for i in range(n):
        # e_i shifts t_i by one
        val = a[i] + inv.d.d_e[i].re
        out.append((f"e{i + 1}", val.is_identically_zero()))
    for i in range(m):
        val = a[n + i] + inv.d.d_s[i].re
        out.append((f"s{i + 1}", val.is_identically_zero()))
    return out


def check_alpha_identity(inv, frame):
    """-a(t) = (1/2) sum (alpha_j z_j + conj(alpha_j) conj(z_j)), coefficientwise in t."""
    n = frame.n
    a = inv.a_vector(n)
    rhs = [ComplexElement(frame.group.field.zero)] * (2 * n)
    for j, al in enumerate(inv.alpha):
        zc = coordinate_coefficients(frame, j)
        rhs = [r + al * c for r, c in zip(rhs, zc)]
    ok = []
    for k in range(2 * n):
        # alpha z + conj(alpha z) = 2 Re(alpha z)
        ok.append((rhs[k].re + a[k]).is_identically_zero())
    return all(ok)


def check_fiber_holomorphic(inv, frame):
    """d a / d zbar_i = 0 for i = m+1..n."""
    n = frame.n
    a = [ComplexElement(x) for x in inv.a_vector(n)]
    return all(apply_vector(dbar_vector(frame, i), a).is_identically_zero() for i in range(frame.m + 1, n + 1))
