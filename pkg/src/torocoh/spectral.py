"""Spectral shifts of Fourier modes sigma = (sigma', sigma'', sigma''').

    K_sigma = (sigma', sigma'') S - sigma'''
    Ktilde_sigma + beta = pi (K_sigma + d(L)) C_1

Shifted vectors are stored divided by pi (exact field arithmetic); the
pivot j(sigma) is the first index of maximal modulus.
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError, UndecidedTieError, ValidationError
from .scalars import linalg
from .scalars.field import ComplexElement
from .scalars.interval import Interval
from .scalars.sign import Sign, cert_sign, positive_enclosure
from .torus import shell

# rational enclosure of pi
PI_LO = Fraction(314159265358979, 10 ** 14)
PI_HI = Fraction(314159265358980, 10 ** 14)


@dataclass(frozen=True)
class LatticeIndex:
    sigma: tuple
    n: int
    m: int

    def __post_init__(self):
        if len(self.sigma) != self.n + self.m:
            raise ValidationError(f"sigma needs {self.n + self.m} entries")
        object.__setattr__(self, "sigma", tuple(int(x) for x in self.sigma))

    @property
    def prime(self):
        return self.sigma[: self.m]

    @property
    def dprime(self):
        return self.sigma[self.m : self.n]

    @property
    def tprime(self):
        return self.sigma[self.n :]

    @property
    def norm(self):
        return sum(abs(x) for x in self.sigma)

    @property
    def torus_norm(self):
        """|(sigma', sigma'')|_1."""
        return sum(abs(x) for x in self.sigma[: self.n])

    @property
    def dprime_norm(self):
        return sum(abs(x) for x in self.dprime)


@dataclass(frozen=True)
class SpectralShift:
    sigma: tuple
    K: tuple
    Ktilde_over_pi: tuple
    shifted_over_pi: tuple  # (Ktilde + beta) / pi
    residual: tuple  # K + d(L)
    pivot: int  # 1-based

    def pivot_value_over_pi(self):
        return self.shifted_over_pi[self.pivot - 1]


@dataclass(frozen=True)
class ZSet:
    """The index set Z: the whole lattice, or the lattice minus sigma_0."""

    sigma0: tuple = None
    certified: bool = True
    residual: object = None
    notes: tuple = ()

    @property
    def full(self):
        return self.sigma0 is None

    def __contains__(self, sigma):
        return self.sigma0 is None or tuple(sigma) != tuple(self.sigma0)

    def to_json(self):
        return {
            "sigma0": list(self.sigma0) if self.sigma0 is not None else None,
            "certified": self.certified,
            "full_lattice": self.full,
        }


class SpectralContext:
    """Group, frame and bundle invariants with cached exact and float data."""

    def __init__(self, group, frame, inv):
        self.group = group
        self.frame = frame
        self.inv = inv
        self.n, self.m = group.n, group.m
        f = group.field
        self.field = f
        self.C1 = [[ComplexElement(x) for x in row] for row in frame.C1]
        self.dL = list(inv.dL)
        self.S = group.S
        self._rows = None
        self._basis = None
        self._shifts = {}
        self.S_np = group.to_numpy()
        self.C1_np = np.array([[float(x) for x in row] for row in frame.C1])
        self.dL_np = np.array([complex(z) for z in self.dL])
        self.beta_over_pi_np = np.array([complex(b) for b in inv.beta_over_pi])

    @property
    def certified(self):
        return self.field.certified

    def index(self, sigma):
        return LatticeIndex(tuple(sigma), self.n, self.m)

    # exact ---------------------------------------------------------------
    def K(self, sigma):
        n, m = self.n, self.m
        out = []
        for k in range(m):
            z = ComplexElement(self.field(-sigma[n + k]))
            for l in range(n):
                if sigma[l]:
                    z = z + self.S[l][k] * sigma[l]
            out.append(z)
        return out

    def residual(self, sigma):
        """K_sigma + d(L)."""
        return [a + b for a, b in zip(self.K(sigma), self.dL)]

    def times_C1(self, v):
        return linalg.vecmat(v, self.C1)

    def basis_images(self):
        """K(e_i) C_1 for each unit vector e_i, and d(L) C_1."""
        if self._basis is None:
            size = self.n + self.m
            units = [tuple(int(i == k) for i in range(size)) for k in range(size)]
            self._basis = ([self.times_C1(self.K(e)) for e in units], self.times_C1(self.dL))
        return self._basis

    def Ktilde_over_pi(self, sigma):
        """K_sigma C_1, assembled from the cached unit-vector images."""
        images, _ = self.basis_images()
        out = [ComplexElement(self.field.zero) for _ in range(self.m)]
        for s, img in zip(sigma, images):
            if s:
                out = [a + b * s for a, b in zip(out, img)]
        return out

    # numeric -------------------------------------------------------------
    def residual_np(self, sigma):
        s = np.asarray(sigma[: self.n], dtype=float)
        return s @ self.S_np - np.asarray(sigma[self.n :], dtype=float) + self.dL_np

    def shifted_np(self, sigma):
        """(Ktilde + beta) / pi in complex128."""
        return self.residual_np(sigma) @ self.C1_np

    # exact linear structure ---------------------------------------------
    def linear_rows(self):
        """Rational (R, r) with K_sigma + d(L) = 0 iff R sigma + r = 0."""
        if self._rows is None:
            n, m = self.n, self.m
            rows, rhs = [], []
            for k in range(m):
                for part in ("re", "im"):
                    elems = [getattr(self.S[l][k], part) for l in range(n)]
                    elems += [self.field.one if part == "re" else self.field.zero]
                    elems.append(getattr(self.dL[k], part))
                    coords = linalg.linearize(elems)
                    for c in range(len(coords[0])):
                        row = [coords[l][c] for l in range(n)] + [Fraction(0)] * m
                        row[n + k] = -coords[n][c]
                        rows.append(row)
                        rhs.append(coords[n + 1][c])
            self._rows = (rows, rhs)
        return self._rows

    def residual_is_zero(self, sigma):
        rows, rhs = self.linear_rows()
        return all(
            sum(a * s for a, s in zip(row, sigma) if s) + r == 0 for row, r in zip(rows, rhs)
        )


def make_context(group, frame, inv):
    return SpectralContext(group, frame, inv)


def pivot_of(values):
    """First index (1-based) of maximal modulus among exact complex values."""
    best, best_abs = 0, values[0].abs2()
    for k in range(1, len(values)):
        a = values[k].abs2()
        s = cert_sign(a - best_abs)
        if s is Sign.UNDECIDED:
            raise UndecidedTieError(f"cannot separate |w_{best + 1}| and |w_{k + 1}|")
        if s is Sign.POSITIVE:
            best, best_abs = k, a
    return best + 1


def pivot_np(values):
    mags = np.abs(values)
    return int(np.argmax(mags)) + 1


SHIFT_CACHE_SIZE = 4096


def k_sigma(sigma, ctx):
    """Exact spectral shift of a mode (memoized per context)."""
    sigma = ctx.index(sigma).sigma
    hit = ctx._shifts.get(sigma)
    if hit is not None:
        return hit
    K = ctx.K(sigma)
    res = [a + b for a, b in zip(K, ctx.dL)]
    kt = ctx.Ktilde_over_pi(sigma)
    shifted = [a + b for a, b in zip(kt, ctx.basis_images()[1])]
    out = SpectralShift(sigma, tuple(K), tuple(kt), tuple(shifted), tuple(res), pivot_of(shifted))
    if len(ctx._shifts) >= SHIFT_CACHE_SIZE:
        ctx._shifts.clear()
    ctx._shifts[sigma] = out
    return out


def pivot(sigma, ctx):
    if ctx.inv.trivial:
        raise PreconditionError("pivot needs a nontrivial bundle")
    return k_sigma(sigma, ctx).pivot


def find_sigma0(ctx):
    """The unique sigma with K_sigma + d(L) = 0, if any, as a ZSet."""
    if ctx.inv.trivial:
        raise PreconditionError("find_sigma0 needs a nontrivial bundle")
    if not ctx.certified:
        return _float_sigma0(ctx)
    rows, rhs = ctx.linear_rows()
    sol = linalg.solve_rational(rows, [-r for r in rhs])
    if sol is None:
        return ZSet(None, True, None, ("no rational solution",))
    x, kernel = sol
    if kernel:
        raise PreconditionError(
            "K_sigma + d(L) = 0 has a positive-dimensional solution set; (IS) fails"
        )
    if any(v.denominator != 1 for v in x):
        return ZSet(None, True, None, ("unique rational solution is not integral",))
    sigma0 = tuple(int(v) for v in x)
    if not any(sigma0):
        raise PreconditionError("d(L) = 0: the bundle is trivial")
    return ZSet(sigma0, True, tuple(ctx.residual(sigma0)))


def _float_sigma0(ctx):
    n, m = ctx.n, ctx.m
    # least squares on the 2m real equations, then round
    S = ctx.S_np
    M = np.zeros((2 * m, n + m))
    M[:m, :n] = S.real.T
    M[m:, :n] = S.imag.T
    M[:m, n:] = -np.eye(m)
    b = -np.concatenate([ctx.dL_np.real, ctx.dL_np.imag])
    x, *_ = np.linalg.lstsq(M, b, rcond=None)
    cand = tuple(int(round(v)) for v in x)
    res = ctx.residual(cand)
    bound = max(max(abs(z.re.iv.lo), abs(z.re.iv.hi), abs(z.im.iv.lo), abs(z.im.iv.hi)) for z in res)
    ok = all(z.re.iv.contains_zero() and z.im.iv.contains_zero() for z in res) and any(cand)
    note = (f"uncertified candidate; residual enclosure radius {float(bound):.3g}",)
    return ZSet(cand if ok else None, False, tuple(res), note)


def m0(ctx, Z):
    """min ||-sigma''' + d(L)|| over integer sigma''' with (0, 0, sigma''') in Z.

    Returns (value enclosure, exact squared value, argmin sigma''').
    """
    n = ctx.n
    ranges = []
    for z in ctx.dL:
        iv = z.re.interval(30) if ctx.certified else z.re.interval()
        lo, hi = math.floor(iv.lo), math.floor(iv.hi)
        ranges.append(range(lo - 1, hi + 3))
    best = None
    for cand in itertools.product(*ranges):
        sigma = (0,) * n + tuple(cand)
        if sigma not in Z:
            continue
        sq = None
        for c, z in zip(cand, ctx.dL):
            t = (z - c).abs2()
            sq = t if sq is None else sq + t
        if best is None:
            best = (sq, cand)
            continue
        s = cert_sign(sq - best[0])
        if s is Sign.NEGATIVE:
            best = (sq, cand)
    sq, arg = best
    if sq.is_identically_zero():
        raise PreconditionError("m0 vanishes: sigma_0 not excluded from Z")
    iv = positive_enclosure(sq)
    return iv.sqrt(30), sq, arg


def pivot_constant(ctx):
    """Rational upper bound M on the norm of v -> v C_1^-1 / pi (Frobenius)."""
    inv = ctx.frame.C1_inverse
    total = None
    for row in inv:
        for x in row:
            t = x * x
            total = t if total is None else total + t
    iv = positive_enclosure(total) if not total.is_identically_zero() else Interval.point(0)
    return iv.sqrt(30).hi / PI_LO


def shell_modes(ctx, radius):
    """(sigma', sigma'') of l1-norm exactly ``radius``."""
    return shell(ctx.n, radius)
