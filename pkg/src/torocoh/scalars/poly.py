"""Dense univariate polynomials over Q.

A polynomial is a tuple of ``Fraction`` coefficients, lowest degree first,
with no trailing zeros; the zero polynomial is ``()``.
"""
from fractions import Fraction
from math import gcd, lcm

ZERO = ()
ONE = (Fraction(1),)


def trim(coeffs):
    c = [x if type(x) is Fraction else Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p):
    return len(p) - 1


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p):
    return tuple(-c for c in p)


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(x * c for x in p)


def mul(p, q):
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def divmod_(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(p) <= dq:
        return ZERO, trim(p)
    quo = [Fraction(0)] * (len(p) - dq)
    for k in range(len(p) - dq - 1, -1, -1):
        c = p[k + dq] / lead
        quo[k] = c
        if c:
            for j, b in enumerate(q):
                p[k + j] -= c * b
    return trim(quo), trim(p[:dq])


def rem(p, q):
    return divmod_(p, q)[1]


def monic(p):
    if not p:
        return p
    return scale(p, 1 / p[-1])


def gcd_(p, q):
    while q:
        p, q = q, rem(p, q)
    return monic(p)


def xgcd(p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    r0, r1 = p, q
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        quo, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return ZERO, ZERO, ZERO
    inv = 1 / r0[-1]
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def evaluate(p, x):
    """Horner evaluation; ``x`` may be a Fraction or an Interval."""
    if not p:
        return 0 * x
    acc = p[-1] + 0 * x
    for c in reversed(p[:-1]):
        acc = acc * x + c
    return acc


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def primitive_integer(p):
    """Scale to coprime integer coefficients with positive leading term."""
    if not p:
        return ()
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = gcd(*ints)
    sign = 1 if ints[-1] > 0 else -1
    return tuple(sign * x // g for x in ints)


def sturm_sequence(p):
    seq = [p, derivative(p)]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(neg(r))
    return seq


def _sign_changes(seq, x):
    signs = []
    for s in seq:
        v = evaluate(s, Fraction(x))
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p, lo, hi):
    """Number of distinct real roots of ``p`` in the half-open ``(lo, hi]``."""
    seq = sturm_sequence(p)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def root_bound(p):
    """Rational upper bound on the modulus of every complex root of ``p``."""
    lead = abs(p[-1])
    ratios = [abs(c) / lead for c in p[:-1]]
    cauchy = 1 + max(ratios, default=Fraction(0))
    lagrange = max(Fraction(1), sum(ratios, Fraction(0)))
    return min(cauchy, lagrange)


def to_str(p, var="x"):
    """Human-readable form, lowest degree first: ``1/2 + t - 3*t^2``."""
    if not p:
        return "0"
    out = ""
    for i, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out = body if c > 0 else "-" + body
        else:
            out += (" + " if c > 0 else " - ") + body
    return out
