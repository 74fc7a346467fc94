"""Small dense linear algebra over exact fields, Q, or intervals."""
from fractions import Fraction

from ..errors import SingularBError
from . import poly
from .field import ComplexElement, FieldElement, FloatElement


def is_zero(x):
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_identically_zero()


def _pivot_weight(x):
    """Certified lower bound on |x| for float data; 1/0 for exact data."""
    if isinstance(x, FloatElement):
        iv = x.iv
        return max(iv.lo, -iv.hi, Fraction(0))
    if isinstance(x, ComplexElement) and isinstance(x.re, FloatElement):
        return max(_pivot_weight(x.re), _pivot_weight(x.im))
    return Fraction(0) if is_zero(x) else Fraction(1)


def _pick_pivot(rows, col, start):
    best, best_w = None, Fraction(0)
    for r in range(start, len(rows)):
        w = _pivot_weight(rows[r][col])
        if w > best_w:
            best, best_w = r, w
            if not isinstance(rows[r][col], (FloatElement, ComplexElement)) or w == 1:
                if not isinstance(rows[r][col], FloatElement):
                    break
    return best


def inverse(matrix):
    """Gauss-Jordan inverse; raises SingularBError if no pivot can be certified."""
    n = len(matrix)
    one, zero = _unit(matrix)
    rows = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(matrix)]
    for c in range(n):
        p = _pick_pivot(rows, c, c)
        if p is None:
            raise SingularBError("matrix is singular (or not certifiably invertible)")
        rows[c], rows[p] = rows[p], rows[c]
        inv = 1 / rows[c][c] if isinstance(rows[c][c], (int, Fraction)) else rows[c][c].inverse()
        rows[c] = [x * inv for x in rows[c]]
        for r in range(n):
            if r != c and not is_zero(rows[r][c]):
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return [r[n:] for r in rows]


def _unit(matrix):
    for row in matrix:
        for x in row:
            if isinstance(x, ComplexElement):
                return ComplexElement(x.field.one), ComplexElement(x.field.zero)
            if isinstance(x, (FieldElement, FloatElement)):
                return x.field.one, x.field.zero
    return Fraction(1), Fraction(0)


def matmul(a, b):
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        out.append([_dot(row, [b[k][j] for k in range(len(b))]) for j in range(cols)])
    return out


def matvec(a, v):
    return [_dot(row, v) for row in a]


def vecmat(v, a):
    cols = len(a[0]) if a else 0
    return [_dot(v, [a[k][j] for k in range(len(a))]) for j in range(cols)]


def _dot(u, v):
    total = None
    for x, y in zip(u, v):
        t = x * y
        total = t if total is None else total + t
    return total if total is not None else Fraction(0)


def transpose(a):
    return [list(col) for col in zip(*a)]


def block(a, rows, cols):
    return [list(a[i][:cols]) for i in range(rows)]


def rref(rows):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows, ncols=None):
    """Basis of the rational nullspace, each vector scaled to coprime integers."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(integer_vector(v))
    return basis


def integer_vector(v):
    from math import gcd, lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def solve_rational(rows, rhs):
    """Solutions of rows @ x = rhs over Q: (particular, nullspace) or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    n = len(rows[0])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        x[pc] = m[i][n]
    return x, nullspace(rows)


def linearize(elements):
    """Rational coordinate vectors of real field elements.

    A Q-linear relation ``sum c_i x_i = 0`` holds iff the same relation holds
    between the returned vectors.  Algebraic elements use the power basis;
    rational functions in a transcendental theta are first put over a common
    denominator and compared coefficient-wise.
    """
    elements = list(elements)
    if not elements:
        return []
    if any(isinstance(x, FloatElement) for x in elements):
        raise TypeError("float-tagged values have no exact coordinates")
    fields = [x.field for x in elements if isinstance(x, FieldElement)]
    kind = fields[0].kind if fields else "rational"
    if kind == "rational":
        return [[Fraction(x) if isinstance(x, (int, Fraction)) else x.rational_value()] for x in elements]
    if kind == "algebraic":
        d = fields[0].degree
        out = []
        for x in elements:
            c = list(x.num) if isinstance(x, FieldElement) else list(poly.trim([x]))
            out.append(c + [Fraction(0)] * (d - len(c)))
        return out
    common = poly.ONE
    for x in elements:
        if isinstance(x, FieldElement) and x.den != poly.ONE:
            g = poly.gcd_(common, x.den)
            common = poly.divmod_(poly.mul(common, x.den), g)[0]
    nums = []
    for x in elements:
        if isinstance(x, FieldElement):
            nums.append(poly.mul(x.num, poly.divmod_(common, x.den)[0]))
        else:
            nums.append(poly.scale(common, Fraction(x)))
    width = max((len(p) for p in nums), default=0) or 1
    return [list(p) + [Fraction(0)] * (width - len(p)) for p in nums]
