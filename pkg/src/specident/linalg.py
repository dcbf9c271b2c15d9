"""Exact dense linear algebra over Z and Q.

Matrices are plain row-major lists of lists holding ``int`` (IntMatrix) or
``fractions.Fraction`` (RatMatrix). Fractions are canonical by construction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .errors import (
    ContractError,
    InconsistentSystemError,
    NoUniqueSolutionError,
    ShapeError,
)

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]
IntPolynomial = list[int]  # ascending degree


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return rows, cols


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def matmul(a, b):
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ShapeError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b) if rb else [[] for _ in range(cb)]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def _require_square(m, what: str) -> int:
    r, c = shape(m)
    if r != c:
        raise ShapeError(f"{what} needs a square matrix, got {r}x{c}")
    return r


# --- determinants and rank --------------------------------------------------

def bareiss_det(m: IntMatrix) -> int:
    """Fraction-free Gaussian elimination; every division is exact."""
    n = _require_square(m, "determinant")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (pivot * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _echelon(m: IntMatrix) -> tuple[int, list[int], int]:
    """Fraction-free row echelon form.

    Returns (rank, pivot columns, last pivot). When the rank equals the row
    count, the last pivot is (up to sign) the maximal minor on the pivot columns.
    """
    rows, cols = shape(m)
    a = [list(row) for row in m]
    prev = 1
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        swap = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if swap is None:
            continue
        a[r], a[swap] = a[swap], a[r]
        pivot = a[r][c]
        rowr = a[r]
        for i in range(r + 1, rows):
            rowi = a[i]
            aic = rowi[c]
            for j in range(c + 1, cols):
                rowi[j] = (pivot * rowi[j] - aic * rowr[j]) // prev
            rowi[c] = 0
        prev = pivot
        pivots.append(c)
        r += 1
    return r, pivots, prev


def rank(m: IntMatrix) -> int:
    return _echelon(m)[0]


# --- Smith normal form --------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    """M = U S V with U, V unimodular and diag(S) a divisibility chain."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    factors: tuple[int, ...]


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    rows, cols = shape(m)
    s = [list(row) for row in m]
    u = identity(rows)
    v = identity(cols)

    # Each helper edits S and keeps M = U S V by applying the inverse op to U or V.
    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, k):  # row i += k * row j
        si, sj = s[i], s[j]
        for c in range(cols):
            si[c] += k * sj[c]
        for row in u:
            row[j] -= k * row[i]

    def neg_row(i):
        s[i] = [-x for x in s[i]]
        for row in u:
            row[i] = -row[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        v[i], v[j] = v[j], v[i]

    def add_col(i, j, k):  # col i += k * col j
        for row in s:
            row[i] += k * row[j]
        vi, vj = v[i], v[j]
        for c in range(cols):
            vj[c] -= k * vi[c]

    for t in range(min(rows, cols)):
        nz = [(abs(s[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if s[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        while True:
            # clear column t below the pivot
            changed = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
                    if s[i][t]:
                        changed = True
            if changed:
                i1 = min((i for i in range(t, rows) if s[i][t]), key=lambda i: abs(s[i][t]))
                if i1 != t:
                    swap_rows(t, i1)
                continue
            # clear row t right of the pivot
            for j in range(t + 1, cols):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
                    if s[t][j]:
                        changed = True
            if changed:
                j1 = min((j for j in range(t, cols) if s[t][j]), key=lambda j: abs(s[t][j]))
                if j1 != t:
                    swap_cols(t, j1)
                continue
            # divisibility repair
            p = s[t][t]
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            neg_row(t)

    factors = tuple(s[i][i] for i in range(min(rows, cols)))
    return SmithDecomposition(u, s, v, factors)


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    return smith_normal_form(m).factors


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _probable_full_rank_columns(m: IntMatrix, rows: int, cols: int) -> Optional[list[int]]:
    """Greedy independent columns modulo a large prime; None if rank mod p < rows."""
    p = (1 << 61) - 1
    basis: dict[int, list[int]] = {}  # pivot row -> reduced vector
    chosen = []
    for c in range(cols):
        vec = [m[i][c] % p for i in range(rows)]
        for piv, b in basis.items():
            if vec[piv]:
                f = vec[piv]
                vec = [(x - f * y) % p for x, y in zip(vec, b)]
        piv = next((i for i in range(rows) if vec[i]), None)
        if piv is None:
            continue
        inv = pow(vec[piv], -1, p)
        vec = [x * inv % p for x in vec]
        for k, b in basis.items():
            if b[piv]:
                f = b[piv]
                basis[k] = [(x - f * y) % p for x, y in zip(b, vec)]
        basis[piv] = vec
        chosen.append(c)
        if len(chosen) == rows:
            return chosen
    return None


def _column_lattice_hnf(m: IntMatrix, det_multiple: int) -> IntMatrix:
    """Triangular basis of the column lattice of m (full row rank).

    ``det_multiple`` must be a nonzero multiple of the lattice determinant, so
    the lattice contains det_multiple * Z^n and coordinates can be reduced
    modulo it. Returns basis vectors b[i] with b[i][j] = 0 for j < i.
    """
    rows, cols = shape(m)
    d = abs(det_multiple)
    basis = [[d if j == i else 0 for j in range(rows)] for i in range(rows)]
    for c in range(cols):
        vec = [m[i][c] % d for i in range(rows)]
        for i in range(rows):
            if vec[i] == 0:
                continue
            b = basis[i]
            g, x, y = _xgcd(b[i], vec[i])
            bi, ci = b[i] // g, vec[i] // g
            new_b = [(x * p + y * q) % d for p, q in zip(b, vec)]
            new_v = [(bi * q - ci * p) % d for p, q in zip(b, vec)]
            new_b[i] = g
            new_v[i] = 0
            basis[i] = new_b
            vec = new_v
    return basis


def last_invariant_factor(m: IntMatrix) -> int:
    """d_rows of the Smith form; 0 exactly when the rank is below the row count."""
    rows, cols = shape(m)
    if rows > cols:
        raise ShapeError(f"need rows <= cols, got {rows}x{cols}")
    if rows == 0:
        return 1
    chosen = _probable_full_rank_columns(m, rows, cols)
    if chosen is None:
        r, chosen, _ = _echelon(m)
        if r < rows:
            return 0
    d0 = bareiss_det([[m[i][c] for c in chosen] for i in range(rows)])
    if d0 == 0:  # unreachable for a correct mod-p selection; exact fallback
        r, chosen, _ = _echelon(m)
        if r < rows:
            return 0
        d0 = bareiss_det([[m[i][c] for c in chosen] for i in range(rows)])
    basis = _column_lattice_hnf(m, d0)
    # exponent of Z^n / L is the level of the inverse basis matrix
    h = [[basis[j][i] for j in range(rows)] for i in range(rows)]  # columns = basis
    return level(_lower_triangular_inverse(h))


def _lower_triangular_inverse(h: IntMatrix) -> RatMatrix:
    n = len(h)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for col in range(n):
        for i in range(col, n):
            acc = Fraction(int(i == col))
            for k in range(col, i):
                if h[i][k]:
                    acc -= h[i][k] * inv[k][col]
            inv[i][col] = acc / h[i][i]
    return inv


# --- rationals ----------------------------------------------------------------

def level(q) -> int:
    """Least positive l with l*q integral (lcm of entry denominators)."""
    out = 1
    for row in q:
        for x in row:
            if isinstance(x, Fraction):
                out = lcm(out, x.denominator)
    return out


def to_rational(m: IntMatrix) -> RatMatrix:
    return [[Fraction(x) for x in row] for row in m]


def solve_right(x: IntMatrix, y: IntMatrix) -> RatMatrix:
    """The unique rational Q with Q x = y, for x of full row rank."""
    n, m = shape(x)
    ny, my = shape(y)
    if my != m:
        raise ShapeError(f"x is {n}x{m} but y is {ny}x{my}")
    if n > m:
        raise ShapeError("x must have at least as many columns as rows")
    r, pivots, _ = _echelon(x)
    if r < n:
        raise NoUniqueSolutionError(f"x has rank {r} < {n}")
    # Q = y_S x_S^{-1} on the pivot columns, then check the remaining columns
    xs = [[Fraction(x[i][c]) for c in pivots] for i in range(n)]
    xs_inv = _rational_inverse(xs)
    q = [[sum(Fraction(y[a][pivots[k]]) * xs_inv[k][j] for k in range(n)) for j in range(n)]
         for a in range(ny)]
    for a in range(ny):
        for c in range(m):
            if sum(q[a][i] * x[i][c] for i in range(n)) != y[a][c]:
                raise InconsistentSystemError(f"row {a} of y is not in the row space of x")
    return q


def _rational_inverse(a: RatMatrix) -> RatMatrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise NoUniqueSolutionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


# --- polynomials ----------------------------------------------------------------

def poly_trim(p: Sequence[int]) -> IntPolynomial:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def char_poly(m: IntMatrix) -> IntPolynomial:
    """det(tI - m) by Faddeev-LeVerrier; the divisions by k are exact over Z."""
    n = _require_square(m, "characteristic polynomial")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = zeros(n, n)  # M_0 = 0
    c = 1
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        for i in range(n):
            mk[i][i] += c
        mk = matmul(m, mk)
        tr = sum(mk[i][i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs[n - k] = c
    return coeffs


def char_poly_mod(m: IntMatrix, p: int) -> IntPolynomial:
    """det(tI - m) over GF(p) via Hessenberg reduction (p prime)."""
    n = _require_square(m, "characteristic polynomial")
    h = [[x % p for x in row] for row in m]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[j + 1], h[piv] = h[piv], h[j + 1]
            for row in h:
                row[j + 1], row[piv] = row[piv], row[j + 1]
        inv = pow(h[j + 1][j], -1, p)
        for i in range(j + 2, n):
            f = h[i][j] * inv % p
            if f:
                hi, hj = h[i], h[j + 1]
                for c in range(n):
                    hi[c] = (hi[c] - f * hj[c]) % p
                for row in h:
                    row[j + 1] = (row[j + 1] + f * row[i]) % p
    # recurrence on leading principal submatrices of the Hessenberg form
    polys: list[IntPolynomial] = [[1]]
    for k in range(1, n + 1):
        # p_k = (t - h[k-1][k-1]) p_{k-1} - sum_i h[i][k-1] prod(sub-diagonal) p_i
        prev = polys[k - 1]
        cur = [0] + prev
        for i, coef in enumerate(prev):
            cur[i] = (cur[i] - h[k - 1][k - 1] * coef) % p
        prod = 1
        for i in range(k - 2, -1, -1):
            prod = prod * h[i + 1][i] % p
            if prod == 0:
                break
            f = h[i][k - 1] * prod % p
            if f:
                for idx, coef in enumerate(polys[i]):
                    cur[idx] = (cur[idx] - f * coef) % p
        polys.append([x % p for x in cur])
    return polys[n]


def poly_derivative(p: Sequence[int]) -> IntPolynomial:
    return [i * p[i] for i in range(1, len(p))]


def sylvester_matrix(f: Sequence[int], g: Sequence[int]) -> IntMatrix:
    """Sylvester matrix of f (degree m) and g (degree k), coefficients ascending."""
    f, g = poly_trim(f), poly_trim(g)
    m, k = len(f) - 1, len(g) - 1
    size = m + k
    fd, gd = f[::-1], g[::-1]
    rows = []
    for i in range(k):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - k - 1 - i))
    return rows


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    f, g = poly_trim(f), poly_trim(g)
    if not f or not g:
        return 0
    if len(f) == 1 and len(g) == 1:
        return 1
    return bareiss_det(sylvester_matrix(f, g))


def poly_discriminant(f: Sequence[int]) -> int:
    """(-1)^{n(n-1)/2} Res(f, f') / lc(f)."""
    f = poly_trim(f)
    n = len(f) - 1
    if n <= 1:
        return 1
    res = resultant(f, poly_derivative(f))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, f[-1])
    assert r == 0
    return q


def is_symmetric(m) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def discriminant(m: IntMatrix) -> int:
    """Product of squared eigenvalue differences of a symmetric integral matrix."""
    _require_square(m, "discriminant")
    if not is_symmetric(m):
        raise ContractError("discriminant expects a symmetric matrix")
    return poly_discriminant(char_poly(m))


def poly_gcd_degree(f: Sequence[int], g: Sequence[int]) -> int:
    """Degree of gcd(f, g) over Q (exact Euclid on Fractions); -1 if both zero."""
    a = [Fraction(x) for x in poly_trim(f)]
    b = [Fraction(x) for x in poly_trim(g)]
    while b:
        while len(a) >= len(b) and a:
            f_ = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, coef in enumerate(b):
                a[i + shift] -= f_ * coef
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


# --- random unimodular matrices (test support, also used by scripts) ---------

def random_unimodular(n: int, rng: random.Random, steps: int = 20, bound: int = 3) -> IntMatrix:
    u = identity(n)
    if n < 2:
        return u
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-bound, bound)
        for c in range(n):
            u[i][c] += k * u[j][c]
        if rng.random() < 0.3:
            u[i], u[j] = u[j], u[i]
    return u
