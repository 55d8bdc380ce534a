"""Exact linear algebra over the integers, the rationals and prime fields.

Everything here works on dense matrices given as lists of lists of Python
ints (or Fractions for the rational routines); no floating point is ever
involved.  The Smith normal form keeps explicit unimodular transforms so
that kernels, integer solutions and quotient groups can be read off.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cols):
                    oi[j] += aik * bk[j]
    return out


def mat_vec(a, v):
    return [sum(aij * vj for aij, vj in zip(row, v)) for row in a]


def mat_eq_mod(a, b, m: int | None) -> bool:
    if len(a) != len(b) or (a and len(a[0]) != len(b[0])):
        return False
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if m is None:
                if x != y:
                    return False
            elif (x - y) % m:
                return False
    return True


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (d, u, v) with u @ a @ v = d diagonal, d_i | d_{i+1}.

    u and v are unimodular.  Pivots are chosen of minimal absolute value to
    keep entry growth in check; fine at the matrix sizes used here.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [row[:] for row in a]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        drow, srow = d[dst], d[src]
        for j in range(cols):
            drow[j] += c * srow[j]
        urow, usrc = u[dst], u[src]
        for j in range(rows):
            urow[j] += c * usrc[j]

    def add_col(src, dst, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # locate minimal nonzero entry in the remaining block
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(d[i][j])
                if x and (best is None or x < best):
                    best = x
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        swap_rows(t, pi)
        swap_cols(t, pj)
        # clear column and row t; restart if a reduction leaves a remainder
        dirty = False
        for i in range(t + 1, rows):
            if d[i][t]:
                q = d[i][t] // d[t][t]
                add_row(t, i, -q)
                if d[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if d[t][j]:
                q = d[t][j] // d[t][t]
                add_col(t, j, -q)
                if d[t][j]:
                    dirty = True
        if dirty:
            continue
        # divisibility: pull any nondividing entry into the pivot position
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i][j] % d[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        if d[t][t] < 0:
            negate_row(t)
        t += 1
    return d, u, v


def snf_diagonal(a: Matrix) -> list[int]:
    d, _, _ = smith_normal_form(a)
    n = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(n)]


def solve_integer(a: Matrix, b: list[int]) -> list[int] | None:
    """One integer solution x of a @ x = b, or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d, u, v = smith_normal_form(a)
    c = mat_vec(u, b)
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di:
            if c[i] % di:
                return None
            y[i] = c[i] // di
        elif c[i]:
            return None
    return mat_vec(v, y)


def solve_mod(a: Matrix, b: list[int], m: int) -> list[int] | None:
    """One solution x of a @ x = b (mod m), or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d, u, v = smith_normal_form(a)
    c = mat_vec(u, b)
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        ci = c[i] % m
        g = gcd(di, m)
        if ci % g:
            return None
        if i < cols and g != m:
            mg = m // g
            y[i] = (ci // g) * pow((di // g) % mg, -1, mg) % mg
    return [x % m for x in mat_vec(v, y)]


def gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def kernel_lattice_mod(a: Matrix, m: int) -> Matrix:
    """Basis (as columns) of the lattice {x in Z^n : a @ x = 0 mod m}.

    Always full rank n since it contains m Z^n.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d, _, v = smith_normal_form(a)
    scale = []
    for j in range(cols):
        dj = d[j][j] if j < rows else 0
        scale.append(m // gcd(dj, m))
    return [[v[i][j] * scale[j] for j in range(cols)] for i in range(cols)]


def quotient_invariants(k: Matrix, gens: Matrix) -> list[int]:
    """Invariant factors (>1) of lattice(k) / lattice(gens), gens ⊆ k.

    k is a full-rank n x n column basis; gens an n x s column span lying
    inside it and of finite index (our callers include m*I among gens).
    """
    n = len(k)
    coeff = _solve_fraction_matrix(k, gens)
    ints = [[int(x) for x in row] for row in coeff]
    diag = snf_diagonal(ints)
    return [x for x in diag if x not in (0, 1)]


def _solve_fraction_matrix(k: Matrix, rhs: Matrix) -> list[list[Fraction]]:
    """Solve k @ x = rhs exactly; every entry of x must come out integral."""
    n = len(k)
    s = len(rhs[0]) if rhs else 0
    aug = [[Fraction(k[i][j]) for j in range(n)] + [Fraction(rhs[i][j]) for j in range(s)]
           for i in range(n)]
    # Gauss-Jordan with exact pivots
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("kernel basis is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    sol = [[aug[i][n + j] for j in range(s)] for i in range(n)]
    for row in sol:
        for x in row:
            if x.denominator != 1:
                raise ValueError("generators do not lie in the lattice")
    return sol


# ---------------------------------------------------------------------------
# Prime fields and the rationals
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def rank_mod2(a: Matrix) -> int:
    """GF(2) rank with rows packed into ints; fast on wide matrices."""
    cols = len(a[0]) if a else 0
    packed = []
    for row in a:
        bits = 0
        for j, x in enumerate(row):
            if x & 1:
                bits |= 1 << j
        packed.append(bits)
    pivots: dict[int, int] = {}
    rank = 0
    for bits in packed:
        while bits:
            lead = bits.bit_length() - 1
            other = pivots.get(lead)
            if other is None:
                pivots[lead] = bits
                rank += 1
                break
            bits ^= other
    return rank


def rank_mod_p(a: Matrix, p: int) -> int:
    if p == 2 and a and len(a) * len(a[0]) > 10000:
        return rank_mod2(a)
    rows = [[x % p for x in row] for row in a]
    cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def solve_mod_p(a: Matrix, b: list[int], p: int) -> list[int] | None:
    rows = [[x % p for x in row] + [bi % p] for row, bi in zip(a, b)]
    cols = len(a[0]) if a else 0
    pivots = []
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(rows)):
        if rows[r][cols]:
            return None
    x = [0] * cols
    for r, col in enumerate(pivots):
        x[col] = rows[r][cols]
    return x


def rank_rational(a) -> int:
    rows = [[Fraction(x) for x in row] for row in a]
    cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# Multiplicative systems over Q*
# ---------------------------------------------------------------------------

def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _fraction_root(q: Fraction, k: int) -> Fraction | None:
    """A k-th root of q in Q*, or None."""
    if k == 1:
        return q
    if q < 0 and k % 2 == 0:
        return None
    sign = -1 if q < 0 else 1
    num = _factor(abs(q.numerator))
    den = _factor(q.denominator)
    root = Fraction(sign if sign < 0 else 1)
    for p, e in num.items():
        if e % k:
            return None
        root *= Fraction(p) ** (e // k)
    for p, e in den.items():
        if e % k:
            return None
        root /= Fraction(p) ** (e // k)
    return root


def solve_multiplicative(exponents: Matrix, targets: list[Fraction]) -> list[Fraction] | None:
    """Solve prod_j x_j**e_tj = r_t over the multiplicative group Q*.

    Solvability is decided through the Smith normal form of the exponent
    matrix; roots are extracted by factoring the (small) rationals involved.
    """
    rows = len(exponents)
    cols = len(exponents[0]) if rows else 0
    if rows == 0:
        return [Fraction(1)] * cols
    d, u, v = smith_normal_form(exponents)
    # transformed targets r'_i = prod_t r_t ** u[i][t]
    y = [Fraction(1)] * cols
    for i in range(rows):
        ri = Fraction(1)
        for t in range(rows):
            e = u[i][t]
            if e:
                ri *= targets[t] ** e
        di = d[i][i] if i < cols else 0
        if di:
            root = _fraction_root(ri, di)
            if root is None:
                return None
            y[i] = root
        elif ri != 1:
            return None
    x = [Fraction(1)] * cols
    for j in range(cols):
        for i in range(cols):
            e = v[j][i]
            if e:
                x[j] *= y[i] ** e
    return x
