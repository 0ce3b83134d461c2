"""Exact integer and rational linear algebra on small dense matrices.

Vectors are tuples of ints (or Fractions where noted), matrices are tuples of
row tuples.  Everything here is exact; no floating point anywhere.

Conventions:
  * ``hermite_normal_form`` is row-style: for an integer matrix A it returns
    the unique basis H of the row lattice of A with pivot columns strictly
    increasing, positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, and no zero rows.
  * ``kernel_basis(A)`` returns the canonical (HNF) basis of the lattice
    ``{x in Z^n : A x = 0}``.  Kernels of integer matrices are automatically
    saturated.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

IVec = tuple[int, ...]
IMat = tuple[IVec, ...]
QVec = tuple[Fraction, ...]


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)


def vec_dot(a, b):
    assert len(a) == len(b)
    return sum(x * y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def is_zero_vector(a) -> bool:
    return all(x == 0 for x in a)


def content(a: IVec) -> int:
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


def primitive(a: IVec) -> IVec:
    """Divide an integer vector by the gcd of its entries.

    The zero vector is returned unchanged.  The direction (sign) is kept.
    """
    g = content(a)
    if g <= 1:
        return tuple(a)
    return tuple(x // g for x in a)


def primitive_up_to_sign(a: IVec) -> IVec:
    """Primitive vector normalized so the first nonzero entry is positive."""
    p = primitive(a)
    for x in p:
        if x > 0:
            return p
        if x < 0:
            return vec_neg(p)
    return p


def clear_denominators(a) -> IVec:
    """Scale a rational vector by a positive integer to a primitive int vector."""
    fracs = [Fraction(x) for x in a]
    lcm = 1
    for f in fracs:
        d = f.denominator
        lcm = lcm // gcd(lcm, d) * d
    return primitive(tuple(int(f * lcm) for f in fracs))


def mat_mul(a: IMat, b: IMat) -> IMat:
    bt = tuple(zip(*b)) if b else ()
    return tuple(tuple(vec_dot(row, col) for col in bt) for row in a)


def mat_vec(a, x):
    return tuple(vec_dot(row, x) for row in a)


def transpose(a):
    return tuple(zip(*a)) if a else ()


def identity_matrix(n: int) -> IMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def hermite_normal_form(rows) -> IMat:
    """Row-style Hermite normal form of the row lattice spanned by ``rows``.

    Returns the canonical full-rank basis (zero rows dropped).  The result is
    the unique HNF basis of the lattice generated by the input rows, so two
    generating sets of the same lattice give identical output.
    """
    work = [list(r) for r in rows if not is_zero_vector(r)]
    if not work:
        return ()
    ncols = len(work[0])
    basis: list[list[int]] = []
    row_idx = 0
    for col in range(ncols):
        # Find a pivot for this column among the remaining rows.
        pivot = None
        for i in range(row_idx, len(work)):
            if work[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        # gcd out the column below the pivot with integer row operations:
        # reduce the pivot row modulo row i, swap, repeat (Euclid).
        for i in range(row_idx + 1, len(work)):
            while work[i][col] != 0:
                q = work[row_idx][col] // work[i][col]
                if q:
                    for j in range(ncols):
                        work[row_idx][j] -= q * work[i][j]
                work[row_idx], work[i] = work[i], work[row_idx]
        if work[row_idx][col] < 0:
            work[row_idx] = [-x for x in work[row_idx]]
        row_idx += 1
        if row_idx == len(work):
            break
    work = [r for r in work if not all(x == 0 for x in r)]
    # Reduce entries above each pivot.
    pivots = []
    for r in work:
        c = next(j for j, x in enumerate(r) if x != 0)
        pivots.append(c)
    for i in range(len(work)):
        p = pivots[i]
        piv = work[i][p]
        for k in range(i):
            q = work[k][p] // piv
            if q:
                for j in range(len(work[i])):
                    work[k][j] -= q * work[i][j]
    return tuple(tuple(r) for r in work)


def row_space_rank(rows) -> int:
    return len(hermite_normal_form(rows))


def kernel_basis(a: IMat, ncols: int | None = None) -> IMat:
    """Canonical HNF basis of ``{x in Z^n : a x = 0}``.

    ``ncols`` must be given when ``a`` has no rows.
    """
    if not a:
        assert ncols is not None, "ncols required for empty matrix"
        return identity_matrix(ncols)
    n = len(a[0])
    # Column-style elimination on [A^T | I]: rows of the augmented part that
    # pair with zero rows of the reduced A^T span the kernel.
    aug = [list(col) + [1 if i == j else 0 for j in range(n)]
           for i, col in enumerate(transpose(a))]
    m = len(a)  # number of equations
    h = hermite_normal_form(tuple(tuple(r) for r in aug))
    kernel_rows = [r[m:] for r in h if all(x == 0 for x in r[:m])]
    return hermite_normal_form(tuple(tuple(r) for r in kernel_rows))


def annihilator_basis(rows, ncols: int | None = None) -> IMat:
    """Canonical basis of ``{u : u . r = 0 for every row r}``."""
    return kernel_basis(rows, ncols=ncols)


def in_row_lattice(v: IVec, hnf_basis: IMat) -> bool:
    """Membership of an integer vector in the row lattice given by an HNF basis."""
    r = list(v)
    for row in hnf_basis:
        p = next((j for j, x in enumerate(row) if x != 0), None)
        if p is None:
            continue
        q = r[p] // row[p]
        if q:
            for j in range(len(r)):
                r[j] -= q * row[j]
    return all(x == 0 for x in r)


def smith_normal_form_diagonal(a: IMat) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix (nonzero ones only)."""
    work = [list(r) for r in a]
    if not work or not work[0]:
        return ()
    rows, cols = len(work), len(work[0])
    diag: list[int] = []
    top = 0
    while top < rows and top < cols:
        # find smallest nonzero entry in the remaining block
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                if work[i][j] != 0 and (best is None or abs(work[i][j]) < abs(work[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        work[top], work[bi] = work[bi], work[top]
        for r in work:
            r[top], r[bj] = r[bj], r[top]
        pivot = work[top][top]
        dirty = False
        for i in range(top + 1, rows):
            q = work[i][top] // pivot
            if q:
                for j in range(top, cols):
                    work[i][j] -= q * work[top][j]
            if work[i][top] != 0:
                dirty = True
        for j in range(top + 1, cols):
            q = work[top][j] // pivot
            if q:
                for i in range(top, rows):
                    work[i][j] -= q * work[i][top]
            if work[top][j] != 0:
                dirty = True
        if dirty:
            continue
        # pivot must divide every entry of the remaining block
        fix = None
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if work[i][j] % pivot != 0:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            for j in range(top, cols):
                work[top][j] += work[fix][j]
            continue
        diag.append(abs(pivot))
        top += 1
    return tuple(diag)


def det(a: IMat) -> int:
    """Determinant of a square integer matrix (Bareiss fraction-free)."""
    n = len(a)
    if n == 0:
        return 1
    assert all(len(r) == n for r in a)
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def solve_rational(a, b) -> QVec | None:
    """Solve ``a x = b`` exactly over the rationals.

    ``a`` is any m x n matrix (ints or Fractions), ``b`` a length-m vector.
    Returns one solution (free variables set to 0) or None if inconsistent.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    pivots: list[tuple[int, int]] = []
    ri = 0
    for col in range(n):
        piv = next((i for i in range(ri, m) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[ri], aug[piv] = aug[piv], aug[ri]
        pv = aug[ri][col]
        aug[ri] = [x / pv for x in aug[ri]]
        for i in range(m):
            if i != ri and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[ri])]
        pivots.append((ri, col))
        ri += 1
        if ri == m:
            break
    for i in range(ri, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, c in pivots:
        x[c] = aug[r][n]
    return tuple(x)


def invert_rational(a) -> tuple[QVec, ...]:
    """Exact inverse of a square nonsingular matrix."""
    n = len(a)
    cols = []
    for j in range(n):
        e = tuple(Fraction(1) if i == j else Fraction(0) for i in range(n))
        sol = solve_rational(a, e)
        if sol is None:
            raise ValueError("matrix is singular")
        cols.append(sol)
    return tuple(zip(*cols))


def rational_rank(a) -> int:
    m = len(a)
    if m == 0:
        return 0
    n = len(a[0])
    work = [[Fraction(x) for x in row] for row in a]
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        work[rank] = [x / pv for x in work[rank]]
        for i in range(m):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def orthogonal_project_mod(v, basis: IMat) -> IVec:
    """Primitive integer representative of v modulo the span of ``basis``.

    Computes the orthogonal projection of ``v`` onto the complement of
    span(basis) and rescales to a primitive integer vector.  Returns the zero
    vector when v lies in the span.
    """
    if not basis:
        return clear_denominators(v)
    gram = tuple(tuple(vec_dot(bi, bj) for bj in basis) for bi in basis)
    rhs = tuple(vec_dot(bi, v) for bi in basis)
    coeffs = solve_rational(gram, rhs)
    assert coeffs is not None  # Gram matrix of independent rows is invertible
    proj = [Fraction(x) for x in v]
    for c, b in zip(coeffs, basis):
        for j in range(len(proj)):
            proj[j] -= c * b[j]
    if all(x == 0 for x in proj):
        return tuple([0] * len(proj))
    return clear_denominators(proj)
