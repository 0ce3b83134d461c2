"""Exact rational linear programming for feasibility questions.

The entry point is :func:`lp_feasibility`: given inequalities ``a . x >= b``
(optionally strict) and equalities ``e . x == c``, it returns either an exact
rational witness satisfying every constraint (strict ones strictly) or
verified Farkas multipliers proving infeasibility.

Everything is solved through the Lagrangian dual, whose simplex basis has one
row per *variable* rather than per constraint; systems with many constraints
and few variables (the usual shape here) stay cheap.  Pivoting uses Bland's
least-index rule, so the solver terminates on fully degenerate problems.

Strict inequalities are handled by maximizing an interiority margin ``t``
with ``a . x - t >= b`` on strict rows and ``0 <= t <= 1``: the strict system
is feasible iff the optimum is positive.  On homogeneous systems this is
equivalent to the usual unit-slack trick by scale invariance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import vec_dot

Q = Fraction


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    witness: tuple | None = None
    ineq_multipliers: tuple | None = None
    eq_multipliers: tuple | None = None


def _normalize(inequalities, equalities):
    ineqs = []
    for item in inequalities:
        if len(item) == 3:
            a, b, strict = item
        else:
            a, b = item
            strict = False
        ineqs.append((tuple(Q(x) for x in a), Q(b), bool(strict)))
    eqs = [(tuple(Q(x) for x in e), Q(c)) for e, c in equalities]
    return ineqs, eqs


class _Simplex:
    """Dense exact simplex for ``min cost . v  s.t.  M v = d, v >= 0``.

    ``M`` is given column-wise.  When ``d = 0`` the initial basis is chosen
    from the real columns (no artificials), which keeps unbounded rays free
    of artificial components; otherwise a phase-1 with artificials runs
    first.  Dependent rows (with consistent right-hand sides) are dropped.
    """

    def __init__(self, nrows, columns, costs, rhs):
        self.nrows = nrows
        self.columns = [list(col) for col in columns]
        self.costs = list(costs)
        self.rhs = list(rhs)

    def _independent_rows(self):
        """Indices of a maximal independent row set of [M | d]; None if the
        dropped rows are inconsistent with d."""
        ncols = len(self.columns)
        work = [[self.columns[j][i] for j in range(ncols)] + [self.rhs[i]]
                for i in range(self.nrows)]
        kept = []
        pivot_cols: list[int] = []
        for i in range(self.nrows):
            row = work[i][:]
            for k, pc in zip(kept, pivot_cols):
                f = row[pc]
                if f:
                    krow = work[k]
                    row = [x - f * y for x, y in zip(row, krow)]
            p = next((j for j, x in enumerate(row[:-1]) if x != 0), None)
            if p is None:
                if row[-1] != 0:
                    return None  # inconsistent dependent row
                continue
            inv = row[p]
            work[i] = [x / inv for x in row]
            kept.append(i)
            pivot_cols.append(p)
        return kept

    def solve(self):
        """Returns ('optimal', value, v, pi) or ('unbounded', ray)."""
        kept = self._independent_rows()
        if kept is None:
            return ("inconsistent",)
        colmap = list(range(len(self.columns)))
        cols = [[self.columns[j][i] for i in kept] for j in colmap]
        rhs = [self.rhs[i] for i in kept]
        m = len(kept)
        if m == 0:
            # no constraint rows survive: any v >= 0 is feasible, so the
            # problem is unbounded along any column with negative cost
            for j, c in enumerate(self.costs):
                if c < 0:
                    ray = [Q(0)] * len(self.columns)
                    ray[j] = Q(1)
                    return ("unbounded", tuple(ray), kept)
            return ("optimal", Q(0), tuple(Q(0) for _ in self.columns), (), kept)
        # sign-normalize rows so rhs >= 0 (phase-1 requirement)
        self.row_signs = [1] * m
        for i in range(m):
            if rhs[i] < 0:
                rhs[i] = -rhs[i]
                self.row_signs[i] = -1
                for col in cols:
                    col[i] = -col[i]
        if all(x == 0 for x in rhs):
            basis = self._column_basis(cols, m)
            tab, base = self._tableau_from_basis(cols, rhs, basis)
        else:
            tab, base, ok = self._phase1(cols, rhs, m)
            if not ok:
                return ("inconsistent",)
        status = self._phase2(tab, base, cols, m)
        return status + (kept,)

    @staticmethod
    def _column_basis(cols, m):
        basis = []
        echelon: list[list[Fraction]] = []
        for j, col in enumerate(cols):
            v = [Q(x) for x in col]
            for row in echelon:
                p = next(i for i, x in enumerate(row) if x != 0)
                f = v[p] / row[p]
                if f:
                    v = [a - f * b for a, b in zip(v, row)]
            if any(x != 0 for x in v):
                echelon.append(v)
                basis.append(j)
                if len(basis) == m:
                    break
        assert len(basis) == m, "column rank below row rank"
        return basis

    def _tableau_from_basis(self, cols, rhs, basis):
        # tab[i] = row i of B^{-1} [M | d]
        m = len(rhs)
        bmat = [[cols[j][i] for j in basis] for i in range(m)]
        inv = _invert(bmat)
        tab = []
        for i in range(m):
            row = []
            for j in range(len(cols)):
                row.append(sum(inv[i][k] * cols[j][k] for k in range(m)))
            row.append(sum(inv[i][k] * rhs[k] for k in range(m)))
            tab.append(row)
        return tab, list(basis)

    def _phase1(self, cols, rhs, m):
        ncols = len(cols)
        art_cols = [[Q(1) if i == k else Q(0) for i in range(m)] for k in range(m)]
        all_cols = [list(map(Q, c)) for c in cols] + art_cols
        tab = [[all_cols[j][i] for j in range(len(all_cols))] + [Q(rhs[i])]
               for i in range(m)]
        base = [ncols + k for k in range(m)]
        costs = [Q(0)] * ncols + [Q(1)] * m
        self._run(tab, base, costs, banned=set())
        value = sum(costs[base[i]] * tab[i][-1] for i in range(m))
        if value != 0:
            return tab, base, False
        # Drive basic artificials out with degenerate pivots so phase 2 can
        # never push them positive.  A row whose real part is entirely zero
        # is the relation 0 = 0: entering columns are always real there, so
        # such a row can never change and its artificial stays at zero.
        for i in range(m):
            if base[i] >= ncols:
                piv = next((j for j in range(ncols) if tab[i][j] != 0), None)
                if piv is not None:
                    self._pivot(tab, base, i, piv)
        self._banned = set(range(ncols, ncols + m))
        return tab, base, True

    def _phase2(self, tab, base, cols, m):
        ncols = len(cols)
        tab_cols = len(tab[0]) - 1
        costs = [Q(self.costs[j]) for j in range(ncols)]
        costs += [Q(0)] * (tab_cols - ncols)
        banned = getattr(self, "_banned", set())
        unbounded_col = self._run(tab, base, costs, banned)
        if unbounded_col is not None:
            ray = [Q(0)] * len(self.columns)
            ray[unbounded_col] = Q(1)
            for i in range(m):
                if base[i] < len(self.columns):
                    ray[base[i]] = -tab[i][unbounded_col]
                else:
                    # artificial stuck in the basis must not move along the
                    # ray, otherwise the Farkas certificate would be invalid
                    assert tab[i][unbounded_col] == 0
            return ("unbounded", tuple(ray))
        v = [Q(0)] * len(self.columns)
        for i in range(m):
            if base[i] < len(self.columns):
                v[base[i]] = tab[i][-1]
        value = sum(Q(self.costs[j]) * v[j] for j in range(len(self.columns)))
        # simplex multipliers: pi^T B = c_B, solved against the original
        # (sign-normalized) basis columns, then un-normalized
        bcols = []
        for j in base:
            if j < len(cols):
                bcols.append([Q(x) for x in cols[j]])
            else:
                k = j - len(cols)
                bcols.append([Q(1) if i == k else Q(0) for i in range(m)])
        cb = [Q(self.costs[j]) if j < len(self.columns) else Q(0) for j in base]
        pi = _solve_transposed(bcols, cb)
        pi = [p * s for p, s in zip(pi, self.row_signs)]
        return ("optimal", value, tuple(v), tuple(pi))

    @staticmethod
    def _run(tab, base, costs, banned):
        """Bland-rule simplex; returns entering column index if unbounded."""
        m = len(tab)
        ncols = len(tab[0]) - 1
        while True:
            # reduced costs via multipliers on the fly would be faster; the
            # dense row update keeps the code short and is fine at our sizes
            cb = [costs[b] for b in base]
            entering = None
            for j in range(ncols):
                if j in banned or j in base:
                    continue
                red = costs[j] - sum(cb[i] * tab[i][j] for i in range(m))
                if red < 0:
                    entering = j
                    break
            if entering is None:
                return None
            leaving = None
            best = None
            for i in range(m):
                if tab[i][entering] > 0:
                    ratio = tab[i][-1] / tab[i][entering]
                    key = (ratio, base[i])
                    if best is None or key < best:
                        best = key
                        leaving = i
            if leaving is None:
                return entering
            _Simplex._pivot(tab, base, leaving, entering)

    @staticmethod
    def _pivot(tab, base, leaving, entering):
        piv = tab[leaving][entering]
        tab[leaving] = [x / piv for x in tab[leaving]]
        for i in range(len(tab)):
            if i != leaving and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leaving])]
        base[leaving] = entering


def _invert(mat):
    m = len(mat)
    aug = [[Q(mat[i][j]) for j in range(m)] + [Q(1) if k == i else Q(0) for k in range(m)]
           for i in range(m)]
    for col in range(m):
        piv = next(i for i in range(col, m) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(m):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[m:] for row in aug]


def _solve_transposed(bcols, cb):
    """Solve pi^T B = c_B where B is given by columns."""
    m = len(cb)
    aug = [[bcols[j][i] for j in range(m)] for i in range(m)]  # B as rows
    # pi^T B = c_B  <=>  B^T pi = c_B
    mat = [[aug[i][j] for i in range(m)] for j in range(m)]
    from .intlinalg import solve_rational

    sol = solve_rational(tuple(tuple(r) for r in mat), tuple(cb))
    assert sol is not None
    return list(sol)


def _dual_solve(num_vars, objective, ineqs, eqs):
    """max objective . x  s.t. the (non-strict) constraints, via the dual.

    Returns ('optimal', value, x) or ('infeasible', (y, z)) or ('unbounded',).
    The Farkas pair (y, z) satisfies sum y_i a_i + sum z_j e_j = 0, y >= 0,
    sum y_i b_i + sum z_j c_j > 0.
    """
    ncols_y = len(ineqs)
    columns = []
    costs = []
    for a, b, _ in ineqs:
        columns.append([a[i] for i in range(num_vars)])
        costs.append(-b)
    for e, c in eqs:
        columns.append([e[i] for i in range(num_vars)])
        costs.append(-c)
        columns.append([-e[i] for i in range(num_vars)])
        costs.append(c)
    rhs = [-Q(x) for x in objective]
    sx = _Simplex(num_vars, columns, costs, rhs)
    out = sx.solve()
    if out[0] == "inconsistent":
        # the dual system M v = -f has no solution at all: the primal is
        # unbounded along a direction orthogonal to every constraint
        return ("unbounded",)
    if out[0] == "unbounded":
        ray = out[1]
        y = ray[:ncols_y]
        z = []
        for j in range(len(eqs)):
            z.append(ray[ncols_y + 2 * j] - ray[ncols_y + 2 * j + 1])
        return ("infeasible", (tuple(y), tuple(z)))
    _, value, v, pi, kept = out
    x = [Q(0)] * num_vars
    for local_i, row in enumerate(kept):
        x[row] = -pi[local_i]
    return ("optimal", value, tuple(x))


def lp_feasibility(num_vars, inequalities, equalities=()) -> LPResult:
    """Exact feasibility with strict-inequality support.

    ``inequalities``: items ``(a, b)`` or ``(a, b, strict)`` for a.x >= b.
    ``equalities``: items ``(e, c)`` for e.x == c.
    """
    ineqs, eqs = _normalize(inequalities, equalities)
    zero_obj = tuple(Q(0) for _ in range(num_vars))
    status = _dual_solve(num_vars, zero_obj, [(a, b, False) for a, b, _ in ineqs], eqs)
    if status[0] == "infeasible":
        y, z = status[1]
        res = LPResult(False, None, y, z)
        assert verify_infeasibility_certificate(num_vars, ineqs, eqs, res)
        return res
    assert status[0] == "optimal"
    if not any(strict for _, _, strict in ineqs):
        x = status[2]
        assert _satisfies(x, ineqs, eqs)
        return LPResult(True, x)
    # maximize the interiority margin t in [0, 1]
    ext_ineqs = []
    for a, b, strict in ineqs:
        coeff_t = Q(-1) if strict else Q(0)
        ext_ineqs.append((a + (coeff_t,), b, False))
    ext_ineqs.append((zero_obj + (Q(1),), Q(0), False))   # t >= 0
    ext_ineqs.append((zero_obj + (Q(-1),), Q(-1), False))  # t <= 1
    ext_eqs = [(e + (Q(0),), c) for e, c in eqs]
    obj = zero_obj + (Q(1),)
    status = _dual_solve(num_vars + 1, obj, ext_ineqs, ext_eqs)
    assert status[0] == "optimal", "margin LP must be feasible and bounded here"
    _, value, w = status
    if value > 0:
        x = w[:num_vars]
        assert _satisfies(x, ineqs, eqs)
        return LPResult(True, x)
    # strictly infeasible: rebuild multipliers by solving the dual at t* = 0
    # via its own certificate form -- the optimum of the margin LP is 0, and
    # Farkas multipliers come from the dual solution of that LP; recover them
    # by solving feasibility of the *dual* system directly.
    cert = _strict_certificate(num_vars, ineqs, eqs)
    res = LPResult(False, None, cert[0], cert[1])
    assert verify_infeasibility_certificate(num_vars, ineqs, eqs, res)
    return res


def _strict_certificate(num_vars, ineqs, eqs):
    """Multipliers (y, z): sum y a + sum z e = 0, sum y b + sum z c >= 0,
    with positive total weight on strict rows.  Found by one more exact LP in
    the multiplier space (small: one variable per constraint)."""
    ny, nz = len(ineqs), len(eqs)
    mult_ineqs = [(tuple(Q(1) if k == j else Q(0) for k in range(ny + nz)), Q(0), False)
                  for j in range(ny)]
    strict_row = tuple(Q(1) if j < ny and ineqs[j][2] else Q(0) for j in range(ny + nz))
    mult_ineqs.append((strict_row, Q(1), False))
    val_row = tuple(list(q[1] for q in ineqs) + [c for _, c in eqs])
    mult_ineqs.append((val_row, Q(0), False))
    mult_eqs = []
    for i in range(num_vars):
        row = tuple([a[i] for a, _, _ in ineqs] + [e[i] for e, _ in eqs])
        mult_eqs.append((row, Q(0)))
    res = lp_feasibility(ny + nz, mult_ineqs, mult_eqs)
    assert res.feasible, "strict infeasibility must admit Farkas multipliers"
    w = res.witness
    return (tuple(w[:ny]), tuple(w[ny:]))


def _satisfies(x, ineqs, eqs):
    for a, b, strict in ineqs:
        v = vec_dot(a, x)
        if strict and not v > b:
            return False
        if not strict and not v >= b:
            return False
    return all(vec_dot(e, x) == c for e, c in eqs)


def verify_infeasibility_certificate(num_vars, inequalities, equalities, result: LPResult) -> bool:
    """Check Farkas multipliers by direct substitution.

    Valid iff y >= 0, sum y a + sum z e = 0, and either sum y b + sum z c > 0
    or it equals 0 while strict rows carry positive weight.
    """
    ineqs, eqs = _normalize(inequalities, equalities)
    y, z = result.ineq_multipliers, result.eq_multipliers
    if any(v < 0 for v in y):
        return False
    combo = [Q(0)] * num_vars
    for yi, (a, _, _) in zip(y, ineqs):
        for i in range(num_vars):
            combo[i] += yi * a[i]
    for zj, (e, _) in zip(z, eqs):
        for i in range(num_vars):
            combo[i] += zj * e[i]
    if any(v != 0 for v in combo):
        return False
    total = sum(yi * b for yi, (_, b, _) in zip(y, ineqs))
    total += sum(zj * c for zj, (_, c) in zip(z, eqs))
    if total > 0:
        return True
    strict_weight = sum(yi for yi, (_, _, s) in zip(y, ineqs) if s)
    return total == 0 and strict_weight > 0
