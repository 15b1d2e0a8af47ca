"""Exact integer matrix arithmetic: Smith normal form and lattice computations.

Everything here works over arbitrary-precision Python integers; no floats
anywhere.  Matrices are immutable row-major tuples of tuples.  The sparse
routine exists because boundary/differential matrices of simplicial objects
are large but mostly eliminate with unit pivots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]


def matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zero_matrix(nrows: int, ncols: int) -> Matrix:
    return tuple((0,) * ncols for _ in range(nrows))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    bt = list(zip(*b)) if b else []
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def determinant(a: Matrix) -> int:
    """Fraction-free Bareiss determinant of a square integer matrix."""
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant of non-square matrix")
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """Decomposition u @ m @ v == d with u, v unimodular and d diagonal.

    The diagonal entries are non-negative and form a divisibility chain.
    Inverses of the transforms are tracked alongside, which makes lattice
    membership problems direct to solve.
    """

    d: Matrix
    u: Matrix
    v: Matrix
    u_inv: Matrix
    v_inv: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0)))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithForm:
    """Full Smith normal form with transform tracking.

    Intended for matrices up to a few hundred entries on a side; the pivot is
    always a least-absolute-value nonzero entry, which keeps intermediate
    growth tame.
    """
    a = [list(map(int, row)) for row in m]
    nr = len(a)
    nc = len(a[0]) if a else 0
    u = [list(r) for r in identity_matrix(nr)]
    ui = [list(r) for r in identity_matrix(nr)]
    v = [list(r) for r in identity_matrix(nc)]
    vi = [list(r) for r in identity_matrix(nc)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in ui:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vi[i], vi[j] = vi[j], vi[i]

    def row_addmul(i, k, q):
        # row_i += q * row_k
        ai, ak = a[i], a[k]
        for j in range(nc):
            ai[j] += q * ak[j]
        uiw, ukw = u[i], u[k]
        for j in range(nr):
            uiw[j] += q * ukw[j]
        for r in ui:
            r[k] -= q * r[i]

    def col_addmul(j, k, q):
        # col_j += q * col_k
        for r in a:
            r[j] += q * r[k]
        for r in v:
            r[j] += q * r[k]
        vj = vi[j]
        vk = vi[k]
        for t in range(nc):
            vk[t] -= q * vj[t]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in ui:
            r[i] = -r[i]

    t = 0
    while True:
        # locate a least-absolute-value nonzero pivot in the trailing block
        pivot = None
        best = None
        for i in range(t, nr):
            ai = a[i]
            for j in range(t, nc):
                x = ai[j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(t, pivot[0])
        if pivot[1] != t:
            col_swap(t, pivot[1])

        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    if q:
                        row_addmul(i, t, -q)
                    if a[i][t] != 0:
                        # remainder strictly smaller: promote it
                        row_swap(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    if q:
                        col_addmul(j, t, -q)
                    if a[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if dirty:
                continue
            # row and column are clear; enforce divisibility of the rest
            d = a[t][t]
            bad = None
            for i in range(t + 1, nr):
                ai = a[i]
                for j in range(t + 1, nc):
                    if ai[j] % d != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if a[t][t] < 0:
            row_negate(t)
        t += 1

    return SmithForm(
        d=matrix(a), u=matrix(u), v=matrix(v), u_inv=matrix(ui), v_inv=matrix(vi)
    )


def snf_diagonal(m: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith form without transform tracking (in-place)."""
    a = [list(map(int, row)) for row in m]
    nr = len(a)
    nc = len(a[0]) if a else 0
    diag: list[int] = []
    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, nr):
            ai = a[i]
            for j in range(t, nc):
                x = ai[j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        i0, j0 = pivot
        if i0 != t:
            a[t], a[i0] = a[i0], a[t]
        if j0 != t:
            for r in a:
                r[t], r[j0] = r[j0], r[t]
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    if q:
                        at = a[t]
                        ai = a[i]
                        for j in range(t, nc):
                            ai[j] -= q * at[j]
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    if q:
                        for r in a:
                            r[j] -= q * r[t]
                    if a[t][j] != 0:
                        for r in a:
                            r[t], r[j] = r[j], r[t]
                        dirty = True
            if dirty:
                continue
            d = a[t][t]
            bad = None
            for i in range(t + 1, nr):
                ai = a[i]
                for j in range(t + 1, nc):
                    if ai[j] % d != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            at = a[t]
            ab = a[bad]
            for j in range(t, nc):
                at[j] += ab[j]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def sparse_invariant_factors(
    entries: dict[tuple[int, int], int], nrows: int, ncols: int
) -> tuple[int, list[int]]:
    """(rank, invariant factors) of a sparse integer matrix.

    Strategy: repeatedly eliminate with +-1 pivots drawn from a lazy heap
    ordered by Markowitz cost (each such step contributes an invariant
    factor 1), then hand whatever is left to the dense routine.  For
    simplicial boundary matrices the dense leftover is tiny.
    """
    import heapq

    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), val in entries.items():
        if val == 0:
            continue
        rows.setdefault(i, {})[j] = val
        cols.setdefault(j, set()).add(i)

    heap: list[tuple[int, int, int]] = []
    for i, row in rows.items():
        rl = len(row) - 1
        for j, val in row.items():
            if val in (1, -1):
                heap.append((rl * (len(cols[j]) - 1), i, j))
    heapq.heapify(heap)

    unit_count = 0
    while heap:
        cost, p, q = heapq.heappop(heap)
        if p not in rows or q not in rows[p] or rows[p][q] not in (1, -1):
            continue
        cur_cost = (len(rows[p]) - 1) * (len(cols[q]) - 1)
        if cur_cost > cost:
            heapq.heappush(heap, (cur_cost, p, q))
            continue
        pval = rows[p][q]
        prow = rows[p]
        for i in list(cols[q]):
            if i == p:
                continue
            irow = rows[i]
            mult = irow[q] * pval  # pval in {1,-1}
            for j, val in prow.items():
                cur = irow.get(j, 0) - mult * val
                if cur == 0:
                    if j in irow:
                        del irow[j]
                        cols[j].discard(i)
                else:
                    if j not in irow:
                        cols.setdefault(j, set()).add(i)
                    irow[j] = cur
                    if cur in (1, -1):
                        heapq.heappush(
                            heap, ((len(irow) - 1) * (len(cols[j]) - 1), i, j)
                        )
            if not irow:
                del rows[i]
        for j in prow:
            cols[j].discard(p)
            if not cols[j]:
                del cols[j]
        del rows[p]
        unit_count += 1

    if rows:
        live_rows = sorted(rows)
        live_cols = sorted({j for row in rows.values() for j in row})
        cindex = {j: k for k, j in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for k, i in enumerate(live_rows):
            for j, val in rows[i].items():
                dense[k][cindex[j]] = val
        rest = snf_diagonal(dense)
    else:
        rest = []
    factors = [1] * unit_count + [d for d in rest if d != 0]
    return len(factors), factors


def kernel_basis(m: Sequence[Sequence[int]]) -> Matrix:
    """Integer basis of ker(m), returned as columns of a matrix."""
    a = matrix(m)
    if not a:
        return ()
    nc = len(a[0])
    sf = smith_normal_form(a)
    r = sf.rank
    cols = [tuple(sf.v[i][j] for i in range(nc)) for j in range(r, nc)]
    return tuple(cols)


def columns_to_matrix(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(tuple(int(c[i]) for c in cols) for i in range(nrows))


def lattice_basis(gens: Matrix) -> Matrix:
    """Basis (as columns) of the lattice spanned by the columns of ``gens``."""
    if not gens or not gens[0]:
        return tuple(() for _ in gens)
    sf = smith_normal_form(gens)
    nrows = len(gens)
    r = sf.rank
    # lattice(gens) = lattice(u_inv @ d); its nonzero columns give a basis
    ud = matmul(sf.u_inv, sf.d)
    return tuple(tuple(ud[i][j] for j in range(r)) for i in range(nrows))


def solve_in_lattice(basis: Matrix, targets: Matrix) -> Matrix:
    """Coordinates x with basis @ x == targets; raises if not in the lattice.

    ``basis`` must have full column rank (as produced by lattice_basis).
    """
    nrows = len(basis)
    ncols = len(basis[0]) if basis and basis[0] else 0
    if ncols == 0:
        if any(any(x != 0 for x in row) for row in targets):
            raise ValueError("target not in zero lattice")
        return tuple(() for _ in range(0))
    sf = smith_normal_form(basis)
    if sf.rank != ncols:
        raise ValueError("basis does not have full column rank")
    um = matmul(sf.u, targets)
    ntargets = len(targets[0]) if targets else 0
    y = []
    for i in range(ncols):
        d = sf.d[i][i]
        row = []
        for j in range(ntargets):
            if um[i][j] % d != 0:
                raise ValueError("target not in lattice")
            row.append(um[i][j] // d)
        y.append(tuple(row))
    for i in range(ncols, nrows):
        if any(um[i][j] != 0 for j in range(ntargets)):
            raise ValueError("target not in lattice")
    return matmul(sf.v, matrix(y))


def normalize_factors(torsion: Iterable[int], free_rank: int) -> tuple[int, ...]:
    """Canonical invariant factor tuple: torsion in divisibility order, then 0s.

    Unit factors are dropped.  The input torsion list must already be a
    divisibility chain up to order (Smith diagonals are).
    """
    tor = sorted(abs(d) for d in torsion if abs(d) not in (0, 1))
    return tuple(tor) + (0,) * free_rank


def quotient_invariants(num_gens: Matrix, den_gens: Matrix) -> tuple[int, ...]:
    """Invariant factors of lattice(num_gens) / lattice(den_gens).

    Both arguments are matrices whose columns generate sublattices of the
    same ambient Z^n, with lattice(den_gens) contained in lattice(num_gens).
    """
    basis = lattice_basis(num_gens)
    r = len(basis[0]) if basis else 0
    if r == 0:
        return ()
    den_cols = len(den_gens[0]) if den_gens and den_gens[0] else 0
    if den_cols == 0:
        return normalize_factors([], r)
    coords = solve_in_lattice(basis, den_gens)
    diag = snf_diagonal(coords)
    rank = sum(1 for d in diag if d != 0)
    return normalize_factors(diag, r - rank)
