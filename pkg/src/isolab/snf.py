"""Smith normal form of integer matrices, exact and dependency-free.

Returns the diagonal invariants d_1 | d_2 | ... ; used for elementary
divisors of torsion quotients Z^n / (columns).
"""


def smith_normal_form(rows):
    """Diagonal of the Smith normal form of an integer matrix.

    `rows` is a list of lists; the matrix is copied, never mutated.
    The returned list has min(n, m) non-negative entries with each
    dividing the next.
    """
    a = [list(map(int, r)) for r in rows]
    if not a or not a[0]:
        return []
    n, m = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(n, m):
        piv = _smallest_nonzero(a, t)
        if piv is None:
            break
        r, c = piv
        a[t], a[r] = a[r], a[t]
        for row in a:
            row[t], row[c] = row[c], row[t]
        while True:
            # clear column t
            dirty = False
            for r in range(t + 1, n):
                if a[r][t]:
                    q = a[r][t] // a[t][t]
                    for j in range(m):
                        a[r][j] -= q * a[t][j]
                    if a[r][t]:
                        a[t], a[r] = a[r], a[t]
                        dirty = True
            # clear row t
            for c in range(t + 1, m):
                if a[t][c]:
                    q = a[t][c] // a[t][t]
                    for i in range(n):
                        a[i][c] -= q * a[i][t]
                    if a[t][c]:
                        for i in range(n):
                            a[i][t], a[i][c] = a[i][c], a[i][t]
                        dirty = True
            if not dirty:
                break
        # force divisibility of the remaining block by the pivot
        piv_val = a[t][t]
        bad = next(
            ((i, j) for i in range(t + 1, n) for j in range(t + 1, m) if a[i][j] % piv_val),
            None,
        )
        if bad is not None:
            i, _ = bad
            for j in range(m):
                a[t][j] += a[i][j]
            continue
        t += 1
    for k in range(min(n, m)):
        diag.append(abs(a[k][k]) if k < t else 0)
    return diag


def _smallest_nonzero(a, t):
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            v = abs(a[i][j])
            if v and (best is None or v < abs(a[best[0]][best[1]])):
                best = (i, j)
    return best


def elementary_divisors(rows):
    """Nontrivial invariant factors (> 1) of coker(matrix), ascending."""
    return [d for d in smith_normal_form(rows) if d > 1]
