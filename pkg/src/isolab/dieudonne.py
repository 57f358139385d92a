"""Module presentations with a semilinear Frobenius over W_N(F_{p^m}).

The F-matrix acts on coordinate columns as x |-> M . sigma(x) (sigma
applied entrywise to the coordinates), the V-matrix as x |-> M' .
sigma^{-1}(x).  Provides the cyclic building blocks of each pure slope,
a-numbers by exact row reduction mod p, duality, the display normal form
with its Cayley-Hamilton slope polygon, the sigma-trivial characteristic
polynomial route, and the elementary-divisor computation for deformation
torus quotients.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, PrecisionError
from .newton import ValuationPolygon, lower_convex_hull, np_from_slopes
from .snf import elementary_divisors

__all__ = [
    "DieudonnePresentation",
    "DisplayNormalForm",
    "TorsionProfile",
    "gmn_module",
    "gmn_normal_form",
    "a_number",
    "dualize",
    "np_of_display",
    "np_sigma_trivial",
    "display_matrix",
    "serre_tate_torsion",
    "serre_tate_relation_matrix",
]


class DieudonnePresentation:
    """Free rank-h module with sigma-linear F (and optionally V)."""

    def __init__(self, context, F_matrix, V_matrix=None, ht=None, dim=None):
        self.context = context
        self.F = _as_matrix(context, F_matrix)
        self.h = len(self.F)
        self.V = _as_matrix(context, V_matrix) if V_matrix is not None else None
        self.ht = ht if ht is not None else self.h
        self.dim = dim
        if self.V is not None:
            self._check_fv()

    def _check_fv(self):
        ring = self.context.ring
        p = ring.from_int(self.context.p)
        fsv = _matmul(self.F, _mat_sigma(ring, self.V, 1))
        vsf = _matmul(self.V, _mat_sigma(ring, self.F, -1))
        for i in range(self.h):
            for j in range(self.h):
                want = p if i == j else ring.zero()
                if fsv[i][j] != want or vsf[i][j] != want:
                    raise InputError("F.sigma(V) and V.sigma^-1(F) must both be p*Id")

    def det_valuation(self):
        """Valuation of det(F); None when not certifiable at precision N.

        Only supported over F_p, where the characteristic polynomial is
        an honest matrix invariant of the sigma-linear map.
        """
        if self.context.m != 1:
            raise InputError("det valuation is only computed over F_p")
        c = _char_poly_int(self.F)
        det = c[-1] % self.context.ring.pN
        return _int_valuation(det, self.context.p, self.context.N)

    def to_json(self):
        def entry(e):
            return e.coeffs[0] if self.context.m == 1 else list(e.coeffs)

        return {
            "p": self.context.p,
            "m": self.context.m,
            "N": self.context.N,
            "h": self.h,
            "F": [[entry(e) for e in row] for row in self.F],
            "V": None if self.V is None else [[entry(e) for e in row] for row in self.V],
        }


def _as_matrix(context, rows):
    ring = context.ring
    out = []
    for row in rows:
        r = []
        for e in row:
            if isinstance(e, int):
                e = ring.from_int(e)
            elif getattr(e, "ring", None) is not ring:
                raise InputError("matrix entry from a different context")
            r.append(e)
        out.append(tuple(r))
    n = len(out)
    if any(len(r) != n for r in out):
        raise InputError("matrix must be square")
    return tuple(out)


def _matmul(A, B):
    n = len(A)
    ring0 = A[0][0].ring
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ring0.zero()
            for k in range(n):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mat_sigma(ring, M, k):
    if k >= 0:
        return tuple(tuple(ring.sigma(e, k) for e in row) for row in M)
    return tuple(tuple(ring.sigma_inv(e, -k) for e in row) for row in M)


def _transpose(M):
    return tuple(tuple(M[j][i] for j in range(len(M))) for i in range(len(M)))


def _int_valuation(value, p, N):
    if value % p**N == 0:
        return None
    v = 0
    while value % p == 0:
        value //= p
        v += 1
    return v


# ---------------------------------------------------------------------------


def gmn_module(m, n, context):
    """The rank m+n cyclic presentation of the pure-slope building block:
    F e_i = e_{i+m}, V e_i = e_{i+n}, e_{i+h} = p e_i.  Tagged ht = m+n,
    dim = m; F^h = p^m on the whole module."""
    from math import gcd

    if m < 0 or n < 0 or (m == 0 and n == 0):
        raise InputError("need m, n >= 0, not both zero")
    if gcd(m, n) != 1:
        raise InputError("(%d,%d) is not coprime" % (m, n))
    h = m + n
    if context.N < h + 2:
        raise InputError("context precision N=%d too low; need >= %d" % (context.N, h + 2))
    ring = context.ring
    F = [[ring.zero() for _ in range(h)] for _ in range(h)]
    V = [[ring.zero() for _ in range(h)] for _ in range(h)]
    for i in range(h):
        F[(i + m) % h][i] = ring.from_int(context.p ** ((i + m) // h))
        V[(i + n) % h][i] = ring.from_int(context.p ** ((i + n) // h))
    return DieudonnePresentation(context, F, V, ht=h, dim=m)


def a_number(pres):
    """dim_K of M / (FM + VM) mod p, by exact row reduction over F_{p^m}."""
    if pres.V is None:
        raise InputError("a-number needs the V action")
    field = pres.context.field
    cols = []
    for M in (pres.F, pres.V):
        for j in range(pres.h):
            cols.append([M[i][j].residue() for i in range(pres.h)])
    rank = _rank_ff(cols, field)
    return pres.h - rank


def _rank_ff(vectors, field):
    rows = [list(v) for v in vectors]
    rank = 0
    col = 0
    nrows = len(rows)
    dim = len(rows[0]) if rows else 0
    while col < dim and rank < nrows:
        piv = next((r for r in range(rank, nrows) if not rows[r][col].is_zero()), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [inv * x for x in rows[rank]]
        for r in range(nrows):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def dualize(pres):
    """Dual presentation: F* = sigma(V^T), V* = sigma^{-1}(F^T)."""
    if pres.V is None:
        raise InputError("dualizing needs the V action")
    ring = pres.context.ring
    Fd = _mat_sigma(ring, _transpose(pres.V), 1)
    Vd = _mat_sigma(ring, _transpose(pres.F), -1)
    dim = None if pres.dim is None else pres.ht - pres.dim
    return DieudonnePresentation(pres.context, Fd, Vd, ht=pres.ht, dim=dim)


# ---------------------------------------------------------------------------
# display normal form


class DisplayNormalForm:
    """The almost-companion F-matrix shape with block size s.

    Free entries a_{i,j} live at 1 <= i <= s, s <= j <= h (1-based), with
    a_{1,h} a unit; all other positions are forced: 1's below the diagonal
    of the leading s x s block, a single bridging 1, and p's below the
    diagonal of the trailing block.  The attached group has height h and
    dimension h - s.
    """

    def __init__(self, context, h, s, entries):
        if not (1 <= s <= h - 1):
            raise InputError("block size s must satisfy 1 <= s <= h-1")
        self.context = context
        self.h, self.s = h, s
        ring = context.ring
        table = {}
        for (i, j), e in dict(entries).items():
            if not (1 <= i <= s and s <= j <= h):
                raise InputError("entry (%d,%d) outside the normal-form window" % (i, j))
            if isinstance(e, int):
                e = ring.from_int(e)
            elif e.ring is not ring:
                raise InputError("entry from a different context")
            if not e.is_zero():
                table[(i, j)] = e
        top = table.get((1, h))
        if top is None or not top.is_unit():
            raise InputError("a_{1,h} must be a unit")
        self.entries = table

    @property
    def dim(self):
        return self.h - self.s

    def is_zero_unit(self):
        return all(e.is_unit() for e in self.entries.values())


def gmn_normal_form(m, n, context):
    """Normal form of the pure building block: s = n, single unit a_{1,h}."""
    if m < 1 or n < 1:
        raise InputError("normal form needs m, n >= 1")
    h = m + n
    if context.N < h + 2:
        raise InputError("context precision too low")
    return DisplayNormalForm(context, h, n, {(1, h): 1})


def np_of_display(dnf, method="auto"):
    """Newton polygon of the group presented by a display normal form.

    The cyclic vector e_1 satisfies a monic degree-h twisted polynomial
    whose coefficient at F^(h-t) collects the anti-diagonal j - i = t - 1
    with weights p^(j-s) and coefficient twists sigma^(h-j); the polygon
    is the lower hull of its coefficient valuations, ending at (h, h-s).
    For all-zero-or-unit entries the hull shortcut (0,0), (j+1-i, j-s) is
    available and exact because distinct p-weights cannot cancel.
    """
    if method not in ("auto", "general", "fast"):
        raise InputError("method must be auto, general or fast")
    if method == "fast" or (method == "auto" and dnf.is_zero_unit()):
        pts = [(0, 0)] + [(j + 1 - i, j - dnf.s) for (i, j) in dnf.entries]
        return _hull_to_group_polygon(pts, dnf.h, dnf.dim)
    ring = dnf.context.ring
    p = dnf.context.p
    points = [(0, 0)]
    for t in range(1, dnf.h + 1):
        slots = [(i, j) for (i, j) in dnf.entries if j - i == t - 1]
        if not slots:
            continue
        acc = ring.zero()
        for i, j in slots:
            acc = acc + ring.from_int(p) ** (j - dnf.s) * ring.sigma(dnf.entries[(i, j)], dnf.h - j)
        v = acc.valuation()
        if v is None:
            raise PrecisionError(
                "coefficient of F^%d vanishes at precision N=%d; raise N"
                % (dnf.h - t, dnf.context.N)
            )
        points.append((t, v))
    return _hull_to_group_polygon(points, dnf.h, dnf.dim)


def _hull_to_group_polygon(points, h, dim):
    verts = lower_convex_hull(points)
    if verts[-1] != (h, dim):
        raise InputError("hull does not end at (h, dim) = (%d, %d)" % (h, dim))
    slopes = []
    for (x1, y1), (x2, y2) in zip(verts, verts[1:]):
        slopes.extend([Fraction(y2 - y1, x2 - x1)] * (x2 - x1))
    return np_from_slopes(slopes)


def display_matrix(dnf):
    """The full h x h F-matrix of the display (columns are images)."""
    ring = dnf.context.ring
    p = ring.from_int(dnf.context.p)
    h, s = dnf.h, dnf.s
    M = [[ring.zero() for _ in range(h)] for _ in range(h)]
    for jp in range(1, s):
        M[jp][jp - 1] = ring.one()  # subdiagonal of the s x s block
    M[s][s - 1] = ring.one()  # bridging 1 below a_{s,s}
    for jp in range(s + 1, h):
        M[jp][jp - 1] = p  # subdiagonal p's in the trailing block
    for (i, j), e in dnf.entries.items():
        M[i - 1][j - 1] = M[i - 1][j - 1] + (e if j == s else p * e)
    return tuple(tuple(row) for row in M)


# ---------------------------------------------------------------------------
# sigma-trivial characteristic-polynomial route (base field F_p)


def np_sigma_trivial(matrix_or_pres, context=None):
    """Valuation polygon of det(T - F) for an F-matrix over W_N(F_p).

    Slopes may leave [0,1] (nothing caps a matrix valuation), so the
    result is the raw hull; `to_newton_polygon` converts when the slopes
    are group-like.  Certification: the determinant must be nonzero at
    precision N; interior coefficients that vanish at precision N sit
    strictly above the certified hull and are safely ignored.
    """
    if isinstance(matrix_or_pres, DieudonnePresentation):
        pres = matrix_or_pres
        context = pres.context
        M = pres.F
    else:
        if context is None:
            raise InputError("a context is required with a raw matrix")
        M = _as_matrix(context, matrix_or_pres)
    if context.m != 1:
        raise InputError("sigma-trivial route requires base field F_p")
    c = _char_poly_int(M)
    p, N = context.p, context.N
    pN = p**N
    h = len(M)
    if c[-1] % pN == 0:
        raise PrecisionError("det(F) vanishes at precision N=%d; raise N" % N)
    points = [(0, 0)]
    for i in range(1, h + 1):
        ci = c[i] % pN
        if ci == 0:
            continue  # true valuation >= N > certified hull; irrelevant
        points.append((i, _int_valuation(ci, p, N)))
    return ValuationPolygon(h, points)


def _char_poly_int(M):
    """char(T) = T^h + c_1 T^(h-1) + ... + c_h for an integer-lift matrix,
    by the Faddeev-LeVerrier recursion over exact rationals."""
    h = len(M)
    A = [[Fraction(e.coeffs[0]) for e in row] for row in M]
    Mk = [row[:] for row in A]
    coeffs = [Fraction(1)]
    for k in range(1, h + 1):
        ck = -sum(Mk[i][i] for i in range(h)) / k
        coeffs.append(ck)
        if k == h:
            break
        for i in range(h):
            Mk[i][i] += ck
        Mk = [
            [sum(A[i][t] * Mk[t][j] for t in range(h)) for j in range(h)]
            for i in range(h)
        ]
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise InputError("characteristic polynomial not integral (impossible)")
        out.append(int(c))
    return out


# ---------------------------------------------------------------------------
# torsion of the polarized deformation quotient


@dataclass(frozen=True)
class TorsionProfile:
    p: int
    exponents: tuple
    orders: tuple  # sorted multiset of cyclic orders, each a power of p

    def to_json(self):
        return {"p": self.p, "exponents": list(self.exponents), "orders": [str(o) for o in self.orders]}


def serre_tate_relation_matrix(exponents, p):
    """Relations u (x) lam(v) - v (x) lam(u) on Z^(g*g), lam = diag(p^e_i));
    one column per pair a < b."""
    g = len(exponents)
    cols = []
    for a in range(g):
        for b in range(a + 1, g):
            col = [0] * (g * g)
            col[a * g + b] = p ** exponents[b]
            col[b * g + a] = -(p ** exponents[a])
            cols.append(col)
    return [[col[r] for col in cols] for r in range(g * g)]


def serre_tate_torsion(exponents, p):
    """Elementary divisors of the torsion of the relation quotient.

    The result is the multiset {p^(e_i) : 1 <= i < j <= g} with unit
    entries dropped, computed by Smith normal form of the explicit
    relation matrix (not by the closed form, which tests use as oracle).
    """
    exponents = tuple(int(e) for e in exponents)
    if not exponents or any(e < 0 for e in exponents):
        raise InputError("need g >= 1 sorted non-negative exponents")
    if list(exponents) != sorted(exponents):
        raise InputError("exponents must be sorted ascending")
    if len(exponents) == 1:
        return TorsionProfile(p, exponents, ())
    mat = serre_tate_relation_matrix(exponents, p)
    orders = tuple(sorted(elementary_divisors(mat)))
    return TorsionProfile(p, exponents, orders)
