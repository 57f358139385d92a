"""q-Weil numbers: verification, construction, Honda-Tate invariants.

A q-Weil number is handed over as its monic integer minimal polynomial
together with (p, n), q = p^n.  Verification is fully exact:

* irreducibility over Q by integer factorization (small degrees),
* the functional equation T^e f(q/T) = f(0) f(T) coefficient by
  coefficient,
* the root-modulus condition via Sturm sequences on the minimal
  polynomial of the totally real element pi + q/pi, so no floating point
  is ever consulted.

Classification follows the three-way case split (rational sqrt(q) /
irrational real sqrt(q) / CM) and computes the division-algebra index as
the lcm of the orders of the local invariants in Q/Z.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .errors import InputError, PlaceResolutionError
from .newton import _is_prime, np_of_polynomial

__all__ = [
    "WeilNumber",
    "WeilRejection",
    "HondaTateData",
    "weil_verify",
    "weil_from_real_trace",
    "honda_tate",
    "albert_classify",
    "field_stable_under_power",
    "is_irreducible_q",
    "count_real_roots",
]


class WeilRejection(InputError):
    """Structured rejection naming the failed check."""

    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__("not a Weil number (%s)%s" % (reason, ": " + detail if detail else ""))


@dataclass(frozen=True)
class WeilNumber:
    """Validated q-Weil number. `minpoly` is descending, leading 1 first."""

    minpoly: tuple
    p: int
    n: int

    @property
    def e(self):
        return len(self.minpoly) - 1

    @property
    def q(self):
        return self.p**self.n

    def to_json(self):
        return {"minpoly": list(self.minpoly), "p": self.p, "n": self.n}


@dataclass(frozen=True)
class HondaTateData:
    case: str  # "Re" | "Ro" | "C"
    slopes: tuple  # v(pi)/v(q), one entry per unit of the hull
    e0: int
    e: int
    d: int
    g: int
    albert: str
    local_invariants: tuple  # ((place tag, Fraction mod 1), ...)

    def to_json(self):
        return {
            "case": self.case,
            "slopes": [str(s) for s in self.slopes],
            "e0": self.e0,
            "e": self.e,
            "d": self.d,
            "g": self.g,
            "albert": self.albert,
            "local_invariants": [[tag, str(v)] for tag, v in self.local_invariants],
        }


# ---------------------------------------------------------------------------
# integer / polynomial utilities (ascending coefficient lists over Fraction
# or int; all exact)


def _factor_int(n):
    n = abs(n)
    out = {}
    for q in (2, 3, 5, 7, 11, 13):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    f = 17
    while f * f <= n and f < 100000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        for q in _factor_large(n):
            out[q] = out.get(q, 0) + 1
    return out


def _factor_large(n):
    if n == 1:
        return []
    if _is_prime(n):
        return [n]
    d = _pollard_rho(n)
    return sorted(_factor_large(d) + _factor_large(n // d))


def _pollard_rho(n):
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise InputError("integer too hard to factor: %d" % n)


def _divisors(n):
    out = [1]
    for q, k in _factor_int(n).items():
        out = [d * q**i for d in out for i in range(k + 1)]
    return sorted(out)


def _poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod_exact(a, b):
    """Division in Q[x]; returns (quotient, remainder) over Fractions."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    b = _poly_trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(_poly_trim(a)) >= len(b):
        a = _poly_trim(a)
        k = len(a) - len(b)
        coef = a[-1] / b[-1]
        q[k] = coef
        for i, bc in enumerate(b):
            a[k + i] -= coef * bc
    return _poly_trim(q), _poly_trim(a)


def _int_poly_divides(d, f):
    """Does monic integer d divide monic integer f exactly over Z?"""
    q, r = _poly_divmod_exact(f, d)
    return not r and all(c.denominator == 1 for c in q)


# -- irreducibility over Q (monic integer polynomials, degree <= 16) --------


def _rational_roots(coeffs):
    c0 = coeffs[0]
    if c0 == 0:
        return [0]
    roots = []
    for d in _divisors(c0):
        for r in (d, -d):
            if _poly_eval(coeffs, r) == 0:
                roots.append(r)
    return roots


def _mod_factor_degrees(coeffs, ell):
    """Degrees (with multiplicity) of the irreducible factors mod ell, or
    None when the reduction is not squarefree/degree-preserving."""
    from .unramified import _poly_gcd, _poly_mulmod, _poly_rem, _poly_trim as trim

    f = trim([c % ell for c in coeffs])
    if len(f) != len(coeffs):
        return None
    df = trim([(i * c) % ell for i, c in enumerate(f)][1:])
    if len(_poly_gcd(list(f), df, ell)) != 1:
        return None
    degrees = []
    rest = list(f)
    k = 0
    w = [0, 1]
    while len(rest) - 1 >= 2 * (k + 1):
        k += 1
        w = _poly_powmod(w, ell, rest, ell)
        g = _poly_gcd(_poly_sub_x(w, ell), list(rest), ell)
        if len(g) > 1:
            degrees.extend([k] * ((len(g) - 1) // k))
            rest, _ = _poly_div_modp(rest, g, ell)
            w = _poly_rem(w, rest, ell) if len(rest) > 1 else [0]
    if len(rest) > 1:
        degrees.append(len(rest) - 1)
    return degrees


def _poly_powmod(base, e, f, p):
    from .unramified import _poly_mulmod

    out = [1]
    b = list(base)
    while e:
        if e & 1:
            out = _poly_mulmod(out, b, f, p)
        b = _poly_mulmod(b, b, f, p)
        e >>= 1
    return out


def _poly_sub_x(w, p):
    w = list(w)
    while len(w) < 2:
        w.append(0)
    w[1] = (w[1] - 1) % p
    from .unramified import _poly_trim as trim

    return trim(w)


def _poly_div_modp(a, b, p):
    from .unramified import _poly_divmod

    return _poly_divmod(list(a), list(b), p)


def is_irreducible_q(coeffs_ascending):
    """Irreducibility over Q of a monic integer polynomial (degree <= 16).

    Rational-root stripping, then factor-degree patterns modulo several
    primes, then a bounded Kronecker search as a complete backstop.
    """
    coeffs = [int(c) for c in coeffs_ascending]
    e = len(coeffs) - 1
    if e > 16:
        raise InputError("irreducibility test capped at degree 16")
    if e <= 0:
        raise InputError("constant polynomial")
    if e == 1:
        return True
    if _rational_roots(coeffs):
        return False
    if e <= 3:
        return True
    plausible = set(range(1, e))
    used = 0
    for ell in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        degs = _mod_factor_degrees(coeffs, ell)
        if degs is None:
            continue
        sums = {0}
        for dd in degs:
            sums |= {s + dd for s in sums}
        plausible &= sums
        used += 1
        if not plausible & set(range(1, e)):
            return True
        if used >= 6:
            break
    # degree-1 factors were excluded by the rational-root test; any proper
    # factorization leaves a factor of degree in [2, e/2]
    for g in sorted(d for d in plausible if 2 <= d <= e // 2):
        if _kronecker_has_factor(coeffs, g):
            return False
    return True


def _kronecker_has_factor(coeffs, g):
    """Search for a monic integer factor of degree g by interpolation."""
    from itertools import product

    xs = []
    k = 0
    while len(xs) < g + 1:
        xs.append(k if k >= 0 else k)
        k = -k if k > 0 else -k + 1
    vals = [_poly_eval(coeffs, x) for x in xs]
    if any(v == 0 for v in vals):
        return True  # rational root (caught earlier, defensive)
    choices = []
    for v in vals:
        ds = _divisors(v)
        choices.append([d for d in ds] + [-d for d in ds])
    for combo in product(*choices):
        cand = _lagrange_integer(xs, combo, g)
        if cand is None:
            continue
        if _int_poly_divides(cand, coeffs):
            return True
    return False


def _lagrange_integer(xs, ys, g):
    """Monic integer polynomial of degree g through the points, or None."""
    coeffs = [Fraction(0)] * (g + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, bk in enumerate(basis):
                new[k + 1] += bk
                new[k] -= xj * bk
            basis = new
            denom *= xi - xj
        for k, bk in enumerate(basis):
            coeffs[k] += yi * bk / denom
    if coeffs[g] != 1:
        return None
    if any(c.denominator != 1 for c in coeffs):
        return None
    return [int(c) for c in coeffs]


# -- Sturm machinery ---------------------------------------------------------


def _sturm_chain(f):
    f = [Fraction(c) for c in _poly_trim(f)]
    chain = [f, _poly_trim([i * c for i, c in enumerate(f)][1:])]
    while len(chain[-1]) > 1:
        _, r = _poly_divmod_exact(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    if chain[-1] and len(chain[-1]) == 1 and chain[-1][0] == 0:
        chain.pop()
    return [c for c in chain if c]


def _sign_variations(chain, x):
    signs = []
    for poly in chain:
        v = _poly_eval(poly, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_variations_inf(chain, positive):
    signs = []
    for poly in chain:
        lead = poly[-1]
        deg = len(poly) - 1
        s = 1 if lead > 0 else -1
        if not positive and deg % 2 == 1:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _squarefree_part(f):
    f = [Fraction(c) for c in _poly_trim(f)]
    if len(f) <= 2:
        return f
    df = _poly_trim([i * c for i, c in enumerate(f)][1:])
    g = _poly_gcd_q(f, df)
    if len(g) == 1:
        return f
    q, _ = _poly_divmod_exact(f, g)
    return q


def _poly_gcd_q(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        _, r = _poly_divmod_exact(a, b)
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def count_real_roots(f, lower=None, upper=None):
    """Distinct real roots of f in (lower, upper]; None endpoint = infinite."""
    f = _squarefree_part(f)
    chain = _sturm_chain(f)
    va = _sign_variations(chain, lower) if lower is not None else _sign_variations_inf(chain, positive=False)
    vb = _sign_variations(chain, upper) if upper is not None else _sign_variations_inf(chain, positive=True)
    return va - vb


# ---------------------------------------------------------------------------


def _trace_minpoly(coeffs_asc, q):
    """Minimal polynomial of beta = pi + q/pi in Q[x]/(f), ascending."""
    e = len(coeffs_asc) - 1
    if e == 1:
        pi = Fraction(-coeffs_asc[0], coeffs_asc[1])
        val = pi + q / pi
        return [-val, Fraction(1)]
    # q/pi = -q/c0 * (x^(e-1) + c_{e-1} x^(e-2) + ... + c_1), from f(pi)=0
    c0 = coeffs_asc[0]
    inv_times_q = [Fraction(-q * c, c0) for c in coeffs_asc[1:]]  # deg e-1
    beta = [Fraction(0)] * e
    for k, c in enumerate(inv_times_q):
        beta[k] += c
    beta[1] += 1
    # powers of beta in Q[x]/(f)
    fmod = [Fraction(c) for c in coeffs_asc]
    vecs = [[Fraction(1)] + [Fraction(0)] * (e - 1)]
    cur = vecs[0]
    for _ in range(e):
        cur = _mulmod_q(cur, beta, fmod)
        vecs.append(cur)
    # first linear dependency among vecs[0..k]
    for k in range(1, e + 1):
        dep = _solve_dependency(vecs[: k + 1])
        if dep is not None:
            return dep
    raise InputError("no minimal polynomial found (impossible)")


def _mulmod_q(a, b, f):
    e = len(f) - 1
    raw = [Fraction(0)] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                raw[i + j] += ai * bj
    for i in range(len(raw) - 1, e - 1, -1):
        c = raw[i]
        if c:
            for j in range(e + 1):
                raw[i - e + j] -= c * f[j]
    return raw[:e]


def _solve_dependency(vecs):
    """Monic dependency: vecs[k] = -sum a_i vecs[i] -> x^k + sum a_i x^i."""
    k = len(vecs) - 1
    rows = len(vecs[0])
    # solve sum_{i<k} a_i vecs[i] = -vecs[k]
    mat = [[vecs[i][r] for i in range(k)] + [-vecs[k][r]] for r in range(rows)]
    piv = []
    r0 = 0
    for col in range(k):
        sel = next((r for r in range(r0, rows) if mat[r][col] != 0), None)
        if sel is None:
            continue
        mat[r0], mat[sel] = mat[sel], mat[r0]
        inv = 1 / Fraction(mat[r0][col])
        mat[r0] = [v * inv for v in mat[r0]]
        for r in range(rows):
            if r != r0 and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[r0])]
        piv.append(col)
        r0 += 1
    # consistency
    for r in range(r0, rows):
        if mat[r][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for idx, col in enumerate(piv):
        sol[col] = mat[idx][k]
    return sol + [Fraction(1)]


def _roots_all_real_and_bounded(h, q):
    """All roots of h real, and every root beta satisfies beta^2 <= 4q."""
    h = _poly_trim([Fraction(c) for c in h])
    deg = len(h) - 1
    if count_real_roots(h) != len(_squarefree_part(h)) - 1:
        return False
    # polynomial with roots beta_i^2: C(t) = A(t)^2 - t B(t)^2 where
    # h(x) = A(x^2) + x B(x^2)
    A = [c for i, c in enumerate(h) if i % 2 == 0]
    B = [c for i, c in enumerate(h) if i % 2 == 1]
    C = _poly_sub(_poly_mul(A, A), [Fraction(0)] + _poly_mul(B, B))
    # shift: D(u) = C(u + 4q) has roots beta_i^2 - 4q; none may be positive
    D = _poly_shift(C, 4 * q)
    while D and D[0] == 0:
        D = D[1:]  # boundary roots beta^2 = 4q are allowed
    if not D:
        return True
    return count_real_roots(D, lower=Fraction(0), upper=None) == 0


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _poly_trim(
        [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    )


def _poly_shift(c, s):
    """Coefficients of C(u + s)."""
    out = [Fraction(0)] * len(c)
    for coef in reversed(c):
        # out = out * (u + s) + coef
        new = [Fraction(0)] * len(c)
        for i in range(len(c) - 1):
            new[i + 1] += out[i]
        for i in range(len(c)):
            new[i] += out[i] * s
        new[0] += coef
        out = new
    return _poly_trim(out)


# ---------------------------------------------------------------------------


def weil_verify(minpoly, p, n):
    """Validate a q-Weil number; raises WeilRejection naming the check.

    `minpoly` is descending, leading coefficient first.
    """
    coeffs_desc = [int(c) for c in minpoly]
    if any(int(c) != c for c in minpoly):
        raise WeilRejection("non-integral", "coefficients must be integers")
    if not coeffs_desc or coeffs_desc[0] != 1:
        raise WeilRejection("non-integral", "polynomial must be monic")
    if not _is_prime(p):
        raise InputError("%d is not prime" % p)
    if n < 1:
        raise InputError("n must be >= 1")
    asc = list(reversed(coeffs_desc))
    e = len(asc) - 1
    q = p**n
    if not is_irreducible_q(asc):
        raise WeilRejection("reducible")
    # functional equation: c_k q^k = c_0 c_{e-k} for all k
    c0 = asc[0]
    for k in range(e + 1):
        if asc[k] * q**k != c0 * asc[e - k]:
            raise WeilRejection("functional-equation")
    h = _trace_minpoly([Fraction(c) for c in asc], q)
    if not _roots_all_real_and_bounded(h, q):
        raise WeilRejection("root-modulus")
    return WeilNumber(tuple(coeffs_desc), p, n)


def weil_from_real_trace(beta, p, n):
    """The quadratic (or degree-one) Weil number with real trace beta.

    beta^2 < 4q gives the non-real quadratic T^2 - beta T + q; equality
    beta = +-2 sqrt(q) needs q square and gives the rational pi = beta/2.
    """
    beta = int(beta)
    if not _is_prime(p):
        raise InputError("%d is not prime" % p)
    q = p**n
    if beta * beta > 4 * q:
        raise InputError("beta^2 > 4q: trace too large for a Weil number")
    if beta * beta == 4 * q:
        r = isqrt(q)
        if r * r != q:
            raise InputError("beta = +-2 sqrt(q) needs q to be a square")
        return WeilNumber((1, -beta // 2), p, n)
    return WeilNumber((1, -beta, q), p, n)


def _certified_places(vertices, n):
    """Split the p-adic hull into certified places.

    A hull segment of slope a/b (lowest terms) and x-span w is a single
    place exactly when w == b; hiding several places with one slope behind
    a longer segment is refused rather than guessed.
    """
    places = []
    for (x1, y1), (x2, y2) in zip(vertices, vertices[1:]):
        span = x2 - x1
        slope = Fraction(y2 - y1, span)
        if slope.denominator != span:
            raise PlaceResolutionError(
                "place-resolution unsupported: hull segment of slope %s spans %d > %d"
                % (slope, span, slope.denominator)
            )
        places.append((span, slope / n))
    return places


def honda_tate(w):
    """Honda-Tate invariants of a validated Weil number."""
    asc = list(reversed(w.minpoly))
    e = w.e
    q = w.q
    if e == 1:
        # pi = +-p^(n/2)
        inv = [("p", Fraction(1, 2)), ("infinity", Fraction(1, 2))]
        return HondaTateData(
            case="Re",
            slopes=(Fraction(1, 2),),
            e0=1,
            e=1,
            d=2,
            g=1,
            albert="III(1)",
            local_invariants=tuple(inv),
        )
    if e == 2 and w.minpoly == (1, 0, -q):
        inv = [("infinity", Fraction(1, 2)), ("infinity'", Fraction(1, 2)), ("p", Fraction(0))]
        return HondaTateData(
            case="Ro",
            slopes=(Fraction(1, 2), Fraction(1, 2)),
            e0=2,
            e=2,
            d=2,
            g=2,
            albert="III(2)",
            local_invariants=tuple(inv),
        )
    if e % 2 != 0:
        raise InputError("CM case needs even degree; input was not verified")
    hull = np_of_polynomial(w.minpoly, w.p)
    places = _certified_places(hull.vertices, w.n)
    slopes = []
    invariants = []
    denoms = []
    for idx, (span, t) in enumerate(places):
        slopes.extend([t] * span)
        inv = (t * span) % 1
        invariants.append(("p|%d:deg=%d" % (idx, span), inv))
        denoms.append(inv.denominator)
    d = lcm(*denoms) if denoms else 1
    if (e * d) % 2 != 0:
        raise InputError("parity failure in 2g = e*d (unexpected)")
    g = e * d // 2
    slopes = tuple(sorted(slopes))
    if tuple(sorted(1 - s for s in slopes)) != slopes:
        raise InputError("slope multiset not symmetric (unexpected for a Weil number)")
    return HondaTateData(
        case="C",
        slopes=slopes,
        e0=e // 2,
        e=e,
        d=d,
        g=g,
        albert="IV(%d,%d)" % (e // 2, d),
        local_invariants=tuple(invariants),
    )


def albert_classify(e0, e, d, is_totally_real, is_definite=None):
    """Name the Albert type from the basic invariants."""
    if e0 < 1 or d < 1:
        raise InputError("e0 and d must be positive")
    if e == 2 * e0:
        return "IV(%d,%d)" % (e0, d)
    if e != e0:
        raise InputError("inconsistent (e, e0): e must be e0 or 2*e0")
    if not is_totally_real:
        raise InputError("e = e0 forces a totally real centre")
    if d == 1:
        return "I(%d)" % e0
    if d == 2:
        if is_definite is None:
            raise InputError("definiteness needed to split types II and III")
        return ("III(%d)" if is_definite else "II(%d)") % e0
    raise InputError("no Albert type with d = %d over a totally real field" % d)


def field_stable_under_power(w, k):
    """Whether Q(pi^k) = Q(pi): the field does not shrink under pi -> pi^k."""
    asc = [Fraction(c) for c in reversed(w.minpoly)]
    e = w.e
    pik = [Fraction(0)] * e
    pik[0] = Fraction(1)
    x = [Fraction(0)] * e
    if e == 1:
        return True
    x[1] = Fraction(1)
    for _ in range(k):
        pik = _mulmod_q(pik, x, asc)
    vecs = [[Fraction(1)] + [Fraction(0)] * (e - 1)]
    cur = vecs[0]
    for _ in range(e):
        cur = _mulmod_q(cur, pik, asc)
        vecs.append(cur)
    for deg in range(1, e + 1):
        if _solve_dependency(vecs[: deg + 1]) is not None:
            return deg == e
    return False
