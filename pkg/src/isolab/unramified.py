"""Truncated unramified lifts of finite fields, with a Frobenius lift.

The ring behind every Witt/Dieudonne computation here is
Z[x] / (p^N, hbar(x)) where hbar is a fixed monic degree-m polynomial that
is irreducible mod p.  Reduction mod p gives F_{p^m}; sigma is the unique
ring automorphism lifting a |-> a^p, obtained by Hensel-lifting the root
x^p of hbar.  Working at explicit precision N keeps every valuation claim
certifiable.
"""

from functools import lru_cache

from .errors import InputError, PrecisionError

# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, low degree first)


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, f, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_rem(res, f, p)


def _poly_rem(a, f, p):
    a = a[:]
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            q = c * inv_lead % p
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - q * f[j]) % p
    del a[df:]
    return _poly_trim(a)


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a[:]), _poly_trim(b[:])
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _poly_powmod_frob(f, p, k):
    """x^(p^k) mod f over F_p, via k-fold composition of x^p mod f."""
    xp = _poly_rem([0] * p + [1], f, p)
    out = [0, 1]
    for _ in range(k):
        out = _poly_compose(out, xp, f, p)
    return out


def _poly_compose(g, h, f, p):
    out = []
    for c in reversed(g):
        out = _poly_mulmod(out, h, f, p)
        if c:
            if not out:
                out = [c % p]
            else:
                out[0] = (out[0] + c) % p
            out = _poly_trim(out)
    return out


def _is_irreducible(f, p):
    m = len(f) - 1
    if _poly_powmod_frob(f, p, m) != [0, 1]:
        return False
    for ell in {q for q in range(2, m + 1) if m % q == 0 and _prime(q)}:
        g = _poly_powmod_frob(f, p, m // ell)
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p  # g := x^(p^(m/ell)) - x
        if len(_poly_gcd(_poly_trim(g), list(f), p)) != 1:
            return False
    return True


def _prime(n):
    return n > 1 and all(n % k for k in range(2, int(n**0.5) + 1))


def default_modulus(p, m):
    """First monic degree-m polynomial (lexicographic in constant..x^(m-1))
    irreducible mod p.  Fixes the generator basis for F_{p^m} once and
    for all, so rendered elements are reproducible."""
    if m == 1:
        return (0, 1)  # F_p = Z[x]/(p, x)
    bound = p**m
    for code in range(bound):
        coeffs = []
        c = code
        for _ in range(m):
            coeffs.append(c % p)
            c //= p
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise InputError("no irreducible polynomial found (impossible)")


# ---------------------------------------------------------------------------


class FFElement:
    """Element of F_{p^m}, a polynomial of degree < m in the generator g."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        c = [x % field.p for x in coeffs]
        c += [0] * (field.m - len(c))
        self.coeffs = tuple(c[: field.m])

    def __add__(self, other):
        other = self.field.coerce(other)
        return FFElement(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self.field.coerce(other)
        return FFElement(self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return FFElement(self.field, [-a for a in self.coeffs])

    def __mul__(self, other):
        other = self.field.coerce(other)
        prod = _poly_mulmod(list(self.coeffs), list(other.coeffs), list(self.field.modulus), self.field.p)
        return FFElement(self.field, prod)

    __radd__ = __add__
    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        if self.is_zero():
            raise InputError("inverse of zero")
        # extended Euclid in F_p[x]
        p, f = self.field.p, list(self.field.modulus)
        r0, r1 = f[:], _poly_trim(list(self.coeffs))
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        c = pow(r1[0], -1, p)
        return FFElement(self.field, [c * x % p for x in s1])

    def frobenius(self, k=1):
        return self ** (self.field.p ** (k % self.field.m))

    def frobenius_inv(self, k=1):
        return self.frobenius(self.field.m - (k % self.field.m))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.coerce(other)
        return isinstance(other, FFElement) and self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        return "FF(%s)" % render_ff(self)


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_trim(res)


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _poly_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _poly_divmod(a, b, p):
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            qq = c * inv % p
            q[i - db] = qq
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - qq * b[j]) % p
    return _poly_trim(q), _poly_trim(a[:db])


class FiniteField:
    """F_{p^m} in a fixed polynomial basis."""

    def __init__(self, p, m, modulus=None):
        self.p = p
        self.m = m
        self.modulus = tuple(modulus) if modulus else default_modulus(p, m)
        if len(self.modulus) != m + 1:
            raise InputError("modulus degree mismatch")

    def __call__(self, coeffs):
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        return FFElement(self, list(coeffs))

    def coerce(self, x):
        if isinstance(x, FFElement):
            if x.field is not self:
                raise InputError("element from a different field")
            return x
        if isinstance(x, int):
            return FFElement(self, [x])
        raise InputError("cannot coerce %r" % (x,))

    def zero(self):
        return FFElement(self, [0])

    def one(self):
        return FFElement(self, [1])

    def generator(self):
        return FFElement(self, [0, 1])

    def elements(self):
        """All p^m elements, in a fixed order."""
        out = []
        for code in range(self.p**self.m):
            c, coeffs = code, []
            for _ in range(self.m):
                coeffs.append(c % self.p)
                c //= self.p
            out.append(FFElement(self, coeffs))
        return out

    def __repr__(self):
        return "FiniteField(%d^%d)" % (self.p, self.m)


@lru_cache(maxsize=None)
def finite_field(p, m):
    return FiniteField(p, m)


def render_ff(e):
    """Polynomial string in the generator g, e.g. "g^2+2*g+1"."""
    parts = []
    for i in range(e.field.m - 1, -1, -1):
        c = e.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append("g" if c == 1 else "%d*g" % c)
        else:
            parts.append("g^%d" % i if c == 1 else "%d*g^%d" % (c, i))
    return "+".join(parts) if parts else "0"


def parse_ff(field, text):
    """Inverse of render_ff; also accepts bare integers."""
    text = text.replace(" ", "")
    if not text:
        raise InputError("empty field element")
    coeffs = [0] * field.m
    for term in text.split("+"):
        if not term:
            raise InputError("bad field element %r" % text)
        if "g" not in term:
            coeffs[0] += int(term)
            continue
        head, _, tail = term.partition("g")
        c = int(head.rstrip("*")) if head else 1
        k = int(tail[1:]) if tail.startswith("^") else (1 if not tail else None)
        if k is None or k >= field.m:
            raise InputError("bad field element %r" % text)
        coeffs[k] += c
    return FFElement(field, coeffs)


# ---------------------------------------------------------------------------


class UElement:
    """Element of W_N(F_{p^m}) in the lift representation: an integer
    polynomial of degree < m, coefficients mod p^N."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        q = ring.pN
        c = [x % q for x in coeffs]
        c += [0] * (ring.m - len(c))
        self.coeffs = tuple(c[: ring.m])

    def _same(self, other):
        if isinstance(other, int):
            return UElement(self.ring, [other])
        if not isinstance(other, UElement) or other.ring is not self.ring:
            raise InputError("context mismatch")
        return other

    def __add__(self, other):
        other = self._same(other)
        return UElement(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self._same(other)
        return UElement(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return UElement(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other):
        other = self._same(other)
        r = self.ring
        raw = [0] * (2 * r.m - 1) if r.m > 1 else [0]
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    raw[i + j] += a * b
        return UElement(r, r._reduce_poly(raw))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._same(other) - self

    def __pow__(self, k):
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_unit(self):
        return not self.residue().is_zero()

    def valuation(self):
        """p-adic valuation; None when indistinguishable from 0 at
        precision N (meaning ">= N", never a number)."""
        if self.is_zero():
            return None
        v, p = 0, self.ring.p
        coeffs = list(self.coeffs)
        while all(c % p == 0 for c in coeffs):
            coeffs = [c // p for c in coeffs]
            v += 1
        return v

    def residue(self):
        return FFElement(self.ring.field, [c % self.ring.p for c in self.coeffs])

    def sigma(self, k=1):
        return self.ring.sigma(self, k)

    def inverse(self):
        if not self.is_unit():
            raise InputError("not a unit")
        r = self.ring
        z = r.teichmuller(self.residue().inverse())
        # Newton: z <- z(2 - u z) doubles p-adic accuracy each step
        steps = 0
        acc = 1
        while acc < r.N:
            z = z * (r.from_int(2) - self * z)
            acc *= 2
            steps += 1
            if steps > 64:
                raise PrecisionError("inversion failed to converge")
        return z

    def exact_div_p(self):
        if any(c % self.ring.p for c in self.coeffs):
            raise InputError("not divisible by p")
        # the quotient only carries N-1 certified digits but stays in-ring
        return UElement(self.ring, [c // self.ring.p for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, int):
            other = UElement(self.ring, [other])
        return isinstance(other, UElement) and self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __repr__(self):
        return "U(%s; p=%d,m=%d,N=%d)" % (list(self.coeffs), self.ring.p, self.ring.m, self.ring.N)


class UnramifiedRing:
    """W_N(F_{p^m}) = Z[x]/(p^N, hbar), with the Frobenius lift sigma.

    sigma is a genuine ring automorphism reducing to a |-> a^p mod p and
    satisfying sigma^m = id; both facts are asserted at construction.
    """

    def __init__(self, p, m, N, modulus=None):
        if N < 1:
            raise InputError("precision N must be >= 1")
        self.p, self.m, self.N = p, m, N
        self.pN = p**N
        self.field = finite_field(p, m) if modulus is None else FiniteField(p, m, modulus)
        self.modulus = self.field.modulus
        self._sigma_powers = self._build_sigma()

    # -- internal -----------------------------------------------------

    def _reduce_poly(self, raw):
        """Reduce an integer polynomial mod (p^N, hbar)."""
        f = self.modulus
        m = self.m
        raw = list(raw)
        for i in range(len(raw) - 1, m - 1, -1):
            c = raw[i]
            if c:
                for j in range(m + 1):
                    raw[i - m + j] -= c * f[j]
                raw[i] = 0
        return [c % self.pN for c in raw[:m]]

    def _build_sigma(self):
        if self.m == 1:
            return [None]
        # Hensel-lift the root x^p of hbar, starting mod p
        x = UElement(self, [0, 1])
        r = x ** self.p
        for _ in range(max(1, (self.N - 1).bit_length() + 1)):
            fr = self._eval_int_poly(self.modulus, r)
            dfr = self._eval_int_poly(_derivative(self.modulus), r)
            r = r - fr * dfr.inverse()
        if not self._eval_int_poly(self.modulus, r).is_zero():
            raise PrecisionError("Frobenius lift did not converge")
        powers = [UElement(self, [0, 1]), r]
        for _ in range(2, self.m):
            powers.append(self._eval_poly(powers[-1], r))
        # sigma^m must be the identity on the generator
        if self._eval_poly(powers[-1], r) != powers[0]:
            raise PrecisionError("sigma^m != id; modulus not unramified-compatible")
        return powers

    def _eval_int_poly(self, coeffs, point):
        out = self.zero()
        for c in reversed(coeffs):
            out = out * point + self.from_int(c)
        return out

    def _eval_poly(self, elem, point):
        out = self.zero()
        for c in reversed(elem.coeffs):
            out = out * point + self.from_int(c)
        return out

    # -- public -------------------------------------------------------

    def zero(self):
        return UElement(self, [0])

    def one(self):
        return UElement(self, [1])

    def from_int(self, k):
        return UElement(self, [k])

    def from_coeffs(self, coeffs):
        return UElement(self, list(coeffs))

    def sigma(self, elem, k=1):
        if elem.ring is not self:
            raise InputError("context mismatch")
        k %= self.m
        if k == 0 or self.m == 1:
            return elem
        return self._eval_poly(elem, self._sigma_powers[k])

    def sigma_inv(self, elem, k=1):
        return self.sigma(elem, self.m - (k % self.m))

    def teichmuller(self, c):
        """The multiplicative lift: the unique root of unity (or 0)
        reducing to c.  Computed as lift(c)^(p^(m*(N-1)))."""
        c = self.field.coerce(c)
        e = UElement(self, list(c.coeffs))
        return e ** (self.p ** (self.m * (self.N - 1)))

    def reduce_from(self, elem):
        """Reduce an element of a higher-precision ring over the same field."""
        if (elem.ring.p, elem.ring.m) != (self.p, self.m) or elem.ring.modulus != self.modulus:
            raise InputError("incompatible rings")
        if elem.ring.N < self.N:
            raise PrecisionError("cannot raise precision of an approximate value")
        return UElement(self, list(elem.coeffs))

    def __repr__(self):
        return "UnramifiedRing(p=%d, m=%d, N=%d)" % (self.p, self.m, self.N)


def _derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


@lru_cache(maxsize=None)
def unramified_ring(p, m, N):
    return UnramifiedRing(p, m, N)
