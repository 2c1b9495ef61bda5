"""Dense univariate polynomials over Q and over F_p, plus Gaussian rationals.

Polynomials are tuples of Fractions (or ints mod p) in ascending degree with
no trailing zeros; the zero polynomial is the empty tuple.
"""

from fractions import Fraction

from .errors import NotCoprime, ProductMismatch
from .numbers import invmod, is_prime, vp

# -- polynomials over Q -----------------------------------------------------


def poly(coeffs) -> tuple:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def deg(f) -> int:
    """Degree, with deg 0 = -1."""
    return len(f) - 1


def padd(f, g):
    n = max(len(f), len(g))
    out = [Fraction(0)] * n
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] += c
    return poly(out)


def pneg(f):
    return tuple(-c for c in f)

def psub(f, g):
    return padd(f, pneg(g))


def pscale(a, f):
    a = Fraction(a)
    if a == 0:
        return ()
    return tuple(a * c for c in f)


def pmul(f, g):
    if not f or not g:
        return ()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly(out)


def pdivmod(f, g):
    """Exact euclidean division over Q; g nonzero."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(f) - len(g) + 1)
    r = list(f)
    dg, lc = deg(g), g[-1]
    while len(r) >= len(g) and any(c for c in r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(g):
            break
        k = len(r) - len(g)
        c = r[-1] / lc
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] -= c * b
        r.pop()
    return poly(q), poly(r)


def peval(f, x):
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def pderiv(f):
    return poly([i * c for i, c in enumerate(f)][1:])


def pshift(f, alpha):
    """Taylor coefficients of f at alpha, i.e. g with f(T) = g(T - alpha)."""
    alpha = Fraction(alpha)
    out = list(f)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += alpha * out[j + 1]
    return tuple(out)


def pgcd(f, g):
    a, b = f, g
    while b:
        a, b = b, pdivmod(a, b)[1]
    if a and a[-1] != 1:
        a = pscale(1 / a[-1], a)
    return a


def p_multiplicity(f, p):
    """Largest k with p**k dividing f; f nonzero, deg p >= 1."""
    if not f:
        raise ValueError("multiplicity in the zero polynomial")
    k = 0
    while True:
        q, r = pdivmod(f, p)
        if r:
            return k
        f = q
        k += 1


def is_monic(f) -> bool:
    return bool(f) and f[-1] == 1


def sylvester_resultant(f, g) -> Fraction:
    """Res(f, g) as the Sylvester determinant (Res = lc(f)^deg g * prod g(roots f))."""
    n, m = deg(f), deg(g)
    if n < 0 and m < 0:
        raise ValueError("resultant of two zero polynomials")
    if n < 0 or m < 0:
        return Fraction(0)
    if n == 0:
        return f[0] ** m
    if m == 0:
        return g[0] ** n
    size = n + m
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(m):
        rows.append([Fraction(0)] * i + fr + [Fraction(0)] * (size - n - 1 - i))
    for i in range(n):
        rows.append([Fraction(0)] * i + gr + [Fraction(0)] * (size - m - 1 - i))
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = rows[r][col] * inv
                for c in range(col, size):
                    rows[r][c] -= factor * rows[col][c]
    return det


# -- polynomials over F_p ---------------------------------------------------


def fp_poly(coeffs, p):
    out = [int(c) % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def fp_reduce(f, p):
    """Reduce a Q-polynomial with p-integral coefficients mod p."""
    out = []
    for c in f:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise ValueError("coefficient not p-integral")
        out.append(c.numerator * invmod(c.denominator, p) % p)
    return fp_poly(out, p)


def fp_add(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return fp_poly(out, p)


def fp_mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return fp_poly(out, p)


def fp_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError
    inv = invmod(g[-1], p)
    q = [0] * max(0, len(f) - len(g) + 1)
    r = list(f)
    while len(r) >= len(g):
        if r[-1] == 0:
            r.pop()
            continue
        k = len(r) - len(g)
        c = r[-1] * inv % p
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = (r[k + i] - c * b) % p
        r.pop()
    return fp_poly(q, p), fp_poly(r, p)


def fp_gcd(f, g, p):
    a, b = f, g
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    if a and a[-1] != 1:
        inv = invmod(a[-1], p)
        a = fp_poly([c * inv for c in a], p)
    return a


def fp_powmod(f, e, mod, p):
    result = (1,)
    base = fp_divmod(f, mod, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod, p)[1]
        base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def fp_multiplicity(f, g, p):
    k = 0
    while True:
        q, r = fp_divmod(f, g, p)
        if r:
            return k
        f = q
        k += 1


def fp_irreducible(f, p) -> bool:
    """Rabin's test: f irreducible over F_p."""
    d = deg(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    x = (0, 1)
    xq = fp_powmod(x, p ** d, f, p)
    if xq != fp_divmod(x, f, p)[1]:
        return False
    for q in _prime_divisors(d):
        e = d // q
        xe = fp_powmod(x, p ** e, f, p)
        diff = fp_add(xe, fp_poly([-c for c in x], p), p)
        if deg(fp_gcd(diff, f, p)) != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- Hensel lifting of coprime factorizations -------------------------------


def _zp_poly(coeffs, m):
    out = [c % m for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _zp_mul(f, g, m):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % m
    return _zp_poly(out, m)


def _zp_divmod_monic(f, g, m):
    q = [0] * max(0, len(f) - len(g) + 1)
    r = list(f)
    while len(r) >= len(g):
        if r[-1] % m == 0:
            r.pop()
            continue
        k = len(r) - len(g)
        c = r[-1] % m
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = (r[k + i] - c * b) % m
        r.pop()
    return _zp_poly(q, m), _zp_poly(r, m)


def hensel_pair_lift(f, g, h, p, N):
    """Lift f = g*h (mod p), g,h monic coprime mod p, to the same shape mod p^N.

    Classical linear Hensel with Bezout data refreshed each step; returns the
    lifted monic pair (g, h) with integer coefficients reduced mod p^N.
    """
    gp = fp_poly(g, p)
    hp = fp_poly(h, p)
    one, s, t = _fp_bezout(gp, hp, p)
    if deg(one) != 0:
        raise NotCoprime("factors share a root mod p")
    inv = invmod(one[0], p)
    s = fp_poly([c * inv for c in s], p)
    t = fp_poly([c * inv for c in t], p)
    g_cur = [int(c) for c in g]
    h_cur = [int(c) for c in h]
    for k in range(1, N):
        mod = p ** (k + 1)
        prod = _zp_mul(tuple(g_cur), tuple(h_cur), mod)
        diff = [(a - b) % mod for a, b in _zip_pad(f, prod)]
        if all(c % p ** (k + 1) == 0 for c in diff):
            continue
        assert all(c % p ** k == 0 for c in diff), "lift invariant broken"
        e = [c // p ** k % p for c in diff]
        # delta_g = (e*t mod g), delta_h = (e*s mod h), correction at level p^k
        et = fp_mul(fp_poly(e, p), t, p)
        es = fp_mul(fp_poly(e, p), s, p)
        dg = fp_divmod(et, fp_poly(g_cur, p), p)[1]
        dh = fp_divmod(es, fp_poly(h_cur, p), p)[1]
        g_cur = [(a + p ** k * b) % mod for a, b in _zip_pad(g_cur, dg)]
        h_cur = [(a + p ** k * b) % mod for a, b in _zip_pad(h_cur, dh)]
    modN = p ** N
    return _zp_poly(g_cur, modN), _zp_poly(h_cur, modN)


def _zip_pad(f, g):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return zip(f, g)


def _fp_bezout(f, g, p):
    """Extended euclid over F_p[T]: returns (gcd, s, t) with s*f + t*g = gcd."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, fp_add(s0, fp_poly([-c for c in fp_mul(q, s1, p)], p), p)
        t0, t1 = t1, fp_add(t0, fp_poly([-c for c in fp_mul(q, t1, p)], p), p)
    return r0, s0, t0


def hensel_multi_lift(f, factors, p, N):
    """Lift a pairwise-coprime monic factorization of f mod p to mod p^N."""
    fint = [int(c) for c in f]
    prod = (1,)
    for fac in factors:
        prod = fp_mul(prod, fp_poly(fac, p), p)
    if prod != fp_reduce(poly(fint), p):
        raise ProductMismatch("seed factors do not multiply to G mod p")
    if len(factors) == 1:
        return [_zp_poly(fint, p ** N)]
    rest = (1,)
    for fac in factors[1:]:
        rest = fp_mul(rest, fp_poly(fac, p), p)
    g_lift, h_lift = hensel_pair_lift(tuple(fint), fp_poly(factors[0], p), rest, p, N)
    sub = hensel_multi_lift(h_lift, factors[1:], p, N)
    return [g_lift] + sub


# -- irreducibility over Q --------------------------------------------------


def rational_roots(f):
    """All rational roots of a nonzero f in Q[T]."""
    if not f:
        raise ValueError("zero polynomial")
    k = 0
    while f[k] == 0:
        k += 1
    f = f[k:]
    roots = set([Fraction(0)] if k else [])
    den = 1
    for c in f:
        den = den * Fraction(c).denominator
    g = [int(c * den) for c in f]
    from math import gcd as _g

    content = 0
    for c in g:
        content = _g(content, abs(c))
    g = [c // content for c in g]
    a0, an = g[0], g[-1]
    for r in _divisors(abs(a0)) or [1]:
        for s in _divisors(abs(an)):
            for sign in (1, -1):
                cand = Fraction(sign * r, s)
                if peval(f, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisors(n):
    if n == 0:
        return []
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def is_irreducible_q(f) -> bool:
    """Irreducibility over Q for desk-scale polynomials.

    Exact for degree <= 4 (rational roots plus quadratic-pair search); for
    higher degree falls back on a mod-p certificate and raises when no small
    prime settles the question.
    """
    f = poly(f)
    d = deg(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    if rational_roots(f):
        return False
    if d <= 3:
        return True
    monic = pscale(1 / f[-1], f)
    if d == 4:
        return not _quartic_splits(monic)
    p = 2
    for _ in range(25):
        try:
            fp = fp_reduce(monic, p)
        except ValueError:
            fp = ()
        if deg(fp) == d and fp_irreducible(fp, p):
            return True
        p = _next_prime(p)
    from .errors import CannotCertify

    raise CannotCertify(f"cannot certify irreducibility of degree {d} input")


def _next_prime(p):
    p += 1
    while not is_prime(p):
        p += 1
    return p


def _quartic_splits(f) -> bool:
    """Monic quartic with no rational root: check for a quadratic factorization."""
    # Scale T -> U/lam so the quartic becomes monic with integer coefficients;
    # by Gauss's lemma a rational factorization then forces monic integer
    # quadratics (U^2+aU+b)(U^2+cU+d), so b runs over the divisors of the
    # constant term and the remaining coefficients solve linear relations.
    from .numbers import lcm_list, rational_root as _rr

    lam = lcm_list(c.denominator for c in f)
    c3 = f[3] * lam
    c2 = f[2] * lam ** 2
    c1 = f[1] * lam ** 3
    c0 = f[0] * lam ** 4
    assert c0 != 0, "rational root 0 should have been excluded"
    for b in _divisors(abs(c0.numerator)):
        for b_signed in (b, -b):
            d_ = c0 / b_signed
            # a + c = c3, a*c = c2 - b - d, a*d + b*c = c1
            if d_ == b_signed:
                if c1 != b_signed * c3:
                    continue
                disc = c3 * c3 - 4 * (c2 - 2 * b_signed)
                if disc >= 0 and _rr(Fraction(disc), 2) is not None:
                    return True
                continue
            a = (c1 - b_signed * c3) / (d_ - b_signed)
            c = c3 - a
            if a * c == c2 - b_signed - d_:
                return True
    return False


# -- Gaussian rationals ------------------------------------------------------


class Gauss:
    """Gaussian rational a + b*i with exact arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        other = Gauss._coerce(other)
        return Gauss(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        other = Gauss._coerce(other)
        return Gauss(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        other = Gauss._coerce(other)
        return Gauss(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __eq__(self, other):
        other = Gauss._coerce(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})"

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @staticmethod
    def _coerce(v):
        return v if isinstance(v, Gauss) else Gauss(v)


def peval_gauss(f, z: Gauss) -> Gauss:
    acc = Gauss(0)
    for c in reversed(f):
        acc = acc * z + Gauss(c)
    return acc


def coeffs_p_integral(f, p) -> bool:
    return all(vp(c, p) >= 0 for c in f if c != 0)
