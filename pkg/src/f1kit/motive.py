"""Exact arithmetic for classes that are integer polynomials in the torus class.

A class is represented in the T-basis: the tuple ``(a_0, a_1, ..., a_d)``
holds the coefficient ``a_k`` of ``T^k``, where ``T`` is the class of the
one-dimensional torus and ``L = T + 1`` is the class of the affine line.
The trailing (highest-index) coefficient is nonzero; the empty tuple is the
zero class, so equality of values is structural equality.  Coefficients are
plain Python ints, hence arbitrary precision; no floating point is used
anywhere.

Values are immutable and all operations are pure, so they can be shared
freely between threads or workers.
"""

from math import comb


class MotClass:
    """Integer polynomial in the torus class T, canonical form."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError("coefficients must be ints, got %r" % (c,))
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "_coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("MotClass is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def torus(cls, k=1):
        """T^k."""
        if k < 0:
            raise ValueError("torus power must be nonnegative")
        return cls((0,) * k + (1,))

    @classmethod
    def lefschetz(cls, k=1):
        """L^k = (T+1)^k."""
        if k < 0:
            raise ValueError("lefschetz power must be nonnegative")
        return cls(tuple(comb(k, j) for j in range(k + 1)))

    @classmethod
    def from_coeffs(cls, coeffs, basis="T"):
        """Build a class from a coefficient sequence in the T- or L-basis."""
        if basis == "T":
            return cls(coeffs)
        if basis == "L":
            # expand sum b_k (T+1)^k
            return cls(_linear_shift(tuple(coeffs), 1))
        raise ValueError("basis must be 'T' or 'L'")

    # -- accessors -----------------------------------------------------

    @property
    def coeffs(self):
        """T-basis coefficients, ascending by degree."""
        return self._coeffs

    @property
    def degree(self):
        """Degree in T; the zero class has degree -1."""
        return len(self._coeffs) - 1

    def in_basis(self, basis):
        """Coefficient sequence of this class in the given basis.

        Conversions T <-> L are mutually inverse: round-tripping through
        ``from_coeffs`` restores the value exactly.
        """
        if basis == "T":
            return self._coeffs
        if basis == "L":
            return _linear_shift(self._coeffs, -1)
        raise ValueError("basis must be 'T' or 'L'")

    def coefficient(self, k):
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else 0

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return MotClass(out)

    __radd__ = __add__

    def __neg__(self):
        return MotClass(tuple(-c for c in self._coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return MotClass()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return MotClass(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        out = MotClass.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = MotClass((other,))
        if not isinstance(other, MotClass):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        return "MotClass(%r)" % (list(self._coeffs),)

    def __str__(self):
        return format_poly(self._coeffs, "T")

    # -- interpretation -------------------------------------------------

    def is_effective(self):
        """True iff every T-basis coefficient is >= 0.

        This is the necessary condition for the class to decompose as a
        nonnegative sum of torus classes.
        """
        return all(c >= 0 for c in self._coeffs)

    def count_points(self, m):
        """Number of points over the degree-m extension: sum a_k m^k.

        m = 0 gives the Euler characteristic (the constant T-coefficient).
        """
        if not isinstance(m, int) or m < 0:
            raise ValueError("m must be a nonnegative int")
        total = 0
        power = 1
        for c in self._coeffs:
            total += c * power
            power *= m
        return total

    def poincare(self):
        """Poincare polynomial coefficients in q, from L |-> q^2.

        Returns the coefficient tuple of sum_k b_k q^(2k) where b_k are the
        L-basis coefficients; index = power of q.
        """
        b = self.in_basis("L")
        if not b:
            return ()
        out = [0] * (2 * (len(b) - 1) + 1)
        for k, c in enumerate(b):
            out[2 * k] = c
        return tuple(out)

    # -- serialization ---------------------------------------------------

    def to_json(self, basis="T"):
        """{"basis": ..., "coeffs": [decimal strings, ascending]}."""
        return {"basis": basis, "coeffs": [str(c) for c in self.in_basis(basis)]}

    @classmethod
    def from_json(cls, obj):
        basis = obj["basis"]
        coeffs = [int(s) for s in obj["coeffs"]]
        return cls.from_coeffs(coeffs, basis)


def _coerce(x):
    if isinstance(x, MotClass):
        return x
    if isinstance(x, int):
        return MotClass((x,))
    raise TypeError("cannot combine MotClass with %r" % (x,))


def _linear_shift(coeffs, s):
    """Coefficients of p(x + s), given those of p, by Horner."""
    out = []
    for c in reversed(coeffs):
        # out := out * (x + s) + c
        new = [0] * (len(out) + 1)
        for i, v in enumerate(out):
            new[i] += v * s
            new[i + 1] += v
        new[0] += c
        while new and new[-1] == 0:
            new.pop()
        out = new
    return tuple(out)


def change_basis(a, basis):
    """Coefficient sequence of a in the target basis ('T' or 'L')."""
    return a.in_basis(basis)


def is_effective_torus_class(a):
    return a.is_effective()


def count_points(a, m):
    return a.count_points(m)


def poincare_poly(a):
    return a.poincare()


def format_poly(coeffs, symbol):
    """Human form, descending powers: e.g. 'T^2-3T+2', '0'."""
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = symbol if k == 1 else "%s^%d" % (symbol, k)
            body = var if mag == 1 else "%d%s" % (mag, var)
        parts.append(sign + body)
    return "".join(parts) if parts else "0"


def proj_class(d):
    """Class of d-dimensional projective space: sum_{k=0}^{d} L^k.

    d = -1 is allowed and gives the zero class (the empty space).
    """
    if not isinstance(d, int) or d < -1:
        raise ValueError("projective dimension must be an int >= -1")
    total = MotClass.zero()
    for k in range(d + 1):
        total = total + MotClass.lefschetz(k)
    return total


def blowup_class(x, y, codim):
    """Class of the blowup of x along a center of class y and codimension codim.

    Returns x + y * (proj_class(codim - 1) - 1); codim = 1 leaves x unchanged.
    """
    if not isinstance(codim, int) or codim < 1:
        raise ValueError("codimension must be a positive int")
    return x + y * (proj_class(codim - 1) - MotClass.one())


def expand_falling(m):
    """Product of the m factors (T - 1)(T - 2)...(T - m); m = 0 gives 1."""
    if not isinstance(m, int) or m < 0:
        raise ValueError("factor count must be a nonnegative int")
    out = MotClass.one()
    for j in range(1, m + 1):
        out = out * MotClass((-j, 1))
    return out


def signed_stirling1(m):
    """Row m of the signed Stirling numbers of the first kind, s(m, 0..m).

    These satisfy x(x-1)...(x-m+1) = sum_k s(m,k) x^k; the unsigned value
    |s(m,k)| counts permutations of m elements with k cycles.
    """
    if not isinstance(m, int) or m < 0:
        raise ValueError("m must be a nonnegative int")
    row = [1]
    for i in range(1, m + 1):
        new = [0] * (i + 1)
        for k, v in enumerate(row):
            new[k] -= (i - 1) * v
            new[k + 1] += v
        row = new
    return tuple(row)


def expand_falling_stirling(m):
    """Same value as expand_falling(m), via the Stirling-number route.

    Writes (T-1)(T-2)...(T-m) = sum_k s(m,k) (T-1)^k with s the signed
    Stirling numbers of the first kind, then expands each (T-1)^k
    binomially.  Must agree exactly with the direct product.
    """
    row = signed_stirling1(m)
    out = [0] * (m + 1)
    for k, s in enumerate(row):
        if s == 0:
            continue
        for j in range(k + 1):
            out[j] += s * comb(k, j) * (-1) ** (k - j)
    return MotClass(out)
