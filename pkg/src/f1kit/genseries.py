"""Generating-series and recursion engines for the moduli-space classes.

Two independent computation paths are provided and cross-checked by the
test suite: a coefficient-extraction solver for the defining differential
equation of the exponential generating series, and the direct product
recursions for the class families ``mbar0_class`` / ``tdn_class``.

Series convention.  The solved series is psi(t) = sum_{n>=1} b_n t^n / n!
with b_1 = 1.  For the d-parameter family, b_n is the class of the space of
n-pointed stable rooted trees of d-dimensional projective spaces; for d = 1
this means b_n = mbar0_class(n + 1), the arity-n operad component.  (Reading
the coefficients as mbar0_class(n) instead is inconsistent with b_2 = 1 and
with the d = 1 specialization, so the shifted indexing is used throughout.)

All recursions are integral: binomials are exact and no rational scalars
ever appear.  Memo tables are module-level dicts filled with value-identical
entries by pure functions, so concurrent fills are harmless.
"""

import json
import os
from math import comb

from .motive import MotClass, expand_falling, proj_class


class EGFSeries:
    """Truncated exponential generating series with MotClass coefficients.

    ``coeffs`` holds c_1..c_N for psi(t) = sum c_n t^n / n!; c_1 must be 1.
    Coefficients beyond the truncation order are undefined, never implied
    zero.
    """

    __slots__ = ("order", "_coeffs")

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("series needs at least the t coefficient")
        if coeffs[0] != MotClass.one():
            raise ValueError("series must begin t + ...")
        object.__setattr__(self, "order", len(coeffs))
        object.__setattr__(self, "_coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("EGFSeries is immutable")

    def coeff(self, n):
        """c_n for 1 <= n <= order."""
        if not 1 <= n <= self.order:
            raise IndexError("coefficient %d outside truncation order %d" % (n, self.order))
        return self._coeffs[n - 1]

    @property
    def coeffs(self):
        return self._coeffs

    def __eq__(self, other):
        if not isinstance(other, EGFSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __repr__(self):
        return "EGFSeries(order=%d)" % self.order

    def to_json(self, basis="T"):
        return {"order": self.order, "coeffs": [c.to_json(basis) for c in self._coeffs]}


def solve_tdn_ode(d, order):
    """Series solution of (1 + L^d t - L [P^(d-1)] psi) psi' = 1 + psi.

    The unique solution with psi = t + O(t^2) is extracted coefficient by
    coefficient:

        b_{n+1} = b_n - n L^d b_n
                  + L [P^(d-1)] sum_{i+j=n, i>=1} C(n,i) b_i b_{j+1}.

    For d = 1 this specializes to the genus-zero series equation.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive int")
    if not isinstance(order, int) or order < 1:
        raise ValueError("order must be >= 1")
    ld = MotClass.lefschetz(d)
    hyper = MotClass.lefschetz() * proj_class(d - 1)
    b = [MotClass.one()]
    for n in range(1, order):
        total = MotClass.zero()
        for i in range(1, n + 1):
            j = n - i
            total = total + comb(n, i) * b[i - 1] * b[j]
        b.append(b[n - 1] - n * ld * b[n - 1] + hyper * total)
    return EGFSeries(b)


def solve_point_count_ode(d, m, order):
    """Integer analogue of solve_tdn_ode with L replaced by m + 1.

    Returns [p_1, ..., p_order], the point counts over the degree-m
    extension, from the specialized differential equation
    (1 + (m+1)^d t - (m+1) kappa eta) eta' = 1 + eta where
    kappa = 1 + (m+1) + ... + (m+1)^(d-1).
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive int")
    if not isinstance(m, int) or m < 0:
        raise ValueError("m must be a nonnegative int")
    if not isinstance(order, int) or order < 1:
        raise ValueError("order must be >= 1")
    q = m + 1
    qd = q**d
    kappa = sum(q**i for i in range(d))
    b = [1]
    for n in range(1, order):
        total = sum(comb(n, i) * b[i - 1] * b[n - i] for i in range(1, n + 1))
        b.append(b[n - 1] - n * qd * b[n - 1] + q * kappa * total)
    return b


_MBAR0_CACHE = {2: MotClass.one(), 3: MotClass.one()}

_TDN_CACHE = {}  # (d, n) -> class; bases (d,1) and (d,2) seeded on first use


def mbar0_class(n):
    """Class of the compactified moduli space of n-pointed genus-zero curves.

    Recursion: c_{n+2} = c_{n+1} + L sum_{i+j=n+1, i>=2} C(n,i) c_{i+1} c_{j+1}
    with c_2 = c_3 = 1.  Results are memoized.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an int >= 2")
    if n in _MBAR0_CACHE:
        return _MBAR0_CACHE[n]
    lef = MotClass.lefschetz()
    top = 3
    while top + 1 in _MBAR0_CACHE:  # loaded caches may be sparse
        top += 1
    for k in range(top - 1, n - 1):
        # compute c_{k+2} from c_2..c_{k+1}
        total = MotClass.zero()
        for i in range(2, k + 1):
            j = k + 1 - i
            total = total + comb(k, i) * _MBAR0_CACHE[i + 1] * _MBAR0_CACHE[j + 1]
        _MBAR0_CACHE[k + 2] = _MBAR0_CACHE[k + 1] + lef * total
    return _MBAR0_CACHE[n]


def tdn_class(d, n):
    """Class of the space of n-pointed stable rooted trees of P^d's.

    Recursion (valid for n >= 2):

        t_{n+1} = ([P^d] + n L [P^(d-2)]) t_n
                  + L [P^(d-1)] sum_{i+j=n+1, 2<=i<=n-1} C(n,i) t_i t_j

    with t_1 = 1 and t_2 = [P^(d-1)].  The relation only holds from n = 2,
    so t_2 is seeded from the first extraction step of the series equation;
    the sum factor is [P^(d-1)], which is what both the series equation and
    the d = 1 oracle require.  Results are memoized per (d, n).
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive int")
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive int")
    if (d, n) in _TDN_CACHE:
        return _TDN_CACHE[(d, n)]
    _TDN_CACHE.setdefault((d, 1), MotClass.one())
    _TDN_CACHE.setdefault((d, 2), proj_class(d - 1))
    lef = MotClass.lefschetz()
    head_fixed = proj_class(d)
    head_lin = lef * proj_class(d - 2)
    hyper = lef * proj_class(d - 1)
    top = 2
    while (d, top + 1) in _TDN_CACHE:  # loaded caches may be sparse
        top += 1
    for k in range(top, n):
        total = MotClass.zero()
        for i in range(2, k):
            j = k + 1 - i
            total = total + comb(k, i) * _TDN_CACHE[(d, i)] * _TDN_CACHE[(d, j)]
        _TDN_CACHE[(d, k + 1)] = (head_fixed + k * head_lin) * _TDN_CACHE[(d, k)] + hyper * total
    return _TDN_CACHE[(d, n)]


def f1m_count(d, n, m):
    """Point count of tdn_class(d, n) over the degree-m extension."""
    return tdn_class(d, n).count_points(m)


def open_stratum_class(d, n):
    """Normalized open-stratum product: (c)(c-1)...(c-(n-3)) with c = L^d - 2.

    Equivalently prod_{j=2}^{n-1} (L^d - j); n = 2 gives the empty product 1.
    For d = 1 this is the class of the open moduli of (n+1)-pointed curves,
    the complement of the diagonals in a power of a thrice-punctured line.
    It always has a negative T-coefficient for n >= 3, so the open stratum
    on its own is never a nonnegative sum of tori.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive int")
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an int >= 2")
    ld = MotClass.lefschetz(d)
    out = MotClass.one()
    for j in range(2, n):
        out = out * (ld - j)
    return out


def stratum_factor_class(d, n):
    """Class of the full vertex stratum: proj_class(d-1) * open_stratum_class(d, n).

    Normalizing n points in affine d-space by translations fixes the first
    point, but a homothety only scales along the line spanned by the second
    point, leaving a P^(d-1) of directions; the normalized product above
    accounts for the remaining points only.  For d = 1 the direction factor
    is a point and the two classes coincide.
    """
    return proj_class(d - 1) * open_stratum_class(d, n)


def m0_open_class(n, normalized_points=3):
    """Class of the open moduli of n-pointed genus-zero curves, n >= 3.

    Normalizing three of the markings to 0, 1, infinity leaves n - 3 moving
    coordinates, so the class is the product of n - 3 falling factors
    (T-1)...(T-n+3), matching the finite-field point count
    (q-2)...(q-n+2).  ``normalized_points=2`` keeps one more factor, ending
    at (T-n+2); that reading fails the point-count check for n >= 4 and is
    kept for comparison only.
    """
    if not isinstance(n, int) or n < 3:
        raise ValueError("n must be an int >= 3")
    if normalized_points not in (2, 3):
        raise ValueError("normalized_points must be 2 or 3")
    return expand_falling(n - normalized_points)


# -- cache persistence -------------------------------------------------

_CACHE_FILE = "f1kit_cache.json"


def clear_caches():
    _MBAR0_CACHE.clear()
    _MBAR0_CACHE.update({2: MotClass.one(), 3: MotClass.one()})
    _TDN_CACHE.clear()


def save_caches(directory):
    """Write the memo tables to <directory>/f1kit_cache.json."""
    doc = {
        "mbar0": {str(n): v.to_json() for n, v in sorted(_MBAR0_CACHE.items())},
        "tdn": {"%d,%d" % (d, n): v.to_json() for (d, n), v in sorted(_TDN_CACHE.items())},
    }
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, _CACHE_FILE)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return path


def load_caches(directory):
    """Merge previously saved memo tables; missing file is not an error.

    Entries are value-identical to recomputation for any honestly produced
    file, so merging never changes results.
    """
    path = os.path.join(directory, _CACHE_FILE)
    if not os.path.exists(path):
        return False
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    for key, obj in doc.get("mbar0", {}).items():
        _MBAR0_CACHE[int(key)] = MotClass.from_json(obj)
    for key, obj in doc.get("tdn", {}).items():
        d, n = key.split(",")
        _TDN_CACHE[(int(d), int(n))] = MotClass.from_json(obj)
    return True
