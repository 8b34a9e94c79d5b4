"""Integer sequences and counting formulas for the diagram categories.

Everything is exact (Python ints).  Queries that fall outside a parity or
range convention where the literature defines the value to be zero return 0;
structurally malformed queries (q > r and the like) raise.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .errors import ArgOutOfRange, ParityViolation

SEQUENCE_KINDS = (
    "stirling2",
    "bell",
    "doubleFactorial",
    "involutions",
    "catalan",
    "motzkinTriangle",
    "motzkin",
)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Partitions of an n-set into k blocks: S(n,k) = S(n-1,k-1) + k S(n-1,k)."""
    if n < 0 or k < 0:
        raise ArgOutOfRange(f"stirling2({n},{k})")
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0 or k > n:
        return 0
    return stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


def bell(n: int) -> int:
    """Partitions of an n-set; B(0) = 1."""
    if n < 0:
        raise ArgOutOfRange(f"bell({n})")
    return sum(stirling2(n, k) for k in range(n + 1)) if n else 1


def double_factorial(n: int) -> int:
    """n!! for odd n, 0 for even n >= 0, and (-1)!! = 1 by convention."""
    if n == -1:
        return 1
    if n < -1:
        raise ArgOutOfRange(f"doubleFactorial({n})")
    if n % 2 == 0:
        return 0
    out = 1
    for k in range(n, 0, -2):
        out *= k
    return out


def _odd_double_factorial(n):
    # n!! for odd n >= -1, without the even-is-zero convention in the way
    return double_factorial(n)


@lru_cache(maxsize=None)
def involutions(n: int) -> int:
    """Partitions of an n-set into blocks of size <= 2 (a.k.a. involution counts)."""
    if n < 0:
        raise ArgOutOfRange(f"involutions({n})")
    if n <= 1:
        return 1
    return involutions(n - 1) + (n - 1) * involutions(n - 2)


def catalan(x) -> int:
    """C(n) = binom(2n,n)/(n+1); C(x) = 0 when x is not a natural number."""
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        return 0
    return comb(2 * x, x) // (x + 1)


@lru_cache(maxsize=None)
def motzkin_triangle(n: int, k: int) -> int:
    if n < 0:
        raise ArgOutOfRange(f"motzkinTriangle({n},{k})")
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    return (
        motzkin_triangle(n - 1, k - 1)
        + motzkin_triangle(n - 1, k)
        + motzkin_triangle(n - 1, k + 1)
    )


def motzkin(n: int) -> int:
    """Noncrossing partitions of an n-set into blocks of size <= 2."""
    return motzkin_triangle(n, 0)


_SEQ = {
    "stirling2": stirling2,
    "bell": bell,
    "doubleFactorial": double_factorial,
    "involutions": involutions,
    "catalan": catalan,
    "motzkinTriangle": motzkin_triangle,
    "motzkin": motzkin,
}


def seq(kind: str, *args) -> int:
    """Uniform access to the memoised sequences by name."""
    try:
        fn = _SEQ[kind]
    except KeyError:
        raise ArgOutOfRange(f"unknown sequence {kind!r}") from None
    return fn(*args)


def kappa(m: int, q: int) -> int:
    """Rank-q 1-2-equivalences on an m-set: binom(m,q) (m-q-1)!!.

    Returns 0 when q > m or q and m have different parities.
    """
    if m < 0 or q < 0:
        raise ArgOutOfRange(f"kappa({m},{q})")
    if q > m or (m - q) % 2:
        return 0
    return comb(m, q) * double_factorial(m - q - 1)


def _check_kappa_join_args(m, r, q):
    if not 0 <= q <= r <= m:
        raise ParityViolation(f"need 0 <= q <= r <= m, got ({m},{r},{q})")
    if q % 2 != r % 2 or r % 2 != m % 2:
        raise ParityViolation(f"need q = r = m (mod 2), got ({m},{r},{q})")


def kappa_join(m: int, r: int, q: int) -> int:
    """Number of rank-q 1-2-equivalences whose join with a fixed rank-r one
    has exactly q odd classes: binom(r,q) (r-q-1)!! (m+q-1)!!/(r+q-1)!!."""
    _check_kappa_join_args(m, r, q)
    out = comb(r, q) * double_factorial(r - q - 1)
    for odd in range(r + q + 1, m + q, 2):
        out *= odd
    return out


@lru_cache(maxsize=None)
def kappa_join_recurrence(m: int, r: int, q: int) -> int:
    """The same count by its recurrence; cross-check for :func:`kappa_join`.

    lam(m,r,q) = (m-1)!! if q = 0; kappa(m,q) if m = r;
    (m+r-1)!!/(2r-1)!! if r = q; else
    lam(m-1,r-1,q-1) + (r-1) lam(m-2,r-2,q) + (m-r) lam(m-2,r,q).
    """
    _check_kappa_join_args(m, r, q)
    if q == 0:
        return double_factorial(m - 1) if m else 1
    if m == r:
        return kappa(m, q)
    if r == q:
        out = 1
        for odd in range(2 * r + 1, m + r, 2):
            out *= odd
        return out
    return (
        kappa_join_recurrence(m - 1, r - 1, q - 1)
        + (r - 1) * kappa_join_recurrence(m - 2, r - 2, q)
        + (m - r) * kappa_join_recurrence(m - 2, r, q)
    )


def homset_cardinality(tag: str, m: int, n: int) -> int:
    """|K_mn| for each of the six categories (0 for empty B/TL hom-sets)."""
    if m < 0 or n < 0:
        raise ArgOutOfRange(f"homset_cardinality({tag},{m},{n})")
    t = m + n
    if tag == "P":
        return bell(t)
    if tag == "PB":
        return involutions(t)
    if tag == "B":
        return double_factorial(t - 1) if t % 2 == 0 else 0
    if tag == "PP":
        return catalan(t)
    if tag == "M":
        return motzkin(t)
    if tag == "TL":
        return catalan(t // 2) if t % 2 == 0 else 0
    raise ArgOutOfRange(f"unknown tag {tag!r}")


def _r_classes(tag, m, r):
    if tag == "P":
        return sum(comb(q, r) * stirling2(m, q) for q in range(r, m + 1))
    if tag == "PB":
        return comb(m, r) * involutions(m - r)
    if tag == "B":
        return comb(m, r) * double_factorial(m - r - 1)
    if tag == "PP":
        return (2 * r + 1) * comb(2 * m + 1, m - r) // (2 * m + 1)
    if tag == "M":
        return motzkin_triangle(m, r)
    if tag == "TL":
        return (r + 1) * comb(m + 1, (m - r) // 2) // (m + 1)
    raise ArgOutOfRange(f"unknown tag {tag!r}")


def admissible_ranks(tag: str, m: int, n: int):
    """Ranks realised in K_mn, smallest first."""
    top = min(m, n)
    if tag in ("B", "TL"):
        if (m - n) % 2:
            return ()
        return tuple(r for r in range(top + 1) if (m - r) % 2 == 0)
    return tuple(range(top + 1))


class DClassProfile(dict):
    """Counts for one rank layer of a hom-set; behaves like a dict."""

    __slots__ = ()

    @property
    def r_classes(self):
        return self["rClasses"]

    @property
    def l_classes(self):
        return self["lClasses"]

    @property
    def h_size(self):
        return self["hSize"]

    @property
    def d_size(self):
        return self["dSize"]


def dclass_profile(tag: str, m: int, n: int, r: int) -> DClassProfile:
    """R-class/L-class/H-size/total counts of the rank-r layer of K_mn."""
    if r < 0 or r > min(m, n):
        raise ArgOutOfRange(f"rank {r} not in [0, min({m},{n})]")
    if tag in ("B", "TL") and ((m - n) % 2 or (m - r) % 2):
        raise ParityViolation(f"rank {r} violates parity in {tag}_{{{m},{n}}}")
    rc = _r_classes(tag, m, r)
    lc = _r_classes(tag, n, r)
    h = factorial(r) if tag in ("P", "PB", "B") else 1
    return DClassProfile(rClasses=rc, lClasses=lc, hSize=h, dSize=rc * lc * h)
