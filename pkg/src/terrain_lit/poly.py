"""Exact univariate polynomials (coefficient lists, lowest degree first) and root isolation."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(p, q):
    n = max(len(p), len(q))
    return _trim([(p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)])


def psub(p, q):
    return padd(p, [-c for c in q])


def pmul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x:
            for b, y in enumerate(q):
                out[a + b] += x * y
    return _trim(out)


def pderiv(p):
    return _trim([k * p[k] for k in range(1, len(p))])


def peval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _prem(p, q):
    """Remainder of p divided by q over the rationals."""
    p = [Fraction(c) for c in p]
    dq, lq = len(q) - 1, Fraction(q[-1])
    while len(p) - 1 >= dq and p:
        coef = p[-1] / lq
        shift = len(p) - 1 - dq
        for k in range(len(q)):
            p[shift + k] -= coef * q[k]
        p = _trim(p)
    return p


def sturm_chain(p) -> List[list]:
    chain = [_trim(p), pderiv(_trim(p))]
    while chain[-1]:
        r = _prem(chain[-2], chain[-1])
        chain.append([-c for c in r])
    return [c for c in chain if c]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain, a, b) -> int:
    """Distinct real roots in (a, b]; a and b must not be roots."""
    return _sign_changes([peval(c, a) for c in chain]) - _sign_changes([peval(c, b) for c in chain])


def descartes_bound_unit(p) -> int:
    """Upper bound on the roots in (0, 1), via sign changes of (1+x)^d p(1/(1+x))."""
    d = len(p) - 1
    # coefficients of sum_k p_k (1+x)^(d-k)
    out = [0] * (d + 1)
    for k, c in enumerate(p):
        if not c:
            continue
        binom = 1
        m = d - k
        for i in range(m + 1):
            out[i] += c * binom
            binom = binom * (m - i) // (i + 1)
    return _sign_changes(out)


ROOT_BITS = 64
_SPLITS = (Fraction(1, 2), Fraction(3, 7), Fraction(4, 7), Fraction(2, 5), Fraction(3, 5), Fraction(5, 11))


def _off_root(q, x, toward):
    step = Fraction(1, 2**80)
    while peval(q, x) == 0:
        x += step if toward > 0 else -step
        step /= 2
    return x


def local_maxima_unit(q) -> List[Tuple[Fraction, Fraction]]:
    """Brackets [a, b] inside (0, 1) around each root where q changes sign from + to -.

    Brackets are at most 2^-ROOT_BITS wide.  When the root is found to be
    rational the bracket collapses to a single point.
    """
    q = _trim(q)
    if len(q) < 2 or descartes_bound_unit(q) == 0:
        return []
    chain = sturm_chain(q)
    a0, b0 = _off_root(q, Fraction(0), +1), _off_root(q, Fraction(1), -1)
    out = []
    stack = [(a0, b0, count_roots(chain, a0, b0))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n > 1:
            for f in _SPLITS:
                mid = a + (b - a) * f
                if peval(q, mid) != 0:
                    break
            k = count_roots(chain, a, mid)
            stack.append((a, mid, k))
            stack.append((mid, b, n - k))
            continue
        if not (peval(q, a) > 0 > peval(q, b)):
            continue  # a minimum or an even-multiplicity root
        out.append(_refine(q, a, b))
    return sorted(out)


def _refine(q, a, b):
    width = Fraction(1, 2**ROOT_BITS)
    while b - a > width:
        mid = (a + b) / 2
        qm = peval(q, mid)
        if qm == 0:
            return mid, mid
        if qm > 0:
            a = mid
        else:
            b = mid
    mid = (a + b) / 2
    for bound in (10**3, 10**6, 10**9, 10**12):
        c = mid.limit_denominator(bound)
        if a <= c <= b and peval(q, c) == 0:
            return c, c
    return a, b


