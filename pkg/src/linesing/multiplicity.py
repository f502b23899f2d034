"""Intersection multiplicity at the origin, two independent ways.

``local_quotient_dim`` is the brute-force oracle: it spans the ideal
image inside the truncated local ring and counts standard monomials,
escalating the truncation degree until the count provably stabilizes
(two consecutive equal counts, or the whole top-degree slab landing in
the span; either certifies exactness by a Nakayama-style argument).

``resultant`` is the Sylvester determinant, computed fraction-free over
the polynomial ring; ``multiplicity_via_resultant`` reads the
intersection number off the vanishing order of the resultant after a
seeded random linear change of coordinates, taking the minimum over a
few samples since non-generic rotations can only inflate the order.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import GenericityError, InputError, NotStabilizedError
from .mpoly import MPoly, _grlex_key


# -- exact division and fraction-free determinants ---------------------

def poly_divexact(p: MPoly, q: MPoly) -> MPoly:
    """p / q when q divides p exactly; raises otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p._check_compatible(q)
    lead_q = max(q.terms, key=_grlex_key)
    cq = q.terms[lead_q]
    remainder = dict(p.terms)
    quotient = {}
    while remainder:
        lead = max(remainder, key=_grlex_key)
        exps = tuple(a - b for a, b in zip(lead, lead_q))
        if any(e < 0 for e in exps):
            raise InputError("inexact polynomial division")
        c = remainder[lead] / cq
        quotient[exps] = c
        for eq, cq2 in q.terms.items():
            e = tuple(a + b for a, b in zip(exps, eq))
            s = remainder.get(e, Fraction(0)) - c * cq2
            if s:
                remainder[e] = s
            else:
                remainder.pop(e, None)
    return MPoly(p.vars, quotient)


def det_poly(rows: list[list[MPoly]], vars) -> MPoly:
    """Bareiss fraction-free determinant of a polynomial matrix."""
    n = len(rows)
    if n == 0:
        return MPoly.constant(vars, 1)
    m = [list(r) for r in rows]
    sign = 1
    prev = MPoly.constant(vars, 1)
    for k in range(n - 1):
        pivot = None
        for i in range(k, n):
            if not m[i][k].is_zero():
                pivot = i
                break
        if pivot is None:
            return MPoly.zero(vars)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = poly_divexact(num, prev)
            m[i][k] = MPoly.zero(vars)
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return -out if sign < 0 else out


# -- Sylvester resultant ---------------------------------------------------

def sylvester_matrix(p: MPoly, q: MPoly, name: str) -> list[list[MPoly]]:
    dp, dq = p.degree_in(name), q.degree_in(name)
    a = [p.coefficient_in(name, dp - i) for i in range(dp + 1)]
    b = [q.coefficient_in(name, dq - i) for i in range(dq + 1)]
    size = dp + dq
    zero = MPoly.zero(p.vars)
    rows = []
    for i in range(dq):
        rows.append([zero] * i + a + [zero] * (dq - 1 - i))
    for i in range(dp):
        rows.append([zero] * i + b + [zero] * (dp - 1 - i))
    assert all(len(r) == size for r in rows)
    return rows


def resultant(p: MPoly, q: MPoly, name: str) -> MPoly:
    """Resultant with respect to one variable.

    Degenerate conventions: if exactly one input is free of the
    variable, the result is that input raised to the other's degree;
    if both are free of it, there is nothing to eliminate and the call
    is an error.  A zero input gives a zero resultant.
    """
    p._check_compatible(q)
    if p.is_zero() or q.is_zero():
        return MPoly.zero(p.vars)
    dp, dq = p.degree_in(name), q.degree_in(name)
    if dp == 0 and dq == 0:
        raise InputError(f"neither input involves {name!r}")
    if dp == 0:
        return p ** dq
    if dq == 0:
        return q ** dp
    return det_poly(sylvester_matrix(p, q, name), p.vars)


# -- the staircase oracle -----------------------------------------------------

def _reduce_row(row: dict, pivots: dict):
    """In-place reduction against normalized pivot rows; returns the row."""
    while row:
        lead = max(row, key=_grlex_key)
        pivot = pivots.get(lead)
        if pivot is None:
            return row
        c = row.pop(lead)
        for m, pc in pivot.items():
            if m == lead:
                continue
            s = row.get(m, Fraction(0)) - c * pc
            if s:
                row[m] = s
            else:
                row.pop(m, None)
    return row


def _staircase(g: MPoly, h: MPoly, ix: int, iy: int, d: int):
    """Pivot rows of the ideal image inside polynomials of degree <= d."""
    pivots = {}
    for poly in (g, h):
        base = poly.order()
        if base < 0:
            continue
        for mdeg in range(0, d - base + 1):
            for ma in range(mdeg + 1):
                mb = mdeg - ma
                row = {}
                for e, c in poly.terms.items():
                    a, b = e[ix] + ma, e[iy] + mb
                    if a + b <= d:
                        row[(a, b)] = row.get((a, b), Fraction(0)) + c
                row = {k: v for k, v in row.items() if v}
                row = _reduce_row(row, pivots)
                if row:
                    lead = max(row, key=_grlex_key)
                    c = row[lead]
                    pivots[lead] = {m: v / c for m, v in row.items()}
    return pivots


def _quotient_count(g, h, ix, iy, d):
    pivots = _staircase(g, h, ix, iy, d)
    n_monos = (d + 1) * (d + 2) // 2
    count = n_monos - len(pivots)
    top_full = all(
        not _reduce_row({(a, d - a): Fraction(1)}, pivots)
        for a in range(d + 1))
    return count, top_full


def local_quotient_dim(g: MPoly, h: MPoly, truncation: int = 16,
                       escalate_to: int = 64) -> int:
    """Intersection multiplicity of two plane curves at the origin.

    Counts are computed at increasing truncation degrees; the answer is
    accepted once two consecutive counts agree or every monomial of the
    top degree lies in the ideal span (each certifies stabilization).
    Raises NotStabilizedError when the count is still growing at the
    escalation cap, which is the signature of a non-isolated
    intersection.
    """
    g._check_compatible(h)
    used = g.used_vars() | h.used_vars()
    if len(used) > 2:
        raise InputError(f"need bivariate input, got variables {sorted(used)}")
    if g.is_zero() and h.is_zero():
        raise NotStabilizedError("both generators are zero")
    active = sorted(used) if len(used) == 2 else None
    if active is None:
        # univariate or constant data: pad with any second variable
        names = list(g.vars)
        first = sorted(used)[0] if used else names[0]
        second = next(n for n in names if n != first)
        active = [first, second]
    ix = g.vars.index(active[0])
    iy = g.vars.index(active[1])
    if g.constant_term() or h.constant_term():
        return 0   # a unit generator: the local quotient collapses
    # consecutive degrees up to the base truncation, then doubling
    # jumps where the top-degree certificate alone can settle it
    schedule = list(range(1, truncation + 2))
    cap = truncation
    while cap < escalate_to:
        cap = min(2 * cap, escalate_to)
        schedule.append(cap)
    counts = []
    prev = None
    for d in schedule:
        count, top_full = _quotient_count(g, h, ix, iy, d)
        counts.append((d, count))
        if top_full:
            return count
        if prev is not None and prev == (d - 1, count):
            return count
        prev = (d, count)
    raise NotStabilizedError(
        "local quotient dimension still growing at degree "
        f"{schedule[-1]}; the intersection is likely non-isolated",
        counts=counts)


# -- multiplicity through resultants ---------------------------------------------

def _rotate(p: MPoly, xn: str, yn: str, a, b, c, d) -> MPoly:
    x = MPoly.variable(p.vars, xn)
    y = MPoly.variable(p.vars, yn)
    return p.substitute({xn: x * a + y * b, yn: x * c + y * d})


def _is_regular_in(p: MPoly, yn: str) -> bool:
    """Top y-degree equal to total degree with a constant lead coefficient."""
    dy = p.degree_in(yn)
    if dy != p.degree():
        return False
    return not p.coefficient_in(yn, dy).used_vars()


def multiplicity_via_resultant(g: MPoly, h: MPoly, xn: str, yn: str,
                               rng, samples: int = 3,
                               max_tries: int = 24) -> int:
    """Origin intersection number as the order of an eliminating
    resultant, minimized over random coordinate rotations."""
    g._check_compatible(h)
    orders = []
    tries = 0
    while len(orders) < samples and tries < max_tries:
        tries += 1
        a, b = rng.randint(-5, 5), rng.randint(-5, 5)
        c, d = rng.randint(-5, 5), rng.randint(-5, 5)
        if a * d - b * c == 0:
            continue
        gr = _rotate(g, xn, yn, a, b, c, d)
        hr = _rotate(h, xn, yn, a, b, c, d)
        if not (_is_regular_in(gr, yn) and _is_regular_in(hr, yn)):
            continue
        r = resultant(gr, hr, yn)
        if r.is_zero():
            raise GenericityError(
                "resultant vanishes identically: the curves share a "
                "component")
        orders.append(r.vanishing_order(xn))
    if not orders:
        raise GenericityError(
            "no regular rotation found; inputs resist the resultant "
            "method")
    return min(orders)
