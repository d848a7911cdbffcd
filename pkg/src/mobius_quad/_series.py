"""High-precision series for the constants embedded in :mod:`mobius_quad.weights`.

Run ``python -m mobius_quad._series`` to regenerate the table.  The test
suite recomputes it and compares against the embedded values.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from math import factorial


def eta(s: int, digits: int = 40) -> Decimal:
    """Dirichlet eta ``sum_{k>=1} (-1)^(k-1) / k^s`` for integer ``s >= 1``.

    Cohen-Rodriguez Villegas-Zagier acceleration of the alternating series;
    the error after ``m`` terms is about ``3 / (3 + sqrt(8))^m``.
    """
    if s < 1:
        raise ValueError("s must be a positive integer")
    m = int(digits / 0.76) + 4
    with localcontext() as ctx:
        ctx.prec = digits + 10
        d = []
        acc = Decimal(0)
        for i in range(m + 1):
            acc += Decimal(factorial(m + i - 1) * 4**i) / Decimal(factorial(m - i) * factorial(2 * i))
            d.append(m * acc)
        dm = d[m]
        total = Decimal(0)
        for k in range(m):
            term = (d[k] - dm) / Decimal(k + 1) ** s
            total += -term if k % 2 else term
        result = -total / dm
    return +result


def zeta(s: int, digits: int = 40) -> Decimal:
    """Riemann zeta at an integer ``s >= 2`` via ``eta(s) / (1 - 2^(1-s))``."""
    if s < 2:
        raise ValueError("zeta has a pole at s = 1")
    with localcontext() as ctx:
        ctx.prec = digits + 10
        value = eta(s, digits) / (1 - Decimal(2) ** (1 - s))
    return +value


def table(max_s: int = 12, digits: int = 25) -> dict:
    out = {"ln2": eta(1, digits)}
    for s in range(2, max_s + 1):
        out[s] = zeta(s, digits)
    return out


if __name__ == "__main__":
    with localcontext() as ctx:
        ctx.prec = 25
        for key, value in table().items():
            print(f"{key!r}: {+value},")
