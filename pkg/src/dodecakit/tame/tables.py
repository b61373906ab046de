"""Constant tables t_n, D(n, k) and b(p, q), held as exact decimals."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

SQUANDER_TARGET = Decimal("0.177540")  # mu(Lambda_dod)

_T = {3: Decimal("0"), 4: Decimal("0.031"), 5: Decimal("0.076"), 6: Decimal("0.121"), 7: Decimal("0.166")}

D31 = Decimal("0.0155")

# rows p = 0..7, columns q = 0..4; None marks a '*' entry
_B_ROWS = {
    0: (None, None, None, "0.093", "0.125"),
    1: (None, None, "0.092", "0.093", None),
    2: (None, "0.133", "0.062", None, None),
    3: (None, "0.043", "0.118", None, None),
    4: ("0.053", "0.051", None, None, None),
    5: ("0.004", None, None, None, None),
    6: ("0.121", None, None, None, None),
    7: (None, None, None, None, None),
}
B_TABLE = {
    (p, q): Decimal(v)
    for p, row in _B_ROWS.items()
    for q, v in enumerate(row)
    if v is not None
}


class DomainError(ValueError):
    pass


def t_exact(n: int) -> Decimal:
    if n < 3:
        raise DomainError(f"t_n is defined for n >= 3, got {n}")
    return _T.get(n, SQUANDER_TARGET)


def d_exact(n: int, k: int) -> Decimal:
    if not (n >= 3 and 0 <= k <= n and n + k >= 4):
        raise DomainError(f"D(n, k) needs n >= 3, 0 <= k <= n, n + k >= 4; got ({n}, {k})")
    if (n, k) == (3, 1):
        return D31
    return t_exact(n + k) - D31 * k


def b_exact(p: int, q: int) -> Decimal:
    if p < 0 or q < 0:
        raise DomainError(f"b(p, q) needs p, q >= 0; got ({p}, {q})")
    return B_TABLE.get((p, q), SQUANDER_TARGET)


def t_const(n: int) -> float:
    return float(t_exact(n))


def d_dod(n: int, k: int) -> float:
    return float(d_exact(n, k))


def b_pq(p: int, q: int) -> float:
    return float(b_exact(p, q))


def in_d_domain(n, k) -> bool:
    return n >= 3 and 0 <= k <= n and n + k >= 4


@dataclass
class SuperadditivityReport:
    checked: int
    skipped: int  # pairs whose combined (n, k) falls outside the domain
    violations: list
    generating_checked: int
    generating_violations: list

    @property
    def ok(self) -> bool:
        return not self.violations and not self.generating_violations


def check_superadditivity(max_size: int = 16) -> SuperadditivityReport:
    """Exhaustive check of D(n1,k1) + D(n2,k2) >= D(n1+n2-2, k1+k2-2) with
    n_i + k_i <= max_size, and of t_m + t_n >= t_{m+n-4} + 2 D(3,1) for
    4 <= m, n <= 12.  Exact decimal arithmetic, so equality cases count."""
    dom = [(n, k) for n in range(3, max_size + 1) for k in range(0, n + 1)
           if in_d_domain(n, k) and n + k <= max_size]
    checked = skipped = 0
    bad = []
    for n1, k1 in dom:
        for n2, k2 in dom:
            n, k = n1 + n2 - 2, k1 + k2 - 2
            if not in_d_domain(n, k):
                skipped += 1
                continue
            checked += 1
            lhs = d_exact(n1, k1) + d_exact(n2, k2)
            rhs = d_exact(n, k)
            if lhs < rhs:
                bad.append(((n1, k1), (n2, k2), lhs, rhs))
    gen_bad = []
    gen = 0
    for m in range(4, 13):
        for n in range(4, 13):
            gen += 1
            if t_exact(m) + t_exact(n) < t_exact(m + n - 4) + 2 * D31:
                gen_bad.append((m, n))
    return SuperadditivityReport(checked, skipped, bad, gen, gen_bad)
