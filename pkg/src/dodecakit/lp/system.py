"""Linear systems with interval coefficients and rigorous dual-certificate checks.

A system is  A x <= b,  l <= x <= u,  c x >= M.  The entries of A, b and c
are intervals enclosing the true coefficients.  A certificate is a vector y;
after clamping y to y >= 0 the residuals

    e1 = c_lo - y A_hi,   e2 = c_hi - y A_lo

bound c x - y b on the box, and the system is proven infeasible when

    y b + e2+ u+ + e1+ u- + e2- l+ + e1- l-  <  M

holds with every operation rounded towards the unfavourable side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from ..ival import Interval
from ..ival import rounding as R
from ..ival.interval import fraction_down, fraction_up

INF = math.inf


class DimensionMismatch(ValueError):
    pass


class SystemFormatError(ValueError):
    pass


def _iv(x) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, str):
        return _parse_value(x)
    return Interval.point(float(x))


@dataclass
class LinearSystem:
    n: int
    rows: list  # row i: list of (col, Interval)
    b: list  # Interval per row
    lower: list  # float per variable, may be -inf
    upper: list  # float per variable, may be +inf
    c: list  # Interval per variable
    M: Interval
    var_names: list | None = None
    row_names: list | None = None

    def __post_init__(self):
        self.rows = [[(int(j), _iv(a)) for j, a in row] for row in self.rows]
        self.b = [_iv(x) for x in self.b]
        self.c = [_iv(x) for x in self.c]
        self.M = _iv(self.M)
        self.lower = [float(x) for x in self.lower]
        self.upper = [float(x) for x in self.upper]
        self.validate()

    @property
    def m(self) -> int:
        return len(self.rows)

    def validate(self):
        n = self.n
        if len(self.b) != len(self.rows):
            raise DimensionMismatch(f"{len(self.rows)} rows but {len(self.b)} right-hand sides")
        if not (len(self.lower) == len(self.upper) == len(self.c) == n):
            raise DimensionMismatch("bounds and objective must have one entry per variable")
        for i, row in enumerate(self.rows):
            for j, _ in row:
                if not 0 <= j < n:
                    raise DimensionMismatch(f"row {i} refers to column {j} of {n}")
        for j, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if not lo <= hi or lo == INF or hi == -INF:
                raise ValueError(f"variable {j} has empty bounds [{lo}, {hi}]")
        if self.var_names is not None and len(self.var_names) != n:
            raise DimensionMismatch("one name per variable")
        if self.row_names is not None and len(self.row_names) != self.m:
            raise DimensionMismatch("one name per row")

    def with_rows(self, rows, b, names=None) -> "LinearSystem":
        """A copy with extra rows appended."""
        rn = None
        if self.row_names is not None or names is not None:
            rn = list(self.row_names or [f"r{i}" for i in range(self.m)])
            rn += list(names or [f"r{self.m + k}" for k in range(len(rows))])
        return LinearSystem(
            self.n, self.rows + [list(r) for r in rows], self.b + list(b),
            self.lower, self.upper, self.c, self.M, self.var_names, rn,
        )

    def dense(self):
        """Midpoint matrices (A, b, c) as nested lists, for solvers."""
        A = [[0.0] * self.n for _ in range(self.m)]
        for i, row in enumerate(self.rows):
            for j, a in row:
                A[i][j] += a.mid
        return A, [x.hi for x in self.b], [x.mid for x in self.c]


@dataclass
class DualCertificate:
    y: list

    def __post_init__(self):
        y = [float(v) for v in self.y]
        if any(math.isnan(v) or math.isinf(v) for v in y):
            raise ValueError("certificate entries must be finite")
        self.y = [v if v > 0.0 else 0.0 for v in y]  # y <- y+


@dataclass
class CertificateCheck:
    proven: bool
    bound: float  # rigorous upper bound on c x over the feasible set
    target: float  # M (lower end of its enclosure)
    max_residual: float  # largest |e| over the variables
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "Proven" if self.proven else "NotProven"


def _mul_up_ext(a: float, b: float) -> float:
    """Upper bound of a*b with 0 * inf taken as 0."""
    if a == 0.0 or b == 0.0:
        return 0.0
    if math.isinf(a) or math.isinf(b):
        return INF if (a > 0) == (b > 0) else -INF
    return R.mul_up(a, b)


def _add_up_ext(a: float, b: float) -> float:
    if math.isinf(a) or math.isinf(b):
        return a + b
    return R.add_up(a, b)


def check_certificate(sys: LinearSystem, cert) -> CertificateCheck:
    """Decide whether ``cert`` proves c x < M on the system.  Never trusts
    the producer of the certificate: all arithmetic is outward rounded."""
    y = cert.y if isinstance(cert, DualCertificate) else DualCertificate(cert).y
    if len(y) != sys.m:
        raise DimensionMismatch(f"certificate has {len(y)} entries for {sys.m} rows")
    n = sys.n
    yA_lo = [0.0] * n
    yA_hi = [0.0] * n
    yb = 0.0
    for yi, row, bi in zip(y, sys.rows, sys.b):
        if yi == 0.0:
            continue
        yb = R.add_up(yb, R.mul_up(yi, bi.hi))
        for j, a in row:
            yA_lo[j] = R.add_down(yA_lo[j], R.mul_down(yi, a.lo))
            yA_hi[j] = R.add_up(yA_hi[j], R.mul_up(yi, a.hi))
    total = yb
    worst = 0.0
    for j in range(n):
        e1 = R.sub_down(sys.c[j].lo, yA_hi[j])
        e2 = R.sub_up(sys.c[j].hi, yA_lo[j])
        worst = max(worst, abs(e1), abs(e2))
        lo, hi = sys.lower[j], sys.upper[j]
        terms = (
            _mul_up_ext(max(e2, 0.0), max(hi, 0.0)),
            _mul_up_ext(max(e1, 0.0), min(hi, 0.0)),
            _mul_up_ext(min(e2, 0.0), max(lo, 0.0)),
            _mul_up_ext(min(e1, 0.0), min(lo, 0.0)),
        )
        for t in terms:
            total = _add_up_ext(total, t)
    return CertificateCheck(total < sys.M.lo, total, sys.M.lo, worst, {"yb": yb})


def bound_exact(sys: LinearSystem, cert) -> Fraction | None:
    """The same bound in exact rational arithmetic on the enclosure ends
    (None when it is infinite).  Slow; an independent check for tests."""
    y = cert.y if isinstance(cert, DualCertificate) else DualCertificate(cert).y
    n = sys.n
    yA_lo = [Fraction(0)] * n
    yA_hi = [Fraction(0)] * n
    total = Fraction(0)
    for yi, row, bi in zip(y, sys.rows, sys.b):
        q = Fraction(yi)
        if not q:
            continue
        total += q * Fraction(bi.hi)
        for j, a in row:
            yA_lo[j] += q * Fraction(a.lo)
            yA_hi[j] += q * Fraction(a.hi)
    for j in range(n):
        e1 = Fraction(sys.c[j].lo) - yA_hi[j]
        e2 = Fraction(sys.c[j].hi) - yA_lo[j]
        lo, hi = sys.lower[j], sys.upper[j]
        for e, x in ((max(e2, 0), max(hi, 0.0)), (max(e1, 0), min(hi, 0.0)),
                     (min(e2, 0), max(lo, 0.0)), (min(e1, 0), min(lo, 0.0))):
            if e == 0 or x == 0.0:
                continue
            if math.isinf(x):
                return None
            total += e * Fraction(x)
    return total


# text format


def _parse_value(tok: str) -> Interval:
    tok = tok.strip()
    if tok.startswith("["):
        inner = tok.strip("[]").split(",")
        if len(inner) != 2:
            raise SystemFormatError(f"bad interval {tok!r}")
        lo, hi = Fraction(inner[0].strip()), Fraction(inner[1].strip())
        return Interval(fraction_down(lo), fraction_up(hi))
    q = Fraction(tok)
    return Interval(fraction_down(q), fraction_up(q))


def _parse_bound(tok: str, upper: bool) -> float:
    t = tok.strip().lower()
    if t in ("inf", "+inf"):
        return INF
    if t == "-inf":
        return -INF
    q = Fraction(tok)
    return fraction_up(q) if upper else fraction_down(q)


def _exact(v: float) -> str:
    # the full decimal expansion, so parsing gives back the same double
    if not math.isfinite(v) or Fraction(repr(v)) == Fraction(v):
        return repr(v)
    return str(Decimal(v))


def _fmt(x: Interval) -> str:
    return _exact(x.lo) if x.is_point() else f"[{_exact(x.lo)},{_exact(x.hi)}]"


def format_system(sys: LinearSystem) -> str:
    out = ["# A x <= b, l <= x <= u, c x >= M", f"dims {sys.m} {sys.n}", f"target {_fmt(sys.M)}", "A"]
    for i, row in enumerate(sys.rows):
        for j, a in row:
            out.append(f"{i} {j} {_fmt(a)}")
    out.append("b")
    out += [f"{i} {_fmt(x)}" for i, x in enumerate(sys.b)]
    out.append("bounds")
    out += [f"{j} {lo!r} {hi!r}" for j, (lo, hi) in enumerate(zip(sys.lower, sys.upper))]
    out.append("c")
    out += [f"{j} {_fmt(x)}" for j, x in enumerate(sys.c) if not (x.lo == x.hi == 0.0)]
    if sys.var_names:
        out.append("names")
        out += [f"{j} {name}" for j, name in enumerate(sys.var_names)]
    out.append("end")
    return "\n".join(out) + "\n"


def parse_system(text: str) -> LinearSystem:
    section = None
    m = n = None
    M = None
    rows = b = lower = upper = c = names = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split(None, 2)
        try:
            if tok[0] == "dims":
                m, n = int(tok[1]), int(tok[2])
                rows = [[] for _ in range(m)]
                b = [Interval(0.0)] * m
                lower, upper = [-INF] * n, [INF] * n
                c = [Interval(0.0)] * n
                continue
            if tok[0] == "target":
                M = _parse_value(line.split(None, 1)[1])
                continue
            if tok[0] in ("A", "b", "bounds", "c", "names", "end"):
                section = tok[0]
                continue
            if m is None:
                raise SystemFormatError("dims must come first")
            if section == "A":
                i, j, rest = int(tok[0]), int(tok[1]), tok[2]
                rows[i].append((j, _parse_value(rest)))
            elif section == "b":
                b[int(tok[0])] = _parse_value(line.split(None, 1)[1])
            elif section == "bounds":
                j, lo, hi = line.split()
                lower[int(j)] = _parse_bound(lo, False)
                upper[int(j)] = _parse_bound(hi, True)
            elif section == "c":
                c[int(tok[0])] = _parse_value(line.split(None, 1)[1])
            elif section == "names":
                names = names or [f"x{k}" for k in range(n)]
                names[int(tok[0])] = tok[1]
            else:
                raise SystemFormatError(f"line {lineno}: data outside a section")
        except (IndexError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, SystemFormatError):
                raise
            raise SystemFormatError(f"line {lineno}: {raw.strip()!r}: {exc}") from exc
    if m is None or M is None:
        raise SystemFormatError("missing dims or target")
    return LinearSystem(n, rows, b, lower, upper, c, M, names)


def format_dual(y) -> str:
    y = y.y if isinstance(y, DualCertificate) else y
    return " ".join(repr(float(v)) for v in y) + "\n"


def parse_dual(text: str) -> DualCertificate:
    vals = [v for v in text.split("#", 1)[0].split()]
    try:
        return DualCertificate([float(Fraction(v)) for v in vals])
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemFormatError(f"bad dual vector: {exc}") from exc
