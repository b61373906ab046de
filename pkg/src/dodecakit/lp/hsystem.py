"""Linear relaxations of hypermaps, guarded constraints and infeasibility proofs.

Every dart d carries the variables yn, ye, sol, azim, mu, omega.  The core
constraint set instantiated by relax_hypermap:

  node_azim      sum of azim over the darts of a node = 2 pi
  girard         sol(F) = sum of azim over F - (|F| - 2) pi
  azim_bounds    0.856147 <= azim <= 1.88673 on triangles,
                 1.15242 <= azim <= 3.25887 on quadrilaterals
  face_constant  sol, mu, omega agree on the darts of a face
  node_constant  yn agrees on the darts of a node
  edge_constant  ye(d) = ye(e d)
  mu_definition  mu = omega - M_dod sol
  mu_lower       mu(F) >= t_|F|

The objective is -sum_F mu(F) with M = -mu(Lambda_dod), so a proof shows
sum_F mu(F) > mu(Lambda_dod) for every assignment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal

from ..hmap import Hypermap
from ..ival import Interval, pi_interval
from ..tame import SQUANDER_TARGET, is_tame, t_exact
from .solve import get_solver
from .system import LinearSystem, check_certificate

VARS = ("yn", "ye", "sol", "azim", "mu", "omega")

TRIANGLE_AZIM = ("0.856147", "1.88673")
QUAD_AZIM = ("1.15242", "3.25887")
M_DOD = "0.42755"
T_DOD_HI = 1.2584085723648190  # above sqrt(3) tan(pi/5)

# a priori variable ranges: azim in [0, 2 pi], sol in [0, 4 pi],
# omega inside the ball of radius t_dod (volume < 8.35), mu = omega - M sol
_RANGES = {
    "yn": (2.0, 2 * T_DOD_HI),
    "ye": (2.0, 2 * T_DOD_HI),
    "sol": (0.0, 12.6),
    "azim": (0.0, 6.3),
    "mu": (-6.0, 9.0),
    "omega": (0.0, 9.0),
}


class NotTame(ValueError):
    pass


class CertificateRejected(RuntimeError):
    pass


class ConstraintSyntax(ValueError):
    pass


def _dec(s) -> Interval:
    return Interval.from_decimal(str(s))


@dataclass
class Constraint:
    kind: str
    coef: list  # (variable index, Interval)
    sense: str  # '<=', '>=', '==' or 'in'
    rhs: Interval  # for 'in' the allowed range of coef . x
    where: str = ""


@dataclass
class GuardedConstraint:
    """(A x < b) implies (A' x <= b'); rows are (coef, rhs) pairs with coef
    a list of (variable index, Interval)."""

    guard: list
    consequent: list
    where: str = ""


@dataclass
class HypermapSystem:
    h: Hypermap
    constraints: list = field(default_factory=list)
    guards: list = field(default_factory=list)
    target: Interval = field(default_factory=lambda: _dec(SQUANDER_TARGET))

    @property
    def n(self) -> int:
        return len(VARS) * self.h.size

    def var(self, name: str, dart: int) -> int:
        return VARS.index(name) * self.h.size + dart

    def var_names(self):
        return [f"{name}[{d}]" for name in VARS for d in range(self.h.size)]

    def count(self, kind: str) -> int:
        return sum(c.kind == kind for c in self.constraints)

    def add(self, kind, coef, sense, rhs, where=""):
        self.constraints.append(Constraint(kind, list(coef), sense, rhs, where))

    def objective(self):
        c = [Interval(0.0)] * self.n
        for F in self.h.faces():
            c[self.var("mu", F[0])] = Interval(-1.0)
        return c

    def to_linear_system(self) -> LinearSystem:
        rows, b, names = [], [], []
        for k, con in enumerate(self.constraints):
            tag = f"{con.kind}:{con.where or k}"
            neg = [(j, -a) for j, a in con.coef]
            if con.sense in ("<=", "==", "in"):
                rows.append(con.coef)
                b.append(Interval(con.rhs.hi))
                names.append(tag + ":le")
            if con.sense in (">=", "==", "in"):
                rows.append(neg)
                b.append(Interval(-con.rhs.lo))
                names.append(tag + ":ge")
        lower, upper = [], []
        for name in VARS:
            lo, hi = _RANGES[name]
            lower += [lo] * self.h.size
            upper += [hi] * self.h.size
        return LinearSystem(self.n, rows, b, lower, upper, self.objective(),
                            -self.target, self.var_names(), names)


def relax_hypermap(h: Hypermap, extra=None, *, check_tame=True, ignore=(), target=SQUANDER_TARGET) -> HypermapSystem:
    """The core linear relaxation of ``h``, plus constraints parsed from
    ``extra`` (constraint-file text or a list of lines)."""
    if check_tame:
        rep = is_tame(h, weights=False)
        bad = [k for k in rep.failed() if k not in ignore]
        if bad:
            raise NotTame(f"conditions {bad} fail: " + "; ".join(rep.details[k] for k in bad))
    s = HypermapSystem(h, target=_dec(target))
    pi = pi_interval()
    one = Interval(1.0)
    v = s.var
    for k, node in enumerate(h.nodes()):
        s.add("node_azim", [(v("azim", d), one) for d in node], "==", pi * 2, f"node {k}")
        for d in node[1:]:
            s.add("node_constant", [(v("yn", d), one), (v("yn", node[0]), -one)], "==", Interval(0.0), f"node {k}")
    for d in range(h.size):
        if d < h.e[d]:
            s.add("edge_constant", [(v("ye", d), one), (v("ye", h.e[d]), -one)], "==", Interval(0.0), f"dart {d}")
    mdod = _dec(M_DOD)
    for k, F in enumerate(h.faces()):
        r = len(F)
        d0 = F[0]
        coef = [(v("sol", d0), one)] + [(v("azim", d), -one) for d in F]
        s.add("girard", coef, "==", -(pi * (r - 2)), f"face {k}")
        for name in ("sol", "mu", "omega"):
            for d in F[1:]:
                s.add("face_constant", [(v(name, d), one), (v(name, d0), -one)], "==", Interval(0.0), f"face {k}")
        s.add("mu_definition", [(v("mu", d0), one), (v("omega", d0), -one), (v("sol", d0), mdod)],
              "==", Interval(0.0), f"face {k}")
        if r >= 3:
            s.add("mu_lower", [(v("mu", d0), one)], ">=", _dec(t_exact(r)), f"face {k}")
        bounds = {3: TRIANGLE_AZIM, 4: QUAD_AZIM}.get(r)
        if bounds:
            rng = Interval(_dec(bounds[0]).lo, _dec(bounds[1]).hi)
            for d in F:
                s.add("azim_bounds", [(v("azim", d), one)], "in", rng, f"face {k} dart {d}")
    if extra is not None:
        load_constraints(s, extra)
    return s


# constraint files


_TOKEN = re.compile(r"\s*(<=|>=|==|<|>|\+|-|\*|[A-Za-z_][A-Za-z_0-9]*|\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)")
_SCOPE = re.compile(r"^(dart|face|node)(?:@(\d+))?$")


def _tokens(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ConstraintSyntax(f"cannot read {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _parse_ineq(toks):
    """[(coef Decimal, summed, var)], op, rhs Decimal."""
    ops = [i for i, t in enumerate(toks) if t in ("<=", ">=", "==", "<", ">")]
    if len(ops) != 1:
        raise ConstraintSyntax(f"need exactly one comparison in {' '.join(toks)!r}")
    i = ops[0]
    lhs, op, rhs = toks[:i], toks[i], toks[i + 1:]
    sign = 1
    if rhs and rhs[0] == "-":
        sign, rhs = -1, rhs[1:]
    if len(rhs) != 1:
        raise ConstraintSyntax(f"right-hand side must be a number: {' '.join(toks)!r}")
    terms = []
    k = 0
    while k < len(lhs):
        s = 1
        while k < len(lhs) and lhs[k] in "+-":
            s = -s if lhs[k] == "-" else s
            k += 1
        coef = Decimal(1)
        if k < len(lhs) and re.match(r"[\d.]", lhs[k]):
            coef = Decimal(lhs[k])
            k += 1
            if k < len(lhs) and lhs[k] == "*":
                k += 1
        summed = False
        if k < len(lhs) and lhs[k] == "sum":
            summed = True
            k += 1
        if k >= len(lhs) or lhs[k] not in VARS:
            raise ConstraintSyntax(f"expected a variable name in {' '.join(toks)!r}")
        terms.append((s * coef, summed, lhs[k]))
        k += 1
    return terms, op, sign * Decimal(rhs[0])


def _instances(s: HypermapSystem, scope, size):
    h = s.h
    faces = h.faces()
    face_of = {d: k for k, F in enumerate(faces) for d in F}
    if scope == "dart":
        items = [(d, [d]) for d in range(h.size)]
    elif scope == "face":
        items = [(F[0], F) for F in faces]
    else:
        items = [(N[0], N) for N in h.nodes()]
    if size is not None:
        items = [(rep, ds) for rep, ds in items if len(faces[face_of[rep]]) == size]
    return items


def _row(s, terms, rep, darts):
    acc = {}
    for coef, summed, name in terms:
        for d in darts if summed else [rep]:
            j = s.var(name, d)
            acc[j] = acc.get(j, Decimal(0)) + coef
    return [(j, _dec(c)) for j, c in sorted(acc.items()) if c]


def load_constraints(s: HypermapSystem, source):
    """Add constraints from a constraint file.  Each line reads

        <scope>[@size]: <expr> <op> <number> [if <expr> <op> <number> [and ...]]

    with scope dart, face or node, an optional face size filter, and
    expressions such as ``azim - 0.2 mu`` or ``sum azim``.  Plain variables
    refer to the representative dart of the scope, ``sum v`` sums over its
    darts.  Strict inequalities are added as weak ones; an ``if`` clause
    makes a guarded constraint."""
    lines = source.splitlines() if isinstance(source, str) else list(source)
    added = 0
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, body = line.split(":", 1)
            m = _SCOPE.match(head.strip())
            if not m:
                raise ConstraintSyntax(f"unknown scope {head.strip()!r}")
            scope, size = m.group(1), int(m.group(2)) if m.group(2) else None
            parts = re.split(r"\bif\b", body, maxsplit=1)
            main = _parse_ineq(_tokens(parts[0]))
            guards = []
            if len(parts) == 2:
                guards = [_parse_ineq(_tokens(g)) for g in re.split(r"\band\b", parts[1])]
        except ConstraintSyntax as exc:
            raise ConstraintSyntax(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise ConstraintSyntax(f"line {lineno}: {raw.strip()!r}: {exc}") from None
        for rep, darts in _instances(s, scope, size):
            terms, op, rhs = main
            row = _row(s, terms, rep, darts)
            sense = {"<": "<=", ">": ">="}.get(op, op)
            if not guards:
                s.add(f"file:{lineno}", row, sense, _dec(rhs), f"dart {rep}")
            else:
                cons = _as_le(row, sense, _dec(rhs))
                grd = []
                for gterms, gop, grhs in guards:
                    grow = _row(s, gterms, rep, darts)
                    grd += _as_le(grow, {"<": "<=", ">": ">="}.get(gop, gop), _dec(grhs))
                s.guards.append(GuardedConstraint(grd, cons, f"line {lineno} dart {rep}"))
            added += 1
    return added


def _as_le(row, sense, rhs: Interval):
    """Rows (coef, bound) with coef . x <= bound equivalent to the input."""
    neg = [(j, -a) for j, a in row]
    if sense == "<=":
        return [(row, rhs.hi)]
    if sense == ">=":
        return [(neg, -rhs.lo)]
    return [(row, rhs.hi), (neg, -rhs.lo)]


# guards and proofs


def guard_branch(sys, g: GuardedConstraint):
    """Systems whose joint infeasibility implies that of ``sys`` with the
    guarded constraint: one per guard row (row >= bound) plus one with the
    consequent.  Strict guards are negated to weak inequalities, which only
    enlarges the branches."""
    base = sys.to_linear_system() if isinstance(sys, HypermapSystem) else sys
    out = []
    for k, (coef, bound) in enumerate(g.guard):
        out.append(base.with_rows([[(j, -a) for j, a in coef]], [Interval(-bound)], [f"not-guard:{k}"]))
    rows = [coef for coef, _ in g.consequent]
    out.append(base.with_rows(rows, [Interval(bd) for _, bd in g.consequent],
                              [f"consequent:{k}" for k in range(len(rows))]))
    return out


@dataclass
class BranchResult:
    path: tuple  # branch index chosen at each guard level
    proven: bool
    bound: float | None
    certificate: list | None


@dataclass
class ProofReport:
    verdict: str  # 'Proven' or 'NotProven'
    branches: list

    @property
    def proven(self) -> bool:
        return self.verdict == "Proven"


def _attempt(sys: LinearSystem, solver, path, on_reject):
    ans = solver(sys)
    if not ans.claims_infeasible or ans.certificate is None:
        return BranchResult(path, False, ans.value, None)
    chk = check_certificate(sys, ans.certificate)
    if not chk.proven and on_reject == "raise":
        raise CertificateRejected(
            f"certificate for branch {path} gives bound {chk.bound} >= {chk.target}")
    return BranchResult(path, chk.proven, chk.bound, ans.certificate.y)


def prove_infeasible(hsys, solver=None, on_reject: str = "raise") -> ProofReport:
    """Try the unguarded system first, then split on the guards one at a
    time.  The verdict is Proven only when every leaf carries a certificate
    that check_certificate accepts."""
    solver = get_solver(solver)
    if isinstance(hsys, HypermapSystem):
        base, guards = hsys.to_linear_system(), list(hsys.guards)
    else:
        base, guards = hsys, []
    results = []

    def go(sys, level, path):
        res = _attempt(sys, solver, path, on_reject)
        if res.proven or level == len(guards):
            results.append(res)
            return res.proven
        ok = True
        for k, branch in enumerate(guard_branch(sys, guards[level])):
            ok = go(branch, level + 1, path + (k,)) and ok
            if not ok:
                break
        return ok

    proven = go(base, 0, ())
    return ProofReport("Proven" if proven else "NotProven", results)


# vertex types


def vertex_type_system(p: int, q: int) -> LinearSystem:
    """p triangle and q quadrilateral azimuths summing to 2 pi, each within
    its bounds.  c = 0 and M = 0, so a proof is a proof of infeasibility."""
    n = p + q
    two_pi = pi_interval() * 2
    tri = (_dec(TRIANGLE_AZIM[0]).lo, _dec(TRIANGLE_AZIM[1]).hi)
    quad = (_dec(QUAD_AZIM[0]).lo, _dec(QUAD_AZIM[1]).hi)
    lower = [tri[0]] * p + [quad[0]] * q
    upper = [tri[1]] * p + [quad[1]] * q
    one = Interval(1.0)
    rows = [[(j, one) for j in range(n)], [(j, -one) for j in range(n)]]
    b = [Interval(two_pi.hi), Interval(-two_pi.lo)]
    names = [f"azim_t{k}" for k in range(p)] + [f"azim_q{k}" for k in range(q)]
    return LinearSystem(n, rows, b, lower, upper, [Interval(0.0)] * n, Interval(0.0),
                        names, ["sum_le", "sum_ge"])


def vertex_type_feasible(p: int, q: int) -> bool:
    """True when the open azimuth bounds admit a sum of exactly 2 pi, checked
    in interval arithmetic: p lo_t + q lo_q < 2 pi < p hi_t + q hi_q."""
    two_pi = pi_interval() * 2
    lo = _dec(TRIANGLE_AZIM[0]) * p + _dec(QUAD_AZIM[0]) * q
    hi = _dec(TRIANGLE_AZIM[1]) * p + _dec(QUAD_AZIM[1]) * q
    return lo.hi < two_pi.lo and two_pi.hi < hi.lo


@dataclass
class VertexScan:
    feasible: list  # (p, q) pairs with a witness
    proofs: dict  # (p, q) -> BranchResult for the proven infeasible ones
    undecided: list

    @property
    def max_p(self) -> int:
        return max(p for p, _ in self.feasible)

    @property
    def max_q(self) -> int:
        return max(q for _, q in self.feasible)


def scan_vertex_types(pmax: int = 10, qmax: int = 10, solver=None) -> VertexScan:
    solver = get_solver(solver)
    feas, proofs, undecided = [], {}, []
    for p in range(pmax + 1):
        for q in range(qmax + 1):
            if p + q == 0:
                continue
            if vertex_type_feasible(p, q):
                feas.append((p, q))
                continue
            res = _attempt(vertex_type_system(p, q), solver, (p, q), "record")
            if res.proven:
                proofs[(p, q)] = res
            else:
                undecided.append((p, q))
    return VertexScan(feas, proofs, undecided)
