"""Branch-and-bound verification of a disjunction of strict inequalities.

A cell is discharged when some disjunct has a rigorous lower bound > 0 on it.
Cells are processed depth first, lower half first, and bisected along the
widest side (lowest index on ties).  Every discharged cell is written to a
certificate log keyed by its bisection path, so :func:`replay` can re-check
each cell on its own and confirm that the cells tile the domain exactly.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ..geom.scalar import NotSmoothOnCell
from ..ival import Box, DomainViolation, Interval, RoundingOverflow
from .expr import Expr, eval_interval
from .taylor import NotC2OnCell, taylor_bound

log = logging.getLogger(__name__)

_EVAL_ERRORS = (DomainViolation, NotSmoothOnCell, RoundingOverflow, ZeroDivisionError)


class ZeroWidthBox(ValueError):
    pass


@dataclass(frozen=True)
class VerifyTask:
    disjuncts: tuple
    domain: Box
    budget: int = 100_000
    min_width: float = 1e-9
    mono: tuple = ()          # variables along which every disjunct is claimed nondecreasing
    use_taylor: bool = True

    def __post_init__(self):
        object.__setattr__(self, "disjuncts", tuple(self.disjuncts))
        object.__setattr__(self, "mono", tuple(sorted(set(self.mono))))
        if not self.disjuncts:
            raise ValueError("a task needs at least one disjunct")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if not self.min_width > 0:
            raise ValueError("min_width must be positive")
        m = self.domain.dim
        for d in self.disjuncts:
            bad = [v for v in d.variables() if v >= m]
            if bad:
                raise ValueError(f"variable index {bad[0]} out of range for {m} dimensions")
        if any(i >= m for i in self.mono):
            raise ValueError("mono index out of range")


@dataclass(frozen=True)
class CellCertificate:
    path: tuple               # ((axis, side), ...), side 0 = lower half
    disjunct: int
    method: str               # "interval" or "taylor"
    lower: float
    pinned: tuple = ()        # variables fixed at their lower end (checked monotone)

    def to_line(self, box: Box) -> str:
        path = ".".join(f"{a}{'LR'[s]}" for a, s in self.path) or "-"
        pin = ",".join(map(str, self.pinned)) or "-"
        return (f"cell path={path} disjunct={self.disjunct} method={self.method} "
                f"pin={pin} lower={self.lower!r} box={box.to_text()}")

    @classmethod
    def from_line(cls, line: str) -> "CellCertificate":
        head, _, _box = line.partition(" box=")
        fields = dict(kv.split("=", 1) for kv in head.split()[1:])
        path = ()
        if fields["path"] != "-":
            path = tuple((int(p[:-1]), "LR".index(p[-1])) for p in fields["path"].split("."))
        pinned = () if fields["pin"] == "-" else tuple(int(x) for x in fields["pin"].split(","))
        return cls(path, int(fields["disjunct"]), fields["method"], float(fields["lower"]), pinned)


@dataclass
class Cell:
    box: Box
    path: tuple = ()
    dead: frozenset = frozenset()


@dataclass
class Verified:
    cells_used: int
    certificates: list
    fallbacks: int = 0

    status = "verified"


@dataclass
class Failed:
    witness: Box
    cells_used: int
    uppers: tuple = ()

    status = "failed"


@dataclass
class BudgetExhausted:
    frontier: list
    cells_used: int
    certificates: list
    reason: str = "budget"
    fallbacks: int = 0

    status = "budget_exhausted"

    def frontier_volume(self) -> Fraction:
        return sum((c.box.volume_exact() for c in self.frontier), Fraction(0))


def subdivide(b: Box, axis: int | None = None):
    """Bisect ``b`` along ``axis`` (default: widest side, lowest index on ties)."""
    if axis is None:
        axis = b.widest()
    if b[axis].width == 0:
        raise ZeroWidthBox("cannot bisect a side of zero width")
    return list(b.split(axis))


def pinned_box(box: Box, pins) -> Box:
    sides = list(box)
    for i in pins:
        sides[i] = Interval(sides[i].lo)
    return Box(tuple(sides))


@dataclass
class _Bound:
    lower: float
    upper: float
    method: str
    pinned: tuple = ()
    fallback: bool = False
    monotone: frozenset = frozenset()


def bound_disjunct(e: Expr, box: Box, mono=(), use_taylor=True) -> _Bound:
    """Rigorous lower and upper bounds of ``e`` on ``box``.

    The lower bound may come from the face where the ``mono`` variables sit at
    their lower ends, but only for variables whose partial derivative is
    certified nonnegative on the whole cell.  The upper bound always refers to
    the whole cell.
    """
    lower, upper, method = -float("inf"), float("inf"), "interval"
    try:
        iv = eval_interval(e, box)
        lower, upper = iv.lo, iv.hi
    except _EVAL_ERRORS:
        pass
    if lower > 0 or upper < 0 or not use_taylor:
        return _Bound(lower, upper, method)
    try:
        tb = taylor_bound(e, box)
    except NotC2OnCell:
        return _Bound(lower, upper, method, fallback=True)
    upper = min(upper, tb.enclosure.hi)
    if tb.enclosure.lo > lower:
        lower, method = tb.enclosure.lo, "taylor"
    if lower > 0 or not mono:
        return _Bound(lower, upper, method)
    grad = tb.cell_gradient
    if grad is None:
        return _Bound(lower, upper, method)
    pins = tuple(i for i in mono if box[i].width > 0 and grad[i].lo >= 0)
    if not pins:
        return _Bound(lower, upper, method)
    mon = frozenset(pins)
    face = pinned_box(box, pins)
    best, how = -float("inf"), "interval"
    try:
        best = eval_interval(e, face).lo
    except _EVAL_ERRORS:
        pass
    if best <= 0:
        try:
            t = taylor_bound(e, face).enclosure.lo
            if t > best:
                best, how = t, "taylor"
        except NotC2OnCell:
            pass
    if best > lower:
        return _Bound(best, upper, how, pins, monotone=mon)
    return _Bound(lower, upper, method, monotone=mon)


class _Search:
    def __init__(self, task: VerifyTask, trace=False):
        self.task = task
        self.order = sorted(range(len(task.disjuncts)), key=lambda j: (task.disjuncts[j].size(), j))
        self.certs = []
        self.fallbacks = 0
        self.cells = 0
        self.trace = [] if trace else None

    def process(self, cell: Cell):
        """Returns ("done", None), ("failed", uppers) or ("split", children)."""
        t = self.task
        dead = set(cell.dead)
        uppers = {}
        pins_all = None
        for j in self.order:
            if j in dead:
                continue
            b = bound_disjunct(t.disjuncts[j], cell.box, t.mono, t.use_taylor)
            self.fallbacks += b.fallback
            if b.lower > 0:
                self.certs.append(CellCertificate(cell.path, j, b.method, b.lower, b.pinned))
                return "done", None
            uppers[j] = b.upper
            if b.upper < 0:
                dead.add(j)
            pins_all = set(b.monotone) if pins_all is None else pins_all & b.monotone
        if len(dead) == len(t.disjuncts):
            return "failed", tuple(uppers.get(j) for j in range(len(t.disjuncts)))
        widths = cell.box.widths()
        free = [i for i in range(len(widths)) if widths[i] > 0 and i not in (pins_all or set())]
        if not free:
            free = [i for i in range(len(widths)) if widths[i] > 0]
        if not free:
            return "stuck", None
        axis = max(free, key=lambda i: (widths[i], -i))
        if widths[axis] < t.min_width:
            return "stuck", None
        lo, hi = subdivide(cell.box, axis)
        d = frozenset(dead)
        return "split", (Cell(lo, cell.path + ((axis, 0),), d), Cell(hi, cell.path + ((axis, 1),), d))

    def run(self, stack, budget):
        stuck = []
        while stack:
            if self.trace is not None:
                self.trace.append(sum((c.box.volume_exact() for c in stack + stuck), Fraction(0)))
            if self.cells >= budget:
                return BudgetExhausted(stack[::-1] + stuck, self.cells, self.certs, "budget", self.fallbacks)
            cell = stack.pop()
            self.cells += 1
            kind, payload = self.process(cell)
            if kind == "failed":
                return Failed(cell.box, self.cells, payload)
            if kind == "stuck":
                stuck.append(cell)
            elif kind == "split":
                lo, hi = payload
                stack.append(hi)
                stack.append(lo)
        if stuck:
            return BudgetExhausted(stuck, self.cells, self.certs, "min_width", self.fallbacks)
        return Verified(self.cells, self.certs, self.fallbacks)


def _path_key(cert):
    return tuple(s for _, s in cert.path)


def verify(task: VerifyTask, frontier=None, *, workers: int = 1, trace: list | None = None):
    """Run the branch and bound; ``frontier`` resumes from a previous
    BudgetExhausted result.  With ``workers > 1`` the top of the tree is
    expanded serially and the subtrees are searched in worker processes; for a
    Verified outcome the certificate set equals the serial one."""
    stack = list(frontier)[::-1] if frontier else [Cell(task.domain)]
    if workers > 1:
        return _verify_parallel(task, stack, workers)
    search = _Search(task, trace=trace is not None)
    out = search.run(stack, task.budget)
    if trace is not None:
        trace.extend(search.trace)
    if hasattr(out, "certificates"):
        out.certificates.sort(key=_path_key)
    return out


def _subtree(args):
    task, cell, budget = args
    search = _Search(task)
    return search.run([cell], budget)


def _verify_parallel(task, stack, workers):
    # breadth-first expansion until there are enough independent subtrees
    head = _Search(task)
    queue = list(reversed(stack))
    target = 4 * workers
    while queue and len(queue) < target and head.cells < task.budget:
        cell = queue.pop(0)
        head.cells += 1
        kind, payload = head.process(cell)
        if kind == "failed":
            return Failed(cell.box, head.cells, payload)
        if kind == "split":
            queue.extend(payload)
        elif kind == "stuck":
            queue.append(cell)
            break
    queue.sort(key=lambda c: tuple(s for _, s in c.path))
    remaining = max(task.budget - head.cells, 1)
    share = max(remaining // max(len(queue), 1), 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_subtree, [(task, c, share) for c in queue]))
    certs = list(head.certs)
    cells = head.cells
    frontier = []
    fallbacks = head.fallbacks
    reason = "budget"
    for r in results:
        cells += r.cells_used
        if isinstance(r, Failed):
            return Failed(r.witness, cells, r.uppers)
    for r in results:
        certs.extend(r.certificates)
        fallbacks += r.fallbacks
        if isinstance(r, BudgetExhausted):
            frontier.extend(r.frontier)
            reason = r.reason
    certs.sort(key=_path_key)
    if frontier:
        return BudgetExhausted(frontier, cells, certs, reason, fallbacks)
    return Verified(cells, certs, fallbacks)


# certificate log


def box_from_path(domain: Box, path) -> Box:
    b = domain
    for axis, side in path:
        b = subdivide(b, axis)[side]
    return b


def write_log(task: VerifyTask, certificates, fh):
    for c in certificates:
        fh.write(c.to_line(box_from_path(task.domain, c.path)) + "\n")


def read_log(lines):
    return [CellCertificate.from_line(ln) for ln in lines if ln.startswith("cell ")]


@dataclass
class ReplayReport:
    ok: bool
    cells: int
    errors: list = field(default_factory=list)


def check_cover(certificates) -> list:
    """Errors if the certificate paths do not form the leaves of one bisection
    tree whose leaves tile the root: consistent split axes, no leaf below
    another leaf, and Kraft sum exactly one."""
    errors = []
    axis_at = {}
    leaves = set()
    for c in certificates:
        for k, (axis, _) in enumerate(c.path):
            node = c.path[:k]
            if axis_at.setdefault(node, axis) != axis:
                errors.append(f"inconsistent split axis at {node}")
        leaves.add(c.path)
    if len(leaves) != len(certificates):
        errors.append("duplicate cell")
    for p in leaves:
        if p in axis_at:
            errors.append(f"leaf {p} is also an internal node")
    total = sum((Fraction(1, 2 ** len(p)) for p in leaves), Fraction(0))
    if total != 1:
        errors.append(f"cells cover {total} of the domain")
    return errors


def replay(task: VerifyTask, certificates) -> ReplayReport:
    """Re-validate every cell independently and check the exact cover."""
    errors = check_cover(certificates)
    for c in certificates:
        try:
            box = box_from_path(task.domain, c.path)
        except ZeroWidthBox:
            errors.append(f"path {c.path} splits a zero-width side")
            continue
        e = task.disjuncts[c.disjunct]
        if c.pinned:
            if not set(c.pinned) <= set(task.mono):
                errors.append(f"cell {c.path}: pinned variable without a mono annotation")
                continue
            try:
                g = taylor_bound(e, box).cell_gradient
            except NotC2OnCell:
                errors.append(f"cell {c.path}: gradient not available")
                continue
            if g is None or any(g[i].lo < 0 for i in c.pinned):
                errors.append(f"cell {c.path}: monotonicity not certified")
                continue
            box = pinned_box(box, c.pinned)
        try:
            if c.method == "interval":
                lo = eval_interval(e, box).lo
            else:
                lo = taylor_bound(e, box).enclosure.lo
        except (NotC2OnCell, *_EVAL_ERRORS) as exc:
            errors.append(f"cell {c.path}: {exc}")
            continue
        if not lo > 0:
            errors.append(f"cell {c.path}: lower bound {lo!r} is not positive")
    return ReplayReport(not errors, len(certificates), errors)
