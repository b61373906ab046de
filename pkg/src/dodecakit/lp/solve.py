"""Certificate producers: an in-process LP and an external program.

Neither is trusted; every certificate they return goes through
check_certificate before it counts.
"""

from __future__ import annotations

import math
import os
import shutil
import subprocess
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix, csr_matrix, diags, hstack, identity, vstack

from .system import DualCertificate, LinearSystem, format_system, parse_dual

Y_CAP = 1e7  # normalisation for Farkas rays


class SolverUnavailable(RuntimeError):
    pass


class SolverError(RuntimeError):
    pass


@dataclass
class SolverAnswer:
    claims_infeasible: bool
    certificate: DualCertificate | None
    value: float | None = None  # solver's estimate of max c x (or of the bound)


def _matrix(sys: LinearSystem):
    r, cidx, v = [], [], []
    for i, row in enumerate(sys.rows):
        for j, a in row:
            r.append(i)
            cidx.append(j)
            v.append(a.mid)
    return coo_matrix((v, (r, cidx)), shape=(sys.m, sys.n)).tocsr()


def builtin_certificate(sys: LinearSystem) -> SolverAnswer:
    """Minimise y b + sum_j max_{x_j in [l_j, u_j]} (c - yA)_j x_j over
    y >= 0.  By LP duality the optimum is max c x, so a value below M means
    the system is infeasible and y is the certificate."""
    m, n = sys.m, sys.n
    At = _matrix(sys).T.tocsr()
    c = np.array([x.mid for x in sys.c])
    b = np.array([x.hi for x in sys.b])
    lo = np.array(sys.lower)
    hi = np.array(sys.upper)
    I = identity(n, format="csr")
    Z = csr_matrix((n, n))
    ub_blocks, ub_rhs, eq_blocks, eq_rhs = [], [], [], []
    for bound in (hi, lo):
        k = np.isfinite(bound)
        # s_j >= (c_j - (A^T y)_j) x_j   <=>   -x_j (A^T y)_j - s_j <= -x_j c_j
        ub_blocks.append(hstack([-diags(bound[k]) @ At[k], -I[k]]))
        ub_rhs.append(-bound[k] * c[k])
    only_lo = np.isinf(hi) & np.isfinite(lo)  # need (A^T y)_j >= c_j
    ub_blocks.append(hstack([-At[only_lo], Z[only_lo]]))
    ub_rhs.append(-c[only_lo])
    only_hi = np.isinf(lo) & np.isfinite(hi)  # need (A^T y)_j <= c_j
    ub_blocks.append(hstack([At[only_hi], Z[only_hi]]))
    ub_rhs.append(c[only_hi])
    free = np.isinf(lo) & np.isinf(hi)
    if free.any():
        eq_blocks.append(hstack([At[free], Z[free]]))
        eq_rhs.append(c[free])
    obj = np.concatenate([b, np.ones(n)])
    bounds = [(0, Y_CAP)] * m + [(None, None)] * n
    res = linprog(
        obj,
        A_ub=vstack(ub_blocks).tocsr(), b_ub=np.concatenate(ub_rhs),
        A_eq=vstack(eq_blocks).tocsr() if eq_blocks else None,
        b_eq=np.concatenate(eq_rhs) if eq_blocks else None,
        bounds=bounds, method="highs",
    )
    if res.status != 0:
        return SolverAnswer(False, None, None)
    y = DualCertificate(res.x[:m])
    return SolverAnswer(res.fun < sys.M.mid, y, float(res.fun))


def maximise(sys: LinearSystem):
    """A point maximising c x over A x <= b and the box, or None if the LP
    solver finds the constraints infeasible."""
    A = _matrix(sys)
    c = np.array([x.mid for x in sys.c])
    b = np.array([x.hi for x in sys.b])
    bounds = [(None if math.isinf(lo) else lo, None if math.isinf(hi) else hi)
              for lo, hi in zip(sys.lower, sys.upper)]
    res = linprog(-c, A_ub=A if sys.m else None, b_ub=b if sys.m else None, bounds=bounds, method="highs")
    if res.status == 2:
        return None
    if res.status != 0:
        raise SolverError(res.message)
    return res.x


class ExternalSolver:
    """Runs ``<program> <system file> <dual file>``.  The program writes
    either a whitespace-separated dual vector (claiming infeasibility) or a
    line starting with 'feasible'."""

    def __init__(self, program, timeout: float = 600.0):
        self.program = program
        self.timeout = timeout

    def resolve(self) -> str:
        if not self.program:
            raise SolverUnavailable("no solver program configured")
        path = shutil.which(str(self.program))
        if path is None or not os.access(path, os.X_OK):
            raise SolverUnavailable(f"solver program {self.program!r} not found or not executable")
        return path

    def __call__(self, sys: LinearSystem) -> SolverAnswer:
        prog = self.resolve()
        with tempfile.TemporaryDirectory() as tmp:
            sfile = Path(tmp) / "system.txt"
            dfile = Path(tmp) / "dual.txt"
            sfile.write_text(format_system(sys), encoding="utf-8")
            try:
                proc = subprocess.run([prog, str(sfile), str(dfile)], capture_output=True,
                                      text=True, timeout=self.timeout)
            except (OSError, subprocess.TimeoutExpired) as exc:
                raise SolverError(f"solver failed: {exc}") from exc
            if proc.returncode != 0:
                raise SolverError(f"solver exit {proc.returncode}: {proc.stderr.strip()[:200]}")
            if not dfile.exists():
                raise SolverError("solver wrote no dual file")
            text = dfile.read_text(encoding="utf-8")
        if text.strip().lower().startswith("feasible"):
            return SolverAnswer(False, None)
        return SolverAnswer(True, parse_dual(text))


def get_solver(spec):
    """'builtin' (or None) for the in-process LP, else a program path."""
    if spec in (None, "", "builtin"):
        return builtin_certificate
    if callable(spec):
        return spec
    return ExternalSolver(spec)


def solve_external(sys: LinearSystem, program, timeout: float = 600.0) -> SolverAnswer:
    """One round trip through an external solver program."""
    return ExternalSolver(program, timeout)(sys)
