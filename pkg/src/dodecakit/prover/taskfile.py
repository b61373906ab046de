"""Line-oriented inequality task files.

::

    # comment
    vars 3
    dom 0 2 2.5168
    dom 1 2 2.5168
    dom 2 2 2.5168
    disjunct - eta var_0 var_1 var_2 const 1.1547
    budget 20000        (optional)
    min_width 1e-9      (optional)
    mono 0              (optional, repeatable)

Domain bounds are decimals, enclosed outward so that the verified box
contains the stated one.  Variables are numbered from 0.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction

from ..ival import Box, Interval
from ..ival.interval import fraction_down, fraction_up
from .expr import parse
from .verify import VerifyTask


class TaskFormatError(ValueError):
    pass


def parse_task(text: str) -> VerifyTask:
    m = None
    dom = {}
    disjuncts = []
    opts = {}
    mono = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        try:
            if key == "vars":
                m = int(rest)
            elif key == "dom":
                i, lo, hi = rest.split()
                dom[int(i)] = Interval(fraction_down(Fraction(lo)), fraction_up(Fraction(hi)))
            elif key == "disjunct":
                disjuncts.append(parse(rest))
            elif key == "budget":
                opts["budget"] = int(rest)
            elif key == "min_width":
                opts["min_width"] = float(rest)
            elif key == "mono":
                mono.append(int(rest))
            else:
                raise TaskFormatError(f"unknown keyword {key!r}")
        except TaskFormatError:
            raise
        except ValueError as exc:
            raise TaskFormatError(f"line {n}: {exc}") from exc
    if m is None:
        raise TaskFormatError("missing 'vars' header")
    if sorted(dom) != list(range(m)):
        raise TaskFormatError(f"expected one dom line per variable 0..{m - 1}")
    try:
        return VerifyTask(tuple(disjuncts), Box(tuple(dom[i] for i in range(m))), mono=tuple(mono), **opts)
    except ValueError as exc:
        raise TaskFormatError(str(exc)) from exc


def format_task(task: VerifyTask) -> str:
    lines = [f"vars {task.domain.dim}"]
    for i, s in enumerate(task.domain):
        # exact decimal expansions, so that reading back gives the same floats
        lines.append(f"dom {i} {Decimal(s.lo)} {Decimal(s.hi)}")
    lines += [f"disjunct {d.to_prefix()}" for d in task.disjuncts]
    lines.append(f"budget {task.budget}")
    lines.append(f"min_width {task.min_width!r}")
    lines += [f"mono {i}" for i in task.mono]
    return "\n".join(lines) + "\n"
