"""Pure-Python versions of the compiled kernels in ``_ckernels.pyx``."""


def canonical_code(f, n, starts, size):
    """Lexicographically least breadth-first code of one component.

    From each start dart the component is relabeled in visiting order, f
    successor before n successor; the code lists (label(f x), label(n x)) for
    the darts in label order.  ``size`` is the number of darts reached.
    Returns (code, start) for the best start.
    """
    N = len(f)
    best = None
    best_start = -1
    label = [-1] * N
    order = [0] * size
    for s in starts:
        label[s] = 0
        order[0] = s
        nxt = 1
        code = []
        state = 0 if best is not None else -1  # 0 tied, -1 already smaller
        pos = 0
        k = 0
        while k < nxt:
            x = order[k]
            k += 1
            for y in (f[x], n[x]):
                ly = label[y]
                if ly < 0:
                    ly = nxt
                    label[y] = ly
                    order[nxt] = y
                    nxt += 1
                if state == 0:
                    b = best[pos]
                    if ly > b:
                        state = 1
                        break
                    if ly < b:
                        state = -1
                code.append(ly)
                pos += 1
            if state == 1:
                break
        if state == -1:
            best = code
            best_start = s
        for x in order[:nxt]:
            label[x] = -1
    return best, best_start
