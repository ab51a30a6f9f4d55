"""Hot loops: exhaustive conjugation scans over S_q and orthogonal-mate backtracking.

Each kernel has a numba ``@njit`` version and a numpy (or plain Python)
fallback with identical results.  The backend is chosen per call by
:func:`get_backend`: an explicit :func:`set_backend` override wins, then the
``PGPOLY_BACKEND`` environment variable (``numba`` or ``numpy``), then numba
if it imports.
"""
from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

ENV_VAR = "PGPOLY_BACKEND"
BACKENDS = ("numba", "numpy")

_override = None

MATE_FOUND, MATE_EXHAUSTED, MATE_BUDGET = 0, 1, 2


def set_backend(name):
    """Force a backend for subsequent calls; ``None`` restores env/default selection."""
    global _override
    if name is not None and name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose from {BACKENDS}")
    _override = name


def get_backend() -> str:
    if _override is not None:
        name = _override
    else:
        name = os.environ.get(ENV_VAR, "").strip().lower() or ("numba" if HAVE_NUMBA else "numpy")
    if name not in BACKENDS:
        raise ValueError(f"{ENV_VAR}={name!r} is not one of {BACKENDS}")
    if name == "numba" and not HAVE_NUMBA:
        return "numpy"
    return name


def encode_images(images, q: int) -> int:
    """Base-q integer key of an image table (images[x] is digit x)."""
    code = 0
    for v in reversed(list(images)):
        code = code * q + int(v)
    return code


# -- S_q enumeration ------------------------------------------------------

@lru_cache(maxsize=16)
def lex_permutations(k: int) -> np.ndarray:
    """All permutations of range(k) as rows, in lexicographic order."""
    P = np.zeros((1, 0), dtype=np.int64)
    for size in range(1, k + 1):
        blocks = []
        for f in range(size):
            head = np.full((len(P), 1), f, dtype=np.int64)
            blocks.append(np.hstack([head, P + (P >= f)]))
        P = np.vstack(blocks)
    P.setflags(write=False)
    return P


def shard_permutations(q: int, first: int) -> np.ndarray:
    """Permutations h of range(q) with h[0] == first, lexicographic."""
    rest = np.array([v for v in range(q) if v != first], dtype=np.int64)
    tail = rest[lex_permutations(q - 1)]
    return np.hstack([np.full((len(tail), 1), first, dtype=np.int64), tail])


# -- conjugation scan -----------------------------------------------------
# Counts h in the shard {h : h(0) = first} such that for every generator g_k
# the image table of h g_k h^-1 encodes to a key listed in allowed[k, :allowed_len[k]]
# (rows sorted ascending).

@njit(cache=True)
def _scan_shard_numba(gens, allowed, allowed_len, first):
    m, q = gens.shape
    h = np.empty(q, np.int64)
    h[0] = first
    k = 1
    for v in range(q):
        if v != first:
            h[k] = v
            k += 1
    conj = np.empty(q, np.int64)
    count = 0
    while True:
        ok = True
        for g in range(m):
            for x in range(q):
                conj[h[x]] = h[gens[g, x]]
            code = 0
            for x in range(q - 1, -1, -1):
                code = code * q + conj[x]
            lo = 0
            hi = allowed_len[g]
            while lo < hi:
                mid = (lo + hi) // 2
                if allowed[g, mid] < code:
                    lo = mid + 1
                else:
                    hi = mid
            if lo == allowed_len[g] or allowed[g, lo] != code:
                ok = False
                break
        if ok:
            count += 1
        # next permutation of h[1:]
        i = q - 2
        while i >= 1 and h[i] >= h[i + 1]:
            i -= 1
        if i < 1:
            break
        j = q - 1
        while h[j] <= h[i]:
            j -= 1
        tmp = h[i]
        h[i] = h[j]
        h[j] = tmp
        lo = i + 1
        hi = q - 1
        while lo < hi:
            tmp = h[lo]
            h[lo] = h[hi]
            h[hi] = tmp
            lo += 1
            hi -= 1
    return count


def _scan_shard_numpy(gens, allowed, allowed_len, first):
    m, q = gens.shape
    P = shard_permutations(q, first)
    rows = np.arange(len(P))[:, None]
    weights = q ** np.arange(q, dtype=np.int64)
    ok = np.ones(len(P), dtype=bool)
    conj = np.empty_like(P)
    for g in range(m):
        conj[rows, P] = P[:, gens[g]]
        ok &= np.isin(conj @ weights, allowed[g, : allowed_len[g]])
    return int(ok.sum())


def scan_shard(gens, allowed, allowed_len, first: int) -> int:
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    allowed = np.ascontiguousarray(allowed, dtype=np.int64)
    allowed_len = np.ascontiguousarray(allowed_len, dtype=np.int64)
    if get_backend() == "numba":
        return int(_scan_shard_numba(gens, allowed, allowed_len, int(first)))
    return _scan_shard_numpy(gens, allowed, allowed_len, int(first))


# -- orthogonal mate backtracking ----------------------------------------
# Cells are filled row-major, symbols tried in increasing order, so the first
# completed grid is the lexicographically least mate.

@njit(cache=True)
def _mate_numba(square, budget):
    q = square.shape[0]
    ncell = q * q
    mate = np.full((q, q), -1, np.int64)
    row_used = np.zeros((q, q), np.bool_)
    col_used = np.zeros((q, q), np.bool_)
    pair_used = np.zeros((q, q), np.bool_)
    nxt = np.zeros(ncell + 1, np.int64)
    pos = 0
    steps = 0
    while True:
        if pos == ncell:
            return MATE_FOUND, mate, steps
        x = pos // q
        y = pos % q
        s = square[x, y]
        sym = nxt[pos]
        placed = False
        while sym < q:
            if not row_used[x, sym] and not col_used[y, sym] and not pair_used[s, sym]:
                steps += 1
                if steps > budget:
                    return MATE_BUDGET, mate, steps
                mate[x, y] = sym
                row_used[x, sym] = True
                col_used[y, sym] = True
                pair_used[s, sym] = True
                nxt[pos] = sym + 1
                pos += 1
                nxt[pos] = 0
                placed = True
                break
            sym += 1
        if not placed:
            nxt[pos] = 0
            pos -= 1
            if pos < 0:
                return MATE_EXHAUSTED, mate, steps
            x = pos // q
            y = pos % q
            sym = mate[x, y]
            mate[x, y] = -1
            row_used[x, sym] = False
            col_used[y, sym] = False
            pair_used[square[x, y], sym] = False


def _mate_python(square, budget):
    q = len(square)
    sq = [list(map(int, row)) for row in square]
    ncell = q * q
    mate = [[-1] * q for _ in range(q)]
    row_used = [[False] * q for _ in range(q)]
    col_used = [[False] * q for _ in range(q)]
    pair_used = [[False] * q for _ in range(q)]
    nxt = [0] * (ncell + 1)
    pos = 0
    steps = 0
    while True:
        if pos == ncell:
            return MATE_FOUND, np.array(mate, dtype=np.int64), steps
        x, y = divmod(pos, q)
        ru, cu, pu = row_used[x], col_used[y], pair_used[sq[x][y]]
        sym = nxt[pos]
        while sym < q and (ru[sym] or cu[sym] or pu[sym]):
            sym += 1
        if sym < q:
            steps += 1
            if steps > budget:
                return MATE_BUDGET, np.array(mate, dtype=np.int64), steps
            mate[x][y] = sym
            ru[sym] = cu[sym] = pu[sym] = True
            nxt[pos] = sym + 1
            pos += 1
            nxt[pos] = 0
        else:
            nxt[pos] = 0
            pos -= 1
            if pos < 0:
                return MATE_EXHAUSTED, np.array(mate, dtype=np.int64), steps
            x, y = divmod(pos, q)
            sym = mate[x][y]
            mate[x][y] = -1
            row_used[x][sym] = col_used[y][sym] = pair_used[sq[x][y]][sym] = False


def mate_backtrack(square, budget: int):
    """Return ``(status, grid, steps)`` with status one of MATE_FOUND/EXHAUSTED/BUDGET."""
    square = np.ascontiguousarray(square, dtype=np.int64)
    if get_backend() == "numba":
        status, mate, steps = _mate_numba(square, int(budget))
        return int(status), mate, int(steps)
    return _mate_python(square, int(budget))
