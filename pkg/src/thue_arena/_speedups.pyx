# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True

"""Compiled exhaustive search kernel.

Behavioural twin of ``thue_arena._search_py.search``; see that module for
the full contract.  The only divergence is a hard depth cap imposed by the
fixed-size C buffers; the node budget in the arena layer rejects such
depths long before either kernel would accept them.
"""

KERNEL_NAME = "c"

VIOLATION_SQUARE = "square"
VIOLATION_DOUBLE_2D = "double-2d"
VIOLATION_TRACK_MATCH = "track-match"
VIOLATION_PERIOD3 = "period3-square"

cdef enum:
    MAX_DEPTH = 28

ctypedef struct Ctx:
    int depth
    int min_period
    int explicit_p3
    int prefix_len
    int word_len
    int ben_len
    unsigned long long nodes
    int vio_kind          # -1 none, 0..3 violation kinds, 9 internal error
    int vio_start
    int vio_period
    int vio_position
    int vio_ben_len
    int err_fav
    int err_prev
    int err_move
    int word[2 * MAX_DEPTH + 2]
    unsigned char ben_moves[MAX_DEPTH + 1]
    unsigned char prefix[MAX_DEPTH + 1]
    unsigned char tau[MAX_DEPTH + 4]

cdef int _TRACK[7]
cdef int _TABLE[3][3][3]


cdef void _fill_tables() noexcept:
    cdef int i, fav, prev, move, v
    for i in range(7):
        _TRACK[i] = 0 if i < 3 else (1 if i < 6 else 2)
    for fav in range(3):
        for prev in range(3):
            for move in range(3):
                if fav == 2:
                    if move == 0:
                        v = 1
                    elif move == 1:
                        v = 0
                    else:
                        v = (1 - prev) if (prev == 0 or prev == 1) else -1
                elif move == fav:
                    v = (3 - prev - move) if prev != fav else -1
                else:
                    v = fav
                _TABLE[fav][prev][move] = v


_fill_tables()


cdef int _check_append(Ctx* c) noexcept nogil:
    """Scan squares ending at the last position; record and return 1 on a hit."""
    cdef int n = c.word_len
    cdef int p, lo, mid, k
    for p in range(c.min_period, n // 2 + 1):
        lo = n - 2 * p
        mid = n - p
        k = 0
        while k < p and c.word[lo + k] == c.word[mid + k]:
            k += 1
        if k == p:
            c.vio_kind = 0
            c.vio_start = lo
            c.vio_period = p
            c.vio_position = n - 1
            c.vio_ben_len = c.ben_len
            return 1
    if c.explicit_p3 and n >= 6:
        lo = n - 6
        if (c.word[lo] == c.word[lo + 3]
                and c.word[lo + 1] == c.word[lo + 4]
                and c.word[lo + 2] == c.word[lo + 5]):
            c.vio_kind = 3
            c.vio_start = lo
            c.vio_period = 3
            c.vio_position = n - 1
            c.vio_ben_len = c.ben_len
            return 1
    return 0


cdef int _dfs(Ctx* c, int level, int fav, int count, int prev_track, int ann_was_2d) noexcept nogil:
    """Depth-first walk; returns 1 as soon as anything is recorded in the ctx."""
    cdef int ben, ben_track, new_fav, ann, new_count, first, last
    if level == c.depth:
        c.nodes += 1
        return 0
    if level < c.prefix_len:
        first = c.prefix[level]
        last = first + 1
    else:
        first = 0
        last = 7
    for ben in range(first, last):
        ben_track = _TRACK[ben]
        c.word[c.word_len] = ben
        c.word_len += 1
        c.ben_moves[c.ben_len] = <unsigned char> ben
        c.ben_len += 1
        if _check_append(c):
            return 1
        if level == 0:
            new_fav = 1 if ben_track == 0 else 0
        else:
            new_fav = _TABLE[fav][prev_track][ben_track]
            if new_fav < 0:
                c.vio_kind = 9
                c.err_fav = fav
                c.err_prev = prev_track
                c.err_move = ben_track
                return 1
        if new_fav == 2:
            ann = 6
            new_count = count
        else:
            ann = new_fav * 3 + c.tau[count - 1]
            new_count = count + 1
        c.word[c.word_len] = ann
        c.word_len += 1
        if _check_append(c):
            return 1
        if ann == 6 and ann_was_2d:
            c.vio_kind = 1
            c.vio_start = -1
            c.vio_period = -1
            c.vio_position = c.word_len - 1
            c.vio_ben_len = c.ben_len
            return 1
        if _TRACK[ann] == ben_track:
            c.vio_kind = 2
            c.vio_start = -1
            c.vio_period = -1
            c.vio_position = c.word_len - 1
            c.vio_ben_len = c.ben_len
            return 1
        if _dfs(c, level + 1, new_fav, new_count, ben_track, 1 if ann == 6 else 0):
            return 1
        c.word_len -= 2
        c.ben_len -= 1
    return 0


_KIND_NAMES = {
    0: VIOLATION_SQUARE,
    1: VIOLATION_DOUBLE_2D,
    2: VIOLATION_TRACK_MATCH,
    3: VIOLATION_PERIOD3,
}


def search(ann_starts, depth, min_period, prefix, tau_codes):
    """Search the subtree where Ben's first moves follow ``prefix``.

    Same contract and return shape as thue_arena._search_py.search.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if min_period < 1:
        raise ValueError(f"min_period must be >= 1, got {min_period}")
    if len(prefix) > depth:
        raise ValueError("prefix longer than depth")
    if len(tau_codes) < depth + 2:
        raise ValueError("tau prefix too short for this depth")
    if depth > MAX_DEPTH:
        raise ValueError(f"depth {depth} exceeds compiled kernel limit {MAX_DEPTH}")

    cdef Ctx c
    cdef int i
    cdef bytes prefix_b = bytes(prefix)
    cdef bytes tau_b = bytes(tau_codes)

    c.depth = depth
    c.min_period = min_period
    c.explicit_p3 = 1 if min_period > 3 else 0
    c.prefix_len = len(prefix_b)
    c.word_len = 0
    c.ben_len = 0
    c.nodes = 0
    c.vio_kind = -1
    c.vio_start = -1
    c.vio_period = -1
    c.vio_position = -1
    c.vio_ben_len = 0
    c.err_fav = 0
    c.err_prev = 0
    c.err_move = 0

    for i in range(c.prefix_len):
        if prefix_b[i] > 6:
            raise ValueError(f"prefix byte out of range: {prefix_b[i]}")
        c.prefix[i] = prefix_b[i]
    for i in range(min(len(tau_b), depth + 4)):
        c.tau[i] = tau_b[i]

    cdef int start_count = 2 if ann_starts else 1
    cdef int hit
    if ann_starts:
        c.word[0] = 0
        c.word_len = 1
    with nogil:
        hit = _dfs(&c, 0, 0, start_count, -1, 0)

    if not hit:
        return c.nodes, None
    if c.vio_kind == 9:
        raise RuntimeError(
            f"unreachable strategy state: fav={c.err_fav} prev={c.err_prev} move={c.err_move}"
        )
    buf = bytearray()
    for i in range(c.vio_ben_len):
        buf.append(c.ben_moves[i])
    data = (_KIND_NAMES[c.vio_kind], bytes(buf), c.vio_start, c.vio_period, c.vio_position)
    return c.nodes, data
