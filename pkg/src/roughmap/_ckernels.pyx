# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: a word-at-a-time port of `roughmap._kernels_py`.

Same names, same argument and result types, same semantics.  Masks live
in unsigned 64-bit words, so this backend only handles universes of at
most 64 elements; `roughmap.kernels.select` enforces that cap.
"""

cdef extern from *:
    """
    #if defined(_MSC_VER)
    #  include <intrin.h>
    #  define POPCOUNT64(x) ((int)__popcnt64(x))
    #else
    #  define POPCOUNT64(x) __builtin_popcountll(x)
    #endif
    """
    int POPCOUNT64(unsigned long long x) nogil

ctypedef unsigned long long u64

BACKEND_NAME = "c"

REFLEXIVE = 1
SYMMETRIC = 2
TRANSITIVE = 4
EQUIVALENCE = 7

DEF CAP = 64

cdef int _load(object seq, u64 *out) except -1:
    # unpack a tuple of masks/ids into a C array, returning its length
    cdef int n = len(seq)
    if n > CAP:
        raise OverflowError("compiled kernels cap universes at 64 elements")
    cdef int i
    for i in range(n):
        out[i] = <u64> seq[i]
    return n

cdef object _dump(u64 *arr, int n):
    cdef int i
    return tuple(<object> arr[i] for i in range(n))


def fiber_masks(table, m):
    """Preimage mask of every codomain element, as a length-m tuple."""
    cdef u64 t[CAP]
    cdef u64 fibers[CAP]
    cdef int n = _load(table, t)
    cdef int mm = m
    cdef int i
    for i in range(mm):
        fibers[i] = 0
    for i in range(n):
        fibers[<int> t[i]] |= (<u64> 1) << i
    return _dump(fibers, mm)


def block_masks(rgs):
    """Mask of every block of a partition, indexed by block id."""
    cdef u64 r[CAP]
    cdef u64 blocks[CAP]
    cdef int n = _load(rgs, r)
    cdef int nblocks = 0
    cdef int i, b
    for i in range(n):
        b = <int> r[i]
        if b >= nblocks:
            nblocks = b + 1
    for i in range(nblocks):
        blocks[i] = 0
    for i in range(n):
        blocks[<int> r[i]] |= (<u64> 1) << i
    return _dump(blocks, nblocks)


def partition_rows(rgs):
    """The equivalence relation of a partition: rows[i] is the block of i."""
    cdef u64 r[CAP]
    cdef u64 blocks[CAP]
    cdef u64 rows[CAP]
    cdef int n = _load(rgs, r)
    cdef int i
    for i in range(n):
        blocks[i] = 0
    for i in range(n):
        blocks[<int> r[i]] |= (<u64> 1) << i
    for i in range(n):
        rows[i] = blocks[<int> r[i]]
    return _dump(rows, n)


def rows_to_rgs(rows):
    """Canonical rgs of an equivalence relation given as rows."""
    cdef u64 rr[CAP]
    cdef u64 rgs[CAP]
    cdef int n = _load(rows, rr)
    cdef int i, j, nxt = 0
    cdef u64 row
    for i in range(n):
        rgs[i] = CAP  # sentinel: unassigned
    for i in range(n):
        if rgs[i] == CAP:
            row = rr[i]
            j = 0
            while row:
                if row & 1:
                    rgs[j] = nxt
                row >>= 1
                j += 1
            nxt += 1
    return _dump(rgs, n)


def classify_rows(rows):
    """Reflexive/symmetric/transitive flags of a relation, as an int."""
    cdef u64 rr[CAP]
    cdef int m = _load(rows, rr)
    cdef int flags = 7
    cdef int i, j
    cdef u64 ri, row
    for i in range(m):
        if not (rr[i] >> i) & 1:
            flags &= ~1
            break
    for i in range(m):
        ri = rr[i]
        for j in range(i + 1, m):
            if ((ri >> j) & 1) != ((rr[j] >> i) & 1):
                flags &= ~2
                break
        if not flags & 2:
            break
    for i in range(m):
        ri = rr[i]
        row = ri
        j = 0
        while row:
            if (row & 1) and rr[j] & ~ri:
                flags &= ~4
                break
            row >>= 1
            j += 1
        if not flags & 4:
            break
    return flags


def closure_rows(rows):
    """Transitive closure (Warshall over bit rows)."""
    cdef u64 out[CAP]
    cdef int m = _load(rows, out)
    cdef int i, k
    cdef u64 rk, bit
    for k in range(m):
        rk = out[k]
        bit = (<u64> 1) << k
        for i in range(m):
            if out[i] & bit:
                out[i] |= rk
    return _dump(out, m)


def relmap_rows(rgs, table, fibers):
    """Image relation on V of the partition `rgs` under the map `table`.

    Same inclusion rule as the reference: x and y share a block and
    |fiber(x) & block| * |fiber(y)| == |fiber(y) & block| * |fiber(x)|.
    Counts stay below 2**7, so the products fit comfortably in 64 bits.
    """
    cdef u64 r[CAP]
    cdef u64 t[CAP]
    cdef u64 fb[CAP]
    cdef u64 blocks[CAP]
    cdef u64 rows[CAP]
    cdef long long num[CAP]
    cdef long long den[CAP]
    cdef int n = _load(rgs, r)
    cdef int m = _load(fibers, fb)
    cdef int i, x, y, rx, vx
    cdef long long nx, dx
    cdef u64 f
    _load(table, t)
    for i in range(n):
        blocks[i] = 0
    for i in range(n):
        blocks[<int> r[i]] |= (<u64> 1) << i
    for x in range(n):
        f = fb[<int> t[x]]
        num[x] = POPCOUNT64(blocks[<int> r[x]] & f)
        den[x] = POPCOUNT64(f)
    for i in range(m):
        rows[i] = 0
    for x in range(n):
        rx = <int> r[x]
        nx = num[x]
        dx = den[x]
        vx = <int> t[x]
        for y in range(n):
            if <int> r[y] == rx and nx * den[y] == num[y] * dx:
                rows[vx] |= (<u64> 1) << (<int> t[y])
    return _dump(rows, m)


def relmap_classified(rgs, table, fibers):
    """relmap_rows plus classify_rows in one call."""
    rows = relmap_rows(rgs, table, fibers)
    return rows, classify_rows(rows)


def degree_pairs(rgs, table, fibers):
    """Per-element degree of its block within its fiber, as (num, den) pairs."""
    cdef u64 r[CAP]
    cdef u64 t[CAP]
    cdef u64 fb[CAP]
    cdef u64 blocks[CAP]
    cdef int n = _load(rgs, r)
    cdef int i, x
    cdef u64 f
    _load(table, t)
    _load(fibers, fb)
    for i in range(n):
        blocks[i] = 0
    for i in range(n):
        blocks[<int> r[i]] |= (<u64> 1) << i
    out = []
    for x in range(n):
        f = fb[<int> t[x]]
        out.append((POPCOUNT64(blocks[<int> r[x]] & f), POPCOUNT64(f)))
    return tuple(out)


def meet_rgs(rgs1, rgs2):
    """Common refinement: blocks are the nonempty pairwise intersections."""
    cdef u64 a[CAP]
    cdef u64 b[CAP]
    cdef u64 out[CAP]
    cdef int seen[CAP * CAP]
    cdef int n = _load(rgs1, a)
    cdef int i, key, nxt = 0
    _load(rgs2, b)
    for i in range(n * CAP):
        seen[i] = -1
    for i in range(n):
        key = (<int> a[i]) * CAP + (<int> b[i])
        if seen[key] < 0:
            seen[key] = nxt
            nxt += 1
        out[i] = seen[key]
    return _dump(out, n)


cdef int _find(int *parent, int i) nogil:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def join_rgs(rgs1, rgs2):
    """Finest common coarsening: union-find over both block structures."""
    cdef u64 a[CAP]
    cdef u64 b[CAP]
    cdef u64 out[CAP]
    cdef int parent[CAP]
    cdef int first1[CAP]
    cdef int first2[CAP]
    cdef int seen[CAP]
    cdef int n = _load(rgs1, a)
    cdef int i, ra, rb, r, nxt = 0
    _load(rgs2, b)
    for i in range(n):
        parent[i] = i
        first1[i] = -1
        first2[i] = -1
        seen[i] = -1
    for i in range(n):
        if first1[<int> a[i]] < 0:
            first1[<int> a[i]] = i
        else:
            ra = _find(parent, first1[<int> a[i]])
            rb = _find(parent, i)
            if ra != rb:
                parent[rb] = ra
        if first2[<int> b[i]] < 0:
            first2[<int> b[i]] = i
        else:
            ra = _find(parent, first2[<int> b[i]])
            rb = _find(parent, i)
            if ra != rb:
                parent[rb] = ra
    for i in range(n):
        r = _find(parent, i)
        if seen[r] < 0:
            seen[r] = nxt
            nxt += 1
        out[i] = seen[r]
    return _dump(out, n)


def refines_rgs(rgs1, rgs2):
    """True when every block of rgs1 sits inside one block of rgs2."""
    cdef u64 a[CAP]
    cdef u64 b[CAP]
    cdef int image[CAP]
    cdef int n = _load(rgs1, a)
    cdef int i
    _load(rgs2, b)
    for i in range(n):
        image[i] = -1
    for i in range(n):
        if image[<int> a[i]] < 0:
            image[<int> a[i]] = <int> b[i]
        elif image[<int> a[i]] != <int> b[i]:
            return False
    return True


def fiber_condition(rgs, table, fibers):
    """True when every fiber is contained in its element's block."""
    cdef u64 r[CAP]
    cdef u64 t[CAP]
    cdef u64 fb[CAP]
    cdef u64 blocks[CAP]
    cdef int n = _load(rgs, r)
    cdef int i, x
    _load(table, t)
    _load(fibers, fb)
    for i in range(n):
        blocks[i] = 0
    for i in range(n):
        blocks[<int> r[i]] |= (<u64> 1) << i
    for x in range(n):
        if fb[<int> t[x]] & ~blocks[<int> r[x]]:
            return False
    return True


def lower_upper_masks(blocks, xmask):
    """Lower and upper approximations of a subset over explicit block masks."""
    cdef u64 bl[CAP]
    cdef int nb = _load(blocks, bl)
    cdef u64 x = <u64> xmask
    cdef u64 lo = 0, up = 0
    cdef int i
    for i in range(nb):
        if not (bl[i] & ~x):
            lo |= bl[i]
        if bl[i] & x:
            up |= bl[i]
    return (<object> lo, <object> up)


def lower_upper_rows(rows, xmask):
    """Approximations over an equivalence given as rows (blocks = distinct rows)."""
    cdef u64 rr[CAP]
    cdef int n = _load(rows, rr)
    cdef u64 x = <u64> xmask
    cdef u64 lo = 0, up = 0, done = 0, b
    cdef int i
    for i in range(n):
        if (done >> i) & 1:
            continue
        b = rr[i]
        done |= b
        if not (b & ~x):
            lo |= b
        if b & x:
            up |= b
    return (<object> lo, <object> up)


def image_mask(table, xmask):
    """Forward image of a subset mask under a map table."""
    cdef u64 t[CAP]
    cdef u64 x = <u64> xmask
    cdef u64 out = 0
    cdef int i = 0
    _load(table, t)
    while x:
        if x & 1:
            out |= (<u64> 1) << (<int> t[i])
        x >>= 1
        i += 1
    return <object> out


def rows_subset(r1, r2):
    """Pairwise inclusion of two relations over the same universe."""
    cdef u64 a[CAP]
    cdef u64 b[CAP]
    cdef int n = _load(r1, a)
    cdef int i
    _load(r2, b)
    for i in range(n):
        if a[i] & ~b[i]:
            return False
    return True


def rows_or(r1, r2):
    cdef u64 a[CAP]
    cdef u64 b[CAP]
    cdef u64 out[CAP]
    cdef int n = _load(r1, a)
    cdef int i
    _load(r2, b)
    for i in range(n):
        out[i] = a[i] | b[i]
    return _dump(out, n)


def rows_and(r1, r2):
    cdef u64 a[CAP]
    cdef u64 b[CAP]
    cdef u64 out[CAP]
    cdef int n = _load(r1, a)
    cdef int i
    _load(r2, b)
    for i in range(n):
        out[i] = a[i] & b[i]
    return _dump(out, n)


def rows_diff(r1, r2):
    cdef u64 a[CAP]
    cdef u64 b[CAP]
    cdef u64 out[CAP]
    cdef int n = _load(r1, a)
    cdef int i
    _load(r2, b)
    for i in range(n):
        out[i] = a[i] & ~b[i]
    return _dump(out, n)


def rows_pair_count(rows):
    """Number of ordered pairs in a relation."""
    cdef u64 rr[CAP]
    cdef int n = _load(rows, rr)
    cdef int i
    cdef long long total = 0
    for i in range(n):
        total += POPCOUNT64(rr[i])
    return total
