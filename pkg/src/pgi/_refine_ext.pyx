# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled equitable refinement; see _refine_py for the contract."""

from libc.stdlib cimport malloc, free, qsort
from libc.string cimport memset

cdef unsigned long long _MASK = (1ULL << 61) - 1

cdef inline unsigned long long _mix(unsigned long long h, long long x):
    return (h * 1000003ULL + <unsigned long long>x + 0x9E3779B1ULL) & _MASK

# qsort comparator context: counts are looked up through a module-level pointer
cdef int *_sort_cnt = NULL

cdef int _cmp_by_cnt(const void *a, const void *b) noexcept nogil:
    cdef int va = (<int *>a)[0]
    cdef int vb = (<int *>b)[0]
    cdef int ca = _sort_cnt[va]
    cdef int cb = _sort_cnt[vb]
    if ca != cb:
        return -1 if ca < cb else 1
    return -1 if va < vb else (1 if va > vb else 0)

cdef int _cmp_int(const void *a, const void *b) noexcept nogil:
    cdef int x = (<int *>a)[0]
    cdef int y = (<int *>b)[0]
    return -1 if x < y else (1 if x > y else 0)


def refine(int[::1] offsets, int[::1] nbrs, int[::1] lab, int[::1] pos,
           int[::1] cell, int[::1] size, splitters):
    global _sort_cnt
    cdef int n = lab.shape[0]
    if n == 0:
        return 0, 0
    cdef int *cnt = <int *>malloc(n * sizeof(int))
    cdef char *in_queue = <char *>malloc(n)
    cdef char *cell_mark = <char *>malloc(n)
    cdef int *queue = <int *>malloc(n * sizeof(int))
    cdef int *touched = <int *>malloc(n * sizeof(int))
    cdef int *cells = <int *>malloc(n * sizeof(int))
    cdef int *fstart = <int *>malloc(n * sizeof(int))
    cdef int *fsize = <int *>malloc(n * sizeof(int))
    cdef int qhead = 0, qtail = 0, qlen = 0
    cdef int ncells = 0, i, j, v, u, w, c, k, nt, nc, nf, first, skip, best, s
    cdef bint was_queued, uniform
    cdef unsigned long long trace = 0
    if (cnt == NULL or in_queue == NULL or cell_mark == NULL or queue == NULL
            or touched == NULL or cells == NULL or fstart == NULL or fsize == NULL):
        free(cnt); free(in_queue); free(cell_mark); free(queue)
        free(touched); free(cells); free(fstart); free(fsize)
        raise MemoryError()
    try:
        memset(cnt, 0, n * sizeof(int))
        memset(in_queue, 0, n)
        memset(cell_mark, 0, n)
        for s in splitters:
            if not in_queue[s]:
                in_queue[s] = 1
                queue[qtail] = s
                qtail = (qtail + 1) % n
                qlen += 1
        for i in range(n):
            if cell[lab[i]] == i:
                ncells += 1
        while qlen > 0 and ncells < n:
            w = queue[qhead]
            qhead = (qhead + 1) % n
            qlen -= 1
            in_queue[w] = 0
            nt = 0
            for i in range(w, w + size[w]):
                v = lab[i]
                for j in range(offsets[v], offsets[v + 1]):
                    u = nbrs[j]
                    if cnt[u] == 0:
                        touched[nt] = u
                        nt += 1
                    cnt[u] += 1
            nc = 0
            for i in range(nt):
                c = cell[touched[i]]
                if not cell_mark[c]:
                    cell_mark[c] = 1
                    cells[nc] = c
                    nc += 1
            qsort(cells, nc, sizeof(int), _cmp_int)
            trace = _mix(trace, w)
            for i in range(nc):
                c = cells[i]
                cell_mark[c] = 0
                k = size[c]
                if k == 1:
                    continue
                first = cnt[lab[c]]
                uniform = True
                for j in range(c + 1, c + k):
                    if cnt[lab[j]] != first:
                        uniform = False
                        break
                if uniform:
                    trace = _mix(trace, first)
                    continue
                _sort_cnt = cnt
                qsort(&lab[c], k, sizeof(int), _cmp_by_cnt)
                was_queued = in_queue[c]
                nf = 0
                fstart[0] = c
                for j in range(c, c + k):
                    v = lab[j]
                    pos[v] = j
                    if j > c and cnt[v] != cnt[lab[j - 1]]:
                        fsize[nf] = j - fstart[nf]
                        nf += 1
                        fstart[nf] = j
                fsize[nf] = c + k - fstart[nf]
                nf += 1
                best = 0
                for j in range(nf):
                    size[fstart[j]] = fsize[j]
                    for s in range(fstart[j], fstart[j] + fsize[j]):
                        cell[lab[s]] = fstart[j]
                    trace = _mix(_mix(trace, fsize[j]), cnt[lab[fstart[j]]])
                    if fsize[j] > fsize[best]:
                        best = j
                ncells += nf - 1
                skip = c if was_queued else fstart[best]
                for j in range(nf):
                    if fstart[j] != skip and not in_queue[fstart[j]]:
                        in_queue[fstart[j]] = 1
                        queue[qtail] = fstart[j]
                        qtail = (qtail + 1) % n
                        qlen += 1
            for i in range(nt):
                cnt[touched[i]] = 0
    finally:
        free(cnt); free(in_queue); free(cell_mark); free(queue)
        free(touched); free(cells); free(fstart); free(fsize)
    return ncells, int(trace)
