"""Pure-Python equitable refinement of an ordered partition.

Same contract as the compiled ``_refine_ext.refine``; used when the extension
is not built or PGI_PURE_PYTHON is set.

Partition layout (all int32 numpy arrays of length V, modified in place):
``lab`` lists vertices cell by cell, ``pos`` is its inverse, ``cell[v]`` is the
start index of v's cell in ``lab`` and ``size[s]`` the size of the cell that
starts at ``s`` (meaningless elsewhere).
"""

_MASK = (1 << 61) - 1


def _mix(h, x):
    return (h * 1000003 + x + 0x9E3779B1) & _MASK


def refine(offsets, nbrs, lab, pos, cell, size, splitters):
    """Refine until equitable; ``splitters`` are cell starts to process first.

    Returns ``(cell_count, trace)`` where the trace hashes the split sequence
    and is invariant under relabeling of the input.
    """
    off = offsets.tolist()
    adj = nbrs.tolist()
    L = lab.tolist()
    P = pos.tolist()
    C = cell.tolist()
    S = size.tolist()
    n = len(L)
    cnt = [0] * n
    in_queue = [False] * n
    queue = []
    for s in splitters:
        if not in_queue[s]:
            in_queue[s] = True
            queue.append(s)
    ncells = sum(1 for i in range(n) if C[L[i]] == i)
    trace = 0
    head = 0
    while head < len(queue) and ncells < n:
        w = queue[head]
        head += 1
        in_queue[w] = False
        touched = []
        for i in range(w, w + S[w]):
            v = L[i]
            for j in range(off[v], off[v + 1]):
                u = adj[j]
                if cnt[u] == 0:
                    touched.append(u)
                cnt[u] += 1
        cells = sorted({C[u] for u in touched})
        trace = _mix(trace, w)
        for c in cells:
            k = S[c]
            if k == 1:
                continue
            members = L[c:c + k]
            first = cnt[members[0]]
            if all(cnt[v] == first for v in members):
                trace = _mix(trace, first)
                continue
            members.sort(key=lambda v: (cnt[v], v))
            was_queued = in_queue[c]
            frags = []
            start = c
            for idx, v in enumerate(members):
                if idx and cnt[v] != cnt[members[idx - 1]]:
                    frags.append((start, c + idx - start))
                    start = c + idx
            frags.append((start, c + k - start))
            for idx, v in enumerate(members):
                L[c + idx] = v
                P[v] = c + idx
            for fs, fk in frags:
                S[fs] = fk
                for i in range(fs, fs + fk):
                    C[L[i]] = fs
                trace = _mix(_mix(trace, fk), cnt[L[fs]])
            ncells += len(frags) - 1
            if was_queued:
                skip = c
            else:
                skip = max(frags, key=lambda f: f[1])[0]
            for fs, _ in frags:
                if fs != skip and not in_queue[fs]:
                    in_queue[fs] = True
                    queue.append(fs)
        for u in touched:
            cnt[u] = 0
    lab[:] = L
    pos[:] = P
    cell[:] = C
    size[:] = S
    return ncells, trace
