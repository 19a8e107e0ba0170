"""Maximum-weight matching on general graphs (Galil's blossom algorithm).

Array-based primal-dual implementation following Galil, "Efficient
Algorithms for Finding Maximum Matching in Graphs", ACM Computing
Surveys 18(1), 1986, in the formulation popularized by Joris van
Rantwijk's reference code.  All state lives in flat numpy arrays so the
whole solver can be JIT-compiled with numba; without numba the same
code runs as plain Python (slow but identical results).

Vertices are 0..n-1.  Non-trivial blossoms occupy ids n..2n-1.  Edge p
endpoints are encoded as 2*k and 2*k+1 for edge k; ``endpoint[p]`` is
the vertex at endpoint p and ``p ^ 1`` is the opposite endpoint.

Dual convention: ``dualvar[v]`` holds 2*u(v), so edge slack
``dualvar[i] + dualvar[j] - 2*w`` is twice the true slack and stays
integral for integral weights (and dyadic for dyadic weights).
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


_FREE, _S, _T, _BREADCRUMB = 0, 1, 2, 5


@njit(cache=True)
def _slack(k, endpoint, weight, dualvar):
    # Valid only for edges between different top-level blossoms.
    return dualvar[endpoint[2 * k]] + dualvar[endpoint[2 * k + 1]] - 2.0 * weight[k]


@njit(cache=True)
def _push_leaves(b, out, outlen, n, childs, childslen, stack):
    """Append the leaf vertices of (sub-)blossom b to out; return new length."""
    slen = 0
    stack[slen] = b
    slen += 1
    while slen > 0:
        slen -= 1
        t = stack[slen]
        if t < n:
            out[outlen] = t
            outlen += 1
        else:
            row = t - n
            for c in range(childslen[row]):
                stack[slen] = childs[row, c]
                slen += 1
    return outlen


@njit(cache=True)
def _assign_label(w, t, p, n, endpoint, mate, label, labelend, inblossom,
                  blossombase, bestedge, childs, childslen, queue, qhead, scratch):
    """Label the top-level blossom containing w, through endpoint p (or -1)."""
    while True:
        b = inblossom[w]
        assert label[w] == _FREE and label[b] == _FREE
        label[w] = t
        label[b] = t
        labelend[w] = p
        labelend[b] = p
        bestedge[w] = -1
        bestedge[b] = -1
        if t == _S:
            # Blossom b became an S-blossom; scan its vertices.
            if b < n:
                queue[qhead[0]] = b
                qhead[0] += 1
            else:
                qhead[0] = _push_leaves(b, queue, qhead[0], n, childs,
                                        childslen, scratch)
            return
        # t == _T: the base's mate becomes an S-vertex (tail call).
        base = blossombase[b]
        w = endpoint[mate[base]]
        t = _S
        p = mate[base] ^ 1


@njit(cache=True)
def _scan_blossom(v, w, endpoint, label, labelend, inblossom, blossombase,
                  mate, path):
    """Trace back from v and w; return a new blossom's base vertex or -1."""
    plen = 0
    base = -1
    while v != -1:
        b = inblossom[v]
        if label[b] & 4:
            base = blossombase[b]
            break
        assert label[b] == _S
        path[plen] = b
        plen += 1
        label[b] = _BREADCRUMB
        if labelend[b] == -1:
            # Base of blossom b is single; stop tracing this path.
            assert mate[blossombase[b]] == -1
            v = -1
        else:
            assert endpoint[labelend[b]] == endpoint[mate[blossombase[b]]]
            v = endpoint[labelend[b]]
            b = inblossom[v]
            assert label[b] == _T
            # b is a T-blossom; trace one more step back.
            assert labelend[b] >= 0
            v = endpoint[labelend[b]]
        if w != -1:
            v, w = w, v
    for i in range(plen):
        label[path[i]] = _S
    return base


@njit(cache=True)
def _add_blossom(base, k, v, w, n, endpoint, weight, adj_start, adj_list,
                 mate, label, labelend, inblossom, blossomparent, blossombase,
                 childs, childslen, endps, bestedge, bestlist, bestlistlen,
                 hasbest, dualvar, blossomdual, queue, qhead, ustack, ulen,
                 tmp_childs, tmp_endps, bestto, touched, scratch, leafbuf):
    """Shrink the S...S path through edge k=(v,w) into a new S-blossom."""
    bb = inblossom[base]
    bv = inblossom[v]
    bw = inblossom[w]
    ulen[0] -= 1
    b = ustack[ulen[0]]
    row = b - n
    blossombase[b] = base
    blossomparent[b] = -1
    blossomparent[bb] = b
    # Walk back from v to base, then (reversed) from w to base.
    tc = 0
    te = 0
    tmp_endps[te] = 2 * k if endpoint[2 * k] == v else 2 * k + 1
    te += 1
    while bv != bb:
        blossomparent[bv] = b
        tmp_childs[tc] = bv
        tc += 1
        tmp_endps[te] = labelend[bv]
        te += 1
        assert label[bv] == _T or (label[bv] == _S and
                                   labelend[bv] == mate[blossombase[bv]])
        assert labelend[bv] >= 0
        v = endpoint[labelend[bv]]
        bv = inblossom[v]
    tmp_childs[tc] = bb
    tc += 1
    for i in range(tc // 2):
        tmp_childs[i], tmp_childs[tc - 1 - i] = tmp_childs[tc - 1 - i], tmp_childs[i]
    for i in range(te // 2):
        tmp_endps[i], tmp_endps[te - 1 - i] = tmp_endps[te - 1 - i], tmp_endps[i]
    while bw != bb:
        blossomparent[bw] = b
        tmp_childs[tc] = bw
        tc += 1
        tmp_endps[te] = labelend[bw] ^ 1
        te += 1
        assert label[bw] == _T or (label[bw] == _S and
                                   labelend[bw] == mate[blossombase[bw]])
        assert labelend[bw] >= 0
        w = endpoint[labelend[bw]]
        bw = inblossom[w]
    assert tc == te
    childslen[row] = tc
    for i in range(tc):
        childs[row, i] = tmp_childs[i]
        endps[row, i] = tmp_endps[i]
    assert label[bb] == _S
    label[b] = _S
    labelend[b] = labelend[bb]
    blossomdual[row] = 0.0
    # Relabel the blossom's vertices; former T-vertices join the queue.
    nl = _push_leaves(b, leafbuf, 0, n, childs, childslen, scratch)
    for i in range(nl):
        u = leafbuf[i]
        if label[inblossom[u]] == _T:
            queue[qhead[0]] = u
            qhead[0] += 1
        inblossom[u] = b
    # Least-slack edges from b to every neighboring S-blossom (for delta3).
    ntouch = 0
    for ci in range(tc):
        cb = tmp_childs[ci]
        if cb >= n and hasbest[cb]:
            crow = cb - n
            for li in range(bestlistlen[crow]):
                ek = bestlist[crow, li]
                i0 = endpoint[2 * ek]
                j0 = endpoint[2 * ek + 1]
                if inblossom[j0] == b:
                    j0 = i0
                bj = inblossom[j0]
                if bj != b and label[bj] == _S:
                    if bestto[bj] == -1:
                        touched[ntouch] = bj
                        ntouch += 1
                        bestto[bj] = ek
                    elif _slack(ek, endpoint, weight, dualvar) < _slack(
                            bestto[bj], endpoint, weight, dualvar):
                        bestto[bj] = ek
            hasbest[cb] = False
            bestlistlen[crow] = 0
        else:
            if cb < n:
                nl = 1
                leafbuf[0] = cb
            else:
                nl = _push_leaves(cb, leafbuf, 0, n, childs, childslen, scratch)
            for li in range(nl):
                u = leafbuf[li]
                for ai in range(adj_start[u], adj_start[u + 1]):
                    q = adj_list[ai]
                    ek = q >> 1
                    j0 = endpoint[q]
                    bj = inblossom[j0]
                    if bj != b and label[bj] == _S:
                        if bestto[bj] == -1:
                            touched[ntouch] = bj
                            ntouch += 1
                            bestto[bj] = ek
                        elif _slack(ek, endpoint, weight, dualvar) < _slack(
                                bestto[bj], endpoint, weight, dualvar):
                            bestto[bj] = ek
        bestedge[cb] = -1
    bestlistlen[row] = ntouch
    hasbest[b] = True
    mybest = -1
    mybestslack = 0.0
    for i in range(ntouch):
        ek = bestto[touched[i]]
        bestlist[row, i] = ek
        bestto[touched[i]] = -1
        ks = _slack(ek, endpoint, weight, dualvar)
        if mybest == -1 or ks < mybestslack:
            mybest = ek
            mybestslack = ks
    bestedge[b] = mybest


@njit(cache=True)
def _expand_blossom(b, endstage, n, endpoint, mate, label, labelend,
                    inblossom, blossomparent, blossombase, childs, childslen,
                    endps, bestedge, bestlistlen, hasbest, blossomdual,
                    allowedge, queue, qhead, ustack, ulen, scratch, leafbuf,
                    estack):
    """Dissolve top-level blossom b (and, at stage end, zero-dual children)."""
    eslen = 0
    estack[eslen] = b
    eslen += 1
    while eslen > 0:
        eslen -= 1
        b = estack[eslen]
        row = b - n
        ln = childslen[row]
        for ci in range(ln):
            s = childs[row, ci]
            blossomparent[s] = -1
            if s < n:
                inblossom[s] = s
            elif endstage and blossomdual[s - n] == 0.0:
                # Defer: expand this sub-blossom after b's bookkeeping.
                estack[eslen] = s
                eslen += 1
            else:
                nl = _push_leaves(s, leafbuf, 0, n, childs, childslen, scratch)
                for li in range(nl):
                    inblossom[leafbuf[li]] = s
        if (not endstage) and label[b] == _T:
            # Relabel sub-blossoms along the alternating path through b.
            assert labelend[b] >= 0
            entrychild = inblossom[endpoint[labelend[b] ^ 1]]
            j = 0
            for ci in range(ln):
                if childs[row, ci] == entrychild:
                    j = ci
                    break
            if j & 1:
                j -= ln
                jstep = 1
            else:
                jstep = -1
            le = labelend[b]
            v = endpoint[le]
            w = endpoint[le ^ 1]
            cur = le
            while j != 0:
                if jstep == 1:
                    e = endps[row, j % ln]
                    q = endpoint[e ^ 1]
                else:
                    e = endps[row, (j - 1) % ln]
                    q = endpoint[e]
                label[w] = _FREE
                label[q] = _FREE
                _assign_label(w, _T, cur, n, endpoint, mate, label, labelend,
                              inblossom, blossombase, bestedge, childs,
                              childslen, queue, qhead, scratch)
                allowedge[e >> 1] = True
                j += jstep
                if jstep == 1:
                    e2 = endps[row, j % ln]
                    v = endpoint[e2]
                    w = endpoint[e2 ^ 1]
                    cur = e2
                else:
                    e2 = endps[row, (j - 1) % ln]
                    w = endpoint[e2]
                    v = endpoint[e2 ^ 1]
                    cur = e2 ^ 1
                allowedge[e2 >> 1] = True
                j += jstep
            # Relabel the base sub-blossom without stepping to its mate.
            bw = childs[row, 0]
            label[w] = _T
            label[bw] = _T
            labelend[w] = cur
            labelend[bw] = cur
            bestedge[bw] = -1
            # Relabel any other sub-blossom reached from outside.
            j += jstep
            while childs[row, j % ln] != entrychild:
                bv = childs[row, j % ln]
                if label[bv] == _S:
                    j += jstep
                    continue
                vv = -1
                if bv < n:
                    vv = bv
                else:
                    nl = _push_leaves(bv, leafbuf, 0, n, childs, childslen,
                                      scratch)
                    for li in range(nl):
                        if label[leafbuf[li]] != _FREE:
                            vv = leafbuf[li]
                            break
                    if vv == -1:
                        vv = leafbuf[nl - 1]
                if label[vv] != _FREE:
                    assert label[vv] == _T
                    assert inblossom[vv] == bv
                    label[vv] = _FREE
                    label[endpoint[mate[blossombase[bv]]]] = _FREE
                    _assign_label(vv, _T, labelend[vv], n, endpoint, mate,
                                  label, labelend, inblossom, blossombase,
                                  bestedge, childs, childslen, queue, qhead,
                                  scratch)
                j += jstep
        # Free the slot.
        label[b] = _FREE
        labelend[b] = -1
        bestedge[b] = -1
        blossomparent[b] = -1
        blossombase[b] = -1
        blossomdual[row] = 0.0
        hasbest[b] = False
        bestlistlen[row] = 0
        ustack[ulen[0]] = b
        ulen[0] += 1


@njit(cache=True)
def _augment_blossom(b, v, n, endpoint, mate, blossomparent, blossombase,
                     childs, childslen, endps, rowtmp, rowtmp2, astack):
    """Swap matched/unmatched edges from v to b's base inside blossom b."""
    aslen = 0
    astack[aslen, 0] = b
    astack[aslen, 1] = v
    aslen += 1
    while aslen > 0:
        aslen -= 1
        b = astack[aslen, 0]
        v = astack[aslen, 1]
        # Bubble up from v to an immediate sub-blossom of b.
        t = v
        while blossomparent[t] != b:
            t = blossomparent[t]
        row = b - n
        ln = childslen[row]
        i = 0
        for ci in range(ln):
            if childs[row, ci] == t:
                i = ci
                break
        j = i
        if i & 1:
            j -= ln
            jstep = 1
        else:
            jstep = -1
        # Queue the deferred recursion into sub-blossom t (handled last so
        # the parent's rotation below sees consistent state either way).
        if t >= n:
            astack[aslen, 0] = t
            astack[aslen, 1] = v
            aslen += 1
        while j != 0:
            j += jstep
            t2 = childs[row, j % ln]
            if jstep == 1:
                e = endps[row, j % ln]
                w = endpoint[e]
                x = endpoint[e ^ 1]
            else:
                e = endps[row, (j - 1) % ln]
                x = endpoint[e]
                w = endpoint[e ^ 1]
            if t2 >= n:
                astack[aslen, 0] = t2
                astack[aslen, 1] = w
                aslen += 1
            j += jstep
            t3 = childs[row, j % ln]
            if t3 >= n:
                astack[aslen, 0] = t3
                astack[aslen, 1] = x
                aslen += 1
            if jstep == 1:
                mate[w] = e ^ 1
                mate[x] = e
            else:
                mate[w] = e
                mate[x] = e ^ 1
        # Rotate childs/endps so the new base (containing v) sits first.
        if i > 0:
            for ci in range(ln):
                rowtmp[ci] = childs[row, (ci + i) % ln]
                rowtmp2[ci] = endps[row, (ci + i) % ln]
            for ci in range(ln):
                childs[row, ci] = rowtmp[ci]
                endps[row, ci] = rowtmp2[ci]
        # The deferred call into the sub-blossom containing v will set that
        # child's base to v as well, so the parent's base is v directly.
        blossombase[b] = v


@njit(cache=True)
def _augment_matching(k, v, w, n, endpoint, mate, label, labelend, inblossom,
                      blossomparent, blossombase, childs, childslen, endps,
                      rowtmp, rowtmp2, astack):
    """Augment along the path ...v -- w... through tight edge k."""
    for side in range(2):
        if side == 0:
            s = v
            p = 2 * k + 1 if endpoint[2 * k + 1] == w else 2 * k
        else:
            s = w
            p = 2 * k + 1 if endpoint[2 * k + 1] == v else 2 * k
        while True:
            bs = inblossom[s]
            assert label[bs] == _S
            if bs >= n:
                _augment_blossom(bs, s, n, endpoint, mate, blossomparent,
                                 blossombase, childs, childslen, endps,
                                 rowtmp, rowtmp2, astack)
            mate[s] = p
            if labelend[bs] == -1:
                break
            t = endpoint[labelend[bs]]
            bt = inblossom[t]
            assert label[bt] == _T
            assert labelend[bt] >= 0
            s = endpoint[labelend[bt]]
            j = endpoint[labelend[bt] ^ 1]
            assert blossombase[bt] == t
            if bt >= n:
                _augment_blossom(bt, j, n, endpoint, mate, blossomparent,
                                 blossombase, childs, childslen, endps,
                                 rowtmp, rowtmp2, astack)
            mate[j] = labelend[bt]
            p = labelend[bt] ^ 1


@njit(cache=True)
def _solve(n, endpoint, weight, adj_start, adj_list, maxcardinality):
    """Run the full algorithm; return matching and dual state arrays."""
    m = weight.shape[0]
    maxweight = 0.0
    for k in range(m):
        if weight[k] > maxweight:
            maxweight = weight[k]

    mate = np.full(n, -1, dtype=np.int64)
    label = np.zeros(2 * n, dtype=np.int64)
    labelend = np.full(2 * n, -1, dtype=np.int64)
    inblossom = np.arange(n, dtype=np.int64)
    blossomparent = np.full(2 * n, -1, dtype=np.int64)
    blossombase = np.full(2 * n, -1, dtype=np.int64)
    blossombase[:n] = np.arange(n, dtype=np.int64)
    childs = np.zeros((n, n + 1), dtype=np.int64)
    childslen = np.zeros(n, dtype=np.int64)
    endps = np.zeros((n, n + 1), dtype=np.int64)
    bestedge = np.full(2 * n, -1, dtype=np.int64)
    bestlist = np.zeros((n, n + 1), dtype=np.int64)
    bestlistlen = np.zeros(n, dtype=np.int64)
    hasbest = np.zeros(2 * n, dtype=np.bool_)
    dualvar = np.full(n, maxweight, dtype=np.float64)
    blossomdual = np.zeros(n, dtype=np.float64)
    allowedge = np.zeros(m, dtype=np.bool_)
    queue = np.zeros(2 * m + 4 * n + 8, dtype=np.int64)
    qhead = np.zeros(1, dtype=np.int64)
    ustack = np.arange(n, 2 * n, dtype=np.int64)
    ulen = np.full(1, n, dtype=np.int64)
    # Scratch space shared by the helpers.
    scratch = np.zeros(2 * n + 2, dtype=np.int64)
    leafbuf = np.zeros(n + 1, dtype=np.int64)
    path = np.zeros(2 * n + 2, dtype=np.int64)
    tmp_childs = np.zeros(n + 2, dtype=np.int64)
    tmp_endps = np.zeros(n + 2, dtype=np.int64)
    bestto = np.full(2 * n, -1, dtype=np.int64)
    touched = np.zeros(2 * n + 2, dtype=np.int64)
    rowtmp = np.zeros(n + 1, dtype=np.int64)
    rowtmp2 = np.zeros(n + 1, dtype=np.int64)
    estack = np.zeros(2 * n + 2, dtype=np.int64)
    astack = np.zeros((2 * n + 2, 2), dtype=np.int64)

    if m == 0:
        return (mate, dualvar, blossomdual, blossomparent, blossombase,
                childs, childslen, endps)

    while True:  # stages
        label[:] = _FREE
        labelend[:] = -1
        bestedge[:] = -1
        for b in range(n, 2 * n):
            hasbest[b] = False
            bestlistlen[b - n] = 0
        allowedge[:] = False
        qhead[0] = 0
        for v in range(n):
            if mate[v] == -1 and label[inblossom[v]] == _FREE:
                _assign_label(v, _S, -1, n, endpoint, mate, label, labelend,
                              inblossom, blossombase, bestedge, childs,
                              childslen, queue, qhead, scratch)
        augmented = False
        while True:  # substages
            while qhead[0] > 0 and not augmented:
                qhead[0] -= 1
                v = queue[qhead[0]]
                assert label[inblossom[v]] == _S
                for ai in range(adj_start[v], adj_start[v + 1]):
                    q = adj_list[ai]
                    k = q >> 1
                    w = endpoint[q]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = 0.0
                    if not allowedge[k]:
                        kslack = _slack(k, endpoint, weight, dualvar)
                        if kslack <= 0.0:
                            allowedge[k] = True
                    if allowedge[k]:
                        bw = inblossom[w]
                        if label[bw] == _FREE:
                            _assign_label(w, _T, q ^ 1, n, endpoint, mate,
                                          label, labelend, inblossom,
                                          blossombase, bestedge, childs,
                                          childslen, queue, qhead, scratch)
                        elif label[bw] == _S:
                            base = _scan_blossom(v, w, endpoint, label,
                                                 labelend, inblossom,
                                                 blossombase, mate, path)
                            if base >= 0:
                                _add_blossom(base, k, v, w, n, endpoint,
                                             weight, adj_start, adj_list,
                                             mate, label, labelend, inblossom,
                                             blossomparent, blossombase,
                                             childs, childslen, endps,
                                             bestedge, bestlist, bestlistlen,
                                             hasbest, dualvar, blossomdual,
                                             queue, qhead, ustack, ulen,
                                             tmp_childs, tmp_endps, bestto,
                                             touched, scratch, leafbuf)
                            else:
                                _augment_matching(k, v, w, n, endpoint, mate,
                                                  label, labelend, inblossom,
                                                  blossomparent, blossombase,
                                                  childs, childslen, endps,
                                                  rowtmp, rowtmp2, astack)
                                augmented = True
                                break
                        elif label[w] == _FREE:
                            assert label[bw] == _T
                            label[w] = _T
                            labelend[w] = q ^ 1
                    elif label[inblossom[w]] == _S:
                        bv = inblossom[v]
                        if bestedge[bv] == -1 or kslack < _slack(
                                bestedge[bv], endpoint, weight, dualvar):
                            bestedge[bv] = k
                    elif label[w] == _FREE:
                        if bestedge[w] == -1 or kslack < _slack(
                                bestedge[w], endpoint, weight, dualvar):
                            bestedge[w] = k
            if augmented:
                break

            # No augmenting path; update dual variables.
            deltatype = -1
            delta = 0.0
            deltaedge = -1
            deltablossom = -1
            if not maxcardinality:
                deltatype = 1
                delta = dualvar[0]
                for v in range(1, n):
                    if dualvar[v] < delta:
                        delta = dualvar[v]
            for v in range(n):
                if label[inblossom[v]] == _FREE and bestedge[v] != -1:
                    d = _slack(bestedge[v], endpoint, weight, dualvar)
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = bestedge[v]
            for b in range(2 * n):
                if (blossomparent[b] == -1 and blossombase[b] >= 0
                        and label[b] == _S and bestedge[b] != -1):
                    d = _slack(bestedge[b], endpoint, weight, dualvar) / 2.0
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = bestedge[b]
            for b in range(n, 2 * n):
                if (blossombase[b] >= 0 and blossomparent[b] == -1
                        and label[b] == _T
                        and (deltatype == -1 or blossomdual[b - n] < delta)):
                    delta = blossomdual[b - n]
                    deltatype = 4
                    deltablossom = b
            if deltatype == -1:
                # Max-cardinality optimum; final adjustment for the duals.
                assert maxcardinality
                deltatype = 1
                dmin = dualvar[0]
                for v in range(1, n):
                    if dualvar[v] < dmin:
                        dmin = dualvar[v]
                delta = max(0.0, dmin)

            for v in range(n):
                lbl = label[inblossom[v]]
                if lbl == _S:
                    dualvar[v] -= delta
                elif lbl == _T:
                    dualvar[v] += delta
            for b in range(n, 2 * n):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == _S:
                        blossomdual[b - n] += delta
                    elif label[b] == _T:
                        blossomdual[b - n] -= delta

            if deltatype == 1:
                break
            elif deltatype == 2:
                allowedge[deltaedge] = True
                i = endpoint[2 * deltaedge]
                if label[inblossom[i]] == _FREE:
                    i = endpoint[2 * deltaedge + 1]
                assert label[inblossom[i]] == _S
                queue[qhead[0]] = i
                qhead[0] += 1
            elif deltatype == 3:
                allowedge[deltaedge] = True
                i = endpoint[2 * deltaedge]
                assert label[inblossom[i]] == _S
                queue[qhead[0]] = i
                qhead[0] += 1
            else:
                _expand_blossom(deltablossom, False, n, endpoint, mate, label,
                                labelend, inblossom, blossomparent,
                                blossombase, childs, childslen, endps,
                                bestedge, bestlistlen, hasbest, blossomdual,
                                allowedge, queue, qhead, ustack, ulen,
                                scratch, leafbuf, estack)

        for v in range(n):
            if mate[v] != -1:
                assert endpoint[mate[endpoint[mate[v]]]] == v

        if not augmented:
            break

        # End of stage: expand all S-blossoms with zero dual.
        for b in range(n, 2 * n):
            if (blossombase[b] >= 0 and blossomparent[b] == -1
                    and label[b] == _S and blossomdual[b - n] == 0.0):
                _expand_blossom(b, True, n, endpoint, mate, label, labelend,
                                inblossom, blossomparent, blossombase, childs,
                                childslen, endps, bestedge, bestlistlen,
                                hasbest, blossomdual, allowedge, queue, qhead,
                                ustack, ulen, scratch, leafbuf, estack)

    return (mate, dualvar, blossomdual, blossomparent, blossombase, childs,
            childslen, endps)


class MatchingResult:
    """Matching plus the dual certificate needed to verify optimality."""

    __slots__ = ("n", "mate", "dualvar", "blossomdual", "blossomparent",
                 "blossombase", "childs", "childslen", "endps")

    def __init__(self, n, mate, dualvar, blossomdual, blossomparent,
                 blossombase, childs, childslen, endps):
        self.n = n
        self.mate = mate
        self.dualvar = dualvar
        self.blossomdual = blossomdual
        self.blossomparent = blossomparent
        self.blossombase = blossombase
        self.childs = childs
        self.childslen = childslen
        self.endps = endps

def max_weight_matching(n, edges_i, edges_j, weights, maxcardinality=False):
    """Maximum-weight matching of an undirected weighted graph.

    Parameters
    ----------
    n : int
        Number of vertices (indexed 0..n-1).
    edges_i, edges_j : array of int
        Edge endpoint indices; no self-loops, no duplicate edges.
    weights : array of float
        Edge weights.
    maxcardinality : bool
        If True, restrict to maximum-cardinality matchings (maximum weight
        among those), which is how a minimum-weight perfect matching is
        obtained after negating costs.

    Returns
    -------
    mate : ndarray of int
        mate[v] is the vertex matched to v, or -1 if v is unmatched.
    result : MatchingResult
        Raw solver state (for optimality verification).
    """
    edges_i = np.ascontiguousarray(edges_i, dtype=np.int64)
    edges_j = np.ascontiguousarray(edges_j, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    m = weights.shape[0]
    if edges_i.shape[0] != m or edges_j.shape[0] != m:
        raise ValueError("edge arrays must have equal length")
    if m > 0:
        if edges_i.min() < 0 or edges_j.min() < 0 or \
                max(edges_i.max(), edges_j.max()) >= n:
            raise ValueError("edge endpoint out of range")
        if np.any(edges_i == edges_j):
            raise ValueError("self-loops are not allowed")
    if not np.all(np.isfinite(weights)):
        raise ValueError("edge weights must be finite")

    endpoint = np.empty(2 * m, dtype=np.int64)
    endpoint[0::2] = edges_i
    endpoint[1::2] = edges_j
    # CSR adjacency of remote endpoints, ordered by edge index.
    deg = np.zeros(n, dtype=np.int64)
    for k in range(m):
        deg[edges_i[k]] += 1
        deg[edges_j[k]] += 1
    adj_start = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=adj_start[1:])
    fill = adj_start[:-1].copy()
    adj_list = np.zeros(2 * m, dtype=np.int64)
    for k in range(m):
        i, j = edges_i[k], edges_j[k]
        adj_list[fill[i]] = 2 * k + 1  # endpoint pointing to j
        fill[i] += 1
        adj_list[fill[j]] = 2 * k  # endpoint pointing to i
        fill[j] += 1

    out = _solve(n, endpoint, weight=weights, adj_start=adj_start,
                 adj_list=adj_list, maxcardinality=maxcardinality)
    (mate_ep, dualvar, blossomdual, blossomparent, blossombase, childs,
     childslen, endps) = out
    if m > 0:
        mate = np.where(mate_ep >= 0,
                        endpoint[np.where(mate_ep >= 0, mate_ep, 0)], -1)
    else:
        mate = np.full(n, -1, dtype=np.int64)
    result = MatchingResult(n, mate_ep, dualvar, blossomdual, blossomparent,
                            blossombase, childs, childslen, endps)
    return mate, result


def verify_optimum(n, edges_i, edges_j, weights, result, maxcardinality,
                   rel_tol=1e-9):
    """Check the complementary-slackness certificate of a finished solve.

    Raises AssertionError if any optimality condition is violated beyond
    a weight-scaled tolerance (exact for dyadic-rational weights).
    """
    mate_ep = result.mate
    dualvar = result.dualvar
    blossomdual = result.blossomdual
    parent = result.blossomparent
    base = result.blossombase
    childs = result.childs
    childslen = result.childslen
    endps = result.endps
    m = len(weights)
    endpoint = np.empty(2 * m, dtype=np.int64)
    endpoint[0::2] = edges_i
    endpoint[1::2] = edges_j
    scale = max(1.0, float(np.max(np.abs(weights))) if m else 1.0)
    tol = rel_tol * scale

    vdualoffset = max(0.0, -dualvar.min()) if maxcardinality else 0.0
    assert dualvar.min() + vdualoffset >= -tol
    live = [b for b in range(n, 2 * n) if base[b] >= 0]
    assert all(blossomdual[b - n] >= -tol for b in live)
    for k in range(m):
        i, j = int(edges_i[k]), int(edges_j[k])
        s = dualvar[i] + dualvar[j] - 2.0 * weights[k]
        ichain = [i]
        while parent[ichain[-1]] != -1:
            ichain.append(int(parent[ichain[-1]]))
        jchain = [j]
        while parent[jchain[-1]] != -1:
            jchain.append(int(parent[jchain[-1]]))
        ichain.reverse()
        jchain.reverse()
        for bi, bj in zip(ichain, jchain):
            if bi != bj:
                break
            s += 2.0 * blossomdual[bi - n]
        assert s >= -tol, "negative slack"
        if mate_ep[i] >= 0 and mate_ep[i] >> 1 == k:
            assert abs(s) <= tol, "matched edge not tight"
    for v in range(n):
        assert mate_ep[v] >= 0 or abs(dualvar[v] + vdualoffset) <= tol
    for b in live:
        if blossomdual[b - n] > tol:
            row = b - n
            assert childslen[row] % 2 == 1
            for idx in range(1, childslen[row], 2):
                e = endps[row, idx]
                assert mate_ep[endpoint[e]] == e ^ 1
                assert mate_ep[endpoint[e ^ 1]] == e
