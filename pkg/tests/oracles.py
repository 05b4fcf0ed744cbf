"""Independent reference computations used only by the tests."""

import itertools

from vsg.code import OVER
from vsg.laurent import DELTA, ONE, SIGMA, ZERO, LaurentPoly


def yamada_graph_by_subsets(n, edges):
    """R(G) = sum over edge subsets F of (-1)^k(F) (-sigma-1)^nullity(F)."""
    c = -SIGMA - ONE
    total = ZERO
    for mask in range(1 << len(edges)):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        f = 0
        comps = n
        for i, (a, b) in enumerate(edges):
            if mask >> i & 1:
                f += 1
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
                    comps -= 1
        nullity = f - n + comps
        total = total + LaurentPoly.constant((-1) ** comps) * c ** nullity
    return total


def bracket_by_walking(components):
    """Kauffman bracket by walking every loop of every smoothing state.

    ``components`` is a list of cyclic passage sequences. The smoothing at a
    positive crossing joins (under-in, over-out) and (over-in, under-out) for A.
    """
    labels = sorted({p.crossing for comp in components for p in comp})
    sign = {p.crossing: p.sign for comp in components for p in comp}
    if not components:
        return ONE
    # Along a strand, the out-end of a passage is joined to the in-end of the next.
    strand_next = {}
    free = 0
    for comp in components:
        if not comp:
            free += 1
            continue
        for a, b in zip(comp, comp[1:] + comp[:1]):
            out_a = (a.crossing, "o" if a.role == OVER else "u", "out")
            in_b = (b.crossing, "o" if b.role == OVER else "u", "in")
            strand_next[out_a] = in_b
            strand_next[in_b] = out_a
    total = ZERO
    for state in itertools.product((1, -1), repeat=len(labels)):
        local = {}
        for lab, s in zip(labels, state):
            oriented = (s > 0) == (sign[lab] > 0)
            ui, uo, oi, oo = (lab, "u", "in"), (lab, "u", "out"), (lab, "o", "in"), (lab, "o", "out")
            pairs = [(ui, oo), (oi, uo)] if oriented else [(ui, oi), (uo, oo)]
            for x, y in pairs:
                local[x] = y
                local[y] = x
        seen = set()
        loops = free
        for start in strand_next:
            if start in seen:
                continue
            loops += 1
            cur = start
            while cur not in seen:
                seen.add(cur)
                other = local[cur]
                seen.add(other)
                cur = strand_next[other]
        total = total + DELTA ** (loops - 1) * LaurentPoly.monomial(sum(state))
    return total


def knot_quandle_colorings(passages, op):
    """Colorings of a one-component Gauss sequence by an involutory quandle.

    Arcs run between consecutive under-passages (cyclically); the over arc
    acts on the under strand regardless of sign since b-bar = b here.
    """
    n = len(op)
    arcs = max(1, sum(1 for p in passages if p.role != OVER))
    cur = 0
    over, under = {}, {}
    for p in passages:
        if p.role == OVER:
            over[p.crossing] = cur % arcs
        else:
            under[p.crossing] = (cur % arcs, (cur + 1) % arcs)
            cur += 1
    count = 0
    for val in itertools.product(range(n), repeat=arcs):
        count += all(val[o] == op[val[i]][val[over[c]]] for c, (i, o) in under.items())
    return count
