"""Independent re-implementations used to check the package.

Everything here works on plain lists of words per slot and exact fractions,
and shares no code with ``oiescore.scorer``.
"""

from fractions import Fraction


def slots_of(t):
    """{slot: [(word, is_inferred), ...]} from a TupleRecord."""
    return {p.slot: [(tok.text, tok.inferred) for tok in p.tokens] for p in t.parts}


def bag_overlap(a, b):
    """Size of the multiset intersection of two word lists."""
    rest = list(b)
    n = 0
    for w in a:
        if w in rest:
            rest.remove(w)
            n += 1
    return n


def pair(t, g):
    """(candidate?, shared, shared_pred, |t|, |g|, f1) for a prediction and a gold tuple.

    ``shared`` counts overlap with the gold's sentence words only; ``shared_pred``
    also lets predicted words meet the gold's inferred words. ``|g|`` leaves out
    inferred words. f1 is an exact Fraction (0 for non-candidates).
    """
    ts, gs = slots_of(t), slots_of(g)
    tw = {s: [w for w, _ in v] for s, v in ts.items()}
    gw = {s: [w for w, inf in v if not inf] for s, v in gs.items()}
    gall = {s: [w for w, _ in v] for s, v in gs.items()}
    required = [s for s in ("arg1", "rel", "arg2") if gw.get(s)]
    ok = bool(required) and all(bag_overlap(tw.get(s, []), gw[s]) > 0 for s in required)
    slots = set(tw) | set(gw)
    shared = sum(bag_overlap(tw.get(s, []), gw.get(s, [])) for s in slots)
    shared_pred = sum(bag_overlap(tw.get(s, []), gall.get(s, [])) for s in slots)
    lt, lg = sum(map(len, tw.values())), sum(map(len, gw.values()))
    f1 = Fraction(0)
    if ok:
        p, r = Fraction(shared_pred, lt), Fraction(shared, lg)
        f1 = 2 * p * r / (p + r)
    return ok, shared, shared_pred, lt, lg, f1


def brute_force_greedy(preds, golds):
    """Repeatedly remove the best remaining candidate pair.

    Ranking: highest F1 (exact fraction), then most shared words, then lowest
    gold index, then lowest prediction index. Returns [(pred, gold), ...] in
    selection order.
    """
    cands = {}
    for i, t in enumerate(preds):
        for j, g in enumerate(golds):
            ok, shared, _, _, _, f1 = pair(t, g)
            if ok:
                cands[(i, j)] = (f1, shared)
    picked = []
    while cands:
        best = None
        for (i, j), (f1, shared) in cands.items():
            key = (f1, shared, -j, -i)
            if best is None or key > best[0]:
                best = (key, i, j)
        _, i, j = best
        picked.append((i, j))
        cands = {k: v for k, v in cands.items() if k[0] != i and k[1] != j}
    return picked


def all_one_to_one(n_preds, n_golds, allowed):
    """Every one-to-one set of pairs drawn from ``allowed``."""
    allowed = sorted(allowed)
    out = []

    def rec(k, used_p, used_g, acc):
        if k == len(allowed):
            out.append(list(acc))
            return
        rec(k + 1, used_p, used_g, acc)
        i, j = allowed[k]
        if i not in used_p and j not in used_g:
            rec(k + 1, used_p | {i}, used_g | {j}, acc + [(i, j)])

    rec(0, frozenset(), frozenset(), [])
    return out
