"""Partition overlaid patterns: restriction, depth, shift, invariant sets,
stability predicate, enumeration, and the area identity."""

from __future__ import annotations

from fractions import Fraction

from . import gtpattern
from .gtpattern import GTPattern
from .partitions import (Partition, colored_partitions, enumerate_rect,
                         enumerate_rect_by_size, fits_rectangle)
from .rootdata import bilinear, weight_from_seq


class POP:
    """A GT pattern together with a partition in each (i,j) rectangle.

    Overlay keys (i,j) for 1 <= i <= j <= r are always present, even when the
    rectangle is degenerate (the partition is then forced empty).
    """

    __slots__ = ("pattern", "overlay", "r")

    def __init__(self, pattern, overlay=None):
        overlay = dict(overlay or {})
        r = pattern.r
        full = {}
        for j in range(1, r + 1):
            for i in range(1, j + 1):
                pi = overlay.get((i, j), Partition(()))
                d = gtpattern.diff_d(pattern, i, j)
                dp = gtpattern.diff_dprime(pattern, i, j)
                if not fits_rectangle(pi, d, dp):
                    raise ValueError(
                        "overlay partition at (i=%d, j=%d) does not fit rectangle (%d, %d)"
                        % (i, j, d, dp))
                full[(i, j)] = pi
        unknown = set(overlay) - set(full)
        if unknown:
            raise ValueError("overlay keys out of range: %r" % (sorted(unknown),))
        object.__setattr__(self, "pattern", pattern)
        object.__setattr__(self, "overlay", full)
        object.__setattr__(self, "r", r)

    def __setattr__(self, name, value):
        raise AttributeError("POP is immutable")

    def __eq__(self, other):
        return (isinstance(other, POP) and self.pattern == other.pattern
                and self.overlay == other.overlay)

    def __hash__(self):
        return hash((self.pattern, tuple(sorted(self.overlay.items(),
                                                key=lambda kv: kv[0]))))

    def __repr__(self):
        ov = {k: list(v.parts) for k, v in sorted(self.overlay.items())}
        return "POP(%r, %r)" % (self.pattern, ov)

    def bounding_seq(self):
        return self.pattern.bounding_seq()

    def weight(self):
        return gtpattern.weight(self.pattern)

    def d(self, i, j):
        return gtpattern.diff_d(self.pattern, i, j)

    def dprime(self, i, j):
        return gtpattern.diff_dprime(self.pattern, i, j)

    def overlay_size(self):
        return sum(pi.size() for pi in self.overlay.values())

    def to_json(self):
        obj = self.pattern.to_json()
        obj["overlay"] = {"%d,%d" % k: v.to_json()
                          for k, v in sorted(self.overlay.items())}
        return obj

    @classmethod
    def from_json(cls, obj):
        pattern = GTPattern(obj["rows"])
        overlay = {}
        for key, parts in obj.get("overlay", {}).items():
            i, j = (int(t) for t in key.split(","))
            overlay[(i, j)] = Partition(parts)
        return cls(pattern, overlay)


def validate_pop(pattern, overlay=None):
    return POP(pattern, overlay)


def restrict(P, s):
    """Restriction P_s: rows are the suffixes starting at column s; rank drops."""
    r = P.r
    if not 1 <= s <= r + 1:
        raise ValueError("restriction index out of range")
    if s == r + 1:
        return None
    rows = [tuple(P.pattern.rows[j - 1][s - 1:]) for j in range(s, r + 2)]
    overlay = {(i - s + 1, j - s + 1): P.overlay[(i, j)]
               for (i, j) in P.overlay if i >= s}
    return POP(GTPattern(rows), overlay)


def depth_table(P):
    """d^j_i = d_{i,j} * sum_{p=i+1}^{j} d'_{p,j} + |pi(j)^i| for all cells."""
    out = {}
    for (i, j), pi in P.overlay.items():
        trap = P.d(i, j) * sum(P.dprime(p, j) for p in range(i + 1, j + 1))
        out[(i, j)] = trap + pi.size()
    return out


def depth(P):
    """Total depth d(P) plus per-cell table and all restricted depths."""
    table = depth_table(P)
    total = sum(table.values())
    restricted = {}
    for s in range(1, P.r + 2):
        restricted[s] = sum(v for (i, j), v in table.items() if i >= s)
    return {"table": table, "total": total, "restricted": restricted}


def depth_total(P):
    return sum(depth_table(P).values())


def area_identity(P):
    """Check trapezoidal = triangular + depth - overlay and the norm identity.

    trap(P) = tri(P) + d(P) - sum|pi| = ((lambda|lambda) - (wt|wt)) / 2,
    all exactly; returns (ok, diagnostics).
    """
    st = gtpattern.stats(P.pattern)
    lam = weight_from_seq(P.bounding_seq())
    lhs = st["trap_area"]
    mid = st["tri_area"] + depth_total(P) - P.overlay_size()
    rhs = (bilinear(lam, lam) - bilinear(st["wt"], st["wt"])) / 2
    ok = Fraction(lhs) == Fraction(mid) == rhs
    return ok, {"trap": lhs, "tri_plus_depth": mid, "norm_half_diff": rhs}


def shift_pop(P, k):
    """Shift of the POP: pattern shifted by k, overlay unchanged."""
    return POP(gtpattern.shift(P.pattern, k), dict(P.overlay))


def invariant_set(P, s):
    """I(P_s): shift-invariant differences and the overlay, with labels kept.

    Returns {"d": {(i,j): ...}, "dprime": {(i,j): ...}, "overlay": {(i,j): ...}}
    restricted to the index ranges of P_s.
    """
    r = P.r
    if not 1 <= s <= r + 1:
        raise ValueError("restriction index out of range")
    d = {(i, j): P.d(i, j) for j in range(1, r + 1) for i in range(s, j)
         if s <= i < j}
    dp = {(i, j): P.dprime(i, j) for j in range(1, r + 1)
          for i in range(s + 1, j + 1) if s < i <= j}
    ov = {(i, j): P.overlay[(i, j)] for (i, j) in P.overlay if i >= s}
    return {"d": d, "dprime": dp, "overlay": ov}


def invariant_slice(P, s, j):
    """I^j_s: {d_{s,j}, pi(j)^s} plus {d'_{i,j}: s < i <= j}; I^s_s = {pi(s)^s}."""
    r = P.r
    if not 1 <= s <= j <= r:
        raise ValueError("slice indices out of range")
    if s == j:
        return {"d": {}, "dprime": {}, "overlay": {(s, s): P.overlay[(s, s)]}}
    return {
        "d": {(s, j): P.d(s, j)},
        "dprime": {(i, j): P.dprime(i, j) for i in range(s + 1, j + 1)},
        "overlay": {(s, j): P.overlay[(s, j)]},
    }


def is_stable(P):
    """True iff d_{l,l}(P) >= d(P_l) for every 1 <= l <= r."""
    rest = depth(P)["restricted"]
    return all(P.d(l, l) >= rest[l] for l in range(1, P.r + 1))


def enumerate_pops(lamseq, weight=None, depth_filter=None):
    """All POPs with the given bounding sequence, optionally filtered.

    Filters: exact weight (FiniteWeight) and exact depth.  Deterministic
    order: pattern enumeration order, then overlay cells by (j, i), each cell's
    partitions in enumerate_rect order.
    """
    out = []
    for pattern in gtpattern.enumerate_patterns(lamseq):
        if weight is not None and gtpattern.weight(pattern) != weight:
            continue
        st = gtpattern.stats(pattern)
        base = sum(st["d"][(i, j)] * sum(st["dprime"][(p, j)]
                                         for p in range(i + 1, j + 1))
                   for (i, j) in st["d"])
        if depth_filter is not None:
            want = depth_filter - base
            if want < 0 or want > st["trap_area"]:
                continue
        cells = sorted(st["d"], key=lambda ij: (ij[1], ij[0]))
        choices = []
        for (i, j) in cells:
            d, dp = st["d"][(i, j)], st["dprime"][(i, j)]
            if depth_filter is None:
                choices.append([(pi, pi.size()) for pi in enumerate_rect(d, dp)])
            else:
                groups = enumerate_rect_by_size(d, dp)
                choices.append([(pi, sz) for sz in sorted(groups)
                                for pi in groups[sz]])

        def rec(idx, remaining, acc):
            if idx == len(cells):
                if depth_filter is None or remaining == 0:
                    out.append(POP(pattern, dict(zip(cells, acc))))
                return
            for pi, sz in choices[idx]:
                if depth_filter is not None and sz > remaining:
                    continue
                acc.append(pi)
                rec(idx + 1, remaining - sz if depth_filter is not None else 0, acc)
                acc.pop()

        rec(0, depth_filter - base if depth_filter is not None else 0, [])
    return out


def enumerate_pops_bruteforce(lamseq, weight=None, depth_filter=None):
    """Independent enumerator used as an oracle: brute force over entry boxes."""
    lamseq = tuple(int(x) for x in lamseq)
    n = len(lamseq)
    r = n - 1
    patterns = []

    def rec_rows(rows_bottom_up):
        below = rows_bottom_up[-1]
        if len(below) == 1:
            try:
                patterns.append(GTPattern(list(reversed(rows_bottom_up))))
            except ValueError:
                pass
            return
        j = len(below) - 1
        lo = min(below)
        hi = max(below)

        def rec_row(row):
            if len(row) == j:
                ok = all(below[i] >= row[i] >= below[i + 1] for i in range(j))
                if ok:
                    rec_rows(rows_bottom_up + [row])
                return
            for v in range(lo, hi + 1):
                rec_row(row + [v])

        rec_row([])

    rec_rows([list(lamseq)])
    out = []
    for pattern in patterns:
        if weight is not None and gtpattern.weight(pattern) != weight:
            continue
        st = gtpattern.stats(pattern)
        cells = sorted(st["d"], key=lambda ij: (ij[1], ij[0]))
        stacks = [[]]
        for (i, j) in cells:
            opts = enumerate_rect(st["d"][(i, j)], st["dprime"][(i, j)])
            stacks = [acc + [pi] for acc in stacks for pi in opts]
        for acc in stacks:
            P = POP(pattern, dict(zip(cells, acc)))
            if depth_filter is not None and depth_total(P) != depth_filter:
                continue
            out.append(P)
    return out


def shift_bijection_check(lam, mu, d, k):
    """Check |P(lam + k theta)_{mu, d}| = #(r-colored partitions of d) and the
    diagonal bound d_{l,l} >= k on every member; requires k >= d."""
    if k < d:
        raise ValueError("need k >= d")
    from .rootdata import seq_from_fundamental, theta
    r = lam.r
    lamk = lam + k * theta(r)
    seq = seq_from_fundamental(r, lamk.fundamental_coeffs())
    pops = enumerate_pops(seq, weight=mu, depth_filter=d)
    expected = colored_partitions(r, d, count_only=True)
    ok = len(pops) == expected
    witness = None
    for P in pops:
        bad = [l for l in range(1, r + 1) if P.d(l, l) < k]
        if bad:
            ok = False
            witness = {"pop": P.to_json(), "bad_diagonals": bad}
            break
    return {"check": "shift_bijection", "count": len(pops), "expected": expected,
            "status": "pass" if ok else "fail", "witness": witness}
