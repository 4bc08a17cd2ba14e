"""Normalized basis vectors v_P in the level-one model and the verification
suite: weight law, stability, the intermediate per-restriction form, the
single-root collapse identities, spanning and chain inclusion, stable bases.

Monomial convention: repeated equal factors x (x) t^e inside one block are
taken with divided-power normalization (the product of m equal factors is
divided by m!).  Without this the lambda = 0 stability statement already
fails at k = 2, so the plain-product reading is untenable.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from . import fock, translate
from .fock import (FockVector, act_root_vector, expected_weight, vacuum,
                   weight_of, zero_vector)
from .partitions import colored_partitions, fits_rectangle
from .pop import depth, depth_total, enumerate_pops, is_stable
from .rootdata import (AffineWeight, FiniteWeight, bilinear, fundamental,
                       pos_root, residue_class, seq_from_fundamental,
                       simple_root, theta, weight_from_seq, weight_in_irrep,
                       zero_weight)
from .translate import Cocycle, translate_Q


class OperatorWord:
    """Ordered product of root-vector factors, applied right to left.

    Each factor is (root, t-exponent, multiplicity); a multiplicity-m factor
    means (x_root (x) t^e)^m / m!.  Factors sharing one root commute, so the
    exponent order inside a block is canonical (descending).
    """

    __slots__ = ("factors",)

    def __init__(self, factors=()):
        object.__setattr__(self, "factors", tuple(factors))

    def __setattr__(self, name, value):
        raise AttributeError("OperatorWord is immutable")

    def __mul__(self, other):
        return OperatorWord(self.factors + other.factors)

    def __repr__(self):
        return "OperatorWord(%r)" % (list(self.factors),)

    def apply(self, v):
        for root, expo, mult in reversed(self.factors):
            for _ in range(mult):
                v = act_root_vector(root, expo, v)
            if mult > 1:
                v = v * Fraction(1, factorial(mult))
        return v


def cl_monomial(alpha, d, dprime, pi):
    """Block x^-_alpha(d, d', pi) = prod_{i=1}^{d} x^-_alpha (x) t^{d'-pi_i}."""
    if not fits_rectangle(pi, d, dprime):
        raise ValueError("partition does not fit rectangle (%d, %d)" % (d, dprime))
    expos = [dprime - pi.part(i) for i in range(1, d + 1)]
    mults = {}
    for e in expos:
        mults[e] = mults.get(e, 0) + 1
    neg = -alpha
    return OperatorWord(tuple((neg, e, m) for e, m in sorted(mults.items(),
                                                             reverse=True)))


def rho(P, k=0, s=1):
    """rho_{P^k_s}: row blocks p = s..r with the shifted parameters
    d_{p,j} + delta_{p,j} k and d'_{p,j} + delta_{1,p} k, overlay unshifted."""
    r = P.r
    if not 1 <= s <= r + 1:
        raise ValueError("restriction index out of range")
    word = OperatorWord()
    for p in range(s, r + 1):
        for j in range(p, r + 1):
            d = P.d(p, j) + (k if p == j else 0)
            dp = P.dprime(p, j) + (k if p == 1 else 0)
            word = word * cl_monomial(pos_root(r, p, j), d, dp, P.overlay[(p, j)])
    return word


def rho_column(P, k=0, s=1):
    """Column-grouped form of the same operator; agrees with rho as an operator."""
    r = P.r
    word = OperatorWord()
    for j in range(s, r + 1):
        for i in range(s, j + 1):
            d = P.d(i, j) + (k if i == j else 0)
            dp = P.dprime(i, j) + (k if i == 1 else 0)
            word = word * cl_monomial(pos_root(r, i, j), d, dp, P.overlay[(i, j)])
    return word


def sign_eps(P, k=0, s=1):
    """Normalization sign of the shifted restricted monomial.

    Product over rows p = s..r of (-1)^floor((d_{p,p}+k)/2) times the
    cocycle values the operator collapse produces.  The cocycle is comp_eps,
    the composition constants of the translation operators, with the
    fundamental-weight part of the first argument dropped.  The shift k is
    carried into the diagonal factor (multiplier d_{p,p}+k); at k = 0 this is
    the plain row-by-row product over all cells."""
    r = P.r
    lam = weight_from_seq(P.bounding_seq())
    coc = Cocycle(r)
    total = 1
    for p in range(s, r + 1):
        if ((P.d(p, p) + k) // 2) % 2:
            total = -total
        below = zero_weight(r)
        for i in range(p + 1, r + 1):
            for j in range(i, r + 1):
                below = below + P.d(i, j) * pos_root(r, i, j)
        mu_p = lam + k * pos_root(r, 1, p) - below
        for j in range(p + 1, r + 1):
            tail = zero_weight(r)
            for u in range(j, r + 1):
                tail = tail + P.d(p, u) * pos_root(r, p, u)
            total *= coc.comp_eps(mu_p - tail, P.d(p, j) * pos_root(r, p, j))
        nu0 = mu_p
        for j in range(p + 1, r + 1):
            nu0 = nu0 - P.d(p, j) * pos_root(r, p, j)
        dk = P.d(p, p) + k
        alpha_p = pos_root(r, p, p)
        total *= coc.comp_eps(nu0 - dk * alpha_p, dk * alpha_p)
    return total


def highest_vector(lam, k=0):
    """w_{lam + k theta} = T_{lam + k theta} vacuum(0), in sector i_lam."""
    r = lam.r
    lamk = lam + k * theta(r)
    return translate.translate_amount(lamk, vacuum(r, 0))


def cl_vector(P, k=0):
    """Normalized basis vector of the shifted POP inside the sector-i_lam module."""
    lam = weight_from_seq(P.bounding_seq())
    w = highest_vector(lam, k)
    return sign_eps(P, k, 1) * rho(P, k, 1).apply(w)


# ---------------------------------------------------------------------------
# exact sparse linear algebra over the rationals

def _echelon(rows):
    """Row echelon over Fraction; returns pivot dict key -> reduced row."""
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            k0 = min(row, key=lambda k: k.sort_key())
            if row[k0] == 0:
                del row[k0]
                continue
            piv = pivots.get(k0)
            if piv is None:
                c = row[k0]
                pivots[k0] = {k: v / c for k, v in row.items() if v}
                break
            f = row[k0]
            for k, v in piv.items():
                row[k] = row.get(k, 0) - f * v
            row = {k: v for k, v in row.items() if v}
    return pivots


def rank_of(vectors):
    return len(_echelon([v.terms for v in vectors]))


def in_span(vectors, target):
    pivots = _echelon([v.terms for v in vectors])
    row = dict(target.terms)
    while row:
        k0 = min(row, key=lambda k: k.sort_key())
        if row[k0] == 0:
            del row[k0]
            continue
        piv = pivots.get(k0)
        if piv is None:
            return False
        f = row[k0]
        for k, v in piv.items():
            row[k] = row.get(k, 0) - f * v
        row = {k: v for k, v in row.items() if v}
    return True


# ---------------------------------------------------------------------------
# verification operations; every one returns a JSON-able report dict

def _report(check, inp, ok, witness=None):
    rep = {"check": check, "input": inp, "status": "pass" if ok else "fail"}
    if witness is not None:
        rep["witness"] = witness
    return rep


def verify_weight(P, k=0):
    """Weight law: wt of v_{P^k} is t_{wt P - varpi}(Lambda_i) - d(P) delta,
    independent of k (artifact delta normalization)."""
    lam = weight_from_seq(P.bounding_seq())
    i = residue_class(lam)
    v = cl_vector(P, k)
    if v.is_zero():
        return _report("weight_law", {"pop": P.to_json(), "k": k}, False,
                       "vector vanished")
    got = weight_of(v)
    gamma_q = P.weight() - fundamental(P.r, i)
    want = expected_weight(P.r, i, gamma_q, depth_total(P))
    ok = got == want
    wit = None if ok else {"got": got.to_json(), "want": want.to_json()}
    return _report("weight_law", {"pop": P.to_json(), "k": k}, ok, wit)


def verify_stability(P, kmax=2):
    """Stable POPs give bitwise-identical vectors for all shifts up to kmax."""
    if not is_stable(P):
        raise ValueError("POP is not stable")
    vs = [cl_vector(P, k) for k in range(kmax + 1)]
    base = vs[0]
    for k, v in enumerate(vs[1:], start=1):
        if v != base:
            diff = (v - base)
            first = min(diff.terms, key=lambda q: q.sort_key())
            return _report("stability", {"pop": P.to_json(), "kmax": kmax}, False,
                           {"k": k, "first_diff_key": repr(first),
                            "v0": base.dump_lines(), "vk": v.dump_lines()})
    return _report("stability", {"pop": P.to_json(), "kmax": kmax}, True)


def _mtp_side(P, k, s):
    """Left side of the intermediate form, pulled back to sector 0."""
    r = P.r
    lam = weight_from_seq(P.bounding_seq())
    v = sign_eps(P, k, s) * rho(P, k, s).apply(highest_vector(lam, k))
    amount = lam
    if s >= 2:
        amount = amount + k * pos_root(r, 1, s - 1)
    for i in range(s, r + 1):
        for j in range(i, r + 1):
            amount = amount - P.d(i, j) * pos_root(r, i, j)
    return translate.translate_amount_inverse(amount, v)


def verify_mtp(P, k=0, s=1):
    """Checkable content of the intermediate theorem at restriction s:
    (i) pure-mode support after the inverse translation, (ii) weight
    Lambda_0 - d(P_s) delta, (iii) equality of the k and k+1 computations."""
    r = P.r
    rest = depth(P)["restricted"]
    for l in range(s, r + 1):
        if P.d(l, l) < rest[l]:
            raise ValueError("hypothesis d_{l,l} >= d(P_l) fails at l=%d" % l)
    inp = {"pop": P.to_json(), "k": k, "s": s}
    f_k = _mtp_side(P, k, s)
    f_k1 = _mtp_side(P, k + 1, s)
    origin = zero_weight(r)
    for key in list(f_k.terms) + list(f_k1.terms):
        if key.gamma != origin:
            return _report("mtp", inp, False,
                           {"reason": "support off the pure-mode subspace",
                            "key": repr(key)})
    if f_k.is_zero():
        return _report("mtp", inp, False, {"reason": "vector vanished"})
    want = AffineWeight(origin, 1, -rest[s] if s <= r else 0)
    got = weight_of(f_k)
    if got != want:
        return _report("mtp", inp, False,
                       {"reason": "weight", "got": got.to_json(),
                        "want": want.to_json()})
    if f_k != f_k1:
        return _report("mtp", inp, False,
                       {"reason": "depends on k", "f_k": f_k.dump_lines(),
                        "f_k1": f_k1.dump_lines()})
    return _report("mtp", inp, True)


# ---------------------------------------------------------------------------
# fast path for single-root lowering words
#
# A word prod_i x_{-alpha} (x) t^{e_i} applied to an extremal vector stays in
# the sub-Fock space spanned by the alpha ray and alpha-direction modes, and
# that subspace with its vertex arithmetic is a copy of the rank-1 model (all
# coefficients only involve the pairings (alpha|alpha) = 2 and (alpha|gamma)).
# Heisenberg insertions in other directions are commuted out first with the
# elementary exchange identity for y_alpha t^p against h t^{-q} monomials.
# The generic path is kept as the oracle; the two are compared in the tests.

def _expand_ray_modes(alpha, rank1_modes, coeff):
    """Rank-1 mode monomial in the alpha direction -> rank-r monomial terms."""
    r = alpha.r
    cs = fock._alpha_simple_coeffs(alpha)
    terms = {(): coeff}
    for (_, n) in rank1_modes:
        new = {}
        for modes, c in terms.items():
            for b in range(1, r + 1):
                if cs[b - 1] == 0:
                    continue
                nm = tuple(sorted(modes + ((b, n),)))
                new[nm] = new.get(nm, 0) + c * cs[b - 1]
        terms = new
    return terms


def _neg_word_on_extremal(alpha, exps, gamma0, coeff):
    """prod_i x_{-alpha} (x) t^{e_i} applied to coeff * e^{gamma0}."""
    r = alpha.r
    from .translate import eps_tilde
    if r == 1:
        v = FockVector(1, gamma0.class_index(),
                       {fock.FockKey(gamma0): Fraction(coeff)})
        for e in exps:
            v = act_root_vector(-alpha, e, v)
        return v
    p = bilinear(gamma0, alpha)
    assert p.denominator == 1
    g1 = FiniteWeight(1, (int(p), 0))
    a1 = simple_root(1, 1)
    v1 = FockVector(1, g1.class_index(), {fock.FockKey(g1): Fraction(1)})
    for e in exps:
        v1 = act_root_vector(-a1, e, v1)
    d = len(exps)
    sigma = (eps_tilde((-alpha).lattice_rep(), gamma0.lattice_rep())
             * eps_tilde((-a1).lattice_rep(), g1.lattice_rep())) ** d
    target = gamma0 - d * alpha
    out = {}
    for key1, c1 in v1.terms.items():
        for modes, c in _expand_ray_modes(alpha, key1.modes, c1).items():
            nk = fock.FockKey(target, modes)
            out[nk] = out.get(nk, 0) + c
    scale = Fraction(coeff) * sigma
    return FockVector(r, target.class_index(),
                      {k: v * scale for k, v in out.items()})


def _apply_block_fast(alpha, d, dprime, pi, gamma0, g_monomials):
    """x^-_alpha(d, d', pi) applied to (sum of h-monomials) * e^{gamma0}.

    g_monomials: dict mode-tuple -> coefficient.  Uses the exchange identity
    to move the h-monomial left, then the rank-1 reduction per pure word.
    """
    if not fits_rectangle(pi, d, dprime):
        raise ValueError("partition does not fit rectangle")
    r = alpha.r
    exps = [dprime - pi.part(i) for i in range(1, d + 1)]
    div = Fraction(1)
    mults = {}
    for e in exps:
        mults[e] = mults.get(e, 0) + 1
    for m in mults.values():
        div /= factorial(m)
    total = zero_vector(r, (gamma0 - d * alpha).class_index())
    for g_modes, g_coeff in g_monomials.items():
        n = len(g_modes)
        pairings = [bilinear(alpha, simple_root(r, b)) for b, _ in g_modes]
        for assign in _assignments(n, d):
            coeff = Fraction(g_coeff)
            new_exps = list(exps)
            kept = []
            for idx, slot in enumerate(assign):
                if slot == 0:
                    kept.append(g_modes[idx])
                else:
                    coeff *= pairings[idx]
                    new_exps[slot - 1] -= g_modes[idx][1]
            if coeff == 0:
                continue
            w = _neg_word_on_extremal(alpha, new_exps, gamma0, coeff)
            for b, q in kept:
                w = fock.act_heisenberg(b, -q, w)
            total = total + w
    return div * total


def _assignments(n, d):
    if n == 0:
        yield ()
        return
    for rest in _assignments(n - 1, d):
        for slot in range(d + 1):
            yield rest + (slot,)


def _stabsl2_core(alpha, d, pi):
    """(-1)^floor(d/2) x^-_alpha(d, d, pi) T_{d alpha} vacuum."""
    r = alpha.r
    w = translate_Q(d * alpha, vacuum(r, 0))
    (key0, c0), = w.terms.items()
    v = _apply_block_fast(alpha, d, d, pi, key0.gamma, {(): c0})
    return v if (d // 2) % 2 == 0 else -v


def verify_stabsl2(alpha, d, pi, k_extra=1):
    """Single-root collapse: the normalized vector depends only on pi, not d."""
    if d < pi.size():
        raise ValueError("need d >= |pi|")
    inp = {"alpha": alpha.to_json(), "d": d, "pi": pi.to_json(),
           "k_extra": k_extra}
    v1 = _stabsl2_core(alpha, d, pi)
    v2 = _stabsl2_core(alpha, d + k_extra, pi)
    origin = zero_weight(alpha.r)
    for key in list(v1.terms) + list(v2.terms):
        if key.gamma != origin:
            return _report("stabsl2", inp, False,
                           {"reason": "support off the pure-mode subspace"})
    if v1.is_zero():
        return _report("stabsl2", inp, False, {"reason": "vector vanished"})
    want = AffineWeight(origin, 1, -pi.size())
    if weight_of(v1) != want:
        return _report("stabsl2", inp, False,
                       {"reason": "weight", "got": weight_of(v1).to_json(),
                        "want": want.to_json()})
    if v1 != v2:
        return _report("stabsl2", inp, False,
                       {"reason": "depends on d", "v_d": v1.dump_lines(),
                        "v_d_extra": v2.dump_lines()})
    return _report("stabsl2", inp, True)


def _crucprop_collapsed(alpha, d, dprime, pi, mu, g_modes, m):
    """f-vector extracted from x^-_alpha(d,d',pi) T_mu g_m vacuum."""
    r = alpha.r
    w0 = translate.translate_amount(mu, vacuum(r, 0))
    (key0, c0), = w0.terms.items()
    lhs = _apply_block_fast(alpha, d, dprime, pi, key0.gamma,
                            {modes: c0 * c for modes, c in g_modes.items()})
    coc = Cocycle(r)
    sign = coc.comp_eps(mu - d * alpha, d * alpha)
    if (d // 2) % 2:
        sign = -sign
    pulled = translate.translate_amount_inverse(mu - d * alpha, lhs)
    return lhs, sign * pulled


def verify_crucprop(alpha, d, dprime, pi, mu, g_modes, m):
    """Weight formula (always) and the collapse to a translation of a pure-mode
    vector independent of d and d' (when d >= |pi| + m).

    g_modes: dict mode-tuple -> coefficient describing the polynomial whose
    value on the vacuum has weight Lambda_0 - m delta.
    """
    r = alpha.r
    if bilinear(mu, alpha) != d + dprime:
        raise ValueError("need (mu|alpha) = d + d'")
    inp = {"alpha": alpha.to_json(), "d": d, "dprime": dprime,
           "pi": pi.to_json(), "mu": mu.to_json(), "m": m}
    lhs, f_vec = _crucprop_collapsed(alpha, d, dprime, pi, mu, g_modes, m)
    if lhs.is_zero():
        return _report("crucprop", inp, False, {"reason": "vector vanished"})
    target = mu - d * alpha
    i = target.class_index()
    want = expected_weight(r, i, target - fundamental(r, i), pi.size() + m)
    got = weight_of(lhs)
    if got != want:
        return _report("crucprop", inp, False,
                       {"reason": "weight", "got": got.to_json(),
                        "want": want.to_json()})
    if d < pi.size() + m:
        return _report("crucprop", inp, True, {"scope": "weight only"})
    origin = zero_weight(r)
    for key in f_vec.terms:
        if key.gamma != origin:
            return _report("crucprop", inp, False,
                           {"reason": "support off the pure-mode subspace"})
    # reference instance with the smallest admissible d and d'
    d_ref = pi.size() + m
    dp_ref = pi.part(1)
    mu_ref = _mu_with_pairing(alpha, d_ref + dp_ref)
    _, f_ref = _crucprop_collapsed(alpha, d_ref, dp_ref, pi, mu_ref, g_modes, m)
    if f_vec != f_ref:
        return _report("crucprop", inp, False,
                       {"reason": "depends on d or d'",
                        "f": f_vec.dump_lines(), "f_ref": f_ref.dump_lines()})
    return _report("crucprop", inp, True)


def _mu_with_pairing(alpha, value):
    """A dominant weight mu with (mu|alpha) = value, alpha a positive root."""
    lat = alpha.lattice_rep()
    i = lat.index(1) + 1
    return value * fundamental(alpha.r, i)


def weyl_span(lam, steps=1):
    """Chain data: the vectors of each P(lam + j theta) are independent and
    each span embeds in the next one weight space by weight space."""
    r = lam.r
    levels = []
    for j in range(steps + 1):
        lamj = lam + j * theta(r)
        seq = seq_from_fundamental(r, lamj.fundamental_coeffs())
        pops = enumerate_pops(seq)
        vecs = [cl_vector(P, 0) for P in pops]
        levels.append((pops, vecs))
    dims = [len(v) for _, v in levels]
    for j, (pops, vecs) in enumerate(levels):
        if rank_of(vecs) != len(vecs):
            return _report("weyl_span", {"lambda": lam.to_json(), "steps": steps},
                           False, {"reason": "dependent at level %d" % j})
    for j in range(steps):
        lower = levels[j][1]
        upper = levels[j + 1][1]
        by_weight = {}
        for v in upper:
            by_weight.setdefault(weight_of(v), []).append(v)
        for v in lower:
            grp = by_weight.get(weight_of(v), [])
            if not in_span(grp, v):
                return _report("weyl_span",
                               {"lambda": lam.to_json(), "steps": steps}, False,
                               {"reason": "chain inclusion fails at level %d" % j,
                                "weight": weight_of(v).to_json()})
    return _report("weyl_span", {"lambda": lam.to_json(), "steps": steps}, True,
                   {"dims": dims})


def _candidate_lambdas(r, i):
    """Dominant weights with residue class i, by total then lex sequence."""
    total = i if i else r + 1
    if i == 0:
        yield zero_weight(r)
    while True:
        seqs = []

        def rec(prefix, remaining, cap):
            if len(prefix) == r:
                if remaining == 0:
                    seqs.append(tuple(prefix) + (0,))
                return
            for v in range(min(cap, remaining), -1, -1):
                rec(prefix + [v], remaining - v, v)

        rec([], total, total)
        for seq in sorted(seqs):
            yield weight_from_seq(seq)
        total += r + 1


def stable_basis(i, gamma, d):
    """Basis of the weight space t_gamma(Lambda_i) - d delta from POPs of
    depth d at shift k = d, with k-independence checked at k = d + 1.

    lambda is the smallest dominant weight (total then lex sequence) in the
    right coset for which mu is a weight of V(lambda) AND the unshifted
    depth-d set is already full (its cardinality is the colored-partition
    count).  The fullness condition is forced: without it the shifted index
    set picks up members that are not shift images, they fail the diagonal
    bound and the basis genuinely depends on k (observed at rank 2 with the
    zero weight and d = 2)."""
    if gamma.class_index() != 0:
        raise ValueError("gamma must lie in the root lattice")
    r = gamma.r
    mu = fundamental(r, i) + gamma
    expected = colored_partitions(r, d, count_only=True)
    lam = None
    for cand in _candidate_lambdas(r, i):
        if not weight_in_irrep(mu, cand):
            continue
        seq0 = seq_from_fundamental(r, cand.fundamental_coeffs())
        if len(enumerate_pops(seq0, weight=mu, depth_filter=d)) == expected:
            lam = cand
            break
    inp = {"i": i, "gamma": gamma.to_json(), "d": d,
           "lambda_seq": list(seq_from_fundamental(r, lam.fundamental_coeffs()))}

    def build(k):
        lamk = lam + k * theta(r)
        seq = seq_from_fundamental(r, lamk.fundamental_coeffs())
        pops = enumerate_pops(seq, weight=mu, depth_filter=d)
        for P in pops:
            if any(P.d(l, l) < k for l in range(1, r + 1)):
                raise AssertionError("diagonal bound fails in a full set")
        return [cl_vector(P, 0) for P in pops]

    vecs = build(d)
    if len(vecs) != expected:
        return [], _report("stable_basis", inp, False,
                           {"reason": "cardinality", "got": len(vecs),
                            "expected": expected})
    if rank_of(vecs) != len(vecs):
        return [], _report("stable_basis", inp, False,
                           {"reason": "not independent"})
    want = expected_weight(r, i, gamma, d)
    for v in vecs:
        if weight_of(v) != want:
            return [], _report("stable_basis", inp, False,
                               {"reason": "weight", "got": weight_of(v).to_json()})
    vecs_next = build(d + 1)
    key = lambda v: tuple(v.dump_lines())
    if sorted(map(key, vecs)) != sorted(map(key, vecs_next)):
        return [], _report("stable_basis", inp, False,
                           {"reason": "depends on k"})
    return vecs, _report("stable_basis", inp, True, {"size": len(vecs)})
