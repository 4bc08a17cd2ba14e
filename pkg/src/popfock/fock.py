"""Exact lattice Fock model of the level-one modules of affine sl_{r+1}.

The sector-i module is realized on the span of keys (gamma, modes) with gamma
in varpi_i + Q and modes a multiset of creation labels (a, n), a a simple-root
direction and n >= 1.  Root vectors act through vertex operators; since source
and target weight spaces are finite dimensional, every coefficient extraction
is a finite exact computation over the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .rootdata import (AffineWeight, FiniteWeight, bilinear, fundamental,
                       is_positive_root, is_root, simple_root, theta,
                       zero_weight)
from .translate import eps_tilde


class FockKey:
    """Basis key: lattice point gamma in varpi_i + Q plus a creation multiset.

    modes is a sorted tuple of (direction, n) pairs with repetition; the
    energy (lattice part plus mode sum) is a nonnegative integer by
    construction and is asserted at creation.
    """

    __slots__ = ("gamma", "modes", "sector", "_hash")

    def __init__(self, gamma, modes=()):
        modes = tuple(sorted((int(a), int(n)) for a, n in modes))
        for a, n in modes:
            if not (1 <= a <= gamma.r and n >= 1):
                raise ValueError("bad mode (%d, %d)" % (a, n))
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "sector", gamma.class_index())
        object.__setattr__(self, "_hash", hash((gamma, modes)))
        if self.energy() < 0:
            raise AssertionError("negative energy key")

    def __setattr__(self, name, value):
        raise AttributeError("FockKey is immutable")

    def __eq__(self, other):
        return (isinstance(other, FockKey) and self.gamma == other.gamma
                and self.modes == other.modes)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "FockKey(%r, %r)" % (self.gamma, list(self.modes))

    def sort_key(self):
        return (self.gamma.lattice_rep(), self.modes)

    def mode_sum(self):
        return sum(n for _, n in self.modes)

    def energy(self):
        i = self.sector
        lat2 = bilinear(self.gamma, self.gamma) - bilinear(
            fundamental(self.gamma.r, i), fundamental(self.gamma.r, i))
        e = lat2 / 2 + self.mode_sum()
        if e.denominator != 1:
            raise AssertionError("non-integral energy")
        return int(e)

    def mode_multiplicities(self):
        out = {}
        for m in self.modes:
            out[m] = out.get(m, 0) + 1
        return out


class FockVector:
    """Finite sparse rational combination of keys, all in one sector."""

    __slots__ = ("r", "sector", "terms")

    def __init__(self, r, sector, terms=None):
        clean = {}
        for key, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if key.sector != sector or key.gamma.r != r:
                raise ValueError("key sector/rank mismatch")
            clean[key] = coeff
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "sector", sector)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FockVector is immutable")

    def __eq__(self, other):
        return (isinstance(other, FockVector) and self.r == other.r
                and self.sector == other.sector and self.terms == other.terms)

    def __hash__(self):
        return hash((self.r, self.sector,
                     tuple(sorted(self.terms.items(),
                                  key=lambda kv: kv[0].sort_key()))))

    def __repr__(self):
        return "FockVector(r=%d, sector=%d, %d terms)" % (
            self.r, self.sector, len(self.terms))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._compat(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return FockVector(self.r, self.sector, terms)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return FockVector(self.r, self.sector,
                          {k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return (-1) * self

    def _compat(self, other):
        if self.r != other.r or self.sector != other.sector:
            raise ValueError("vector sector/rank mismatch")

    def lattice_shift(self, beta, sign_fn):
        """Key-wise gamma -> gamma + beta with a per-key sign; modes unchanged."""
        terms = {}
        for key, coeff in self.terms.items():
            s = sign_fn(key.gamma.lattice_rep())
            nk = FockKey(key.gamma + beta, key.modes)
            terms[nk] = terms.get(nk, 0) + coeff * s
        new_sector = (self.sector + sum(beta.lattice_rep())) % (self.r + 1)
        return FockVector(self.r, new_sector, terms)

    def dump_lines(self):
        """Stable textual dump, one line per term."""
        lines = []
        for key in sorted(self.terms, key=lambda k: k.sort_key()):
            coeff = self.terms[key]
            mults = key.mode_multiplicities()
            modes = ",".join("(%d,%d)x%d" % (a, n, m)
                             for (a, n), m in sorted(mults.items()))
            lines.append("gamma=%s modes=[%s] coeff=%d/%d" % (
                ",".join(str(c) for c in key.gamma.lattice_rep()), modes,
                coeff.numerator, coeff.denominator))
        return lines


def zero_vector(r, sector=0):
    return FockVector(r, sector, {})


def vacuum(r, i=0):
    """Highest weight vector of the sector-i module: gamma = varpi_i, no modes."""
    if not 0 <= i <= r:
        raise ValueError("sector out of range")
    return FockVector(r, i, {FockKey(fundamental(r, i)): Fraction(1)})


def mode_monomial(r, modes, coeff=1):
    """Pure mode monomial applied to the sector-0 vacuum; weight L0 - m delta."""
    return FockVector(r, 0, {FockKey(zero_weight(r), tuple(modes)): Fraction(coeff)})


def act_heisenberg(a, n, v):
    """Action of alpha_a(n): creation for n < 0, annihilation for n > 0,
    diagonal pairing (gamma | alpha_a) for n = 0; level one throughout."""
    r = v.r
    if not 1 <= a <= r:
        raise ValueError("direction out of range")
    alpha = simple_root(r, a)
    terms = {}
    if n == 0:
        for key, coeff in v.terms.items():
            val = bilinear(key.gamma, alpha)
            if val:
                terms[key] = terms.get(key, 0) + coeff * val
    elif n < 0:
        for key, coeff in v.terms.items():
            nk = FockKey(key.gamma, key.modes + ((a, -n),))
            terms[nk] = terms.get(nk, 0) + coeff
    else:
        for key, coeff in v.terms.items():
            mults = key.mode_multiplicities()
            for (b, m), mult in mults.items():
                if m != n:
                    continue
                pair = bilinear(alpha, simple_root(r, b))
                if pair == 0:
                    continue
                reduced = list(key.modes)
                reduced.remove((b, m))
                nk = FockKey(key.gamma, tuple(reduced))
                terms[nk] = terms.get(nk, 0) + coeff * n * pair * mult
    return FockVector(r, v.sector, terms)


def _alpha_simple_coeffs(alpha):
    """Coefficients of alpha in the simple-root basis via partial sums."""
    lat = alpha.lattice_rep()
    acc = 0
    out = []
    for c in lat[:-1]:
        acc += c
        out.append(acc)
    return tuple(out)


@lru_cache(maxsize=None)
def _creation_terms(r, alpha_coords, degree):
    """Coefficient of z^degree in exp(sum_n alpha(-n) z^n / n): list of
    (mode tuple, Fraction) in the monomial mode basis."""
    alpha = FiniteWeight(r, alpha_coords)
    cs = _alpha_simple_coeffs(alpha)
    # polynomial in z, coefficients are dicts mode-tuple -> Fraction
    poly = [dict() for _ in range(degree + 1)]
    poly[0][()] = Fraction(1)
    for n in range(1, degree + 1):
        # multiply by exp(alpha(-n) z^n / n), truncated at z^degree
        base = [dict(p) for p in poly]
        power = {(): Fraction(1)}  # alpha(-n)^j / (n^j j!) expanded
        for j in range(1, degree // n + 1):
            new_power = {}
            for modes, c in power.items():
                for b in range(1, r + 1):
                    if cs[b - 1] == 0:
                        continue
                    nm = tuple(sorted(modes + ((b, n),)))
                    new_power[nm] = new_power.get(nm, 0) + c * cs[b - 1]
            power = {m: c / (n * j) for m, c in new_power.items()}
            for deg in range(0, degree + 1 - n * j):
                src = base[deg]
                if not src:
                    continue
                dst = poly[deg + n * j]
                for m1, c1 in src.items():
                    for m2, c2 in power.items():
                        nm = tuple(sorted(m1 + m2))
                        prev = dst.get(nm, 0)
                        val = prev + c1 * c2
                        if val:
                            dst[nm] = val
                        elif nm in dst:
                            del dst[nm]
    return tuple((m, c) for m, c in sorted(poly[degree].items()) if c)


def _annihilation_terms(r, alpha, key):
    """Expansion of the annihilation exponential against the key's modes:
    list of (kept modes tuple, coefficient, annihilated degree)."""
    pairs = []
    for (b, n), mult in sorted(key.mode_multiplicities().items()):
        c = bilinear(alpha, simple_root(r, b))
        pairs.append(((b, n), mult, -c))
    results = [((), Fraction(1), 0)]
    for (b, n), mult, c in pairs:
        new = []
        for kept, coeff, deg in results:
            for j in range(mult + 1):
                if j and c == 0:
                    break
                w = coeff * comb(mult, j) * (c ** j if j else 1)
                new.append((kept + ((b, n),) * (mult - j), w, deg + j * n))
        results = new
    return results


_ROOT_ACTION_CACHE = {}


def _act_root_on_key(r, alpha, s, key):
    """x_alpha (x) t^s applied to a single key; cached."""
    ck = (alpha, s, key)
    hit = _ROOT_ACTION_CACHE.get(ck)
    if hit is not None:
        return hit
    eta = 1 if is_positive_root(alpha) else -1
    alpha_lat = alpha.lattice_rep()
    gamma_lat = key.gamma.lattice_rep()
    p0 = bilinear(alpha, key.gamma)
    assert p0.denominator == 1
    base = -s - 1 - int(p0)
    sign0 = eta * eps_tilde(alpha_lat, gamma_lat)
    new_gamma = key.gamma + alpha
    out = {}
    for kept, acoef, adeg in _annihilation_terms(r, alpha, key):
        cdeg = base + adeg
        if cdeg < 0 or acoef == 0:
            continue
        for created, ccoef in _creation_terms(r, alpha.coords, cdeg):
            nk = FockKey(new_gamma, kept + created)
            val = out.get(nk, 0) + sign0 * acoef * ccoef
            if val:
                out[nk] = val
            elif nk in out:
                del out[nk]
    _ROOT_ACTION_CACHE[ck] = out
    return out


def act_root_vector(alpha, s, v):
    """Action of the root vector x_alpha (x) t^s on a vector.

    alpha must be a root; the output lies in the weight space shifted by
    alpha + s delta.  Signs follow the fixed lattice sign table, with negative
    root vectors carrying the opposite normalization so the brackets of the
    matrix realization hold on the nose.
    """
    if not is_root(alpha):
        raise ValueError("alpha is not a root")
    terms = {}
    for key, coeff in v.terms.items():
        for nk, c in _act_root_on_key(v.r, alpha, s, key).items():
            val = terms.get(nk, 0) + coeff * c
            if val:
                terms[nk] = val
            elif nk in terms:
                del terms[nk]
    return FockVector(v.r, v.sector, terms)


def act_chevalley(p, kind, v):
    """Chevalley generators: e_0 = x^-_{1,r} (x) t, f_0 = x^+_{1,r} (x) t^{-1},
    e_i = x^+_{i,i}, f_i = x^-_{i,i}."""
    r = v.r
    if not 0 <= p <= r:
        raise ValueError("Chevalley index out of range")
    if kind not in ("e", "f"):
        raise ValueError("kind must be 'e' or 'f'")
    if p == 0:
        alpha, s = (-theta(r), 1) if kind == "e" else (theta(r), -1)
    else:
        alpha, s = (simple_root(r, p), 0) if kind == "e" else (-simple_root(r, p), 0)
    return act_root_vector(alpha, s, v)


def weight_of(v):
    """Affine weight of a homogeneous vector (same gamma and energy on all keys)."""
    if v.is_zero():
        raise ValueError("zero vector has no weight")
    keys = list(v.terms)
    gamma = keys[0].gamma
    energy = keys[0].energy()
    for k in keys[1:]:
        if k.gamma != gamma or k.energy() != energy:
            raise ValueError("vector is not homogeneous")
    return AffineWeight(gamma, 1, -energy).assert_integral()


def expected_weight(r, i, gamma_q, m):
    """Weight t_{gamma}(Lambda_i) - m delta in the artifact normalization:
    Lambda_0 + (varpi_i + gamma) - (lattice energy + m) delta."""
    g = fundamental(r, i) + gamma_q
    lat2 = bilinear(g, g) - bilinear(fundamental(r, i), fundamental(r, i))
    e0 = lat2 / 2
    return AffineWeight(g, 1, -(e0 + m)).assert_integral()


def _mode_multisets(r, total):
    """All creation multisets with the given total degree, deterministic order."""
    labels = [(a, n) for n in range(1, total + 1) for a in range(1, r + 1)]

    def rec(idx, remaining):
        if remaining == 0:
            yield ()
            return
        if idx == len(labels):
            return
        a, n = labels[idx]
        max_count = remaining // n
        for count in range(max_count + 1):
            for rest in rec(idx + 1, remaining - count * n):
                yield ((a, n),) * count + rest

    if total == 0:
        return [()]
    return sorted(set(rec(0, total)))


def graded_dim(r, i, gamma_q, m):
    """Dimension of the weight space t_gamma(Lambda_i) - m delta: the number
    of keys with lattice point varpi_i + gamma and mode sum m."""
    if gamma_q.class_index() != 0:
        raise ValueError("gamma must lie in the root lattice")
    if m < 0:
        return 0
    return len(_mode_multisets(r, m))


def weight_space_keys(r, i, gamma_q, m):
    g = fundamental(r, i) + gamma_q
    return [FockKey(g, modes) for modes in _mode_multisets(r, m)]


def enumerate_keys(r, i, emax):
    """All keys of the sector-i module with energy at most emax."""
    n = r + 1
    varpi = fundamental(r, i)
    w2 = bilinear(varpi, varpi)
    bound = 2 * emax + w2
    box = int(bound) + 2
    points = []

    def rec(idx, acc, total):
        if idx == n:
            if (total - i) % n == 0 and total == i:
                fw = FiniteWeight(r, acc)
                lat2 = bilinear(fw, fw) - w2
                if lat2 / 2 <= emax:
                    points.append((fw, int(lat2 / 2)))
            return
        for c in range(-box, box + 1):
            rec(idx + 1, acc + [c], total + c)

    rec(0, [], 0)
    keys = []
    for fw, e0 in sorted(points, key=lambda t: t[0].lattice_rep()):
        for m in range(emax - e0 + 1):
            for modes in _mode_multisets(r, m):
                keys.append(FockKey(fw, modes))
    return keys


def apply_poly(terms, v):
    """Apply a polynomial in Heisenberg modes given as {modes tuple: coeff}."""
    out = zero_vector(v.r, v.sector)
    for modes, coeff in terms.items():
        w = v * coeff
        for a, n in reversed(modes):
            w = act_heisenberg(a, -n, w)
        out = out + w
    return out
