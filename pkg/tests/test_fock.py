import itertools
import random
from fractions import Fraction

import pytest

from popfock.fock import (FockKey, FockVector, act_chevalley, act_heisenberg,
                          act_root_vector, apply_poly, enumerate_keys,
                          expected_weight, graded_dim, mode_monomial, vacuum,
                          weight_of, weight_space_keys, zero_vector)
from popfock.partitions import colored_partitions
from popfock.rootdata import (AffineWeight, all_roots, bilinear,
                              fundamental, simple_root, zero_weight)
from popfock.cli import bracket_expected


def unit(key):
    return FockVector(key.gamma.r, key.sector, {key: Fraction(1)})


def test_vacuum_and_key_basics():
    v = vacuum(2, 0)
    (key,) = v.terms
    assert key.gamma == zero_weight(2) and key.modes == ()
    assert key.energy() == 0
    v1 = vacuum(2, 1)
    (key1,) = v1.terms
    assert key1.gamma == fundamental(2, 1)
    assert key1.energy() == 0


def test_key_energy_integral_and_nonneg():
    # the lattice part of the energy is a nonnegative integer on every coset
    for r in (1, 2):
        for i in range(r + 1):
            for key in enumerate_keys(r, i, 3):
                assert key.energy() >= 0
    with pytest.raises(ValueError):
        FockKey(zero_weight(2), ((3, 1),))  # direction out of range
    with pytest.raises(ValueError):
        FockKey(zero_weight(2), ((1, 0),))  # mode degree must be positive


def test_highest_weight_relations():
    for r in (1, 2):
        for i in range(r + 1):
            v = vacuum(r, i)
            for p in range(r + 1):
                assert act_chevalley(p, "e", v).is_zero()
                fv = act_chevalley(p, "f", v)
                power = (1 if p == i else 0) + 1
                w = v
                for _ in range(power):
                    w = act_chevalley(p, "f", w)
                assert w.is_zero()
                if p != i:
                    assert fv.is_zero()
                else:
                    assert not fv.is_zero()


def test_f1_squared_on_vacuum_rank1():
    v = vacuum(1, 0)
    w = act_root_vector(-simple_root(1, 1), -1, v)
    w = act_root_vector(-simple_root(1, 1), -1, w)
    assert w.is_zero()


def test_heisenberg_examples():
    v = vacuum(1, 0)
    assert act_heisenberg(1, 1, v).is_zero()
    w = act_heisenberg(1, -1, v)
    assert act_heisenberg(1, 1, w) == 2 * v
    # alpha_1(0) on the key gamma = alpha_1 scales by (a1|a1) = 2
    u = act_root_vector(simple_root(1, 1), -1, v)  # key gamma = a1
    assert act_heisenberg(1, 0, u) == 2 * u


def test_heisenberg_cross_direction():
    v = vacuum(2, 0)
    w = act_heisenberg(1, -1, v)
    assert act_heisenberg(2, 1, w) == -1 * v
    assert act_heisenberg(1, 2, w).is_zero()


def test_root_vector_examples():
    v = vacuum(1, 0)
    a = simple_root(1, 1)
    assert act_root_vector(-a, 0, v).is_zero()
    # f_0 reaches the extremal line, and lowering from it returns to vacuum
    w = act_root_vector(a, -1, v)
    assert len(w.terms) == 1
    back = act_root_vector(-a, 1, w)
    assert back == v or back == -1 * v
    assert act_root_vector(a, 0, zero_vector(1, 0)).is_zero()


def test_root_vector_weight_transport():
    for r in (1, 2):
        keys = enumerate_keys(r, 0, 2)
        for al in all_roots(r):
            for s in (-1, 0, 1):
                for key in keys[:12]:
                    out = act_root_vector(al, s, unit(key))
                    if out.is_zero():
                        continue
                    got = weight_of(out)
                    want = AffineWeight(key.gamma + al, 1,
                                        -(key.energy() - s))
                    assert got == want


def test_bracket_relations_small():
    for r in (1, 2):
        keys = enumerate_keys(r, 0, 2)[:10]
        roots = all_roots(r)
        for al, be in itertools.product(roots, roots):
            for s1, s2 in itertools.product((-1, 0, 1), repeat=2):
                for key in keys:
                    v = unit(key)
                    lhs = (act_root_vector(al, s1, act_root_vector(be, s2, v))
                           - act_root_vector(be, s2, act_root_vector(al, s1, v)))
                    assert lhs == bracket_expected(al, be, s1, s2, v)


def test_heisenberg_root_bracket():
    # [h_a(n), x_al(m)] = (a|al) x_al(n+m)
    r = 2
    keys = enumerate_keys(r, 0, 2)[:8]
    for a in (1, 2):
        ha = simple_root(r, a)
        for al in all_roots(r):
            pair = int(bilinear(ha, al))
            for n in (-1, 1):
                for m in (-1, 0, 1):
                    for key in keys:
                        v = unit(key)
                        lhs = (act_heisenberg(a, n, act_root_vector(al, m, v))
                               - act_root_vector(al, m, act_heisenberg(a, n, v)))
                        rhs = pair * act_root_vector(al, n + m, v)
                        assert lhs == rhs


def test_weight_of_examples():
    # vacuum(i) sits at Lambda_i; a bare lattice key at the translated
    # extremal weight; a pure mode key at Lambda_0 - (mode sum) delta
    for r in (1, 2):
        for i in range(r + 1):
            assert weight_of(vacuum(r, i)) == AffineWeight(fundamental(r, i), 1, 0)
    a = simple_root(1, 1)
    key = FockKey(a)
    assert weight_of(unit(key)) == AffineWeight(a, 1, -1)
    key = FockKey(zero_weight(1), ((1, 2),))
    assert weight_of(unit(key)) == AffineWeight(zero_weight(1), 1, -2)


def test_weight_of_errors():
    v = vacuum(1, 0) + act_heisenberg(1, -1, vacuum(1, 0))
    with pytest.raises(ValueError):
        weight_of(v)
    with pytest.raises(ValueError):
        weight_of(zero_vector(1, 0))


def test_graded_dim_examples():
    assert graded_dim(1, 0, zero_weight(1), 2) == 2
    assert graded_dim(2, 0, zero_weight(2), 2) == 5
    assert graded_dim(2, 1, simple_root(2, 1), 0) == 1


def test_graded_dim_matches_colored_partitions():
    from popfock.cli import gamma_ball
    for r in (1, 2):
        for i in range(r + 1):
            for gq in gamma_ball(r, 8):
                for m in range(5):
                    assert graded_dim(r, i, gq, m) == \
                        colored_partitions(r, m, count_only=True)


def test_weight_space_keys_consistent():
    for r in (1, 2):
        for m in range(4):
            keys = weight_space_keys(r, 0, zero_weight(r), m)
            assert len(keys) == graded_dim(r, 0, zero_weight(r), m)
            for key in keys:
                assert weight_of(unit(key)) == expected_weight(
                    r, 0, zero_weight(r), m)


def test_pure_mode_spaces_span_imaginary_weight_spaces():
    # every key of weight Lambda_0 - m delta is a mode monomial on the vacuum
    for r in (1, 2):
        for m in range(5):
            for key in weight_space_keys(r, 0, zero_weight(r), m):
                assert key.gamma == zero_weight(r)
                assert key.mode_sum() == m


def lem1_rhs(alpha, p, hqs, v):
    """Expanded right side of the single-factor exchange identity."""
    n = len(hqs)
    out = zero_vector(v.r, v.sector)
    for picks in itertools.product((0, 1), repeat=n):
        coeff = Fraction(1)
        shift = 0
        w = v
        for (b, q), take in zip(reversed(hqs), reversed(picks)):
            if take:
                coeff *= bilinear(alpha, simple_root(v.r, b))
                shift += q
        if coeff == 0:
            continue
        w = act_root_vector(-alpha, p - shift, w)
        for (b, q), take in zip(reversed(hqs), reversed(picks)):
            if not take:
                w = act_heisenberg(b, -q, w)
        out = out + coeff * w
    return out


def test_lemma_exchange_single_factor():
    random.seed(11)
    for r in (1, 2):
        keys = enumerate_keys(r, 0, 2)
        pos = [a for a in all_roots(r)
               if a.lattice_rep().index(1) < a.lattice_rep().index(-1)]
        for _ in range(40):
            alpha = random.choice(pos)
            p = random.randint(0, 3)
            hqs = [(random.randint(1, r), random.randint(1, 2))
                   for _ in range(random.randint(1, 2))]
            key = random.choice(keys)
            v = unit(key)
            lhs = v
            for b, q in reversed(hqs):
                lhs = act_heisenberg(b, -q, lhs)
            lhs = act_root_vector(-alpha, p, lhs)
            assert lhs == lem1_rhs(alpha, p, hqs, v)


def test_lemma_exchange_multi_factor():
    # two lowering factors through a two-mode monomial, via slot assignments
    random.seed(12)
    for r in (1, 2):
        keys = enumerate_keys(r, 0, 1)
        pos = [a for a in all_roots(r)
               if a.lattice_rep().index(1) < a.lattice_rep().index(-1)]
        for _ in range(25):
            alpha = random.choice(pos)
            ps = [random.randint(0, 2) for _ in range(2)]
            hqs = [(random.randint(1, r), random.randint(1, 2))
                   for _ in range(2)]
            key = random.choice(keys)
            v = unit(key)
            lhs = v
            for b, q in reversed(hqs):
                lhs = act_heisenberg(b, -q, lhs)
            for p in reversed(ps):
                lhs = act_root_vector(-alpha, p, lhs)
            rhs = zero_vector(r, v.sector)
            for assign in itertools.product(range(len(ps) + 1),
                                            repeat=len(hqs)):
                coeff = Fraction(1)
                new_ps = list(ps)
                kept = []
                for (b, q), slot in zip(hqs, assign):
                    if slot == 0:
                        kept.append((b, q))
                    else:
                        coeff *= bilinear(alpha, simple_root(r, b))
                        new_ps[slot - 1] -= q
                if coeff == 0:
                    continue
                w = v
                for p in reversed(new_ps):
                    w = act_root_vector(-alpha, p, w)
                for b, q in reversed(kept):
                    w = act_heisenberg(b, -q, w)
                rhs = rhs + coeff * w
            assert lhs == rhs


def test_apply_poly():
    v = vacuum(2, 0)
    g = {((1, 1), (2, 2)): Fraction(3), (): Fraction(1, 2)}
    w = apply_poly(g, v)
    assert len(w.terms) == 2
    m = mode_monomial(2, ((1, 1), (2, 2)), 3)
    assert w == m + Fraction(1, 2) * v


def test_dump_lines_stable():
    v = vacuum(1, 0) + act_heisenberg(1, -2, vacuum(1, 0))
    lines = v.dump_lines()
    assert lines == ["gamma=0,0 modes=[] coeff=1/1",
                     "gamma=0,0 modes=[(1,2)x1] coeff=1/1"]
