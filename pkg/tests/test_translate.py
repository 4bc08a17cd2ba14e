import itertools
from fractions import Fraction

import pytest

from popfock.fock import (FockVector, act_chevalley, act_heisenberg,
                          act_root_vector, enumerate_keys, vacuum, weight_of)
from popfock.rootdata import (all_roots, bilinear, fundamental,
                              simple_root, theta, zero_weight)
from popfock.translate import (Cocycle, SignPropagator, cocycle_eps,
                               eps_tilde, translate_Q, translate_amount,
                               translate_fundamental, translate_general,
                               translate_general_inverse)


def units(r, sector=0, emax=2):
    return [FockVector(r, sector, {k: Fraction(1)})
            for k in enumerate_keys(r, sector, emax)]


def test_table_examples():
    a1 = simple_root(2, 1)
    a2 = simple_root(2, 2)
    coc = Cocycle(2)
    assert coc.eps(a1, a1) == -1
    assert coc.eps(zero_weight(2), a2) == 1
    assert coc.eps(a1 + a2, a1) == coc.eps(a1, a1) * coc.eps(a2, a1)
    assert cocycle_eps(a1, a1) == -1


def test_table_matches_design_rule():
    for r in (2, 3):
        coc = Cocycle(r)
        for a in range(1, r + 1):
            for b in range(1, r + 1):
                val = coc.eps(simple_root(r, a), simple_root(r, b))
                if a == b:
                    assert val == -1
                elif a > b:
                    assert val == (-1) ** int(bilinear(simple_root(r, a),
                                                       simple_root(r, b)))
                else:
                    assert val == 1


def test_table_cocycle_invariants():
    r = 2
    coc = Cocycle(r)
    roots_q = [simple_root(r, 1), simple_root(r, 2), theta(r),
               simple_root(r, 1) - simple_root(r, 2), 2 * theta(r)]
    for b in roots_q:
        assert coc.eps(b, b) == (-1) ** (int(bilinear(b, b)) // 2)
        for bp in roots_q:
            asym = coc.eps(b, bp) * coc.eps(bp, b)
            assert asym == (-1) ** int(bilinear(b, bp))
            for bpp in roots_q:
                assert coc.eps(b + bpp, bp) == coc.eps(b, bp) * coc.eps(bpp, bp)


def test_table_drop_rule():
    # the fundamental-weight part of the first argument is dropped
    r = 2
    coc = Cocycle(r)
    for i in range(r + 1):
        varpi = fundamental(r, i)
        for b in [zero_weight(r), simple_root(r, 1), theta(r)]:
            for bp in [simple_root(r, 1), simple_root(r, 2)]:
                assert coc.eps(b + varpi, bp) == coc.eps(b, bp)


def test_comp_eps_is_the_composition_constant():
    for r in (1, 2):
        coc = Cocycle(r)
        vs = units(r)[:5]
        qball = [zero_weight(r), simple_root(r, 1), -simple_root(r, 1),
                 theta(r), 2 * simple_root(r, 1)]
        if r == 2:
            qball += [simple_root(r, 2), simple_root(r, 1) + theta(r)]
        for b1, b2 in itertools.product(qball, qball):
            sg = coc.comp_eps(b1, b2)
            for v in vs:
                assert translate_Q(b1, translate_Q(b2, v)) == \
                    sg * translate_Q(b1 + b2, v)


def test_comp_eps_asymmetry_and_inverse_normalization():
    for r in (1, 2):
        coc = Cocycle(r)
        qball = [simple_root(r, 1), theta(r), 2 * simple_root(r, 1)]
        for b in qball:
            assert coc.comp_eps(b, -b) == 1  # T_b T_{-b} = id
            for bp in qball:
                asym = coc.comp_eps(b, bp) * coc.comp_eps(bp, b)
                assert asym == (-1) ** int(bilinear(b, bp))


def test_comp_eps_errors():
    coc = Cocycle(2)
    with pytest.raises(ValueError):
        coc.comp_eps(zero_weight(2), fundamental(2, 1))


def test_translate_Q_examples():
    v0 = vacuum(1, 0)
    a = simple_root(1, 1)
    assert translate_Q(zero_weight(1), v0) == v0
    w = translate_Q(a, v0)
    (key,) = w.terms
    assert key.gamma == a and abs(w.terms[key]) == 1
    for v in units(1)[:10]:
        assert translate_Q(a, translate_Q(-a, v)) == v


def test_translate_weight_transport():
    for r in (1, 2):
        for b in [simple_root(r, 1), theta(r), -theta(r)]:
            for v in units(r)[:8]:
                nu = weight_of(v)
                w = translate_Q(b, v)
                got = weight_of(w)
                # finite part shifts by b, energy shifts by the quadratic form
                assert got.finite == nu.finite + b
                assert got.delta == nu.delta - bilinear(nu.finite, b) \
                    - bilinear(b, b) / 2


def test_conjugation_no_extra_sign():
    for r in (1, 2):
        betas = [simple_root(r, a) for a in range(1, r + 1)] + [theta(r)]
        for b in betas + [-x for x in betas]:
            for al in all_roots(r):
                shift = int(bilinear(b, al))
                for s in (-1, 0, 1):
                    for v in units(r)[:5]:
                        lhs = translate_Q(b, act_root_vector(
                            al, s, translate_Q(-b, v)))
                        assert lhs == act_root_vector(al, s - shift, v)


def test_commutes_with_heisenberg():
    for r in (1, 2):
        for b in [simple_root(r, 1), theta(r)]:
            for a in range(1, r + 1):
                for n in (-2, -1, 1, 2):
                    for v in units(r)[:5]:
                        assert translate_Q(b, act_heisenberg(a, n, v)) == \
                            act_heisenberg(a, n, translate_Q(b, v))


def test_adjoint_on_cartan_zero_mode():
    # T_b h(0) T_{-b} = h(0) - (b|h) at level one
    r = 2
    b = theta(r)
    for a in (1, 2):
        pair = Fraction(bilinear(b, simple_root(r, a)))
        for v in units(r)[:5]:
            lhs = translate_Q(b, act_heisenberg(a, 0, translate_Q(-b, v)))
            assert lhs == act_heisenberg(a, 0, v) - pair * v


def test_fundamental_vacuum_and_inverse():
    for r in (1, 2):
        for i in range(r + 1):
            assert translate_fundamental(i, vacuum(r, 0), +1) == vacuum(r, i)
            for v in units(r)[:8]:
                w = translate_fundamental(i, v, +1)
                assert translate_fundamental(i, w, -1) == v
    with pytest.raises(ValueError):
        translate_fundamental(1, vacuum(2, 2), +1)


def test_fundamental_weight_transport():
    for r in (1, 2):
        for i in range(1, r + 1):
            varpi = fundamental(r, i)
            for v in units(r)[:8]:
                nu = weight_of(v)
                got = weight_of(translate_fundamental(i, v, +1))
                assert got.finite == nu.finite + varpi
                assert got.delta == nu.delta - bilinear(nu.finite, varpi)


def test_fundamental_intertwining_table():
    # conjugation sends e_i to e_i t, e_0 to x_{-theta}, fixes other e_p
    for r in (1, 2):
        for i in range(1, r + 1):
            for p in range(r + 1):
                for v in units(r)[:5]:
                    inner = act_chevalley(p, "e",
                                          translate_fundamental(i, v, +1))
                    lhs = translate_fundamental(i, inner, -1)
                    if p == i:
                        rhs = act_root_vector(simple_root(r, i), 1, v)
                    elif p == 0:
                        rhs = act_root_vector(-theta(r), 0, v)
                    else:
                        rhs = act_chevalley(p, "e", v)
                    assert lhs == rhs


def test_sign_propagator_path_independence():
    for r in (1, 2):
        for i in range(1, r + 1):
            prop = SignPropagator(r, i)
            varpi_lat = fundamental(r, i).lattice_rep()
            steps = []
            seen = [zero_weight(r)]
            frontier = [zero_weight(r)]
            for _ in range(3):
                new = []
                for g in frontier:
                    for a in range(1, r + 1):
                        for sgn in (1, -1):
                            mu = sgn * simple_root(r, a)
                            ratio = eps_tilde(mu.lattice_rep(), varpi_lat)
                            steps.append((g, mu, ratio))
                            t = g + mu
                            if t not in seen:
                                seen.append(t)
                                new.append(t)
                frontier = new
            derived = prop.verify(steps)
            assert prop.consistent
            assert len(derived) == len(seen)


def test_translate_general_well_defined():
    # the same amount through different (lam, beta) pairs gives one operator
    r = 2
    lam1 = fundamental(r, 1)
    lam2 = fundamental(r, 1) + theta(r)
    for v in units(r)[:6]:
        a = translate_general(lam1, zero_weight(r), v)
        b = translate_general(lam2, theta(r), v)
        assert a == b
        assert translate_general_inverse(lam1, zero_weight(r), a) == v


def test_translate_general_examples():
    r = 2
    v0 = vacuum(r, 0)
    assert translate_amount(zero_weight(r), v0) == v0
    lam = fundamental(r, 1) + fundamental(r, 2)
    w = translate_general(lam, zero_weight(r), v0)
    nu = weight_of(w)
    assert nu.finite == lam
    with pytest.raises(ValueError):
        translate_general(lam, fundamental(r, 1), v0)  # beta not in Q
    with pytest.raises(ValueError):
        translate_general(lam, zero_weight(r), vacuum(r, 1))


def test_translate_general_composition_and_conjugation():
    for r in (1, 2):
        coc = Cocycle(r)
        doms = [zero_weight(r), fundamental(r, 1), 2 * fundamental(r, 1)]
        if r == 2:
            doms.append(fundamental(r, 1) + fundamental(r, 2))
        betas = [zero_weight(r), simple_root(r, 1), -simple_root(r, 1)]
        alphas = [simple_root(r, a) for a in range(1, r + 1)] + [theta(r)]
        for lam in doms:
            for beta in betas:
                for al in alphas:
                    for d in (0, 1, 2):
                        sg = coc.comp_eps(lam - beta - d * al, d * al)
                        for v in units(r)[:3]:
                            lhs = translate_general(
                                lam, beta + d * al, translate_Q(d * al, v))
                            assert lhs == sg * translate_general(lam, beta, v)
                x = lam - beta
                for al in alphas:
                    sh = int(bilinear(x, al))
                    for s in (-1, 0, 1):
                        for v in units(r)[:3]:
                            lhs = translate_general_inverse(
                                lam, beta, act_root_vector(
                                    -al, s, translate_general(lam, beta, v)))
                            assert lhs == act_root_vector(-al, s - sh, v)


def test_table_dump_and_hash():
    coc = Cocycle(2)
    dump = coc.table_dump()
    assert "rank=2" in dump and "eps(a_1, .)" in dump
    assert len(coc.table_hash()) == 64
    assert Cocycle(2).table_hash() == coc.table_hash()
