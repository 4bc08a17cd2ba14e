"""Command-line front end: enumeration, model construction, verification
suites; reports as JSON lines, exit 0 iff every check passes.

Each invocation runs at one rank (--r); the report stream is deterministic
for a fixed configuration.  --jobs is validated and reserved; checks are
independent but currently run sequentially in input order.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import clbasis, fock, gtpattern, pop, translate
from .partitions import colored_partitions
from .pop import POP, enumerate_pops, is_stable, depth_total
from .rootdata import (FiniteWeight, all_roots, bilinear, fundamental,
                       seq_from_fundamental, simple_root, theta,
                       weight_from_seq, zero_weight)
from .translate import Cocycle


class UsageError(Exception):
    pass


def _parse_lambda(text, r=None):
    try:
        seq = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("--lambda must be a comma-separated integer sequence")
    if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
        raise UsageError("--lambda must be weakly decreasing")
    if seq[-1] != 0:
        raise UsageError("--lambda must end in 0")
    if r is not None and len(seq) != r + 1:
        raise UsageError("--lambda must have r+1 entries")
    return seq


class RunConfig:
    """Validated run configuration for one CLI invocation."""

    def __init__(self, command, suite=None, r=1, lam=None, kmax=2, depth=None,
                 sector=None, gamma=None, out=None, jobs=1,
                 cocycle_table=False, pop_json=None, k=0, m=0):
        if r < 1:
            raise UsageError("--r must be at least 1")
        if kmax < 0 or (depth is not None and depth < 0):
            raise UsageError("bounds must be nonnegative")
        if jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if sector is not None and not 0 <= sector <= r:
            raise UsageError("--sector out of range")
        self.command = command
        self.suite = suite
        self.r = r
        self.lam = lam
        self.kmax = kmax
        self.depth = depth
        self.sector = sector
        self.gamma = gamma
        self.out = out
        self.jobs = jobs
        self.cocycle_table = cocycle_table
        self.pop_json = pop_json
        self.k = k
        self.m = m


def parse_config(argv):
    parser = argparse.ArgumentParser(
        prog="popfock",
        description="Exact verification suite for partition overlaid patterns "
                    "and the level-one lattice Fock model.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--r", type=int, default=1, help="rank of sl_{r+1}")
        p.add_argument("--lambda", dest="lam", type=str, default=None,
                       help="dominant weight as its sequence, e.g. 2,1,0")
        p.add_argument("--kmax", type=int, default=2,
                       help="largest shift in stability checks")
        p.add_argument("--depth", type=int, default=None,
                       help="depth bound (or energy bound for brackets)")
        p.add_argument("--sector", type=int, default=None,
                       help="restrict to one level-one module")
        p.add_argument("--gamma", type=str, default=None,
                       help="root lattice element as comma-separated "
                            "simple-root coefficients")
        p.add_argument("--out", type=str, default=None,
                       help="write the report to a file")
        p.add_argument("--jobs", type=int, default=1,
                       help="reserved; checks run sequentially")
        p.add_argument("--cocycle-table", action="store_true",
                       help="append the sign table to the report")

    p_enum = sub.add_parser("enumerate", help="enumerate combinatorial objects")
    p_enum.add_argument("what", choices=["patterns", "pops", "colored"])
    common(p_enum)
    p_enum.add_argument("--m", type=int, default=0,
                        help="size for colored partitions")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=[
        "identities", "dims", "brackets", "translate", "weights",
        "stability", "mtp", "chain", "basis"])
    common(p_verify)

    p_dump = sub.add_parser("dump", help="dump the cocycle table or a vector")
    p_dump.add_argument("what", choices=["cocycle", "vector"])
    common(p_dump)
    p_dump.add_argument("--pop", type=str, default=None,
                        help="POP as JSON {\"rows\":..., \"overlay\":...}")
    p_dump.add_argument("--k", type=int, default=0, help="shift for the vector")

    ns = parser.parse_args(argv)
    lam = _parse_lambda(ns.lam, ns.r) if ns.lam is not None else None
    return RunConfig(
        command=ns.command,
        suite=getattr(ns, "suite", None) or getattr(ns, "what", None),
        r=ns.r, lam=lam, kmax=ns.kmax, depth=ns.depth, sector=ns.sector,
        gamma=ns.gamma, out=ns.out, jobs=ns.jobs,
        cocycle_table=ns.cocycle_table,
        pop_json=getattr(ns, "pop", None), k=getattr(ns, "k", 0),
        m=getattr(ns, "m", 0))


def _parse_gamma(text, r):
    if text is None:
        return zero_weight(r)
    coeffs = [int(x) for x in text.split(",")]
    if len(coeffs) != r:
        raise UsageError("--gamma needs r simple-root coefficients")
    out = zero_weight(r)
    for a, c in enumerate(coeffs, start=1):
        out = out + c * simple_root(r, a)
    return out


def dominant_seqs(r, max_total):
    """All dominant sequences (weakly decreasing, last entry 0), sum bounded."""
    seqs = []

    def rec(prefix, remaining, cap):
        if len(prefix) == r:
            seqs.append(tuple(prefix) + (0,))
            return
        for v in range(min(cap, remaining), -1, -1):
            rec(prefix + [v], remaining - v, v)

    for total in range(max_total + 1):
        rec([], total, total)
    return sorted(set(seqs))


def _lambda_set(cfg):
    r = cfg.r
    if cfg.lam:
        return [cfg.lam]
    if r == 1:
        return [(0, 0), (1, 0), (2, 0)]
    one_one = [0] * r
    one_one[0] = 1
    one_one[-1] = 1
    return [(0,) * (r + 1), (1,) + (0,) * r,
            seq_from_fundamental(r, one_one)]


# --------------------------- suites ---------------------------------------

def suite_identities(cfg):
    """Area identity plus the depth and invariant-set recursions, every POP."""
    reports = []
    r = cfg.r
    seqs = [cfg.lam] if cfg.lam else dominant_seqs(r, 4)
    for seq in seqs:
        n_checked = 0
        ok = True
        witness = None
        for P in enumerate_pops(seq):
            n_checked += 1
            good, diag = pop.area_identity(P)
            if not good:
                ok, witness = False, {"pop": P.to_json(), "diag": str(diag)}
                break
            dd = pop.depth(P)
            for s in range(1, r + 1):
                lhs = dd["restricted"][s]
                rhs = dd["restricted"][s + 1] + sum(
                    dd["table"][(s, j)] for j in range(s, r + 1))
                if lhs != rhs:
                    ok, witness = False, {"pop": P.to_json(), "s": s,
                                          "reason": "depth recursion"}
                    break
                inv = pop.invariant_set(P, s)
                merged = pop.invariant_set(P, s + 1)
                for j in range(s, r + 1):
                    sl = pop.invariant_slice(P, s, j)
                    for part in ("d", "dprime", "overlay"):
                        merged[part].update(sl[part])
                if inv != merged:
                    ok, witness = False, {"pop": P.to_json(), "s": s,
                                          "reason": "invariant recursion"}
                    break
            if not ok:
                break
        reports.append({"check": "pop_identities",
                        "input": {"r": r, "lambda": list(seq),
                                  "pops": n_checked},
                        "status": "pass" if ok else "fail",
                        **({"witness": witness} if witness else {})})
    return reports


def gamma_ball(r, norm_bound):
    """Root lattice elements with (gamma|gamma) <= norm_bound."""
    out = []
    box = int(norm_bound)
    n = r + 1

    def rec(acc):
        if len(acc) == n:
            if sum(acc) == 0:
                fw = FiniteWeight(r, acc)
                if bilinear(fw, fw) <= norm_bound:
                    out.append(fw)
            return
        for c in range(-box, box + 1):
            rec(acc + [c])

    rec([])
    return sorted(set(out), key=lambda w: w.lattice_rep())


def suite_dims(cfg):
    reports = []
    r = cfg.r
    sectors = [cfg.sector] if cfg.sector is not None else list(range(r + 1))
    mmax = cfg.depth if cfg.depth is not None else 4
    for i in sectors:
        for gq in gamma_ball(r, 8):
            for m in range(mmax + 1):
                got = fock.graded_dim(r, i, gq, m)
                want = colored_partitions(r, m, count_only=True)
                reports.append({
                    "check": "graded_dim",
                    "input": {"r": r, "i": i,
                              "gamma": list(gq.lattice_rep()), "m": m},
                    "status": "pass" if got == want else "fail",
                    **({} if got == want else
                       {"witness": {"got": got, "want": want}})})
    return reports


def finite_bracket(al, be):
    """[x_al, x_be] in the matrix realization, as E-matrix coefficients."""
    la, lb = al.lattice_rep(), be.lattice_rep()
    i, j = la.index(1) + 1, la.index(-1) + 1
    k, l = lb.index(1) + 1, lb.index(-1) + 1
    out = {}
    if j == k:
        out[(i, l)] = out.get((i, l), 0) + 1
    if l == i:
        out[(k, j)] = out.get((k, j), 0) - 1
    return out


def bracket_expected(al, be, s1, s2, v):
    """RHS of the affine bracket on v, in the matrix realization."""
    r = v.r
    exp = fock.zero_vector(r, v.sector)
    diag = {}
    for (i, j), c in finite_bracket(al, be).items():
        if i == j:
            diag[i] = diag.get(i, 0) + c
            continue
        coords = [0] * (r + 1)
        coords[i - 1] += 1
        coords[j - 1] -= 1
        exp = exp + c * fock.act_root_vector(FiniteWeight(r, coords), s1 + s2, v)
    if diag:
        coords = [0] * (r + 1)
        for i, c in diag.items():
            coords[i - 1] += c
        hfw = FiniteWeight(r, coords)
        n = s1 + s2
        if n == 0:
            terms = {}
            for key, coeff in v.terms.items():
                val = bilinear(key.gamma, hfw)
                if val:
                    terms[key] = coeff * val
            exp = exp + fock.FockVector(r, v.sector, terms)
        else:
            lat = hfw.lattice_rep()
            acc = 0
            for a in range(1, r + 1):
                acc += lat[a - 1]
                if acc:
                    exp = exp + acc * fock.act_heisenberg(a, n, v)
    if be == -al and s2 == -s1 and s1 != 0:
        exp = exp + Fraction(s1) * v
    return exp


def suite_brackets(cfg):
    reports = []
    r = cfg.r
    emax = cfg.depth if cfg.depth is not None else 3
    sectors = [cfg.sector] if cfg.sector is not None else list(range(r + 1))
    roots = all_roots(r)
    for i in sectors:
        keys = fock.enumerate_keys(r, i, emax)
        bad = 0
        total = 0
        witness = None
        for al in roots:
            for be in roots:
                for s1 in range(-2, 3):
                    for s2 in range(-2, 3):
                        for key in keys:
                            v = fock.FockVector(r, i, {key: Fraction(1)})
                            lhs = (fock.act_root_vector(
                                al, s1, fock.act_root_vector(be, s2, v))
                                - fock.act_root_vector(
                                    be, s2, fock.act_root_vector(al, s1, v)))
                            total += 1
                            if lhs != bracket_expected(al, be, s1, s2, v):
                                bad += 1
                                if witness is None:
                                    witness = {"al": al.to_json(),
                                               "be": be.to_json(),
                                               "s1": s1, "s2": s2,
                                               "key": repr(key)}
        reports.append({"check": "brackets",
                        "input": {"r": r, "sector": i, "emax": emax,
                                  "instances": total},
                        "status": "pass" if bad == 0 else "fail",
                        **({"witness": witness} if witness else {})})
    return reports


def suite_translate(cfg):
    reports = []
    r = cfg.r
    coc = Cocycle(r)
    keys = fock.enumerate_keys(r, 0, 2)
    vecs = [fock.FockVector(r, 0, {k: Fraction(1)}) for k in keys]
    betas = [simple_root(r, a) for a in range(1, r + 1)] + [theta(r)]
    bad = 0
    witness = None
    for b in betas:
        for v in vecs:
            if translate.translate_Q(-b, translate.translate_Q(b, v)) != v:
                bad += 1
                witness = witness or {"prop": "inverse", "beta": b.to_json()}
    smalls = [zero_weight(r)] + betas + [-b for b in betas]
    for mu in smalls:
        for al in betas:
            for d in (0, 1, 2):
                b1 = mu - d * al
                sg = coc.comp_eps(b1, d * al)
                for v in vecs[:4]:
                    lhs = translate.translate_Q(
                        b1, translate.translate_Q(d * al, v))
                    if lhs != sg * translate.translate_Q(mu, v):
                        bad += 1
                        witness = witness or {"prop": "composition",
                                              "mu": mu.to_json(),
                                              "alpha": al.to_json(), "d": d}
    for b in betas:
        for al in all_roots(r):
            shift = int(bilinear(b, al))
            for s in (-1, 0, 1):
                for v in vecs[:4]:
                    lhs = translate.translate_Q(
                        b, fock.act_root_vector(
                            al, s, translate.translate_Q(-b, v)))
                    if lhs != fock.act_root_vector(al, s - shift, v):
                        bad += 1
                        witness = witness or {"prop": "conjugation",
                                              "beta": b.to_json()}
        for a in range(1, r + 1):
            for n in (-2, -1, 1, 2):
                for v in vecs[:4]:
                    if (translate.translate_Q(b, fock.act_heisenberg(a, n, v))
                            != fock.act_heisenberg(
                                a, n, translate.translate_Q(b, v))):
                        bad += 1
                        witness = witness or {"prop": "heisenberg"}
    for i in range(1, r + 1):
        if (translate.translate_fundamental(i, fock.vacuum(r, 0), +1)
                != fock.vacuum(r, i)):
            bad += 1
            witness = witness or {"prop": "vacuum transport", "i": i}
        varpi = fundamental(r, i)
        for al in all_roots(r):
            shift = int(bilinear(varpi, al))
            for s in (-1, 0, 1):
                for v in vecs[:4]:
                    inner = translate.translate_fundamental(i, v, +1)
                    lhs = translate.translate_fundamental(
                        i, fock.act_root_vector(al, s, inner), -1)
                    if lhs != fock.act_root_vector(al, s + shift, v):
                        bad += 1
                        witness = witness or {"prop": "fundamental conjugation",
                                              "i": i}
    reports.append({"check": "translate", "input": {"r": r},
                    "status": "pass" if bad == 0 else "fail",
                    **({"witness": witness} if witness else {})})
    return reports


def suite_weights(cfg):
    reports = []
    for seq in _lambda_set(cfg):
        pops = enumerate_pops(seq)
        vecs = [clbasis.cl_vector(P, 0) for P in pops]
        ok = clbasis.rank_of(vecs) == len(vecs)
        reports.append({"check": "cl_basis_independent",
                        "input": {"r": cfg.r, "lambda": list(seq),
                                  "count": len(vecs)},
                        "status": "pass" if ok else "fail"})
        bad = None
        for P in pops:
            rep = clbasis.verify_weight(P, min(1, cfg.kmax))
            if rep["status"] != "pass":
                bad = rep
                break
        reports.append({"check": "weight_law",
                        "input": {"r": cfg.r, "lambda": list(seq)},
                        "status": "pass" if bad is None else "fail",
                        **({"witness": bad} if bad else {})})
    return reports


def suite_stability(cfg):
    reports = []
    for seq in _lambda_set(cfg):
        depth_bound = cfg.depth if cfg.depth is not None else 3
        pops = [P for P in enumerate_pops(seq)
                if is_stable(P) and depth_total(P) <= depth_bound]
        for P in pops:
            reports.append(clbasis.verify_stability(P, cfg.kmax))
    return reports


def suite_mtp(cfg):
    reports = []
    for seq in _lambda_set(cfg):
        depth_bound = cfg.depth if cfg.depth is not None else 3
        pops = [P for P in enumerate_pops(seq)
                if is_stable(P) and depth_total(P) <= depth_bound]
        for P in pops:
            for s in range(1, cfg.r + 2):
                reports.append(clbasis.verify_mtp(P, 0, s))
    return reports


def suite_chain(cfg):
    reports = []
    for seq in _lambda_set(cfg):
        lam = weight_from_seq(seq)
        reports.append(clbasis.weyl_span(lam, 1))
    return reports


def suite_basis(cfg):
    reports = []
    r = cfg.r
    gammas = ([_parse_gamma(cfg.gamma, r)] if cfg.gamma
              else [zero_weight(r), simple_root(r, 1)])
    dmax = cfg.depth if cfg.depth is not None else 2
    sectors = [cfg.sector] if cfg.sector is not None else list(range(r + 1))
    for gq in gammas:
        for i in sectors:
            for d in range(dmax + 1):
                _, rep = clbasis.stable_basis(i, gq, d)
                reports.append(rep)
    return reports


SUITES = {
    "identities": suite_identities,
    "dims": suite_dims,
    "brackets": suite_brackets,
    "translate": suite_translate,
    "weights": suite_weights,
    "stability": suite_stability,
    "mtp": suite_mtp,
    "chain": suite_chain,
    "basis": suite_basis,
}


def run(cfg):
    """Execute the configured command; returns (exit_status, report lines)."""
    lines = []
    status = 0
    if cfg.command == "enumerate":
        if cfg.suite == "patterns":
            if cfg.lam is None:
                raise UsageError("enumerate patterns needs --lambda")
            for pat in gtpattern.enumerate_patterns(cfg.lam):
                lines.append(json.dumps(pat.to_json(), sort_keys=True))
        elif cfg.suite == "pops":
            if cfg.lam is None:
                raise UsageError("enumerate pops needs --lambda")
            for P in enumerate_pops(cfg.lam, depth_filter=cfg.depth):
                lines.append(json.dumps(P.to_json(), sort_keys=True))
        else:
            for cp in colored_partitions(cfg.r, cfg.m):
                lines.append(json.dumps(cp.to_json()))
    elif cfg.command == "verify":
        reports = SUITES[cfg.suite](cfg)
        coc_hash = Cocycle(cfg.r).table_hash()
        for rep in reports:
            rep = dict(rep)
            rep["cocycle"] = coc_hash[:16]
            lines.append(json.dumps(rep, sort_keys=True, default=str))
            if rep["status"] != "pass":
                status = 1
        if cfg.cocycle_table:
            lines.append(Cocycle(cfg.r).table_dump().rstrip("\n"))
    elif cfg.command == "dump":
        if cfg.suite == "cocycle":
            lines.append(Cocycle(cfg.r).table_dump().rstrip("\n"))
        else:
            if cfg.pop_json is None:
                raise UsageError("dump vector needs --pop")
            P = POP.from_json(json.loads(cfg.pop_json))
            v = clbasis.cl_vector(P, cfg.k)
            lines.extend(v.dump_lines())
    return status, lines


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
        status, lines = run(cfg)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    text = "\n".join(lines)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + ("\n" if text else ""))
    elif text:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
