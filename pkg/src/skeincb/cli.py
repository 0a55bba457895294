"""Command line front end: identity verification suites and an evaluator.

``skeincb verify`` runs the registered identity checks over a configurable
range of surface sizes and writes an optional machine-readable JSON report.
``skeincb eval`` parses a small expression grammar (generator tokens such as
gamma:1 or E:2:1, coordinate and parameter names, r[..] monomials, + - * /
and parentheses, and the maps phi/upsilon/star/psi) and prints the canonical
form of the result.

Report JSON is deterministic for a fixed configuration and seed; timing data
is only included on request since it would break byte-for-byte stability.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
import zlib
from dataclasses import dataclass, field

from . import fusion, grcoulomb, monopole, qdiff, scalars, skeinrep
from .qdiff import OpElement, dz, render, xtorus, ztrace
from .scalars import AlgebraError
from .skeinrep import GeneratorId, SurfaceParams

SUITES = ("scalars", "qdiff", "skein", "monopole", "graded", "fusion")


@dataclass
class SuiteConfig:
    n_list: tuple = (2, 3, 4)
    m_min: int = -2
    m_max: int = 4
    max_color: int = 6
    seed: int = 42
    suites: tuple = ("all",)
    json_path: str = None
    timings: bool = False

    def validate(self):
        if not self.n_list or any(n < 2 for n in self.n_list):
            raise AlgebraError("surface sizes must be a nonempty list of integers >= 2")
        if self.m_min > self.m_max:
            raise AlgebraError("empty twist range")
        if self.max_color < 0:
            raise AlgebraError("max color must be nonnegative")
        bad = [s for s in self.suites if s != "all" and s not in SUITES]
        if bad:
            raise AlgebraError(f"unknown suites: {bad}")
        return self

    def wants(self, suite):
        return "all" in self.suites or suite in self.suites

    def rng(self, check_id):
        return random.Random(self.seed ^ zlib.crc32(check_id.encode()))


# ---------------------------------------------------------------------------
# random element helpers


def _random_coeff(rng, alg, names, deg=2, terms=2):
    out = alg.zero
    for _ in range(terms):
        mono = alg.one * rng.choice([1, -1, 2, 3])
        for name in names:
            e = rng.randint(-deg, deg)
            if e:
                mono = mono * alg.gens[name] ** e
        out = out + mono
    return out


def _random_scalar(rng, alg, deg=2):
    num = _random_coeff(rng, alg, alg.atom_names(), deg, 2)
    den = alg.zero
    while den == alg.zero:
        den = _random_coeff(rng, alg, alg.atom_names(), 1, 1)
    return num / den


def _random_op(rng, alg, names, kmax=2, terms=2):
    out = {}
    for _ in range(terms):
        key = tuple(rng.randint(-kmax, kmax) for _ in alg.shifts)
        out[key] = _random_coeff(rng, alg, names, deg=2, terms=2)
    return OpElement(alg, out)


# ---------------------------------------------------------------------------
# checks


def _check_scalar_laws(cfg):
    n = max(cfg.n_list)
    alg = xtorus(n)
    rng = cfg.rng("scalars.arithmetic_laws")
    for trial in range(200):
        a, b, c = (_random_scalar(rng, alg) for _ in range(3))
        if (a + b) + c != a + (b + c):
            return False, {"trial": trial}, "associativity of + failed"
        if a * (b + c) != a * b + a * c:
            return False, {"trial": trial}, "distributivity failed"
        if a != alg.zero and a * (1 / a) != alg.one:
            return False, {"trial": trial}, "inverse failed"
    return True, {"instances": 200}, None


def _check_qint(cfg):
    alg = xtorus(max(cfg.n_list))
    A2 = alg.s**-2
    for k in range(-5, 6):
        lhs = scalars.qint(alg, k + 1)
        rhs = (A2 + 1 / A2) * scalars.qint(alg, k) - scalars.qint(alg, k - 1)
        if lhs != rhs:
            return False, {"k": k}, scalars.render_coeff(alg, lhs - rhs)
        if scalars.qint(alg, -k) != -scalars.qint(alg, k):
            return False, {"k": k}, "antisymmetry failed"
    if scalars.qint(alg, 2) != alg.q() + alg.q(-1):
        return False, {}, "[2] misevaluates"
    return True, {"k_range": [-5, 5]}, None


def _check_shift_compose(cfg):
    n = max(cfg.n_list)
    alg = xtorus(n)
    rng = cfg.rng("scalars.shift_composition")
    names = [f"x{i}" for i in range(1, n)]
    for trial in range(50):
        p = _random_coeff(rng, alg, names, deg=3, terms=3)
        lam = tuple(rng.randint(-2, 2) for _ in names)
        mu = tuple(rng.randint(-2, 2) for _ in names)
        both = tuple(a + b for a, b in zip(lam, mu))
        if scalars.shift(alg, scalars.shift(alg, p, lam), mu) != scalars.shift(alg, p, both):
            return False, {"trial": trial, "lam": lam, "mu": mu}, scalars.render_coeff(alg, p)
    return True, {"instances": 50}, None


def _eval_pairs(alg, rng, lhs, rhs, tries=3):
    from fractions import Fraction

    for _ in range(tries):
        vals = {
            v.name: Fraction(rng.randint(2, 9), rng.randint(1, 7)) for v in alg.vars
        }
        try:
            a, b = alg.eval_at(lhs, vals), alg.eval_at(rhs, vals)
        except ZeroDivisionError:
            continue
        if a != b:
            return False
    return True


def _check_eval_oracle(cfg):
    n = max(cfg.n_list)
    alg = xtorus(n)
    rng = cfg.rng("scalars.evaluation_oracle")
    q = alg.q()
    pairs = [
        (scalars.qint(alg, 2), q + 1 / q),
        (scalars.qint(alg, 3), q**2 + 1 + q**-2),
        (scalars.qint(alg, -3), -scalars.qint(alg, 3)),
        (scalars.qfact(alg, 3), scalars.qint(alg, 2) * scalars.qint(alg, 3)),
        (
            scalars.shift(alg, alg.gen("x1") ** 2 + alg.gen("x1") ** -2, (1,) + (0,) * (n - 2)),
            q**2 * alg.gen("x1") ** 2 + q**-2 * alg.gen("x1") ** -2,
        ),
        (skeinrep.t_coeff(1, 1, SurfaceParams(n)), skeinrep.t_coeff(1, 1, SurfaceParams(n))),
    ]
    for k, (lhs, rhs) in enumerate(pairs):
        if lhs != rhs:
            return False, {"pair": k}, "symbolic equality failed"
        if not _eval_pairs(alg, rng, lhs, rhs):
            return False, {"pair": k}, "rational evaluation disagrees"
    return True, {"identities": len(pairs)}, None


def _check_pairing_tables(cfg):
    n = max(cfg.n_list)
    X, Z, D = xtorus(n), ztrace(n), dz(n)
    for i in range(1, n):
        for j in range(1, n):
            d = 1 if i == j else 0
            # W_i X_j^(1/2) = q^(d/2) X_j^(1/2) W_i
            half = OpElement.coeff(X, X.gen(f"x{j}"))
            W = OpElement.shift_monomial(X, f"W{i}")
            if W * half != (half * W).scale(X.s**d):
                return False, {"algebra": "xtorus", "i": i, "j": j}, None
            # Q_i E_j = A^d E_j Q_i, A = 1/s
            Q = OpElement.coeff(Z, Z.gen(f"Q{i}"))
            E = OpElement.shift_monomial(Z, f"E{j}")
            if Q * E != (E * Q).scale(Z.s**-d):
                return False, {"algebra": "ztrace", "i": i, "j": j}, None
            for r in "pm":
                for t in "pm":
                    dd = 2 * d * (1 if r == t else 0)
                    w = OpElement.coeff(D, D.gen(f"w{j}{t}"))
                    Dop = OpElement.shift_monomial(D, f"D{i}{r}")
                    if Dop * w != (w * Dop).scale(D.q(dd)):
                        return False, {"algebra": "dz", "i": i, "j": j, "r": r, "t": t}, None
    return True, {"n": n}, None


def _check_op_laws(cfg):
    n = max(cfg.n_list)
    alg = xtorus(n)
    names = [f"x{i}" for i in range(1, n)]
    rng = cfg.rng("qdiff.associativity_distributivity")
    for trial in range(200):
        a, b, c = (_random_op(rng, alg, names) for _ in range(3))
        if (a * b) * c != a * (b * c):
            return False, {"trial": trial}, render(a)
        if a * (b + c) != a * b + a * c:
            return False, {"trial": trial}, render(a)
    return True, {"instances": 200}, None


def _check_normal_order(cfg):
    n = max(cfg.n_list)
    alg = xtorus(n)
    names = [f"x{i}" for i in range(1, n)]
    rng = cfg.rng("qdiff.normal_order_soundness")
    for trial in range(100):
        c = _random_coeff(rng, alg, names, deg=3, terms=3)
        key = tuple(rng.randint(-2, 2) for _ in alg.shifts)
        lhs = OpElement(alg, {key: alg.one}) * OpElement.coeff(alg, c)
        # independent route: substitute X_j -> q^(k_j) X_j generator-wise
        images = {v.name: alg.gens[v.name] for v in alg.vars}
        for j, k in enumerate(key):
            images[f"x{j + 1}"] = alg.s**k * alg.gens[f"x{j + 1}"]
        rhs = OpElement(alg, {key: alg.map_fraction(c, alg, images)})
        if lhs != rhs:
            return False, {"trial": trial, "key": key}, scalars.render_coeff(alg, c)
    return True, {"instances": 100}, None


def _check_antimap(cfg):
    rng = cfg.rng("qdiff.antimap_property")
    for n in cfg.n_list:
        alg = ztrace(n)
        names = [f"Q{i}" for i in range(1, n)] + [f"C{j}" for j in range(n + 2)]
        for trial in range(40):
            a = _random_op(rng, alg, names, kmax=1, terms=2)
            b = _random_op(rng, alg, names, kmax=1, terms=2)
            if skeinrep.star(a * b) != skeinrep.star(b) * skeinrep.star(a):
                return False, {"n": n, "trial": trial}, render(a)
    return True, {"instances_per_n": 40}, None


def _check_factorization(cfg):
    for n in cfg.n_list:
        p = SurfaceParams(n)
        for i in p.gauge_range():
            if not skeinrep.verify_factorization(GeneratorId("gamma", i), p):
                return False, {"n": n, "generator": f"gamma:{i}"}, None
            if not skeinrep.verify_factorization(GeneratorId("sigma", i), p):
                return False, {"n": n, "generator": f"sigma:{i}"}, None
        for j in p.boundary_range():
            if not skeinrep.verify_factorization(GeneratorId("delta", j), p):
                return False, {"n": n, "generator": f"delta:{j}"}, None
    return True, {"n_list": list(cfg.n_list)}, None


def _check_theta_zero(cfg):
    for n in cfg.n_list:
        p = SurfaceParams(n)
        alg = xtorus(n)
        q = alg.q()
        for i in p.gauge_range():
            const = OpElement.coeff(alg, -q * alg.t(i) * alg.t(i + 1) - 1 / (q * alg.t(i) * alg.t(i + 1)))
            if skeinrep.theta_principal(i, 0, p) + const != skeinrep.phi(GeneratorId("sigma", i), p):
                return False, {"n": n, "i": i}, None
    return True, {"n_list": list(cfg.n_list)}, None


def _check_theta_one(cfg):
    for n in cfg.n_list:
        p = SurfaceParams(n)
        alg = xtorus(n)
        for i in p.gauge_range():
            diff = skeinrep.theta_one(i, p) - skeinrep.theta_principal(i, 1, p)
            if not diff.has_pure_coefficient():
                return False, {"n": n, "i": i}, render(diff)
            rem = diff.constant_coefficient()
            if alg.laurent_parts(rem) is None:
                return False, {"n": n, "i": i}, "remainder not Laurent"
            for j in p.gauge_range():
                if not scalars.invariant_under_inversion(alg, rem, {j}):
                    return False, {"n": n, "i": i, "j": j}, scalars.render_coeff(alg, rem)
    return True, {"n_list": list(cfg.n_list)}, None


def _check_gamma_commute(cfg):
    for n in cfg.n_list:
        p = SurfaceParams(n)
        imgs = [skeinrep.phi(GeneratorId("gamma", i), p) for i in p.gauge_range()]
        for a in imgs:
            for b in imgs:
                if a * b != b * a:
                    return False, {"n": n}, None
    return True, {"n_list": list(cfg.n_list)}, None


def _check_skein_matrix(cfg):
    alg = scalars.Algebra(
        ("skein-matrix",),
        [scalars.Var("s", "q", 2, "atom"), scalars.Var("d", "d", 1, "atom")],
    )
    delta = alg.gen("d")
    det = skeinrep.skein_matrix_det(alg, delta)
    if det == alg.zero:
        return False, {}, "determinant vanishes identically"
    parts = alg.laurent_parts(det)
    if max(m[alg.index["d"]] for m in parts) > 4:
        return False, {}, "degree in the loop symbol exceeds 4"
    # block value at delta = 0: the two 2x2 blocks each contribute A^-4 - A^4
    at0 = alg.map_fraction(det, alg, {"s": alg.s, "d": alg.zero})
    blk = (alg.s**4 - alg.s**-4) * (alg.s**-4 - alg.s**4)
    if at0 != blk:
        return False, {}, scalars.render_coeff(alg, at0)
    # planted solves
    rng = cfg.rng("skein.resolution_matrix")
    s = alg.s
    P = [
        [s**2, s**-2, delta, alg.zero],
        [s**-2, s**2, delta, alg.zero],
        [delta, alg.zero, s**-2, s**2],
        [delta, alg.zero, s**2, s**-2],
    ]
    Pinv = scalars.mat_inv(alg, P)
    for trial in range(20):
        planted = [_random_scalar(rng, alg, deg=1) for _ in range(4)]
        rhs = [sum((row[k] * planted[k] for k in range(4)), alg.zero) for row in P]
        got = [sum((Pinv[r][k] * rhs[k] for k in range(4)), alg.zero) for r in range(4)]
        if got != planted:
            return False, {"trial": trial}, None
    return True, {"planted_solves": 20}, None


def _check_gamma_bridge(cfg):
    for n in cfg.n_list:
        p = SurfaceParams(n)
        alg = dz(n)
        for i in p.gauge_range():
            a = OpElement.coeff(alg, -alg.gen(f"w{i}p") - alg.gen(f"w{i}m"))
            if monopole.psi(a) != skeinrep.phi(GeneratorId("gamma", i), p):
                return False, {"n": n, "i": i}, None
    return True, {"n_list": list(cfg.n_list)}, None


def _check_family_comparison(cfg):
    for n in cfg.n_list:
        p = SurfaceParams(n)
        for i in p.gauge_range():
            for m in range(cfg.m_min, cfg.m_max + 1):
                if not monopole.verify_phi_psi(i, m, p):
                    return False, {"n": n, "i": i, "m": m}, None
    return True, {"n_list": list(cfg.n_list), "m": [cfg.m_min, cfg.m_max]}, None


def _check_commutator(cfg):
    for n in cfg.n_list:
        p = SurfaceParams(n)
        for i in p.gauge_range():
            ok, h = monopole.verify_EF_commutator(i, p)
            if not ok:
                return False, {"n": n, "i": i}, None if h is None else scalars.render_coeff(dz(n), h)
    return True, {"n_list": list(cfg.n_list)}, None


def _check_psi_multiplicative(cfg):
    rng = cfg.rng("monopole.invariant_embedding_multiplicative")
    for n in cfg.n_list:
        p = SurfaceParams(n)
        alg = dz(n)
        names = [f"w{i}{sg}" for i in range(1, n) for sg in "pm"] + [f"z{j}" for j in range(1, n + 1)]

        def random_invariant():
            terms = {}
            for _ in range(2):
                key = [0] * len(alg.shifts)
                i = rng.randint(1, n - 1)
                a = rng.choice([-1, 0, 1])
                key[alg.shift_index[f"D{i}p"]] = a
                key[alg.shift_index[f"D{i}m"]] = -a
                terms[tuple(key)] = _random_coeff(rng, alg, names, deg=1, terms=2)
            return OpElement(alg, terms)

        for trial in range(25):
            a, b = random_invariant(), random_invariant()
            if monopole.psi(a * b) != monopole.psi(a) * monopole.psi(b):
                return False, {"n": n, "trial": trial}, render(a)
    return True, {"instances_per_n": 25}, None


def _check_invariance_guard(cfg):
    n = min(cfg.n_list)
    p = SurfaceParams(n)
    alg = dz(n)
    try:
        monopole.psi(OpElement.shift_monomial(alg, "D1p", 1))
        return False, {"n": n}, "unbalanced monomial accepted"
    except AlgebraError:
        pass
    for i in p.gauge_range():
        prod = monopole.monopole_E(i, 0, p) * monopole.monopole_F(i, 0, p)
        if monopole.invariance_violation(prod) is not None:
            return False, {"n": n, "i": i}, "paired operators should be invariant"
        if monopole.invariance_violation(monopole.monopole_E(i, 0, p)) is None:
            return False, {"n": n, "i": i}, "a lone operator should not be invariant"
    return True, {"n": n}, None


def _check_chain_products(cfg):
    for n in cfg.n_list:
        if n < 4:
            continue
        p = SurfaceParams(n)
        alg = xtorus(n)
        q = alg.q()

        def alpha(i, j):
            return tuple(1 if i <= k <= j else 0 for k in range(1, n))

        for i in range(1, n - 1):
            for j in range(i + 1, n - 1):
                tj = alg.t(j)
                Xm, Xj = alg.gen(f"x{j - 1}") ** 2, alg.gen(f"x{j}") ** 2
                r_prev = grcoulomb.GradedElement.monomial(n, alpha(i, j - 1))
                r_j = grcoulomb.GradedElement.monomial(n, alpha(j, j))
                checks = [
                    (
                        grcoulomb.gr_mul(r_prev, r_j, p),
                        {alpha(i, j): (1 - Xj / (q * tj * Xm)) * (1 - q * Xm / (tj * Xj))},
                    ),
                    (
                        grcoulomb.gr_mul(r_j, r_prev, p),
                        {alpha(i, j): (1 - Xm / (q * tj * Xj)) * (1 - q * Xj / (tj * Xm))},
                    ),
                    (
                        grcoulomb.gr_mul(
                            grcoulomb.GradedElement(n, {alpha(i, j - 1): Xm}),
                            grcoulomb.GradedElement(n, {alpha(j, j): 1 / Xj}),
                            p,
                        ),
                        {alpha(i, j): (Xm / Xj - 1 / (q * tj)) * (1 - q * Xm / (tj * Xj))},
                    ),
                    (
                        grcoulomb.gr_mul(
                            grcoulomb.GradedElement(n, {alpha(j, j): 1 / Xj}),
                            grcoulomb.GradedElement(n, {alpha(i, j - 1): Xm}),
                            p,
                        ),
                        {alpha(i, j): (1 - Xm / (q * tj * Xj)) * (Xm / Xj - q / tj)},
                    ),
                ]
                for k, (got, want) in enumerate(checks):
                    if got != grcoulomb.GradedElement(n, want):
                        return False, {"n": n, "i": i, "j": j, "product": k + 1}, None
    return True, {"n_list": [n for n in cfg.n_list if n >= 4]}, None


def _check_graded_commutation(cfg):
    rng = cfg.rng("graded.coefficient_commutation")
    n = max(cfg.n_list)
    p = SurfaceParams(n)
    alg = xtorus(n)
    for trial in range(50):
        lam = tuple(rng.randint(0, 3) for _ in range(n - 1))
        r = grcoulomb.GradedElement.monomial(n, lam)
        for j in range(1, n):
            Xj = alg.gen(f"x{j}") ** 2
            g = grcoulomb.GradedElement(n, {(0,) * (n - 1): Xj + 1 / Xj})
            want = grcoulomb.GradedElement(
                n, {lam: alg.q(2 * lam[j - 1]) * Xj + alg.q(-2 * lam[j - 1]) / Xj}
            )
            if grcoulomb.gr_mul(r, g, p) != want:
                return False, {"trial": trial, "lam": lam, "j": j}, None
    return True, {"instances": 50}, None


def _check_power_rule(cfg):
    rng = cfg.rng("graded.power_rule")
    n = max(cfg.n_list)
    p = SurfaceParams(n)
    for trial in range(30):
        lam = tuple(rng.randint(0, 2) for _ in range(n - 1))
        k, l = rng.randint(0, 3), rng.randint(0, 3)
        a = grcoulomb.GradedElement.monomial(n, tuple(k * x for x in lam))
        b = grcoulomb.GradedElement.monomial(n, tuple(l * x for x in lam))
        want = grcoulomb.GradedElement.monomial(n, tuple((k + l) * x for x in lam))
        if grcoulomb.gr_mul(a, b, p) != want:
            return False, {"trial": trial, "lam": lam, "k": k, "l": l}, None
    return True, {"instances": 30}, None


def _random_graded(rng, n, alg):
    lam = tuple(rng.randint(0, 2) for _ in range(n - 1))
    f = alg.zero
    for _ in range(2):
        mono = alg.one * rng.choice([1, 2, -1])
        for j in range(1, n):
            e = rng.randint(-2, 2)
            if lam[j - 1] == 0:
                mono = mono * (alg.gen(f"x{j}") ** (2 * e) + alg.gen(f"x{j}") ** (-2 * e))
            else:
                mono = mono * alg.gen(f"x{j}") ** (2 * e)
        f = f + mono
    return grcoulomb.GradedElement(n, {lam: f})


def _check_graded_assoc(cfg):
    rng = cfg.rng("graded.associativity")
    n = max(cfg.n_list)
    p = SurfaceParams(n)
    alg = xtorus(n)
    for trial in range(100):
        a, b, c = (_random_graded(rng, n, alg) for _ in range(3))
        if grcoulomb.gr_mul(grcoulomb.gr_mul(a, b, p), c, p) != grcoulomb.gr_mul(
            a, grcoulomb.gr_mul(b, c, p), p
        ):
            return False, {"trial": trial}, None
    return True, {"instances": 100}, None


def _check_invariance_closure(cfg):
    rng = cfg.rng("graded.invariance_closure")
    n = max(cfg.n_list)
    p = SurfaceParams(n)
    alg = xtorus(n)
    for trial in range(30):
        a, b = _random_graded(rng, n, alg), _random_graded(rng, n, alg)
        if not (a.check_invariance() and b.check_invariance()):
            return False, {"trial": trial}, "generator produced invalid element"
        if not grcoulomb.gr_mul(a, b, p).check_invariance():
            return False, {"trial": trial}, None
    return True, {"instances": 30}, None


def _check_sigma_recursion(cfg):
    tested = []
    for n in sorted(set(list(cfg.n_list) + [max(max(cfg.n_list), 6)])):
        if n < 3:
            continue
        p = SurfaceParams(n)
        for i in range(1, n - 1):
            for j in range(i, n - 1):
                if grcoulomb.solve_sigma(i, j, p) != grcoulomb.sigma_closed_form(i, j, p):
                    return False, {"n": n, "i": i, "j": j}, None
        tested.append(n)
    return True, {"n_list": tested}, None


def _check_coulomb_matrix(cfg):
    n = max(max(cfg.n_list), 3)
    alg = xtorus(n)
    delta = -alg.t(1) - alg.t(1, -1)
    P = grcoulomb.coulomb_matrix(alg, delta)
    det = scalars.mat_det(alg, P)
    if det == alg.zero:
        return False, {}, "determinant vanishes"
    rng = cfg.rng("graded.matrix_solve")
    Pinv = scalars.mat_inv(alg, P)
    for trial in range(20):
        planted = [_random_scalar(rng, alg, deg=1) for _ in range(4)]
        rhs = [sum((row[k] * planted[k] for k in range(4)), alg.zero) for row in P]
        got = [sum((Pinv[r][k] * rhs[k] for k in range(4)), alg.zero) for r in range(4)]
        if got != planted:
            return False, {"trial": trial}, None
    return True, {"planted_solves": 20}, None


def _check_projectors(cfg):
    alg = fusion.fusion_field()
    for c in range(0, cfg.max_color + 1):
        jw = fusion.jones_wenzl(c)
        if fusion.tl_mul(jw, jw, c) != jw:
            return False, {"c": c}, "not idempotent"
        for j in range(c - 1):
            e = fusion.TLElement.from_diagram(fusion.TLDiagram.cupcap(c, j))
            if fusion.tl_mul(e, jw, c).terms or fusion.tl_mul(jw, e, c).terms:
                return False, {"c": c, "j": j}, "cup-cap does not annihilate"
        if c and jw.coefficient(fusion.TLDiagram.identity(c)) != alg.one:
            return False, {"c": c}, "identity coefficient is not 1"
    return True, {"max_color": cfg.max_color}, None


def _check_projector_small(cfg):
    alg = fusion.fusion_field()
    q2, q3 = scalars.qint(alg, 2), scalars.qint(alg, 3)
    jw2 = fusion.jones_wenzl(2)
    if jw2.coefficient(fusion.TLDiagram.cupcap(2, 0)) != scalars.qint(alg, 1) / q2:
        return False, {"c": 2}, None
    jw3 = fusion.jones_wenzl(3)
    from .fusion import _compose

    d12, _ = _compose(fusion.TLDiagram.cupcap(3, 0), fusion.TLDiagram.cupcap(3, 1))
    d21, _ = _compose(fusion.TLDiagram.cupcap(3, 1), fusion.TLDiagram.cupcap(3, 0))
    expected = [
        (fusion.TLDiagram.cupcap(3, 0), q2 / q3),
        (fusion.TLDiagram.cupcap(3, 1), q2 / q3),
        (d12, scalars.qint(alg, 1) / q3),
        (d21, scalars.qint(alg, 1) / q3),
    ]
    for d, want in expected:
        if jw3.coefficient(d) != want:
            return False, {"c": 3}, None
    return True, {"colors": [2, 3]}, None


def _check_loop_eigenvalue(cfg):
    alg = fusion.fusion_field()
    A, B = alg.gen("a"), alg.gen("b")
    val = fusion.gamma_loop_eval()
    if val != -(A**2 * B**2 + A**-2 * B**-2):
        return False, {}, scalars.render_coeff(alg, val)
    for c in range(0, max(cfg.max_color, 8) + 1):
        if fusion.specialize_color(val, c) != -(A ** (2 * c + 2) + A ** (-2 * c - 2)):
            return False, {"c": c}, None
    return True, {"colors": list(range(0, max(cfg.max_color, 8) + 1))}, None


def _check_admissibility(cfg):
    cases = [
        (fusion.LadderColoring((0,), (0, 0, 0, 0)), True),
        (fusion.LadderColoring((1,), (1, 1, 1, 1)), False),
        (fusion.LadderColoring((2,), (1, 1, 1, 1)), True),
        (fusion.LadderColoring((1, 1), (1, 0, 0, 0, 1)), True),
        (fusion.LadderColoring((3, 1), (1, 0, 0, 0, 1)), False),
    ]
    for k, (col, want) in enumerate(cases):
        if fusion.admissible(col) != want:
            return False, {"case": k}, None
    alg = xtorus(2)
    try:
        scalars.kappa(alg, (1,), (0, 0, 0, 0))
        return False, {}, "inadmissible normalization accepted"
    except AlgebraError:
        pass
    if scalars.kappa(alg, (0,), (0, 0, 0, 0)) != alg.one:
        return False, {}, "trivial normalization is not 1"
    if scalars.kappa(alg, (1,), (1, 0, 0, 1)) != alg.one:
        return False, {}, "n=2 example normalization"
    return True, {"cases": len(cases)}, None


CHECKS = [
    ("scalars.arithmetic_laws", "scalars", "field laws on random rational functions", _check_scalar_laws),
    ("scalars.quantum_integers", "scalars", "[k+1] = (A^2+A^-2)[k] - [k-1] and antisymmetry", _check_qint),
    ("scalars.shift_composition", "scalars", "coordinate shifts compose additively", _check_shift_compose),
    ("scalars.evaluation_oracle", "scalars", "symbolic identities agree at random rational points", _check_eval_oracle),
    ("qdiff.commutation_tables", "qdiff", "instantiated shift/coordinate commutation relations", _check_pairing_tables),
    ("qdiff.associativity_distributivity", "qdiff", "operator product laws on random elements", _check_op_laws),
    ("qdiff.normal_order_soundness", "qdiff", "shift monomials transport coefficients by q-powers", _check_normal_order),
    ("qdiff.antimap_property", "qdiff", "the reversing map is an anti-homomorphism", _check_antimap),
    ("skein.factorization", "skein", "star(trace image) equals polynomial image on all generators", _check_factorization),
    ("skein.theta_zero_relation", "skein", "untwisted family member matches the four-holed loop image", _check_theta_zero),
    ("skein.theta_one_symmetric", "skein", "once-twisted member minus principal part is symmetric", _check_theta_one),
    ("skein.gamma_images_commute", "skein", "images of disjoint small loops commute", _check_gamma_commute),
    ("skein.resolution_matrix", "skein", "4x4 resolution matrix is nondegenerate and solvable", _check_skein_matrix),
    ("monopole.gamma_bridge", "monopole", "polynomial image of small loops factors through the invariant embedding", _check_gamma_bridge),
    ("monopole.family_comparison", "monopole", "dressed operator pairs reproduce the twisted family principal parts", _check_family_comparison),
    ("monopole.raising_lowering_commutator", "monopole", "[E,F] = (q - 1/q) h with h symmetric and shift-free", _check_commutator),
    ("monopole.invariant_embedding_multiplicative", "monopole", "the invariant embedding is multiplicative", _check_psi_multiplicative),
    ("monopole.torus_invariance_guard", "monopole", "unbalanced operators are rejected, paired ones pass", _check_invariance_guard),
    ("graded.chain_products", "graded", "the four displayed chain products", _check_chain_products),
    ("graded.coefficient_commutation", "graded", "r_lam (X+1/X) = (q^2lam X + q^-2lam /X) r_lam", _check_graded_commutation),
    ("graded.power_rule", "graded", "r_klam r_llam = r_(k+l)lam", _check_power_rule),
    ("graded.associativity", "graded", "graded product associativity on random triples", _check_graded_assoc),
    ("graded.invariance_closure", "graded", "products keep off-support inversion invariance", _check_invariance_closure),
    ("graded.sigma_recursion", "graded", "matrix recursion reproduces the closed-form chain image", _check_sigma_recursion),
    ("graded.matrix_solve", "graded", "chain-product matrix is nondegenerate and solvable", _check_coulomb_matrix),
    ("fusion.projector_axioms", "fusion", "projectors idempotent, killed by cup-caps, unit lead", _check_projectors),
    ("fusion.projector_small_cases", "fusion", "projector coefficients for small strand counts", _check_projector_small),
    ("fusion.loop_eigenvalue", "fusion", "loop around a colored strand evaluates to -(A^2B^2 + A^-2B^-2)", _check_loop_eigenvalue),
    ("fusion.admissibility", "fusion", "vertex parity/triangle conditions and normalization guards", _check_admissibility),
]


def run_suite(cfg):
    """Run the selected checks; returns the report dictionary."""
    cfg.validate()
    results = []
    for check_id, suite, anchor, fn in CHECKS:
        if not cfg.wants(suite):
            continue
        t0 = time.monotonic()
        try:
            ok, params, counter = fn(cfg)
        except Exception as exc:  # a crash is a failure, the run continues
            ok, params, counter = False, {}, f"{type(exc).__name__}: {exc}"
        elapsed = time.monotonic() - t0
        rec = {
            "id": check_id,
            "suite": suite,
            "anchor": anchor,
            "params": params,
            "ok": bool(ok),
        }
        if counter is not None:
            rec["counterexample"] = counter
        if cfg.timings:
            rec["elapsed_ms"] = round(1000 * elapsed, 3)
        results.append(rec)
    results.sort(key=lambda r: r["id"])
    passed = sum(1 for r in results if r["ok"])
    report = {
        "schema": 1,
        "config": {
            "n_list": list(cfg.n_list),
            "m_min": cfg.m_min,
            "m_max": cfg.m_max,
            "max_color": cfg.max_color,
            "seed": cfg.seed,
            "suites": list(cfg.suites),
        },
        "checks": results,
        "summary": {"total": len(results), "passed": passed, "failed": len(results) - passed},
    }
    return report


# ---------------------------------------------------------------------------
# expression evaluation

_TOKEN = re.compile(
    r"\s*(?:(?P<gen>[A-Za-z]+(?::-?\d+)+)|(?P<name>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<num>\d+)|(?P<op>[-+*/()^\[\],]))"
)


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise AlgebraError(f"parse error at position {pos}: {text[pos:pos + 10]!r}")
        if m.lastgroup == "gen":
            out.append(("gen", m.group("gen"), pos))
        elif m.lastgroup == "name":
            out.append(("name", m.group("name"), pos))
        elif m.lastgroup == "num":
            out.append(("num", int(m.group("num")), pos))
        else:
            out.append(("op", m.group("op"), pos))
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent evaluator producing operator or graded elements."""

    def __init__(self, text, algebra, n):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.mode = algebra
        self.n = n
        self.p = SurfaceParams(n)
        self.amb = {"xtorus": xtorus, "ztrace": ztrace, "dz": dz, "graded": xtorus}[algebra](n)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise AlgebraError("unexpected end of expression")
        if kind and tok[0] != kind or value is not None and tok[1] != value:
            raise AlgebraError(f"unexpected token {tok[1]!r} at position {tok[2]}")
        self.pos += 1
        return tok

    def parse(self):
        val = self.expr()
        if self.peek()[0] is not None:
            tok = self.peek()
            raise AlgebraError(f"trailing input at position {tok[2]}: {tok[1]!r}")
        return val

    # value wrappers -------------------------------------------------------

    def _scalar(self, f):
        if self.mode == "graded":
            return grcoulomb.GradedElement(self.n, {(0,) * (self.n - 1): f})
        return OpElement.coeff(self.amb, f)

    def _mul(self, a, b):
        if self.mode == "graded":
            return grcoulomb.gr_mul(a, b, self.p)
        return a * b

    def _div(self, a, b):
        if self.mode == "graded":
            if set(b.terms) - {(0,) * (self.n - 1)}:
                raise AlgebraError("division only by coefficient elements")
            f = b.terms.get((0,) * (self.n - 1))
            return a.scale(1 / f)
        if not b.has_pure_coefficient():
            raise AlgebraError("division only by shift-free elements")
        return a * OpElement.coeff(self.amb, 1 / b.constant_coefficient())

    # grammar --------------------------------------------------------------

    def expr(self):
        val = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.factor()
            val = self._mul(val, rhs) if op == "*" else self._div(val, rhs)
        return val

    def factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        while self.peek()[:2] == ("op", "^"):
            self.take()
            base = self._pow(base, self.exponent())
        return self._finalize(base)

    def exponent(self):
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        k = self.take("num")[1]
        if self.peek()[:2] == ("op", "/"):
            self.take()
            if self.take("num")[1] != 2:
                raise AlgebraError("only half-integer exponents are supported")
            return sign * k
        return sign * 2 * k

    def _pow(self, base, e2):
        # e2 is twice the requested exponent
        if isinstance(base, _NamedVar):
            if e2 % 2 and base.var.step != 2:
                raise AlgebraError(f"{base.var.display} does not admit half powers")
            exp = e2 if base.var.step == 2 else e2 // 2
            return self._scalar(base.gen**exp)
        if e2 % 2:
            raise AlgebraError("half powers only on named square-root generators")
        k = e2 // 2
        if self.mode == "graded":
            zero = (0,) * (self.n - 1)
            if set(base.terms) != {zero}:
                raise AlgebraError("exponent only on coefficient elements")
            return grcoulomb.GradedElement(self.n, {zero: base.terms[zero] ** k})
        if len(base.terms) != 1:
            raise AlgebraError("exponent only on monomial elements")
        return base.pow(k)

    def _finalize(self, val):
        if isinstance(val, _NamedVar):
            return self._scalar(val.gen**val.var.step)
        return val

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "op" and value == "(":
            self.take()
            val = self.expr()
            self.take("op", ")")
            return val
        if kind == "num":
            self.take()
            return self._scalar(self.amb.from_int(value))
        if kind == "gen":
            return self.generator_value(self.take()[1])
        if kind == "name":
            self.take()
            if value == "r" and self.peek()[:2] == ("op", "["):
                return self.coweight()
            if value in ("phi", "upsilon", "star", "psi"):
                return self.call(value)
            return self.named(value, pos)
        raise AlgebraError(f"unexpected token {value!r} at position {pos}")

    def coweight(self):
        if self.mode != "graded":
            raise AlgebraError("r[..] only valid with the graded algebra")
        self.take("op", "[")
        entries = [self.signed_int()]
        while self.peek()[:2] == ("op", ","):
            self.take()
            entries.append(self.signed_int())
        self.take("op", "]")
        return grcoulomb.GradedElement.monomial(self.n, tuple(entries))

    def signed_int(self):
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        return sign * self.take("num")[1]

    def call(self, fname):
        self.take("op", "(")
        if fname in ("phi", "upsilon"):
            tok = self.take("gen")[1]
            gid = _generator_id(tok)
            self.take("op", ")")
            img = skeinrep.phi(gid, self.p) if fname == "phi" else skeinrep.upsilon(gid, self.p)
            want = "xtorus" if fname == "phi" else "ztrace"
            if self.mode != want:
                raise AlgebraError(f"{fname}(..) produces a {want} element; use --algebra {want}")
            return img
        if self.mode != "xtorus":
            raise AlgebraError(f"{fname}(..) produces an xtorus element; use --algebra xtorus")
        inner_mode = "ztrace" if fname == "star" else "dz"
        outer_mode, outer_amb = self.mode, self.amb
        self.mode, self.amb = inner_mode, {"ztrace": ztrace, "dz": dz}[inner_mode](self.n)
        try:
            val = self.expr()
        finally:
            self.mode, self.amb = outer_mode, outer_amb
        self.take("op", ")")
        return skeinrep.star(val) if fname == "star" else monopole.psi(val)

    def named(self, name, pos):
        v = self.amb.by_display.get(name)
        if v is None and name in self.amb.index:
            v = self.amb.vars[self.amb.index[name]]
        if v is not None:
            return _NamedVar(v, self.amb.gens[v.name])
        if self.mode != "graded" and name in self.amb.shift_index:
            return OpElement.shift_monomial(self.amb, name)
        raise AlgebraError(f"unknown name {name!r} at position {pos}")

    def generator_value(self, token):
        parts = token.split(":")
        head = parts[0]
        if head in ("E", "F"):
            if self.mode != "dz":
                raise AlgebraError(
                    "monopole operator tokens need --algebra dz (or a psi(..) context)"
                )
            i = int(parts[1])
            m = int(parts[2]) if len(parts) > 2 else 0
            fn = monopole.monopole_E if head == "E" else monopole.monopole_F
            return fn(i, m, self.p)
        raise AlgebraError(
            f"generator token {token!r} is only meaningful inside phi(..) or upsilon(..)"
        )


class _NamedVar:
    """A bare generator name, kept unresolved so ^ can see half exponents."""

    __slots__ = ("var", "gen")

    def __init__(self, var, gen):
        self.var = var
        self.gen = gen


def _generator_id(token):
    parts = token.split(":")
    head, nums = parts[0], [int(x) for x in parts[1:]]
    if head in ("gamma", "delta", "sigma"):
        if len(nums) != 1:
            raise AlgebraError(f"{head} takes one index")
        return GeneratorId(head, nums[0])
    if head == "theta":
        if len(nums) != 2:
            raise AlgebraError("theta takes an index and a twist")
        return GeneratorId("theta", nums[0], nums[1])
    raise AlgebraError(f"unknown generator {token!r}")


def eval_expression(text, algebra, n):
    """Evaluate an expression; returns (value, canonical text)."""
    if algebra not in ("xtorus", "ztrace", "dz", "graded"):
        raise AlgebraError(f"unknown algebra {algebra!r}")
    val = _Parser(text, algebra, n).parse()
    if algebra == "graded":
        return val, grcoulomb.render_graded(val)
    return val, render(val)


# ---------------------------------------------------------------------------
# entry point


def _parse_args(argv):
    top = argparse.ArgumentParser(prog="skeincb", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity verification suites")
    v.add_argument("--n", default="2,3,4", help="comma-separated surface sizes (n >= 2)")
    v.add_argument("--suite", default="all", help="comma-separated suites or 'all'")
    v.add_argument("--m-min", type=int, default=-2)
    v.add_argument("--m-max", type=int, default=4)
    v.add_argument("--max-color", type=int, default=6)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--json", dest="json_path", default=None, help="write a JSON report here")
    v.add_argument("--timings", action="store_true", help="include per-check timings in the report")
    v.add_argument("--profile", choices=("desk", "extended"), default=None,
                   help="desk: n=2,3,4, colors<=6; extended: n up to 6, colors<=8")

    e = sub.add_parser("eval", help="evaluate an expression")
    e.add_argument("--algebra", choices=("xtorus", "ztrace", "dz", "graded"), default="xtorus")
    e.add_argument("--n", type=int, default=3)
    e.add_argument("expression")
    return top.parse_args(argv)


def main(argv=None):
    args = _parse_args(argv if argv is not None else sys.argv[1:])
    if args.command == "eval":
        try:
            _, text = eval_expression(args.expression, args.algebra, args.n)
        except AlgebraError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(text)
        return 0

    if args.profile == "desk":
        args.n = "2,3,4"
        args.max_color = 6
    elif args.profile == "extended":
        args.n = "2,3,4,5,6"
        args.max_color = 8
    try:
        cfg = SuiteConfig(
            n_list=tuple(int(x) for x in args.n.split(",") if x.strip()),
            m_min=args.m_min,
            m_max=args.m_max,
            max_color=args.max_color,
            seed=args.seed,
            suites=tuple(args.suite.split(",")),
            json_path=args.json_path,
            timings=args.timings,
        ).validate()
    except (AlgebraError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2

    report = run_suite(cfg)
    for rec in report["checks"]:
        mark = "PASS" if rec["ok"] else "FAIL"
        print(f"[{mark}] {rec['id']}: {rec['anchor']}")
        if not rec["ok"] and rec.get("counterexample"):
            print(f"       counterexample: {rec['counterexample']}")
    s = report["summary"]
    print(f"{s['passed']}/{s['total']} checks passed")
    if cfg.json_path:
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    return 0 if s["failed"] == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
