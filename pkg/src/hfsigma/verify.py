"""Verification suites: every algebraic identity and every table cross-check,
run over parameter sweeps and reported as pass/fail lines.

Each check is a VerificationCheck(id, params, expected, computed); a suite is
a named list of checks.  Random sweeps are seeded from the parameters, so a
report is reproducible bit for bit.
"""

import json
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import engine
from .cfk import GradedElement, gamma_action, j_infinity, slice_map
from .errors import DomainError
from .exterior import (Multivector, all_blades, blade_grade, contract_blades,
                       eta, omega, random_multivector, star_blade,
                       wedge_blades)
from .lefschetz import (coprimitive_dim, op_H, op_L, op_lambda,
                        primitive_basis, primitive_dim, self_dual_lattice,
                        self_dual_rank)
from .linalg import rank
from .rings import GF, QQ, ZZ

SUITES = ("sl2", "star", "swap", "jmap", "hat", "plus", "infinity", "mod2",
          "action", "eg", "beta", "all")


# where each check's expected value comes from: an algebraic identity that
# must hold on the nose, a closed-form count, a shipped known-answer table,
# or an independent recomputation of the same quantity by another route
_CHECK_SOURCES = {
    "commutator-exhaustive": "identity",
    "sl2-relations-exhaustive": "identity",
    "leibniz-random": "identity",
    "star-involution-exhaustive": "identity",
    "eta-contract-volume": "identity",
    "star-wedge-contract": "identity",
    "star-eigenvalue-lefschetz": "identity",
    "swap-random": "identity",
    "eta-multiplicativity": "identity",
    "primitive-contraction": "identity",
    "alternate-flip-formula": "identity",
    "flip-support": "identity",
    "flip-equivariance": "identity",
    "degree-preservation": "identity",
    "mod2-flip-is-star": "identity",
    "stable-F-equals-one-plus-J": "identity",
    "hat-closed-form": "closed-form",
    "hat-torsion-free": "closed-form",
    "hat-duality": "cross-computation",
    "selfdual-rank": "closed-form",
    "selfdual-star-fixed": "identity",
    "sign-free-iff-bundled": "closed-form",
    "hat-known-data-regression": "known-table",
    "reduced-matches-model": "closed-form",
    "reduced-free": "closed-form",
    "reduced-zero-small-genus": "closed-form",
    "reduced-support": "closed-form",
    "stabilization": "cross-computation",
    "kernel-is-primitives-stably": "cross-computation",
    "cokernel-is-coprimitives": "closed-form",
    "plus-known-data-regression": "known-table",
    "u-red-surjective-low": "closed-form",
    "u-red-injective-high": "closed-form",
    "u-red-unexpected-kernel": "closed-form",
    "infty-rank-Q": "closed-form",
    "infty-rank-F2": "closed-form",
    "infty-2-torsion": "closed-form",
    "infty-no-2-torsion": "closed-form",
    "infty-3-torsion": "closed-form",
    "mod2-tower-prediction": "cross-computation",
    "nontorsion-model-ranks": "closed-form",
    "nontorsion-phi-cross-check": "cross-computation",
    "conjugation-symmetry": "cross-computation",
    "vanishing-beyond-adjunction": "closed-form",
    "F-corner-restriction-surjective": "closed-form",
    "action-constraints": "closed-form",
    "action-standard": "closed-form",
    "action-has-corrections": "closed-form",
    "eg-rational-dims": "closed-form",
    "contraction-cokernels-agree": "cross-computation",
    "eg-2-torsion": "closed-form",
    "beta-composition-zero": "identity",
    "beta-quotient-total": "closed-form",
    "beta-matches-infinity": "cross-computation",
}


@dataclass
class VerificationCheck:
    check_id: str
    params: dict
    expected: object
    computed: object

    @property
    def ok(self):
        return self.expected == self.computed

    @property
    def source(self):
        return _CHECK_SOURCES.get(self.check_id, "identity")

    def to_json(self):
        return {"id": self.check_id, "params": self.params,
                "expected": str(self.expected), "computed": str(self.computed),
                "source": self.source, "pass": self.ok}


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, check_id, params, expected, computed):
        self.checks.append(VerificationCheck(check_id, params, expected, computed))

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def to_json(self):
        return {"suite": self.suite, "pass": self.ok, "wall_time": self.wall_time,
                "checks": [c.to_json() for c in self.checks]}

    def lines(self):
        out = []
        for c in self.checks:
            tag = "PASS" if c.ok else "FAIL"
            out.append(f"[{tag}] {c.check_id} {c.params} "
                       f"expected={c.expected} computed={c.computed}")
        out.append(f"[{'PASS' if self.ok else 'FAIL'}] suite={self.suite} "
                   f"({len(self.checks)} checks, {self.wall_time:.1f}s)")
        return out


def _rng(*key):
    # process-independent seed (builtin hash() is salted per interpreter)
    import zlib
    return random.Random(zlib.crc32(repr(key).encode()))


def _known_table(name):
    path = os.path.join(os.path.dirname(__file__), "data", name)
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# exterior-algebra suites
# ---------------------------------------------------------------------------

def suite_sl2(max_genus=5):
    """Commutation relations of the raising/lowering/weight triple, the
    contraction commutator, and the Leibniz rule."""
    rep = VerificationReport("sl2")
    for g in range(1, max_genus + 1):
        w = omega(g)
        bad_comm = 0
        bad_sl2 = 0
        for m in all_blades(g):
            a = Multivector.from_blade(g, m)
            p = blade_grade(m)
            if w.contract(w.wedge(a)) - w.wedge(w.contract(a)) != a.scale(p - g):
                bad_comm += 1
            if (op_lambda(op_H(a)) - op_H(op_lambda(a)) != op_lambda(a).scale(-2)
                    or op_L(op_H(a)) - op_H(op_L(a)) != op_L(a).scale(2)
                    or op_lambda(op_L(a)) - op_L(op_lambda(a)) != op_H(a)):
                bad_sl2 += 1
        rep.add("commutator-exhaustive", {"g": g}, 0, bad_comm)
        rep.add("sl2-relations-exhaustive", {"g": g}, 0, bad_sl2)
        rng = _rng("leibniz", g)
        bad = 0
        trials = 0
        for _ in range(40):
            pa, pb = rng.randint(0, 2 * g), rng.randint(0, 2 * g)
            a = random_multivector(g, pa, rng)
            b = random_multivector(g, pb, rng)
            for i in range(1, 2 * g + 1):
                v = Multivector.basis_vector(g, i)
                lhs = v.contract(a.wedge(b))
                rhs = v.contract(a).wedge(b) + a.wedge(v.contract(b)).scale((-1) ** pa)
                trials += 1
                if lhs != rhs:
                    bad += 1
        rep.add("leibniz-random", {"g": g, "trials": trials}, 0, bad)
    return rep


def suite_star(max_genus=5):
    """Star involution sign, its eigenvalues on the Lefschetz summands, and
    the wedge/contract exchange identities."""
    rep = VerificationReport("star")
    for g in range(1, max_genus + 1):
        bad = sum(1 for m in all_blades(g)
                  if Multivector.from_blade(g, m).star().star()
                  != Multivector.from_blade(g, m).scale((-1) ** (g - blade_grade(m))))
        rep.add("star-involution-exhaustive", {"g": g}, 0, bad)
        bad_n = 0
        for n in range(0, g + 1):
            if eta(n, g).contract(eta(g, g)) != eta(g - n, g).scale((-1) ** n):
                bad_n += 1
        rep.add("eta-contract-volume", {"g": g}, 0, bad_n)
        rng = _rng("starlemma", g)
        bad = 0
        trials = 0
        for _ in range(40):
            p = rng.randint(0, 2 * g)
            a = random_multivector(g, p, rng)
            for i in range(1, 2 * g + 1):
                v = Multivector.basis_vector(g, i)
                trials += 1
                if (v.wedge(a).star() != v.contract(a.star())
                        or v.contract(a).star() != v.wedge(a.star()).scale(-1)):
                    bad += 1
        rep.add("star-wedge-contract", {"g": g, "trials": trials}, 0, bad)
        if g <= 5:
            bad = 0
            for k in range(0, g // 2 + 1):
                for b in primitive_basis(g, g - 2 * k):
                    v = b.wedge(eta(k, g, QQ))
                    if v.star() != v.scale((-1) ** k):
                        bad += 1
            rep.add("star-eigenvalue-lefschetz", {"g": g}, 0, bad)
    return rep


def suite_swap(max_genus=5):
    """Contraction of the divided powers: the swap identity and the
    primitive special case."""
    rep = VerificationReport("swap")
    for g in range(1, max_genus + 1):
        rng = _rng("swap", g)
        bad = 0
        trials = 0
        for p in range(0, 2 * g + 1):
            for _ in range(10):
                xi = random_multivector(g, p, rng)
                for k in range(0, g + 1):
                    lhs = xi.contract(eta(k, g))
                    rhs = Multivector.zero(g)
                    for l in range(0, g + 1):
                        rhs = rhs + eta(l, g).contract(xi).wedge(eta(k - p + l, g))
                    trials += 1
                    if lhs != rhs:
                        bad += 1
        rep.add("swap-random", {"g": g, "trials": trials}, 0, bad)
        bad = 0
        for i in range(0, g + 1):
            for j in range(0, g + 1):
                if eta(i, g).wedge(eta(j, g)) != eta(i + j, g).scale(comb(i + j, i)):
                    bad += 1
        rep.add("eta-multiplicativity", {"g": g}, 0, bad)
        bad = 0
        for q in range(0, g + 1):
            for b in primitive_basis(g, q)[:6]:
                for l in range(0, g + 1):
                    if b.contract(eta(l, g, QQ)) != b.wedge(eta(l - q, g, QQ)):
                        bad += 1
        rep.add("primitive-contraction", {"g": g}, 0, bad)
    return rep


def suite_jmap(max_genus=5):
    """Flip-map identities: the alternate exponential form, the support
    lemma, equivariance, degree preservation, and its mod-2 reduction."""
    rep = VerificationReport("jmap")
    for g in range(1, max_genus + 1):
        rng = _rng("jmap", g)

        def emw(x, contractp):
            out = GradedElement(g)
            for n in range(0, g + 1):
                en = eta(n, g)
                term = {}
                for (i, m), c in x.terms.items():
                    for m2, c2 in en.coeffs.items():
                        hit = (contract_blades(m2, m) if contractp
                               else wedge_blades(m2, m))
                        if hit:
                            s, mm = hit
                            key = (i + n, mm) if contractp else (i - n, mm)
                            term[key] = term.get(key, 0) + s * c * c2
                out = out + GradedElement(g, term).scale((-1) ** n)
            return out

        bad = 0
        trials = 0
        for _ in range(12):
            p = rng.randint(0, 2 * g)
            x = GradedElement.from_multivector(random_multivector(g, p, rng),
                                               i=rng.randint(-2, 2))
            trials += 1
            if j_infinity(emw(x, False)) != emw(emw(x, True), False).scale(-1):
                bad += 1
        rep.add("alternate-flip-formula", {"g": g, "trials": trials}, 0, bad)

        bad = 0
        for _ in range(12):
            p = rng.randint(0, 2 * g)
            x = GradedElement.from_multivector(random_multivector(g, p, rng),
                                               i=rng.randint(-5, -1))
            if any(j >= 0 for (_i, j) in j_infinity(x).positions()):
                bad += 1
        rep.add("flip-support", {"g": g}, 0, bad)

        bad = 0
        for _ in range(8):
            p = rng.randint(0, 2 * g)
            x = GradedElement.from_multivector(random_multivector(g, p, rng),
                                               i=rng.randint(-2, 3))
            for gi in range(1, 2 * g + 1):
                if (j_infinity(gamma_action(gi, x, truncate=False))
                        != gamma_action(gi, j_infinity(x), truncate=False)):
                    bad += 1
        rep.add("flip-equivariance", {"g": g}, 0, bad)

        bad = 0
        for d in range(-1, g + 2):
            sm = slice_map(g, "F", d, s=0)
            for (i, mask) in sm.source.elements[:50]:
                x = GradedElement(g, {(i, mask): 1})
                if j_infinity(x).degrees() not in ([], x.degrees()):
                    bad += 1
        rep.add("degree-preservation", {"g": g}, 0, bad)

        bad = 0
        for d in (g - 1, g):
            sm = slice_map(g, "one_plus_J", d)
            m2 = sm.matrix.convert(GF(2))
            cols = m2.col_dicts()
            for c, (i, mask) in enumerate(sm.source.elements):
                p = blade_grade(mask)
                sc, smk = star_blade(mask, g)
                expect = {}
                for key in ((i, mask), (i + p - g, smk)):
                    r = sm.target.index.get(key)
                    if r is not None:
                        expect[r] = (expect.get(r, 0) + 1) % 2
                expect = {k: v for k, v in expect.items() if v}
                got = {r: int(v) % 2 for r, v in cols[c].items() if int(v) % 2}
                if got != expect:
                    bad += 1
        rep.add("mod2-flip-is-star", {"g": g}, 0, bad)

        bad = 0 if slice_map(g, "F", g, s=0).matrix.entries == \
            slice_map(g, "one_plus_J", g).matrix.entries else 1
        rep.add("stable-F-equals-one-plus-J", {"g": g, "d": g}, 0, bad)
    return rep


def suite_hat(max_genus=5):
    """Hat tables against the closed form; duality; freeness; the sign
    determination; the star-fixed lattice."""
    rep = VerificationReport("hat")
    for g in range(1, max_genus + 1):
        table = engine.hf_hat(g)
        params = {"g": g, "hash": table.metadata.get("matrix_hash_d0")}
        bad_rank = sum(1 for d, grp in table.entries.items()
                       if grp.free_rank != engine.hf_hat_closed_form_rank(g, d))
        rep.add("hat-closed-form", params, 0, bad_rank)
        rep.add("hat-torsion-free", {"g": g}, True,
                all(grp.is_free() for grp in table.entries.values()))
        bad_dual = sum(1 for d in table.entries
                       if table.rank_at(d) != table.rank_at(-d))
        rep.add("hat-duality", {"g": g}, 0, bad_dual)
        gens = self_dual_lattice(g)
        rep.add("selfdual-rank", {"g": g}, self_dual_rank(g), len(gens))
        rep.add("selfdual-star-fixed", {"g": g}, 0,
                sum(1 for v in gens if v.star() != v))
        if g >= 2:
            cks = engine.sign_choice_cokernels(g)
            rep.add("sign-free-iff-bundled", {"g": g}, (True, False),
                    (cks[(-1) ** (g - 1)].is_free(), cks[(-1) ** g].is_free()))
        known = _known_table("hat_known.json")
        if str(g) in known:
            bad = sum(1 for dstr, r in known[str(g)].items()
                      if table.rank_at(Fraction(dstr)) != r)
            rep.add("hat-known-data-regression", {"g": g}, 0, bad)
    return rep


def suite_plus(max_genus=5):
    """Torsion-structure plus tables: reduced ranks against the triangle
    model, support window, freeness, stabilization, kernel and cokernel
    identifications."""
    rep = VerificationReport("plus")
    for g in range(1, max_genus + 1):
        red = engine.hf_plus_reduced(g)
        dims = engine.x_model_dims(g, g - 3)
        bad = sum(1 for d, grp in red.entries.items()
                  if grp.free_rank != dims.get(d - Fraction(5, 2), 0))
        rep.add("reduced-matches-model", {"g": g}, 0, bad)
        rep.add("reduced-free", {"g": g}, True,
                all(grp.is_free() for grp in red.entries.values()))
        support = red.support()
        if g <= 2:
            rep.add("reduced-zero-small-genus", {"g": g}, [], support)
        else:
            rep.add("reduced-support", {"g": g},
                    [Fraction(5 - 2 * g, 2), Fraction(2 * g - 7, 2)],
                    [min(support), max(support)])
        plus = engine.hf_plus_torsion(g)
        inf = engine.hf_infinity(g, ZZ)
        bad = 0
        for d in plus.entries:
            if d >= Fraction(2 * g - 1, 2):
                ref = inf.entries[d] if d in inf.entries else \
                    inf.entries[[dd for dd in inf.entries if (dd - d) % 2 == 0][0]]
                if plus.entries[d] != ref:
                    bad += 1
        rep.add("stabilization", {"g": g}, 0, bad)
        # kernel rank at stable degrees = primitive dims of matching parity
        bad = 0
        for d in (g - 1, g):
            m = engine._fmap(g, "F", d).matrix
            krank = m.cols - rank(m, QQ)
            want = sum(primitive_dim(g, j) for j in range((g + d) % 2, g + 1, 2))
            if krank != want:
                bad += 1
        rep.add("kernel-is-primitives-stably", {"g": g}, 0, bad)
        # cokernel rank for all d >= 0 equals the coprimitive count
        bad = 0
        for d in range(0, g + 2):
            m = engine._fmap(g, "F", d).matrix
            crank = m.rows - rank(m, QQ)
            want = sum(coprimitive_dim(g, j)
                       for j in range(g + d, g - d - 1, -2) if j >= g)
            tail = comb(2 * g, g - d - 2) if g - d - 2 >= 0 else 0
            closed = (comb(2 * g, g) if d % 2 == 0 else comb(2 * g, g - 1)) - tail
            if crank != want or crank != closed:
                bad += 1
        rep.add("cokernel-is-coprimitives", {"g": g}, 0, bad)
        known = _known_table("plus_known.json")
        if str(g) in known:
            tq = engine.hf_plus_torsion(g, QQ)
            bad = sum(1 for dstr, r in known[str(g)].items()
                      if Fraction(dstr) in tq.entries
                      and tq.entries[Fraction(dstr)].free_rank != r)
            rep.add("plus-known-data-regression", {"g": g}, 0, bad)
        # U-action report
        if g >= 3:
            urep = engine.u_action_red(g)
            cks = urep["checks"]
            rep.add("u-red-surjective-low", {"g": g}, True,
                    cks["surjective_at_and_below_middle"])
            rep.add("u-red-injective-high", {"g": g}, True, cks["injective_above"])
            rep.add("u-red-unexpected-kernel", {"g": g},
                    cks["unexpected_kernel_formula"],
                    cks["unexpected_kernel_computed"])
    return rep


def suite_infinity(max_genus=5):
    """Fully inverted flavor: rational and mod-2 ranks, integral torsion."""
    rep = VerificationReport("infinity")
    for g in range(1, max_genus + 1):
        ti = engine.hf_infinity(g, QQ)
        rep.add("infty-rank-Q", {"g": g}, {comb(2 * g + 1, g)},
                {grp.free_rank for grp in ti.entries.values()})
        tf = engine.hf_infinity(g, GF(2))
        rep.add("infty-rank-F2", {"g": g}, {2 ** (2 * g - 1) + 2 ** (g - 1)},
                {grp.free_rank for grp in tf.entries.values()})
        tz = engine.hf_infinity(g, ZZ)
        factors = tz.all_invariant_factors()
        params = {"g": g, "hash": tz.metadata.get("matrix_hashes")}
        if g >= 3:
            rep.add("infty-2-torsion", params, True,
                    any(f % 2 == 0 for f in factors))
        else:
            rep.add("infty-no-2-torsion", params, [], factors)
        if g >= 5:
            rep.add("infty-3-torsion", params, True,
                    any(f % 3 == 0 for f in factors))
    return rep


def suite_mod2(max_genus=5):
    """Plus flavor mod 2 equals the hat table tensored up the U-tower."""
    rep = VerificationReport("mod2")
    for g in range(1, max_genus + 1):
        t2 = engine.hf_plus_torsion(g, GF(2))
        hatz = engine.hf_hat(g)
        low = Fraction(-2 * g - 1, 2)
        bad = 0
        for d, grp in t2.entries.items():
            want = 0
            dd = d
            while dd >= low:
                want += hatz.rank_at(dd)
                dd -= 2
            if grp.free_rank != want:
                bad += 1
        rep.add("mod2-tower-prediction", {"g": g}, 0, bad)
    return rep


def suite_action(max_genus=5, genus_corrections=5):
    """Nontorsion tables, the phi cross-check, and the corrected homology
    action with its location and vanishing constraints."""
    rep = VerificationReport("action")
    for g in range(2, max_genus + 1):
        for k in range(1, g):
            table, model = engine.hf_plus_nontorsion(g, k)
            dims = model.dims()
            bad = sum(1 for n, grp in table.entries.items()
                      if grp.free_rank != dims.get(n, 0))
            bad += sum(1 for n, v in dims.items()
                       if v != table.rank_at(n))
            rep.add("nontorsion-model-ranks", {"g": g, "k": k}, 0, bad)
            rep.add("nontorsion-phi-cross-check", {"g": g, "k": k}, True,
                    table.metadata.get("phi_rank_checked", False))
            tneg, _ = engine.hf_plus_nontorsion(g, -k)
            rep.add("conjugation-symmetry", {"g": g, "k": k}, True,
                    tneg.entries == table.entries)
        tz, _ = engine.hf_plus_nontorsion(g, g)
        rep.add("vanishing-beyond-adjunction", {"g": g, "k": g}, {}, tz.entries)
        rep.add("F-corner-restriction-surjective", {"g": g, "k": 1}, True,
                engine.f_restriction_surjective(g, 1))

    for g in range(2, max_genus + 1):
        for k in range(1, g):
            model = engine.XModel(g, g - 1 - k)
            standard_expected = 3 * k > g - 2
            nonzero = 0
            violations = 0
            pairs = 0
            for key in model.basis():
                n = model.degree_of(key)
                for gi in range(1, 2 * g + 1):
                    pairs += 1
                    _, corrs = engine.h1_action(g, k, gi, key)
                    for ct in corrs:
                        nonzero += 1
                        power, uexp, deg = engine.correction_location(g, k, n, ct.ell)
                        if (ct.exterior_power != power or ct.u_exponent != uexp
                                or ct.degree != deg or n < (2 * ct.ell - 1) * k
                                or not 0 < ct.ell <= (n + k) // (2 * k)):
                            violations += 1
            rep.add("action-constraints", {"g": g, "k": k, "pairs": pairs},
                    0, violations)
            if standard_expected:
                rep.add("action-standard", {"g": g, "k": k}, 0, nonzero)
            else:
                rep.add("action-has-corrections", {"g": g, "k": k}, True,
                        nonzero > 0)
    return rep


def suite_eg(max_genus=5):
    """Circle-bundle cohomology: rational ranks against (co)primitive
    dimensions, integral torsion, and the two contraction cokernels."""
    rep = VerificationReport("eg")
    for g in range(1, max_genus + 1):
        egq = engine.eg_cohomology(g, QQ)
        bad = sum(1 for j, grp in egq.items()
                  if grp.free_rank != engine.eg_rank_prediction(g, j))
        rep.add("eg-rational-dims", {"g": g}, 0, bad)
        cmpres = engine.contraction_cokernel_comparison(g)
        bad = sum(1 for parity, (lhs, rhs) in cmpres.items() if lhs != rhs)
        rep.add("contraction-cokernels-agree", {"g": g}, 0, bad)
        if g >= 3:
            egz = engine.eg_cohomology(g, ZZ)
            rep.add("eg-2-torsion", {"g": g}, True,
                    any(f % 2 == 0 for grp in egz.values()
                        for f in grp.invariant_factors))
    return rep


def suite_beta(max_genus=4):
    """Triple-cup homomorphisms: composition vanishes; graded quotient
    dimensions add up to twice the per-degree inverted-flavor rank."""
    rep = VerificationReport("beta")
    for g in range(1, max_genus + 1):
        dims = engine.beta_quotient_dims(g)  # raises if composition nonzero
        rep.add("beta-composition-zero", {"g": g}, True, True)
        rep.add("beta-quotient-total", {"g": g}, 2 * comb(2 * g + 1, g),
                sum(dims.values()))
        inf = engine.hf_infinity(g, QQ)
        per_degree = {grp.free_rank for grp in inf.entries.values()}
        rep.add("beta-matches-infinity", {"g": g},
                {sum(dims.values()) // 2}, per_degree)
    return rep


_SUITE_FUNCS = {
    "sl2": suite_sl2,
    "star": suite_star,
    "swap": suite_swap,
    "jmap": suite_jmap,
    "hat": suite_hat,
    "plus": suite_plus,
    "infinity": suite_infinity,
    "mod2": suite_mod2,
    "action": suite_action,
    "eg": suite_eg,
    "beta": suite_beta,
}


def run_suite(name, max_genus=5):
    """Run one suite (or every suite for "all") at the given genus cap."""
    if name == "all":
        t0 = time.time()
        combined = VerificationReport("all")
        for n in _SUITE_FUNCS:
            sub = run_suite(n, max_genus)
            combined.checks.extend(sub.checks)
        combined.wall_time = time.time() - t0
        return combined
    if name not in _SUITE_FUNCS:
        raise DomainError(f"unknown suite {name!r}; choose from {SUITES}")
    t0 = time.time()
    fn = _SUITE_FUNCS[name]
    if name == "beta":
        rep = fn(min(max_genus, 4))
    else:
        rep = fn(max_genus)
    rep.wall_time = time.time() - t0
    return rep
