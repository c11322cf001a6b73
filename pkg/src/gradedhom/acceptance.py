"""The acceptance pipeline: one function per criterion, shared by the tests and ``verify-all``."""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import GradedAlgebra
from .exact_linalg import Field
from .fixtures import CORPUS, DMAX, EXAMPLE_ONE, EXAMPLE_TWO, HMAX, KMAX, SEED, build, presentations, prime_field
from .gorenstein import check_as_gorenstein, dualizing_module, verify_double_ext
from .homology import Comparison, ext, ext_into_algebra, resolve, verify_lemma1, verify_lemma3
from .localcoh import (anchor_check, compare_routes, gamma_via_limit, lc_dimension_probe, verify_kunneth,
                       verify_lcf, verify_prop5)
from .module import algebra_mod_truncation, dual, projective, random_module, regular, simple

# runtime targets in seconds
TARGET_EXAMPLE_ONE = 60.0
TARGET_EXAMPLE_TWO = 300.0


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = dc_field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 1), "details": self.details}


def _timed(number: int, title: str, fn) -> CriterionResult:
    t0 = time.perf_counter()
    passed, details = fn()
    return CriterionResult(number, title, bool(passed), details, time.perf_counter() - t0)


def _rng(seed: int, salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, salt])


def _tally(cmps: list[Comparison]) -> dict:
    return {"matched": sum(c.matched for c in cmps),
            "mismatched": sum(len(c.mismatches) for c in cmps),
            "uncertified": sum(r["status"] == "uncertified" for c in cmps for r in c.rows)}


def _finite_samples(a: GradedAlgebra, rng, count: int, max_total: int = 12) -> list:
    out = []
    for j in range(count):
        m = random_module(a, rng, max_total=max_total)
        m.name = f"random_finite_{j}"
        out.append(m)
    return out


def _probe_samples(a: GradedAlgebra, rng, finite: int, generated: int) -> list:
    """Regular and projective modules, finite-length samples and finitely generated samples."""
    samples = [regular(a)] + [projective(a, v + 1) for v in range(a.vertex_count)]
    samples += _finite_samples(a, rng, finite)
    for j in range(generated):
        m = random_module(a, rng, finite=False)
        m.name = f"random_generated_{j}"
        samples.append(m)
    return samples


# -- criteria 1 and 2: worked examples ------------------------------------------------------------

def _example(name: str, n_expected: int, rng, finite: int, generated: int, field: Field) -> dict:
    a = build(name, field, DMAX)
    rep = check_as_gorenstein(a, HMAX)
    out = {"algebra": name, "verdict": rep.verdict, "n": rep.n, "reason": rep.reason}
    if not rep.verified:
        out["ok"] = False
        return out
    samples = _probe_samples(a, rng, finite, generated)
    probe = lc_dimension_probe(a, n_expected + 1, samples, KMAX)
    finite_max = [r["max_i"] for r in probe.per_sample if r["module"].startswith("random_finite")]
    out.update(probe_max=probe.max_nonzero, samples=len(samples),
               finite_length_samples=finite, finite_length_max=max((x for x in finite_max if x is not None),
                                                                    default=None),
               unstable_cells=sum(r["unstable"] for r in probe.per_sample))
    out["ok"] = rep.n == n_expected and probe.max_nonzero == n_expected
    return out


def criterion_1(seed: int = SEED, field: Field | None = None) -> CriterionResult:
    field = field or prime_field()

    def run():
        t0 = time.perf_counter()
        rng = _rng(seed, 1)
        per = [_example(EXAMPLE_ONE[n], n, rng, 20, 20, field) for n in (1, 2)]
        secs = time.perf_counter() - t0
        return all(p["ok"] for p in per) and secs < TARGET_EXAMPLE_ONE, \
            {"examples": per, "runtime": round(secs, 1), "target": TARGET_EXAMPLE_ONE}

    return _timed(1, "exterior(n) (x) polynomial(n): Gorenstein and local cohomology dimension n", run)


def criterion_2(seed: int = SEED, field: Field | None = None) -> CriterionResult:
    field = field or prime_field()

    def run():
        t0 = time.perf_counter()
        per = _example(EXAMPLE_TWO, 2, _rng(seed, 2), 10, 10, field)
        secs = time.perf_counter() - t0
        return per["ok"] and secs < TARGET_EXAMPLE_TWO, \
            {"example": per, "runtime": round(secs, 1), "target": TARGET_EXAMPLE_TWO}

    return _timed(2, "trivial extension (x) preprojective over the Kronecker quiver: dimension 2", run)


# -- criterion 3: the local cohomology formula -----------------------------------------------------

def lcf_suite(a: GradedAlgebra, modules: list, k_max: int = KMAX) -> tuple[list, dict]:
    rep = check_as_gorenstein(a, HMAX)
    if not rep.verified:
        return [], {"verdict": rep.verdict}
    dz = dualizing_module(a, rep)
    cmps, rows = [], []
    for m in modules:
        lim = gamma_via_limit(m, rep.n, k_max)
        for i in range(rep.n + 1):
            fr = verify_lcf(m, i, dz, rep.n, rep.op_shifts, k_max, lim)
            cmps.append(fr.comparison)
            rows.append({"module": m.name, "i": i, "verdict": fr.verdict})
    return cmps, {"n": rep.n, "formulas": rows, **_tally(cmps)}


def criterion_3(seed: int = SEED, field: Field | None = None, randoms: int = 20) -> CriterionResult:
    field = field or prime_field()

    def run():
        per, ok = {}, True
        for salt, name in enumerate(("polynomial2", "exterior2", EXAMPLE_ONE[2])):
            a = build(name, field, DMAX)
            mods = [simple(a, v + 1) for v in range(a.vertex_count)]
            t2 = algebra_mod_truncation(a, 2)
            t2.name = "trunc(2)"
            mods.append(t2)
            mods += _finite_samples(a, _rng(seed, 30 + salt), randoms)
            cmps, info = lcf_suite(a, mods)
            per[name] = {k: v for k, v in info.items() if k != "formulas"}
            ok = ok and bool(cmps) and info["mismatched"] == 0 and info["matched"] > 0
        return ok, per

    return _timed(3, "local cohomology formula on simples, trunc(2) and random finite modules", run)


# -- criterion 4: double Ext -----------------------------------------------------------------------

def criterion_4(seed: int = SEED, field: Field | None = None, count: int = 100,
                names: tuple[str, ...] = CORPUS) -> CriterionResult:
    field = field or prime_field()

    def run():
        per, ok = {}, True
        for salt, name in enumerate(names):
            a = build(name, field, DMAX)
            rep = check_as_gorenstein(a, HMAX)
            if not rep.verified:
                per[name] = {"verdict": rep.verdict, "skipped": True}
                continue
            rng = _rng(seed, 40 + salt)
            bad = {"vanishing": 0, "length": 0, "hilbert": 0}
            for m in _finite_samples(a, rng, count):
                r = verify_double_ext(a, m, rep)
                bad["vanishing"] += not r.vanishing_ok
                bad["length"] += r.length != r.ext_length
                bad["hilbert"] += r.hilbert.verdict != "match"
            per[name] = {"verdict": "Verified", "n": rep.n, "modules": count, "violations": bad}
            ok = ok and not any(bad.values())
        verified = [k for k, v in per.items() if not v.get("skipped")]
        return ok and bool(verified), {"per_algebra": per, "verified_algebras": verified}

    return _timed(4, "double Ext recovers finite-length modules on every Verified algebra", run)


# -- criterion 5: two routes and the anchor ---------------------------------------------------------

def criterion_5(seed: int = SEED, field: Field | None = None) -> CriterionResult:
    field = field or prime_field()
    names = ("polynomial2", "exterior2", EXAMPLE_ONE[1], EXAMPLE_ONE[2], EXAMPLE_TWO)

    def run():
        per, ok = {}, True
        for salt, name in enumerate(names):
            a = build(name, field, DMAX)
            rep = check_as_gorenstein(a, HMAX)
            if not rep.verified:
                per[name] = {"verdict": rep.verdict}
                ok = False
                continue
            dz = dualizing_module(a, rep)
            mods = [regular(a)] + [simple(a, v + 1) for v in range(a.vertex_count)]
            mods += [algebra_mod_truncation(a, 2)]
            mods += _finite_samples(a, _rng(seed, 50 + salt), 3)
            cmps = [compare_routes(m, dz, rep.n, KMAX) for m in mods]
            anchor = anchor_check(a, dz, rep.n, KMAX)
            per[name] = {"n": rep.n, "routes": _tally(cmps), "anchor": _tally([anchor])}
            ok = ok and per[name]["routes"]["mismatched"] == 0 and per[name]["routes"]["matched"] > 0 \
                and anchor.verdict == "match"
        return ok, per

    return _timed(5, "limit and Tor routes agree; top local cohomology of A is the dualizing module", run)


# -- criterion 6: left and right local cohomology of A ---------------------------------------------

def criterion_6(field: Field | None = None) -> CriterionResult:
    field = field or prime_field()

    def run():
        per, ok = {}, True
        for name in ("polynomial1", "exterior2", EXAMPLE_ONE[1], EXAMPLE_ONE[2]):
            a = build(name, field, DMAX)
            rep = check_as_gorenstein(a, HMAX)
            cmp = verify_prop5(a, rep.n if rep.verified else 2, KMAX)
            per[name] = _tally([cmp])
            ok = ok and cmp.verdict == "match"
        return ok, per

    return _timed(6, "left and right local cohomology of A agree degree-wise", run)


# -- criterion 7: Hom-tensor and Ext-Tor dualities -------------------------------------------------

SMALL = ("polynomial1", "exterior2", "trivext_A2", "path_A2", "preprojective_A2", "exterior1(x)polynomial1")


def _lemma_instances(field: Field, rng, count: int, dmax: int = 6):
    algs = [build(n, field, dmax) for n in SMALL]
    l1, l3 = [], []
    for _ in range(count):
        a = algs[int(rng.integers(len(algs)))]
        m = random_module(a, rng, max_total=6)
        x = random_module(a, rng, max_total=6)
        l1.append(verify_lemma1(m, x))
        y = random_module(a, rng, max_total=6)
        l3.append(verify_lemma3(x, y, int(rng.integers(0, 3))))
    return l1, l3


def field_spot_checks() -> list[dict]:
    """The same integer-defined computations over Q and GF(101) give equal tables."""
    rows = []
    for name in ("polynomial2", "exterior2", "trivext_A2", "exterior1(x)polynomial1"):
        tabs = []
        for f in (Field.rationals(), prime_field()):
            a = build(name, f, 6)
            mods = [simple(a, v + 1) for v in range(a.vertex_count)] + [algebra_mod_truncation(a, 2)]
            tabs.append([ext(m, regular(a), 3).dims for m in mods]
                        + [verify_lemma1(m, algebra_mod_truncation(a, 3)).rows for m in mods])
        rows.append({"algebra": name, "equal": tabs[0] == tabs[1]})
    return rows


def criterion_7(seed: int = SEED, count: int = 100) -> CriterionResult:
    def run():
        per, ok = {}, True
        for salt, f in enumerate((Field.rationals(), prime_field())):
            l1, l3 = _lemma_instances(f, _rng(seed, 70 + salt), count)
            key = "rationals" if f.p is None else f"GF({f.p})"
            per[key] = {"hom_tensor": _tally(l1), "ext_tor": _tally(l3)}
            ok = ok and all(c.verdict != "mismatch" for c in l1 + l3) \
                and per[key]["hom_tensor"]["matched"] > 0 and per[key]["ext_tor"]["matched"] > 0
        spots = field_spot_checks()
        per["field_consistency"] = spots
        return ok and all(s["equal"] for s in spots), per

    return _timed(7, "Hom-tensor and Ext-Tor dualities on random instances over both fields", run)


# -- criterion 8: Kunneth ---------------------------------------------------------------------------

def criterion_8(field: Field | None = None, t_max: int = 4) -> CriterionResult:
    field = field or prime_field()

    def run():
        per, ok = {}, True
        for left, right in (("exterior2", "polynomial2"), ("trivext_A2", "polynomial1")):
            cmp = verify_kunneth(build(left, field, DMAX), build(right, field, DMAX), t_max)
            per[f"{left}(x){right}"] = {**_tally([cmp]), "verdict": cmp.verdict}
            ok = ok and cmp.verdict == "match"
        return ok, per

    return _timed(8, "Ext of the top of a tensor product is the convolution of the factors", run)


# -- criterion 9: engine invariants -----------------------------------------------------------------

def relation_elements_vanish(a: GradedAlgebra, pres) -> bool:
    """Each defining relation, evaluated as an algebra element, is zero."""
    idx = {lab: i for i, lab in enumerate(a.labels[1])}
    f = a.field
    for rel in pres.relations:
        d = len(rel[0][1])
        if d > a.dmax:
            continue
        total = f.zeros(a.dim(d))
        for c, path in rel:
            elem = f.zeros(a.dim(1))
            elem[idx[path[0]]] = 1
            for k, arrow in enumerate(path[1:], start=1):
                step = f.zeros(a.dim(1))
                step[idx[arrow]] = 1
                # x * y walks y first, so appending an arrow multiplies on the left
                elem = a.product(1, step, k, elem)
            total = f.reduce(total + f.scalar(c) * elem)
        if np.any(total != 0):
            return False
    return True


def _same_module(m, n) -> bool:
    if (m.lo, m.hi) != (n.lo, n.hi) or m.hilbert() != n.hilbert():
        return False
    return all(np.array_equal(m.act1(d), n.act1(d)) for d in range(m.lo, m.hi))


def _refinement(name: str, field: Field) -> dict:
    small = build(name, field, DMAX - 2)
    big = build(name, field, DMAX)
    changed = checked = 0
    for v in range(small.vertex_count):
        ts = ext_into_algebra(simple(small, v + 1), HMAX - 2).table
        tb = ext_into_algebra(simple(big, v + 1), HMAX).table
        for key, val in ts.dims.items():
            if not ts.certified[key]:
                continue
            checked += 1
            if key in tb.dims and tb.certified[key]:
                changed += tb.dims[key] != val
            elif val:
                changed += 1
    vs, vb = check_as_gorenstein(small, HMAX - 2).verdict, check_as_gorenstein(big, HMAX).verdict
    flipped = {vs, vb} == {"Verified", "Refuted"}
    return {"cells_checked": checked, "cells_changed": changed, "verdicts": [vs, vb], "flipped": flipped}


def invariants(name: str, field: Field, hmax: int = 4) -> dict:
    a = build(name, field, DMAX)
    pres = presentations(field).get(name)
    out = {"associative": a.check_associativity(),
           "relations_annihilate": not regular(a).validate()
           and (pres is None or relation_elements_vanish(a, pres)),
           "opposite_involution": a.opposite().opposite().structure_signature() == a.structure_signature()}
    mods = [simple(a, v + 1) for v in range(a.vertex_count)] + [algebra_mod_truncation(a, 2)]
    mods += _finite_samples(a, _rng(SEED, 90), 2)
    complex_ok = minimal_ok = exact_ok = dual_ok = True
    for m in mods:
        res = resolve(m, hmax)
        complex_ok &= res.check_complex()
        minimal_ok &= res.check_minimal()
        exact_ok &= res.check_exact()
        dual_ok &= _same_module(dual(dual(m)), m)
    out.update(boundary_squared_zero=complex_ok, minimal=minimal_ok, exact=exact_ok, dual_involution=dual_ok)
    out["refinement"] = _refinement(name, field)
    out["ok"] = all(v for k, v in out.items() if k != "refinement") \
        and out["refinement"]["cells_changed"] == 0 and not out["refinement"]["flipped"]
    return out


def criterion_9(field: Field | None = None, names: tuple[str, ...] = CORPUS) -> CriterionResult:
    field = field or prime_field()

    def run():
        per = {name: invariants(name, field) for name in names}
        return all(p["ok"] for p in per.values()), per

    return _timed(9, "engine invariants and refinement stability across the fixture corpus", run)


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


def run_all(seed: int = SEED, only: list[int] | None = None) -> list[CriterionResult]:
    out = []
    for k in sorted(only or CRITERIA):
        fn = CRITERIA[k]
        out.append(fn(seed) if "seed" in fn.__code__.co_varnames else fn())
    return out


__all__ = ["CriterionResult", "CRITERIA", "run_all", "criterion_1", "criterion_2", "criterion_3", "criterion_4",
           "criterion_5", "criterion_6", "criterion_7", "criterion_8", "criterion_9", "invariants",
           "field_spot_checks", "relation_elements_vanish", "lcf_suite"]
