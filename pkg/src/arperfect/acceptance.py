"""The acceptance checks, as library functions shared by ``verify`` and the tests.

Each ``criterion_N`` returns a :class:`CriterionResult`; failures carry a
short description of the first mismatches found.  Expensive objects (AR
triangles, decompositions) are cached per fixture algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import artheory as ar
from . import endo
from . import fixtures as fx
from . import forms as fm
from . import homotopy as ho
from . import modrep as mr

SYMMETRIC_FIXTURES = ("a3", "a5")
STABLE_TABLE_A5 = ((1, 1, 1, 1), (1, 2, 2, 1), (1, 2, 2, 1), (1, 1, 1, 1))


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    checks: int = 0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        detail = f"{self.checks} checks"
        if self.failures:
            detail += f"; first failure: {self.failures[0]}"
        return f"criterion {self.number} [{verdict}] {self.title} ({detail})"


class _Tally:
    def __init__(self, number: int, title: str):
        self.result = CriterionResult(number, title, True)

    def check(self, ok: bool, what: str):
        self.result.checks += 1
        if not ok:
            self.result.passed = False
            self.result.failures.append(what)

    def done(self) -> CriterionResult:
        return self.result


# -- fixture objects ---------------------------------------------------------


def uniserials(alg) -> list:
    """V_1, ..., V_{L-1}: the non-projective indecomposables of a local Nakayama algebra."""
    return [mr.uniserial(alg, 0, k) for k in range(1, alg.radical_nilpotency)]


@lru_cache(maxsize=None)
def named_complexes(name: str) -> tuple:
    """(label, complex) pairs: the indecomposable fixture complexes over a symmetric fixture."""
    alg = fx.algebra(name)
    out = [("P", ho.stalk(alg, (0,)))]
    out += [(f"C{n}", ar.projective_chain_complex(alg, 0, n)) for n in (1, 2, 3)]
    out.append(("H", ar.heart_complex(alg, 0)))
    for k, v in enumerate(uniserials(alg), start=1):
        out.append((f"Pres(V{k})", ho.from_resolution(v, 1)))
        out.append((f"Res2(V{k})", ho.from_resolution(v, 2)))
    out.append(("B1", ar.big_homology_complex(alg, 0, 1)))
    return tuple((label, ho.minimize(c)) for label, c in out)


@lru_cache(maxsize=None)
def distinct_complexes(name: str) -> tuple:
    """Fixture complexes with isomorphic duplicates removed (first label wins)."""
    kept = []
    for label, c in named_complexes(name):
        if not any(ho.is_isomorphic(c, d) for _, d in kept):
            kept.append((label, c))
    return tuple(kept)


@lru_cache(maxsize=None)
def triangle_ends(name: str) -> tuple:
    """Third terms of the triangles the pairing criteria are checked on."""
    alg = fx.algebra(name)
    out = [("P", ho.stalk(alg, (0,))), ("C1", ar.projective_chain_complex(alg, 0, 1)), ("H", ar.heart_complex(alg, 0))]
    for k, v in enumerate(uniserials(alg), start=1):
        out.append((f"Pres(V{k})", ho.from_resolution(v, 1)))
    return tuple(out)


@lru_cache(maxsize=None)
def triangle(name: str, label: str, seed: int = 0) -> ar.ARTriangle:
    z = dict(triangle_ends(name))[label]
    return ar.ar_triangle_ending_at(z, seed)


@lru_cache(maxsize=None)
def hat(name: str, label: str, seed: int = 0) -> fm.FormalSum:
    return fm.hat_element(triangle(name, label, seed))


@lru_cache(maxsize=None)
def distance(name: str, label: str, seed: int = 0) -> int:
    return ar.distance_from_rim(dict(named_complexes(name))[label], seed)


def _orbit_offset(w: ho.PerfectComplex, z: ho.PerfectComplex):
    """j with W ≅ Z[j], or None."""
    return ho.is_shift_of(w, z)


# -- criteria ------------------------------------------------------------------


def criterion_1(seed: int = 0) -> CriterionResult:
    t = _Tally(1, "stable Hom table over F_5[X]/(X^5)")
    vs = uniserials(fx.algebra("a5"))
    for i, a in enumerate(vs):
        for j, b in enumerate(vs):
            got = mr.stable_hom_dim(a, b)
            t.check(got == STABLE_TABLE_A5[i][j], f"V{i + 1},V{j + 1}: {got} != {STABLE_TABLE_A5[i][j]}")
    return t.done()


def criterion_2(seed: int = 0) -> CriterionResult:
    t = _Tally(2, "hat elements detect Z and Z[-1]")
    for name in SYMMETRIC_FIXTURES:
        for zlabel, _ in triangle_ends(name):
            tri = triangle(name, zlabel, seed)
            h = hat(name, zlabel, seed)
            lo = min(tri.x.lo, tri.z.lo)
            hi = max(tri.x.hi, tri.z.hi)
            for wlabel, w in distinct_complexes(name):
                j0 = _orbit_offset(w, tri.z)
                # W[j] can only see the triangle when its span meets [lo, hi]
                for j in range(lo - w.hi - 1, hi - w.lo + 2):
                    got = fm.pairing(ho.shift(w, j), h)
                    want = 1 if j0 is not None and j0 + j in (0, -1) else 0
                    t.check(got == want, f"{name}: <{wlabel}[{j}], hat {zlabel}> = {got}, expected {want}")
    return t.done()


def criterion_3(seed: int = 0) -> CriterionResult:
    t = _Tally(3, "Laurent duality and Hermitian symmetry")
    one_t = fm.LaurentValue({0: 1, 1: 1})
    for name in SYMMETRIC_FIXTURES:
        for zlabel, _ in triangle_ends(name):
            tri = triangle(name, zlabel, seed)
            for wlabel, w in distinct_complexes(name):
                got = fm.dual_check(tri, w)
                j0 = _orbit_offset(w, tri.z)
                want = one_t.shift(j0) if j0 is not None else fm.LaurentValue()
                t.check(got == want, f"{name}: dual({zlabel}, {wlabel}) = {got}, expected {want}")
        cs = distinct_complexes(name)[:10]
        for i, (la_, c) in enumerate(cs):
            for lb, d in cs[i:]:
                t.check(fm.hermitian_check(c, d), f"{name}: <{la_},{lb}> not Hermitian")
    return t.done()


def criterion_4(seed: int = 0) -> CriterionResult:
    t = _Tally(4, "Laurent pairings along the projective component")
    for name in SYMMETRIC_FIXTURES:
        alg = fx.algebra(name)
        cs = [ar.projective_chain_complex(alg, 0, n) for n in range(4)]
        base = fm.pairing_t(cs[0], cs[0])
        for m in range(4):
            for n in range(4):
                got = fm.pairing_t(cs[m], cs[n])
                want = fm.predicted_pairing(m, n, base, True)
                t.check(fm.RationalValue(got) == want, f"{name}: <C{m},C{n}>^t = {got}, predicted {want}")
    return t.done()


def projective_component_homology(alg, n: int) -> list:
    """Expected homology of the chain of n+1 projectives, leftmost degree first.

    Only used over symmetric fixtures, where the Nakayama twists are trivial.
    """
    P = mr.projective(alg, 0)
    if n == 0:
        return [P]
    return [mr.radical_module(P)] + [mr.heart(alg, 0)] * (n - 1) + [mr.socle_quotient(P)]


def criterion_5(seed: int = 0) -> CriterionResult:
    t = _Tally(5, "complexes in the component of P_S")
    for name in SYMMETRIC_FIXTURES:
        alg = fx.algebra(name)
        for n in range(5):
            c = ar.projective_chain_complex(alg, 0, n)
            t.check(ho.is_indecomposable(c, seed), f"{name}: C{n} decomposes")
            dist = ar.distance_from_rim(c, seed)
            t.check(dist == n, f"{name}: C{n} at distance {dist}")
            want = projective_component_homology(alg, n)
            for k, mod in zip(range(n, -1, -1), want):
                got = ho.homology(c, k)
                t.check(mr.is_isomorphic(got, mod, seed), f"{name}: H_{k}(C{n}) has dim {got.dim}, expected {mod.dim}")
        P = mr.projective(alg, 0)
        seq = ar.ar_sequence(mr.socle_quotient(P), seed)
        t.check(seq.is_exact() and not seq.has_section(), f"{name}: sequence ending at P/Soc P is not almost split")
        t.check(mr.is_isomorphic(seq.tau_m, mr.radical_module(P), seed), f"{name}: left term is not Rad P")
        middle = mr.decompose(seq.middle, seed).summands
        expect = [P] + ([mr.heart(alg, 0)] if alg.radical_nilpotency > 2 else [])
        t.check(_same_summands(middle, expect, seed), f"{name}: middle term is not P + heart")
    return t.done()


def _same_summands(summands: list, expected: list, seed: int) -> bool:
    want = list(expected)
    for mod, mult in summands:
        for _ in range(mult):
            for i, e in enumerate(want):
                if mr.is_isomorphic(mod, e, seed):
                    del want[i]
                    break
            else:
                return False
    return not want


def criterion_6(seed: int = 0) -> CriterionResult:
    t = _Tally(6, "almost split sequences and their three-term complexes")
    vs = uniserials(fx.algebra("a5"))
    P = mr.projective(fx.algebra("a5"), 0)
    full = [None] + vs + [P]
    for i in range(1, 5):
        seq = ar.ar_sequence(vs[i - 1], seed)
        t.check(seq.is_exact(), f"a5: sequence for V{i} not exact")
        t.check(not seq.has_section(), f"a5: sequence for V{i} splits")
        t.check(mr.is_isomorphic(seq.tau_m, vs[i - 1], seed), f"a5: tau V{i} is not V{i}")
        expect = [m for m in (full[i - 1], full[i + 1]) if m is not None]
        t.check(_same_summands(mr.decompose(seq.middle, seed).summands, expect, seed), f"a5: middle for V{i} wrong")
    for name in SYMMETRIC_FIXTURES:
        for k, v in enumerate(uniserials(fx.algebra(name)), start=1):
            seq = ar.ar_sequence(v, seed)
            e = ar.e_complex(v, seed)
            for deg, want in ((1, seq.tau_m), (0, seq.middle), (-1, v)):
                got = ho.homology(e, deg)
                t.check(mr.is_isomorphic(got, want, seed), f"{name}: H_{deg}(E(V{k})) wrong")
    return t.done()


def criterion_7(seed: int = 0) -> CriterionResult:
    t = _Tally(7, "rim criteria agree with the distance walk")
    for name in SYMMETRIC_FIXTURES:
        alg = fx.algebra(name)
        for label, c in named_complexes(name):
            on_rim = distance(name, label, seed) == 0
            if c.length == 2:
                predicted = not ar.is_top_to_socle_two_term(c)
                t.check(predicted == on_rim, f"{name}: two-term {label} rim={on_rim}")
            if ar.zero_isolated_homology(c):
                t.check(on_rim, f"{name}: {label} has isolated homology but is off the rim")
            if ar.is_rigid(c, seed):
                t.check(on_rim, f"{name}: rigid {label} is off the rim")
        # truncated resolutions
        omega_inv_s = mr.cosyzygy(mr.simple(alg, 0))
        for k, v in enumerate(uniserials(alg), start=1):
            for n in (1, 2, 3):
                d = ar.distance_from_rim(ho.from_resolution(v, n), seed)
                exceptional = n == 1 and mr.is_isomorphic(v, omega_inv_s, seed)
                want = 1 if exceptional else 0
                t.check(d == want, f"{name}: resolution of V{k} truncated at {n} has distance {d}")
    return t.done()


def criterion_8(seed: int = 0, rmax: int = 3) -> CriterionResult:
    t = _Tally(8, "stabilization of big-homology complexes grows")
    alg = fx.algebra("a3")
    dims = []
    for r in range(1, rmax + 1):
        c = ar.big_homology_complex(alg, 0, r)
        t.check(ar.is_on_rim(c, seed), f"a3: r={r} complex off the rim")
        dims.append(ar.stabilization_module(c, seed).dim)
        t.check(dims[-1] >= r, f"a3: r={r} stabilization dim {dims[-1]} < {r}")
    t.check(all(a < b for a, b in zip(dims, dims[1:])), f"a3: dims {dims} not increasing")
    return t.done()


def criterion_9(seed: int = 0) -> CriterionResult:
    t = _Tally(9, "property suites")
    rng = np.random.default_rng(seed)
    for name in SYMMETRIC_FIXTURES:
        alg = fx.algebra(name)
        cs = distinct_complexes(name)
        # exactness around triangles, per shift
        for zlabel, _ in triangle_ends(name):
            tri = triangle(name, zlabel, seed)
            for wlabel, w in cs:
                if _orbit_offset(w, tri.z) is None:
                    v = fm.dual_check(tri, w)
                    t.check(v.is_zero(), f"{name}: alternating Hom sums for {wlabel} vs {zlabel} are {v}")
            shifted_projective = tri.z.length == 1
            if not shifted_projective:
                for n in range(min(tri.x.lo, tri.z.lo) - 1, max(tri.x.hi, tri.z.hi) + 2):
                    alt = ho.homology(tri.x, n).dim - ho.homology(tri.y, n).dim + ho.homology(tri.z, n).dim
                    t.check(alt == 0, f"{name}: homology of triangle at {zlabel} not exact in degree {n}")
        lam = ho.stalk(alg, (0,))
        for label, c in cs:
            # homology as maps out of shifted free modules
            for n in range(c.lo - 1, c.hi + 2):
                t.check(ho.hom_dim(ho.shift(lam, n), c) == ho.homology(c, n).dim, f"{name}: Hom(Λ[{n}], {label})")
            m = ho.minimize(c)
            t.check(ho.minimize(m).types == m.types and m.is_minimal(), f"{name}: minimize not idempotent on {label}")
            t.check(ho.homology_dims(m) == ho.homology_dims(c), f"{name}: minimize changed homology of {label}")
            d = distance(name, label, seed)
            t.check(ar.homology_string_ok(c, d), f"{name}: homology strings of {label} too short for distance {d}")
            j = int(rng.integers(-2, 3))
            for _, e in cs[:4]:
                base = fm.pairing_t(c, e)
                t.check(fm.pairing_t(ho.shift(c, j), e) == base.shift(j), f"{name}: left shift law {label}")
                t.check(fm.pairing_t(c, ho.shift(e, j)) == base.shift(-j), f"{name}: right shift law {label}")
        # additivity and decomposition certificates on a direct sum
        a, b = cs[1][1], cs[2][1]
        s = ho.direct_sum(a, b)
        for _, e in cs[:4]:
            t.check(fm.pairing(s, e) == fm.pairing(a, e) + fm.pairing(b, e), f"{name}: pairing not additive")
        dec = ho.decompose_complex_cert(s, seed)
        t.check(len(dec.pieces) == 2, f"{name}: sum of two indecomposables split into {len(dec.pieces)}")
        for piece in dec.pieces:
            _, _, ops = ho.strict_end_operators(piece.complex)
            t.check(endo.check_certificate(piece.certificate, ops, alg.p), f"{name}: bad complex locality certificate")
        vs = uniserials(alg)
        mdec = mr.decompose(vs[0].direct_sum(vs[-1]), seed)
        for piece in mdec.pieces:
            ops = mr.end_matrices(piece.module)
            t.check(endo.check_certificate(piece.certificate, ops, alg.p), f"{name}: bad module locality certificate")
    return t.done()


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9)


def run_all(seed: int = 0) -> list:
    return [crit(seed) for crit in CRITERIA]
