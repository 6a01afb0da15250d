"""Auslander-Reiten triangles and sequences, and positions in the AR quiver.

Triangles are built from a connecting map ``w : Z -> νZ`` in the socle of
``Hom_K(Z, νZ)`` as a right ``End(Z)``-module; the middle term is
``Y = cone(w)[-1]`` with ``Y_n = Z_n ⊕ X_n`` where ``X = νZ[-1]``.

Positions in a ℤA∞ component use coordinates (row i, index j): the entry is
``ν^j C_i[-j]`` where ``C_0`` is on the rim and ``C_{i+1} = ν⁻¹(Y_long)[1]``
for the triangle ending at ``C_i``.  Its horizontal position is ``i - 2j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import endo
from . import exactla as la
from . import homotopy as ho
from . import modrep as mr
from .algebra import ValidatedAlgebra, require_self_injective
from .errors import (
    ArError,
    NoSocleElement,
    NotIndecomposable,
    NotOnRim,
    NotSymmetric,
    ProjectiveInput,
    RadicalTooShort,
    SimpleProjective,
    WalkDiverged,
)


# -- AR triangles -----------------------------------------------------------


@dataclass(eq=False)
class SocleCertificate:
    """``w`` is not null-homotopic and ``r∘w`` is null-homotopic for each radical basis map r."""

    hom_dim: int  # dim Hom_K(Z, νZ)
    annihilated_dim: int  # dim of the annihilated subspace modulo homotopy (expected 1)
    radical_dim: int  # dim Rad End(Z), strict maps
    end_dim: int  # dim End(Z), strict maps


@dataclass(eq=False)
class ARTriangle:
    x: ho.PerfectComplex
    y: ho.PerfectComplex  # minimal
    z: ho.PerfectComplex
    x_to_y: ho.ChainMap
    y_to_z: ho.ChainMap
    connecting: ho.ChainMap  # z -> νz = x[1]
    socle_certificate: SocleCertificate
    y_unminimized: ho.PerfectComplex = None
    _summands: list = field(default=None, repr=False)

    def y_summands(self, seed: int = 0) -> list:
        if self._summands is None:
            self._summands = ho.decompose_complex(self.y, seed)
        return self._summands


def _require_indecomposable_complex(c: ho.PerfectComplex, seed: int = 0):
    """Minimal model of c plus its strict End data; raises if c decomposes."""
    m = ho.minimize(c)
    if m.is_zero():
        raise NotIndecomposable("complex is contractible")
    space, maps, ops = ho.strict_end_operators(m)
    outcome = endo.find_split(ops, c.p, np.random.default_rng(seed))
    if outcome[0] != "local":
        raise NotIndecomposable("complex has a nontrivial direct summand")
    return m, space, maps, outcome[1]


def _radical_chain_maps(space: ho.HomotopyHomSpace, cert: endo.LocalityCertificate) -> list:
    """Chain maps spanning Rad End(Z) (strict): basis maps minus their scalar parts."""
    alg = space.alg
    p = alg.p
    maps = space.strict_maps()
    ident = ho.identity_map(space.source)
    out = []
    for f, lam in zip(maps, cert.scalars):
        out.append(f.scale_add(ident, (-lam) % p))
    return out


def ar_triangle_ending_at(z: ho.PerfectComplex, seed: int = 0) -> ARTriangle:
    """The AR triangle X -> Y -> Z -> νZ with X = νZ[-1]."""
    alg = z.alg
    require_self_injective(alg)
    zmin, end_space, end_maps, cert = _require_indecomposable_complex(z, seed)
    p = alg.p
    nz = ho.nakayama_complex(zmin)
    hs = ho.HomotopyHomSpace(zmin, nz)
    strict = hs.strict_maps()
    radical = _radical_chain_maps(end_space, cert)

    # left null space of the homotopy image: vectors killing null-homotopic coordinates
    if hs.homotopy_image.shape[0]:
        killer = la.kernel_basis(hs.homotopy_image, p)
    else:
        killer = la.identity(hs.n_coords)
    # v is null-homotopic iff killer @ v = 0
    conditions = []
    k = len(strict)
    if k:
        stacked = {n: np.stack([w.at(n) for w in strict]) for n in hs.degrees}
        for r in radical:
            composed = {n: ho.emul(alg, r.at(n), stacked[n]) for n in hs.degrees}
            cols = hs.coords_batch(composed, k).T
            conditions.append(la.matmul(killer, cols, p))
    if conditions and k:
        sol = la.kernel_basis(np.vstack(conditions), p)
    else:
        sol = la.identity(k)
    # vectors in the chain-map coordinate space
    candidates = la.matmul(sol, hs.chainmap_basis, p) if k else la.zeros(0, hs.n_coords)
    modulo = la.rank(np.vstack([candidates, hs.homotopy_image]), p) - hs.nullhomotopic_subspace_dim
    if modulo == 0:
        raise NoSocleElement("no connecting map annihilated by the radical of End(Z)")
    if modulo != 1:
        raise ArError(f"annihilated subspace of Hom_K(Z, νZ) has dimension {modulo}, expected 1")
    w = None
    for vec in candidates:
        if not hs.homotopy_image.shape[0] or not la.in_span(vec, hs.homotopy_image.T, p):
            w = hs.chain_map(vec)
            break
    certificate = SocleCertificate(hs.dim, modulo, len(radical), len(end_maps))

    x = ho.shift(nz, -1)
    y_raw, incl, proj = _cocone(zmin, x, w)
    model = ho.minimize_with_maps(y_raw)
    x_to_y = incl.then(model.projection)
    y_to_z = model.inclusion.then(proj)
    return ARTriangle(x, model.complex, zmin, x_to_y, y_to_z, w, certificate, y_raw)


def _cocone(z: ho.PerfectComplex, x: ho.PerfectComplex, w: ho.ChainMap):
    """Y = cone(w)[-1], with Y_n = Z_n ⊕ X_n and differential [[d_Z, -w], [0, d_X]]."""
    alg, p = z.alg, z.p
    degrees = sorted(set(z.types) | set(x.types))
    types = {n: z.term(n) + x.term(n) for n in degrees}
    diffs = {}
    for n in degrees:
        if n - 1 not in types:
            continue
        a1, a2 = len(z.term(n)), len(x.term(n))
        b1, b2 = len(z.term(n - 1)), len(x.term(n - 1))
        d = ho.ezeros(alg, a1 + a2, b1 + b2)
        d[:a1, :b1] = z.diff(n)
        d[:a1, b1:] = (-w.at(n)) % p  # Z_n -> X_{n-1} = νZ_n
        d[a1:, b1:] = x.diff(n)
        diffs[n] = d
    y = ho.PerfectComplex(alg, types, diffs, check=True)
    incl = ho.ChainMap(x, y, {})
    proj = ho.ChainMap(y, z, {})
    for n in degrees:
        a1, a2 = len(z.term(n)), len(x.term(n))
        if a2:
            m = ho.ezeros(alg, a2, a1 + a2)
            m[:, a1:] = ho.eidentity(alg, x.term(n))
            incl.maps[n] = m
        if a1:
            m = ho.ezeros(alg, a1 + a2, a1)
            m[:a1] = ho.eidentity(alg, z.term(n))
            proj.maps[n] = m
    return y, incl, proj


def is_on_rim(c: ho.PerfectComplex, seed: int = 0) -> bool:
    tri = ar_triangle_ending_at(c, seed)
    summands = tri.y_summands(seed)
    return len(summands) == 1 and summands[0][1] == 1


def _summands_flat(tri: ARTriangle, seed: int = 0) -> list:
    return [s for s, mult in tri.y_summands(seed) for _ in range(mult)]


def distance_from_rim(c: ho.PerfectComplex, seed: int = 0, max_steps: int = 64) -> int:
    """Steps toward the rim along shorter middle-term summands, cross-checked by lengths."""
    return walk_to_rim(c, seed, max_steps)[0]


def walk_to_rim(c: ho.PerfectComplex, seed: int = 0, max_steps: int = 64):
    """(distance, rim complex reached by the walk)."""
    current = ho.minimize(c)
    start_len = current.length
    steps = 0
    while True:
        tri = ar_triangle_ending_at(current, seed)
        parts = _summands_flat(tri, seed)
        if len(parts) == 1:
            break
        if len(parts) != 2:
            raise WalkDiverged(f"middle term has {len(parts)} summands")
        current = min(parts, key=lambda s: s.length)
        steps += 1
        if steps > max_steps:
            raise WalkDiverged("no rim reached")
    if start_len - current.length != steps:
        raise WalkDiverged(
            f"walked {steps} steps but lengths differ by {start_len - current.length} "
            f"({start_len} vs rim length {current.length})"
        )
    return steps, current


def is_rigid(c: ho.PerfectComplex, seed: int = 0) -> bool:
    """Hom_K(C, C[1]) = 0."""
    m, *_ = _require_indecomposable_complex(c, seed)
    return ho.hom_dim(m, ho.shift(m, 1)) == 0


# -- AR sequences of modules (any finite-dimensional algebra) ---------------


@dataclass(eq=False)
class ARSequence:
    tau_m: mr.ModuleRep
    middle: mr.ModuleRep
    m: mr.ModuleRep
    inject: mr.ModHom
    surject: mr.ModHom

    def is_exact(self) -> bool:
        p = self.m.p
        inj, sur = self.inject.matrix, self.surject.matrix
        if la.rank(inj, p) != self.tau_m.dim or la.rank(sur, p) != self.m.dim:
            return False
        if la.matmul(sur, inj, p).any():
            return False
        return self.tau_m.dim + self.m.dim == self.middle.dim

    def has_section(self) -> bool:
        """True when the surjection splits (so the sequence is not almost split)."""
        p = self.m.p
        homs = mr.hom_matrices(self.m, self.middle)
        if not homs.shape[0]:
            return False
        comps = np.stack([la.matmul(self.surject.matrix, h, p).reshape(-1) for h in homs], axis=1)
        return la.solve(comps, la.identity(self.m.dim).reshape(-1), p) is not None

    def lifts(self, f: mr.ModHom) -> bool:
        """Whether ``f : N -> M`` factors through the surjection."""
        p = self.m.p
        homs = mr.hom_matrices(f.source, self.middle)
        if not homs.shape[0]:
            return not f.matrix.any()
        comps = np.stack([la.matmul(self.surject.matrix, h, p).reshape(-1) for h in homs], axis=1)
        return la.solve(comps, f.matrix.reshape(-1), p) is not None


def _module_presentation(m: mr.ModuleRep):
    """Minimal presentation P_1 --d--> P_0 --> M as module maps."""
    p = m.p
    P0, surj = mr.projective_cover(m)
    omega, ker, _ = mr.syzygy_with_inclusion(m)
    if omega.dim == 0:
        raise ProjectiveInput("module is projective")
    P1, surj1 = mr.projective_cover(omega)
    d = la.matmul(ker, surj1.matrix, p)
    return P0, P1, surj, mr.ModHom(P1, P0, d)


def _local_radical(ops: np.ndarray, p: int, seed: int):
    outcome = endo.find_split(ops, p, np.random.default_rng(seed))
    if outcome[0] != "local":
        raise NotIndecomposable("module has a nontrivial direct summand")
    return outcome[1]


def ar_sequence(m: mr.ModuleRep, seed: int = 0) -> ARSequence:
    """0 -> τM -> E -> M -> 0 via a cone of the presentation complex into its ν-image."""
    alg, p = m.alg, m.p
    if m.dim == 0:
        raise NotIndecomposable("zero module")
    if not mr.is_indecomposable(m, seed):
        raise NotIndecomposable("module has a nontrivial direct summand")
    if mr.is_projective(m):
        raise ProjectiveInput("module is projective")
    P0, P1, surj0, d = _module_presentation(m)
    nd = mr.nakayama_map(d)  # νP_1 -> νP_0
    nP1, nP0 = nd.source, nd.target

    # chain maps (w1, w0) with w0∘d = ν(d)∘w1
    h1 = mr.hom_matrices(P1, nP1)
    h0 = mr.hom_matrices(P0, nP0)
    k1, k0 = h1.shape[0], h0.shape[0]
    if k1 + k0 == 0:
        raise NoSocleElement("no maps from the presentation to its Nakayama image")
    rows = []
    for f in h1:
        rows.append((-la.matmul(nd.matrix, f, p)).reshape(-1) % p)
    for g in h0:
        rows.append(la.matmul(g, d.matrix, p).reshape(-1))
    coeff = la.kernel_basis(np.stack(rows, axis=1), p)  # (w1 coeffs, w0 coeffs)
    pairs = [
        (endo.combine(c[:k1], h1, p) if k1 else la.zeros(nP1.dim, P1.dim),
         endo.combine(c[k1:], h0, p) if k0 else la.zeros(nP0.dim, P0.dim))
        for c in coeff
    ]

    def flat(pair):
        return np.concatenate([pair[0].reshape(-1), pair[1].reshape(-1)])

    # null-homotopic pairs: h: P_0 -> νP_1 gives (h∘d, ν(d)∘h)
    hh = mr.hom_matrices(P0, nP1)
    null = [flat((la.matmul(h, d.matrix, p), la.matmul(nd.matrix, h, p))) for h in hh]
    null = np.stack(null) if null else la.zeros(0, nP1.dim * P1.dim + nP0.dim * P0.dim)
    null_rank = la.rank(null, p) if null.shape[0] else 0

    # strict End of the presentation complex: pairs (r1, r0) with r0∘d = d∘r1
    e1 = mr.hom_matrices(P1, P1)
    e0 = mr.hom_matrices(P0, P0)
    rows = [(-la.matmul(d.matrix, f, p)).reshape(-1) % p for f in e1] + [la.matmul(g, d.matrix, p).reshape(-1) for g in e0]
    ecoeff = la.kernel_basis(np.stack(rows, axis=1), p)
    ends = [(endo.combine(c[: len(e1)], e1, p), endo.combine(c[len(e1):], e0, p)) for c in ecoeff]
    total = P1.dim + P0.dim
    ops = []
    for r1, r0 in ends:
        op = la.zeros(total, total)
        op[: P1.dim, : P1.dim] = r1
        op[P1.dim :, P1.dim :] = r0
        ops.append(op)
    cert = _local_radical(np.stack(ops), p, seed)
    radical = [
        ((r1 - lam * la.identity(P1.dim)) % p, (r0 - lam * la.identity(P0.dim)) % p)
        for (r1, r0), lam in zip(ends, cert.scalars)
    ]

    # S = {w : w∘r null-homotopic for all radical r}
    if null.shape[0]:
        killer = la.kernel_basis(null, p)
    else:
        killer = la.identity(null.shape[1])
    conds = []
    for r1, r0 in radical:
        cols = np.stack([flat((la.matmul(w1, r1, p), la.matmul(w0, r0, p))) for w1, w0 in pairs], axis=1)
        conds.append(la.matmul(killer, cols, p))
    sol = la.kernel_basis(np.vstack(conds), p) if conds else la.identity(len(pairs))
    cands = [tuple(endo.combine(s, np.stack([w[i] for w in pairs]), p) for i in (0, 1)) for s in sol]
    chosen = None
    for cand in cands:
        v = flat(cand)
        if not null.shape[0] or not la.in_span(v, null.T, p):
            chosen = cand
            break
    if chosen is None:
        raise NoSocleElement("no connecting map annihilated by the radical")
    w1, w0 = chosen

    # Y_1 = P_1, Y_0 = P_0 ⊕ νP_1, Y_{-1} = νP_0
    y0 = P0.direct_sum(nP1)
    d1 = np.vstack([d.matrix, (-w1) % p])
    d0 = np.hstack([(-w0) % p, (-nd.matrix) % p])
    ker = la.kernel_basis(d0, p).T.copy()
    sq = mr.subquotient(y0, ker, la.column_basis(d1, p))
    middle = sq.module

    # τM = ker ν(d) -> E via x -> (0, x)
    tau_basis = la.kernel_basis(nd.matrix, p).T.copy()
    tau = mr.submodule(nP1, tau_basis)
    emb = np.vstack([la.zeros(P0.dim, tau_basis.shape[1]), tau_basis])
    inject = mr.ModHom(tau, middle, sq.coordinates(emb))
    # E -> M: (z, x) -> surj0(z)
    proj = la.matmul(surj0.matrix, sq.complement[: P0.dim], p)
    surject = mr.ModHom(middle, m, proj)
    return ARSequence(tau, middle, m, inject, surject)


# -- complexes from the quiver geometry -------------------------------------


def _require_nonsimple_projective(alg: ValidatedAlgebra, s: int):
    require_self_injective(alg)
    if alg.projective_dim(s) == 1:
        raise SimpleProjective(f"P_{s} is simple")


def projective_chain_complex(alg: ValidatedAlgebra, s: int, n: int) -> ho.PerfectComplex:
    """ν^{-n}P_S -> ... -> ν^{-1}P_S -> P_S in degrees n..0, each map top onto socle."""
    _require_nonsimple_projective(alg, s)
    inv = alg.nakayama_perm_inverse
    types, diffs = {}, {}
    t = s
    for k in range(n + 1):
        types[k] = (t,)
        t = inv[t]
    for k in range(1, n + 1):
        src = types[k][0]
        d = ho.ezeros(alg, 1, 1)
        d[0, 0] = alg.socle_element(src)
        diffs[k] = d
    return ho.PerfectComplex(alg, types, diffs)


def heart_complex(alg: ValidatedAlgebra, s: int) -> ho.PerfectComplex:
    """ℋ_S = ν^{-1}P_S -> P_S -> νP_S in degrees 1, 0, -1."""
    return ho.shift(ho.nakayama_complex(projective_chain_complex(alg, s, 2), 1), -1)


def big_homology_complex(alg: ValidatedAlgebra, s: int, r: int) -> ho.PerfectComplex:
    """P_{Rad P_S} -> P_S -> νP_S -> ... -> ν^{r-1}P_S in degrees 1, 0, ..., -(r-1)."""
    require_self_injective(alg)
    if alg.radical_nilpotency < 3:
        raise RadicalTooShort(f"Loewy length {alg.radical_nilpotency} < 3")
    perm = alg.nakayama_perm
    P = mr.projective(alg, s)
    rad = mr.radical_module(P)
    rad_basis = P.radical_subspace()
    gens = mr.top_generators(rad)
    B, _ = alg.projective_bases[s]
    types = {1: tuple(i for i, _ in gens)}
    diffs = {}
    d1 = ho.ezeros(alg, len(gens), 1)
    for b, (_, v) in enumerate(gens):
        d1[b, 0] = la.matmul(B, la.matmul(rad_basis, v.reshape(-1, 1), alg.p), alg.p)[:, 0]
    diffs[1] = d1
    t = s
    for k in range(r):
        types[-k] = (t,)
        if k:
            d = ho.ezeros(alg, 1, 1)
            d[0, 0] = alg.socle_element(types[-k + 1][0])
            diffs[-k + 1] = d
        t = perm[t]
    return ho.PerfectComplex(alg, types, diffs)


def e_complex(m: mr.ModuleRep, seed: int = 0) -> ho.PerfectComplex:
    """ℰ_M: middle of the AR triangle ending at the presentation complex (symmetric algebras)."""
    if not m.alg.is_symmetric:
        raise NotSymmetric(f"{m.alg.name} has no certified symmetrizing form")
    if mr.is_projective(m):
        raise ProjectiveInput("module is projective")
    z = ho.from_resolution(m, 1)
    return ar_triangle_ending_at(z, seed).y


# -- component geometry -----------------------------------------------------


@dataclass(eq=False)
class ComponentWalk:
    """Complexes C_0 (on the rim), C_1, ... along one sectional path of a component."""

    rows: list  # C_i
    triangles: list  # triangle ending at C_i


def sectional_path(c: ho.PerfectComplex, depth: int, seed: int = 0, last_triangle: bool = True) -> ComponentWalk:
    """C_0 = c (must be on the rim), C_{i+1} = ν⁻¹(longer summand of Y_i)[1].

    The triangle ending at C_depth is only built when ``last_triangle`` is set
    (or depth is 0, where it decides the rim condition).
    """
    current = ho.minimize(c)
    rows, tris = [current], []
    for i in range(depth + 1):
        if i == depth and i > 0 and not last_triangle:
            break
        tri = ar_triangle_ending_at(current, seed)
        tris.append(tri)
        parts = _summands_flat(tri, seed)
        if i == 0 and len(parts) != 1:
            raise NotOnRim("complex is not on the rim of its component")
        if i == depth:
            break
        longer = max(parts, key=lambda s: s.length)
        if i > 0 and len(parts) == 2 and parts[0].length == parts[1].length:
            raise WalkDiverged("middle-term summands have equal length")
        current = ho.minimize(ho.shift(ho.nakayama_complex(longer, -1), 1))
        rows.append(current)
    return ComponentWalk(rows, tris)


def component_entry(walk: ComponentWalk, i: int, j: int) -> mr.ModuleRep:
    """H_0(ν^j C_i[-j])."""
    c = walk.rows[i]
    return ho.homology(ho.shift(ho.nakayama_complex(c, j), -j), 0)


@dataclass(eq=False)
class HomologyDiagram:
    rows: list  # rows[i] = {x: ModuleRep}
    mesh_exact: dict  # (i, x) -> bool for each mesh ending at (i, x) inside the window
    flagged: set  # meshes excluded from exactness (projective present)
    wing_ok: dict  # (i, x) -> bool composition-factor check (components without projectives)
    has_projective: bool

    def dims(self) -> list:
        return [{x: m.dim for x, m in sorted(row.items())} for row in self.rows]


def _is_shifted_projective(c: ho.PerfectComplex):
    """Degree of a one-term complex, or None."""
    return c.lo if c.length == 1 and len(c.term(c.lo)) == 1 else None


def homology_diagram(c: ho.PerfectComplex, depth: int, window: int | None = None, seed: int = 0) -> HomologyDiagram:
    """Rows 0..depth of H_0(ν^j C_i[-j]) for positions -window..window around c."""
    window = 2 * depth + 1 if window is None else window
    walk = sectional_path(c, depth, seed)
    rows = []
    for i in range(depth + 1):
        row = {}
        for x in range(-window, window + 1):
            if (i - x) % 2:
                continue
            row[x] = component_entry(walk, i, (i - x) // 2)
        rows.append(row)
    # one-term complexes ν^j P[k] in the component: the rim complex is a shifted projective
    proj_deg = _is_shifted_projective(walk.rows[0])
    has_projective = proj_deg is not None
    flagged = set()
    if has_projective:
        # Z = ν^j C_0[-j] is a one-term complex in degree proj_deg - j; bad when that degree is 0 or 1
        for j in (proj_deg, proj_deg - 1):
            flagged.add((0, -2 * j))
    mesh_exact = {}
    for i in range(depth + 1):
        for x in rows[i]:
            if x - 2 not in rows[i]:
                continue
            above = rows[i - 1].get(x - 1) if i > 0 else None
            below = rows[i + 1].get(x - 1) if i + 1 <= depth else None
            if i + 1 > depth:
                continue
            mid = (above.dim if above is not None else 0) + below.dim
            mesh_exact[(i, x)] = rows[i][x - 2].dim + rows[i][x].dim == mid
    wing_ok = {}
    if not has_projective:
        for i in range(1, depth + 1):
            for x, mod in rows[i].items():
                rim = [rows[0].get(x - i + 2 * k) for k in range(i + 1)]
                if any(r is None for r in rim):
                    continue
                total = np.sum([r.composition_factors() for r in rim], axis=0)
                wing_ok[(i, x)] = tuple(int(t) for t in total) == mod.composition_factors()
    return HomologyDiagram(rows, mesh_exact, flagged, wing_ok, has_projective)


def stabilization_module(c: ho.PerfectComplex, seed: int = 0) -> mr.ModuleRep:
    """Σ: H_0 at depth length(c)+1 in the column just past the top homology of c."""
    rim = ho.minimize(c)
    support = ho.homology_support(rim)
    top = max(support) if support else rim.hi
    depth = rim.length + 1
    walk = sectional_path(rim, depth, seed, last_triangle=False)  # raises NotOnRim
    return component_entry(walk, depth, top + 1)


def homology_string_ok(c: ho.PerfectComplex, distance: int) -> bool:
    """Every nonzero homology module sits in a run of at least distance+1 consecutive nonzero ones."""
    support = ho.homology_support(c)
    if not support:
        return True
    runs, start = [], support[0]
    for a, b in zip(support, support[1:] + [None]):
        if b != a + 1:
            runs.append(a - start + 1)
            start = b
    return min(runs) >= distance + 1


def zero_isolated_homology(c: ho.PerfectComplex) -> bool:
    """Some H_d ≠ 0 with H_{d+1} = H_{d-1} = 0."""
    dims = {n: ho.homology(c, n).dim for n in range(c.lo - 1, c.hi + 2)}
    return any(dims[d] and not dims.get(d + 1, 0) and not dims.get(d - 1, 0) for d in c.degrees())


def is_top_to_socle_two_term(c: ho.PerfectComplex) -> bool:
    """Whether c is P_S -> νP_S (top onto socle) up to shift and isomorphism."""
    m = ho.minimize(c)
    if m.length != 2 or any(len(m.term(n)) != 1 for n in m.degrees()):
        return False
    s = m.term(m.hi)[0]
    alg = m.alg
    if alg.projective_dim(s) == 1:
        return False
    target = ho.shift(projective_chain_complex(alg, alg.nakayama_perm[s], 1), m.lo)
    return ho.is_isomorphic(m, target)
