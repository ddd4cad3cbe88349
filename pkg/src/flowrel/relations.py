"""The relation families P, D, Omega, SP, WD on finite flows.

All relations are represented as dense boolean matrices over state pairs.
On a finite flow the generated monoid is the orbit-closure machinery, so
statements about orbit closures become statements quantified over monoid
elements and are checked exactly.

Caveat for non-invertible generators: the classical invariance facts
refine as follows on monoid models.  P is backward invariant and D forward
invariant unconditionally; Omega and SP are forward invariant, WD backward
invariant.  Forward invariance of P is equivalent to P being an
equivalence relation (equivalently, to the monoid having a unique minimal
ideal), and that equivalence is part of the checked theorem suite rather
than an unconditional assumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .finflow import (
    FactorMap,
    FiniteFlow,
    IdealStructure,
    LeftIdeal,
    TransMonoid,
    close,
    equivalent_idempotents,
    ideal_structure,
    induced_theta,
)


class NotAnIcer(ValueError):
    """Raised when a relation offered for quotienting is not a closed
    invariant equivalence relation; carries the violated property."""

    def __init__(self, prop: str, detail: str = ""):
        self.violated = prop
        super().__init__(f"not an icer: {prop}" + (f" ({detail})" if detail else ""))


RELATION_KINDS = ("P", "D", "Omega", "SP", "WD")


@dataclass(frozen=True)
class PairRelation:
    """A symmetric set of state pairs, stored as a dense boolean matrix."""

    n_states: int
    matrix: np.ndarray
    kind: str = "custom"

    def contains(self, x: int, y: int) -> bool:
        return bool(self.matrix[x, y])

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(x), int(y)) for x, y in zip(*np.nonzero(self.matrix))]

    def cell(self, x: int) -> frozenset[int]:
        return frozenset(int(y) for y in np.nonzero(self.matrix[x])[0])

    @property
    def is_symmetric(self) -> bool:
        return bool((self.matrix == self.matrix.T).all())

    @property
    def is_reflexive(self) -> bool:
        return bool(self.matrix.diagonal().all())

    @property
    def is_transitive(self) -> bool:
        m = self.matrix
        return bool((~(m @ m) | m).all())

    @property
    def is_equivalence(self) -> bool:
        return self.is_reflexive and self.is_symmetric and self.is_transitive

    def classes(self) -> list[frozenset[int]]:
        """Equivalence classes, ordered by least member (requires equivalence)."""
        seen: set[int] = set()
        out = []
        for x in range(self.n_states):
            if x not in seen:
                c = self.cell(x) | {x}
                seen |= c
                out.append(frozenset(c))
        return out


@dataclass(frozen=True)
class Cell:
    center: int
    members: frozenset[int]
    kind: str


def diagonal(n: int) -> np.ndarray:
    return np.eye(n, dtype=bool)


def _collapse_matrices(m: TransMonoid) -> np.ndarray:
    """(size, n, n) boolean tensor: entry [p, x, y] says element p collapses
    the pair (x, y)."""
    e = m.elements
    return e[:, :, None] == e[:, None, :]


def ideal_kernel_matrix(m: TransMonoid, ideal: LeftIdeal) -> np.ndarray:
    """Pairs collapsed by every element of the ideal."""
    n = m.n_states
    out = np.ones((n, n), dtype=bool)
    for p in ideal.members:
        row = m.elements[p]
        out &= row[:, None] == row[None, :]
    return out


def omega(m: TransMonoid) -> PairRelation:
    """Pairs fixed by some minimal idempotent, i.e. almost periodic pairs
    of the product flow."""
    st = ideal_structure(m)
    n = m.n_states
    mat = np.zeros((n, n), dtype=bool)
    ar = np.arange(n)
    for u in st.all_idempotents:
        fixed = m.elements[u] == ar
        mat |= fixed[:, None] & fixed[None, :]
    return PairRelation(n, mat, "Omega")


def proximal(m: TransMonoid) -> PairRelation:
    """Pairs collapsed by some monoid element.

    Cross-checked against the minimal-ideal form (some minimal ideal
    collapses the pair everywhere); disagreement would be an
    implementation bug, since the two forms are provably equal.
    """
    direct = _collapse_matrices(m).any(axis=0)
    st = ideal_structure(m)
    via_ideals = np.zeros_like(direct)
    for ideal in st.ideals:
        via_ideals |= ideal_kernel_matrix(m, ideal)
    if not np.array_equal(direct, via_ideals):
        raise AssertionError(
            "proximal relation: element form and minimal-ideal form disagree; "
            f"diff pairs {np.argwhere(direct != via_ideals).tolist()}"
        )
    return PairRelation(m.n_states, direct, "P")


def strongly_proximal(m: TransMonoid) -> PairRelation:
    """Pairs collapsed by every element of every minimal ideal.

    Asserts that SP is an equivalence relation and that membership is
    equivalent to every monoid translate of the pair staying proximal.
    """
    st = ideal_structure(m)
    n = m.n_states
    mat = np.ones((n, n), dtype=bool)
    for ideal in st.ideals:
        mat &= ideal_kernel_matrix(m, ideal)
    rel = PairRelation(n, mat, "SP")
    if not rel.is_equivalence:
        raise AssertionError("SP failed to be an equivalence relation")
    pmat = proximal(m).matrix
    e = m.elements
    translates_in_p = pmat[e[:, :, None], e[:, None, :]].all(axis=0)
    if not np.array_equal(mat, translates_in_p):
        raise AssertionError("SP does not match the all-translates-proximal form")
    return rel


def distal_rel(m: TransMonoid) -> PairRelation:
    return PairRelation(m.n_states, ~proximal(m).matrix, "D")


def weakly_distal_rel(m: TransMonoid) -> PairRelation:
    return PairRelation(m.n_states, ~strongly_proximal(m).matrix, "WD")


@dataclass
class FlowAnalysis:
    """Everything computed once for a flow: closure, ideal structure and
    the five relations."""

    flow: FiniteFlow
    monoid: TransMonoid
    structure: IdealStructure
    omega: PairRelation
    proximal: PairRelation
    strongly_proximal: PairRelation
    distal: PairRelation
    weakly_distal: PairRelation
    equivalent_pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def n_states(self) -> int:
        return self.flow.n_states

    def relation(self, kind: str) -> PairRelation:
        return {
            "P": self.proximal,
            "D": self.distal,
            "Omega": self.omega,
            "SP": self.strongly_proximal,
            "WD": self.weakly_distal,
        }[kind]

    @property
    def is_distal_flow(self) -> bool:
        return bool((self.proximal.matrix == diagonal(self.n_states)).all())

    @property
    def is_proximal_flow(self) -> bool:
        return bool(self.proximal.matrix.all())

    @property
    def is_weakly_distal_flow(self) -> bool:
        return bool((self.strongly_proximal.matrix == diagonal(self.n_states)).all())


def analyze_flow(flow: FiniteFlow, cap: int | None = None) -> FlowAnalysis:
    m = close(flow, cap=cap)
    st = ideal_structure(m)
    return FlowAnalysis(
        flow=flow,
        monoid=m,
        structure=st,
        omega=omega(m),
        proximal=proximal(m),
        strongly_proximal=strongly_proximal(m),
        distal=distal_rel(m),
        weakly_distal=weakly_distal_rel(m),
        equivalent_pairs=equivalent_idempotents(m),
    )


def almost_periodic_points(m: TransMonoid) -> frozenset[int]:
    st = ideal_structure(m)
    ar = np.arange(m.n_states)
    fixed = np.zeros(m.n_states, dtype=bool)
    for u in st.all_idempotents:
        fixed |= m.elements[u] == ar
    return frozenset(int(x) for x in np.nonzero(fixed)[0])


def is_minimal_flow(m: TransMonoid) -> bool:
    """Minimal iff every orbit S¹x is the whole state set."""
    n = m.n_states
    for x in range(n):
        if len(set(int(v) for v in m.elements[:, x])) != n:
            return False
    return True


def check_unique_ideal_equiv(m: TransMonoid) -> dict:
    """The three-way equivalence: P is an equivalence relation iff the
    monoid has a unique minimal ideal iff P = SP, together with the
    forward-invariance form ((x,y) in P implies s(x,y) in P for all s)."""
    st = ideal_structure(m)
    p = proximal(m)
    sp = strongly_proximal(m)
    e = m.elements
    forward = bool((~p.matrix | p.matrix[e[:, :, None], e[:, None, :]].all(axis=0)).all())
    report = {
        "p_is_equivalence": p.is_equivalence,
        "unique_minimal_ideal": len(st.ideals) == 1,
        "p_equals_sp": bool(np.array_equal(p.matrix, sp.matrix)),
        "p_forward_invariant": forward,
    }
    report["consistent"] = len(set(report.values())) == 1
    return report


# ---------------------------------------------------------------------------
# Witness construction


@dataclass(frozen=True)
class Verdict:
    """A membership answer for one pair, with a replayable witness."""

    kind: str
    pair: tuple[int, int]
    answer: str  # "in" | "out"
    witness: dict | None = None


def proximal_verdict(m: TransMonoid, x: int, y: int) -> Verdict:
    mats = _collapse_matrices(m)
    hits = np.nonzero(mats[:, x, y])[0]
    if hits.size:
        return Verdict("P", (x, y), "in", {"collapser": int(hits[0])})
    return Verdict("P", (x, y), "out", None)


def sp_verdict(m: TransMonoid, x: int, y: int) -> Verdict:
    """In-SP verdicts cite that every minimal ideal collapses the pair;
    out-verdicts carry an ideal, an element separating the pair, and the
    idempotent power of that element, which fixes the separated images (an
    almost periodic non-diagonal limit of the pair)."""
    st = ideal_structure(m)
    for k, ideal in enumerate(st.ideals):
        for p in ideal.members:
            row = m.elements[p]
            if row[x] != row[y]:
                u = m.idempotent_power(p)
                urow = m.elements[u]
                if urow[row[x]] != row[x] or urow[row[y]] != row[y]:
                    raise AssertionError("idempotent power failed to fix the image pair")
                return Verdict(
                    "SP",
                    (x, y),
                    "out",
                    {"ideal": k, "separator": int(p), "fixing_idempotent": int(u)},
                )
    return Verdict("SP", (x, y), "in", {"collapsing_ideals": len(st.ideals)})


# ---------------------------------------------------------------------------
# Products


def product_flow(a: FiniteFlow, b: FiniteFlow) -> FiniteFlow:
    """Cartesian product with generators paired by index (diagonal action
    of the same generating set).  State (x, y) is encoded as x * |Y| + y."""
    if len(a.generators) != len(b.generators):
        raise ValueError("product flow needs the same number of generators on both sides")
    nb = b.n_states
    gens = []
    for g, h in zip(a.generators, b.generators):
        gens.append(tuple(g[s // nb] * nb + h[s % nb] for s in range(a.n_states * nb)))
    return FiniteFlow(a.n_states * nb, tuple(gens))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def as_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "counterexample": self.detail or None}


def _result(name: str, ok: bool | np.bool_, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(ok), "" if ok else detail)


def check_product_theorems(a: FiniteFlow, b: FiniteFlow, cap: int | None = None) -> list[CheckResult]:
    """Binary-product characterizations, exhaustively over pairs of pairs:

    - SP(XxY) holds iff both coordinate pairs are SP (exact, via ideal
      projections);
    - WD(XxY) holds iff some coordinate pair is WD (exact, complement);
    - a coordinate pair in D forces the product pair into D (the converse
      is not a theorem: two coordinate pairs can be proximal through
      disjoint ideal families with no common collapser, see
      ``product_d_published_biconditional``);
    - Omega(XxY) implies both coordinate pairs are Omega, it decomposes
      through common minimal idempotents, and its projections onto the
      factors are exactly Omega of each factor;
    - the SP projections are onto, the P projections are inclusions only.
    """
    ax, bx = analyze_flow(a, cap=cap), analyze_flow(b, cap=cap)
    prod = product_flow(a, b)
    px = analyze_flow(prod, cap=cap)
    nb = b.n_states
    xs = np.arange(prod.n_states) // nb
    ys = np.arange(prod.n_states) % nb

    def lift(rel_a: np.ndarray, rel_b: np.ndarray, combine) -> np.ndarray:
        return combine(rel_a[xs[:, None], xs[None, :]], rel_b[ys[:, None], ys[None, :]])

    out = []
    out.append(_result(
        "product_sp_both_coordinates",
        np.array_equal(px.strongly_proximal.matrix, lift(ax.strongly_proximal.matrix, bx.strongly_proximal.matrix, np.logical_and)),
    ))
    out.append(_result(
        "product_d_from_coordinates",
        not (lift(ax.distal.matrix, bx.distal.matrix, np.logical_or) & ~px.distal.matrix).any(),
    ))
    out.append(_result(
        "product_wd_some_coordinate",
        np.array_equal(px.weakly_distal.matrix, lift(ax.weakly_distal.matrix, bx.weakly_distal.matrix, np.logical_or)),
    ))
    out.append(_result(
        "product_omega_subset_of_coordinates",
        not (px.omega.matrix & ~lift(ax.omega.matrix, bx.omega.matrix, np.logical_and)).any(),
    ))

    # Omega decomposes through common minimal idempotents of the product.
    st = ideal_structure(px.monoid)
    n = prod.n_states
    via_common = np.zeros((n, n), dtype=bool)
    ar_a, ar_b = np.arange(a.n_states), np.arange(b.n_states)
    for w in st.all_idempotents:
        row = px.monoid.elements[w]
        wa = row[ys == 0] // nb  # action on X extracted from column y = 0
        wb = row[xs == 0] % nb
        if not (np.array_equal(row // nb, wa[xs]) and np.array_equal(row % nb, wb[ys])):
            raise AssertionError("product monoid element is not coordinatewise")
        fa, fb = wa == ar_a, wb == ar_b
        fixed = fa[xs] & fb[ys]
        via_common |= fixed[:, None] & fixed[None, :]
    out.append(_result(
        "product_omega_common_idempotent",
        np.array_equal(px.omega.matrix, via_common),
    ))

    shape = (a.n_states, nb, a.n_states, nb)
    for name, rel_p, rel_a, rel_b, exact in (
        ("omega", px.omega, ax.omega, bx.omega, True),
        ("sp", px.strongly_proximal, ax.strongly_proximal, bx.strongly_proximal, True),
        ("p", px.proximal, ax.proximal, bx.proximal, False),
    ):
        proj_a = rel_p.matrix.reshape(shape).any(axis=(1, 3))
        proj_b = rel_p.matrix.reshape(shape).any(axis=(0, 2))
        if exact:
            ok = np.array_equal(proj_a, rel_a.matrix) and np.array_equal(proj_b, rel_b.matrix)
            out.append(_result(f"product_{name}_projection_onto", ok))
        else:
            ok = not (proj_a & ~rel_a.matrix).any() and not (proj_b & ~rel_b.matrix).any()
            out.append(_result(f"product_{name}_projection_subset", ok))
    return out


def product_d_published_biconditional(a: FiniteFlow, b: FiniteFlow, cap: int | None = None) -> CheckResult:
    """The published two-way product law for D: a product pair is distal
    exactly when some coordinate pair is.

    Only the coordinate-to-product direction is a theorem.  The converse
    needs one minimal ideal of the product to project onto any prescribed
    pair of coordinate ideals, which fails for correlated factors: in the
    squared two-ideal fixture the coordinate pairs can be proximal through
    the two different ideals while nothing collapses both at once.
    """
    ax, bx = analyze_flow(a, cap=cap), analyze_flow(b, cap=cap)
    prod = product_flow(a, b)
    px = analyze_flow(prod, cap=cap)
    nb = b.n_states
    xs = np.arange(prod.n_states) // nb
    ys = np.arange(prod.n_states) % nb
    lifted = ax.distal.matrix[xs[:, None], xs[None, :]] | bx.distal.matrix[ys[:, None], ys[None, :]]
    ok = np.array_equal(px.distal.matrix, lifted)
    detail = ""
    if not ok:
        s, t = np.argwhere(px.distal.matrix != lifted)[0]
        detail = (
            f"product pair (({s // nb},{s % nb}),({t // nb},{t % nb})): "
            f"product D={bool(px.distal.matrix[s, t])}, coordinate D={bool(lifted[s, t])}"
        )
    return CheckResult("product_d_published_biconditional", ok, detail)


# ---------------------------------------------------------------------------
# Quotients and factor maps


def icer_violation(flow: FiniteFlow, matrix: np.ndarray) -> tuple[str, str] | None:
    n = flow.n_states
    if matrix.shape != (n, n):
        return ("shape", f"expected {(n, n)}")
    if not matrix.diagonal().all():
        return ("reflexive", f"missing ({int(np.nonzero(~matrix.diagonal())[0][0])},) loop")
    if not (matrix == matrix.T).all():
        x, y = np.argwhere(matrix != matrix.T)[0]
        return ("symmetric", f"pair ({x},{y})")
    closed = matrix @ matrix
    if (closed & ~matrix).any():
        x, y = np.argwhere(closed & ~matrix)[0]
        return ("transitive", f"pair ({x},{y})")
    for gi, g in enumerate(flow.generators):
        garr = np.array(g)
        moved = matrix[garr[:, None], garr[None, :]]
        if (matrix & ~moved).any():
            x, y = np.argwhere(matrix & ~moved)[0]
            return ("invariant", f"generator {gi} breaks pair ({x},{y})")
    return None


def quotient_by_icer(flow: FiniteFlow, relation: PairRelation | np.ndarray) -> FactorMap:
    """Quotient by a closed invariant equivalence relation.  Target states
    are the classes ordered by least member; generators descend."""
    matrix = relation.matrix if isinstance(relation, PairRelation) else relation
    bad = icer_violation(flow, matrix)
    if bad is not None:
        raise NotAnIcer(*bad)
    rel = PairRelation(flow.n_states, matrix)
    classes = rel.classes()
    class_of = {}
    for k, c in enumerate(classes):
        for x in c:
            class_of[x] = k
    gens = []
    for g in flow.generators:
        img = []
        for c in classes:
            targets = {class_of[g[x]] for x in c}
            if len(targets) != 1:
                raise NotAnIcer("invariant", "generator does not descend to classes")
            img.append(targets.pop())
        gens.append(tuple(img))
    target = FiniteFlow(len(classes), tuple(gens))
    return FactorMap(flow, target, tuple(class_of[x] for x in range(flow.n_states)))


def quotient_data(f: FactorMap, cap: int | None = None):
    src = analyze_flow(f.source, cap=cap)
    tgt = analyze_flow(f.target, cap=cap)
    theta = induced_theta(f, src.monoid, tgt.monoid)
    return src, tgt, theta


def pushforward(rel: np.ndarray, point_map: tuple[int, ...], n_target: int) -> np.ndarray:
    out = np.zeros((n_target, n_target), dtype=bool)
    pm = np.array(point_map)
    xs, ys = np.nonzero(rel)
    out[pm[xs], pm[ys]] = True
    return out


def pullback(rel_target: np.ndarray, point_map: tuple[int, ...]) -> np.ndarray:
    pm = np.array(point_map)
    return rel_target[pm[:, None], pm[None, :]]


def detect_fiber_type(f: FactorMap, src: FlowAnalysis) -> dict:
    """A factor is proximal iff all fibers are pairwise proximal, distal
    iff pairwise distal; detected, never declared."""
    prox = True
    dist = True
    for y in range(f.target.n_states):
        fib = f.fiber(y)
        for i, x1 in enumerate(fib):
            for x2 in fib[i + 1:]:
                if not src.proximal.contains(x1, x2):
                    prox = False
                if not src.distal.contains(x1, x2):
                    dist = False
    return {"proximal": prox, "distal": dist}


def check_factor_theorems(f: FactorMap, cap: int | None = None) -> list[CheckResult]:
    """Image/preimage behaviour of the five relations under a factor map.

    Always: pi x pi maps P into P, D onto a superset of D, Omega onto
    Omega exactly, SP into SP; the WD preimage is contained in WD; theta
    carries minimal ideals onto minimal ideals.  When the factor is
    detected proximal: P, D and SP preimages are exact, R_pi sits inside
    SP, and WD maps into WD.  When detected distal: the Omega preimage is
    exact.  Every almost periodic base point's fiber contains an almost
    periodic set of the form u . fiber.
    """
    src, tgt, theta = quotient_data(f, cap=cap)
    pm = f.point_map
    nt = f.target.n_states
    out: list[CheckResult] = []

    p_img = pushforward(src.proximal.matrix, pm, nt)
    d_img = pushforward(src.distal.matrix, pm, nt)
    o_img = pushforward(src.omega.matrix, pm, nt)
    sp_img = pushforward(src.strongly_proximal.matrix, pm, nt)
    out.append(_result("factor_p_image_subset", not (p_img & ~tgt.proximal.matrix).any()))
    out.append(_result("factor_d_image_superset", not (tgt.distal.matrix & ~d_img).any()))
    out.append(_result("factor_omega_image_equal", np.array_equal(o_img, tgt.omega.matrix)))
    out.append(_result("factor_sp_image_subset", not (sp_img & ~tgt.strongly_proximal.matrix).any()))

    p_pre = pullback(tgt.proximal.matrix, pm)
    d_pre = pullback(tgt.distal.matrix, pm)
    o_pre = pullback(tgt.omega.matrix, pm)
    sp_pre = pullback(tgt.strongly_proximal.matrix, pm)
    wd_pre = pullback(tgt.weakly_distal.matrix, pm)
    out.append(_result("factor_p_preimage_superset", not (src.proximal.matrix & ~p_pre).any()))
    out.append(_result("factor_d_preimage_subset", not (d_pre & ~src.distal.matrix).any()))
    out.append(_result("factor_omega_preimage_superset", not (src.omega.matrix & ~o_pre).any()))
    out.append(_result("factor_sp_preimage_superset", not (src.strongly_proximal.matrix & ~sp_pre).any()))
    out.append(_result("factor_wd_preimage_subset", not (wd_pre & ~src.weakly_distal.matrix).any()))

    kind = detect_fiber_type(f, src)
    if kind["proximal"]:
        out.append(_result("factor_proximal_p_preimage_equal", np.array_equal(src.proximal.matrix, p_pre)))
        out.append(_result("factor_proximal_d_preimage_equal", np.array_equal(src.distal.matrix, d_pre)))
        out.append(_result("factor_proximal_sp_preimage_equal", np.array_equal(src.strongly_proximal.matrix, sp_pre)))
        rpi = np.equal.outer(np.array(pm), np.array(pm))
        out.append(_result("factor_proximal_rpi_subset_sp", not (rpi & ~src.strongly_proximal.matrix).any()))
        wd_img = pushforward(src.weakly_distal.matrix, pm, nt)
        out.append(_result("factor_proximal_wd_image_subset", not (wd_img & ~tgt.weakly_distal.matrix).any()))
    if kind["distal"]:
        out.append(_result("factor_distal_omega_preimage_equal", np.array_equal(src.omega.matrix, o_pre)))

    # theta maps minimal ideals onto minimal ideals, covering all of them.
    src_ideals = src.structure.ideals
    tgt_ideal_sets = {frozenset(ideal.members) for ideal in tgt.structure.ideals}
    images = {frozenset(int(theta[p]) for p in ideal.members) for ideal in src_ideals}
    out.append(_result(
        "factor_theta_ideals_onto",
        images == tgt_ideal_sets,
        f"theta images {sorted(map(sorted, images))} vs target ideals {sorted(map(sorted, tgt_ideal_sets))}",
    ))

    # every almost periodic base point's fiber contains u . fiber with
    # theta(u) fixing the base point and u fixing u . fiber pointwise.
    ok_fibers = True
    detail = ""
    theta_list = [int(t) for t in theta]
    for y in range(nt):
        fixers = [w for w in tgt.structure.all_idempotents if tgt.monoid.apply(w, y) == y]
        if not fixers:
            continue  # y is not almost periodic; hypothesis fails
        w = fixers[0]
        u = None
        for ideal in src_ideals:
            cands = [p for p in ideal.members if theta_list[p] == w]
            if cands:
                u = src.monoid.idempotent_power(cands[0])
                break
        if u is None or theta_list[u] != w:
            ok_fibers = False
            detail = f"no idempotent over {w} for base point {y}"
            break
        fib = set(f.fiber(y))
        ufib = {src.monoid.apply(u, x) for x in fib}
        if not ufib <= fib or any(src.monoid.apply(u, z) != z for z in ufib):
            ok_fibers = False
            detail = f"u.fiber not an almost periodic subset of fiber over {y}"
            break
    out.append(_result("factor_fiber_contains_ap_set", ok_fibers, detail))
    return out


def idempotent_section_check(f: FactorMap, cap: int | None = None) -> list[CheckResult]:
    """On a minimal target: a minimal-ideal element w of the target is
    idempotent iff (w(y), y) is proximal for every y; and for every source
    element p of a minimal ideal with theta(p) = w, w is idempotent iff
    (pi(p(x)), pi(x)) is proximal in the target for every x.

    Skipped (with notice) when the target is not minimal.  The
    quantification stays inside minimal ideals: for arbitrary elements the
    fiberwise-proximal condition does not force idempotence on monoid
    models (a state swap plus a constant map already breaks it), while for
    kernel elements the idempotent left identity of the element's ideal
    fixes its image pointwise and the implication is unconditional.
    """
    src, tgt, theta = quotient_data(f, cap=cap)
    if not is_minimal_flow(tgt.monoid):
        return [CheckResult("idempotent_section", True, "skipped: target not minimal")]
    pm = np.array(f.point_map)
    pmat = tgt.proximal.matrix
    ar = np.arange(f.target.n_states)
    tgt_kernel = set(ideal_structure(tgt.monoid).kernel_elements)
    out = []
    ok_target = True
    bad_w = -1
    for w in sorted(tgt_kernel):
        row = tgt.monoid.elements[w]
        fiberwise = bool(pmat[row, ar].all())
        if tgt.monoid.is_idempotent(w) != fiberwise:
            ok_target = False
            bad_w = w
            break
    out.append(_result("idempotent_section_target", ok_target, f"element {bad_w}" if not ok_target else ""))
    ok_src = True
    bad_p = -1
    srow = src.monoid.elements
    for p in ideal_structure(src.monoid).kernel_elements:
        w = int(theta[p])
        fiberwise = bool(pmat[pm[srow[p]], pm[np.arange(f.source.n_states)]].all())
        if tgt.monoid.is_idempotent(w) != fiberwise:
            ok_src = False
            bad_p = p
            break
    out.append(_result("idempotent_section_source", ok_src, f"element {bad_p}" if not ok_src else ""))
    return out
