"""Randomized theorem verification over finite flows.

Every fuzzed instance runs the full check suites from the relations and
proximal-set modules; a fixed seed fully determines the instances, so runs
are reproducible.  On failure the offending flow is minimized by greedy
generator removal and reported as a replayable text document.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import proxsets
from .finflow import FiniteFlow, MonoidTooLarge, close, format_flow, ideal_structure
from .relations import (
    CheckResult,
    FlowAnalysis,
    _result,
    analyze_flow,
    check_factor_theorems,
    check_unique_ideal_equiv,
    diagonal,
    idempotent_section_check,
    is_minimal_flow,
    product_flow,
    quotient_by_icer,
)

# canonical fixtures -------------------------------------------------------

CONSTANTS_FLOW = FiniteFlow(2, ((0, 0), (1, 1)))
ROTATION3_FLOW = FiniteFlow(3, ((1, 2, 0),))
IDENTITY_FLOW = FiniteFlow(2, ((0, 1),))

# Four-state model with two minimal left ideals: the idempotent actions of
# the square substitution system restricted to its fixed points
# (states 0..3 = the four fixed points, paired duals 0-2 and 1-3).
TWO_IDEAL_FLOW = FiniteFlow(4, ((1, 1, 3, 3), (3, 1, 1, 3), (0, 0, 2, 2), (0, 2, 2, 0)))

# Rank-two pair on four states; generates a single minimal ideal and is
# kept as a regression fixture for the ideal machinery.
SINGLE_IDEAL_SEED_FLOW = FiniteFlow(4, ((1, 0, 1, 0), (2, 3, 2, 3)))

FIXTURE_FLOWS = {
    "identity": IDENTITY_FLOW,
    "constants": CONSTANTS_FLOW,
    "rotation3": ROTATION3_FLOW,
    "two_ideal": TWO_IDEAL_FLOW,
    "single_ideal_seed": SINGLE_IDEAL_SEED_FLOW,
}


def random_flow(rng: random.Random, min_states: int = 2, max_states: int = 6,
                min_gens: int = 1, max_gens: int = 3) -> FiniteFlow:
    n = rng.randint(min_states, max_states)
    k = rng.randint(min_gens, max_gens)
    gens = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(k))
    return FiniteFlow(n, gens)


# relation-theorem suite ---------------------------------------------------


def relation_check_suite(ax: FlowAnalysis) -> list[CheckResult]:
    """The finite-semigroup theorem suite for one flow."""
    m = ax.monoid
    n = ax.n_states
    st = ax.structure
    delta = diagonal(n)
    p, d = ax.proximal.matrix, ax.distal.matrix
    sp, wd = ax.strongly_proximal.matrix, ax.weakly_distal.matrix
    om = ax.omega.matrix
    out: list[CheckResult] = []

    out.append(_result("sp_is_equivalence", ax.strongly_proximal.is_equivalence))
    out.append(_result("p_d_partition", (p ^ d).all()))
    out.append(_result("sp_wd_partition", (sp ^ wd).all()))
    out.append(_result("sp_subset_p", not (sp & ~p).any()))
    out.append(_result("d_subset_wd", not (d & ~wd).any()))
    out.append(_result("wd_formula", np.array_equal(wd, (p & ~sp) | d)))
    out.append(_result("p_omega_in_diagonal", not (p & om & ~delta).any()))

    # Omega cells equal the union of fixed-point sets of idempotents fixing x.
    ar = np.arange(n)
    cells_ok = True
    for x in range(n):
        expected: set[int] = set()
        for u in st.all_idempotents:
            row = m.elements[u]
            if row[x] == x:
                expected |= {int(v) for v in row}
        if expected != {int(y) for y in np.nonzero(om[x])[0]}:
            cells_ok = False
            break
    out.append(_result("omega_cells_are_fixed_point_unions", cells_ok, f"state {x}" if not cells_ok else ""))

    eq = check_unique_ideal_equiv(m)
    out.append(_result("three_way_equivalence", eq["consistent"], str(eq)))

    # ideal algebra
    mp_ok = pu_ok = group_ok = True
    detail = ""
    for ki, ideal in enumerate(st.ideals):
        members = set(ideal.members)
        for pidx in ideal.members:
            if set(m.left_ideal_of(pidx)) != members:
                mp_ok = False
                detail = f"Mp != M at ideal {ki} element {pidx}"
        for u in st.idempotents_by_ideal[ki]:
            for pidx in ideal.members:
                if m.compose(pidx, u) != pidx:
                    pu_ok = False
                    detail = f"pu != p at ideal {ki}"
            um = sorted({m.compose(u, q) for q in ideal.members})
            umset = set(um)
            closed = all(m.compose(a, b) in umset for a in um for b in um)
            has_inverses = all(
                any(m.compose(a, b) == u and m.compose(b, a) == u for b in um) for a in um
            )
            if not (closed and u in umset and has_inverses):
                group_ok = False
                detail = f"uM not a group at ideal {ki} idempotent {u}"
    out.append(_result("ideal_absorption_Mp_equals_M", mp_ok, detail))
    out.append(_result("right_identity_pu_equals_p", pu_ok, detail))
    out.append(_result("uM_is_group", group_ok, detail))

    intra_ok = True
    for js in st.idempotents_by_ideal:
        for i, u in enumerate(js):
            for v in js[i + 1:]:
                if m.compose(u, v) == v and m.compose(v, u) == u:
                    intra_ok = False
    out.append(_result("intra_ideal_idempotents_not_equivalent", intra_ok))

    cross_ok = True
    detail = ""
    for a, js in enumerate(st.idempotents_by_ideal):
        for u in js:
            for b, js2 in enumerate(st.idempotents_by_ideal):
                if a == b:
                    continue
                if not any(m.compose(u, v) == v and m.compose(v, u) == u for v in js2):
                    cross_ok = False
                    detail = f"idempotent {u} has no partner in ideal {b}"
    out.append(_result("cross_ideal_equivalent_idempotent_exists", cross_ok, detail))

    # on minimal flows the proximal cell of x is the idempotent orbit Jx
    if is_minimal_flow(m):
        cells_ok = True
        for x in range(n):
            jx = {m.apply(u, x) for u in st.all_idempotents}
            if jx != {int(y) for y in np.nonzero(p[x])[0]}:
                cells_ok = False
                break
        out.append(_result("p_cells_are_idempotent_orbits_when_minimal", cells_ok))

    # Omega agrees with the product-flow definition: its pairs are the
    # almost periodic points of the squared flow (skipped on wide state
    # sets, where the squared flow is quadratically larger)
    if n <= 12:
        square = product_flow(ax.flow, ax.flow)
        try:
            sq = close(square)
            sq_st = ideal_structure(sq)
            ar2 = np.arange(square.n_states)
            ap = np.zeros(square.n_states, dtype=bool)
            for u in sq_st.all_idempotents:
                ap |= sq.elements[u] == ar2
            om_via_square = ap.reshape(n, n)
            out.append(_result("omega_agrees_with_product_flow", np.array_equal(om, om_via_square)))
        except MonoidTooLarge:
            pass

    # monoid-model invariance facts (see module docstring of relations)
    e = m.elements
    out.append(_result("omega_forward_invariant", not (om & ~om[e[:, :, None], e[:, None, :]].all(axis=0)).any()))
    out.append(_result("sp_forward_invariant", not (sp & ~sp[e[:, :, None], e[:, None, :]].all(axis=0)).any()))
    d_trans = d[e[:, :, None], e[:, None, :]].all(axis=0)
    out.append(_result("d_invariance_biconditional", np.array_equal(d, d_trans)))
    # backward invariance of P: a proximal translate pulls back
    back_ok = not (p[e[:, :, None], e[:, None, :]] & ~p[None, :, :]).any()
    out.append(_result("p_backward_invariant", back_ok))
    return out


def proxset_check_suite(ax: FlowAnalysis) -> list[CheckResult]:
    """The proximal-set suite: refinement structure, SP decomposition and
    the r(A) biconditional."""
    m = ax.monoid
    st = ax.structure
    out: list[CheckResult] = []
    try:
        for ideal in st.ideals:
            proxsets.i_proximal_partition(m, ideal)
        proxsets.max_strongly_proximal_sets(m)
        out.append(_result("per_ideal_partitions_valid", True))
    except AssertionError as exc:
        out.append(_result("per_ideal_partitions_valid", False, str(exc)))
    out.append(proxsets.sp_matches_class_squares(m))
    out.append(proxsets.check_rA_proximal_equiv(m))

    # the image of a proximal set under an invertible generator stays
    # proximal (the translate lemma; its proof needs the inverse, and it
    # genuinely fails for non-invertible monoid generators)
    gen_ok = True
    detail = ""
    invertible = [g for g in ax.flow.generators if len(set(g)) == ax.n_states]
    for cols in proxsets._proximal_candidates(m, 3):
        for g in invertible:
            img = {g[x] for x in cols}
            if proxsets.is_proximal_set(m, img) is None:
                gen_ok = False
                detail = f"tA not proximal: A={list(cols)} g={g}"
    out.append(_result("invertible_generator_image_of_proximal_set_proximal", gen_ok, detail))
    return out


# icer generation ----------------------------------------------------------


def saturate_icer(flow: FiniteFlow, seed_pairs) -> np.ndarray:
    """Smallest icer containing the seed pairs: alternate symmetric,
    transitive and generator-invariant closure until stable."""
    n = flow.n_states
    mat = diagonal(n).copy()
    for x, y in seed_pairs:
        mat[x, y] = mat[y, x] = True
    gens = [np.array(g) for g in flow.generators]
    changed = True
    while changed:
        changed = False
        new = mat | mat.T
        closed = new.copy()
        while True:
            step = closed | (closed @ closed)
            if np.array_equal(step, closed):
                break
            closed = step
        for g in gens:
            moved = np.zeros_like(closed)
            xs, ys = np.nonzero(closed)
            moved[g[xs], g[ys]] = True
            closed |= moved
        if not np.array_equal(closed, mat):
            mat = closed
            changed = True
    return mat


def random_icer(rng: random.Random, ax: FlowAnalysis) -> np.ndarray:
    n = ax.n_states
    k = rng.randint(0, max(1, n // 2))
    seeds = [(rng.randrange(n), rng.randrange(n)) for _ in range(k)]
    return saturate_icer(ax.flow, seeds)


def factor_check_suite(ax: FlowAnalysis, icer: np.ndarray, cap: int | None = None) -> list[CheckResult]:
    f = quotient_by_icer(ax.flow, icer)
    out = check_factor_theorems(f, cap=cap)
    out.extend(idempotent_section_check(f, cap=cap))
    if np.array_equal(icer, ax.strongly_proximal.matrix):
        tgt = analyze_flow(f.target, cap=cap)
        out.append(_result(
            "quotient_by_sp_weakly_distal",
            tgt.is_weakly_distal_flow,
            "SP of the quotient is not the diagonal",
        ))
    return out


# harness ------------------------------------------------------------------


@dataclass
class InstanceOutcome:
    flow: FiniteFlow
    failures: list[CheckResult] = field(default_factory=list)
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures and not self.skipped


def run_checks_on_flow(flow: FiniteFlow, cap: int | None = None,
                       include_proxsets: bool = True) -> InstanceOutcome:
    try:
        ax = analyze_flow(flow, cap=cap)
    except MonoidTooLarge:
        return InstanceOutcome(flow, skipped=True)
    except AssertionError as exc:
        return InstanceOutcome(flow, [CheckResult("internal_consistency", False, str(exc))])
    results = relation_check_suite(ax)
    if include_proxsets:
        results.extend(proxset_check_suite(ax))
    return InstanceOutcome(flow, [r for r in results if not r.passed])


def minimize_failure(flow: FiniteFlow, cap: int | None = None) -> FiniteFlow:
    """Greedy delta-debugging by generator removal: drop generators while
    some check still fails."""
    current = flow
    improving = True
    while improving and len(current.generators) > 1:
        improving = False
        for i in range(len(current.generators)):
            gens = current.generators[:i] + current.generators[i + 1:]
            candidate = FiniteFlow(current.n_states, gens)
            outcome = run_checks_on_flow(candidate, cap=cap)
            if not outcome.skipped and outcome.failures:
                current = candidate
                improving = True
                break
    return current


def run_fuzz(count: int, seed: int, max_states: int = 6, cap: int | None = None,
             min_states: int = 2, max_gens: int = 3) -> dict:
    if count < 1:
        raise ValueError("fuzz count must be at least 1")
    rng = random.Random(seed)
    passed = 0
    skipped = 0
    failures = []
    for i in range(count):
        flow = random_flow(rng, min_states=min_states, max_states=max_states, max_gens=max_gens)
        outcome = run_checks_on_flow(flow, cap=cap)
        if outcome.skipped:
            skipped += 1
        elif outcome.passed:
            passed += 1
        else:
            small = minimize_failure(flow, cap=cap)
            failures.append({
                "instance": i,
                "flow": format_flow(flow),
                "minimized": format_flow(small),
                "checks": [r.as_json() for r in outcome.failures],
            })
    return {
        "schema": 1,
        "kind": "fuzz_summary",
        "count": count,
        "seed": seed,
        "max_states": max_states,
        "passed": passed,
        "skipped_over_cap": skipped,
        "failures": failures,
    }
