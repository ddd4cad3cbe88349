"""Proximal sets, per-ideal proximal partitions, and maximal strongly
proximal sets on finite flows.

A set is proximal when some monoid element collapses it to a point.  For
each minimal ideal I the maximal I-collapsed sets are exactly the classes
of the relation "p(x) = p(y) for all p in I", and the maximal strongly
proximal sets are the classes of the common refinement over all minimal
ideals.  Set proximality is never inferred from pairwise proximality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .finflow import LeftIdeal, TransMonoid, ideal_structure
from .relations import CheckResult, ideal_kernel_matrix, proximal, strongly_proximal, _result


@dataclass(frozen=True)
class ProximalSet:
    members: frozenset[int]
    collapser: int


@dataclass(frozen=True)
class IProximalSet:
    ideal_index: int
    members: frozenset[int]


@dataclass(frozen=True)
class StronglyProximalSet:
    members: frozenset[int]
    maximal: bool = True


def is_proximal_set(m: TransMonoid, members) -> int | None:
    """Some element index collapsing the set to a single point, or None.

    Scans all monoid elements directly; agrees with the tuple formulation
    because a collapser of the set collapses every tuple ranging over it.
    """
    cols = sorted(set(int(x) for x in members))
    if not cols:
        raise ValueError("proximal-set test needs a nonempty set")
    images = m.elements[:, cols]
    hits = np.nonzero((images == images[:, :1]).all(axis=1))[0]
    return int(hits[0]) if hits.size else None


def minimal_ideal_collapse(m: TransMonoid, members) -> LeftIdeal | None:
    """A minimal ideal all of whose elements collapse the set.

    The collapsers of a proximal set form a left ideal, hence contain a
    minimal one; if the set is proximal but no minimal ideal qualifies,
    that breaks the theorem and is reported as a contract violation.
    """
    cols = sorted(set(int(x) for x in members))
    images = m.elements[:, cols]
    collapsers = set(np.nonzero((images == images[:, :1]).all(axis=1))[0].tolist())
    st = ideal_structure(m)
    for ideal in st.ideals:
        if set(ideal.members) <= collapsers:
            return ideal
    if collapsers:
        raise AssertionError(
            f"set {cols} is proximal but no minimal ideal collapses it (theorem breach)"
        )
    return None


def i_proximal_partition(m: TransMonoid, ideal: LeftIdeal) -> list[IProximalSet]:
    """Classes of x ~ y iff p(x) = p(y) for every p in the ideal.

    These are the maximal sets collapsed by every element of the ideal.
    Asserts that distinct classes have distinct images under every ideal
    element, that every class contains an almost periodic point, and that
    every class is closed under the ideal's idempotents.
    """
    st = ideal_structure(m)
    idx = st.ideals.index(ideal)
    ker = ideal_kernel_matrix(m, ideal)
    n = m.n_states
    seen: set[int] = set()
    classes: list[frozenset[int]] = []
    for x in range(n):
        if x not in seen:
            c = frozenset(int(y) for y in np.nonzero(ker[x])[0])
            seen |= c
            classes.append(c)
    for a, b in combinations(classes, 2):
        xa, xb = min(a), min(b)
        for p in ideal.members:
            if m.apply(p, xa) == m.apply(p, xb):
                raise AssertionError(
                    f"distinct ideal-proximal classes share an image under element {p}"
                )
    js = st.idempotents_by_ideal[idx]
    for c in classes:
        if not any(m.apply(u, x) == x for u in js for x in c):
            raise AssertionError(f"class {sorted(c)} has no almost periodic point")
        for u in js:
            if any(m.apply(u, x) not in c for x in c):
                raise AssertionError(f"class {sorted(c)} not closed under idempotent {u}")
    return [IProximalSet(idx, c) for c in classes]


def max_strongly_proximal_sets(m: TransMonoid) -> list[StronglyProximalSet]:
    """Classes of the common refinement x ~ y iff p(x) = p(y) for every
    element of every minimal ideal.

    Asserts that each class is an intersection of one class per ideal,
    that distinct classes are disjoint, and that every minimal idempotent
    maps each class to a singleton.
    """
    st = ideal_structure(m)
    n = m.n_states
    common = np.ones((n, n), dtype=bool)
    partitions = []
    for ideal in st.ideals:
        ker = ideal_kernel_matrix(m, ideal)
        partitions.append(ker)
        common &= ker
    seen: set[int] = set()
    classes: list[frozenset[int]] = []
    for x in range(n):
        if x not in seen:
            c = frozenset(int(y) for y in np.nonzero(common[x])[0])
            seen |= c
            classes.append(c)
    for c in classes:
        x = min(c)
        inter = set(range(n))
        for ker in partitions:
            inter &= {int(y) for y in np.nonzero(ker[x])[0]}
        if inter != set(c):
            raise AssertionError("refinement class is not the intersection of per-ideal classes")
    for a, b in combinations(classes, 2):
        if a & b:
            raise AssertionError("maximal strongly proximal sets must be disjoint")
    for c in classes:
        for u in st.all_idempotents:
            if len({m.apply(u, x) for x in c}) != 1:
                raise AssertionError(f"idempotent {u} does not collapse class {sorted(c)}")
    return [StronglyProximalSet(c) for c in classes]


def sp_matches_class_squares(m: TransMonoid) -> CheckResult:
    """Cross-module consistency: SP equals the union of A x A over the
    maximal strongly proximal sets A."""
    sp = strongly_proximal(m).matrix
    n = m.n_states
    built = np.zeros((n, n), dtype=bool)
    for s in max_strongly_proximal_sets(m):
        idxs = sorted(s.members)
        built[np.ix_(idxs, idxs)] = True
    return _result("sp_equals_union_of_class_squares", np.array_equal(sp, built))


def max_sp_sets_fixed_by_all_idempotents(m: TransMonoid) -> CheckResult:
    """The literal closure claim u(A) ⊆ A for every minimal idempotent u
    and every maximal strongly proximal set A.

    This claim fails on flows with several minimal ideals whenever an
    idempotent moves a point across refinement classes; it is kept as a
    standalone check so the failure is visible rather than silently
    weakened.
    """
    st = ideal_structure(m)
    for s in max_strongly_proximal_sets(m):
        for u in st.all_idempotents:
            img = {m.apply(u, x) for x in s.members}
            if not img <= s.members:
                return CheckResult(
                    "max_sp_class_fixed_by_all_idempotents",
                    False,
                    f"u={m.image_tuple(u)} A={sorted(s.members)} uA={sorted(img)}",
                )
    return CheckResult("max_sp_class_fixed_by_all_idempotents", True)


def _proximal_candidates(m: TransMonoid, size_cap: int = 4,
                         exhaustive_below: int = 13) -> list[tuple[int, ...]]:
    """Structured proximal-set candidates: every per-ideal class, every
    proximal pair, and (on small state sets, where the subset count stays
    polynomial in practice) every proximal subset of size <= cap.

    The pair family alone makes the r(A)-image biconditional exact in the
    converse direction, which only ever needs two-element sets.
    """
    st = ideal_structure(m)
    n = m.n_states
    found: set[tuple[int, ...]] = set()
    found.update((x,) for x in range(n))
    pmat = proximal(m).matrix
    for x in range(n):
        for y in range(x + 1, n):
            if pmat[x, y]:
                found.add((x, y))
    if n < exhaustive_below:
        for size in range(3, min(size_cap, n) + 1):
            for combo in combinations(range(n), size):
                if is_proximal_set(m, combo) is not None:
                    found.add(combo)
    for ideal in st.ideals:
        for cls in i_proximal_partition(m, ideal):
            found.add(tuple(sorted(cls.members)))
    return sorted(found)


def check_rA_proximal_equiv(m: TransMonoid, size_cap: int = 4) -> CheckResult:
    """P is an equivalence relation iff r(A) is proximal for every
    (enumerated) proximal set A and every monoid element r.

    The forward direction is sound for any enumeration; the converse needs
    only two-element sets, which the enumeration always includes.
    """
    st = ideal_structure(m)
    p_equiv = proximal(m).is_equivalence
    class_ids = []
    for ideal in st.ideals:
        ker = ideal_kernel_matrix(m, ideal)
        cid = np.full(m.n_states, -1, dtype=int)
        next_id = 0
        for x in range(m.n_states):
            if cid[x] < 0:
                cid[np.nonzero(ker[x])[0]] = next_id
                next_id += 1
        class_ids.append(cid)
    all_images_proximal = True
    witness = ""
    for cols in _proximal_candidates(m, size_cap):
        images = m.elements[:, list(cols)]
        ok = np.zeros(m.size, dtype=bool)
        for cid in class_ids:
            labelled = cid[images]
            ok |= (labelled == labelled[:, :1]).all(axis=1)
        if not ok.all():
            r = int(np.nonzero(~ok)[0][0])
            all_images_proximal = False
            witness = f"A={list(cols)} r={m.image_tuple(r)} rA={sorted(set(int(v) for v in images[r]))}"
            break
    return _result(
        "rA_proximal_iff_p_equivalence",
        p_equiv == all_images_proximal,
        f"p_equiv={p_equiv} but all r(A) proximal={all_images_proximal}; {witness}",
    )
