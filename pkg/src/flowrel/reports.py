"""JSON report assembly.

Reports are plain dicts with a ``schema`` version; the CLI serializes
them with sorted keys so identical inputs produce byte-identical output.
The human-readable text renderings are projections of these dicts, never
a separate source of truth.
"""

from __future__ import annotations

import numpy as np

from . import proxsets
from .circles import CirclePoint, asymptotic_class, center, pair_class, step, step_back
from .fuzz import proxset_check_suite, relation_check_suite
from .relations import FlowAnalysis, is_minimal_flow, proximal_verdict, sp_verdict
from .subshift import (
    ChaconPoint,
    ClassifyParams,
    Shift,
    chacon_block,
    classify_pair,
    morse_fixed_points,
)
from .ternary import TernarySeq, constant, sp_classify

SCHEMA = 1


def _pair_list(matrix: np.ndarray) -> list[list[int]]:
    xs, ys = np.nonzero(matrix)
    return [[int(x), int(y)] for x, y in zip(xs, ys) if x <= y]


def flow_report(ax: FlowAnalysis) -> dict:
    """Full pipeline report for one flow: monoid, relations, proximal-set
    structure and every theorem check."""
    m = ax.monoid
    st = ax.structure
    relations = {}
    for kind in ("P", "D", "Omega", "SP", "WD"):
        rel = ax.relation(kind)
        entry: dict = {"pairs": _pair_list(rel.matrix)}
        if kind == "P":
            entry["witnesses"] = {
                f"{x},{y}": proximal_verdict(m, x, y).witness
                for x, y in entry["pairs"]
            }
        if kind == "SP":
            entry["out_witnesses"] = {
                f"{x},{y}": sp_verdict(m, x, y).witness
                for x, y in _pair_list(ax.proximal.matrix & ~rel.matrix)
            }
        relations[kind] = entry
    checks = [r.as_json() for r in relation_check_suite(ax) + proxset_check_suite(ax)]
    partitions = {
        str(k): [sorted(c.members) for c in proxsets.i_proximal_partition(m, ideal)]
        for k, ideal in enumerate(st.ideals)
    }
    refinement = [sorted(s.members) for s in proxsets.max_strongly_proximal_sets(m)]
    return {
        "schema": SCHEMA,
        "kind": "flow_analysis",
        "model": "finite semigroup model",
        "flow": {
            "states": ax.flow.n_states,
            "generators": [list(g) for g in ax.flow.generators],
        },
        "monoid": {
            "size": m.size,
            "identity_index": m.identity_index,
            "elements": [list(m.image_tuple(i)) for i in range(m.size)],
            "minimal_ideals": [list(ideal.members) for ideal in st.ideals],
            "idempotents_by_ideal": [list(js) for js in st.idempotents_by_ideal],
            "equivalent_idempotent_pairs": [list(p) for p in ax.equivalent_pairs],
        },
        "relations": relations,
        "proximal_sets": {
            "per_ideal_partitions": partitions,
            "max_strongly_proximal_sets": refinement,
        },
        "checks": checks,
        "verdicts": {
            "minimal": is_minimal_flow(m),
            "distal": ax.is_distal_flow,
            "proximal_flow": ax.is_proximal_flow,
            "weakly_distal": ax.is_weakly_distal_flow,
            "p_is_equivalence": ax.proximal.is_equivalence,
        },
    }


def flow_report_text(report: dict) -> str:
    v = report["verdicts"]
    lines = [
        f"flow: {report['flow']['states']} states, {len(report['flow']['generators'])} generators ({report['model']})",
        f"monoid: {report['monoid']['size']} elements, {len(report['monoid']['minimal_ideals'])} minimal ideal(s)",
        f"relation sizes: "
        + ", ".join(f"{k}={len(report['relations'][k]['pairs'])}" for k in ("P", "D", "Omega", "SP", "WD")),
        "verdicts: "
        + ", ".join(f"{k}={'yes' if val else 'no'}" for k, val in sorted(v.items())),
    ]
    failed = [c for c in report["checks"] if not c["pass"]]
    if failed:
        lines.append(f"FAILED checks ({len(failed)}):")
        lines.extend(f"  {c['name']}: {c['counterexample']}" for c in failed)
    else:
        lines.append(f"all {len(report['checks'])} theorem checks passed")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Reproduction scenarios


def _mt_points():
    fp = morse_fixed_points()
    return {
        "a": fp["a"],
        "b": fp["b"],
        "abar": fp["abar"],
        "bbar": fp["bbar"],
        "sigma_a": Shift(fp["a"], 1),
        "sigma_b": Shift(fp["b"], 1),
    }


def mt_report(params: ClassifyParams = ClassifyParams()) -> dict:
    """All 15 unordered pairs among the four fixed points and the shifts
    of the first two, classified at the default evidence parameters."""
    pts = _mt_points()
    names = list(pts)
    rows = []
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            rep = classify_pair(pts[names[i]], pts[names[j]], params)
            rows.append({
                "x": names[i],
                "y": names[j],
                "labels": list(rep.labels),
                "proximal": rep.proximal.as_json(),
                "syndetic": rep.syndetic.as_json() if rep.syndetic else None,
            })
    return {
        "schema": SCHEMA,
        "kind": "reproduction",
        "example": "mt",
        "params": params.as_json(),
        "pairs": rows,
    }


def chacon_report() -> dict:
    """Block recursion to depth 8 plus the evidence verdicts for the two
    distinguished points."""
    blocks = {str(k): len(chacon_block(k)) for k in range(9)}
    recursion_ok = all(
        chacon_block(k + 1) == chacon_block(k) + chacon_block(k) + "1" + chacon_block(k)
        for k in range(8)
    )
    x1, x2 = ChaconPoint("x1"), ChaconPoint("x2")
    params = ClassifyParams(depth=4, gap=729, horizon=3**8)
    rep = classify_pair(x1, x2, params)
    return {
        "schema": SCHEMA,
        "kind": "reproduction",
        "example": "chacon",
        "blocks": blocks,
        "recursion_ok": recursion_ok,
        "b2": chacon_block(2),
        "x2_center_window": x2.segment(-13, 13),
        "pair_x1_x2": {
            "labels": list(rep.labels),
            "proximal": rep.proximal.as_json(),
            "syndetic": rep.syndetic.as_json() if rep.syndetic else None,
        },
        "density_of_proximal_pairs": "out of evidence at finite horizon",
    }


def ternary_sample() -> dict[str, TernarySeq]:
    z = TernarySeq("11000110001110001111", -5, "0", "0")
    return {
        "c0": constant("0"),
        "c1": constant("1"),
        "c2": constant("2"),
        "z": z,
        "z_shift2": z.shifted(2),
        "z_shift40": z.shifted(40),
        "z_flip": TernarySeq("11000110001110001112", -5, "0", "0"),
        "alt01": TernarySeq("", 0, "01", "01"),
        "alt01_shift": TernarySeq("", 0, "01", "01").shifted(1),
        "mix01": TernarySeq("2", 0, "0", "1"),
        "mix10": TernarySeq("0", 0, "1", "0"),
        "per012": TernarySeq("", 0, "012", "012"),
    }


def ternary_report() -> dict:
    """Pairwise classification of the 12-point sample, plus transitivity
    of the strongly-proximal verdict over the sample."""
    pts = ternary_sample()
    names = list(pts)
    rows = []
    in_sp = {}
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            verdict = sp_classify(pts[names[i]], pts[names[j]])
            rows.append({
                "x": names[i],
                "y": names[j],
                "pair_type": verdict.pair_type,
                "sp": verdict.label,
            })
            in_sp[(names[i], names[j])] = verdict.label == "InSP"
    transitive = True
    for x in names:
        for y in names:
            for z in names:
                if x == y or y == z or x == z:
                    continue
                def rel(a, b):
                    return a == b or in_sp.get((a, b), in_sp.get((b, a), False))
                if rel(x, y) and rel(y, z) and not rel(x, z):
                    transitive = False
    return {
        "schema": SCHEMA,
        "kind": "reproduction",
        "example": "ternary",
        "points": {k: v.describe() for k, v in pts.items()},
        "pairs": rows,
        "in_sp_transitive_on_sample": transitive,
    }


CC_GRID_TIERS = (
    ("center", 0), ("C", 0), ("C", 1), ("C", 2), ("C", 3),
    ("C", 4), ("C", 5), ("D", 3), ("D", 4), ("D", 5),
)


def cc_report() -> dict:
    """Asymptotic classification of sample points, the pair grid over ten
    tiers, and the forward/backward round-trip error."""
    asym = []
    for alpha in (0.1, 1.0, 3.0):
        p = CirclePoint("C", 2, alpha)
        rep = asymptotic_class(p)
        asym.append({"point": p.describe(), "angle": round(alpha, 9), **rep.as_json()})
    for p in (CirclePoint("C", 0, 1.0), center()):
        rep = asymptotic_class(p)
        asym.append({"point": p.describe(), **rep.as_json()})

    grid = []
    for fam1, idx1 in CC_GRID_TIERS:
        row = []
        for fam2, idx2 in CC_GRID_TIERS:
            p = CirclePoint(fam1, idx1, 0.7)
            q = CirclePoint(fam2, idx2, 2.1)
            row.append(pair_class(p, q)["label"])
        grid.append(row)

    worst = 0.0
    for fam, idx in CC_GRID_TIERS:
        for alpha in (0.0, 0.3, 1.1, 2.9):
            p = CirclePoint(fam, idx, alpha)
            for q in (step_back(step(p)), step(step_back(p))):
                worst = max(worst, abs(q.angle - p.angle))
    return {
        "schema": SCHEMA,
        "kind": "reproduction",
        "example": "cc",
        "asymptotics": asym,
        "pair_grid_tiers": [f"{f}{i}" if f != "center" else "center" for f, i in CC_GRID_TIERS],
        "pair_grid": grid,
        "roundtrip_max_angle_error": float(f"{worst:.3e}"),
        "roundtrip_within_1e-9": worst < 1e-9,
    }


REPRODUCERS = {
    "mt": mt_report,
    "chacon": chacon_report,
    "ternary": ternary_report,
    "cc": cc_report,
}
