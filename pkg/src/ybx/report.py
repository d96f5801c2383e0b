"""Assemble the analysis report for a solution."""

from __future__ import annotations

import json

from .perm import ISO_ORDER_BOUND, GroupTooLarge, closure, identify
from .permbrace import PermBrace
from .retraction import is_irretractable, mp_level
from .solution import Solution, validate
from .structbrace import CrossCheckError, StructureBrace, mp_verdict, pi_cross_check, series_lattices

MAX_GROUP_ORDER = 5000

PROVENANCE = {
    "mp": "computed (retraction tower, confirmed by the Rump series)",
    "left_orderable": "theorem: multipermutation <=> left orderable structure group",
    "poly_Z": "theorem: multipermutation <=> poly-Z structure group",
}


def analyze(s: Solution, max_group_order: int = MAX_GROUP_ORDER,
            iso_bound: int = ISO_ORDER_BOUND) -> dict:
    """Full report as a JSON-ready dict.

    Raises :class:`CrossCheckError` when the independent pipelines disagree.
    """
    v = validate(s.rtable)
    tower = mp_level(s)
    rep: dict = {
        "n": s.n,
        "labels": str(s.points),
        "validity": {"braid": v.braid, "involutive": v.involutive,
                     "nondegenerate": v.nondegenerate},
        "irretractable": is_irretractable(s),
        "retraction_tower": list(tower.tower),
        "mp": {"multipermutation": tower.is_multipermutation, "level": tower.level},
    }
    skipped = f"skipped: group order exceeds {max_group_order}"
    try:
        group = closure(s.sigma, s.n, limit=max_group_order)
    except GroupTooLarge:
        group = None
    if group is None:
        rep["permutation_group"] = {"order": None, "skipped": skipped}
        rep["socle"] = {"skipped": skipped}
        rep["series"] = {"skipped": skipped}
        rep["cross_checks"] = {"pi_cross_check": "skipped", "verdict_agreement": "skipped"}
    else:
        stats = group.order_statistics()
        matched = identify(group, iso_bound) if group.order <= iso_bound else "skipped"
        rep["permutation_group"] = {
            "order": group.order,
            "fingerprint": {"abelian": group.is_abelian(),
                            "element_orders": {str(k): stats[k] for k in sorted(stats)}},
            "matched": matched,
        }
        brace = PermBrace(s, group)
        brace.verify()
        soc = brace.socle()
        rep["socle"] = {"order": soc.order, "trivial": soc.order == 1}
        series = series_lattices(s, limit=max_group_order, sb=StructureBrace(s))
        rep["series"] = {
            "lattice_ranks": series.lattice_ranks,
            "perm_orders": series.perm_orders,
            "stabilization_index": series.stabilization_index,
        }
        if not pi_cross_check(s, series, brace):
            raise CrossCheckError("lambda-images of the lattice series differ from the brace series")
        verdict = mp_verdict(s, series)
        rep["cross_checks"] = {"pi_cross_check": True,
                               "verdict_agreement": verdict.multipermutation == tower.is_multipermutation}
    mp = tower.is_multipermutation
    rep["verdict"] = {"left_orderable": mp, "poly_Z": mp, "provenance": PROVENANCE}
    return rep


def to_json(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=True) + "\n"


def to_text(rep: dict) -> str:
    lines = [f"points: {rep['n']} ({rep['labels']})"]
    val = rep["validity"]
    lines.append("validity: " + ", ".join(f"{k}={'ok' if val[k] else 'FAIL'}" for k in sorted(val)))
    lines.append(f"irretractable: {str(rep['irretractable']).lower()}")
    lines.append("retraction tower: " + " -> ".join(map(str, rep["retraction_tower"])))
    mp = rep["mp"]
    lines.append(f"multipermutation level: {mp['level']}" if mp["multipermutation"]
                 else "multipermutation: no")
    pg = rep["permutation_group"]
    if "skipped" in pg:
        lines.append(f"permutation group: {pg['skipped']}")
    else:
        lines.append(f"permutation group: order {pg['order']}, matched {pg['matched'] or 'none'}")
        lines.append(f"socle: order {rep['socle']['order']}")
        ser = rep["series"]
        lines.append(f"series: lattice ranks {ser['lattice_ranks']}, "
                     f"image orders {ser['perm_orders']}, stable at m={ser['stabilization_index']}")
    cc = rep["cross_checks"]
    lines.append(f"cross checks: pi={cc['pi_cross_check']}, verdicts agree={cc['verdict_agreement']}")
    vd = rep["verdict"]
    lines.append(f"left orderable: {str(vd['left_orderable']).lower()}   "
                 f"poly-Z: {str(vd['poly_Z']).lower()}   (by theorem, from the mp verdict)")
    return "\n".join(lines) + "\n"
