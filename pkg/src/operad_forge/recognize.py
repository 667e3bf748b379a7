"""Homology-level evidence for the recognition criteria of E_1 / E_n / E_infinity operads."""

from math import factorial
from typing import Optional

import numpy as np

from .adjoint import MonoidM, R1Operad, ru_operad
from .complex import DEFAULT_SIMPLEX_BUDGET
from .graphs import KHatOperad, codes_array, fixed_point_rows
from .homology import HomologyResult, nerve_homology
from .perm import Perm, all_perms
from .poset import action_fixed_points, has_greatest_element

FAMILIES = ("khat", "k", "ru-k", "r1")


def family_operad(family: str, n: int = 2, monoid: Optional[MonoidM] = None):
    if family == "khat":
        return KHatOperad(n)
    if family == "k":
        return KHatOperad(n, total=True)
    if family == "ru-k":
        return ru_operad(KHatOperad(n, total=True), name=f"RU(K^({n}))")
    if family == "r1":
        M = monoid or MonoidM.cyclic(2)
        return R1Operad(M, name=f"R1({'/'.join(M.elements)})")
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def config_space_poincare(n: int, k: int) -> tuple:
    """Betti numbers of F(R^n, k): coefficients of prod_{i<k} (1 + i t^(n-1))."""
    if n < 1:
        raise ValueError("n >= 1")
    if n == 1:
        return (factorial(k),)
    poly = [1]
    step = n - 1
    for i in range(1, k):
        new = [0] * (len(poly) + step)
        for d, c in enumerate(poly):
            new[d] += c
            new[d + step] += i * c
        poly = new
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def fixed_points(op, k: int, g: Perm) -> list:
    """Elements of arity k fixed by g (vectorised for graph operads)."""
    elems = op.elements(k)
    if isinstance(op, KHatOperad):
        rows = fixed_point_rows(codes_array(elems), k, g)
        return [elems[int(i)] for i in rows]
    return action_fixed_points(elems, op.act, g)


def freeness_scan(op, k: int) -> dict:
    """Fixed points of every non-identity permutation of arity k."""
    fixed = {}
    for g in all_perms(k):
        if g.is_identity():
            continue
        pts = fixed_points(op, k, g)
        if pts:
            fixed[g] = pts
    return {
        "free": not fixed,
        "perms_with_fixed_points": len(fixed),
        "example": None if not fixed else {"perm": next(iter(fixed)).one_based(),
                                           "fixed": _show(next(iter(fixed.values()))[0])},
    }


def _show(x):
    return x.to_json() if hasattr(x, "to_json") else list(x) if isinstance(x, tuple) else x


def component_action(op, k: int, comps: list) -> dict:
    """How Sigma_k permutes the components of the arity-k carrier."""
    elems = op.elements(k)
    pos = {x: i for i, x in enumerate(elems)}
    comp_of = np.empty(len(elems), dtype=np.int64)
    for c, members in enumerate(comps):
        comp_of[members] = c
    images = {}
    well_defined = True
    for g in all_perms(k):
        img = comp_of[[pos[op.act(x, g)] for x in elems]]
        perm = []
        for c, members in enumerate(comps):
            targets = set(img[members].tolist())
            if len(targets) != 1:
                well_defined = False
            perm.append(min(targets))
        images[g] = perm
    orbit = {images[g][0] for g in images}
    transitive = len(orbit) == len(comps)
    free = all(g.is_identity() or all(images[g][c] != c for c in range(len(comps))) for g in images)
    return {"transitive": transitive, "free": free, "well_defined": well_defined}


def recognize(family: str, n: int, k: int, budget: int = DEFAULT_SIMPLEX_BUDGET, monoid=None) -> dict:
    """Component count, Sigma_k on components, homology of components and
    freeness of the action on elements, plus a hedged reading of them."""
    op = family_operad(family, n, monoid)
    P = op.carrier(k)
    comps = P.components()
    comp_info = component_action(op, k, comps)
    homs = {}
    per_component = []
    for members in comps:
        sub = P.subposet(members)
        h = nerve_homology(sub, budget=budget)
        per_component.append(h)
        homs.setdefault(tuple(h.betti), 0)
        homs[tuple(h.betti)] += 1
    whole = nerve_homology(P, budget=budget) if len(comps) > 1 else per_component[0]
    top = has_greatest_element(P)
    free = freeness_scan(op, k)
    top_fixed = None
    if top is not None:
        t = P.label(top)
        top_fixed = all(op.act(t, g) == t for g in all_perms(k))
    comps_acyclic = all(h.is_acyclic() for h in per_component)

    verdict = _verdict(family, n, k, len(comps), comp_info, comps_acyclic, whole, free["free"], top, top_fixed)
    return {
        "family": family,
        "operad": op.name,
        "n": n,
        "k": k,
        "elements": P.size,
        "components": len(comps),
        "sigma_on_components": comp_info,
        "component_homology": {"betti_counts": {str(list(b)): c for b, c in sorted(homs.items())},
                               "all_acyclic": comps_acyclic},
        "homology": whole.to_json(),
        "homology_route": whole.route,
        "greatest_element": None if top is None else _show(P.label(top)),
        "greatest_element_fixed_by_sigma": top_fixed,
        "free_on_elements": free,
        "config_space_betti": list(config_space_poincare(n, k)) if family in ("k", "khat") else None,
        "verdict": verdict,
    }


def _verdict(family, n, k, ncomp, comp_info, comps_acyclic, whole: HomologyResult, free, top, top_fixed):
    if top is not None and top_fixed and k >= 2:
        return ("contractible (greatest element) but Sigma_k fixes the top element: "
                "freeness fails, so not E_n evidence")
    if not free:
        return "Sigma_k does not act freely on elements: not E_n evidence"
    if ncomp == factorial(k) and comp_info["transitive"] and comp_info["free"] and comps_acyclic:
        return "E_1 evidence: k! acyclic components, Sigma_k free and transitive on components"
    if family in ("k", "khat"):
        expected = config_space_poincare(n, k)
        if tuple(whole.betti) == expected and not whole.has_torsion:
            return f"consistent with E_{n}: free action, homology of F(R^{n},{k})"
    return "no recognition evidence"


__all__ = ["recognize", "family_operad", "config_space_poincare", "freeness_scan", "component_action", "FAMILIES"]
