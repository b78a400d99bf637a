"""Assembly of the deterministic JSON reports emitted by the CLI."""

from __future__ import annotations

from typing import Any

from . import gencoeff, gf2, hierarchy, oracle
from .csscode import CssCode, code_to_json
from .errors import BudgetExceeded, NonUnimodularEntry
from .gates import DiagonalGate, gate_to_json


def code_summary(code: CssCode, w_max: int, budget: int) -> dict[str, Any]:
    out: dict[str, Any] = {"n": code.n, "k": code.k}
    if code.k > 0:
        try:
            d_x, d_z = code.distances(w_max, budget)
            out["d_x"] = {"value": d_x.value, "exact": d_x.exact}
            out["d_z"] = {"value": d_z.value, "exact": d_z.exact}
        except BudgetExceeded as exc:
            out["distances_skipped"] = str(exc)
    return out


def logical_summary(code: CssCode, gate: DiagonalGate, budget: int) -> dict[str, Any]:
    try:
        diag = gencoeff.induced_logical(code, gate, budget=budget)
    except (BudgetExceeded, NonUnimodularEntry) as exc:
        return {"available": False, "reason": str(exc)}
    poly = hierarchy.phase_polynomial(list(diag.exps), diag.k, diag.level)
    out: dict[str, Any] = {
        "available": True,
        "level": hierarchy.level(poly),
        "description": hierarchy.describe(poly),
    }
    if diag.k <= 4:
        m = hierarchy.identify(list(diag.exps), diag.k, diag.level)
        if m.matched:
            out["template"] = m.template
            out["global_phase_exp"] = m.global_phase_exp
            out["pauli_z_mask"] = m.pauli_z_mask.to01() if m.pauli_z_mask else None
            out["basis_change"] = list(m.basis_change) if m.basis_change else None
    return out


def build_report(
    code: CssCode,
    gate: DiagonalGate | None,
    w_max: int = 6,
    budget: int = gf2.DEFAULT_BUDGET,
    sampled: int = 0,
    include_row: bool = True,
    include_oracle: bool = False,
    tol: float = oracle.DEFAULT_TOL,
) -> dict[str, Any]:
    rep: dict[str, Any] = {
        "code": code_summary(code, w_max, budget),
        "code_json": code_to_json(code),
    }
    if gate is None:
        return rep
    rep["gate"] = gate_to_json(gate)
    certificate = "exact-full"
    try:
        pres = gencoeff.is_preserved(code, gate, budget=budget)
        rep["preserved"] = pres.preserved
        rep["preservation_method"] = pres.method
        if pres.norm is not None:
            rep["norm"] = pres.norm.serialize()
            rep["norm_pretty"] = pres.norm.pretty()
    except BudgetExceeded as exc:
        if not sampled:
            raise
        cert = gencoeff.sampled_certificate(code, gate, sampled, sampled, budget=budget)
        certificate = "exact-sampled"
        rep["preserved"] = bool(cert["syndrome_pairs_zero"])
        rep["preservation_method"] = "sampled-certificate"
        rep["sampled_pairs"] = cert["syndrome_pair_count"]
        rep["full_check_skipped"] = str(exc)
    rep["certificate"] = certificate
    if include_row:
        try:
            row = gencoeff.trivial_row(code, gate, budget=budget)
            rep["trivial_row"] = row.to_json()
            rep["trivial_row_exactness"] = row.exactness
        except BudgetExceeded:
            rep["trivial_row"] = None
    if rep.get("preserved"):
        rep["logical"] = logical_summary(code, gate, budget)
    if include_oracle and code.n <= 24:
        chk = oracle.crosscheck(code, gate, tol=tol, budget=budget)
        rep["oracle"] = {
            "verdicts_agree": chk.verdicts_agree,
            "max_row_deviation": chk.max_row_deviation,
            "max_offdiag": chk.max_offdiag,
            "tol": chk.tol,
        }
    return rep
