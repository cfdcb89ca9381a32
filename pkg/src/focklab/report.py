"""Machine-readable reports over all subcommands.

Reports are schema-stable JSON (``focklab.report/1``): identical inputs and
seed produce byte-identical output.  Extended reals are encoded as
``{"value": <number or "inf">, "finite": <bool>}`` since JSON has no
infinity literal; complex scalars as ``{"re": ..., "im": ...}``.  CSV output
exists for the two tabular commands (``profile-m`` and ``path``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable

from .config import RunConfig
from .criteria import (
    RULE_ESS_BRACKET,
    RULE_ESS_UNIT,
    classify,
    essential_norm_bracket,
    gauge_profile,
)
from .fock import fock_norm
from .operators import (
    FamilySpec,
    WeightedCompositionOperator,
    empirical_norm,
    f2_matrix,
    matrix_sigma_max,
)
from .parsing import parse_affine, parse_complex, parse_symbol, render
from .topology import (
    RULE_COMPONENTS,
    RULE_DIFF_BOTH_COMPACT,
    RULE_DIFF_SAME_MAP,
    RULE_FULL_CONNECTED,
    RULE_ISOLATION,
    DifferenceReason,
    ComponentKind,
    compact_difference,
    component_id,
    is_isolated,
    path_profile,
)
from .verification import run_all

SCHEMA = "focklab.report/1"

COMMANDS = ("norm", "classify", "opnorm", "essnorm", "diff", "component",
            "isolated", "path", "profile-m", "verify")


@dataclass(frozen=True)
class Report:
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    citations: tuple[str, ...]
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "citations": list(self.citations),
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        rows = self.results.get("rows")
        if rows is None:
            raise ValueError(f"command {self.command!r} has no CSV form")
        header = self.results["columns"]
        lines = [",".join(header)]
        lines += [",".join(repr(float(x)) for x in row) for row in rows]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key, value in self.results.items():
            lines.append(f"{key}: {value}")
        if self.citations:
            lines.append("citations: " + ", ".join(self.citations))
        return "\n".join(lines) + "\n"


def ereal(x: float | None) -> Any:
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return {"value": "inf" if x > 0 else "-inf", "finite": False}
    return {"value": x, "finite": True}


def _complex(z: complex | None) -> Any:
    if z is None:
        return None
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _operator(options: dict[str, Any], config: RunConfig,
              psi_key: str = "psi", phi_key: str = "phi") -> WeightedCompositionOperator:
    psi = parse_symbol(options[psi_key])
    phi = parse_affine(options[phi_key])
    return WeightedCompositionOperator(psi, phi, float(options["p"]), float(options["q"]))


def _profile_diagnostics(op: WeightedCompositionOperator) -> dict[str, Any]:
    profile = gauge_profile(op.psi, op.phi)
    return {
        "gauge_numeric_sup": ereal(profile.numeric_sup),
        "gauge_annulus_sups": [[r, ereal(s)] for r, s in profile.annulus_sups],
        "gauge_divergence_evidence": profile.divergence_evidence,
    }


def _handle_norm(options, config: RunConfig) -> Report:
    f = parse_symbol(options["symbol"])
    p = float(options["p"])
    diagnostics: dict[str, Any] = {}
    if f.is_zero:
        diagnostics["warning"] = "symbol is identically zero"
    nv = fock_norm(f, p, config.quadrature)
    diagnostics["error_estimate"] = nv.error_estimate
    diagnostics["truncation_radius"] = nv.truncation_radius
    return Report(
        "norm",
        {"symbol": render(f), "p": p},
        {"value": nv.value, "error_estimate": nv.error_estimate},
        (),
        diagnostics,
    )


def _handle_classify(options, config: RunConfig) -> Report:
    op = _operator(options, config)
    c = classify(op, config.quadrature, FamilySpec(kernel_radius=config.grid_radius))
    results = {
        "verdict": c.verdict.value,
        "witness_direction": _complex(c.witness),
        "norm_lower": ereal(c.norm_lower),
        "norm_upper": ereal(c.norm_upper),
        "ess_lower": ereal(c.ess_lower),
        "ess_upper": ereal(c.ess_upper),
        "ls_norm": ereal(c.ls_norm),
    }
    return Report(
        "classify",
        {"psi": render(op.psi), "phi": {"a": _complex(op.phi.a), "b": _complex(op.phi.b)},
         "p": op.p, "q": op.q},
        results,
        c.rules,
        _profile_diagnostics(op),
    )


def _handle_opnorm(options, config: RunConfig) -> Report:
    op = _operator(options, config)
    order = int(options.get("matrix_order") or config.matrix_order)
    family = FamilySpec(kernel_radius=config.grid_radius)
    c = classify(op, config.quadrature, family)
    results: dict[str, Any] = {
        "empirical_lower": ereal(empirical_norm(op, family, config.quadrature)),
        "theory_lower": ereal(c.norm_lower),
        "theory_upper": ereal(c.norm_upper),
    }
    diagnostics: dict[str, Any] = {}
    if op.p == 2.0 and op.q == 2.0:
        matrix = f2_matrix(op, order, check_tail=False)
        results["matrix_sigma"] = ereal(matrix_sigma_max(matrix))
        diagnostics["matrix_order"] = order
        diagnostics["max_column_tail_fraction"] = max(matrix.column_tail_fractions)
    return Report(
        "opnorm",
        {"psi": render(op.psi), "phi": {"a": _complex(op.phi.a), "b": _complex(op.phi.b)},
         "p": op.p, "q": op.q},
        results,
        c.rules,
        diagnostics,
    )


def _handle_essnorm(options, config: RunConfig) -> Report:
    op = _operator(options, config)
    lo, hi = essential_norm_bracket(op)
    rules = [RULE_ESS_BRACKET]
    if op.phi.is_unit_modulus:
        rules.append(RULE_ESS_UNIT)
    return Report(
        "essnorm",
        {"psi": render(op.psi), "phi": {"a": _complex(op.phi.a), "b": _complex(op.phi.b)},
         "p": op.p, "q": op.q},
        {"ess_lower": ereal(lo), "ess_upper": ereal(hi)},
        tuple(rules),
        _profile_diagnostics(op),
    )


def _handle_diff(options, config: RunConfig) -> Report:
    first = _operator(options, config, "psi1", "phi1")
    second = _operator(options, config, "psi2", "phi2")
    verdict = compact_difference(first, second, config.quadrature)
    if verdict.reason is DifferenceReason.BOTH_COMPACT:
        rules = (RULE_DIFF_BOTH_COMPACT,)
    elif verdict.reason is DifferenceReason.SAME_SYMBOL_VANISHING:
        rules = (RULE_DIFF_SAME_MAP,)
    else:
        rules = (RULE_DIFF_BOTH_COMPACT, RULE_DIFF_SAME_MAP)
    return Report(
        "diff",
        {"psi1": render(first.psi), "phi1": {"a": _complex(first.phi.a), "b": _complex(first.phi.b)},
         "psi2": render(second.psi), "phi2": {"a": _complex(second.phi.a), "b": _complex(second.phi.b)},
         "p": first.p, "q": first.q},
        {"compact": verdict.compact, "reason": verdict.reason.value, "detail": verdict.detail},
        rules,
    )


def _handle_component(options, config: RunConfig) -> Report:
    op = _operator(options, config)
    cid = component_id(op, config.quadrature)
    rule = RULE_FULL_CONNECTED if cid.kind is ComponentKind.ALL_CONNECTED else RULE_COMPONENTS
    return Report(
        "component",
        {"psi": render(op.psi), "phi": {"a": _complex(op.phi.a), "b": _complex(op.phi.b)},
         "p": op.p, "q": op.q},
        {"kind": cid.kind.value,
         "leaf_key": None if cid.leaf_key is None else
         {"a": _complex(cid.leaf_key[0]), "b": _complex(cid.leaf_key[1])}},
        (rule,),
    )


def _handle_isolated(options, config: RunConfig) -> Report:
    phi = parse_affine(options["phi"])
    p, q = float(options["p"]), float(options["q"])
    return Report(
        "isolated",
        {"phi": {"a": _complex(phi.a), "b": _complex(phi.b)}, "p": p, "q": q},
        {"isolated": is_isolated(phi, p, q)},
        (RULE_ISOLATION,),
    )


def _handle_path(options, config: RunConfig) -> Report:
    kind = options["kind"]
    steps = int(options.get("steps") or 8)
    kwargs: dict[str, Any] = {
        "steps": steps,
        "p": float(options["p"]),
        "q": float(options["q"]),
        "spec": config.quadrature,
        "matrix_order": config.matrix_order,
    }
    inputs: dict[str, Any] = {"kind": kind, "steps": steps, "p": kwargs["p"], "q": kwargs["q"]}
    if kind == "dilate":
        phi = parse_affine(options["phi"])
        kwargs["phi"] = phi
        inputs["phi"] = {"a": _complex(phi.a), "b": _complex(phi.b)}
    elif kind == "translate":
        b1 = options["b1"] if isinstance(options["b1"], complex) else parse_complex(str(options["b1"]))
        b2 = options["b2"] if isinstance(options["b2"], complex) else parse_complex(str(options["b2"]))
        kwargs["b1"], kwargs["b2"] = b1, b2
        inputs["b1"], inputs["b2"] = _complex(b1), _complex(b2)
    else:
        phi = parse_affine(options["phi"])
        kwargs["phi"] = phi
        kwargs["psi1"] = parse_symbol(options["psi1"])
        kwargs["psi2"] = parse_symbol(options["psi2"])
        inputs["phi"] = {"a": _complex(phi.a), "b": _complex(phi.b)}
        inputs["psi1"] = render(kwargs["psi1"])
        inputs["psi2"] = render(kwargs["psi2"])
    profile = path_profile(kind, **kwargs)
    return Report(
        "path",
        inputs,
        {"columns": ["t", "distance"], "rows": [[t, d] for t, d in profile]},
        (RULE_COMPONENTS,),
    )


def _handle_profile_m(options, config: RunConfig) -> Report:
    psi = parse_symbol(options["psi"])
    phi = parse_affine(options["phi"])
    radii = tuple(float(r) for r in str(options.get("radii") or "2,4,8,16,32,64,128,256,512,1024").split(","))
    profile = gauge_profile(psi, phi, annulus_radii=radii)
    return Report(
        "profile-m",
        {"psi": render(psi), "phi": {"a": _complex(phi.a), "b": _complex(phi.b)},
         "radii": list(radii)},
        {"columns": ["radius", "annulus_sup"],
         "rows": [[r, s] for r, s in profile.annulus_sups],
         "symbolic_sup": ereal(profile.symbolic_sup),
         "symbolic_limsup": ereal(profile.symbolic_limsup)},
        (),
    )


def _handle_verify(options, config: RunConfig) -> Report:
    results = run_all(seed=config.seed, fast=bool(options.get("fast")))
    passed = sum(1 for r in results if r.passed)
    return Report(
        "verify",
        {"seed": config.seed, "fast": bool(options.get("fast"))},
        {"passed": passed, "failed": len(results) - passed,
         "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]},
        (),
    )


_HANDLERS: dict[str, Callable[[dict[str, Any], RunConfig], Report]] = {
    "norm": _handle_norm,
    "classify": _handle_classify,
    "opnorm": _handle_opnorm,
    "essnorm": _handle_essnorm,
    "diff": _handle_diff,
    "component": _handle_component,
    "isolated": _handle_isolated,
    "path": _handle_path,
    "profile-m": _handle_profile_m,
    "verify": _handle_verify,
}


def run(command: str, options: dict[str, Any], config: RunConfig | None = None) -> Report:
    """Execute one subcommand; deterministic given options and config.seed."""
    if command not in _HANDLERS:
        raise ValueError(f"unknown command {command!r}; expected one of {COMMANDS}")
    return _HANDLERS[command](options, config or RunConfig())
