"""Scenario documents: schemas, loading, and one runner per kind.

A runner takes a validated document plus run options and returns a Report.
Reports contain only deterministic data unless timings are requested.
"""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import jsonschema

from . import curve_algebra as ca
from . import diophantine as dio
from ._fmt import q_from_doc, q_to_doc, vec_from_doc, vec_to_doc
from .expressions import ExpressionError
from .lattice_cone import (
    FgMonoid,
    RationalCone,
    hilbert_basis_intersection,
    hilbert_enumeration_bound,
    monoid_membership,
)
from .superlinear import (
    NonPLEvidence,
    PLDecomposition,
    PLInconclusive,
    StraightenedFunction,
    build_example_3_3,
    lipschitz_estimate,
    pl_detect,
    sample_cross_cone_pairs,
)

REPORT_SCHEMA = "bdivalg.report/1"

EXIT_PASS = 0
EXIT_VIOLATION = 2
EXIT_INCONCLUSIVE = 3
EXIT_PARSE = 64
EXIT_SCHEMA = 65
EXIT_OPERATION = 70

KINDS = ("hilbert", "saturate", "straighten", "plcone", "fingen", "diophantine", "counterexample",
         "example33", "suite")

# ---------------------------------------------------------------------------
# schemas

_RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"}]}
_INT_VEC = {"type": "array", "items": {"type": "integer"}, "minItems": 1}
_RAT_VEC = {"type": "array", "items": _RATIONAL, "minItems": 1}
_MONOID = {
    "type": "object",
    "properties": {"dim": {"type": "integer", "minimum": 1},
                   "generators": {"type": "array", "items": _INT_VEC, "minItems": 1}},
    "required": ["generators"],
}
_CONE = {
    "type": "object",
    "properties": {"dim": {"type": "integer", "minimum": 1},
                   "generators": {"type": "array", "items": _RAT_VEC, "minItems": 1}},
    "required": ["generators"],
}
_SYSTEM = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"kind": {"const": "floor-linear"},
                           "expressions": {"type": "object", "additionalProperties": {"type": "string"},
                                           "minProperties": 1}},
            "required": ["kind", "expressions"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "table"},
                "degree_bound": {"type": "integer", "minimum": 1},
                "values": {"type": "array", "items": {
                    "type": "object",
                    "properties": {"s": _INT_VEC,
                                   "divisor": {"type": "object", "additionalProperties": {"type": "integer"}}},
                    "required": ["s", "divisor"],
                }},
            },
            "required": ["kind", "degree_bound", "values"],
            "additionalProperties": False,
        },
    ]
}
_BOUNDS = {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}}
_F = {"type": "object", "additionalProperties": _RATIONAL}

_BASE = {"kind": {"enum": list(KINDS)}, "seed": {"type": "integer"}, "bounds": _BOUNDS,
         "description": {"type": "string"}}


def _schema(props: dict, required: list) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "properties": {**_BASE, **props},
        "required": ["kind"] + required,
    }


SCHEMAS = {
    "hilbert": _schema({"monoid": _MONOID, "cone": _CONE, "points": {"type": "array", "items": _INT_VEC}},
                       ["monoid", "cone"]),
    "saturate": _schema({"monoid": _MONOID, "system": _SYSTEM, "support": {"type": "array"},
                         "saturation_f": _F}, ["monoid", "system", "saturation_f"]),
    "straighten": _schema({"monoid": _MONOID, "system": _SYSTEM, "point": {"type": "string"},
                           "points": {"type": "array", "items": _RAT_VEC, "minItems": 1},
                           "lipschitz": {"type": "object", "properties": {"center": _RAT_VEC,
                                                                           "radius": _RATIONAL},
                                         "required": ["center", "radius"]}},
                          ["monoid", "system", "points"]),
    "plcone": _schema({"monoid": _MONOID, "system": _SYSTEM, "cone": _CONE, "point": {"type": "string"},
                       "saturation_f": _F}, ["monoid", "system", "cone"]),
    "fingen": _schema({"monoid": _MONOID, "system": _SYSTEM, "cone": _CONE, "support": {"type": "array"},
                       "saturation_f": _F}, ["monoid", "system", "cone", "saturation_f"]),
    "diophantine": _schema({"x": {"type": "array", "items": {"type": ["string", "integer"]}, "minItems": 2},
                            "q_min": {"type": "integer", "minimum": 1},
                            "q_max": {"type": "integer", "minimum": 1},
                            "steps": {"type": "integer", "minimum": 1},
                            "d_max": {"type": "number", "exclusiveMinimum": 0}}, ["x"]),
    "counterexample": _schema({"monoid": _MONOID, "system": _SYSTEM, "saturation_f": _F},
                              ["system", "saturation_f"]),
    "example33": _schema({"resolution": {"type": "integer", "minimum": 1},
                          "pairs": {"type": "integer", "minimum": 1},
                          "min_slopes": {"type": "integer", "minimum": 1}}, []),
    "suite": _schema({"saturation_instances": {"type": "integer", "minimum": 0},
                      "pipeline_instances": {"type": "integer", "minimum": 0},
                      "max_den": {"type": "integer", "minimum": 2}}, []),
}


class ScenarioError(Exception):
    exit_code = EXIT_OPERATION


class ParseError(ScenarioError):
    exit_code = EXIT_PARSE


class SchemaError(ScenarioError):
    exit_code = EXIT_SCHEMA


def parse_document(text: str, source: str = "<scenario>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SchemaError(f"{source}: a scenario must be a JSON object")
    return doc


def validate_document(doc: dict, kind: str | None = None) -> str:
    kind = kind or doc.get("kind")
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown scenario kind {kind!r}; expected one of {', '.join(KINDS)}")
    if doc.get("kind", kind) != kind:
        raise SchemaError(f"scenario kind {doc.get('kind')!r} does not match subcommand {kind!r}")
    validator = jsonschema.Draft202012Validator(SCHEMAS[kind])
    errors = sorted(validator.iter_errors(doc), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        e = errors[0]
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"schema violation at {path}: {e.message}")
    return kind


# ---------------------------------------------------------------------------
# builders


def build_monoid(doc: dict | None, rank: int | None = None) -> FgMonoid:
    if doc is None:
        if rank is None:
            raise SchemaError("a monoid is required")
        return FgMonoid(tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)))
    try:
        return FgMonoid.from_doc(doc)
    except ValueError as exc:
        raise SchemaError(f"monoid: {exc}") from None


def build_cone(doc: dict) -> RationalCone:
    try:
        return RationalCone.from_doc(doc)
    except ValueError as exc:
        raise SchemaError(f"cone: {exc}") from None


def build_system(S: FgMonoid, doc: dict, support=None) -> ca.MobileSystem:
    if doc["kind"] == "floor-linear":
        try:
            m = ca.floor_linear_system(S, doc["expressions"])
        except ExpressionError as exc:
            raise ParseError(f"system expression: {exc}") from None
        if support:
            extra = set(support) - set(doc["expressions"])
            if extra:
                m.declared_support = tuple(sorted(set(m.declared_support) | extra))
        return m
    table = {tuple(v["s"]): v["divisor"] for v in doc["values"]}
    pts = set(support or ())
    for v in doc["values"]:
        pts |= set(v["divisor"])
    return ca.table_system(S, table, sorted(pts), doc["degree_bound"])


def build_datum(doc: dict | None) -> ca.SaturationDatum:
    try:
        return ca.SaturationDatum({k: q_from_doc(v) for k, v in (doc or {}).items()})
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


# ---------------------------------------------------------------------------
# reports


@dataclass
class RunOptions:
    seed: int | None = None
    jobs: int = 1
    degree_bound: int | None = None
    precision: Fraction = Fraction(1, 10 ** 12)
    timings: bool = False
    plot: str | None = None


@dataclass
class Report:
    kind: str
    scenario: dict
    parameters: dict
    verdicts: dict
    result: dict
    exit_code: int = EXIT_PASS
    timings: dict = field(default_factory=dict)

    def to_doc(self, with_timings: bool = False) -> dict:
        doc = {
            "schema": REPORT_SCHEMA,
            "kind": self.kind,
            "scenario": self.scenario,
            "parameters": self.parameters,
            "verdicts": self.verdicts,
            "result": self.result,
            "exit_code": self.exit_code,
        }
        if with_timings:
            doc["timings"] = self.timings
        return doc

    def dumps(self, with_timings: bool = False) -> str:
        return json.dumps(self.to_doc(with_timings), indent=2, sort_keys=True) + "\n"


def exit_code_for(verdicts: dict) -> int:
    values = list(verdicts.values())
    if any(v == "fail" for v in values):
        return EXIT_VIOLATION
    if any(v == "inconclusive" for v in values):
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def _bound(doc: dict, name: str, default: int, opts: RunOptions | None = None, override: bool = False) -> int:
    if override and opts is not None and opts.degree_bound is not None:
        return opts.degree_bound
    return int(doc.get("bounds", {}).get(name, default))


def _seed(doc: dict, opts: RunOptions) -> int:
    if opts.seed is not None:
        return opts.seed
    return int(doc.get("seed", 0))


# ---------------------------------------------------------------------------
# runners


def run_hilbert(doc, opts):
    S = build_monoid(doc["monoid"])
    C = build_cone(doc["cone"])
    cb = _bound(doc, "coordinate", 64)
    box = hilbert_enumeration_bound(S, C)
    hb = hilbert_basis_intersection(S, C, coordinate_bound=cb)
    result = {"hilbert_basis": [list(g) for g in hb.generators], "enumeration_box": list(box)}
    if "points" in doc:
        result["membership"] = []
        for p in doc["points"]:
            inside = C.contains(p) and monoid_membership(S, p)[0]
            ok, coeffs = monoid_membership(hb, p) if inside else (False, None)
            result["membership"].append({"point": p, "in_intersection": inside,
                                         "coefficients": list(coeffs) if ok else None})
    return {"coordinate_bound": cb}, {"hilbert": "pass"}, result


def run_saturate(doc, opts):
    S = build_monoid(doc["monoid"])
    m = build_system(S, doc["system"], doc.get("support"))
    F = build_datum(doc.get("saturation_f"))
    deg = _bound(doc, "degree", 30, opts, override=True)
    sb = _bound(doc, "s", 50)
    mn = _bound(doc, "mu_nu", 12)
    certs = [ca.validate_system(m, deg, F=F), ca.check_saturation(m, F, sb, mn)]
    if certs[1].passed:
        certs.append(ca.dichotomy_check(m, F, sb))
        certs.append(ca.index_bound_check(m, F, sb))
    bcs = ca.compute_b(F, m.declared_support)
    params = {"degree_bound": deg, "s_bound": sb, "mu_nu_bound": mn}
    result = {
        "b": {P: q_to_doc(bc.b) for P, bc in bcs.items()},
        "trivial": {P: bc.trivial for P, bc in bcs.items()},
        "certificates": [c.to_doc() for c in certs],
    }
    return params, {c.check: c.verdict.value for c in certs}, result


def _one_point(m: ca.MobileSystem, doc: dict) -> str:
    P = doc.get("point") or m.declared_support[0]
    if P not in m.declared_support:
        raise SchemaError(f"point {P!r} is not in the system's support")
    return P


def _straightened(m, P, F: ca.SaturationDatum | None, cap: int):
    if F is not None and P in dict(F.f):
        bc = ca.b_constant(F.at(P))
        return StraightenedFunction(m.component(P), index_cap=bc.index_bound,
                                    confirm=ca.index_confirmation_bound(bc))
    return StraightenedFunction(m.component(P), index_cap=cap)


def run_straighten(doc, opts):
    S = build_monoid(doc["monoid"])
    m = build_system(S, doc["system"])
    P = _one_point(m, doc)
    cap = _bound(doc, "index_cap", 64)
    Fs = StraightenedFunction(m.component(P), index_cap=cap, confirm=_bound(doc, "confirm", 20))
    values = []
    for p in doc["points"]:
        s = vec_from_doc(p)
        values.append({"s": vec_to_doc(s), "value": q_to_doc(Fs(s))})
    result = {"point": P, "values": values,
              "indices": [{"s": list(k), "index": v} for k, v in sorted(Fs.index_table.items())]}
    verdicts = {"straighten": "pass"}
    if "lipschitz" in doc:
        lip = lipschitz_estimate(Fs, vec_from_doc(doc["lipschitz"]["center"]), q_from_doc(doc["lipschitz"]["radius"]))
        result["lipschitz"] = {"L": q_to_doc(lip.L), "M": q_to_doc(lip.M), "pairs": lip.pairs_checked,
                               "max_ratio": q_to_doc(lip.max_ratio)}
        verdicts["lipschitz"] = "pass" if lip.ok else "fail"
    return {"index_cap": cap}, verdicts, result


def _pl_result_doc(res) -> dict:
    if isinstance(res, PLDecomposition):
        return {"type": "decomposition", **res.to_doc()}
    return {"type": "evidence", "distinct_slopes": res.distinct_slopes(), **res.to_doc()}


def run_plcone(doc, opts):
    S = build_monoid(doc["monoid"])
    m = build_system(S, doc["system"])
    C = build_cone(doc["cone"])
    P = _one_point(m, doc)
    F = build_datum(doc["saturation_f"]) if "saturation_f" in doc else None
    res_bits = _bound(doc, "ray_resolution", 12)
    Fs = _straightened(m, P, F, _bound(doc, "index_cap", 64))
    try:
        res = pl_detect(Fs, C, ray_resolution=res_bits)
    except PLInconclusive as exc:
        return {"ray_resolution": res_bits}, {"pl": "inconclusive"}, {"point": P, "reason": str(exc)}
    verdict = "pass" if isinstance(res, PLDecomposition) else "inconclusive"
    if opts.plot and isinstance(res, PLDecomposition):
        from .plots import plot_decomposition

        plot_decomposition(res, opts.plot)
    return {"ray_resolution": res_bits}, {"pl": verdict}, {"point": P, **_pl_result_doc(res)}


def run_fingen(doc, opts):
    S = build_monoid(doc["monoid"])
    m = build_system(S, doc["system"], doc.get("support"))
    C = build_cone(doc["cone"])
    F = build_datum(doc["saturation_f"])
    od = _bound(doc, "oracle_degree", 30, opts, override=True)
    sb = _bound(doc, "s", 30)
    mn = _bound(doc, "mu_nu", 8)
    sat = ca.check_saturation(m, F, sb, mn)
    val = ca.validate_system(m, min(sb, 30), F=F)
    params = {"oracle_degree": od, "s_bound": sb, "mu_nu_bound": mn,
              "ray_resolution": _bound(doc, "ray_resolution", 12)}
    verdicts = {"saturation": sat.verdict.value, "validate": val.verdict.value}
    result = {"saturation": sat.to_doc(), "validate": val.to_doc()}
    if sat.passed and val.verdict is not ca.Verdict.FAIL:
        pr = ca.finite_generation_pipeline(m, C, F, oracle_degree=od, ray_resolution=params["ray_resolution"])
        verdicts["pipeline"] = pr.certificate.verdict.value
        result["pipeline"] = pr.to_doc()
        if opts.plot and pr.decompositions:
            from .plots import plot_decomposition

            plot_decomposition(next(iter(pr.decompositions.values())), opts.plot)
    return params, verdicts, result


def run_diophantine(doc, opts):
    x = dio.TargetPoint.parse(doc["x"])
    q_min = int(doc.get("q_min", 1))
    q_max = int(doc.get("q_max", 10 ** 6))
    steps = int(doc.get("steps", 10 ** 5))
    d_max = float(doc.get("d_max", 0.05))
    a = dio.find_approximant(x, q_max, q_min=q_min, precision=opts.precision)
    params = {"q_min": q_min, "q_max": q_max, "steps": steps, "d_max": d_max,
              "precision": q_to_doc(opts.precision)}
    result = {"x": x.descriptors(), "approximant": a.to_doc()}
    try:
        U = dio.build_u_system(x, a)
        W = dio.walk(U, x, steps)
    except (dio.AmbiguousStep, dio.DegenerateCoordinate) as exc:
        result["error"] = str(exc)
        return params, {"approximant": "pass", "walk": "inconclusive"}, result
    rep = W.report
    result["walk"] = W.to_doc()
    verdicts = {
        "approximant": "pass",
        "relation": "pass" if not any(U.relation_residual()) else "fail",
        "distance": "pass" if rep.d_final < d_max else "fail",
        "block_maxima": "pass" if rep.block_maxima_decreasing else "fail",
        "hyperplanes": "pass" if not rep.hyperplane_violations else "fail",
        "tally": "pass" if rep.tally_ok else "fail",
    }
    if opts.plot:
        from .plots import plot_walk

        plot_walk(rep, opts.plot)
    return params, verdicts, result


def run_counterexample(doc, opts):
    S = build_monoid(doc.get("monoid"), rank=2)
    m = build_system(S, doc["system"])
    F = build_datum(doc["saturation_f"])
    sb = _bound(doc, "s", 30)
    mn = _bound(doc, "mu_nu", 8)
    sup = _bound(doc, "superadditivity", 12)
    br = ca.boundary_counterexample(m, F, s_bound=sb, mu_nu_bound=mn, superadditivity_bound=sup)
    params = {"s_bound": sb, "mu_nu_bound": mn, "superadditivity_bound": sup}
    return params, {"counterexample": br.certificate.verdict.value}, {
        "jump_ratio": q_to_doc(br.jump_ratio), "certificate": br.certificate.to_doc()}


def run_example33(doc, opts):
    seed = _seed(doc, opts)
    res_bits = int(doc.get("resolution", 12))
    npairs = int(doc.get("pairs", 1000))
    min_slopes = int(doc.get("min_slopes", 10))
    E = build_example_3_3()
    pairs = sample_cross_cone_pairs(E, random.Random(seed), npairs)
    bad = [(x, y) for x, y in pairs if E(x) + E(y) > E(tuple(a + b for a, b in zip(x, y)))]
    C = RationalCone(((1, 1), (-1, 2)))
    try:
        res = pl_detect(E, C, ray_resolution=res_bits, min_evidence=min_slopes)
        pl = _pl_result_doc(res)
        slopes = res.distinct_slopes() if isinstance(res, NonPLEvidence) else len(res.functionals())
    except PLInconclusive as exc:
        pl, slopes = {"type": "inconclusive", "reason": str(exc)}, 0
    values = {f"f(x_{n})": q_to_doc(E.fx(n)) for n in range(2, 7)}
    values.update({f"eps_{n}": q_to_doc(E.eps(n)) for n in range(2, 7)})
    result = {
        "values": values,
        "limit": q_to_doc(E.limit),
        "superadditivity": {"pairs": len(pairs), "violations": [[vec_to_doc(x), vec_to_doc(y)] for x, y in bad[:5]]},
        "pl_detect": pl,
        "cone": C.to_doc(),
    }
    verdicts = {
        "values": "pass" if (E.fx(2), E.fx(3)) == (3, Fraction(47, 16)) else "fail",
        "superadditivity": "fail" if bad else "pass",
        "non_pl_evidence": "pass" if slopes >= min_slopes and pl["type"] == "evidence" else "fail",
    }
    return {"seed": seed, "resolution": res_bits, "pairs": npairs, "min_slopes": min_slopes}, verdicts, result


def _suite_saturation(seed: int, max_den: int) -> dict:
    inst = ca.random_floor_linear_system(seed, max_den=max_den)
    m, F = inst.system, inst.F
    sat = ca.check_saturation(m, F, 50, 12)
    out = {"seed": seed, "expressions": inst.expressions, "saturation": sat.verdict.value}
    if sat.passed:
        out["dichotomy"] = ca.dichotomy_check(m, F, 50).verdict.value
        out["index_bound"] = ca.index_bound_check(m, F, 50).verdict.value
    return out


def _suite_pipeline(seed: int, max_den: int) -> dict:
    inst = ca.random_floor_linear_system(seed, max_den=max_den)
    rank = inst.system.domain.ambient_dim
    C = ca.random_interior_cone(random.Random(seed), rank) if rank > 1 else RationalCone(((1,),))
    pr = ca.finite_generation_pipeline(inst.system, C, inst.F, oracle_degree=30)
    return {"seed": seed, "expressions": inst.expressions, "cone": C.to_doc(), "kappa": pr.kappa,
            "pipeline": pr.certificate.verdict.value,
            "generators": [list(s) for s in pr.oracle.points()] if pr.oracle else None}


def _fan_out(fn, seeds, max_den, jobs):
    if jobs <= 1:
        return [fn(s, max_den) for s in seeds]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, seeds, [max_den] * len(seeds)))


def run_suite(doc, opts):
    seed = _seed(doc, opts)
    n_sat = int(doc.get("saturation_instances", 100))
    n_pipe = int(doc.get("pipeline_instances", 30))
    max_den = int(doc.get("max_den", 6))
    sat_seeds = [seed * 100_000 + i for i in range(n_sat)]
    pipe_seeds = [seed * 100_000 + 50_000 + i for i in range(n_pipe)]
    sat = _fan_out(_suite_saturation, sat_seeds, max_den, opts.jobs)
    pipe = _fan_out(_suite_pipeline, pipe_seeds, max_den, opts.jobs)

    def agg(rows, keys):
        worst = "pass"
        for r in rows:
            for k in keys:
                v = r.get(k, "pass")
                if v == "fail" or (v == "inconclusive" and worst == "pass"):
                    worst = v
        return worst

    verdicts = {"saturation_chain": agg(sat, ("saturation", "dichotomy", "index_bound")),
                "pipeline": agg(pipe, ("pipeline",))}
    params = {"seed": seed, "saturation_instances": n_sat, "pipeline_instances": n_pipe, "max_den": max_den}
    return params, verdicts, {"saturation": sat, "pipeline": pipe}


RUNNERS = {
    "hilbert": run_hilbert,
    "saturate": run_saturate,
    "straighten": run_straighten,
    "plcone": run_plcone,
    "fingen": run_fingen,
    "diophantine": run_diophantine,
    "counterexample": run_counterexample,
    "example33": run_example33,
    "suite": run_suite,
}


def run_document(doc: dict, kind: str | None = None, opts: RunOptions | None = None) -> Report:
    """Validate and run one scenario. Errors surface as ScenarioError subclasses."""
    opts = opts or RunOptions()
    kind = validate_document(doc, kind)
    t0 = time.perf_counter()
    try:
        params, verdicts, result = RUNNERS[kind](doc, opts)
    except ScenarioError:
        raise
    except (ValueError, ArithmeticError, RuntimeError, KeyError) as exc:
        raise ScenarioError(f"{kind}: {type(exc).__name__}: {exc}") from exc
    elapsed = time.perf_counter() - t0
    report = Report(kind, doc, params, verdicts, result, exit_code_for(verdicts), {"total_seconds": elapsed})
    return report
