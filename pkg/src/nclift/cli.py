"""Command-line front end.

    nclift <subcommand> --input FILE [--output FILE] [--format table|json]
                        [--certificate FILE] [--seed N] [--jobs K]

Every subcommand reads a JSON problem file, runs the engine and prints a
report.  Exit status: 0 when all checks pass, 1 when a verification finds a
genuine failure, 2 for malformed input or unsupported requests.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .abgroup import (ExtensionSeq, GroupHom, coordinate_group, enumerate_group, extension_from_lattice, free,
                      pair)
from .cohomology import (
    DIV,
    CoeffModule,
    Cochain,
    cochain_from_json,
    cohomology_group,
    crossed_homs,
    ext_group,
    h2_structural,
)
from .exact import InputError, Phase, det, SizeError, Unsupported, format_rat, parse_rat
from .lifting import (
    LiftCandidate,
    apply_gauge,
    classify,
    delta_obstruction,
    freeness_check,
    gauge_group,
    heisenberg_structure,
    picard_data,
    qtorus_lift_solve,
    qtorus_lift_structure,
    restriction_check,
    toy_structure,
    torus3_structure,
    v_family_check,
)
from .twistalg import (
    CleftFactorSystem,
    MonomialAut,
    algebra_from_json,
    build_from_factor_system,
    check_cleft_factor_system,
    element_from_json,
    group_algebra,
    group_from_json,
    strong_grading_check,
)

SUBCOMMANDS = ("qtorus-lift", "heisenberg", "toy", "classify", "cohomology", "factor-check", "delta", "gauge",
               "examples")
OK, CHECK_FAILED, INPUT_ERROR = "ok", "check-failed", "input-error"
EXIT = {OK: 0, CHECK_FAILED: 1, INPUT_ERROR: 2}


@dataclass
class Command:
    name: str
    input: str | None = None
    output: str | None = None
    format: str = "table"
    certificate: str | None = None
    seed: int = 0
    jobs: int = 1
    verbose: bool = False


@dataclass
class RunResult:
    status: str
    report: dict
    certificate: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


# ---------------------------------------------------------------------------
# literal parsing


def _load(path):
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise InputError(f"{path}: problem file must hold a JSON object")
    return obj


def _matrix(obj, what):
    if isinstance(obj, dict):
        obj = obj.get("matrix")
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InputError(f"{what} must be a matrix (array of arrays)")
    try:
        return [[int(v) for v in r] for r in obj]
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what} has a non-integer entry") from exc


def _unit(obj, what="unit"):
    """["p/q", [exponent]] -> (Phase, exponent)."""
    if not isinstance(obj, list) or len(obj) != 2 or not isinstance(obj[1], list):
        raise InputError(f"{what} must be [phase, exponent], got {obj!r}")
    return (Phase(parse_rat(obj[0]) if isinstance(obj[0], str) else obj[0]), tuple(int(v) for v in obj[1]))


def _unit_json(u):
    return [str(Phase(u[0])), list(u[1])]


def extension_from_json(obj) -> ExtensionSeq:
    if not isinstance(obj, dict):
        raise InputError("extension must be an object")
    if "lattice" in obj:
        return extension_from_lattice(_matrix(obj["lattice"], "lattice"))
    try:
        Gs = group_from_json(obj["Gstar"])
        Gh = group_from_json(obj["Ghatstar"])
        Zs = group_from_json(obj["Zstar"])
        inc = GroupHom(Gs, Gh, _matrix(obj["inc"], "inc"))
        proj = GroupHom(Gh, Zs, _matrix(obj["proj"], "proj"))
    except KeyError as exc:
        raise InputError(f"extension is missing {exc}") from exc
    return ExtensionSeq(inc, proj)


def structure_from_json(obj):
    """(problem, structure) for {"kind": "toy" | "heisenberg" | "torus3" | "qtorus", ...}."""
    if not isinstance(obj, dict):
        raise InputError("structure must be an object")
    kind = obj.get("kind", "toy")
    if kind == "toy":
        base = algebra_from_json(obj["base"]) if "base" in obj else group_algebra(coordinate_group([]))
        if "extension" not in obj:
            raise InputError("toy structure needs an 'extension'")
        return toy_structure(base, extension_from_json(obj["extension"]))
    if kind == "heisenberg":
        return heisenberg_structure()
    if kind == "torus3":
        return torus3_structure(obj.get("theta", "1/3"))
    if kind == "qtorus":
        try:
            theta, M = obj["theta"], _matrix(obj["M"], "M")
        except KeyError as exc:
            raise InputError(f"qtorus structure is missing {exc}") from exc
        sols = qtorus_lift_solve(theta, M).solutions
        i = int(obj.get("solution", 0))
        if not 0 <= i < len(sols):
            raise InputError(f"solution index {i} out of range (0..{len(sols) - 1})")
        return qtorus_lift_structure(theta, M, sols[i])
    raise InputError(f"unknown structure kind {kind!r}")


def module_from_json(A, obj) -> CoeffModule:
    if not isinstance(obj, dict):
        raise InputError("module must be an object")
    if "mu" in obj:
        return CoeffModule.cyclic(A, int(obj["mu"]), obj.get("multipliers"))
    if obj.get("divisible"):
        return CoeffModule.divisible(A, obj.get("signs"))
    if "moduli" in obj:
        moduli = [DIV if m in ("Q/Z", -1) else int(m) for m in obj["moduli"]]
        action = obj.get("action")
        if action is not None:
            action = [[[parse_rat(v) if isinstance(v, str) else v for v in row] for row in mat] for mat in action]
        return CoeffModule(A, moduli, action)
    raise InputError("module needs 'mu', 'divisible' or 'moduli'")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_qtorus(obj, cmd):
    try:
        theta, M = obj["theta"], _matrix(obj["M"], "M")
    except KeyError as exc:
        raise InputError(f"qtorus_lift problem is missing {exc}") from exc
    sol = qtorus_lift_solve(theta, M)
    n = len(M)
    pairs = [(k, l) for k in range(n) for l in range(k + 1, n)]
    rows = [[format_rat(s[k][l]) for k, l in pairs] for s in sol.solutions]
    report = {
        "count": sol.count,
        "index": sol.index,
        "columns": [f"theta'_{k + 1}{l + 1}" for k, l in pairs],
        "rows": rows,
    }
    ok = sol.count == sol.index
    if obj.get("verify", True):
        bad = []
        for i, s in enumerate(sol.solutions):
            _, S = qtorus_lift_structure(theta, M, s)
            if not restriction_check(S):
                bad.append(i)
        report["restriction_failures"] = bad
        ok = ok and not bad
    return RunResult(OK if ok else CHECK_FAILED, report, {"solutions": sol.to_json(), "snf": sol.invariants})


def _heisenberg_report(variant="heisenberg", theta="1/3"):
    P, S = heisenberg_structure() if variant == "heisenberg" else torus3_structure(theta)
    A = S.algebra
    u, v, w = (A.gen(i) for i in range(3))
    fr = freeness_check(S)
    pd = picard_data(S)
    rel = (u * v == w * v * u) if variant == "heisenberg" else None
    checks = {
        "relation uv = wvu": rel,
        "restriction": restriction_check(S),
        "strong grading": strong_grading_check(S.grading),
        "grading multiplicative": fr.multiplicative,
        "component spans": fr.spans,
        "freeness": bool(fr),
        "frohlich trivial": all(d.is_identity() for d in pd.delta.values()),
        "picard trivial": pd.trivial,
    }
    checks = {k: v for k, v in checks.items() if v is not None}
    report = {"structure": S.name, "checks": checks}
    cert = {"freeness": fr.to_json(), "picard": pd.to_json()}
    if fr.witness:
        a, b = fr.witness
        _, c = A.unit_product(a, b)
        report["witness"] = (f"deg(u^{list(a)} u^{list(b)}) = {list(S.grading.degree(c).coords)}, "
                             f"expected {list((S.grading.degree(a) + S.grading.degree(b)).coords)}")
    return report, all(checks.values()), cert


def _cmd_heisenberg(obj, cmd):
    report, ok, cert = _heisenberg_report(obj.get("variant", "heisenberg"), obj.get("theta", "1/3"))
    return RunResult(OK if ok else CHECK_FAILED, report, cert)


def _cmd_toy(obj, cmd):
    P, S = structure_from_json({"kind": "toy", **{k: v for k, v in obj.items() if k in ("base", "extension")}})
    fr = freeness_check(S)
    checks = {"restriction": restriction_check(S), "freeness": bool(fr),
              "picard trivial": picard_data(S).trivial}
    report = {"Gstar": P.ext.Gstar.describe(), "Ghatstar": P.ext.Ghatstar.describe(),
              "Zstar": P.ext.Zstar.describe(), "checks": checks}
    cert = {"freeness": fr.to_json()}
    if obj.get("classify", True):
        r = classify(P, S, verify=P.ext.Zstar.is_finite and P.ext.Zstar.order <= 8)
        report["H2"] = r.describe()
        report["coefficients"] = r.units.describe()
        cert["classification"] = _classification_cert(r)
    return RunResult(OK if all(checks.values()) else CHECK_FAILED, report, cert)


def _classification_cert(r):
    out = r.to_json()
    reps = r.group.representatives
    if reps and all(c.is_table for c in reps):
        out["representatives"] = [c.to_json() for c in reps]
    return out


def _cmd_classify(obj, cmd):
    if "structure" not in obj:
        raise InputError("classify problem needs a 'structure'")
    P, S = structure_from_json(obj["structure"])
    r = classify(P, S, invariant_only=obj.get("invariant_only", True), verify=obj.get("verify", True))
    report = {"Zstar": S.Zstar.describe(), "coefficients": r.units.describe(),
              "action trivial": r.module.is_trivial_action(), "H2": r.describe(),
              "pairs checked": r.checked_pairs}
    if r.notes:
        report["notes"] = list(r.notes)
    return RunResult(OK, report, _classification_cert(r))


def _cmd_cohomology(obj, cmd):
    try:
        A = group_from_json(obj["group"])
        M = module_from_json(A, obj.get("module", {"divisible": True}))
        n = int(obj.get("degree", 2))
    except KeyError as exc:
        raise InputError(f"cohomology problem is missing {exc}") from exc
    if not A.is_finite:
        H = h2_structural(A, M) if n == 2 else None
        if H is None:
            raise Unsupported("infinite groups are handled in degree 2 with trivial action only")
    elif n == 1 and obj.get("cocycles"):
        H = crossed_homs(A, M)
    else:
        H = cohomology_group(A, M, n)
    report = {"group": A.describe(), "module": M.describe(), "degree": n, "result": H.describe()}
    if "cocycle" in obj:
        c = cochain_from_json(M, obj["cocycle"])
        report["class"] = list(H.class_of(c).coords)
    return RunResult(OK, report, H.to_json())


def _cmd_factor_check(obj, cmd):
    try:
        B = algebra_from_json(obj["base"])
        L = group_from_json(obj["Lambda"])
    except KeyError as exc:
        raise InputError(f"factor_check problem is missing {exc}") from exc
    if not L.is_finite:
        raise Unsupported("factor systems from files need a finite grading group")
    gam, om = {}, {}
    for entry in obj.get("gamma", []):
        s = L(list(entry["sigma"])).coords
        gam[s] = MonomialAut(B, images=[_unit(x, "gamma image") for x in entry["images"]], check=False)
    for entry in obj.get("omega", []):
        (s, p), val = entry
        om[(L(list(s)).coords, L(list(p)).coords)] = _unit(val, "omega value")
    fs = CleftFactorSystem(L, B, lambda s: gam.get(s.coords), lambda s, p: om.get((s.coords, p.coords),
                                                                                     B.one_unit()))
    rep = check_cleft_factor_system(fs)
    report = {"Lambda": L.describe(), "valid": bool(rep), "checked": rep.checked}
    if not rep:
        report["first failure"] = str(rep.witness)
    elif obj.get("build", True):
        C, grading = build_from_factor_system(fs, check=False)
        els = [tuple(e.coords) for e in enumerate_group(C.E)] if C.E.is_finite and C.E.order <= 16 else None
        triples = None
        if els is not None:
            triples = [(a, b, c) for a in els for b in els for c in els]
        else:
            gens = [C.generator_exp(i) for i in range(C.ngens)]
            triples = [(a, b, c) for a in gens for b in gens for c in gens]
        report["associative"] = C.check_associative(triples) is None
        report["strong"] = strong_grading_check(grading)
    ok = report["valid"] and report.get("associative", True) and report.get("strong", True)
    return RunResult(OK if ok else CHECK_FAILED, report, rep.to_json())


def _candidate_from_json(S, entries):
    fm = S.ext.finite_model()
    given = {}
    for e in entries:
        gh = tuple(fm.Ghat(list(e["ghat"])).coords)
        chi = tuple(S.Zstar(list(e["chi"])).coords)
        given[(gh, chi)] = _unit(e["unit"], "v value")
    # fill the remaining values by Z-equivariance
    v = dict(given)
    for gh in enumerate_group(fm.Ghat):
        for chi in enumerate_group(S.Zstar)[1:]:
            key = (gh.coords, chi.coords)
            if key in v:
                continue
            for z in enumerate_group(fm.Z):
                src = ((gh - fm.iota(z)).coords, chi.coords)
                if src in given:
                    p, ex = given[src]
                    v[key] = (p + pair(chi, z), ex)
                    break
            else:
                base = None
                for z in enumerate_group(fm.Z):
                    if (gh - fm.iota(z)).is_zero():
                        base = pair(chi, z)
                if base is not None:
                    v[key] = (base, S.problem.algebra.zero_exp())
                else:
                    raise InputError(f"no v value for ghat={list(gh.coords)}, chi={list(chi.coords)}")
    return LiftCandidate(S, v, fm)


def _cmd_delta(obj, cmd):
    if "structure" not in obj or "v" not in obj:
        raise InputError("delta problem needs 'structure' and 'v'")
    P, S = structure_from_json(obj["structure"])
    cand = _candidate_from_json(S, obj["v"])
    rep = delta_obstruction(cand)
    report = {"homomorphic candidate": v_family_check(cand), "delta zero": not rep.delta.values,
              "class trivial": rep.trivial}
    ok = True
    if rep.trivial:
        report["corrected lift homomorphic"] = v_family_check(rep.corrected)
        ok = report["corrected lift homomorphic"]
        report["corrected"] = [f"v[{list(k[0])}]({list(k[1])}) = {_unit_json(u)}"
                               for k, u in sorted(rep.corrected.v.items())]
    return RunResult(OK if ok else CHECK_FAILED, report, rep.to_json())


def _crossed_from_basis(um, values):
    """Crossed homomorphism determined by its values on the basis of Zstar."""
    M = um.module
    Z = M.group
    if len(values) != Z.rank:
        raise InputError(f"need one value per generator of Zstar ({Z.rank})")
    vals = [M.value_from_json(v) for v in values]

    def c(chi):
        x = M.zero()
        pos = Z.zero()
        for i, n in enumerate(chi.coords):
            e = Z.basis()[i]
            for _ in range(n):
                x = M.add(x, M.act(pos, vals[i]))
                pos = pos + e
            for _ in range(-n):
                pos = pos - e
                x = M.sub(x, M.act(pos, vals[i]))
        return x

    return Cochain(M, 1, func=c) if not Z.is_finite else Cochain.from_function(M, 1, c)


def _cmd_gauge(obj, cmd):
    if "structure" not in obj:
        raise InputError("gauge problem needs a 'structure'")
    P, S = structure_from_json(obj["structure"])
    Zg = gauge_group(S)
    report = {"coefficients": Zg.units.describe(), "crossed homomorphisms": Zg.describe()}
    ok = True
    if "c" in obj:
        um = Zg.units
        c = _crossed_from_basis(um, obj["c"])
        A = S.algebra
        images = []
        mult = True
        gens = [(Phase(0), A.generator_exp(i)) for i in range(A.ngens)]
        for i, g in enumerate(gens):
            images.append(f"{A.names[i]} -> {A.unit_element(apply_gauge(S, c, g, um, check=(i == 0)))!r}")
        for a in gens:
            for b in gens:
                lhs = apply_gauge(S, c, A.mul_units(a, b), um, check=False)
                rhs = A.mul_units(apply_gauge(S, c, a, um, check=False), apply_gauge(S, c, b, um, check=False))
                mult = mult and lhs == rhs
        report["images"] = images
        report["multiplicative on generators"] = mult
        ok = mult
        if "element" in obj:
            x = element_from_json(A, obj["element"])
            report["image of element"] = repr(apply_gauge(S, c, x, um, check=False))
    return RunResult(OK if ok else CHECK_FAILED, report, {"gauge_group": Zg.to_json()})


# ---------------------------------------------------------------------------
# bundled examples


def _ex(e):
    if e == "Z":
        return structure_from_json({"kind": "toy", "extension": {
            "Gstar": {"free_rank": 1}, "Ghatstar": {"free_rank": 2}, "Zstar": {"free_rank": 1},
            "inc": [[1], [0]], "proj": [[0, 1]]}})
    return structure_from_json({"kind": "toy", "extension": {
        "Gstar": {"free_rank": 1}, "Ghatstar": {"free_rank": 3}, "Zstar": {"free_rank": 2},
        "inc": [[1], [0], [0]], "proj": [[0, 1, 0], [0, 0, 1]]}})


def _item_toy_Z():
    P, S = _ex("Z")
    r = classify(P, S)
    return r.is_trivial(), f"H2 = {r.describe()}"


def _item_toy_Z2():
    P, S = _ex("Z2")
    r = classify(P, S)
    return r.describe() == "Q/Z", f"H2 = {r.describe()}"


def _item_qtorus():
    sol = qtorus_lift_solve([[0, "1/4"], ["-1/4", 0]], [[2, 0], [0, 2]])
    vals = [format_rat(s[0][1]) for s in sol.solutions]
    return vals == ["1/16", "5/16", "9/16", "13/16"], f"theta'_12 in {{{', '.join(vals)}}}"


def _item_ext():
    a = ext_group(free(2))
    b = h2_structural(free(2))
    c = cohomology_group(coordinate_group([2]), CoeffModule.divisible(coordinate_group([2])), 2)
    ok = a.is_trivial() and b.describe() == "Q/Z" and c.is_trivial()
    return ok, f"Ext(Z^2, Q/Z) = {a.describe()}, H2(Z^2, Q/Z) = {b.describe()}, H2(Z/2, Q/Z) = {c.describe()}"


def _item_heisenberg():
    report, ok, _ = _heisenberg_report()
    failed = [k for k, v in report["checks"].items() if not v]
    return ok, "all checks pass" if ok else "failed: " + ", ".join(failed) + "; " + report.get("witness", "")


def _item_battery(seed):
    rng = random.Random(seed)
    n_ok = 0
    for _ in range(5):
        n = rng.choice([2, 3])
        while True:
            M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            if det(M):
                break
        theta = [[Fraction(0)] * n for _ in range(n)]
        for k in range(n):
            for l in range(k + 1, n):
                q = rng.randint(1, 12)
                theta[k][l] = Fraction(rng.randrange(q), q)
                theta[l][k] = -theta[k][l]
        sol = qtorus_lift_solve(theta, M)
        n_ok += sol.count == sol.index
    return n_ok == 5, f"{n_ok}/5 random lattice lifts consistent (seed {seed})"


EXAMPLES = [
    ("toy, Zstar = Z: unique structure", _item_toy_Z),
    ("toy, Zstar = Z^2: H2 = Q/Z", _item_toy_Z2),
    ("quantum torus theta = 1/4, M = 2I", _item_qtorus),
    ("Ext and H2 of Z^2, H2(Z/2, Q/Z)", _item_ext),
    ("Heisenberg Z^3 structure", _item_heisenberg),
]


def _cmd_examples(obj, cmd):
    items = list(EXAMPLES) + [("random lattice lifts", lambda: _item_battery(cmd.seed))]

    def run_one(item):
        name, fn = item
        try:
            ok, detail = fn()
        except (InputError, Unsupported, SizeError) as exc:
            ok, detail = False, f"error: {exc}"
        return {"item": name, "pass": bool(ok), "detail": detail}

    if cmd.jobs > 1:
        with ThreadPoolExecutor(max_workers=cmd.jobs) as pool:
            rows = list(pool.map(run_one, items))
    else:
        rows = [run_one(it) for it in items]
    ok = all(r["pass"] for r in rows)
    return RunResult(OK if ok else CHECK_FAILED, {"items": rows, "passed": sum(r["pass"] for r in rows),
                                                  "total": len(rows)})


HANDLERS = {
    "qtorus-lift": _cmd_qtorus,
    "heisenberg": _cmd_heisenberg,
    "toy": _cmd_toy,
    "classify": _cmd_classify,
    "cohomology": _cmd_cohomology,
    "factor-check": _cmd_factor_check,
    "delta": _cmd_delta,
    "gauge": _cmd_gauge,
    "examples": _cmd_examples,
}

PROBLEM_NAMES = {"qtorus_lift": "qtorus-lift", "toy": "toy", "heisenberg": "heisenberg", "classify": "classify",
                 "delta": "delta", "factor_check": "factor-check", "cohomology": "cohomology", "gauge": "gauge"}


def run(cmd: Command) -> RunResult:
    if cmd.name not in HANDLERS:
        return RunResult(INPUT_ERROR, {"error": f"unknown subcommand {cmd.name!r}"})
    try:
        obj = _load(cmd.input)
        declared = obj.get("problem")
        if declared is not None and PROBLEM_NAMES.get(declared) != cmd.name:
            raise InputError(f"problem file declares {declared!r}, not usable with {cmd.name}")
        if cmd.input is None and cmd.name not in ("heisenberg", "examples"):
            raise InputError(f"{cmd.name} needs --input")
        res = HANDLERS[cmd.name](obj, cmd)
    except (InputError, Unsupported, SizeError) as exc:
        kind = type(exc).__name__
        return RunResult(INPUT_ERROR, {"error": f"{kind}: {exc}"})
    except (KeyError, TypeError, ValueError) as exc:
        return RunResult(INPUT_ERROR, {"error": f"malformed input: {exc!r}"})
    res.report = {"command": cmd.name, "status": res.status, **res.report}
    return res


# ---------------------------------------------------------------------------
# rendering


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def render(report: dict, fmt: str = "table") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    lines = []
    for key, val in report.items():
        if key == "rows" and "columns" in report:
            cols = ["#"] + list(report["columns"])
            table = [[str(i + 1)] + list(r) for i, r in enumerate(val)]
            widths = [max(len(c), *(len(r[j]) for r in table)) if table else len(c) for j, c in enumerate(cols)]
            lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for r in table:
                lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        elif key == "columns":
            continue
        elif key == "items":
            for r in val:
                lines.append(f"[{'PASS' if r['pass'] else 'FAIL'}] {r['item']}: {r['detail']}")
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            for k, v in val.items():
                lines.append(f"  {k}: {_fmt(v)}")
        elif isinstance(val, list) and not val:
            lines.append(f"{key}: none")
        elif isinstance(val, list):
            lines.append(f"{key}:")
            lines.extend(f"  {_fmt(v)}" for v in val)
        else:
            lines.append(f"{key}: {_fmt(val)}")
    return "\n".join(lines) + "\n"


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nclift", description="Lifts of graded monomial algebras along "
                                                           "central extensions.")
    p.add_argument("--version", action="version", version=f"nclift {__version__}")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--input", "-i")
    p.add_argument("--output", "-o")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--certificate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verbose", "-v", action="store_true")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    cmd = Command(args.subcommand, args.input, args.output, args.format, args.certificate, args.seed,
                  max(1, args.jobs), args.verbose)
    res = run(cmd)
    text = render(res.report, cmd.format)
    if res.status == INPUT_ERROR:
        print(f"nclift: {res.report['error']}", file=sys.stderr)
        if cmd.format != "json":
            return res.exit_code
    if cmd.output:
        with open(cmd.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cmd.certificate and res.status != INPUT_ERROR:
        with open(cmd.certificate, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(res.certificate, indent=2, sort_keys=True) + "\n")
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
