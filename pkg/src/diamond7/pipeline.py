"""End-to-end verification run and its JSON report."""

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from ._version import __version__
from .crossval import cross_validate_successor, k_alpha, l1_representation
from .errors import Diamond7Error
from .eta import build_ladder, catalog, d_k, lambda_index
from .htable import (HTable, add_cell, direct_cell, fundamental_recurrence_residual,
                     principal_part_check, standard_tables, verify_h_congruences)
from .ideal import (DEFAULT_IDEAL, is_zero_ideal, rl_anomaly_check, stability_check,
                    table_membership_certificates, verify_psi)
from .localized import _frac_str, membership_report, s_vector
from .modeq import (load_modular_equation_data, verify_modeq_x, verify_modeq_z,
                    verify_recurrence_data, verify_substitution)
from .relations import (expand_ranges, verify_phi_superadditivity,
                        verify_pi_hat_bound, verify_profile_inequalities,
                        verify_shift_floor_inequality, verify_stability_samples)

__all__ = ["VerificationConfig", "Report", "STAGES", "check_congruence",
           "run_full_verification", "load_expected", "report_schema", "validate_report",
           "EXPECTED_SHA256"]

EXPECTED_SHA256 = "d03e96c94df78c129ab6112cd5476317762efeb7119578c10307d547349f1876"

STAGES = (
    "named-objects",
    "modular-equations",
    "l1-representation",
    "h-tables",
    "h-congruences",
    "profile-inequalities",
    "congruence-ideal",
    "series-cross-validation",
    "ladder-divisibility",
)


@dataclass
class VerificationConfig:
    order: int = 1500            # brute-force truncation N
    alpha_max: int = 4           # ladder depth for k = 2
    alpha_max_k3: int = 3        # ladder depth for k = 3
    identity_bound: int = 2000   # modular-equation expansion depth
    guard: int = 25
    h_m_max: int = 14
    h_n_max: int = 14
    inequality_bound: int = 60
    trials: int = 10
    seed: int = 0
    ladder_order: int = 20       # coefficients of each L_alpha checked for divisibility
    data_dir: str = None

    def __post_init__(self):
        for name in ("order", "alpha_max", "alpha_max_k3", "identity_bound", "guard",
                     "h_m_max", "h_n_max", "inequality_bound", "trials", "ladder_order"):
            if getattr(self, name) <= 0:
                raise ValueError("%s must be positive" % name)
        if self.h_n_max < 8:
            raise ValueError("h_n_max must reach n + 7 for n = 1")
        if self.inequality_bound < 30:
            raise ValueError("inequality_bound must be at least 30")


@dataclass
class Report:
    config: dict
    stages: list = field(default_factory=list)
    data_checksums: dict = field(default_factory=dict)
    tool: str = "diamond7"
    version: str = __version__

    @property
    def passed(self):
        return all(s["status"] == "PASS" for s in self.stages if s["status"] != "SKIPPED") \
            and any(s["status"] == "PASS" for s in self.stages)

    def to_json(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def dumps(self):
        return json.dumps(self.to_json(), indent=1, sort_keys=True, default=_jsonable)


def _jsonable(v):
    if isinstance(v, (set, frozenset, tuple)):
        return sorted(v) if isinstance(v, (set, frozenset)) else list(v)
    return str(v)


def _data_file(name, data_dir=None):
    if data_dir is not None:
        p = Path(data_dir) / name
        if p.exists():
            return p
    return Path(str(resources.files("diamond7") / "data" / name))


def load_expected(data_dir=None):
    raw = _data_file("expected.json", data_dir).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != EXPECTED_SHA256:
        from .errors import ChecksumMismatch
        raise ChecksumMismatch("expected.json checksum %s does not match" % digest)
    return json.loads(raw)


def report_schema():
    return json.loads(_data_file("report_schema.json").read_text())


def validate_report(obj):
    import jsonschema
    jsonschema.validate(obj, report_schema())
    for st in obj["stages"]:
        if st["status"] == "FAIL" and not st.get("witness"):
            raise jsonschema.ValidationError("FAIL stage %s has no witness" % st["name"])
    return True


# ---------------------------------------------------------------------------
# brute-force congruences

def check_congruence(k=2, alpha_max=4, N=1500):
    """d_k(n) == 0 mod 7^floor(alpha/2) on the progression
    (24/(k+1)) n == 1 mod 7^alpha, for every n below the working order.

    The working order is raised to lambda + 1 when the first progression
    term lies beyond N, so that each alpha tests at least one n."""
    if alpha_max < 1:
        raise ValueError("alpha_max must be positive")
    lams = {a: lambda_index(a, k) for a in range(1, alpha_max + 1)}
    order = max(N, max(lams.values()) + 1)
    d = d_k(k, order)
    rows = []
    for a in range(1, alpha_max + 1):
        mod = 7 ** (a // 2)
        ns = range(lams[a], order, 7 ** a)
        bad = [n for n in ns if d[n] % mod]
        rows.append({"alpha": a, "modulus": mod, "unit": 24 // (k + 1), "first": lams[a],
                     "checked": len(ns), "failures": bad[:10], "passed": not bad})
    return {"k": k, "alpha_max": alpha_max, "requested_order": N, "order": order,
            "progressions": rows, "passed": all(r["passed"] for r in rows)}


# ---------------------------------------------------------------------------
# stages

def _stage_named(cfg, ctx):
    """Integrality, valuations and eta normalisation of the named objects."""
    cat = catalog(200)
    bad = []
    for key in ("z", "y0", "A", "m"):
        if not cat[key]["is_eta_quotient"]:
            bad.append(key)
    for key in ("z", "y0"):
        if cat[key]["coefficients"][0] != "1":
            bad.append(key)
    for key in ("x", "y", "rL"):
        if cat[key]["valuation"] is None or cat[key]["valuation"] < 1:
            bad.append(key)
    det = {k: {kk: v[kk] for kk in ("eta_order", "valuation") if kk in v} for k, v in cat.items()}
    return not bad, det, {"objects": bad} if bad else None


def _stage_modeq(cfg, ctx):
    data = load_modular_equation_data(cfg.data_dir)
    verify_modeq_z(cfg.identity_bound, data)
    verify_modeq_x(cfg.identity_bound, data)
    verify_substitution(data)
    rec = verify_recurrence_data(data)
    ctx["modeq"] = data
    ctx["recurrence_data"] = rec
    return True, {"bound": cfg.identity_bound, "sha256": data.sha256,
                  "w_hat_max_degree": rec["w_hat_max_degree"], "c7_mod_49": rec["c7_mod_49"],
                  "w_hat": rec["w_hat"]}, None


def _stage_l1(cfg, ctx):
    exp = ctx["expected"]
    e = l1_representation()
    got = {"%d,%d" % k: _frac_str(v) for k, v in e.coeffs.items()}
    want = exp["L1"]["coefficients"]
    diff = sorted(k for k in set(got) | set(want) if got.get(k) != want.get(k))
    sv = list(s_vector(e))
    member, _ = membership_report(e, 1)
    # dot product on the least residues mod 49, as an integer
    p1 = sum(a * b for a, b in zip(DEFAULT_IDEAL.generators[0].coeffs, sv))
    ok = (not diff and sv == exp["s_vector_L1"] and member and is_zero_ideal(sv)
          and p1 == exp["p1_at_L1"]["value"])
    ctx["s_vector_L1"] = sv
    det = {"nu": e.nu, "terms": len(got), "mismatched_terms": diff, "s_vector": sv,
           "member_V1": member, "p1_integer_value": p1, "I1_zero": is_zero_ideal(sv)}
    return ok, det, None if ok else {"mismatched_terms": diff, "s_vector": sv}


DEEP_CELLS = {1: ((0, 15, 15), (1, 20, 17)), 0: ((0, 16, 19),)}
PRINCIPAL_PART_KS = (-6, -1, 0, 7)


def _stage_h_tables(cfg, ctx):
    h1, h0 = standard_tables(cfg.h_m_max, cfg.h_n_max)
    ctx["h1"], ctx["h0"] = h1, h0
    rec = {"%d,%d,%d" % (p, b, n): fundamental_recurrence_residual(p, b, n, ctx.get("modeq"))
           for p in (0, 1) for b in (0, 1) for n in (-2, 3)}
    # one cell recomputed straight from q-series
    raw_ok = _direct_matches(h1, direct_cell(1, 0, 2, 3))
    # cells beyond the grid: integrality is asserted inside add_cell
    deep = {}
    for parity, cells in DEEP_CELLS.items():
        t = HTable(parity)
        for c in cells:
            add_cell(t, *c)
            deep["%d:%d,%d,%d" % ((parity,) + c)] = {"max_r": t.support[c],
                                                     "nu_exact": t.nu_exact[c]}
    pp = [principal_part_check(p, b, k) for p in (0, 1) for b in (0, 1) for k in PRINCIPAL_PART_KS]
    nu_exact = all(h1.nu_exact.values()) and all(h0.nu_exact.values())
    ok = all(rec.values()) and raw_ok and all(c["passed"] for c in pp)
    det = {"cells": {"parity1": len(h1.support), "parity0": len(h0.support)},
           "max_r": {"parity1": max(h1.support.values()), "parity0": max(h0.support.values())},
           "nu_exact": nu_exact, "recurrence_checks": rec, "direct_cell_1_0_2_3": raw_ok,
           "deep_cells": deep,
           "principal_parts": [{k: c[k] for k in ("parity", "beta", "k", "compared", "passed")}
                               for c in pp]}
    wit = None
    if not ok:
        wit = {"recurrence": [k for k, v in rec.items() if not v], "direct_cell": raw_ok,
               "principal_parts": [c for c in pp if not c["passed"]]}
    return ok, det, wit


def _direct_matches(h1, direct):
    from fractions import Fraction
    from .profiles import pi
    for (g, r), v in direct.items():
        want = Fraction(h1.h(0, g, 2, 3, r)) * Fraction(7) ** pi(1, 0, g, 2, r)
        if Fraction(v) != want:
            return False
    return True


def _stage_h_congruences(cfg, ctx):
    out = {}
    wit = None
    for name in ("h1", "h0"):
        rep = verify_h_congruences(ctx[name], raise_on_failure=False)
        out[name] = {k: rep[k] for k in ("checked_mod49", "checked_mod7", "passed")}
        if rep["failures"] and wit is None:
            wit = rep["failures"][0]
    rec = ctx.get("recurrence_data") or verify_recurrence_data(ctx.get("modeq"))
    out["v_hat_sums"] = rec["passed"]
    out["c7_mod_49"] = rec["c7_mod_49"]
    ok = out["h1"]["passed"] and out["h0"]["passed"] and rec["c7_mod_49"] == 2
    return ok, out, wit


def _stage_inequalities(cfg, ctx):
    B = cfg.inequality_bound
    r01, _ = verify_profile_inequalities("V0->V1", B, strict=False)
    r10, fails = verify_profile_inequalities("V1->V0", B, strict=False)
    floors = {"phi": verify_phi_superadditivity(300), "shift": verify_shift_floor_inequality(),
              "pi_hat": verify_pi_hat_bound(B)}
    samples = {p: verify_stability_samples(p, cfg.trials, cfg.seed) for p in (0, 1)}
    ref = {k: expand_ranges(v) for k, v in _ranges(ctx["expected"]).items()}
    det = {"V0->V1": {"failures": r01["failures"], "growth": r01["growth"]["passed"]},
           "V1->V0": {"failures": r10["failures"], "growth": r10["growth"]["passed"],
                      "not_in_reference_lists": r10["unexpected"],
                      "reference_cells_with_nonnegative_slack": r10["missing"]},
           "floors": {k: v["passed"] for k, v in floors.items()},
           "stability_samples": {str(p): {"passed": s["passed"], "trials": s["trials"]}
                                 for p, s in samples.items()},
           "growth_argument": r01["growth"]["argument"]}
    # every literal failure lies in the reference ranges or in the (1,1), r = 0 column
    outside = {k: sorted(v - ref.get(k, set()) - {(m, 0) for m in range(2)})
               for k, v in fails.items() if k == (1, 1)}
    outside.update({k: sorted(v - ref.get(k, set())) for k, v in fails.items() if k != (1, 1)})
    ok = (r01["passed"] and r10["growth"]["passed"] and not any(outside.values())
          and all(v["passed"] for v in floors.values())
          and all(s["passed"] for s in samples.values()))
    ctx["deviants"] = fails
    wit = None
    if not ok:
        wit = {"outside": {"%d%d" % k: v for k, v in outside.items() if v},
               "V0->V1": r01["unexpected"]}
    return ok, det, wit


def _ranges(exp):
    return {(int(k[0]), int(k[1])): [tuple(map(tuple, blk)) for blk in v]
            for k, v in exp["deviant_ranges"].items()}


def _stage_ideal(cfg, ctx):
    exp = ctx["expected"]
    h1, h0 = ctx["h1"], ctx["h0"]
    tables = {tuple(map(int, k.split(","))): tuple(v) for k, v in exp["relation_tables"].items()}
    tc = table_membership_certificates(h1, 3, tables)
    st = stability_check(h1, h0, 3, 21)
    img_ok = all(st["images"].get(k) == v for k, v in exp["p_images"].items())
    st7 = stability_check(h1, h0, 3, 7)
    rl = rl_anomaly_check(ctx.get("s_vector_L1"))
    ps = verify_psi(50)
    i1 = is_zero_ideal(ctx["s_vector_L1"])
    ok = (tc["passed"] and st["passed"] and st7["passed"] and img_ok and st["images"] == st7["images"]
          and rl["passed"] and ps["passed"] and i1)
    det = {"I1_zero": i1, "tables": {"passed": tc["passed"], "mismatches": tc["mismatches"],
                                     "certificates": tc["certificates"],
                                     "sample_certificate": tc["sample_certificate"]},
           "stability": {"images": st["images"], "certificates": st["certificates"],
                         "p1_is_46_p1_minus_p2": st["p1_is_46_p1_minus_p2"],
                         "filter": st["filter"], "n0_7_agrees": st["images"] == st7["images"]},
           "rl_anomaly": rl, "psi": ps}
    wit = None
    if not ok:
        wit = {"tables": tc["mismatches"], "p1_image": st["images"].get("p1"),
               "psi": ps.get("witness")}
    return ok, det, wit


def _stage_crossval(cfg, ctx):
    cv = cross_validate_successor(ctx["h1"], ctx["h0"])
    ks = k_alpha(min(4, cfg.alpha_max))
    exp = ctx["expected"]
    ok = cv["passed"] and cv["stage2"]["series"] == exp["s_vector_L3_over_7"] and \
        all(v["passed"] for v in ks.values())
    det = {"successor": cv, "k_alpha_mod_7": {str(a): v for a, v in ks.items()}}
    return ok, det, None if ok else {"predicted": cv["stage2"]["predicted"],
                                     "series": cv["stage2"]["series"]}


def _stage_ladder(cfg, ctx):
    out = {"brute_force": {}, "ladder": {}}
    ok = True
    for k, amax in ((2, cfg.alpha_max), (3, cfg.alpha_max_k3)):
        r = check_congruence(k, amax, cfg.order)
        out["brute_force"]["k=%d" % k] = r
        ok = ok and r["passed"]
        lad = build_ladder(amax, cfg.ladder_order, k=k, modulus=7 ** (amax // 2 + 1))
        div = {}
        for st in lad:
            mod = 7 ** (st.alpha // 2)
            div[str(st.alpha)] = all(v % mod == 0 for v in st.series.coeffs[:cfg.ladder_order])
        out["ladder"]["k=%d" % k] = div
        ok = ok and all(div.values())
    wit = None
    if not ok:
        wit = {k: [p for p in v["progressions"] if not p["passed"]]
               for k, v in out["brute_force"].items()}
    return ok, out, wit


_RUNNERS = dict(zip(STAGES, (_stage_named, _stage_modeq, _stage_l1, _stage_h_tables,
                             _stage_h_congruences, _stage_inequalities, _stage_ideal,
                             _stage_crossval, _stage_ladder)))

_NEEDS = {
    "h-congruences": ("h-tables", "modular-equations"),
    "congruence-ideal": ("h-tables", "l1-representation"),
    "series-cross-validation": ("h-tables", "l1-representation"),
}


def run_full_verification(config=None, stages=None):
    """Run the stages in order; a stage whose prerequisite failed is SKIPPED."""
    cfg = config or VerificationConfig()
    expected = load_expected(cfg.data_dir)
    data = load_modular_equation_data(cfg.data_dir)   # checksum before any stage
    report = Report(config=asdict(cfg),
                    data_checksums={"appendix.json": data.sha256, "expected.json": EXPECTED_SHA256})
    ctx = {"expected": expected, "modeq": data}
    status = {}
    for name in STAGES:
        if stages is not None and name not in stages:
            continue
        missing = [d for d in _NEEDS.get(name, ()) if status.get(d) not in (None, "PASS")]
        if missing:
            status[name] = "SKIPPED"
            report.stages.append({"name": name, "status": "SKIPPED", "seconds": 0.0,
                                  "details": {"blocked_by": missing}, "witness": None})
            continue
        t0 = time.perf_counter()
        try:
            ok, det, wit = _RUNNERS[name](cfg, ctx)
        except (Diamond7Error, KeyError, ValueError) as exc:
            ok, det, wit = False, {"error": type(exc).__name__}, {"message": str(exc),
                                                                  "witness": getattr(exc, "witness", None)}
        status[name] = "PASS" if ok else "FAIL"
        if not ok and not wit:
            wit = {"message": "stage %s failed" % name}
        report.stages.append({"name": name, "status": status[name],
                              "seconds": round(time.perf_counter() - t0, 3),
                              "details": det, "witness": wit})
    return report
