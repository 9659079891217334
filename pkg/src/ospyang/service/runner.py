"""Executes the verification suite described by a SuiteConfig."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .. import currents, evalrep, pairing, rmatrix, urmatrix
from ..sampling import rational_stream
from ..scalars import rho
from .models import CHECK_NAMES, CheckRecord, Report, SuiteConfig

ASSEMBLE_POINTS = (
    (Fraction(1, 10), Fraction(23, 10)),
    (Fraction(1, 7), Fraction(31, 9)),
    (Fraction(-2, 5), Fraction(17, 4)),
)
REP_POINTS = (Fraction(2), Fraction(1, 3), Fraction(-3, 5))
GAUSS_POINTS = (Fraction(1, 2), Fraction(2, 3))


def _rec(name, params, ok, residual=None, err=None, detail=None, t0=None):
    return CheckRecord(
        name=name,
        params=params,
        status="pass" if ok else "fail",
        residual_max=residual,
        max_abs_error=err,
        detail=detail or {},
        elapsed_ms=(time.perf_counter() - t0) * 1000 if t0 else 0.0,
    )


def run_ybe(cfg: SuiteConfig):
    out = []
    for u, v in rmatrix.ybe_samples(cfg.seed, cfg.samples):
        t0 = time.perf_counter()
        res = rmatrix.ybe_residual(u, v)
        out.append(
            _rec("ybe", {"u": str(u), "v": str(v)}, res == 0, residual=str(res), t0=t0)
        )
    return out


def run_unitarity(cfg: SuiteConfig):
    out = []
    for u in rmatrix.unitarity_samples(cfg.seed, 10):
        t0 = time.perf_counter()
        r = rmatrix.verify_unitarity(u)
        out.append(
            _rec("unitarity", {"u": str(u)}, r["pass"], residual=r["residual_max"],
                 err=r["float_error"], t0=t0)
        )
    for u in rmatrix.float_safe_samples(cfg.seed + 1, 5):
        t0 = time.perf_counter()
        r = rmatrix.verify_unitarity(u, tol=cfg.tolerance if cfg.tolerance < 1e-9 else 1e-9)
        ok = r["pass"] and r["float_error"] is not None
        out.append(
            _rec("unitarity-float", {"u": str(u)}, ok, residual=r["residual_max"],
                 err=r["float_error"], t0=t0)
        )
    return out


def run_crossing(cfg: SuiteConfig):
    out = []
    for u in rmatrix.crossing_samples(cfg.seed, 10):
        t0 = time.perf_counter()
        r = rmatrix.verify_crossing(u)
        ok = r["residual_max"] == "0" and r["c"] == "1"
        out.append(
            _rec("crossing", {"u": str(u)}, ok, residual=r["residual_max"],
                 detail={"c": r["c"]}, t0=t0)
        )
    for u in rmatrix.float_safe_samples(cfg.seed + 2, 5):
        t0 = time.perf_counter()
        r = rmatrix.verify_crossing(u, tol=1e-9)
        ok = r["pass"] and r["float_error"] is not None
        out.append(
            _rec("crossing-float", {"u": str(u)}, ok, residual=r["residual_max"],
                 err=r["float_error"],
                 detail={"literal_normalized_error": r["literal_normalized_error"]},
                 t0=t0)
        )
    return out


def run_serre(cfg: SuiteConfig):
    out = []
    for family in ("e", "f"):
        for k in (0, 1, 2):
            window = None
            if cfg.window_mode is not None and cfg.window_degree is not None:
                window = (cfg.window_mode, cfg.window_degree)
            for idx in (1, 2, 3):
                t0 = time.perf_counter()
                try:
                    ok = currents.serre_relation_check(family, k, idx, window)
                    detail = {}
                except currents.WindowError as exc:
                    ok = False
                    detail = {"error": str(exc)}
                out.append(
                    _rec("serre", {"family": family, "k": k, "relation": idx},
                         ok, detail=detail, t0=t0)
                )
    return out


def run_graded(cfg: SuiteConfig):
    t0 = time.perf_counter()
    ok = currents.graded_limit_check(4)
    return [_rec("graded", {"max_mode": 4}, ok, t0=t0)]


def run_pairing(cfg: SuiteConfig):
    out = []
    t0 = time.perf_counter()
    ok = True
    for b_plus in currents.pbw_enumerate("E+", 6, 6):
        partner = b_plus.partner()
        val = pairing.pair_pbw(partner, b_plus)
        if val == 0:
            ok = False
            break
    out.append(_rec("pairing-diagonal", {"max_len": 6}, ok, t0=t0))
    t0 = time.perf_counter()
    out.append(_rec("pairing-hh-series", {"order": 12}, pairing.hh_series_check(12), t0=t0))
    t0 = time.perf_counter()
    anti = all(
        pairing.pair_generators(("e", -k - 1), ("f", n))
        == -pairing.pair_generators(("f", -k - 1), ("e", n))
        for n in range(13)
        for k in range(13)
    )
    out.append(_rec("pairing-antisymmetry", {"order": 12}, anti, t0=t0))
    return out


def run_dual_basis(cfg: SuiteConfig):
    out = []
    if cfg.trunc_d < 1:
        raise ValueError("dual-basis requires trunc_d >= 1")
    for side in ("E", "F"):
        t0 = time.perf_counter()
        ok = urmatrix.dual_basis_consistency(cfg.trunc_d, side)
        out.append(_rec("dual-basis", {"side": side, "D": cfg.trunc_d}, ok, t0=t0))
    return out


def run_eval_factors(cfg: SuiteConfig):
    out = []
    z, w = ASSEMBLE_POINTS[0]
    for side in ("E", "F"):
        t0 = time.perf_counter()
        closed = urmatrix.factor_slot_closed_forms(side, z, w)
        partial = urmatrix.factor_slot_coefficients(side, z, w, cfg.mode_cutoff)
        bound = urmatrix.factor_tail_bound(z, w, cfg.mode_cutoff)
        worst = max(abs(closed[k] - partial[k]) for k in closed)
        out.append(
            _rec("eval-factors", {"side": side, "z": str(z), "w": str(w),
                                  "M": cfg.mode_cutoff},
                 worst <= bound,
                 detail={"tail_bound": str(bound), "worst_gap": str(worst)}, t0=t0)
        )
    return out


def run_eval_rh(cfg: SuiteConfig):
    z, w = ASSEMBLE_POINTS[0]
    t0 = time.perf_counter()
    v_full, _ = urmatrix.rh_slot_value(1, 1, z, w, cfg.product_cutoff)
    v_half, _ = urmatrix.rh_slot_value(1, 1, z, w, max(1, cfg.product_cutoff // 2))
    corner = rho(float(z - w))
    ok = abs(v_full - v_half) < 1e-10 and abs(v_full - corner) < 1e-9 * abs(corner)
    return [
        _rec("eval-rh", {"z": str(z), "w": str(w), "N": cfg.product_cutoff}, ok,
             err=abs(v_full - corner),
             detail={"half_vs_full": abs(v_full - v_half)}, t0=t0)
    ]


def run_assemble(cfg: SuiteConfig):
    out = []
    for z, w in ASSEMBLE_POINTS:
        t0 = time.perf_counter()
        rep = urmatrix.assemble_evaluated_r(
            z, w, cfg.mode_cutoff, cfg.product_cutoff, tol=cfg.tolerance
        )
        out.append(
            _rec("assemble", {"z": str(z), "w": str(w), "M": cfg.mode_cutoff,
                              "N": cfg.product_cutoff},
                 rep["pass"], err=rep["max_abs_error"],
                 detail={"slot_order": rep["slot_order"]}, t0=t0)
        )
    return out


def run_rep(cfg: SuiteConfig):
    out = []
    for z in REP_POINTS:
        t0 = time.perf_counter()
        r = evalrep.verify_rep_relations(evalrep.EvalPoint(z), 4)
        out.append(
            _rec("rep", {"z": str(z), "window": 4}, r["pass"],
                 detail={"instances": r["instances"], "failures": r["failures"][:5]},
                 t0=t0)
        )
    t0 = time.perf_counter()
    bad = evalrep.verify_rep_relations(
        evalrep.EvalPoint(Fraction(2), Fraction(3)), 2
    )
    out.append(
        _rec("rep-negative-control", {"z": "2", "zp": "3"}, not bad["pass"],
             detail={"failures": len(bad["failures"])}, t0=t0)
    )
    return out


def run_gauss(cfg: SuiteConfig):
    out = []
    for z in GAUSS_POINTS:
        t0 = time.perf_counter()
        samples = rational_stream(cfg.seed + 3, 10, avoid=lambda u: abs(u) > 9)
        g = evalrep.gauss_check(evalrep.EvalPoint(z), samples)
        n_pass = sum(1 for r in g["records"] if r["status"] == "pass")
        out.append(
            _rec("gauss", {"z": str(z), "samples": 10}, g["pass"],
                 detail={"passed_samples": n_pass}, t0=t0)
        )
    return out


_RUNNERS = {
    "ybe": run_ybe,
    "unitarity": run_unitarity,
    "crossing": run_crossing,
    "serre": run_serre,
    "graded": run_graded,
    "pairing": run_pairing,
    "dual-basis": run_dual_basis,
    "eval-factors": run_eval_factors,
    "eval-rh": run_eval_rh,
    "assemble": run_assemble,
    "rep": run_rep,
    "gauss": run_gauss,
}


def run_suite(cfg: SuiteConfig) -> Report:
    """Run the selected checks (possibly concurrently) and collect a report."""
    selected = [c for c in CHECK_NAMES if c in cfg.checks]
    records = []
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = {name: pool.submit(_RUNNERS[name], cfg) for name in selected}
            for name in selected:
                records.extend(futures[name].result())
    else:
        for name in selected:
            records.extend(_RUNNERS[name](cfg))
    order = {name: i for i, name in enumerate(CHECK_NAMES)}
    records.sort(key=lambda r: (order.get(r.name.split("-")[0], 99), r.name, str(r.params)))
    verdict = "pass" if all(r.status != "fail" for r in records) else "fail"
    return Report(config=cfg, records=records, verdict=verdict)


def write_dump(cfg: SuiteConfig, path: str):
    """Matrix and reduction-trace dump for auditing."""
    from ..currents import Element, normal_order_plus

    lines = []
    core = rmatrix.build_r_core(Fraction(2))
    lines.append("# R core at u = 2 (row-major, exact rationals)")
    lines.append(core.matrix.dumps())
    trace = []
    x = Element.word((("h", 2), ("e", 1), ("f", 0)))
    nf = normal_order_plus(x, trace=trace)
    lines.append("# normal ordering trace for h2*e1*f0")
    lines.extend(trace)
    lines.append(f"# normal form: {nf!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
