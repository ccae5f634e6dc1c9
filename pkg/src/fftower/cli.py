"""Command-line front end: verify / survey / admissible / gamma.

Exit codes: 0 = verified, 1 = a verification stage failed (certificate still
emitted with the failure), 2 = invalid input or budget refusal. Certificates
are single JSON documents; big integers are serialized as decimal strings and
re-runs with identical flags are byte-identical apart from the timings block.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import __version__
from .admissible import (corollary_checks, decompose_m, enumerate_candidates,
                         eq5_certificate, is_admissible, kummer_cyclic,
                         progression_residue, threshold_constant)
from .errors import BudgetError, InputError, NoGammaFound, VerificationError
from .gammasearch import find_gamma
from .rikuna import build_rikuna, structural_checks
from .tower import (build_tower, constant_field_check, genus_riemann_hurwitz,
                    inertness_check, level_checks, ramification_report_m1)
from .zeta import (MAX_ENUMERATION, LPolynomial, evaluation_budget,
                   required_evaluations, verdict_for_tower, weil_bound_ok)

DEFAULT_SEED = 20259


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _admissibility_block(report) -> dict:
    dec = report.decomposition
    return {
        "q": report.q, "ell": report.ell, "m": report.m,
        "t_ell": dec.t_ell, "m1": dec.m1, "m0": dec.m0,
        "t_rad": dec.t_rad, "phi_m0": dec.phi_m0,
        "C": _frac(report.C), "threshold": _frac(report.threshold),
        "residue": report.residue, "modulus": report.modulus,
        "congruent_mod_ell": report.congruent_mod_ell,
        "congruent_mod_m0": report.congruent_mod_m0,
        "exceeds_threshold": report.exceeds_threshold,
        "admissible": report.admissible,
        "kummer_cyclic": kummer_cyclic(report.q, report.m),
        "notes": list(report.notes),
    }


def _gamma_block(cert) -> dict:
    rep = cert.power_report
    base = cert.gamma.spec
    return {
        "gamma": base.index(cert.gamma),
        "lambda": base.index(cert.lam),
        "tau": base.index(cert.tau),
        "c": base.index(cert.completion.c),
        "d": base.index(cert.completion.d),
        "witnesses": {str(p): v for p, v in sorted(cert.witnesses.items())},
        "direct_check": cert.direct_check,
        "power_sets": {
            "r2_size": rep.r2_size,
            "t_size": rep.t_size,
            "t_size_inclusion_exclusion": rep.t_size_inclusion_exclusion,
            "n_k": {str(k): v for k, v in sorted(rep.n_k.items())},
            "s_k_sizes": {str(k): v for k, v in sorted(rep.s_k_sizes.items())},
            "main_term": _frac(rep.main_term),
            "error_bound": rep.error_bound,
            "bounds_ok": rep.hasse_bounds_ok and rep.s_k_bounds_ok and rep.t_bound_ok,
        },
    }


def _power_report_block(rep) -> dict:
    return {
        "q": rep.q, "m": rep.m,
        "r2_size": rep.r2_size, "t_size": rep.t_size,
        "t_size_inclusion_exclusion": rep.t_size_inclusion_exclusion,
        "n_k": {str(k): v for k, v in sorted(rep.n_k.items())},
        "s_k_sizes": {str(k): v for k, v in sorted(rep.s_k_sizes.items())},
        "main_term": _frac(rep.main_term),
        "error_bound": rep.error_bound,
    }


def run_verify(q: int, ell: int, m: int, n: int, deep_check: bool = False,
               seed: int = DEFAULT_SEED, threads: int | None = None) -> tuple[dict, int]:
    """The full pipeline; returns (certificate, exit_code)."""
    if threads is None:
        threads = os.cpu_count() or 1
    cert: dict = {
        "input": {"q": q, "ell": ell, "m": m, "n": n,
                  "deep_check": deep_check, "seed": seed},
        "admissibility": None, "gamma": None, "rikuna_checks": None,
        "ramification": None, "genus": None, "l_poly": None,
        "class_number": None, "ell_divides": None,
        "status": "fail", "timings_ms": {}, "version": __version__,
    }
    timings = cert["timings_ms"]

    def clock(name, fn):
        t0 = time.perf_counter()
        out = fn()
        timings[name] = round((time.perf_counter() - t0) * 1000.0, 3)
        return out

    _, adm = clock("admissibility", lambda: is_admissible(q, ell, m))
    cert["admissibility"] = _admissibility_block(adm)
    if not (adm.congruent_mod_ell and adm.congruent_mod_m0):
        raise InputError(
            f"q = {q} violates the congruences: needs q = -1 mod {ell} "
            f"and q = 1 mod {adm.decomposition.m0}")

    # refuse infeasible work before any heavy lifting
    dec = adm.decomposition
    g_target = (ell**n - 1) * (m - 1)
    need = required_evaluations(q, g_target)
    if need > evaluation_budget() or q**g_target > MAX_ENUMERATION:
        raise BudgetError(
            f"genus {g_target} at q = {q} needs ~{need} field evaluations "
            f"(budget {evaluation_budget()}, largest field {MAX_ENUMERATION})")

    sys_ = clock("build_rikuna", lambda: build_rikuna(q, ell))
    gamma_cert = clock("find_gamma", lambda: find_gamma(sys_, m))
    cert["gamma"] = _gamma_block(gamma_cert)

    spec = clock("build_tower", lambda: build_tower(q, ell, m, n,
                                                    sys=sys_, gamma_cert=gamma_cert))

    checks = clock("rikuna_checks", lambda: structural_checks(sys_, seed=seed))
    levels = [level_checks(spec, i, seed=seed) for i in range(1, n + 1)]
    inert = [inertness_check(spec, i) for i in range(1, n + 1)]
    const_ok = constant_field_check(spec)
    cert["rikuna_checks"] = {
        "q_separable": checks.q_separable,
        "r_fixes_zeta": checks.r_fixes_zeta,
        "splitting_ok": checks.splitting_ok,
        "sampled_u0": checks.sampled_u0,
        "levels_ok": all(lv.all_ok for lv in levels),
        "inert_all_levels": all(inert),
        "inert_level_invariant": len(set(inert)) == 1,
        "constant_field_ok": const_ok,
    }

    ram = clock("ramification", lambda: ramification_report_m1(spec))
    base = sys_.base
    cert["ramification"] = {
        "numerator": [base.index(c) for c in ram.numerator.coeffs],
        "disc_numerator": base.index(ram.disc_numerator),
        "disc_matches_formula": ram.disc_matches_formula,
        "numerator_distinct_roots": ram.numerator_distinct_roots,
        "denominator_distinct_roots": ram.denominator_distinct_roots,
        "q_separable": ram.q_separable,
        "coprime": ram.coprime,
        "infinity_ramified": ram.infinity_ramified,
        "branch_degree_total": ram.branch_degree_total,
        "qz_degree": ram.qz_degree,
        "qz_irreducible": ram.qz_irreducible,
        "all_ok": ram.all_ok,
    }

    structure_ok = (checks.all_ok and all(lv.all_ok for lv in levels)
                    and all(inert) and const_ok and ram.all_ok
                    and gamma_cert.verified)

    report = clock("zeta", lambda: verdict_for_tower(spec, deep_check=deep_check,
                                                     threads=threads))
    cert["genus"] = {"riemann_hurwitz": report.genus_rh, "l_degree_half": report.genus_l}
    cert["l_poly"] = list(report.l_coeffs)
    cert["class_number"] = str(report.h)
    cert["ell_divides"] = report.ell_divides
    cert["counts"] = list(report.counts)
    cert["deep_checked_through"] = report.deep_checked_through
    L = LPolynomial(report.l_coeffs, report.genus_rh, q)
    cert["zeta_checks"] = {
        "functional_equation": L.functional_equation_ok(),
        "weil_root_moduli": L.weil_moduli_ok(),
        "weil_count_bounds": all(
            weil_bound_ok(n_i, q, i, report.genus_rh)
            for i, n_i in enumerate(report.counts, start=1)),
    }

    verified = structure_ok and not report.ell_divides \
        and report.genus_rh == report.genus_l \
        and report.genus_rh == g_target
    cert["status"] = "ok" if verified else "fail"
    return cert, 0 if verified else 1


def cmd_verify(args) -> int:
    try:
        cert, code = run_verify(args.q, args.ell, args.m, args.n,
                                deep_check=args.deep_check, seed=args.seed,
                                threads=args.threads)
    except (InputError, BudgetError) as exc:
        cert = {"input": {"q": args.q, "ell": args.ell, "m": args.m, "n": args.n},
                "status": "budget" if isinstance(exc, BudgetError) else "fail",
                "error": str(exc), "version": __version__}
        _emit_json(cert, args.json)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NoGammaFound, VerificationError) as exc:
        cert = {"input": {"q": args.q, "ell": args.ell, "m": args.m, "n": args.n},
                "status": "fail", "error": str(exc), "version": __version__}
        if isinstance(exc, NoGammaFound) and exc.report is not None:
            cert["power_sets"] = _power_report_block(exc.report)
        _emit_json(cert, args.json)
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    _emit_json(cert, args.json)
    return code


def _emit_json(doc: dict, path: str | None):
    text = json.dumps(doc, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


SURVEY_COLUMNS = ["q", "ell", "m", "n", "congruent", "admissible", "gamma",
                  "genus", "h", "ell_divides_h", "status"]


def run_survey(ell: int, m: int, q_max: int, n_max: int,
               threads: int | None = None) -> list[dict]:
    if threads is None:
        threads = os.cpu_count() or 1
    rows = []
    for cand in enumerate_candidates(ell, m, q_max):
        q = cand.q
        sys_ = None
        gamma_cert = None
        try:
            sys_ = build_rikuna(q, ell)
            gamma_cert = find_gamma(sys_, m)
        except NoGammaFound:
            for n in range(1, n_max + 1):
                rows.append({"q": q, "ell": ell, "m": m, "n": n,
                             "congruent": True, "admissible": cand.admissible,
                             "gamma": "", "genus": "", "h": "",
                             "ell_divides_h": "", "status": "NO_GAMMA"})
            continue
        for n in range(1, n_max + 1):
            row = {"q": q, "ell": ell, "m": m, "n": n,
                   "congruent": True, "admissible": cand.admissible,
                   "gamma": sys_.base.index(gamma_cert.gamma),
                   "genus": "", "h": "", "ell_divides_h": "", "status": ""}
            try:
                spec = build_tower(q, ell, m, n, sys=sys_, gamma_cert=gamma_cert)
                row["genus"] = genus_riemann_hurwitz(spec.curve)
                report = verdict_for_tower(spec, threads=threads)
                row["h"] = str(report.h)
                row["ell_divides_h"] = report.ell_divides
                row["status"] = "ok"
            except BudgetError:
                row["status"] = "BUDGET"
            except (VerificationError, InputError) as exc:
                row["status"] = f"FAIL:{exc}"
            rows.append(row)
    return rows


def cmd_survey(args) -> int:
    try:
        rows = run_survey(args.ell, args.m, args.q_max, args.n_max, threads=args.threads)
    except (InputError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = json.dumps(rows, indent=2)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=SURVEY_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        text = buf.getvalue().rstrip("\n")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_admissible(args) -> int:
    try:
        dec = decompose_m(args.m, args.ell)
        doc = {
            "ell": args.ell, "m": args.m,
            "t_ell": dec.t_ell, "m1": dec.m1, "m0": dec.m0,
            "t_rad": dec.t_rad, "phi_m0": dec.phi_m0,
            "C": _frac(threshold_constant(dec)),
            "threshold": _frac((threshold_constant(dec) + 4) ** 2),
        }
        residue, modulus = progression_residue(dec)
        doc["residue"] = residue
        doc["modulus"] = modulus
        cor = corollary_checks(args.ell, dec.m0)
        doc["corollary"] = {
            "case": cor.case,
            "rhs": _frac(cor.rhs) if cor.rhs is not None else None,
            "rhs_float": float(cor.rhs) if cor.rhs is not None else None,
            "rhs_ok": cor.rhs_ok,
            "direct_ok": cor.direct_ok,
        }
        if args.q is not None:
            verdict, rep = is_admissible(args.q, args.ell, args.m)
            doc["q_report"] = _admissibility_block(rep)
            doc["admissible"] = verdict
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit_json(doc, args.json)
    return 0


def cmd_gamma(args) -> int:
    try:
        sys_ = build_rikuna(args.q, args.ell)
        cert = find_gamma(sys_, args.m)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoGammaFound as exc:
        doc = {"q": args.q, "ell": args.ell, "m": args.m,
               "gamma": None, "error": str(exc)}
        if exc.report is not None:
            doc["power_sets"] = _power_report_block(exc.report)
        _emit_json(doc, args.json)
        return 1
    doc = {"q": args.q, "ell": args.ell, "m": args.m}
    doc.update(_gamma_block(cert))
    _emit_json(doc, args.json)
    return 0


def cmd_eq5(args) -> int:
    try:
        rep = eq5_certificate(args.q, args.ell, args.n)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {
        "q": rep.q, "ell": rep.ell, "n": rep.n, "e": rep.e,
        "quotient": str(rep.total),
        "factor_big": str(rep.factor_big),
        "factor_small": str(rep.factor_small),
        "ell_divides_small": rep.ell_divides_small,
        "ell_divides_quotient": rep.ell_divides_total,
        "irreducible_count_deg_ne": str(rep.irreducible_count),
        "verified": rep.verified,
    }
    _emit_json(doc, args.json)
    return 0 if rep.verified else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fftower",
        description="Build and verify function-field towers over F_q(T) with "
                    "class number indivisible by a chosen prime.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="end-to-end certificate for one (q, ell, m, n)")
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--ell", type=int, required=True)
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--deep-check", action="store_true",
                   help="verify N_i against the L-polynomial for g < i <= 2g")
    v.add_argument("--json", metavar="PATH", help="write the certificate to PATH")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--threads", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("survey", help="sweep the congruence progression")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--q-max", type=int, required=True)
    s.add_argument("--n-max", type=int, default=1)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--out", metavar="PATH")
    s.add_argument("--threads", type=int, default=None)
    s.set_defaults(func=cmd_survey)

    a = sub.add_parser("admissible", help="thresholds and progression for (ell, m)")
    a.add_argument("--ell", type=int, required=True)
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--q", type=int, default=None)
    a.add_argument("--json", metavar="PATH")
    a.set_defaults(func=cmd_admissible)

    g = sub.add_parser("gamma", help="gamma certificate for (q, ell, m)")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--ell", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--json", metavar="PATH")
    g.set_defaults(func=cmd_gamma)

    e = sub.add_parser("eq5", help="big-integer divisibility certificate")
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--ell", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--json", metavar="PATH")
    e.set_defaults(func=cmd_eq5)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
