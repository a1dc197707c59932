"""Command-line front door: JSON jobs in, JSON reports out.

Every command reads one JSON input file and emits a deterministic
report (sorted keys, rational strings, no timestamps), so identical
job specs reproduce byte-identical reports.  Exit codes: 0 for a
success verdict, 2 for a structured rejection, 1 for internal errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

from . import __version__, linalg, numfield, serialize
from .converse import MatrixFamily, run_converse
from .errors import OtlckError, SchemaError
from .exactnum.eigen import eigenvalue_magnitude_profile
from .exactnum.interval import CertifiedInterval, log_interval
from .exactnum.intpoly import IntPolynomial
from .liealg import HermitianStructure, is_abelian_J, verify_lck, verify_vaisman
from .metrics import lck_condition, pluriclosed_condition, rank_bound_probe
from .normalize import MetaAbelianInput, normalize_meta_abelian_lck
from .otlike import forward_lattice
from .serialize import (decode_family, decode_field_spec, decode_lie_algebra,
                        decode_unit_group, encode_box, encode_interval,
                        encode_matrix_c, encode_poly, encode_rational)
from .unitlat import check_admissible, log_image, solve_matrix_c

JOB_SCHEMA = "otlck.job/1"
REPORT_SCHEMA = "otlck.report/1"
ENV_PRECISION = "OTLCK_PRECISION_CAP"

COMMANDS = ("field-inspect", "units-verify", "admissible", "build-ot",
            "verify-lck", "normalize", "converse", "metrics", "sol3-demo")

_JOB_KEYS = {"schema", "command", "input", "output", "precision",
             "precision_cap", "bounds"}
_BOUND_KEYS = {"unit_box", "exponent", "branch", "pairing_search"}


@dataclass
class JobSpec:
    command: str
    input_path: Optional[str]
    output_path: Optional[str]
    precision: int
    precision_cap: int
    bounds: Dict[str, Any]

    @staticmethod
    def from_dict(d: Dict[str, Any]) -> "JobSpec":
        if not isinstance(d, dict):
            raise SchemaError("job spec must be a JSON object")
        unknown = set(d) - _JOB_KEYS
        if unknown:
            raise SchemaError(f"unknown job keys: {sorted(unknown)}")
        if d.get("schema") != JOB_SCHEMA:
            raise SchemaError(f"job spec must carry schema = {JOB_SCHEMA!r}")
        cmd = d.get("command")
        if cmd not in COMMANDS:
            raise SchemaError(f"unknown command {cmd!r}")
        bounds = d.get("bounds") or {}
        extra = set(bounds) - _BOUND_KEYS
        if extra:
            raise SchemaError(f"unknown bounds keys: {sorted(extra)}")
        cap_default = int(os.environ.get(ENV_PRECISION, "4096"))
        return JobSpec(cmd, d.get("input"), d.get("output"),
                       int(d.get("precision", 64)),
                       int(d.get("precision_cap", cap_default)), bounds)


def _load_input(job: JobSpec) -> Tuple[Any, str]:
    if job.input_path is None:
        if job.command == "sol3-demo":
            payload = {"matrix": [[2, 1], [1, 1]]}
            raw = json.dumps(payload, sort_keys=True).encode()
            return payload, hashlib.sha256(raw).hexdigest()
        raise SchemaError(f"command {job.command!r} requires an input file")
    with open(job.input_path, "rb") as fh:
        raw = fh.read()
    return json.loads(raw.decode()), hashlib.sha256(raw).hexdigest()


def run(job: JobSpec) -> Tuple[Dict[str, Any], int]:
    """Dispatch one job; returns (report, exit_code)."""
    payload, digest = _load_input(job)
    handler = _HANDLERS[job.command]
    try:
        body, code = handler(payload, job)
    except OtlckError as e:
        body = {"verdict": "rejected", "error": type(e).__name__,
                "message": str(e)}
        code = 2
    report = {
        "schema": REPORT_SCHEMA,
        "command": job.command,
        "provenance": {
            "input_sha256": digest,
            "tool_version": __version__,
            "precision_bits": job.precision,
        },
    }
    report.update(body)
    return report, code


def report_bytes(report: Dict[str, Any]) -> bytes:
    return (json.dumps(report, sort_keys=True, indent=2) + "\n").encode()


# -- handlers ------------------------------------------------------------------

def _h_field_inspect(payload, job):
    field, module = decode_field_spec(payload)
    embeddings = []
    for i in range(1, field.s + 1):
        embeddings.append({"index": i, "kind": "real",
                           "value": encode_interval(
                               numfield.embed_element(field.generator(), i,
                                                      job.precision))})
    for i in range(field.s + 1, field.s + field.t + 1):
        embeddings.append({"index": i, "kind": "complex",
                           "value": encode_box(
                               numfield.embed_element(field.generator(), i,
                                                      job.precision))})
    body = {
        "verdict": "ok",
        "min_poly": encode_poly(field.min_poly),
        "degree": field.degree,
        "signature": [field.s, field.t],
        "generator_embeddings": embeddings,
        "module_basis": [[encode_rational(c) for c in b.coords]
                         for b in module.basis],
    }
    return body, 0


def _h_units_verify(payload, job):
    group, _ = decode_unit_group(payload)
    rows = []
    ok = True
    for g, v in zip(group.generators, group.verified):
        mp = numfield.element_min_poly(g)
        rows.append({
            "coords": [encode_rational(c) for c in g.coords],
            "min_poly": [encode_rational(c) for c in mp],
            "algebraic_integer": numfield.is_algebraic_integer(g),
            "unit": v["unit"],
            "totally_positive": v["totally_positive"],
            "norm": encode_rational(numfield.norm(g)),
        })
        ok = ok and v["unit"] and v["totally_positive"]
    return {"verdict": "ok" if ok else "rejected", "generators": rows}, (0 if ok else 2)


def _h_admissible(payload, job):
    group, _ = decode_unit_group(payload)
    res = check_admissible(group, job.precision, job.precision_cap)
    body = {
        "verdict": res.verdict,
        "precision_used": res.precision_used,
    }
    if res.det_interval is not None:
        body["kappa_det"] = encode_interval(res.det_interval)
    if res.dependence_witness is not None:
        body["dependence_witness"] = list(res.dependence_witness)
    return body, (0 if res.verdict == "Admissible" else 2)


def _h_build_ot(payload, job):
    group, module = decode_unit_group(payload)
    res = check_admissible(group, job.precision, job.precision_cap)
    if res.verdict != "Admissible":
        return {"verdict": res.verdict}, 2
    c = solve_matrix_c(group, res.log_image, "principal", job.precision)
    fl = forward_lattice(group.field, group, module, res.log_image,
                         job.precision)
    body = {
        "verdict": "ok",
        "signature": [group.field.s, group.field.t],
        "matrix_c": encode_matrix_c(c),
        "kappa": [[encode_interval(x) for x in row]
                  for row in res.log_image.kappa],
        "integer_matrices": [[[str(int(x)) for x in row] for row in m]
                             for m in fl.matrices],
        "determinants": [encode_rational(d) for d in fl.dets],
        "charpoly_is_minpoly_power": fl.charpoly_is_minpoly_power,
        "max_diagonalization_residual": encode_rational(fl.max_residual_width),
    }
    return body, 0


def _h_verify_lck(payload, job):
    alg, J, G, _ = decode_lie_algebra(payload)
    structure = HermitianStructure(alg, J, G)
    report = verify_lck(alg, structure)
    vaisman = verify_vaisman(alg, structure, report)
    theta = [encode_rational(Fraction(report.theta.get((i,))))
             for i in range(alg.dim)] if report.theta else None
    body = {
        "verdict": "lck" if report.is_lck else "not-lck",
        "nijenhuis_zero": report.nijenhuis_zero,
        "dtheta_zero": report.dtheta_zero,
        "lck_residual_zero": report.lck_residual_zero,
        "certified": report.certified,
        "unimodular": alg.is_unimodular(),
        "abelian_J": is_abelian_J(alg, J),
        "lee_form": theta,
        "vaisman": vaisman if isinstance(vaisman, bool) else str(vaisman),
    }
    return body, (0 if report.is_lck else 2)


def _h_normalize(payload, job):
    alg, J, G, m_dim = decode_lie_algebra(payload)
    if m_dim is None:
        raise SchemaError("normalize needs m_dim in the Lie-algebra spec")
    res = normalize_meta_abelian_lck(MetaAbelianInput(alg, m_dim, J, G))
    body: Dict[str, Any] = {
        "verdict": res.branch,
        "certified": res.certified,
        "checks": dict(sorted(res.checks.items())),
    }
    if res.branch == "ot-like":
        body.update({
            "s": res.s, "t": res.t,
            "c_matrix": [[{"re": encode_rational(re), "im": encode_rational(im)}
                          for re, im in row] for row in res.c_matrix],
            "gamma": encode_rational(res.gamma),
            "metric_rescale": encode_rational(res.metric_rescale),
            "basis_columns": [[encode_rational(x) for x in v]
                              for v in res.basis],
            "scale_squares": [encode_rational(q) for q in res.scale_squares],
        })
    else:
        body["heisenberg_d"] = res.heisenberg_d
    return body, 0


def _h_converse(payload, job):
    n, gens = decode_family(payload)
    fam = MatrixFamily(n, gens)
    rep = run_converse(fam, job.precision)
    body: Dict[str, Any] = {
        "verdict": rep.verdict,
        "n": rep.n,
        "closure_dim": rep.closure_dim,
        "detail": rep.detail,
    }
    if rep.min_poly is not None:
        body["min_poly"] = encode_poly(rep.min_poly)
    if rep.signature is not None:
        body["signature"] = list(rep.signature)
    if rep.unit_coords is not None:
        body["unit_coords"] = [[encode_rational(c) for c in u]
                               for u in rep.unit_coords]
    if rep.unit_min_polys is not None:
        body["unit_min_polys"] = [encode_poly(p) for p in rep.unit_min_polys]
    if rep.certificate is not None:
        body["primitive_combo"] = list(rep.certificate.primitive_combo)
        body["irreducibility_method"] = rep.certificate.irreducibility_method
    if rep.failure is not None:
        body["failure"] = {
            "lemma_broken": rep.failure.lemma_broken,
            "detail": rep.failure.detail,
        }
        if rep.failure.witness_poly is not None:
            body["failure"]["witness_poly"] = encode_poly(rep.failure.witness_poly)
        if rep.failure.witness_factor is not None:
            body["failure"]["witness_factor"] = encode_poly(rep.failure.witness_factor)
    if rep.admissibility is not None:
        body["admissible"] = rep.admissibility.verdict
    if rep.matrix_c is not None:
        body["matrix_c"] = encode_matrix_c(rep.matrix_c)
    if rep.simplicity_witness is not None:
        body["simplicity_witness"] = list(rep.simplicity_witness)
    if rep.charpoly_match is not None:
        body["charpoly_match"] = rep.charpoly_match
    return body, (0 if rep.verdict == "OT" else 2)


def _h_metrics(payload, job):
    bounds = job.bounds
    body: Dict[str, Any] = {}
    code = 0
    if isinstance(payload, dict) and payload.get("generators"):
        group, _ = decode_unit_group(payload)
        body["lck_condition"] = lck_condition(group)
        if bounds.get("pairing_search", True) and group.field.s <= group.field.t:
            pc = pluriclosed_condition(group)
            body["pluriclosed"] = {
                "verdict": pc.verdict,
                "pairing": list(pc.pairing) if pc.pairing else None,
                "counterexample": pc.counterexample,
            }
        field = group.field
    else:
        field, _ = decode_field_spec(payload.get("field") if isinstance(payload, dict) else payload)
    branch = bounds.get("branch")
    if branch:
        rep = rank_bound_probe(field, int(bounds.get("unit_box", 3)), branch)
        body["rank_bound"] = {
            "branch": rep.branch,
            "bound": rep.bound,
            "signature": list(rep.signature),
            "survivors": rep.survivor_count,
            "torsion": rep.torsion_count,
            "rank_lower": rep.rank_lower,
            "rank_certified": rep.rank_certified,
            "theorem_bound": rep.theorem_bound,
            "verdict": rep.verdict,
        }
        if rep.verdict == "violated":
            code = 2
    body["verdict"] = body.get("rank_bound", {}).get("verdict", "ok")
    return body, code


def _h_sol3_demo(payload, job):
    mat = payload.get("matrix", [[2, 1], [1, 1]])
    m = [[int(x) for x in row] for row in mat]
    if len(m) != 2 or any(len(r) != 2 for r in m):
        raise SchemaError("sol3-demo expects a 2x2 integer matrix")
    precision = max(job.precision, 110)
    prof = eigenvalue_magnitude_profile(linalg.qmat(m), precision)
    chi = IntPolynomial.from_q(linalg.charpoly(linalg.qmat(m)))
    from .exactnum.sturm import isolate_real_roots
    roots = [r.refine_bits(precision) for r in isolate_real_roots(chi)]
    lam = roots[-1]  # largest eigenvalue
    loglam = log_interval(lam.interval(), precision)
    # eigenvector for lambda: (m12, lambda - m11) written on the basis (1, lambda)
    eigvec_coeffs = [[[str(m[0][1]), "0"], [str(-m[0][0]), "1"]],
                     [[str(m[0][1]), "0"], [str(-m[0][0]), "1"]]]
    eigvecs = []
    for r in roots:
        iv = r.interval()
        eigvecs.append([encode_interval(CertifiedInterval.exact(m[0][1])),
                        encode_interval(iv - m[0][0])])
    fam = MatrixFamily(2, [m])
    conv = run_converse(fam, job.precision)
    body = {
        "verdict": "ok",
        "matrix": [[str(x) for x in row] for row in m],
        "char_poly": encode_poly(chi),
        "eigenvalues": [encode_interval(r.interval()) for r in roots],
        "eigenvalue_widths_below_1e-30": [
            bool(r.interval().width < Fraction(1, 10 ** 30)) for r in roots],
        "log_lambda": encode_interval(loglam),
        "lattice": {
            "gamma1": "log(lambda) Z",
            "fiber": "P^{-1} Z^2 with P^{-1} columns the eigenvectors",
            "eigenvector_coeffs_on_1_lambda": eigvec_coeffs,
            "eigenvector_enclosures": eigvecs,
        },
        "converse": {
            "verdict": conv.verdict,
            "min_poly": encode_poly(conv.min_poly) if conv.min_poly else None,
            "signature": list(conv.signature) if conv.signature else None,
        },
    }
    return body, 0


_HANDLERS = {
    "field-inspect": _h_field_inspect,
    "units-verify": _h_units_verify,
    "admissible": _h_admissible,
    "build-ot": _h_build_ot,
    "verify-lck": _h_verify_lck,
    "normalize": _h_normalize,
    "converse": _h_converse,
    "metrics": _h_metrics,
    "sol3-demo": _h_sol3_demo,
}


# -- entry point -----------------------------------------------------------------

def _summary(report: Dict[str, Any]) -> str:
    verdict = report.get("verdict", "?")
    cmd = report.get("command", "?")
    extra = ""
    if "signature" in report:
        extra = f" signature={tuple(report['signature'])}"
    if "detail" in report and report["detail"]:
        extra += f" ({report['detail']})"
    return f"otlck {cmd}: {verdict}{extra}"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="otlck",
        description="Exact verification of OT solvmanifold data and LCK "
                    "structures on solvable Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="execute a JSON job spec")
    runp.add_argument("jobspec")
    for cmd in COMMANDS:
        p = sub.add_parser(cmd)
        if cmd != "sol3-demo":
            p.add_argument("--input", required=True)
        else:
            p.add_argument("--input")
        p.add_argument("--output")
        p.add_argument("--precision", type=int, default=64)
        p.add_argument("--precision-cap", type=int,
                       default=int(os.environ.get(ENV_PRECISION, "4096")))
        if cmd == "metrics":
            p.add_argument("--bound", type=int, default=3)
            p.add_argument("--branch", choices=("a1", "a3"))
            p.add_argument("--pairing-search", choices=("on", "off"),
                           default="on")
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            with open(args.jobspec, "rb") as fh:
                job = JobSpec.from_dict(json.loads(fh.read().decode()))
        else:
            bounds: Dict[str, Any] = {}
            if args.command == "metrics":
                bounds = {"unit_box": args.bound,
                          "pairing_search": args.pairing_search == "on"}
                if args.branch:
                    bounds["branch"] = args.branch
            job = JobSpec(args.command, args.input, args.output,
                          args.precision, args.precision_cap, bounds)
        report, code = run(job)
    except SchemaError as e:
        print(f"otlck: schema error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"otlck: i/o error: {e}", file=sys.stderr)
        return 1
    except OtlckError as e:
        print(f"otlck: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # internal error
        print(f"otlck: internal error: {type(e).__name__}: {e}",
              file=sys.stderr)
        return 1
    print(_summary(report))
    data = report_bytes(report)
    if job.output_path:
        with open(job.output_path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())
    return code


if __name__ == "__main__":
    sys.exit(main())
