"""Command-line driver.

Exit codes: 0 success, 1 usage or validation error, 2 incomplete result
(unknown areas, truncated searches, inexact rows).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from .errors import CertificateError, MetadehnError, NotIdentityError, UsageError
from .experiments import RunConfig, dump_json, fit_growth_exponent, manifest, read_config_file, run_pool
from .free_module import (ModuleElement, format_word, module_norm, ordered_form, parse_module_element,
                          parse_word, reach_of)
from .membership import SubmodulePresentation, area_search, module_dehn_profile
from .rewriting import (CancellationState, Certificate, CostTable, Presentation, bs_area_certificate,
                        check_certificate, l2_area_certificate, l2_game_reduce, l2_sequence,
                        lm_area_certificate, sample_identity_word)
from .wreath import (SubgroupSpec, bfs_oracle, distortion_profile, standard_generators, subgroup_length,
                     witness_family, wreath_length)

OK, USAGE, INCOMPLETE = 0, 1, 2

# flag defaults; a config file overrides these and the command line overrides both
DEFAULTS = {
    "k": None, "m": None, "gens": None, "n_max": None, "r_max": None, "seed": 0, "budget": 8,
    "window_slack": 2, "reach_exact_max": 14, "commutator_mode": "general", "format": None,
    "out": None, "workers": 1,
}
INT_KEYS = {"k", "m", "n_max", "r_max", "seed", "budget", "window_slack", "reach_exact_max", "workers",
            "l", "n", "max_states", "max_nodes", "sample_length", "family", "coeff_cap"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("common options")
    g.add_argument("--k", type=int, default=argparse.SUPPRESS, help="rank of T = Z^k")
    g.add_argument("--m", type=int, default=argparse.SUPPRESS, help="basis size of the free module")
    g.add_argument("--gens", default=argparse.SUPPRESS,
                   help="generators: polynomials separated by ';' (grouped m at a time) or generators by '|'")
    g.add_argument("--n-max", type=int, default=argparse.SUPPRESS)
    g.add_argument("--r-max", type=int, default=argparse.SUPPRESS)
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    g.add_argument("--window-slack", type=int, default=argparse.SUPPRESS)
    g.add_argument("--reach-exact-max", type=int, default=argparse.SUPPRESS)
    g.add_argument("--commutator-mode", choices=("general", "derivedGenerator"), default=argparse.SUPPRESS)
    g.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    g.add_argument("--out", default=argparse.SUPPRESS, help="directory for output files and the manifest")
    g.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    g.add_argument("--config", default=argparse.SUPPRESS, help="key=value file; command-line flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="metadehn", description="Module areas, distortion and rewriting bounds.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _common(p)
        return p

    p = add("norm", "module norm ||f||")
    p.add_argument("--element", required=True, help="e.g. 't1^3+t1^2+t1+1' or 't1-1; 2'")
    p = add("ordered-form", "ordered form of a module element")
    p.add_argument("--element", required=True)
    p = add("area", "minimal area of an element in a submodule")
    p.add_argument("--element", required=True)
    p = add("dehn-profile", "module Dehn profile n -> delta_hat(n)")
    p.add_argument("--max-states", type=int, default=2_000_000)
    p.add_argument("--coeff-cap", type=int, default=None)
    p = add("distortion", "distortion profile of H = <gens, t> in Z^m wr Z^k")
    p.add_argument("--mode", choices=("exact", "witness"), default="exact")
    p.add_argument("--family", type=int, default=2, help="l of the witness family")
    p.add_argument("--max-nodes", type=int, default=2_000_000)
    p = add("witness", "witness family element g_n for H_l")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = add("l2-reduce", "L_2 cancellation game on a word or a sequence")
    p.add_argument("--word")
    p.add_argument("--sequence", help="comma-separated m_i values")
    p.add_argument("--sample-length", type=int)
    p = add("bs-bound", "certified area bound in BS~(n,m)")
    p.add_argument("--bs", required=True, help="n,m")
    p.add_argument("--word")
    p.add_argument("--sample-length", type=int)
    p = add("lm-bound", "certified area bound in the lamplighter L_m")
    p.add_argument("--lamp", type=int, required=True, help="the m of L_m")
    p.add_argument("--word")
    p.add_argument("--sample-length", type=int)
    p = add("verify-cert", "check a certificate JSON file")
    p.add_argument("--cert", required=True)
    p.add_argument("--word", help="defaults to the word recorded in the certificate")
    p = add("bfs-check", "compare length formulas with breadth-first search")
    p.add_argument("--max-nodes", type=int, default=2_000_000)
    p = add("fit", "least-squares growth exponent of (n, value) rows")
    p.add_argument("--rows", help="'8:64,16:256,32:1024'")
    p.add_argument("--csv", help="CSV with n in the first column and the value in the second")
    p.add_argument("--dyadic", action="store_true", help="keep only rows with n a power of two")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    values = dict(DEFAULTS)
    given = vars(ns)
    if "config" in given:
        for key, raw in read_config_file(given["config"]).items():
            if key not in DEFAULTS:
                raise UsageError(f"unknown config key {key!r}")
            values[key] = int(raw) if key in INT_KEYS else raw
    extra = {}
    for key, val in given.items():
        if key in ("config", "command"):
            continue
        if key in DEFAULTS:
            values[key] = val
        else:
            extra[key] = val
    return RunConfig(command=ns.command, extra=extra, **values)


def _presentation(cfg: RunConfig) -> SubmodulePresentation:
    if not cfg.gens:
        raise UsageError("--gens is required")
    return SubmodulePresentation.parse(cfg.gens, cfg.k, cfg.m)


def _element(cfg: RunConfig) -> ModuleElement:
    return parse_module_element(cfg.extra["element"], cfg.k)


class _Out:
    """Collects named outputs, then prints or writes them with a manifest."""

    def __init__(self, cfg: RunConfig, argv):
        self.cfg = cfg
        self.argv = argv
        self.files: list = []

    def add(self, name: str, text: str):
        self.files.append((name, text))

    def flush(self, stdout):
        if self.cfg.out:
            os.makedirs(self.cfg.out, exist_ok=True)
            for name, text in self.files:
                with open(os.path.join(self.cfg.out, name), "w") as fh:
                    fh.write(text)
            with open(os.path.join(self.cfg.out, "manifest.json"), "w") as fh:
                fh.write(dump_json(manifest(self.cfg, self.argv)))
        else:
            for _, text in self.files:
                stdout.write(text)


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([str(x).lower() if isinstance(x, bool) else ("" if x is None else x) for x in r])
    return buf.getvalue()


def _word_or_sample(cfg: RunConfig, P: Presentation):
    if cfg.extra.get("word"):
        return parse_word(cfg.extra["word"])
    if cfg.extra.get("sample_length"):
        return sample_identity_word(P, cfg.extra["sample_length"], cfg.seed)
    raise UsageError("give --word or --sample-length")


def _cmd_norm(cfg, out):
    f = _element(cfg)
    length, exact = reach_of(f, cfg.reach_exact_max)
    out.add("norm.json", dump_json({"element": str(f), "norm": module_norm(f, cfg.reach_exact_max),
                                    "one_norm": f.one_norm(), "reach": length, "exact": exact}))
    return OK if exact else INCOMPLETE


def _cmd_ordered_form(cfg, out):
    f = _element(cfg)
    of = ordered_form(f)
    terms = [[[list(u), c] for u, c in coord] for coord in of.terms]
    out.add("ordered_form.json", dump_json({"element": str(f), "terms": terms, "word": format_word(of.word)}))
    return OK


def _cmd_area(cfg, out):
    S = _presentation(cfg)
    f = parse_module_element(cfg.extra["element"], S.k)
    if f.m != S.m:
        raise UsageError(f"element has {f.m} coordinates, presentation has {S.m}")
    res = area_search(f, S, cfg.budget, cfg.window_slack)
    out.add("area.json", dump_json(res.to_json()))
    return INCOMPLETE if res.status == "unknown" else OK


def _cmd_dehn_profile(cfg, out):
    S = _presentation(cfg)
    if not cfg.n_max:
        raise UsageError("--n-max is required")
    prof = module_dehn_profile(S, cfg.n_max, cfg.extra["max_states"], cfg.extra["coeff_cap"])
    if cfg.format == "json":
        out.add("dehn_profile.json", dump_json({"rows": prof.rows, "diagnostics": prof.diagnostics}))
    else:
        out.add("dehn_profile.csv", prof.to_csv())
    for d in prof.diagnostics:
        print(d, file=sys.stderr)
    return OK if all(e for _, _, e in prof.rows) else INCOMPLETE


def _cmd_distortion(cfg, out):
    H = SubgroupSpec(_presentation(cfg))
    if not cfg.r_max:
        raise UsageError("--r-max is required")
    prof = distortion_profile(H, cfg.r_max, cfg.extra["mode"], cfg.extra["family"],
                              cfg.extra["max_nodes"], cfg.budget)
    if cfg.format == "json":
        out.add("distortion.json", dump_json({"rows": prof.rows, "diagnostics": prof.diagnostics}))
    else:
        out.add("distortion.csv", prof.to_csv())
    for d in prof.diagnostics:
        print(d, file=sys.stderr)
    if prof.truncated or any(v is None for _, v, _, _ in prof.rows):
        return INCOMPLETE
    return OK


def _cmd_witness(cfg, out):
    wit = witness_family(cfg.extra["l"], cfg.extra["n"])
    out.add("witness.json", dump_json(wit.to_json()))
    return OK


def _cert_output(out, name, bound, cert, extra=None):
    body = cert.to_json()
    out.add(name, json.dumps(body, indent=1) + "\n")
    summary = {"certified_area_bound": bound, "total_game_cost": cert.total_game_cost,
               "moves": len(cert.moves), "diagnostics": cert.diagnostics}
    summary.update(extra or {})
    print(json.dumps(summary), file=sys.stderr)


def _cmd_l2(cfg, out):
    table = CostTable(cfg.commutator_mode)
    if cfg.extra.get("sequence"):
        state = CancellationState([int(x) for x in cfg.extra["sequence"].split(",")])
        game, cert = l2_game_reduce(state, table)
        _cert_output(out, "certificate.json", cert.certified_area_bound, cert,
                     {"path_weight": state.path_weight()})
        return OK
    w = _word_or_sample(cfg, Presentation.lamplighter(2))
    state = l2_sequence(w)
    bound, cert = l2_area_certificate(w, table)
    _cert_output(out, "certificate.json", bound, cert, {"path_weight": state.path_weight(), "length": len(w)})
    return OK


def _cmd_bs(cfg, out):
    try:
        n, m = (int(x) for x in cfg.extra["bs"].split(","))
    except ValueError:
        raise UsageError("--bs expects n,m") from None
    P = Presentation.baumslag_solitar(n, m)
    w = _word_or_sample(cfg, P)
    bound, cert = bs_area_certificate(w, n, m, CostTable(cfg.commutator_mode))
    _cert_output(out, "certificate.json", bound, cert, {"length": len(w)})
    return OK


def _cmd_lm(cfg, out):
    P = Presentation.lamplighter(cfg.extra["lamp"])
    w = _word_or_sample(cfg, P)
    bound, cert = lm_area_certificate(w, P.m, CostTable(cfg.commutator_mode))
    _cert_output(out, "certificate.json", bound, cert, {"length": len(w)})
    return OK


def _cmd_verify(cfg, out):
    with open(cfg.extra["cert"]) as fh:
        data = json.load(fh)
    cert = Certificate.from_json(data)
    w = parse_word(cfg.extra.get("word") or cert.word)
    rep = check_certificate(w, cert)
    out.add("verify.json", dump_json({"valid": rep.ok, "reason": rep.reason, "index": rep.index}))
    return OK if rep.ok else USAGE


def _bfs_item(args):
    kind, k, m, gens, radius, max_nodes, budget = args
    if kind == "wreath":
        table = bfs_oracle(standard_generators(k, m), radius, max_nodes)
        bad = sum(1 for g, d in table.items() if wreath_length(g) != d)
        return {"check": f"wreath_length, Z^{m} wr Z^{k}, radius {radius}", "elements": len(table),
                "mismatches": bad}
    H = SubgroupSpec.parse(gens, k, m)
    table = bfs_oracle(H.generators(), radius, max_nodes)
    bad = sum(1 for g, d in table.items() if subgroup_length(g, H, budget) != d)
    return {"check": f"subgroup_length, H = <{gens}, t>, radius {radius}", "elements": len(table),
            "mismatches": bad}


def _cmd_bfs(cfg, out):
    k, m = cfg.k or 1, cfg.m or 1
    radius = cfg.r_max or 6
    items = [("wreath", k, m, None, radius, cfg.extra["max_nodes"], cfg.budget)]
    if cfg.gens:
        items.append(("subgroup", k, m, cfg.gens, radius, cfg.extra["max_nodes"], cfg.budget))
    results = run_pool(_bfs_item, items, cfg.workers)
    out.add("bfs_check.json", dump_json(results))
    return OK if all(r["mismatches"] == 0 for r in results) else USAGE


def _cmd_fit(cfg, out):
    rows = []
    if cfg.extra.get("rows"):
        for part in cfg.extra["rows"].split(","):
            n, v = part.split(":")
            rows.append((float(n), float(v)))
    elif cfg.extra.get("csv"):
        with open(cfg.extra["csv"]) as fh:
            reader = csv.reader(fh)
            next(reader, None)
            for r in reader:
                if len(r) >= 2 and r[1] != "":
                    rows.append((float(r[0]), float(r[1])))
    else:
        raise UsageError("give --rows or --csv")
    if cfg.extra.get("dyadic"):
        rows = [(n, v) for n, v in rows if n >= 1 and int(n) & (int(n) - 1) == 0]
    dropped = 0
    if cfg.extra.get("csv"):
        # log(0) is undefined; zero rows at tiny n carry no growth information
        kept = [(n, v) for n, v in rows if v > 0]
        dropped = len(rows) - len(kept)
        rows = kept
    res = fit_growth_exponent(rows)
    out.add("fit.json", dump_json(dict(res.to_json(), dropped_rows=dropped)))
    return OK


COMMANDS = {
    "norm": _cmd_norm, "ordered-form": _cmd_ordered_form, "area": _cmd_area,
    "dehn-profile": _cmd_dehn_profile, "distortion": _cmd_distortion, "witness": _cmd_witness,
    "l2-reduce": _cmd_l2, "bs-bound": _cmd_bs, "lm-bound": _cmd_lm, "verify-cert": _cmd_verify,
    "bfs-check": _cmd_bfs, "fit": _cmd_fit,
}


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
        out = _Out(cfg, argv)
        code = COMMANDS[ns.command](cfg, out)
        out.flush(stdout)
        return code
    except (UsageError, NotIdentityError, CertificateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except MetadehnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
