"""Command line: ``cliffbn verify|list|cache check|pair|lines``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cache
from .claims import REGISTRY, ClaimReport, Config, UnknownClaim, run

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliffbn", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run claims")
    v.add_argument("ids", nargs="+", help="claim ids such as CLM-01, or 'all'")
    v.add_argument("--exhaustive", action="store_true",
                   help="exhaustive three-qubit axiom (i) (about 1.5 GB)")
    v.add_argument("--budget", type=int, default=None, help="largest group a claim may enumerate")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=100_000)
    v.add_argument("--cache-dir", type=Path, default=None)
    v.add_argument("--report", type=Path, default=None, help="write out.json or out.md")

    sub.add_parser("list", help="show the claim registry")

    c = sub.add_parser("cache", help="cache maintenance")
    c.add_argument("action", choices=["check"])
    c.add_argument("--cache-dir", type=Path, default=Path(".cliffbn-cache"))

    b = sub.add_parser("pair", help="BN-pair report for a named configuration")
    b.add_argument("name")
    b.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    b.add_argument("--samples", type=int, default=100_000)
    b.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("lines", help="export the 27-line incidence graph")
    g.add_argument("--format", choices=["json", "dot"], default="json")
    return p


def render_markdown(reports: list[ClaimReport]) -> str:
    out = ["| claim | verdict | ms | quote |", "|---|---|---|---|"]
    for r in reports:
        q = r.quote.replace("|", "\\|")
        out.append(f"| {r.claim_id} | {r.verdict} | {r.elapsed_ms} | {q} |")
    for r in reports:
        out += ["", f"## {r.claim_id}: {r.verdict}", ""]
        if r.error:
            out.append(f"error: `{r.error}`")
        out += ["```json", json.dumps({"values": r.values, "witnesses": r.witnesses},
                                      indent=2, sort_keys=True), "```"]
    return "\n".join(out) + "\n"


def write_report(reports: list[ClaimReport], path: Path) -> None:
    if path.suffix == ".md":
        path.write_text(render_markdown(reports))
    else:
        path.write_text(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n")


def exit_code(reports: list[ClaimReport]) -> int:
    if any(r.error for r in reports):
        return EXIT_ERROR
    if any(r.verdict == "refuted" for r in reports):
        return EXIT_REFUTED
    return EXIT_OK


def _verify(a) -> int:
    cache.set_cache_dir(a.cache_dir)
    cfg = Config(exhaustive=a.exhaustive, budget=a.budget, seed=a.seed, samples=a.samples)
    try:
        reports = run(a.ids, cfg, jobs=a.jobs)
    except UnknownClaim as exc:
        print(f"unknown claim: {exc.args[0]}", file=sys.stderr)
        return EXIT_ERROR
    for r in reports:
        tail = f"  [{r.error}]" if r.error else ""
        print(f"{r.claim_id}  {r.verdict:<24} {r.elapsed_ms:>8} ms{tail}")
    if a.report:
        write_report(reports, a.report)
    return exit_code(reports)


def _list(cfg: Config = Config()) -> int:
    for c in REGISTRY.values():
        scale = c.scale + (f" (exhaustive: {c.exhaustive_scale})" if c.exhaustive_scale else "")
        print(f"{c.id}  {scale:<32} {c.statement}\n        quote: {c.quote}")
    return EXIT_OK


def _cache_check(a) -> int:
    if not a.cache_dir.is_dir():
        print(f"no cache directory at {a.cache_dir}", file=sys.stderr)
        return EXIT_ERROR
    rows = cache.check_dir(a.cache_dir)
    for r in rows:
        if r["ok"]:
            print(f"ok       {r['file']}  {r['group']} order {r['order']}")
        else:
            print(f"CORRUPT  {r['file']}  {r['error']}")
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_ERROR


def _pair(a) -> int:
    from .bn import BNVerifier
    from .pairs import build
    try:
        prep = build(a.name)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return EXIT_ERROR
    rep = BNVerifier(prep).report(mode=a.mode, samples=a.samples, seed=a.seed)
    from .claims import _plain
    print(json.dumps(_plain(rep), indent=2, sort_keys=True))
    return EXIT_OK


def _lines(a) -> int:
    from .schlafli import build_incidence
    g = build_incidence()
    sys.stdout.write(g.to_dot() if a.format == "dot" else g.to_json() + "\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    a = _parser().parse_args(argv)
    try:
        if a.cmd == "verify":
            return _verify(a)
        if a.cmd == "list":
            return _list()
        if a.cmd == "cache":
            return _cache_check(a)
        if a.cmd == "pair":
            return _pair(a)
        return _lines(a)
    except cache.CorruptCache as exc:
        print(f"corrupt cache: {exc}", file=sys.stderr)
        return EXIT_ERROR
