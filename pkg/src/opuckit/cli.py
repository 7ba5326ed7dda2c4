"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad input,
3 internal inconsistency (e.g. det Q not divisible by G).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import cgrec, christoffel as X, verify as V
from .descriptor import format_complex, measure_from_descriptor, parse_complex
from .errors import ConsistencyError, DomainError, InvalidMeasureError, UnsupportedOperationError
from .kernels import kernel_cd, kernel_sum
from .opuc import build_opuc

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
COMMANDS = ("kernel", "transform", "cg", "transform-cg", "verify")


@dataclass
class RunConfig:
    command: str
    family: dict = field(default_factory=lambda: {"family": "lebesgue"})
    n: int = 5
    m: int | None = None
    z: complex = 0j
    w: complex = 1 + 0j
    zeros: tuple = ()
    leading: complex | None = None
    admissible: str = "floor"
    xi: str = cgrec.XI_CORRECTED
    suite: str = "all"
    tol: float | None = None
    format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")


def _family(args) -> dict:
    text = args.family.strip()
    if text.startswith("{"):
        return json.loads(text)
    desc = {"family": text}
    for key in ("alpha", "q", "b"):
        val = getattr(args, key)
        if val is not None:
            desc[key] = val
    return desc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opuckit", description="CD kernels of measures on the unit circle")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True):
        if family:
            sp.add_argument("--family", default="lebesgue",
                            help="family name or JSON descriptor, e.g. '{\"family\":\"hyper\",\"b\":\"1\"}'")
            sp.add_argument("--alpha", help="Geronimus parameter")
            sp.add_argument("--q", help="q-family base")
            sp.add_argument("--b", help="q-family or hypergeometric parameter")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--tol", type=float)
        sp.add_argument("--seed", type=int, default=0)

    k = sub.add_parser("kernel", help="evaluate K_n(z, w)")
    common(k)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--z", required=True)
    k.add_argument("--w", required=True)

    t = sub.add_parser("transform", help="K_n(., w; nu) for d nu = G(zeta) zeta^-m d mu")
    common(t)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--w", required=True)
    t.add_argument("--zeros", nargs="+", required=True,
                   help="zeros of G; use --zeros=a,b,... when a value starts with '-'")
    t.add_argument("--m", type=int)
    t.add_argument("--leading")
    t.add_argument("--set", dest="admissible", choices=("floor", "ceil"), default="floor")

    c = sub.add_parser("cg", help="(c_n, g_n) table")
    common(c)
    c.add_argument("--n", type=int, required=True)

    tc = sub.add_parser("transform-cg", help="(c_n, g_n) of the transformed measure")
    common(tc)
    tc.add_argument("--n", type=int, required=True)
    tc.add_argument("--zeros", nargs="+", required=True)
    tc.add_argument("--m", type=int)
    tc.add_argument("--leading")
    tc.add_argument("--xi", choices=(cgrec.XI_CORRECTED, cgrec.XI_PRINTED), default=cgrec.XI_CORRECTED)

    v = sub.add_parser("verify", help="run acceptance suites")
    common(v, family=False)
    v.add_argument("--suite", choices=V.SUITES, default="all")
    return p


def config_from_args(args) -> RunConfig:
    kw = dict(command=args.command, format=args.format, tol=args.tol, seed=args.seed)
    if args.command != "verify":
        kw["family"] = _family(args)
        kw["n"] = args.n
    if args.command == "verify":
        kw["suite"] = args.suite
    if args.command == "kernel":
        kw["z"] = parse_complex(args.z)
    if args.command in ("kernel", "transform"):
        kw["w"] = parse_complex(args.w)
    if args.command in ("transform", "transform-cg"):
        kw["zeros"] = tuple(parse_complex(z) for tok in args.zeros for z in tok.split(",") if z)
        kw["m"] = args.m
        kw["leading"] = parse_complex(args.leading) if args.leading else None
    if args.command == "transform":
        kw["admissible"] = args.admissible
    if args.command == "transform-cg":
        kw["xi"] = args.xi
    return RunConfig(**kw)


# -- commands -------------------------------------------------------------------------

def _factor(cfg: RunConfig, mu):
    G = X.make_factor(cfg.zeros, mu, leading=cfg.leading)
    if cfg.m is not None and cfg.m != G.m:
        raise DomainError(f"--m {cfg.m} disagrees with {len(cfg.zeros)} zeros")
    return G


def run_kernel(cfg: RunConfig) -> tuple[int, list]:
    mu = measure_from_descriptor(cfg.family)
    t = build_opuc(mu, cfg.n + 1)
    s = kernel_sum(t, cfg.n, cfg.z, cfg.w)
    d = kernel_cd(t, cfg.n, cfg.z, cfg.w)
    return EXIT_OK, [{"measure": mu.describe(), "n": cfg.n, "z": format_complex(cfg.z),
                      "w": format_complex(cfg.w), "value": format_complex(s),
                      "value_cd": format_complex(d)}]


def run_transform(cfg: RunConfig) -> tuple[int, list]:
    mu = measure_from_descriptor(cfg.family)
    G = _factor(cfg, mu)
    t = build_opuc(mu, cfg.n + 2 * G.m + 1)
    P = X.admissible_floor(G.m) if cfg.admissible == "floor" else X.admissible_ceil(G.m)
    r = X.transform_kernel(t, P, G, cfg.n, cfg.w)
    row = {"measure": mu.describe(), "n": cfg.n, "w": format_complex(cfg.w),
           "G": [format_complex(x) for x in G.as_poly], "set": cfg.admissible,
           "degenerate": r.degenerate,
           "kernel": None if r.kernel_nu is None else [format_complex(x) for x in r.kernel_nu],
           "delta0": None if r.delta0 is None else format_complex(r.delta0),
           "deltaM": None if r.delta_m is None else format_complex(r.delta_m),
           "remainder": r.remainder_ratio}
    return EXIT_OK, [row]


def run_cg(cfg: RunConfig) -> tuple[int, list]:
    mu = measure_from_descriptor(cfg.family)
    c, g = mu.cgs(cfg.n)
    return EXIT_OK, [{"n": k + 1, "c": float(c[k]) + 0.0, "g": float(g[k])} for k in range(cfg.n)]


def run_transform_cg(cfg: RunConfig) -> tuple[int, list]:
    mu = measure_from_descriptor(cfg.family)
    G = _factor(cfg, mu)
    tc = cgrec.transformed_cg(mu, G, cfg.n, cfg.xi)
    return EXIT_OK, [{"n": k + 1, "c": float(tc.c[k]) + 0.0, "g": float(tc.g[k]),
                      "gamma": format_complex(tc.coeffs.gamma[k + 1])} for k in range(cfg.n)]


def run_verify(cfg: RunConfig) -> tuple[int, list]:
    crits = V.run_suite(cfg.suite, seed=cfg.seed, tol=cfg.tol)
    rows = [r.as_dict() for c in crits for r in c.rows]
    ok = all(c.passed for c in crits)
    return (EXIT_OK if ok else EXIT_FAIL), rows


HANDLERS = {"kernel": run_kernel, "transform": run_transform, "cg": run_cg,
            "transform-cg": run_transform_cg, "verify": run_verify}


def run(cfg: RunConfig) -> tuple[int, list]:
    return HANDLERS[cfg.command](cfg)


# -- output ---------------------------------------------------------------------------

def render(rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1, sort_keys=False) + "\n"
    keys: list = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    for r in rows:
        w.writerow([_cell(r.get(k)) for k in keys])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return ""
    return v


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        cfg = config_from_args(args)
        code, rows = run(cfg)
    except (ValueError, KeyError, DomainError, InvalidMeasureError, UnsupportedOperationError,
            json.JSONDecodeError, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(render(rows, cfg.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
