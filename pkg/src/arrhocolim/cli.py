"""Command-line front end.

Exit codes: 0 all checks pass, 1 a property was violated, 2 bad usage or
unreadable input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .arrangement import (
    Arrangement,
    ArrangementError,
    FormulaError,
    load_arrangement,
    random_arrangement,
    random_formula,
    subdivide_arrangement,
    union_all,
)
from .complex_core import CellComplex, homology_of, validate_complex
from .fiber_census import (
    BoxFamily3D,
    FamilyError,
    box_census,
    census,
    load_family,
    sweep_growth,
)
from .fixtures import ARRANGEMENTS, projective_plane
from .hocolim import (
    build_hocolim,
    compare_hocolim_oracles,
    diagram_signature,
    truncation_comparison,
    union_comparison,
    verify_comparison_corollary,
)
from .nerve_thickening import thickened_model_check, thickened_skeleton_model


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    m: int | None = None
    n: int | None = None
    seed: int = 0
    trials: int = 20
    grid_res: int = 8
    sweep_n: list[int] | None = None
    out: str | None = None
    format: str = "json"


def _sweep_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if len(values) < 3 or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("--sweep-n needs at least three positive integers")
    return values


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arrhocolim", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, input_required=False):
        sp.add_argument("--input", required=input_required, help="input file")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        return sp

    common(sub.add_parser("homology", help="homology of an arrangement or cell complex"), True)
    h = common(sub.add_parser("hocolim", help="build hocolim_m and compare it with the union"), True)
    h.add_argument("--m", type=_nonneg)
    v = common(sub.add_parser("verify", help="run the property suite"))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=_nonneg, default=20)
    c = common(sub.add_parser("census", help="fiber census of a slab or box family"))
    c.add_argument("--m", type=_nonneg)
    c.add_argument("--grid-res", type=_positive, default=8)
    c.add_argument("--sweep-n", type=_sweep_list)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=_positive, default=10)
    t = common(sub.add_parser("thicken-check", help="thickened-skeleton model against sk_m"))
    t.add_argument("--n", type=_positive)
    t.add_argument("--m", type=_nonneg)
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    for name in ("input", "m", "n", "seed", "trials", "grid_res", "sweep_n", "out", "format"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    return cfg


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def load_cells(text: str) -> CellComplex:
    """cells-v1: {"format": "cells-v1", "dims": [...], "incidences": [[cell, facet, coeff], ...]}."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    dims = doc.get("dims")
    inc = doc.get("incidences")
    if not isinstance(dims, list) or not all(isinstance(d, int) and d >= 0 for d in dims):
        raise UsageError("dims: expected a list of nonnegative integers")
    if not isinstance(inc, list) or not all(isinstance(t, list) and len(t) == 3 and all(isinstance(x, int) for x in t) for t in inc):
        raise UsageError("incidences: expected a list of [cell, facet, coefficient] triples")
    return CellComplex(dims, {(c, f): v for c, f, v in inc})


def _load_input(path: str):
    text = _read(path)
    try:
        fmt = json.loads(text).get("format")
    except (json.JSONDecodeError, AttributeError):
        fmt = None
    if fmt == "cells-v1":
        return load_cells(text)
    try:
        return load_arrangement(text)
    except ArrangementError as e:
        raise UsageError(str(e)) from None


def _emit(cfg: RunConfig, body: dict | str) -> None:
    if isinstance(body, dict):
        text = json.dumps({"tool": "arrhocolim", "version": __version__, "config": asdict(cfg), **body}, indent=2) + "\n"
    else:
        text = body
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _info(cfg: RunConfig, msg: str) -> None:
    print(msg, file=sys.stderr if cfg.out is None else sys.stdout)


# --- subcommands -------------------------------------------------------------------


def run_homology(cfg: RunConfig) -> int:
    obj = _load_input(cfg.input)
    if isinstance(obj, CellComplex):
        report = validate_complex(obj)
        body = {"validation": report.to_json()}
        if report.ok:
            body["homology"] = homology_of(obj).to_json()
        _emit(cfg, body)
        return 0 if report.ok else 1
    arr = obj
    body = {
        "ambient": homology_of(arr.ambient).to_json(),
        "sets": [{"name": nm, "homology": homology_of(arr.ambient, arr.sets[i]).to_json()} for i, nm in enumerate(arr.names)],
        "union": homology_of(arr.ambient, union_all(arr)).to_json(),
    }
    _emit(cfg, body)
    return 0


def run_hocolim(cfg: RunConfig) -> int:
    arr = _load_input(cfg.input)
    if not isinstance(arr, Arrangement):
        raise UsageError("hocolim needs an arr-v1 arrangement")
    m = arr.n - 1 if cfg.m is None else cfg.m
    if m > arr.n - 1:
        raise UsageError(f"--m must lie in 0..{arr.n - 1}")
    cfg.m = m
    h = build_hocolim(arr, m)
    validation = validate_complex(h.complex)
    checks = [compare_hocolim_oracles(arr, m), truncation_comparison(arr, m), union_comparison(arr)]
    body = {
        "cells": len(h.complex),
        "cells_by_dim": h.complex.count_by_dim(),
        "validation": validation.to_json(),
        "homology": h.homology().to_json(),
        "checks": [c.to_json() for c in checks],
    }
    _emit(cfg, body)
    return 0 if validation.ok and all(checks) else 1


def _arrangement_checks(name: str, arr: Arrangement, rng: random.Random, seed=None) -> list[dict]:
    """Every property of the suite on one arrangement, as failure records."""
    failures = []

    def fail(check, **detail):
        failures.append({"instance": name, "seed": seed, "check": check, **detail})

    amb = validate_complex(arr.ambient)
    if not amb.ok:
        fail("ambient-valid", violations=amb.to_json()["violations"])
        return failures
    for m in range(arr.n):
        h = build_hocolim(arr, m)
        rep = validate_complex(h.complex)
        if not rep.ok:
            fail("hocolim-valid", m=m, violations=rep.to_json()["violations"])
        for check in (compare_hocolim_oracles(arr, m), truncation_comparison(arr, m)):
            if not check:
                fail(check.check, m=m, report=check.to_json())
    u = union_comparison(arr)
    if not u:
        fail(u.check, report=u.to_json())
    if arr.simplicial is not None:
        for _ in range(2):
            theta = random_formula(rng, arr.n)
            c = verify_comparison_corollary(arr, theta)
            if not c:
                fail(c.check, report=c.to_json())
        m = min(1, arr.n - 1)
        if diagram_signature(arr, m) != diagram_signature(subdivide_arrangement(arr), m):
            fail("signature-subdivision", m=m)
    return failures


def run_verify(cfg: RunConfig) -> int:
    failures: list[dict] = []
    instances = 0
    rng = random.Random(cfg.seed)
    if cfg.input:
        obj = _load_input(cfg.input)
        instances += 1
        if isinstance(obj, CellComplex):
            rep = validate_complex(obj)
            if not rep.ok:
                failures.append({"instance": cfg.input, "check": "complex-valid", "violations": rep.to_json()["violations"]})
        else:
            failures += _arrangement_checks(cfg.input, obj, rng)
    else:
        for name, make in ARRANGEMENTS.items():
            instances += 1
            failures += _arrangement_checks(name, make(), rng)
        rp2 = homology_of(projective_plane())
        instances += 1
        if rp2.betti != (1, 0, 0) or rp2.torsion_at(1) != (2,):
            failures.append({"instance": "projective-plane", "check": "torsion", "homology": rp2.to_json()})
        for n in range(1, 6):
            for m in range(n):
                instances += 1
                t = thickened_model_check(n, m)
                if not t or not validate_complex(thickened_skeleton_model(n, m).model.to_cell_complex()).ok:
                    failures.append({"instance": f"thickening n={n} m={m}", "check": "thickening", "report": t.to_json()})
    for k in range(cfg.trials):
        seed = cfg.seed * 100_003 + k
        r = random.Random(seed)
        arr = random_arrangement(seed, vertex_count=r.randint(2, 6), ambient_density=0.6, n=r.randint(1, 4), set_density=0.6)
        instances += 1
        failures += _arrangement_checks("random", arr, r, seed)
    _emit(cfg, {"instances": instances, "pass": not failures, "failures": failures})
    _info(cfg, f"verify: {instances} instances, {len(failures)} failures")
    return 0 if not failures else 1


def run_census(cfg: RunConfig) -> int:
    if cfg.input is None and cfg.sweep_n is None:
        raise UsageError("census needs --input or --sweep-n")
    report = None
    if cfg.input is not None:
        try:
            fam = load_family(_read(cfg.input))
        except FamilyError as e:
            raise UsageError(str(e)) from None
        if cfg.m is not None and cfg.m > fam.n - 1:
            raise UsageError(f"--m must lie in 0..{fam.n - 1}")
        if isinstance(fam, BoxFamily3D):
            report = box_census(fam, cfg.grid_res, cfg.m)
        else:
            report = census(fam, cfg.m)
    runs = fit = None
    if cfg.sweep_n is not None:
        runs, fit = sweep_growth(cfg.sweep_n, cfg.trials, cfg.seed)
    ok = (report is None or report.constancy_ok) and (runs is None or all(r["constancy_ok"] for r in runs))
    if cfg.format == "csv":
        parts = []
        if report is not None:
            parts.append(report.to_csv())
        if runs is not None:
            lines = ["n,seed,distinct_count"] + [f"{r['n']},{r['seed']},{r['distinct_count']}" for r in runs]
            lines.append(f"# growth_fit slope={fit.slope!r} intercept={fit.intercept!r}")
            parts.append("\n".join(lines) + "\n")
        _emit(cfg, "\n".join(parts))
    else:
        body = {"pass": ok}
        if report is not None:
            body["census"] = report.to_json()
        if runs is not None:
            body["sweep"] = runs
            body["growth_fit"] = fit.to_json()
        _emit(cfg, body)
    if report is not None:
        _info(cfg, f"distinct signatures: {report.distinct_count}")
    if fit is not None:
        _info(cfg, f"growth slope: {fit.slope:.4f}")
    return 0 if ok else 1


def run_thicken_check(cfg: RunConfig) -> int:
    if cfg.m is not None and cfg.n is None:
        raise UsageError("--m needs --n")
    if cfg.n is not None and cfg.m is not None and cfg.m > cfg.n - 1:
        raise UsageError(f"--m must lie in 0..{cfg.n - 1}")
    ns = [cfg.n] if cfg.n is not None else range(1, 8)
    checks = []
    for n in ns:
        for m in ([cfg.m] if cfg.m is not None else range(n)):
            checks.append(thickened_model_check(n, m))
    ok = all(checks)
    _emit(cfg, {"pass": ok, "checks": [c.to_json() for c in checks]})
    return 0 if ok else 1


COMMANDS = {
    "homology": run_homology,
    "hocolim": run_hocolim,
    "verify": run_verify,
    "census": run_census,
    "thicken-check": run_thicken_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = _config(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ArrangementError, FamilyError, FormulaError) as e:
        print(f"arrhocolim {cfg.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
