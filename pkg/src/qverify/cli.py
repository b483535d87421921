"""qverify command line: single checks, seeded sweeps, JSON reports.

Subcommands:

* ``qverify list``                      -- print the registry ids
* ``qverify check <id> --params FILE``  -- one identity at one point
* ``qverify sweep [...] --out r.json``  -- seeded multi-identity sweep

Parameter files are TOML: complex values as two-element arrays
``[re, im]`` or bare reals, integers bare.  Vector parameters use
numbered keys (``x1``, ``x2``, ``N1``, ...) with ``n`` giving the count.
Exit codes: 0 pass, 1 fail, 2 skipped / domain, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from .qcore import QContext, QVerifyError
from .identities import case_ids, check, get_case, sample

try:
    import tomllib as _toml  # Python 3.11+
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    _toml = None

_EXIT_PASS = 0
_EXIT_FAIL = 1
_EXIT_SKIP = 2
_EXIT_INPUT = 3

# attempts per requested sample slot: skipped draws are resampled with
# fresh derived seeds, never counted toward the requested total
_RESAMPLE_CAP = 40


def _parse_toml_value(text: str):
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        inner = text[1:-1].strip()
        if not inner:
            return []
        return [_parse_toml_value(part) for part in inner.split(",")]
    if text.startswith('"') and text.endswith('"') and len(text) >= 2:
        return text[1:-1]
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"unsupported TOML value: {text!r}") from None


def _parse_flat_toml(text: str) -> dict:
    """Minimal reader for the flat key = value subset parameter files use."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            raise ValueError(f"line {lineno}: tables are not supported in parameter files")
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, _, val = line.partition("=")
        out[key.strip()] = _parse_toml_value(val)
    return out


def load_param_file(path: str) -> dict:
    with open(path, "rb") as fh:
        data = fh.read()
    if _toml is not None:
        return _toml.loads(data.decode("utf-8"))
    return _parse_flat_toml(data.decode("utf-8"))


def _coerce_scalar(val):
    if isinstance(val, bool):
        raise ValueError("boolean parameter values are not supported")
    if isinstance(val, int):
        return val
    if isinstance(val, float):
        return complex(val)
    if isinstance(val, (list, tuple)) and len(val) == 2 and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in val
    ):
        return complex(float(val[0]), float(val[1]))
    raise ValueError(f"cannot interpret parameter value {val!r}")


def params_from_file_map(case, raw: dict) -> dict:
    """Assemble a case parameter map from flat TOML keys.

    Scalars come straight from their names; vector parameters are gathered
    from numbered keys name1..nameK in order.
    """
    params = {}
    used = set()
    for name in case.param_names:
        if name not in raw:
            raise ValueError(f"missing parameter {name!r}")
        val = raw[name]
        params[name] = int(val) if name == "n" else _coerce_scalar(val)
        used.add(name)
    for name in case.vector_names:
        vec = []
        i = 1
        while f"{name}{i}" in raw:
            item = raw[f"{name}{i}"]
            used.add(f"{name}{i}")
            if name in ("N", "m"):
                vec.append(int(item))
            else:
                vec.append(_coerce_scalar(item))
            i += 1
        params[name] = vec
    unknown = set(raw) - used
    if unknown:
        raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
    if "n" in params:
        for name in case.vector_names:
            if len(params[name]) != params["n"]:
                raise ValueError(
                    f"vector {name!r} has {len(params[name])} entries, expected n = {params['n']}"
                )
    return params


def _make_ctx(q: float, tol: float | None) -> QContext:
    max_terms = int(os.environ.get("QVERIFY_MAX_TERMS", 0)) or 10000
    kwargs = {"q": q, "max_terms": max_terms}
    if tol is not None:
        kwargs["identity_tol"] = tol
    return QContext(**kwargs)


def _report_json(report) -> dict:
    return report.to_dict()


def _print_human(report) -> None:
    print(f"identity : {report.id}")
    print(f"verdict  : {report.verdict}" + (f" ({report.reason})" if report.reason else ""))
    print(f"lhs      : {report.lhs}")
    print(f"rhs      : {report.rhs}")
    print(f"residual : abs = {report.abs_residual:.3e}, rel = {report.rel_residual:.3e}")
    print(f"elapsed  : {report.elapsed:.3f} s")


def cmd_list(args) -> int:
    for cid in case_ids():
        case = get_case(cid)
        print(f"{cid:24s} [{case.family}]")
    return _EXIT_PASS


def cmd_check(args) -> int:
    try:
        case = get_case(args.identity)
        raw = load_param_file(args.params)
        params = params_from_file_map(case, raw)
    except (OSError, ValueError, QVerifyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT
    ctx = _make_ctx(args.q, args.tol)
    report = check(args.identity, params, ctx)
    if args.json:
        print(json.dumps(_report_json(report), indent=2))
    else:
        _print_human(report)
    if report.verdict == "pass":
        return _EXIT_PASS
    if report.verdict == "skipped":
        return _EXIT_SKIP
    return _EXIT_FAIL


def run_sweep_cell(case_id: str, slot: int, base_seed: int, q: float, tol: float | None, mode: str):
    """One (identity, sample slot, q) cell; resamples skips deterministically."""
    ctx = _make_ctx(q, tol)
    last = None
    for attempt in range(_RESAMPLE_CAP):
        seed = base_seed + 1000 * slot + attempt
        try:
            params = sample(case_id, seed, ctx, mode=mode)
        except QVerifyError as exc:
            return {
                "id": case_id, "q": q, "slot": slot, "sample_seed": seed,
                "params": {}, "lhs": [0.0, 0.0], "rhs": [0.0, 0.0],
                "abs_residual": 0.0, "rel_residual": 0.0,
                "verdict": "skipped", "reason": f"sampling: {exc}", "elapsed": 0.0,
            }
        report = check(case_id, params, ctx, seed=seed)
        last = report
        if report.verdict != "skipped":
            break
    out = _report_json(last)
    out["q"] = q
    out["slot"] = slot
    return out


@dataclass(frozen=True)
class SweepConfig:
    """A validated sweep request: identities, sampling plan and output."""

    identities: tuple
    samples: int = 50
    seed: int = 0
    mode: str = "complex"
    tol: float | None = None
    q_values: tuple = (0.3, 0.5, 0.8)
    out: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.mode not in ("real", "complex"):
            raise ValueError("mode must be real or complex")
        known = set(case_ids())
        bad = [i for i in self.identities if i not in known]
        if bad:
            raise ValueError(f"unknown identities {bad}")
        if not self.q_values:
            raise ValueError("at least one q value required")


def run_sweep(config: SweepConfig) -> tuple[dict, int]:
    """Execute a sweep; returns (report document, exit code)."""
    cells = [
        (cid, slot, q)
        for cid in sorted(config.identities)
        for slot in range(config.samples)
        for q in config.q_values
    ]
    t0 = time.time()
    if config.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(
                pool.map(
                    _sweep_cell_star,
                    [(cid, slot, config.seed, q, config.tol, config.mode)
                     for cid, slot, q in cells],
                    chunksize=4,
                )
            )
    else:
        results = [
            run_sweep_cell(cid, slot, config.seed, q, config.tol, config.mode)
            for cid, slot, q in cells
        ]
    elapsed = time.time() - t0

    results.sort(key=lambda r: (r["id"], r["slot"], r["q"]))
    summary = {}
    for r in results:
        s = summary.setdefault(
            r["id"], {"pass": 0, "fail": 0, "skipped": 0, "max_rel_residual": 0.0}
        )
        s[r["verdict"]] += 1
        if r["verdict"] != "skipped":
            s["max_rel_residual"] = max(s["max_rel_residual"], r["rel_residual"])
    doc = {
        "config": {
            "identities": sorted(config.identities),
            "samples": config.samples,
            "seed": config.seed,
            "mode": config.mode,
            "tol": config.tol,
            "q": list(config.q_values),
        },
        "summary": {k: summary[k] for k in sorted(summary)},
        "reports": results,
        "elapsed": elapsed,
    }
    fails = sum(s["fail"] for s in summary.values())
    return doc, (_EXIT_PASS if fails == 0 else _EXIT_FAIL)


def cmd_sweep(args) -> int:
    ids = case_ids() if (not args.identity or args.identity == ["all"]) else args.identity
    try:
        qs = tuple(float(tok) for tok in args.q.split(",") if tok.strip())
        config = SweepConfig(
            identities=tuple(ids),
            samples=args.samples,
            seed=args.seed,
            mode=args.mode,
            tol=args.tol,
            q_values=qs,
            out=args.out,
            jobs=args.jobs,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT

    doc, code = run_sweep(config)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    summary = doc["summary"]
    fails = sum(s["fail"] for s in summary.values())
    print(f"{'identity':24s} {'pass':>5s} {'fail':>5s} {'skip':>5s}  max rel residual")
    for cid in sorted(summary):
        s = summary[cid]
        print(f"{cid:24s} {s['pass']:5d} {s['fail']:5d} {s['skipped']:5d}  {s['max_rel_residual']:.3e}")
    print(f"total: {len(doc['reports'])} cells, {fails} fails, {doc['elapsed']:.1f} s"
          + (f", report -> {config.out}" if config.out else ""))
    return code


def _sweep_cell_star(packed):
    return run_sweep_cell(*packed)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qverify", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the identity registry").set_defaults(func=cmd_list)

    chk = sub.add_parser("check", help="check one identity at a parameter point")
    chk.add_argument("identity")
    chk.add_argument("--params", required=True, help="TOML parameter file")
    chk.add_argument("--q", type=float, default=0.5, help="base q (default 0.5)")
    chk.add_argument("--tol", type=float, default=None, help="identity tolerance override")
    chk.add_argument("--json", action="store_true", help="emit the report as JSON")
    chk.set_defaults(func=cmd_check)

    swp = sub.add_parser("sweep", help="seeded sweep over identities and q values")
    swp.add_argument("--identity", nargs="*", default=["all"],
                     help="identity ids (default: all)")
    swp.add_argument("--samples", type=int, default=50)
    swp.add_argument("--seed", type=int, default=0)
    swp.add_argument("--mode", choices=("real", "complex"), default="complex")
    swp.add_argument("--tol", type=float, default=None)
    swp.add_argument("--q", default="0.3,0.5,0.8", help="comma-separated q values")
    swp.add_argument("--out", default=None, help="JSON report path")
    swp.add_argument("--jobs", type=int, default=1, help="worker processes")
    swp.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
