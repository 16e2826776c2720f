"""Command-line front end.

    thurston bound --job JOB.json [--epsilon 1|2] [--strict]
    thurston alexander --job JOB.json [--polytope]
    thurston batch FILE_OR_DIR [--jobs N] [--format json|text]

Exit codes: 0 success, 1 parse error, 2 inconsistent configuration,
3 batch job failure (or an engine mismatch in the cross check).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .bounds import (
    CoefficientConfig,
    CrossValidationError,
    InconsistentConfiguration,
    compute_bound,
)
from .commalg.alexander import alexander_fox_norm, delta_sigma, newton_polytope
from .presentations import (
    Character,
    CohomologyClass,
    GroupPresentation,
    InvalidDTCode,
    PresentationSyntaxError,
    ZeroClassError,
    abelianize,
    class_from_generator_values,
    parse_presentation,
    wirtinger_from_dt,
)

__all__ = ["JobSpec", "JobError", "load_job", "run_bound", "run_alexander", "run_batch", "dumps", "main"]

log = logging.getLogger("thurston")

EXIT_OK, EXIT_PARSE, EXIT_INCONSISTENT, EXIT_FAILED = 0, 1, 2, 3
JOBS_ENV = "THURSTON_JOBS"


class JobError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code, self.kind, self.message = code, kind, message

    def to_json(self) -> dict:
        return {"error": {"code": self.code, "kind": self.kind, "message": self.message}}


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, so output round-trips."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


@dataclass
class JobSpec:
    name: str
    presentation: GroupPresentation
    psi: CohomologyClass | None
    config: CoefficientConfig
    mode: str = "manifold"
    epsilon: int | None = None
    cross_validate: bool = False
    chi_minus: int | None = None
    command: str = "bound"
    polytope: bool = False
    warnings: list = field(default_factory=list)


def _parse_error(msg: str) -> JobError:
    return JobError(EXIT_PARSE, "parse", msg)


def _int_list(v, what: str) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise _parse_error(f"{what} must be a list of integers")
    return v


def _presentation(obj: dict) -> GroupPresentation:
    has_p, has_dt = "presentation" in obj, "dt_code" in obj
    if has_p == has_dt:
        raise _parse_error("give exactly one of 'presentation' and 'dt_code'")
    try:
        if has_dt:
            return wirtinger_from_dt(_int_list(obj["dt_code"], "dt_code"))
        if not isinstance(obj["presentation"], str):
            raise _parse_error("presentation must be a string")
        return parse_presentation(obj["presentation"])
    except (PresentationSyntaxError, InvalidDTCode) as exc:
        raise _parse_error(str(exc)) from None


def _coefficients(obj, sigma: Character) -> CoefficientConfig:
    if obj is None:
        return CoefficientConfig("seifert", sigma)
    if isinstance(obj, str):
        obj = {"kind": obj}
    if not isinstance(obj, dict) or "kind" not in obj:
        raise _parse_error("coefficients must be an object with a 'kind'")
    kind = obj["kind"]
    order = obj.get("field_order")
    if kind in ("seifert", "alexander_fox"):
        return CoefficientConfig(kind, sigma, field_order=order)
    if kind != "custom_skew":
        raise _parse_error(f"unknown coefficient kind {kind!r}")
    nvars = obj.get("nvars", 0)
    alpha = obj.get("alpha", {}) or {}
    matrix = alpha.get("matrix", [[int(i == j) for j in range(nvars)] for i in range(nvars)])
    scalars = alpha.get("scalars")
    images = obj.get("images")
    if not isinstance(images, list):
        raise _parse_error("custom_skew needs 'images': [[t_degree, coefficient], ...]")
    try:
        imgs = tuple((int(d), str(c)) for d, c in images)
    except (TypeError, ValueError):
        raise _parse_error("each image must be a pair [t_degree, coefficient]") from None
    cyclic = obj.get("cyclic")
    if cyclic not in (None, True, False):
        raise _parse_error("'cyclic' must be true, false or absent")
    return CoefficientConfig(
        "custom_skew", sigma, field_order=order, nvars=int(nvars),
        alpha_matrix=tuple(tuple(int(x) for x in row) for row in matrix),
        alpha_scalars=None if scalars is None else tuple(str(s) for s in scalars),
        images=imgs, cyclic=cyclic, provenance=str(obj.get("provenance", "")),
    )


def _mode(obj, spec: JobSpec) -> None:
    if obj is None or obj == "manifold":
        return
    if obj == "complex":
        spec.mode = "complex"
        return
    if isinstance(obj, dict) and set(obj) == {"manifold"}:
        inner = obj["manifold"] or {}
        if "epsilon" in inner:
            spec.epsilon = inner["epsilon"]
            if spec.epsilon not in (1, 2):
                raise _parse_error("epsilon must be 1 or 2")
        return
    if isinstance(obj, dict) and set(obj) == {"complex"}:
        spec.mode = "complex"
        return
    raise _parse_error("mode must be \"complex\" or {\"manifold\": {\"epsilon\": 1|2}}")


def load_job(obj, name: str = "job") -> JobSpec:
    """Validate a decoded job object.  Raises JobError."""
    if not isinstance(obj, dict):
        raise _parse_error("a job must be a JSON object")
    p = _presentation(obj)
    ab = abelianize(p)
    sig = obj.get("sigma")
    try:
        if sig is None:
            sigma = Character.trivial(ab)
        else:
            sigma = Character(int(sig.get("order", 1)), tuple(_int_list(sig.get("images", []), "sigma.images")))
        sigma.check(ab)
    except (AttributeError, TypeError, ValueError) as exc:
        raise _parse_error(f"sigma: {exc}") from None
    psi = None
    if "psi" in obj and "psi_on_generators" in obj:
        raise _parse_error("give at most one of 'psi' and 'psi_on_generators'")
    if "psi" in obj:
        v = _int_list(obj["psi"], "psi")
        if len(v) != ab.betti:
            raise _parse_error(f"psi has {len(v)} coordinates, but b1 = {ab.betti}")
        psi = CohomologyClass(v)
    elif "psi_on_generators" in obj:
        v = _int_list(obj["psi_on_generators"], "psi_on_generators")
        if len(v) != p.generator_count:
            raise _parse_error(f"psi_on_generators needs {p.generator_count} values")
        try:
            psi = class_from_generator_values(ab, v)
        except ValueError as exc:
            raise JobError(EXIT_INCONSISTENT, "inconsistent", str(exc)) from None
    elif ab.betti == 1:
        psi = CohomologyClass((1,))
    try:
        cfg = _coefficients(obj.get("coefficients"), sigma)
    except ValueError as exc:
        raise _parse_error(str(exc)) from None
    spec = JobSpec(name=str(obj.get("name", name)), presentation=p, psi=psi, config=cfg)
    _mode(obj.get("mode"), spec)
    for chk in obj.get("checks", []) or []:
        if chk == "cross_validate":
            spec.cross_validate = True
        elif isinstance(chk, dict) and set(chk) == {"fibered"}:
            chi = (chk["fibered"] or {}).get("chi_minus")
            if not isinstance(chi, int) or chi < 0:
                raise _parse_error("fibered check needs a nonnegative integer chi_minus")
            spec.chi_minus = chi
        else:
            raise _parse_error(f"unknown check {chk!r}")
    spec.command = obj.get("command", "bound")
    if spec.command not in ("bound", "alexander"):
        raise _parse_error(f"unknown command {spec.command!r}")
    spec.polytope = bool(obj.get("polytope", False))
    return spec


def run_bound(spec: JobSpec, epsilon: int | None = None, strict: bool = False) -> dict:
    if spec.psi is None:
        raise _parse_error("psi is required when b1 != 1")
    warnings = list(spec.warnings)
    eps = epsilon if epsilon is not None else spec.epsilon
    if spec.mode == "manifold" and eps is None:
        if strict:
            raise _parse_error("strict mode: epsilon must be given (1 or 2)")
        eps = 1
        warnings.append("epsilon not given; using 1 (boundary assumed not a union of spheres)")
    try:
        report = compute_bound(spec.presentation, spec.psi, spec.config, spec.mode,
                               eps if spec.mode == "manifold" else None,
                               cross_check=spec.cross_validate, fiber_chi_minus=spec.chi_minus)
    except ZeroClassError as exc:
        raise JobError(EXIT_INCONSISTENT, "inconsistent", str(exc)) from None
    except InconsistentConfiguration as exc:
        raise JobError(EXIT_INCONSISTENT, "inconsistent", str(exc)) from None
    except CrossValidationError as exc:
        raise JobError(EXIT_FAILED, "cross_check_mismatch", str(exc)) from None
    except ValueError as exc:
        raise _parse_error(str(exc)) from None
    report.warnings.extend(warnings)
    return report.to_json()


def run_alexander(spec: JobSpec, polytope: bool = False) -> dict:
    ab = abelianize(spec.presentation)
    delta = delta_sigma(spec.presentation, spec.config.character, ab)
    out = {"delta": str(delta), "betti": ab.betti, "variables": list(delta.names)}
    if spec.psi is not None:
        if spec.psi.is_zero():
            raise JobError(EXIT_INCONSISTENT, "inconsistent", "nonzero class required")
        out["psi"] = list(spec.psi.coeffs)
        out["norm"] = alexander_fox_norm(delta, spec.psi.coeffs)
    if polytope or spec.polytope:
        out["polytope"] = newton_polytope(delta).to_json() if delta else []
    return out


def _read_job(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise _parse_error(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise _parse_error(f"{path}: invalid JSON: {exc}") from None


def _batch_entries(source: str) -> list[tuple[str, str]]:
    """(name, JSON text) per job, in input order."""
    path = Path(source)
    if path.is_dir():
        return [(f.stem, f.read_text(encoding="utf-8")) for f in sorted(path.glob("*.json"))]
    entries = []
    for k, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if line.strip() and not line.lstrip().startswith("#"):
            entries.append((f"line{k}", line))
    return entries


def _batch_one(item: tuple[str, str]) -> dict:
    name, text = item
    try:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise _parse_error(f"invalid JSON: {exc}") from None
        spec = load_job(obj, name)
        name = spec.name
        if spec.command == "alexander":
            result = run_alexander(spec)
        else:
            result = run_bound(spec)
        return {"name": name, "status": "ok", "command": spec.command, "report": result}
    except JobError as exc:
        return {"name": name, "status": "error", **exc.to_json()}
    except Exception as exc:  # keep the batch going; the record says what broke
        err = JobError(EXIT_FAILED, "internal", f"{type(exc).__name__}: {exc}")
        return {"name": name, "status": "error", **err.to_json()}


def worker_count(requested: int | None) -> int:
    """--jobs wins, then the THURSTON_JOBS environment variable, then 1."""
    if requested is not None:
        return max(1, requested)
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer %s=%r", JOBS_ENV, env)
    return 1


def run_batch(source: str, jobs: int | None = None) -> list[dict]:
    entries = _batch_entries(source)
    n = worker_count(jobs)
    if n == 1 or len(entries) <= 1:
        return [_batch_one(e) for e in entries]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(_batch_one, entries))


def _summary(results: list[dict]) -> list[dict]:
    rows = []
    for r in results:
        rep = r.get("report", {})
        rows.append({
            "name": r["name"],
            "status": r["status"],
            "rank": rep.get("rank", rep.get("norm")),
            "bound": rep.get("bound"),
        })
    return rows


def format_table(rows: list[dict]) -> str:
    head = ("name", "status", "rank", "bound")
    cells = [head] + [tuple("-" if r[h] is None else str(r[h]) for h in head) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(head))]
    lines = ["  ".join(c[i].ljust(widths[i]) for i in range(len(head))).rstrip() for c in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def _single(args, fn) -> int:
    try:
        spec = load_job(_read_job(args.job), Path(args.job).stem)
        _emit(fn(spec))
        return EXIT_OK
    except JobError as exc:
        _emit(exc.to_json())
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thurston", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    b = sub.add_parser("bound", help="lower bound for the norm of psi")
    b.add_argument("--job", required=True)
    b.add_argument("--epsilon", type=int, choices=(1, 2))
    b.add_argument("--strict", action="store_true", help="require epsilon in manifold mode")
    a = sub.add_parser("alexander", help="twisted Alexander polynomial and norm")
    a.add_argument("--job", required=True)
    a.add_argument("--polytope", action="store_true", help="include Newton polytope vertices")
    t = sub.add_parser("batch", help="run newline-delimited jobs or a directory of job files")
    t.add_argument("file")
    t.add_argument("--jobs", type=int, help=f"worker processes (default ${JOBS_ENV} or 1)")
    t.add_argument("--format", choices=("json", "text"), default="json")
    return ap


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.command == "bound":
        def fn(spec):
            rep = run_bound(spec, args.epsilon, args.strict)
            for w in rep["warnings"]:
                log.warning(w)
            return rep
        return _single(args, fn)
    if args.command == "alexander":
        return _single(args, lambda spec: run_alexander(spec, args.polytope))
    try:
        results = run_batch(args.file, args.jobs)
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_PARSE
    rows = _summary(results)
    if args.format == "json":
        _emit({"results": results, "summary": rows})
    else:
        for r in results:
            if r["status"] == "error":
                print(f"# {r['name']}: {r['error']['message']}")
        print(format_table(rows))
    return EXIT_FAILED if any(r["status"] == "error" for r in results) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
