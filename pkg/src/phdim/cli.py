"""Command-line front end.

Every subcommand builds an :class:`ExperimentConfig` and hands it to
:func:`run`, so an experiment can be replayed from its JSON config with
``phdim run --config cfg.json``. Exit codes: 0 success, 2 invalid input,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from . import FORMAT_VERSION, __version__
from .filtration import BudgetExceeded, DEFAULT_BUDGET
from .fitting import DEFAULT_ALPHA_GRID
from .generators import FAMILIES, GeneratorSpec, generate
from .io import atomic_write, dumps, rows_to_csv
from .metric import PointCloud, read_points_or_metric

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3
COMMANDS = ("generate", "barcode", "dimension", "mst", "arcs", "bipartite", "stable", "xi",
            "tp-verify")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str
    family: str | None = None
    n: int | None = None
    seed: int = 0
    params: dict = field(default_factory=dict)
    complex: str = "rips"
    degree: int = 1
    sizes: list | None = None
    scales: list | None = None
    alpha_grid: list | None = None
    method: str | None = None
    input: str | None = None
    input_kind: str = "points"
    out: str | None = None
    csv: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.family is not None and self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if self.complex not in ("rips", "cech", "alpha2d"):
            raise ConfigError(f"unknown complex {self.complex!r}")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        extra = set(doc) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        if "command" not in doc:
            raise ConfigError("config needs a command")
        return cls(**doc)

    def spec(self, n: int | None = None) -> GeneratorSpec:
        if self.family is None:
            raise ConfigError("a generator family is required")
        return GeneratorSpec(self.family, int(n or self.n or 1), int(self.seed), dict(self.params))


def _load_input(cfg: ExperimentConfig):
    if cfg.input:
        try:
            return read_points_or_metric(cfg.input, cfg.input_kind)
        except OSError as exc:
            raise ConfigError(f"cannot read {cfg.input}: {exc}") from exc
    return generate(cfg.spec())


def _emit(cfg: ExperimentConfig, doc: dict, csv_text: str | None = None) -> None:
    """Write the JSON summary (and optional CSV) only once everything is computed."""
    doc = {"command": cfg.command, "config": asdict(cfg), **doc}
    text = dumps(doc)
    if cfg.csv and csv_text is not None:
        atomic_write(cfg.csv, csv_text)
    if cfg.out:
        atomic_write(cfg.out, text)
    else:
        sys.stdout.write(text)


def _cmd_generate(cfg):
    x = generate(cfg.spec())
    if isinstance(x, PointCloud):
        body = "\n".join(",".join(repr(float(v)) for v in row) for row in x.points) + "\n"
        kind = "points"
    else:
        body = "\n".join(",".join(repr(float(v)) for v in row) for row in x.dist) + "\n"
        kind = "metric"
    doc = {"spec": cfg.spec().to_dict(), "kind": kind, "size": len(x)}
    if cfg.out:
        atomic_write(cfg.out, body)
        atomic_write(str(cfg.out) + ".json", dumps({"command": "generate", **doc}))
    else:
        sys.stdout.write(body)


def _cmd_barcode(cfg):
    from .persistence import barcode
    x = _load_input(cfg)
    if cfg.complex != "rips" and not isinstance(x, PointCloud):
        raise ConfigError(f"{cfg.complex} needs point coordinates")
    kw = {} if cfg.complex == "alpha2d" else {"budget": int(cfg.params.get("budget", DEFAULT_BUDGET))}
    b = barcode(x, cfg.complex, max_dim=cfg.degree + 1, **kw)
    counts = {str(i): b.count(i) for i in range(cfg.degree + 1)}
    _emit(cfg, {"complex": cfg.complex, "counts": counts, "count": b.count(cfg.degree),
                "intervals": b.to_records()}, b.to_csv())


def _floats(xs, default):
    return [float(v) for v in (xs if xs else default)]


def _cmd_dimension(cfg):
    from . import dimension as dm
    method = (cfg.method or "box").replace("-", "_")
    alphas = _floats(cfg.alpha_grid, DEFAULT_ALPHA_GRID)
    if method == "box":
        pc = _load_input(cfg)
        est = dm.estimate_box_dimension(pc, _floats(cfg.scales, dm.DEFAULT_BOX_SCALES),
                                        cfg.params.get("variant", "grid"))
    elif method == "ph":
        est = dm.estimate_ph_dimension(cfg.spec(), cfg.degree, cfg.complex,
                                       cfg.sizes or dm.DEFAULT_PH_SIZES, alphas,
                                       cfg.params.get("workers"))
    elif method == "mst":
        est = dm.estimate_mst_dimension(cfg.spec(), cfg.sizes or dm.DEFAULT_PH_SIZES, alphas,
                                        cfg.params.get("workers"))
    elif method == "ph_complexity":
        est = dm.estimate_ph_complexity(cfg.spec(), cfg.degree, cfg.complex)
    else:
        raise ConfigError(f"unknown method {cfg.method!r}")
    if est.curve and method in ("ph", "mst"):
        csv_text = rows_to_csv(("alpha", "slope", "stderr"), est.curve)
    else:
        csv_text = rows_to_csv(("scale_or_size", "statistic", "fitted"), est.diagnostics)
    _emit(cfg, {"estimate": est.estimate, "window": list(est.window), "sizes": cfg.sizes,
                "seed": cfg.seed, "result": est.to_dict()}, csv_text)


def _cmd_mst(cfg):
    from .mst import e_alpha_mst, minimum_spanning_tree, verify_mst_ph0_correspondence
    x = _load_input(cfg)
    t = minimum_spanning_tree(x)
    alphas = _floats(cfg.alpha_grid, (1.0,))
    doc = {"n": t.n, "total_length": t.total_length,
           "e_alpha": {repr(a): e_alpha_mst(t, a) for a in alphas}}
    if isinstance(x, PointCloud) and cfg.params.get("check"):
        rep = verify_mst_ph0_correspondence(x, cfg.complex if cfg.complex != "alpha2d" else "cech")
        doc["correspondence"] = asdict(rep)
    _emit(cfg, doc, rows_to_csv(("j", "k", "length"), t.as_list()))


def _cmd_arcs(cfg):
    from .dimension import arcs_experiment
    r = arcs_experiment(cfg.sizes or (50, 100, 200, 400))
    rows = list(zip(r.sizes, r.counts, r.e11))
    _emit(cfg, r.to_dict(), rows_to_csv(("n", "ph1_count", "e11"), rows))


def _cmd_bipartite(cfg):
    from .filtration import rips_filtration
    from .generators import gen_bipartite_space
    from .persistence import persistent_homology
    level = int(cfg.params.get("level", cfg.n if cfg.n is not None else 1))
    b = persistent_homology(rips_filtration(gen_bipartite_space(level), max_dim=2))
    iv = b.degree(1)
    uniq = sorted({(float(p), float(q)) for p, q in iv})
    expected = 2 ** (2 * level) - 2 ** (level + 1) + 1
    _emit(cfg, {"level": level, "count": len(iv), "expected": expected,
                "intervals": [list(u) for u in uniq], "ok": len(iv) == expected},
          b.to_csv())


def _cmd_stable(cfg):
    from .extremal import perturbation_check, stable_class_certificate
    if not cfg.input:
        raise ConfigError("stable needs --input lattice CSV")
    pts = read_points_or_metric(cfg.input, "points").points
    cert = stable_class_certificate(pts)
    doc = {"certificate": None if cert is None else cert.to_dict()}
    if cert is not None and int(cfg.params.get("trials", 0)) > 0:
        ok, worst = perturbation_check(cert, int(cfg.params["trials"]), cfg.seed)
        doc["perturbation"] = {"trials": int(cfg.params["trials"]), "held": ok,
                               "smallest_longest_interval": worst}
    csv_text = None if cert is None else rows_to_csv(
        [f"x{k}" for k in range(pts.shape[1])], cert.lattice_points.astype(int).tolist())
    _emit(cfg, doc, csv_text)


def _cmd_xi(cfg):
    from .extremal import xi_search
    N = int(cfg.params.get("N", cfg.n or 2))
    m = int(cfg.params.get("m", 2))
    thr = cfg.params.get("threshold")
    r = xi_search(N, m, None if thr is None else float(thr), cfg.seed)
    _emit(cfg, {"N": N, "m": m, "size": r.size, "exact": r.exact,
                "threshold": math.sqrt(m) + 1 if thr is None else float(thr),
                "witness": r.witness.astype(int).tolist()},
          rows_to_csv([f"x{k}" for k in range(m)], r.witness.astype(int).tolist()))


def _cmd_tp_verify(cfg):
    from .extremal import verify_tp_minima
    r = verify_tp_minima(float(cfg.params.get("N", 100)), float(cfg.params.get("c", 3)),
                         int(cfg.params.get("grid_steps", 32)))
    _emit(cfg, {**asdict(r), "ok": r.ok})


HANDLERS = {
    "generate": _cmd_generate, "barcode": _cmd_barcode, "dimension": _cmd_dimension,
    "mst": _cmd_mst, "arcs": _cmd_arcs, "bipartite": _cmd_bipartite, "stable": _cmd_stable,
    "xi": _cmd_xi, "tp-verify": _cmd_tp_verify,
}


def run(cfg: ExperimentConfig, err=sys.stderr) -> int:
    try:
        HANDLERS[cfg.command](cfg)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=err)
        return EXIT_BUDGET
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    return EXIT_OK


def _num_list(kind):
    def parse(text):
        try:
            return [kind(v) for v in text.replace(" ", "").split(",") if v]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    return parse


def _param(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError("expected key=value")
    k, v = text.split("=", 1)
    try:
        return k, json.loads(v)
    except json.JSONDecodeError:
        return k, v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phdim", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version",
                   version=f"phdim {__version__} (format {FORMAT_VERSION})")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True):
        if family:
            sp.add_argument("--family", choices=FAMILIES)
            sp.add_argument("--n", type=int)
            sp.add_argument("--param", type=_param, action="append", default=[],
                            metavar="KEY=VALUE", help="extra generator parameter")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="JSON summary path (stdout if omitted)")
        sp.add_argument("--csv", help="CSV table path")

    def source(sp):
        sp.add_argument("--input", help="CSV file instead of a generator")
        sp.add_argument("--input-kind", choices=("points", "metric"), default="points")

    sp = sub.add_parser("generate", help="sample a point family")
    common(sp)
    sp.add_argument("--level", type=int, help="bipartite level / union max level")

    sp = sub.add_parser("barcode", help="persistence barcode")
    common(sp)
    source(sp)
    sp.add_argument("--complex", choices=("rips", "cech", "alpha2d"), default="rips")
    sp.add_argument("--degree", type=int, default=1, help="highest homology degree")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = sub.add_parser("dimension", help="box / PH / MST dimension estimates")
    common(sp)
    source(sp)
    sp.add_argument("--method", choices=("box", "ph", "mst", "ph-complexity"), default="box")
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--complex", choices=("rips", "cech", "alpha2d"), default="alpha2d")
    sp.add_argument("--sizes", type=_num_list(int))
    sp.add_argument("--scales", type=_num_list(float))
    sp.add_argument("--alpha-grid", type=_num_list(float))
    sp.add_argument("--variant", choices=("grid", "packing"), default="grid")
    sp.add_argument("--workers", type=int)

    sp = sub.add_parser("mst", help="minimal spanning tree and E_alpha^0")
    common(sp)
    source(sp)
    sp.add_argument("--alpha-grid", type=_num_list(float))
    sp.add_argument("--check", choices=("rips", "cech"), help="verify the PH_0 correspondence")

    sp = sub.add_parser("arcs", help="two-arcs interval growth")
    common(sp, family=False)
    sp.add_argument("--sizes", type=_num_list(int))

    sp = sub.add_parser("bipartite", help="exact bipartite PH_1 counts")
    common(sp, family=False)
    sp.add_argument("--level", type=int, required=True)

    sp = sub.add_parser("stable", help="stable-class certificate for lattice points")
    common(sp, family=False)
    sp.add_argument("--input", required=True, help="lattice CSV")
    sp.add_argument("--trials", type=int, default=0, help="random perturbation spot checks")

    sp = sub.add_parser("xi", help="largest subset without a size-1 stable triangle")
    common(sp, family=False)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--m", type=int, default=2)
    sp.add_argument("--threshold", type=float)

    sp = sub.add_parser("tp-verify", help="grid check of the TP_1/TP_2 minima")
    common(sp, family=False)
    sp.add_argument("--N", type=float, default=100)
    sp.add_argument("--c", type=float, default=3)
    sp.add_argument("--grid-steps", type=int, default=32)

    sp = sub.add_parser("run", help="replay a JSON experiment config")
    sp.add_argument("--config", required=True)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    sp.add_argument("--filter", help="substring of check keys to run")
    return p


def config_from_args(a: argparse.Namespace) -> ExperimentConfig:
    params = dict(getattr(a, "param", []) or [])
    cmd = a.command
    if cmd == "generate" and a.level is not None:
        params["level" if a.family == "bipartite" else "max_level"] = a.level
    if cmd == "barcode" and a.budget != DEFAULT_BUDGET:
        params["budget"] = a.budget
    if cmd == "dimension":
        if a.variant != "grid":
            params["variant"] = a.variant
        if a.workers:
            params["workers"] = a.workers
    if cmd == "mst" and a.check:
        params["check"] = True
    if cmd == "bipartite":
        params["level"] = a.level
    if cmd == "stable" and a.trials:
        params["trials"] = a.trials
    if cmd == "xi":
        params.update({"N": a.N, "m": a.m})
        if a.threshold is not None:
            params["threshold"] = a.threshold
    if cmd == "tp-verify":
        params.update({"N": a.N, "c": a.c, "grid_steps": a.grid_steps})
    complex_ = getattr(a, "complex", None) or (a.check if cmd == "mst" and a.check else "rips")
    return ExperimentConfig(
        command=cmd, family=getattr(a, "family", None), n=getattr(a, "n", None), seed=a.seed,
        params=params, complex=complex_, degree=getattr(a, "degree", 1),
        sizes=getattr(a, "sizes", None), scales=getattr(a, "scales", None),
        alpha_grid=getattr(a, "alpha_grid", None), method=getattr(a, "method", None),
        input=getattr(a, "input", None), input_kind=getattr(a, "input_kind", "points"),
        out=a.out, csv=a.csv)


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.command == "verify":
        from .acceptance import run_suite
        results = run_suite(a.filter)
        if not results:
            print(f"no check matches {a.filter!r}", file=sys.stderr)
            return EXIT_INVALID
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
        return EXIT_OK if all(r.passed for r in results) else 1
    try:
        if a.command == "run":
            cfg = ExperimentConfig.from_json(Path(a.config).read_text())
        else:
            cfg = config_from_args(a)
    except (ConfigError, OSError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
