"""Command-line front end.

Subcommands: fold | simulate | verify | classify | sweep | lyapunov.
Options come from flags or a JSON config file (--config); flags win.  CSV
output uses shortest round-trip decimals so runs are byte-reproducible.

Exit codes: 0 ok, 2 invalid input, 3 check failed, 4 singular orbit,
5 overflow.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from ._kernels import BACKEND
from .dynamics import (
    CHAOS_LYAPUNOV,
    bifurcation_sweep,
    classify_rhsc,
    iterate_system,
    lyapunov_core,
)
from .errors import FoldcoreError, InvalidParam, Overflow, Singular
from .folding import (
    SystemSpec,
    check_fold_consistency,
    fold,
    fold_semilinear,
    semi_invert_rational,
)
from .mapexpr import NotLinearFractional, affine_map, expr_from_obj, expr_to_obj
from .orbits import OVERFLOW, SINGULAR
from .rational import QuadraticCoreParams, system_from_obj
from .seqcoef import coeff_from_obj

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CHECK_FAILED = 3
EXIT_SINGULAR = 4
EXIT_OVERFLOW = 5

_QUAD_IDS = {"rhsc", "mhs", "rnh", "coch"}


@dataclass
class Tolerances:
    singular: float = 1e-12
    cycle: float = 1e-6
    consistency: float = 1e-9


@dataclass
class RunConfig:
    """One run's inputs; round-trips losslessly through JSON."""

    system: object = None  # catalog id, "semilinear", or {"f":..., "g":...}
    params: dict = field(default_factory=dict)
    init: tuple = (1.0, 1.0)
    steps: int = 1000
    tolerances: Tolerances = field(default_factory=Tolerances)
    seed: int = 0
    output: str | None = None
    inits: int = 25
    transient: int = 500
    samples: int = 200
    lyap_samples: int = 4000
    b_from: float | None = None
    b_to: float | None = None
    b_step: float | None = None
    chaotic_horizon: int = 30
    r0: float | None = None
    fold_on: str = "f"

    def __post_init__(self):
        self.init = tuple(float(v) for v in self.init)
        if self.steps < 1:
            raise InvalidParam("steps must be >= 1")
        t = self.tolerances
        if min(t.singular, t.cycle, t.consistency) <= 0.0:
            raise InvalidParam("tolerances must be positive")
        if self.fold_on not in ("f", "g"):
            raise InvalidParam("fold_on must be 'f' or 'g'")

    def to_obj(self) -> dict:
        t = self.tolerances
        return {
            "system": self.system,
            "params": self.params,
            "init": list(self.init),
            "steps": self.steps,
            "tolerances": {"singular": t.singular, "cycle": t.cycle,
                           "consistency": t.consistency},
            "seed": self.seed,
            "output": self.output,
            "inits": self.inits,
            "transient": self.transient,
            "samples": self.samples,
            "lyap_samples": self.lyap_samples,
            "b_from": self.b_from,
            "b_to": self.b_to,
            "b_step": self.b_step,
            "chaotic_horizon": self.chaotic_horizon,
            "r0": self.r0,
            "fold_on": self.fold_on,
        }

    @staticmethod
    def from_obj(obj: dict) -> "RunConfig":
        kwargs = dict(obj)
        tol = kwargs.pop("tolerances", None)
        cfg = RunConfig(**kwargs)
        if tol:
            cfg.tolerances = Tolerances(**tol)
        return cfg


def _fmt(x: float) -> str:
    return repr(float(x))


def _parse_number_or_json(text: str):
    try:
        return float(text)
    except ValueError:
        return json.loads(text)


def _load_config(args) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = RunConfig.from_obj(json.load(fh))
    if getattr(args, "system", None) is not None:
        cfg.system = _parse_number_or_json(args.system) if args.system.startswith("{") \
            else args.system
    for key in ("a", "b", "c", "beta", "gamma"):
        val = getattr(args, key, None)
        if val is not None:
            cfg.params[key] = val
    if getattr(args, "alpha", None) is not None:
        cfg.params["alpha"] = _parse_number_or_json(args.alpha)
    if getattr(args, "g", None) is not None:
        cfg.params["g"] = json.loads(args.g)
    if getattr(args, "x0", None) is not None or getattr(args, "y0", None) is not None:
        x0 = args.x0 if args.x0 is not None else cfg.init[0]
        y0 = args.y0 if args.y0 is not None else cfg.init[1]
        cfg.init = (x0, y0)
    for key in ("steps", "seed", "inits", "transient", "samples", "lyap_samples",
                "b_from", "b_to", "b_step", "chaotic_horizon", "r0", "fold_on"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    if getattr(args, "out", None) is not None:
        cfg.output = args.out
    if getattr(args, "tol", None) is not None:
        cfg.tolerances.consistency = args.tol
    cfg.__post_init__()  # revalidate after merges
    return cfg


def _resolve_system(cfg: RunConfig):
    """Returns (stepper, folding-or-None, name)."""
    spec = cfg.system
    if spec is None:
        raise InvalidParam("no system given (use --system or --config)")
    if isinstance(spec, str):
        if spec == "semilinear":
            p = cfg.params
            for key in ("a", "b", "c", "g"):
                if key not in p:
                    raise InvalidParam(f"semilinear system needs parameter {key!r}")
            a, b, c = (coeff_from_obj(p[k]) for k in ("a", "b", "c"))
            g = expr_from_obj(p["g"])
            folding = fold_semilinear(a, b, c, g)
            return SystemSpec(affine_map(a, b, c), g, "semilinear"), folding, "semilinear"
        obj = {"system": spec, **cfg.params}
        sys_ = system_from_obj(obj)
        return sys_, None, spec  # catalog folding built on demand
    if isinstance(spec, dict) and "f" in spec and "g" in spec:
        f = expr_from_obj(spec["f"])
        g = expr_from_obj(spec["g"])
        return SystemSpec(f, g), None, "inline"
    raise InvalidParam(f"cannot interpret system {spec!r}")


def _system_folding(stepper, name, on="f"):
    if hasattr(stepper, "folding") and on == "f":
        return stepper.folding()
    f = stepper.f_expr() if hasattr(stepper, "f_expr") else stepper.f
    g = stepper.g_expr() if hasattr(stepper, "g_expr") else stepper.g
    if on == "g":
        # folding on the second component swaps the variable roles: the core
        # tracks the y-components and the passive map reconstructs x
        f, g = g, f
    try:
        h = semi_invert_rational(f)
    except NotLinearFractional as exc:
        raise InvalidParam(
            f"no catalog semi-inversion applies to {name} on {on}: {exc}") from exc
    return fold(f, g, h)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def cmd_fold(cfg: RunConfig) -> int:
    stepper, folding, name = _resolve_system(cfg)
    if folding is None or cfg.fold_on == "g":
        folding = _system_folding(stepper, name, cfg.fold_on)
    print(folding.describe(system=name))
    if cfg.fold_on == "g":
        print("folded on g: component roles swapped (the core tracks y)")
    print("core-expr:", json.dumps(expr_to_obj(folding.core.expr)))
    print("passive-expr:", json.dumps(expr_to_obj(folding.passive.expr)))
    return EXIT_OK


def cmd_simulate(cfg: RunConfig) -> int:
    stepper, _, _ = _resolve_system(cfg)
    orbit = iterate_system(stepper, cfg.init, cfg.steps)
    lines = ["n,x,y"]
    lines += [f"{k},{_fmt(x)},{_fmt(y)}" for k, (x, y) in enumerate(orbit.points)]
    _emit(cfg, "\n".join(lines) + "\n")
    if orbit.status == SINGULAR:
        print(f"singular at index {orbit.fail_index}: {orbit.detail}", file=sys.stderr)
        return EXIT_SINGULAR
    if orbit.status == OVERFLOW:
        print(f"overflow at index {orbit.fail_index}", file=sys.stderr)
        return EXIT_OVERFLOW
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    stepper, folding, name = _resolve_system(cfg)
    if folding is None:
        folding = _system_folding(stepper, name)  # consistency always folds on f
    steps = cfg.steps
    if isinstance(cfg.system, str) and cfg.system in _QUAD_IDS:
        q = stepper.quad()
        lam = lyapunov_core(q, -q.b / (2.0 * q.a), 1000, 4000)
        if lam > CHAOS_LYAPUNOV:
            steps = min(steps, cfg.chaotic_horizon)
            print(f"# chaotic regime (lyapunov ~ {lam:.3f}): horizon capped at {steps}")
    rng = np.random.default_rng(cfg.seed)
    if hasattr(stepper, "sample_inits"):
        inits = stepper.sample_inits(rng, cfg.inits)
    else:
        inits = [(rng.uniform(0.6, 1.8), rng.uniform(0.6, 1.8)) for _ in range(cfg.inits)]
    tol = cfg.tolerances.consistency
    failures = 0
    worst = 0.0
    for i, init in enumerate(inits):
        rep = check_fold_consistency(stepper, folding, init, steps, tol)
        worst = max(worst, rep.max_diff)
        status = "ok" if rep.passed else "FAIL"
        extra = f" ({rep.note})" if rep.note else ""
        print(f"init[{i}] x0={_fmt(init[0])} y0={_fmt(init[1])} "
              f"max_diff={rep.max_diff:.3e} {status}{extra}")
        if not rep.passed:
            failures += 1
    print(f"checked {len(inits)} initial points over {steps} steps; "
          f"worst max_diff={worst:.3e}; tol={tol:g}; failures={failures}")
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED


def cmd_classify(cfg: RunConfig) -> int:
    if not (isinstance(cfg.system, str) and cfg.system in ("rhsc", "mhs")):
        raise InvalidParam("classify supports the quadratic-core ratio systems (rhsc, mhs)")
    stepper, _, _ = _resolve_system(cfg)
    q = stepper.quad()
    report = classify_rhsc(q, cfg.init, budget=max(cfg.steps, 20_000))
    lines = [
        f"window_ok={report.window_ok}",
        f"r0={_fmt(report.r0)}",
        f"mu_max={_fmt(report.mu_max)}",
        f"mu_mu_max={_fmt(report.mu_mu_max)}",
        f"y_bound={_fmt(report.y_bound)}",
        f"core_period={report.core_period}",
        f"core_lyapunov={report.core_lyapunov}",
        f"predicted={report.predicted}",
        f"observed={report.observed}",
        f"verdict={report.verdict}",
    ]
    lines += [f"note={n}" for n in report.notes]
    _emit(cfg, "\n".join(lines) + "\n")
    if report.verdict == "agree":
        return EXIT_OK
    if report.verdict == "out_of_theorem_scope":
        return EXIT_INVALID
    return EXIT_CHECK_FAILED


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.b_from is None or cfg.b_to is None or cfg.b_step is None:
        raise InvalidParam("sweep needs --b-from, --b-to and --b-step")
    a = float(cfg.params.get("a", -1.0))
    rows = bifurcation_sweep(a, cfg.b_from, cfg.b_to, cfg.b_step,
                             cfg.transient, cfg.samples, cfg.lyap_samples)
    lines = ["b,sample_index,r,lyapunov"]
    for row in rows:
        b_s = _fmt(row.b)
        lam_s = _fmt(row.lyapunov)
        for j, r in enumerate(row.samples):
            lines.append(f"{b_s},{j},{_fmt(r)},{lam_s}")
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_lyapunov(cfg: RunConfig) -> int:
    if "a" not in cfg.params or "b" not in cfg.params:
        raise InvalidParam("lyapunov needs parameters a and b")
    q = QuadraticCoreParams(cfg.params["a"], cfg.params["b"],
                            coeff_from_obj(cfg.params.get("alpha", 1.0)))
    r0 = cfg.r0 if cfg.r0 is not None else -q.b / (2.0 * q.a)
    lam = lyapunov_core(q, r0, max(cfg.transient, 1000), max(cfg.samples, 10_000))
    print(f"a={_fmt(q.a)} b={_fmt(q.b)} r0={_fmt(r0)} lyapunov={_fmt(lam)}")
    print(f"backend={BACKEND}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override its fields")
    p.add_argument("--system", help="catalog id, 'semilinear', or inline {'f':...,'g':...} JSON")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--alpha", help="constant value or coefficient-sequence JSON")
    p.add_argument("--g", help="expression JSON (semilinear second component)")
    p.add_argument("--x0", type=float)
    p.add_argument("--y0", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="foldcore", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fold", help="print the core + passive pair of a system")
    _add_common(p)
    p.add_argument("--fold-on", dest="fold_on", choices=("f", "g"))

    p = sub.add_parser("simulate", help="iterate a system and emit an n,x,y CSV")
    _add_common(p)

    p = sub.add_parser("verify", help="direct vs core+passive orbit consistency")
    _add_common(p)
    p.add_argument("--tol", type=float, help="consistency tolerance")
    p.add_argument("--inits", type=int, help="number of sampled initial points")
    p.add_argument("--chaotic-horizon", dest="chaotic_horizon", type=int,
                   help="step cap applied in chaotic regimes (default 30)")

    p = sub.add_parser("classify", help="predicted vs observed orbit class")
    _add_common(p)

    p = sub.add_parser("sweep", help="bifurcation sweep CSV over a b-range")
    _add_common(p)
    p.add_argument("--b-from", dest="b_from", type=float)
    p.add_argument("--b-to", dest="b_to", type=float)
    p.add_argument("--b-step", dest="b_step", type=float)
    p.add_argument("--transient", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--lyap-samples", dest="lyap_samples", type=int)

    p = sub.add_parser("lyapunov", help="Lyapunov estimate of the quadratic core")
    _add_common(p)
    p.add_argument("--r0", type=float)
    p.add_argument("--transient", type=int)
    p.add_argument("--samples", type=int)
    return top


_COMMANDS = {
    "fold": cmd_fold,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "sweep": cmd_sweep,
    "lyapunov": cmd_lyapunov,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        return _COMMANDS[args.command](cfg)
    except InvalidParam as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Singular as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except Overflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except FoldcoreError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (json.JSONDecodeError, OSError, TypeError, KeyError) as exc:
        print(f"error: bad configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID


def console_main() -> None:
    raise SystemExit(main())
