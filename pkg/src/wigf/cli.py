"""Command-line front end: ``wigf <verb> [options]``.

Exit codes: 0 success, 2 bad arguments, 3 numeric failure (non-convergence,
divergence, failed verification), 4 I/O or input-data error.
"""
from __future__ import annotations

import argparse
import contextlib
import math
import sys
from pathlib import Path

from . import closed_forms, gof, igf, residual, rigf, transforms
from .dist import Distribution, Exponential, Sample, parse_model
from .errors import (EstimationError, InputError, IntegrationError, SupportMismatchError,
                     WigfError)
from .estimate import experiment
from .estimate._backend import BACKEND
from .estimate.kde import KdeSpec, NORMALIZERS, np_residual_gwigf
from .integrate import default_tolerance, tolerance
from .maps import parse_map
from .report import ReportTable, dumps
from .weights import ONE, X, Weight, parse_weight

__all__ = ["main", "run", "ingest_csv", "build_parser"]

EXIT_OK, EXIT_ARGS, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
DEFAULT_SEED = 42
IDENTITIES = ("escort-igf", "gen-escort", "mixture-igf", "mixture-rigf", "cross-energy",
              "hazard-expectation", "equilibrium", "ph-hazard", "residual-transform",
              "closed-forms")


class UsageError(Exception):
    """Bad command line, reported with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- argument types -----------------------------------------------------------

def _typed(fn, what):
    def conv(text):
        try:
            return fn(text)
        except (ValueError, WigfError) as exc:
            raise argparse.ArgumentTypeError(f"bad {what} {text!r}: {exc}") from None
    conv.__name__ = what
    return conv


def _float_list(text: str) -> list[float]:
    vals = [float(v) for v in text.split(",") if v.strip()]
    if not vals:
        raise ValueError("empty list")
    return vals


def _int_list(text: str) -> list[int]:
    vals = [int(v) for v in text.split(",") if v.strip()]
    if not vals:
        raise ValueError("empty list")
    return vals


def _positive(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise ValueError("must be positive")
    return v


def _bandwidth(text: str):
    return "silverman" if text.strip().lower() == "silverman" else _positive(text)


MODEL = _typed(parse_model, "model")
WEIGHT = _typed(parse_weight, "weight")
MAP = _typed(parse_map, "map")
FLOATS = _typed(_float_list, "number list")
INTS = _typed(_int_list, "integer list")
POS = _typed(_positive, "positive number")
BANDWIDTH = _typed(_bandwidth, "bandwidth")


def ingest_csv(path: str | Path) -> Sample:
    """Read one number per row (optional ``value`` header, commas allowed)."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    return gof.parse_values(text, source=str(path))


# -- parser -------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write to this path instead of stdout")
    p.add_argument("--tol", type=POS, help="relative quadrature tolerance")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def _sample_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--input", help="CSV file, one value per row")
    g.add_argument("--fixture", choices=gof.FIXTURES)
    g.add_argument("--gen", type=MODEL, help="generator model spec")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="wigf", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="weighted information generating function of one law")
    p.add_argument("--model", type=MODEL, required=True)
    p.add_argument("--weight", type=WEIGHT, default=ONE)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--method", choices=("quad", "closed", "both"), default="quad")
    p.add_argument("--measure", choices=("igf", "entropy", "extropy", "varentropy",
                                         "derivative"), default="igf")
    p.add_argument("--k", type=int, default=1, help="derivative order")
    _common(p)

    p = sub.add_parser("rigf", help="relative generating function and divergences")
    p.add_argument("--model-f", type=MODEL, required=True)
    p.add_argument("--model-g", type=MODEL, required=True)
    p.add_argument("--weight", type=WEIGHT, default=ONE)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--measure", choices=("rigf", "kl", "jdiv", "cie"), default="rigf")
    _common(p)

    p = sub.add_parser("residual", help="residual-lifetime measures at age t")
    p.add_argument("--model", type=MODEL, required=True)
    p.add_argument("--model-g", type=MODEL, help="reference law for rigf and kl")
    p.add_argument("--weight", type=WEIGHT, default=ONE)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--measure", choices=("igf", "rigf", "kl", "bound", "derivative", "mrl"),
                   default="igf")
    _common(p)

    p = sub.add_parser("verify", help="check an identity numerically")
    p.add_argument("--identity", choices=IDENTITIES, required=True)
    p.add_argument("--model", type=MODEL)
    p.add_argument("--model-g", type=MODEL)
    p.add_argument("--weight", type=WEIGHT, default=ONE)
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--r", type=float, default=0.5)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--map", type=MAP, help="monotone map for residual-transform")
    p.add_argument("--i", type=int, choices=(1, 2), default=1)
    _common(p)

    p = sub.add_parser("estimate", help="kernel or exponential-MLE estimator on one data set")
    p.add_argument("estimator", choices=("np", "mle"))
    _sample_source(p)
    p.add_argument("--n", type=int, default=100, help="sample size drawn from --gen")
    p.add_argument("--beta", type=FLOATS, required=True)
    p.add_argument("--t", type=FLOATS, required=True)
    p.add_argument("--bandwidth", type=BANDWIDTH,
                   help="number or 'silverman'; default: fixed value for a fixture, else "
                        "silverman")
    p.add_argument("--bootstrap", type=int, default=600)
    p.add_argument("--normalizer", choices=NORMALIZERS, default="kde")
    p.add_argument("--workers", type=int, default=1, help="0 = all CPUs")
    _common(p)

    p = sub.add_parser("simulate", help="Monte Carlo bias/MSE over a (beta, t, n) grid")
    p.add_argument("estimator", choices=("np", "mle"))
    p.add_argument("--gen", type=MODEL, default=Exponential(0.5))
    p.add_argument("--beta", type=FLOATS, default=list(experiment.SIM_BETAS))
    p.add_argument("--t", type=FLOATS, default=list(experiment.SIM_TS))
    p.add_argument("--n", type=INTS, default=list(experiment.SIM_NS))
    p.add_argument("--bandwidth", type=BANDWIDTH, default="silverman")
    p.add_argument("--bootstrap", type=int, default=600)
    p.add_argument("--replications", type=int, default=250)
    p.add_argument("--normalizer", choices=NORMALIZERS, default="empirical")
    p.add_argument("--protocol", choices=experiment.PROTOCOLS, default="fresh")
    p.add_argument("--workers", type=int, default=1, help="0 = all CPUs")
    _common(p)

    p = sub.add_parser("gof", help="fit models by maximum likelihood and rank them")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--input")
    g.add_argument("--fixture", choices=gof.FIXTURES)
    p.add_argument("--models", default="exp,gumbel2")
    _common(p)

    p = sub.add_parser("datasets", help="emit a bundled data set as CSV")
    p.add_argument("--name", choices=gof.FIXTURES, required=True)
    p.add_argument("--out")
    return top


# -- verbs --------------------------------------------------------------------

def _spec(obj):
    if isinstance(obj, Distribution):
        return obj.spec
    if isinstance(obj, Weight):
        return obj.key
    return obj


def _config(args) -> dict:
    cfg = {k: _spec(v) for k, v in vars(args).items() if k not in ("out", "format")}
    if getattr(args, "map", None) is not None:
        cfg["map"] = args.map.key
    cfg["rtol"], cfg["atol"] = default_tolerance()
    cfg["backend"] = BACKEND
    if args.verb in ("estimate", "simulate"):
        cfg["seed_scheme"] = "default_rng([seed, beta_index, t_index, n_index, replicate + 1])"
    return cfg


def _load(args) -> Sample:
    if args.input is not None:
        return ingest_csv(args.input)
    return gof.load_fixture(args.fixture)


def _eval(args):
    d, w, beta = args.model, args.weight, args.beta
    if args.measure == "igf":
        return igf.evaluate(d, w, beta, args.method).as_dict()
    if args.measure == "entropy":
        return {"value": igf.weighted_entropy(d, w)}
    if args.measure == "extropy":
        return {"value": igf.weighted_extropy(d, w)}
    if args.measure == "varentropy":
        return {"value": igf.weighted_varentropy(d, w)}
    return {"value": igf.gwigf_derivative(d, w, beta, args.k), "k": args.k}


def _rigf(args):
    f, g, w = args.model_f, args.model_g, args.weight
    if args.measure == "rigf":
        return {"value": rigf.gwrigf(f, g, w, args.beta)}
    if args.measure == "kl":
        return {"value": rigf.weighted_kl(f, g, w)}
    if args.measure == "jdiv":
        return {"value": rigf.weighted_j_divergence(f, g, w)}
    return {"value": rigf.cross_informational_energy(f, g, w, args.beta)}


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.verb}: missing {', '.join(missing)}")


def _residual(args):
    d, w, beta, t = args.model, args.weight, args.beta, args.t
    m = args.measure
    if m == "igf":
        return {"value": residual.residual_gwigf(d, w, beta, t)}
    if m == "derivative":
        return {"value": residual.residual_derivative_t(d, w, beta, t)}
    if m == "mrl":
        return {"value": residual.mrl(d, t)}
    if m == "bound":
        return residual.residual_bound(d, w, beta, t).as_dict()
    _need(args, "model_g")
    if m == "rigf":
        return {"value": residual.residual_gwrigf(d, args.model_g, w, beta, t)}
    return {"value": residual.residual_weighted_kl(d, args.model_g, w, t)}


def _verify(args):
    ident = args.identity
    if ident == "closed-forms":
        rows = closed_forms.audit()
        flags = closed_forms.detected_flags(rows)
        worst = max((r.rel_err_correct for r in rows), default=0.0)
        tol = args.tol or 1e-6
        return {"passed": worst <= tol, "max_rel_err": worst, "tol": tol,
                "flagged": sorted(k for k, v in flags.items() if v),
                "rows": [r.as_dict() for r in rows]}
    _need(args, "model")
    d, w, beta, tol = args.model, args.weight, args.beta, args.tol or 1e-7
    if ident == "escort-igf":
        rep = transforms.verify_escort_igf(d, w, args.alpha, beta, tol)
    elif ident == "gen-escort":
        _need(args, "model_g")
        rep = transforms.verify_gen_escort_igf(d, args.model_g, w, args.alpha, beta, tol)
    elif ident == "mixture-igf":
        _need(args, "model_g")
        rep = transforms.verify_mixture_igf(d, args.model_g, args.r, args.gamma, w, beta, tol)
    elif ident == "mixture-rigf":
        _need(args, "model_g")
        rep = transforms.verify_mixture_rigf(d, args.model_g, args.r, args.gamma, w, beta,
                                             args.i, tol)
    elif ident == "cross-energy":
        _need(args, "model_g")
        rep = transforms.verify_cross_energy_escort(d, args.model_g, w, args.alpha, beta, tol)
    elif ident == "hazard-expectation":
        rep = residual.verify_hazard_expectation(d, w, beta, tol)
    elif ident == "equilibrium":
        rep = residual.verify_equilibrium_identity(d, w, beta, args.t, tol)
    elif ident == "ph-hazard":
        rep = residual.verify_ph_hazard_identity(d, w, beta, args.t, tol)
    else:
        _need(args, "model_g", "map")
        rep = residual.verify_residual_transform(d, args.model_g, w, args.map, beta, args.t, tol)
    return rep.as_dict() | {"passed": rep.passed}


def _check_counts(args):
    for name in ("bootstrap", "replications"):
        if getattr(args, name, 1) < 1:
            raise UsageError(f"--{name} must be at least 1")


def _estimate(args):
    _check_counts(args)
    if args.gen is not None:
        gen = args.gen
        rng = experiment.cell_rng(args.seed, (0, 0, 0), -1)
        sample = Sample(gen.quantile(rng.random(args.n)), source=f"draw:{gen.spec}")
    else:
        gen, sample = None, _load(args)
    if args.bandwidth is None:
        args.bandwidth = experiment.FIXTURE_BANDWIDTHS.get(args.fixture, "silverman")
    if args.estimator == "mle":
        lam = experiment.mle_rate_exponential(sample)
        table = ReportTable(keys=("beta", "t", "n"), columns=("lambda", "estimate"),
                            meta={"estimator": "parametric-exponential"})
        for beta in args.beta:
            for t in args.t:
                table.add(beta=beta, t=t, n=sample.n, **{"lambda": lam},
                          estimate=experiment.parametric_residual_gwigf_exp(lam, beta, t))
        return table
    # bootstrap around the full-sample estimate, which plays the role of truth
    spec = KdeSpec(sample, args.bandwidth)
    grid = experiment.ExperimentGrid(args.beta, args.t, replications=1,
                                     bootstrap=args.bootstrap, seed=args.seed,
                                     fixture=sample, bandwidth=args.bandwidth,
                                     normalizer=args.normalizer, protocol="resample")

    def truth(beta, t):
        return np_residual_gwigf(spec, beta, t, args.normalizer)

    table = experiment.bootstrap_bias_mse(grid, truth, workers=args.workers)
    table.meta["bandwidth_full_sample"] = spec.b
    table.meta["sample"] = sample.source
    return table


def _truth_for(gen: Distribution):
    if isinstance(gen, Exponential):
        return experiment.exponential_truth(gen.lam)

    def truth(beta, t):
        return residual.residual_gwigf(gen, X, beta, t)
    return truth


def _simulate(args):
    _check_counts(args)
    grid = experiment.ExperimentGrid(
        args.beta, args.t, args.n, replications=args.replications, bootstrap=args.bootstrap,
        seed=args.seed, generator=args.gen, bandwidth=args.bandwidth,
        normalizer=args.normalizer, protocol=args.protocol)
    if args.estimator == "mle":
        return experiment.monte_carlo_parametric(grid, workers=args.workers)
    return experiment.bootstrap_bias_mse(grid, _truth_for(args.gen), workers=args.workers)


def _gof(args):
    models = [m for m in args.models.split(",") if m.strip()]
    if not models:
        raise UsageError("--models is empty")
    return gof.gof_report(_load(args), models)


VERBS = {"eval": _eval, "rigf": _rigf, "residual": _residual, "verify": _verify,
         "estimate": _estimate, "simulate": _simulate, "gof": _gof}


def _render(result, cfg: dict, fmt: str) -> str:
    if fmt == "csv":
        if isinstance(result, ReportTable):
            return result.to_csv()
        flat = {k: v for k, v in result.items() if not isinstance(v, (list, dict))}
        rows = result.get("rows")
        if isinstance(rows, list) and rows and isinstance(rows[0], dict):
            table = ReportTable(keys=(), columns=tuple(rows[0]))
            table.extend(rows)
            return table.to_csv()
        table = ReportTable(keys=(), columns=tuple(flat))
        table.add(**flat)
        return table.to_csv()
    body = result.as_dict() if isinstance(result, ReportTable) else dict(result)
    body["config"] = cfg
    return dumps(body)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc.strerror or exc}") from None


def _datasets(args) -> None:
    s = gof.load_fixture(args.name)
    _emit("value\n" + "".join(f"{v!r}\n" for v in s.values.tolist()), args.out)


def run(argv=None) -> int:
    """Run the command line; return the exit code instead of exiting."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ARGS
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        if args.verb == "datasets":
            _datasets(args)
            return EXIT_OK
        ctx = tolerance(rtol=args.tol) if args.tol else contextlib.nullcontext()
        with ctx:
            result = VERBS[args.verb](args)
            cfg = _config(args)
        _emit(_render(result, cfg, args.format), args.out)
    except UsageError as exc:
        print(f"wigf: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except InputError as exc:
        print(f"wigf: {exc}", file=sys.stderr)
        return EXIT_IO
    except (IntegrationError, EstimationError, ArithmeticError) as exc:
        print(f"wigf: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SupportMismatchError, ValueError) as exc:
        print(f"wigf: {exc}", file=sys.stderr)
        return EXIT_ARGS
    if args.verb == "verify" and not result.get("passed", False):
        return EXIT_NUMERIC
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
