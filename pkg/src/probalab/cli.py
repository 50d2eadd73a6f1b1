"""Command-line workbench: seeded experiments and the verify-all runner.

Every stochastic subcommand requires a seed (flag, config file, or the
PROBALAB_SEED environment variable); identical argv produces
byte-identical output files. Exit codes: 0 all reports passed, 1 some
report failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

REPORT_COLUMNS = ("module", "criterion", "lhs", "rhs", "tolerance", "pass", "seed", "trials")


@dataclass(frozen=True)
class ReportRow:
    module: str
    criterion: str
    lhs: float
    rhs: float
    tolerance: float
    passed: bool
    seed: object
    trials: int

    def as_record(self):
        return {
            "module": self.module,
            "criterion": self.criterion,
            "lhs": _fmt(self.lhs),
            "rhs": _fmt(self.rhs),
            "tolerance": _fmt(self.tolerance),
            "pass": str(bool(self.passed)).lower(),
            "seed": str(self.seed),
            "trials": str(self.trials),
        }


def _fmt(x):
    if isinstance(x, float):
        return repr(x)
    return str(x)


def emit_csv(rows):
    """Stable-order CSV with \\n line endings and '.' decimal points."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_record())
    return buf.getvalue()


def emit_json(rows):
    return json.dumps([row.as_record() for row in rows], indent=2, sort_keys=True) + "\n"


def _write_out(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_params(raw):
    if not raw:
        return {}
    params = json.loads(raw)
    if not isinstance(params, dict):
        raise ValueError("--params must be a JSON object")
    return params


def _entry_from_args(args):
    from .catalog import make_law

    return make_law(args.law, **_parse_params(args.params))


def _need_seed(args):
    if getattr(args, "seed", None) is not None:
        return int(args.seed)
    env = os.environ.get("PROBALAB_SEED")
    if env is not None:
        return int(env)
    raise _UsageError("a seed is required: pass --seed or set PROBALAB_SEED")


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_law(args):
    entry = _entry_from_args(args)
    if args.action == "info":
        m = entry.moments

        def finite_or_str(v):
            if v is None:
                return None
            v = float(v)
            return v if math.isfinite(v) else str(v)

        info = {
            "name": entry.name,
            "kind": entry.law.kind,
            "support": [finite_or_str(entry.law.lep), finite_or_str(entry.law.uep)],
            "mean": finite_or_str(m.mean),
            "variance": finite_or_str(m.variance),
            "has_cf": entry.cf is not None,
            "has_mgf": entry.mgf is not None,
            "params": entry.params,
        }
        _write_out(json.dumps(info, indent=2, sort_keys=True, default=str) + "\n", args.out)
        return 0
    if args.action == "sample":
        seed = _need_seed(args)
        x = entry.sample(args.n, seed)
        text = "value\n" + "".join(f"{float(v)!r}\n" for v in x)
        _write_out(text, args.out)
        return 0
    if args.action == "quantile":
        _write_out(f"{entry.quantile(args.u):.9g}\n", args.out)
        return 0
    raise _UsageError(f"unknown law action {args.action!r}")


def _cmd_cf(args):
    from .charfn import cf_of_sum, invert_density

    if args.action == "invert":
        entry = _entry_from_args(args)
        if entry.cf is None:
            raise _UsageError(f"{entry.name} has no catalog characteristic function")
        val = invert_density(entry.cf, args.x, args.cutoff)
        _write_out(f"{val:.9g}\n", args.out)
        return 0
    if args.action == "sum":
        from .catalog import make_law

        specs = json.loads(args.laws)
        phis = [make_law(s["name"], **s.get("params", {})).cf for s in specs]
        if any(p is None for p in phis):
            raise _UsageError("every summand needs a catalog cf")
        val = complex(cf_of_sum(phis)(args.u))
        _write_out(f"{val.real:.9g}{val.imag:+.9g}j\n", args.out)
        return 0
    raise _UsageError(f"unknown cf action {args.action!r}")


def _cmd_gauss(args):
    from .gaussvec import GaussianVector, eigendecompose

    if args.action == "eigen":
        matrix = np.asarray(json.loads(args.matrix), dtype=float)
        t, delta = eigendecompose(matrix)
        out = {"eigenvalues": delta.tolist(), "transform_rows": t.tolist()}
        _write_out(json.dumps(out, indent=2) + "\n", args.out)
        return 0
    mean = np.asarray(json.loads(args.mean), dtype=float)
    cov = np.asarray(json.loads(args.cov), dtype=float)
    gv = GaussianVector(mean, cov)
    if args.action == "sample":
        seed = _need_seed(args)
        x = gv.sample(args.n, seed)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"x{i}" for i in range(gv.dim)])
        for row in x:
            writer.writerow([repr(float(v)) for v in row])
        _write_out(buf.getvalue(), args.out)
        return 0
    if args.action == "quadform":
        x = np.asarray(json.loads(args.x), dtype=float)
        q = gv.quadratic_form(x)
        _write_out(f"{float(q):.9g}\n", args.out)
        return 0
    raise _UsageError(f"unknown gauss action {args.action!r}")


def _batch_seed(seed, offset):
    return int(seed) * 1000 + offset


def _cmd_ineq(args):
    from . import inequalities as ineq
    from .catalog import make_law
    from .sampling import rng_from_seed

    seed = _need_seed(args)
    trials = args.trials
    rng = rng_from_seed(seed)
    reports = []
    for i in range(trials):
        p = float(rng.uniform(0.1, 0.9))
        x_thr = float(rng.uniform(0.5, 3.0))
        entry = make_law("exponential", b=float(rng.uniform(0.5, 2.0)))
        reports.append(ineq.markov(entry, x_thr))
        reports.append(ineq.chebyshev(make_law("gaussian", m=0.0, sigma=float(rng.uniform(0.5, 2.0))), x_thr))
        xs = rng.uniform(-1.0, 1.0, 64)
        ys = rng.uniform(-1.0, 1.0, 64)
        reports.extend(ineq.holder_family(xs, ys, 3.0, 1.5))
        reports.append(ineq.jensen(make_law("bernoulli", p=p), lambda v: np.asarray(v) ** 2))
        lo_r, up_r = ineq.elementary_exp_inequality(float(rng.uniform(0.0, 3.0)))
        reports.extend([lo_r, up_r])
    rows = [
        ReportRow("ineq", r.context, r.lhs, r.rhs, 3.0 * r.se, r.satisfied, seed, trials)
        for r in reports
    ]
    _write_out(emit_csv(rows), args.out)
    return 0 if all(r.satisfied for r in reports) else 1


def _cmd_limit(args):
    from . import limits
    from .catalog import make_law

    seed = _need_seed(args)
    entry = _entry_from_args(args)
    if args.action in ("berry-esseen", "clt"):
        entry = limits.centered(entry)  # these experiments need mean-zero summands
    spec = limits.TriangularSpec.iid(entry)
    rows = []
    if args.action == "wlln":
        rep = limits.wlln_experiment(entry, args.n, args.trials, seed)
        frac = rep.statistics["fractions"]
        for eps, vals in frac.items():
            rows.append(
                ReportRow("limit-lab", f"wlln-final-fraction eps={eps}", vals[-1], 1.0,
                          0.0, rep.passed, seed, args.trials)
            )
    elif args.action == "slln":
        rep = limits.slln_kolmogorov_criterion(spec, lambda k: float(k), args.n, seed)
        rows.append(
            ReportRow("limit-lab", "slln-trajectory-tail-max",
                      rep.statistics["trajectory_tail_max"], 0.05, 0.0, rep.passed,
                      seed, 1)
        )
    elif args.action == "three-series":
        rep = limits.three_series_check(spec, args.cut, seed=seed)
        rows.append(
            ReportRow("limit-lab", f"three-series verdict={rep.predicted}",
                      rep.statistics["path_flatness"], 1e-3, 0.0, rep.passed, seed, 1)
        )
    elif args.action == "clt":
        g = limits.lindeberg_g(spec, args.n, 0.1)
        ly = limits.lyapounov_ratio(spec, args.n, 1.0)
        rows.append(ReportRow("limit-lab", "lindeberg-g eps=0.1", g, 1.0, 0.0, g < 1.0, seed, 0))
        rows.append(ReportRow("limit-lab", "lyapounov-ratio delta=1", ly, 1.0, 0.0, ly < 1.0, seed, 0))
    elif args.action == "berry-esseen":
        rep = limits.berry_esseen_gap(spec, args.n, args.trials, seed)
        rows.append(
            ReportRow("limit-lab", "berry-esseen-gap",
                      rep.statistics["empirical_sup_gap"],
                      rep.statistics["bound"], rep.statistics["mc_slack"],
                      rep.passed, seed, args.trials)
        )
    elif args.action == "lil":
        rep = limits.lil_trajectory(args.n, seed)
        rows.append(
            ReportRow("limit-lab", "lil-running-max", rep.statistics["running_max"],
                      1.3, 0.0, 0.5 <= rep.statistics["running_max"] <= 1.3, seed, 1)
        )
    else:
        raise _UsageError(f"unknown limit action {args.action!r}")
    _write_out(emit_csv(rows), args.out)
    return 0 if all(r.passed for r in rows) else 1


def _cmd_cond(args):
    from .condexp import FinitePartition, cond_expect, regression_total_expectation, tower_check
    from .sampling import rng_from_seed

    seed = _need_seed(args)
    rows = []
    die = np.arange(1.0, 7.0)
    parity = np.array(["odd", "even", "odd", "even", "odd", "even"])
    ce = cond_expect(die, FinitePartition(parity))
    rows.append(ReportRow("cond-expect", "die-parity-odd", ce.table["odd"], 3.0, 0.0,
                          ce.table["odd"] == 3.0, seed, 1))
    rows.append(ReportRow("cond-expect", "die-parity-even", ce.table["even"], 4.0, 0.0,
                          ce.table["even"] == 4.0, seed, 1))
    rng = rng_from_seed(seed)
    x = rng.normal(size=200)
    labels = rng.integers(0, 4, size=200)
    fine = FinitePartition(labels)
    coarse = FinitePartition(labels // 2)
    tower = tower_check(x, coarse, fine)
    rows.append(ReportRow("cond-expect", "tower", tower["coarse_of_fine_gap"], 1e-12,
                          1e-12, tower["passed"], seed, 200))
    reg = regression_total_expectation(x, labels)
    rows.append(ReportRow("cond-expect", "regression-total", reg["gap"], 1e-12, 1e-12,
                          reg["passed"], seed, 200))
    _write_out(emit_csv(rows), args.out)
    return 0 if all(r.passed for r in rows) else 1


def _cmd_process(args):
    from . import processes

    seed = _need_seed(args)
    grid = np.asarray(json.loads(args.grid), dtype=float) if args.grid else None
    if args.action == "poisson":
        ps = processes.poisson_process(args.theta, args.horizon, args.paths, seed, grid=grid)
    elif args.action == "brownian":
        if grid is None:
            raise _UsageError("brownian needs --grid")
        ps = processes.brownian_motion(grid, args.paths, seed)
    elif args.action == "gauss":
        if grid is None:
            raise _UsageError("gauss needs --grid")
        cov = {
            "minst": lambda s, t: min(s, t),
            "white": lambda s, t: 1.0 if s == t else 0.0,
            "const": lambda s, t: 1.0,
        }[args.cov]
        ps = processes.gaussian_process(lambda t: 0.0, cov, grid, args.paths, seed)
    else:
        raise _UsageError(f"unknown process action {args.action!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["path", "time", "value"])
    for i, row in enumerate(ps.values):
        for t, v in zip(ps.times, row):
            writer.writerow([i, repr(float(t)), repr(float(v))])
    _write_out(buf.getvalue(), args.out)
    return 0


def _cmd_normal(args):
    from .normal import inverse_loi_normal, proba_normale

    if args.action == "cdf":
        _write_out(f"{proba_normale(args.value):.9g}\n", args.out)
        return 0
    if args.action == "quantile":
        _write_out(f"{inverse_loi_normal(args.value):.9g}\n", args.out)
        return 0
    raise _UsageError(f"unknown normal action {args.action!r}")


# ---------------------------------------------------------------------------
# verify-all


def verify_all_rows(seed, quick=False):
    """One pass/fail row per acceptance area; exercises every module."""
    from . import inequalities as ineq
    from . import limits
    from .catalog import make_law, numeric_mean_var
    from .charfn import CharFn, invert_density
    from .condexp import FinitePartition, cond_expect
    from .gaussvec import GaussianVector, eigendecompose
    from .laws import expectation_via_tail
    from .normal import phi_oracle, proba_normale
    from .processes import brownian_motion, poisson_process
    from .sampling import rng_from_seed

    scale = 10 if quick else 1
    widen = math.sqrt(scale)
    rows = []

    def add(module, criterion, lhs, rhs, tol, trials=0, mode="abs"):
        lhs = float(lhs)
        rhs = float(rhs)
        tol = float(tol)
        passed = abs(lhs - rhs) <= tol if mode == "abs" else lhs <= rhs + tol
        rows.append(ReportRow(module, criterion, lhs, rhs, tol, passed, seed, trials))

    # dist-core: tail-formula expectation
    expo = make_law("exponential", b=1.0)
    add("dist-core", "tail-expectation-exponential", expectation_via_tail(expo.law), 1.0, 1e-6)

    # dist-catalog: closed moments vs quadrature; MC mean at 4 SE
    gm = make_law("gamma", a=2.0, b=3.0)
    nm, nv = numeric_mean_var(gm)
    add("dist-catalog", "gamma-mean-quadrature", nm, gm.moments.mean, 1e-6)
    n_mc = 100_000 // scale
    x = make_law("gaussian", m=0.0, sigma=1.0).sample(n_mc, _batch_seed(seed, 1))
    add("dist-catalog", "gaussian-mc-mean", float(x.mean()), 0.0,
        4.0 / math.sqrt(n_mc), trials=n_mc)

    # charfn: normal density recovery at 0
    phi = CharFn(lambda u: np.exp(-0.5 * np.asarray(u, float) ** 2),
                 integrable_modulus=True)
    add("charfn", "invert-normal-density-at-0", invert_density(phi, 0.0, 50.0),
        1.0 / math.sqrt(2.0 * math.pi), 1e-4)

    # gauss-linalg: reconstruction + quadratic form mean
    rng = rng_from_seed(_batch_seed(seed, 2))
    a = rng.uniform(-1.0, 1.0, (5, 5))
    a = a + a.T
    t, delta = eigendecompose(a)
    rec = float(np.abs(t.T @ np.diag(delta) @ t - a).max())
    add("gauss-linalg", "jacobi-reconstruction", rec, 0.0, 1e-9)
    gv = GaussianVector(np.zeros(2), np.eye(2))
    q = gv.quadratic_form(gv.sample(n_mc, _batch_seed(seed, 3)))
    add("gauss-linalg", "quadform-mean-chi2", float(q.mean()), 2.0,
        5.0 * 2.0 / math.sqrt(n_mc), trials=n_mc)

    # ineq-suite: exact batch, zero violations
    n_inst = 200 // scale
    rng = rng_from_seed(_batch_seed(seed, 4))
    violations = 0
    for _ in range(n_inst):
        entry = make_law("exponential", b=float(rng.uniform(0.5, 2.0)))
        if not ineq.markov(entry, float(rng.uniform(0.5, 3.0))).satisfied:
            violations += 1
        xs = rng.uniform(-1.0, 1.0, 32)
        ys = rng.uniform(-1.0, 1.0, 32)
        if not all(r.satisfied for r in ineq.holder_family(xs, ys, 2.0, 2.0)):
            violations += 1
    add("ineq-suite", "exact-batch-violations", violations, 0.0, 0.0, trials=n_inst)

    # limit-lab: Berry-Esseen at n=100
    cb = make_law("finite", atoms=[-0.5, 0.5], probs=[0.5, 0.5])
    trials = 20_000 // scale
    rep = limits.berry_esseen_gap(limits.TriangularSpec.iid(cb), 100, trials,
                                  _batch_seed(seed, 5))
    add("limit-lab", "berry-esseen-n100", rep.statistics["empirical_sup_gap"],
        rep.statistics["bound"], rep.statistics["mc_slack"], trials=trials, mode="le")

    # cond-expect: die/parity exact
    die = np.arange(1.0, 7.0)
    parity = np.array(["odd", "even", "odd", "even", "odd", "even"])
    table = cond_expect(die, FinitePartition(parity)).table
    add("cond-expect", "die-parity-table", table["odd"] + table["even"], 7.0, 0.0)

    # process-forge: Poisson mean and Brownian covariance
    n_paths = 20_000 // scale
    ps = poisson_process(1.0, 1.0, n_paths, _batch_seed(seed, 6), grid=np.array([1.0]))
    add("process-forge", "poisson-mean-N1", float(ps.values[:, 0].mean()), 1.0,
        4.0 / math.sqrt(n_paths), trials=n_paths)
    bm = brownian_motion([0.5, 1.0], n_paths, _batch_seed(seed, 7))
    cov = float(np.mean(bm.values[:, 0] * bm.values[:, 1]))
    add("process-forge", "brownian-cov", cov, 0.5, 0.01 * widen, trials=n_paths)

    # normal-approx: max error on a coarse grid + clamp semantics
    zs = np.linspace(-8.0, 8.0, 321)
    err = max(abs(proba_normale(z) - phi_oracle(z)) for z in zs)
    add("normal-approx", "proba-normale-max-error", err, 0.0, 1e-7)
    from .normal import inverse_loi_normal

    clamps_ok = inverse_loi_normal(-0.5) == -4.0 and inverse_loi_normal(1.5) == 4.0
    add("normal-approx", "quantile-clamps", 0.0 if clamps_ok else 1.0, 0.0, 0.5)

    # cli: serializer round-trip on the rows so far
    parsed = json.loads(emit_json(rows))
    add("cli", "emit-roundtrip", float(len(parsed)), float(len(rows)), 0.0)
    return rows


def _cmd_verify_all(args):
    seed = _need_seed(args)
    rows = verify_all_rows(seed, quick=args.quick)
    _write_out(emit_csv(rows), args.out)
    return 0 if all(r.passed for r in rows) else 1


# ---------------------------------------------------------------------------
# parser


def _build_parser():
    parser = argparse.ArgumentParser(prog="probalab",
                                     description="computational probability workbench")
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command")

    def common(p, stochastic=True):
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None)

    p = sub.add_parser("law", help="catalog access: info | sample | quantile")
    p.add_argument("action", choices=["info", "sample", "quantile"])
    p.add_argument("--law", required=True)
    p.add_argument("--params", default="{}")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--u", type=float, default=0.5)
    common(p)

    p = sub.add_parser("cf", help="characteristic functions: invert | sum")
    p.add_argument("action", choices=["invert", "sum"])
    p.add_argument("--law", default=None)
    p.add_argument("--params", default="{}")
    p.add_argument("--laws", default="[]", help='JSON list [{"name":..., "params":{}}]')
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--u", type=float, default=0.0)
    p.add_argument("--cutoff", type=float, default=64.0)
    common(p)

    p = sub.add_parser("gauss", help="Gaussian vectors: sample | quadform | eigen")
    p.add_argument("action", choices=["sample", "quadform", "eigen"])
    p.add_argument("--mean", default="[0.0]")
    p.add_argument("--cov", default="[[1.0]]")
    p.add_argument("--matrix", default="[[1.0]]")
    p.add_argument("--x", default="[0.0]")
    p.add_argument("--n", type=int, default=10)
    common(p)

    p = sub.add_parser("ineq", help="inequality suite runner")
    p.add_argument("action", nargs="?", default="run", choices=["run"])
    p.add_argument("--suite", default="all")
    p.add_argument("--trials", type=int, default=100)
    common(p)

    p = sub.add_parser("limit", help="limit-theorem experiments")
    p.add_argument("action", choices=["wlln", "slln", "three-series", "clt",
                                      "berry-esseen", "lil"])
    p.add_argument("--law", default="rademacher")
    p.add_argument("--params", default="{}")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--cut", type=float, default=1.0)
    common(p)

    p = sub.add_parser("cond", help="conditional-expectation checks")
    p.add_argument("action", nargs="?", default="check", choices=["check"])
    common(p)

    p = sub.add_parser("process", help="path constructions: poisson | brownian | gauss")
    p.add_argument("action", choices=["poisson", "brownian", "gauss"])
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--horizon", type=float, default=1.0)
    p.add_argument("--paths", type=int, default=100)
    p.add_argument("--grid", default=None)
    p.add_argument("--cov", default="minst", choices=["minst", "white", "const"])
    common(p)

    p = sub.add_parser("normal", help="normal cdf/quantile approximations")
    p.add_argument("action", choices=["cdf", "quantile"])
    p.add_argument("value", type=float)
    common(p)

    p = sub.add_parser("verify-all", help="run the acceptance battery")
    p.add_argument("--quick", action="store_true",
                   help="10x fewer trials with proportionally widened MC tolerances")
    common(p)

    return parser


_HANDLERS = {
    "law": _cmd_law,
    "cf": _cmd_cf,
    "gauss": _cmd_gauss,
    "ineq": _cmd_ineq,
    "limit": _cmd_limit,
    "cond": _cmd_cond,
    "process": _cmd_process,
    "normal": _cmd_normal,
    "verify-all": _cmd_verify_all,
}


def _apply_config(args):
    if not getattr(args, "config", None):
        return args
    with open(args.config, encoding="utf-8") as fh:
        config = json.load(fh)
    for key, value in config.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, value)
    return args


def run(argv):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    from .errors import ProbalabError

    try:
        args = _apply_config(args)
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ProbalabError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
