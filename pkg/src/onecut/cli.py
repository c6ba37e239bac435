"""Command-line interface.

Subcommands
    cov      covariance table for an ensemble or bare support
    genfun   point evaluation (all three formulas) or exact expansion
    density  density grid CSV with a reconstruction deviation report
    mc       Monte Carlo estimate with theory comparison
    count    annular pairing count against the covariance table
    verify   cross-check suite (quick or full)

Exit codes: 0 success, 2 invalid arguments, 3 numerical non-convergence,
4 verification failure.  The Monte Carlo seed falls back to the ONECUT_SEED
environment variable when --seed is omitted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .closedform import (EnsembleSpec, asymptotic_cov, covariance_table, gaussian_cov,
                         jacobi_symmetric_cov, wishart_cov, zero_edge_cov)
from .density import DensityGrid, cov_quadrature, potential_for, tricomi_density
from .errors import ConvergenceError
from .genfun import (CovarianceTable, SupportInterval, eval_F, eval_F_joukowski,
                     eval_F_symmetric, expand_F, expand_F_crosscheck)
from .mcsim import MCConfig, correlation_comparison, covariance_comparison, estimate
from .planarcount import count_connected_annular

DEFAULT_SEED = 892734021


@dataclass
class RunReport:
    """Machine-readable record of one CLI invocation."""

    command: list
    version: str
    seed: int | None
    payload: object
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "version": self.version,
            "seed": self.seed,
            "payload": self.payload,
            "checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in self.checks],
            "passed": self.passed,
            "wall_time": self.wall_time,  # excluded from content comparisons
        }


def _fmt(x, exact: bool) -> str:
    if exact:
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)
    return f"{float(x):.17g}"


def _ensemble_from_args(args) -> EnsembleSpec | SupportInterval:
    if getattr(args, "support", None) is not None:
        lo, hi = args.support
        if args.exact:
            lo, hi = Fraction(lo), Fraction(hi)
        else:
            lo, hi = float(lo), float(hi)
        return SupportInterval(lo, hi)
    kind = args.ensemble
    if kind == "gaussian":
        return EnsembleSpec.gaussian(beta=args.beta)
    if kind == "wishart":
        c = Fraction(args.c) if args.exact else float(Fraction(args.c))
        return EnsembleSpec.wishart(c, beta=args.beta)
    if kind == "jacobi":
        return EnsembleSpec.jacobi(args.gamma1, args.gamma2, beta=args.beta)
    raise ValueError("specify --ensemble (gaussian|wishart|jacobi)"
                     + (" or --support A B" if hasattr(args, "support") else ""))


def _table_csv(table: CovarianceTable, beta: float, out):
    out.write("kappa,ell,alpha_over_beta\n")
    exact = table.exact and float(beta) == int(beta)
    for k in range(1, table.order + 1):
        for l in range(1, table.order + 1):
            v = table.value(k, l)
            cell = (_fmt(Fraction(v) / int(beta), True) if exact
                    else _fmt(float(v) / float(beta), False))
            out.write(f"{k},{l},{cell}\n")


def _table_text(table: CovarianceTable, beta: float) -> str:
    lines = [f"# support [{table.support.a}, {table.support.b}]  order {table.order}  "
             f"provenance {table.provenance}  (entries are alpha/beta, beta={beta})"]
    exact = table.exact and float(beta) == int(beta)
    cells = [[_fmt(Fraction(table.value(k, l)) / int(beta), True) if exact
              else _fmt(float(table.value(k, l)) / float(beta), False)
              for l in range(1, table.order + 1)] for k in range(1, table.order + 1)]
    width = max(len(c) for row in cells for c in row)
    for row in cells:
        lines.append("  ".join(c.rjust(width) for c in row))
    return "\n".join(lines)


def _emit(args, report: RunReport, text: str):
    if getattr(args, "format", "text") == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_cov(args) -> int:
    source = _ensemble_from_args(args)
    if isinstance(source, SupportInterval) and args.exact and not source.is_exact:
        raise ValueError("--exact requires rational support edges (use p/q literals)")
    table = covariance_table(source, args.kmax)
    if args.exact and not table.exact:
        raise ValueError("exact output impossible for this ensemble "
                         "(irrational parameters); drop --exact")
    beta = args.beta
    if args.out:
        with open(args.out, "w") as fh:
            _table_csv(table, beta, fh)
    report = RunReport(command=sys.argv[1:], version=__version__, seed=None,
                       payload={"order": args.kmax, "exact": table.exact,
                                "entries": [[_fmt(v, table.exact) for v in row]
                                            for row in table.entries]})
    if args.format == "csv":
        _table_csv(table, beta, sys.stdout)
        return 0
    _emit(args, report, _table_text(table, beta))
    return 0


def cmd_genfun(args) -> int:
    lo, hi = args.support
    if args.expand:
        support = SupportInterval(Fraction(lo), Fraction(hi))
        table = expand_F(support, args.expand)
        report = RunReport(command=sys.argv[1:], version=__version__, seed=None,
                           payload=[[_fmt(v, True) for v in row] for row in table.entries])
        _emit(args, report, _table_text(table, args.beta))
        return 0
    support = SupportInterval(float(Fraction(lo)), float(Fraction(hi)))
    z, zeta = args.z, args.zeta
    direct = eval_F(support, args.beta, z, zeta)
    values = {"direct": direct}
    if support.is_symmetric:
        values["symmetric"] = eval_F_symmetric(float(support.b), args.beta, z, zeta)
    if z not in (0.0, zeta) and zeta != 0.0:
        values["joukowski"] = eval_F_joukowski(support, args.beta, z, zeta)
    dev = max(abs(v - direct) for v in values.values())
    report = RunReport(command=sys.argv[1:], version=__version__, seed=None,
                       payload={"z": z, "zeta": zeta, **values, "max_deviation": dev})
    text = "\n".join([f"F({z}, {zeta}) on [{lo}, {hi}], beta={args.beta}"]
                     + [f"  {name:10s} {val:.17g}" for name, val in values.items()]
                     + [f"  max deviation {dev:.3g}"])
    _emit(args, report, text)
    return 0


def cmd_density(args) -> int:
    ens = _ensemble_from_args(args)
    if isinstance(ens, SupportInterval):
        raise ValueError("density needs --ensemble, not a bare support")
    grid = DensityGrid.from_ensemble(ens, args.grid)
    if args.out:
        with open(args.out, "w") as fh:
            grid.to_csv(fh)
    pot = potential_for(ens)
    stride = max(1, args.grid // 16)
    dev = max(abs(tricomi_density(pot, float(x)) - float(v))
              for x, v in zip(grid.nodes[::stride], grid.values[::stride]))
    norm = grid.normalization()
    report = RunReport(command=sys.argv[1:], version=__version__, seed=None,
                       payload={"nodes": args.grid, "normalization": norm,
                                "tricomi_max_deviation": dev,
                                "out": args.out})
    text = (f"density grid: {args.grid} nodes on [{grid.support.a:.6g}, {grid.support.b:.6g}]\n"
            f"  normalization      {norm:.12g}\n"
            f"  reconstruction dev {dev:.3g}"
            + (f"\n  wrote {args.out}" if args.out else ""))
    _emit(args, report, text)
    return 0


def cmd_mc(args) -> int:
    ens = _ensemble_from_args(args)
    if isinstance(ens, SupportInterval):
        raise ValueError("mc needs --ensemble, not a bare support")
    config = MCConfig(ensemble=ens, N=args.N, samples=args.samples, seed=args.seed,
                      workers=args.workers, kmax=args.kmax, burn_in=args.burn_in,
                      thin=args.thin, step_size=args.step_size)
    t0 = time.perf_counter()
    est = estimate(config)
    rows = correlation_comparison(est, ens)
    cov_rows = covariance_comparison(est, ens)
    report = RunReport(command=sys.argv[1:], version=__version__, seed=args.seed,
                       payload={"estimate": est.to_dict(),
                                "correlations": rows, "covariances": cov_rows},
                       wall_time=time.perf_counter() - t0)
    if args.csv_out:
        with open(args.csv_out, "w") as fh:
            fh.write("kappa,ell,empirical,theory,stderr\n")
            for r in cov_rows:
                fh.write(f"{r['kappa']},{r['ell']},{r['empirical']:.17g},"
                         f"{r['theory']:.17g},{r['stderr']:.17g}\n")
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
        return 0
    lines = [f"MC estimate: {ens.kind}, N={args.N}, n={args.samples}, seed={args.seed}, "
             f"ess={est.ess:.0f}",
             "  k  l   r_empirical      r_theory    stderr        z"]
    for r in rows:
        lines.append(f"  {r['kappa']}  {r['ell']}  {r['empirical']:12.6f}  "
                     f"{r['theory']:12.6f}  {r['stderr']:.2e}  {r['z']:+7.2f}")
    print("\n".join(lines))
    return 0


def cmd_count(args) -> int:
    n = count_connected_annular(args.kappa, args.ell, cap=args.cap)
    half = gaussian_cov(args.kappa, args.ell) / 2
    agree = n == half
    report = RunReport(command=sys.argv[1:], version=__version__, seed=None,
                       payload={"kappa": args.kappa, "ell": args.ell, "count": n,
                                "half_gaussian_cov": _fmt(half, True), "agree": agree})
    report.checks.append(("pairing-count vs covariance/2", agree, f"{n} vs {half}"))
    _emit(args, report,
          f"connected genus-0 pairings ({args.kappa}, {args.ell}): {n}\n"
          f"half Gaussian covariance: {half}  ->  {'agree' if agree else 'MISMATCH'}")
    return 0 if agree else 4


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------

def _table1_literal():
    return [[2, 0, 6, 0, 20, 0, 70, 0], [0, 4, 0, 16, 0, 60, 0, 224],
            [6, 0, 24, 0, 90, 0, 336, 0], [0, 16, 0, 72, 0, 288, 0, 1120],
            [20, 0, 90, 0, 360, 0, 1400, 0], [0, 60, 0, 288, 0, 1200, 0, 4800],
            [70, 0, 336, 0, 1400, 0, 5600, 0], [0, 224, 0, 1120, 0, 4800, 0, 19600]]


def _verify_checks(level: str, seed: int, corrupt: bool):
    yield from _verify_exact(corrupt)
    yield from _verify_identities()
    yield from _verify_oracles(level)
    if level == "full":
        yield from _verify_mc(seed)


def _verify_exact(corrupt: bool):
    t1 = expand_F(SupportInterval(-2, 2), 8)
    lit = _table1_literal()
    if corrupt:
        lit = [row[:] for row in lit]
        lit[2][4] += 1  # deliberate corruption to exercise the failure path
    ok = all(t1.value(k, l) == lit[k - 1][l - 1]
             and gaussian_cov(k, l) == lit[k - 1][l - 1]
             for k in range(1, 9) for l in range(1, 9))
    yield ("gaussian table: series vs closed form vs literal", ok, "8x8 exact")
    cross = expand_F_crosscheck(SupportInterval(-2, 2), 8)
    yield ("series route vs coefficient-extraction route", t1.entries == cross.entries, "8x8")
    w_ok = True
    for c in (1, 2, 3, 7):
        t2c = [[2 * c, 4 * (c + c ** 2), 6 * (c + 3 * c ** 2 + c ** 3)],
               [4 * (c + c ** 2), 4 * (2 * c + 5 * c ** 2 + 2 * c ** 3),
                12 * (c + 5 * c ** 2 + 5 * c ** 3 + c ** 4)],
               [6 * (c + 3 * c ** 2 + c ** 3), 12 * (c + 5 * c ** 2 + 5 * c ** 3 + c ** 4),
                6 * (3 * c + 24 * c ** 2 + 46 * c ** 3 + 24 * c ** 4 + 3 * c ** 5)]]
        w_ok &= all(wishart_cov(Fraction(c), k, l) == t2c[k - 1][l - 1]
                    for k in range(1, 4) for l in range(1, 4))
    yield ("wishart 3x3 polynomials at c in {1,2,3,7}", w_ok, "exact rational")
    j_ok = all(jacobi_symmetric_cov(k, l) == zero_edge_cov(Fraction(1, 2), k, l)
               for k in range(1, 6) for l in range(1, 6))
    yield ("jacobi gamma=0 5x5 vs [0,1] closed form", j_ok, "exact rational")
    hom = expand_F(SupportInterval(-3, 3), 5)
    base = expand_F(SupportInterval(-2, 2), 5)
    ok = all(hom.value(k, l) == Fraction(3, 2) ** (k + l) * base.value(k, l)
             for k in range(6) for l in range(6))
    yield ("homogeneity under support scaling", ok, "t=3/2 exact")
    try:
        t1.check_invariants()
        yield ("symmetry/zero-row/parity invariants", True, "exact")
    except AssertionError as exc:
        yield ("symmetry/zero-row/parity invariants", False, str(exc))


def _verify_identities():
    rng = np.random.default_rng(20260809)
    supports = [SupportInterval(-2.0, 2.0), SupportInterval(0.0, 4.0),
                SupportInterval(0.0, 1.0), SupportInterval(-1.0, 3.0),
                SupportInterval(-0.5, 2.5)]
    worst = 0.0
    for s in supports:
        r = 0.95 / s.radius
        for _ in range(100):
            z, zeta = rng.uniform(-r, r, size=2)
            if abs(z) < 1e-3 or abs(zeta) < 1e-3 or abs(z - zeta) < 1e-3:
                continue
            worst = max(worst, abs(eval_F(s, 1.0, z, zeta)
                                   - eval_F_joukowski(s, 1.0, z, zeta)))
    yield ("direct vs joukowski on randomized grids", worst <= 1e-10, f"max dev {worst:.2e}")
    table = expand_F(SupportInterval(-2, 2), 24)
    target = eval_F(SupportInterval(-2.0, 2.0), 1.0, 0.2, 0.1)
    errs = []
    for K in range(1, 25):
        partial = sum(float(table.value(k, l)) * 0.2 ** k * 0.1 ** l
                      for k in range(1, K + 1) for l in range(1, K + 1))
        errs.append(abs(partial - target))
    mono = all(e2 <= e1 + 1e-15 for e1, e2 in zip(errs, errs[1:]))
    yield ("partial sums converge monotonically to eval_F", mono and errs[-1] <= 1e-8,
           f"final error {errs[-1]:.2e}")


def _verify_oracles(level: str):
    cap = 12 if level == "quick" else 16
    ok = True
    for total in range(2, cap + 1, 2):
        for k in range(1, total // 2 + 1):
            l = total - k
            if count_connected_annular(k, l) != gaussian_cov(k, l) / 2:
                ok = False
    yield (f"pairing counts = half covariances (k+l <= {cap})", ok, "exhaustive")
    kl = 2 if level == "quick" else 6
    worst = 0.0
    for s in (SupportInterval(-2, 2), SupportInterval(0, 4), SupportInterval(0, 1)):
        ex = expand_F(s, kl)
        sf = SupportInterval(float(s.a), float(s.b))
        for k in range(1, kl + 1):
            for l in range(1, kl + 1):
                q = cov_quadrature(sf, k, l)
                worst = max(worst, abs(q - float(ex.value(k, l)))
                            / max(1.0, abs(float(ex.value(k, l)))))
    yield (f"quadrature oracle (k,l <= {kl}, three supports)", worst <= 1e-6,
           f"max rel dev {worst:.2e}")
    ratio = float(zero_edge_cov(2, 40, 40)) / asymptotic_cov(2.0, 40, 40)
    yield ("asymptotic growth ratio at k=l=40", 0.97 <= ratio <= 1.03, f"{ratio:.4f}")


def _verify_mc(seed: int):
    for ens, name in ((EnsembleSpec.wishart(1, beta=2.0), "wishart c=1"),
                      (EnsembleSpec.jacobi(0.0, 0.0, beta=2.0), "jacobi 0,0")):
        cfg = MCConfig(ensemble=ens, N=50, samples=10_000, seed=seed, workers=4, kmax=8)
        est = estimate(cfg)
        rows = [r for r in correlation_comparison(est, ens, kmax=8, lmax=5)]
        nbad = sum(abs(r["z"]) > 3 for r in rows)
        maxdev = max(abs(r["empirical"] - r["theory"]) for r in rows)
        ok = nbad <= len(rows) // 10 and maxdev <= 0.05
        yield (f"MC correlations {name} (N=50, n=1e4)", ok,
               f"{nbad}/{len(rows)} |z|>3, max dev {maxdev:.3f}")
    ratio_cfg = []
    for beta in (1.0, 4.0):
        cfg = MCConfig(ensemble=EnsembleSpec.gaussian(beta=beta), N=50,
                       samples=10_000, seed=seed, workers=4, kmax=2)
        est = estimate(cfg)
        ratio_cfg.append(float(est.covariance[1, 1]))
    ratio = ratio_cfg[0] / ratio_cfg[1]
    yield ("beta-scaling: cov ratio beta=1 vs beta=4", 3.4 <= ratio <= 4.6, f"{ratio:.3f}")


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    report = RunReport(command=sys.argv[1:], version=__version__, seed=args.seed, payload=None)
    for name, ok, detail in _verify_checks(args.level, args.seed, args.inject_corruption):
        report.checks.append((name, ok, detail))
        if args.format != "json":
            print(f"[{'PASS' if ok else 'FAIL'}] {name} ({detail})")
    report.wall_time = time.perf_counter() - t0
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"{'all checks passed' if report.passed else 'FAILURES PRESENT'} "
              f"in {report.wall_time:.1f}s")
    return 0 if report.passed else 4


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_ensemble_args(p, with_support=True):
    p.add_argument("--ensemble", choices=("gaussian", "wishart", "jacobi"))
    p.add_argument("--c", default="1", help="Wishart aspect ratio (rational literal ok)")
    p.add_argument("--gamma1", type=float, default=0.0)
    p.add_argument("--gamma2", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--exact", action="store_true", help="exact rational arithmetic/output")
    if with_support:
        p.add_argument("--support", nargs=2, metavar=("A", "B"),
                       help="bare support edges instead of an ensemble")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="onecut",
                                 description="limiting covariances of power-trace moments "
                                             "for one-cut beta-ensembles")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("cov", help="covariance table")
    _add_ensemble_args(p)
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="write CSV to this path")
    p.set_defaults(fn=cmd_cov)

    p = sub.add_parser("genfun", help="generating function evaluation/expansion")
    p.add_argument("--support", nargs=2, metavar=("A", "B"), required=True)
    p.add_argument("--z", type=float, default=0.1)
    p.add_argument("--zeta", type=float, default=0.05)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--expand", type=int, metavar="K", help="exact expansion order")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_genfun)

    p = sub.add_parser("density", help="density grid and reconstruction report")
    _add_ensemble_args(p, with_support=False)
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("mc", help="Monte Carlo estimate vs theory")
    _add_ensemble_args(p, with_support=False)
    p.add_argument("--N", type=int, default=50)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--burn-in", type=int, default=100, help="Metropolis burn-in sweeps")
    p.add_argument("--thin", type=int, default=None, help="Metropolis sweeps per kept state")
    p.add_argument("--step-size", type=float, default=None,
                   help="initial Metropolis step (adapted during burn-in unless --burn-in 0)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--csv-out", help="write kappa,ell,empirical,theory,stderr CSV")
    p.set_defaults(fn=cmd_mc)

    p = sub.add_parser("count", help="annular pairing count")
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--cap", type=int, default=16)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("verify", help="cross-check suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--inject-corruption", action="store_true",
                   help="testing aid: corrupt one table entry to force a failure")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if hasattr(args, "seed") and args.seed is None:
        args.seed = int(os.environ.get("ONECUT_SEED", DEFAULT_SEED))
    try:
        return args.fn(args)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
