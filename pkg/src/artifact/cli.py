"""Command-line front end: verification suites, tables and the Hilbert symbol.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on a
configuration error.  Reports are JSON with ``schema: 1`` and are identical
for identical seeds (no timings or host data are recorded).
"""
from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

import click

from .padic import PAdicElem, PrimeContext, hilbert3

SCHEMA = 1
SUITES = ("hilbert", "cocycle", "splitting", "gauss", "whittaker", "coperiod", "ktype", "arch")


@dataclass
class RunConfig:
    p: int = 7
    M: int = 6
    c: int = 0
    N: int = 20
    seed: int = 0
    samples: int = 10000
    L: int = 3

    def validate(self) -> PrimeContext:
        if self.c not in (0, 1, 2):
            raise click.UsageError(f"--c must be 0, 1 or 2 (got {self.c})")
        if self.N < 0 or self.samples < 1 or self.L < 1:
            raise click.UsageError("--order, --samples and --L must be positive")
        try:
            return PrimeContext(self.p, self.M)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc


def check(name: str, inputs, expected, provenance: str, computed, ok: bool) -> dict:
    return {"name": name, "inputs": inputs, "expected": expected, "provenance": provenance,
            "computed": computed, "pass": bool(ok)}


def _f(x: float) -> float:
    return float(f"{x:.6e}")


# suites ------------------------------------------------------------------------

def suite_hilbert(cfg: RunConfig) -> list[dict]:
    from .padic import hilbert_axiom_sweep

    out = []
    n = min(cfg.samples, 1000)
    for q in (7, 13, 19):
        res = hilbert_axiom_sweep(PrimeContext(q, cfg.M), n, cfg.seed)
        for axiom, r in res.items():
            out.append(check(f"hilbert.{axiom}", {"q": q, "samples": n, "seed": cfg.seed},
                             {"failures": 0}, "TRIVIAL", r, r["failures"] == 0))
    return out


def suite_cocycle(cfg: RunConfig) -> list[dict]:
    from .cover import CocycleParams, cocycle_sweep, cocycle_sweep_batch

    params = CocycleParams(PrimeContext(cfg.p, cfg.M), cfg.c)
    r = cocycle_sweep_batch(params, cfg.samples, cfg.seed)
    r.pop("backend", None)
    inputs = {"p": cfg.p, "M": cfg.M, "c": cfg.c, "samples": cfg.samples, "seed": cfg.seed}
    out = [check("cocycle.batched", inputs, {"failures": 0}, "PAPER", r, r["failures"] == 0)]
    n = min(cfg.samples, 1000)
    r = cocycle_sweep(params, n, cfg.seed)
    out.append(check("cocycle.object", dict(inputs, samples=n), {"failures": 0}, "PAPER", r,
                     r["failures"] == 0))
    return out


def suite_splitting(cfg: RunConfig) -> list[dict]:
    from .cover import CocycleParams, splitting_sweep, unipotent_sweep

    params = CocycleParams(PrimeContext(cfg.p, cfg.M), cfg.c)
    inputs = {"p": cfg.p, "M": cfg.M, "c": cfg.c, "samples": cfg.samples, "seed": cfg.seed}
    r1 = splitting_sweep(params, cfg.samples, cfg.seed)
    r2 = unipotent_sweep(params, cfg.samples, cfg.seed)
    return [check("splitting.kappa", inputs, {"failures": 0}, "PAPER", r1, r1["failures"] == 0),
            check("splitting.unipotent", inputs, {"failures": 0}, "PAPER", r2, r2["failures"] == 0)]


def suite_gauss(cfg: RunConfig) -> list[dict]:
    from .symrat import SymPoly, reduce_gauss
    from .whittaker import gauss_sum_numeric, gauss_sum_reference, gauss_values

    out = []
    qs = sorted({7, 13, 19, cfg.p})
    for q in qs:
        ctx = PrimeContext(q)
        g0 = gauss_sum_numeric(ctx, 0)
        out.append(check("gauss.g0", {"q": q}, -1, "DERIVED", [_f(g0.real), _f(g0.imag)],
                         abs(g0 + 1) < 1e-12))
        for i in (1, 2):
            g = gauss_sum_numeric(ctx, i)
            ref = gauss_sum_reference(ctx, i)
            out.append(check("gauss.abs2", {"q": q, "i": i}, q, "DERIVED", _f(abs(g) ** 2),
                             abs(abs(g) ** 2 - q) < 1e-9 and abs(g - ref) < 1e-9))
        vals = gauss_values(ctx)
        for i in (1, 2):
            sym = reduce_gauss(SymPoly.atom(f"G{i}") * SymPoly.atom(f"Gb{i}"))
            num = sym.evaluate({"Q": q**0.5})
            direct = vals[f"G{i}"] * vals[f"Gb{i}"]
            out.append(check("gauss.symbolic", {"q": q, "i": i}, "Q^2", "DERIVED", sym.text(),
                             sym == SymPoly.atom("Q", 2) and abs(num - direct) < 1e-9))
    return out


def suite_whittaker(cfg: RunConfig) -> list[dict]:
    from .chars import TorusCharSpec, compile_for
    from .symrat import SymPoly
    from .whittaker import build_c_table, check_cons, spherical_pair, whittaker_inner

    out = []
    N = 30
    for d in (3, 1):
        rules = compile_for(d)
        for sign in (1, -1):
            for dual in (False, True):
                chi = TorusCharSpec(sign, d)
                chi = chi.dualize() if dual else chi
                bad = check_cons(build_c_table(chi, (-8, 4, -8, 4)), rules)
                out.append(check("whittaker.cons", {"d": d, "sign": sign, "dual": dual},
                                 [], "PAPER", [list(b) for b in bad], not bad))
            W, Wv = spherical_pair(sign, d, 3 * N + 3)
            r = whittaker_inner(W, Wv, N, d, rules)
            exp = sum((SymPoly.atom("Q", -2 * k) for k in range(N + 1)), SymPoly())
            out.append(check("whittaker.petersson", {"d": d, "sign": sign, "N": N},
                             "zeta(1) to Q^-2N", "PAPER", r.text()[:200],
                             r.num == exp and r.den == SymPoly.const(1)))
    return out


def suite_coperiod(cfg: RunConfig) -> list[dict]:
    from .coperiod import (eisenstein_factor, specialization, torus_integral_constants,
                           verify_theorem)

    out = []
    rep = verify_theorem(cfg.c, cfg.N, seed=cfg.seed)
    inputs = {"c": cfg.c, "d": rep.d, "N": cfg.N}
    out.append(check("coperiod.theorem", inputs, rep.rhs_text, "PAPER", rep.I_text, rep.identity))
    for name, ok in rep.displays.items():
        out.append(check(f"coperiod.display.{name}", inputs, True, "PAPER", ok, ok))
    out.append(check("coperiod.series_oracle", inputs, True, "DERIVED", rep.series_ok, rep.series_ok))
    out.append(check("coperiod.numeric", dict(inputs, q=7, seed=cfg.seed), "< 1e-9", "DERIVED",
                     _f(rep.numeric_residual), rep.numeric_residual < 1e-9))
    for u in (1, -1):
        s = specialization(rep.d, u)
        out.append(check("coperiod.specialization.stated", {"d": rep.d, "u": u}, s["stated_text"],
                         "PAPER", s["I"], s["stated"]))
        out.append(check("coperiod.specialization.twisted", {"d": rep.d, "u": u},
                         "L(1/2, Sym3 x eta^u) / L(1, ad)", "DERIVED", s["twisted"], s["twisted"]))
    e = eisenstein_factor(rep.d)
    out.append(check("coperiod.eisenstein", {"d": rep.d}, "zeta(1+s)zeta(2+3s)/zeta(2+2s)",
                     "PAPER", e["psi"], e["identity"] and e["series"] and e["at_s0"]))
    t = torus_integral_constants(seed=cfg.seed)
    worst = max(t["route_residuals"].values())
    out.append(check("coperiod.torus_integral", {"seed": cfg.seed}, t["constant"], "PAPER",
                     _f(worst), t["constant_ok"] and t["weights_times_constant_is_one"]
                     and worst < 1e-9))
    return out


def suite_ktype(cfg: RunConfig) -> list[dict]:
    from .ktypes import ktype_report, level_consistency_report

    rep = ktype_report(cfg.p, cfg.L, seed=cfg.seed)
    out = []
    for r in rep["counts"]:
        out.append(check("ktype.double_cosets", {k: r[k] for k in ("c", "mp", "m")},
                         r["expected"], "PAPER", r["count"],
                         r["count"] == r["expected"] and r["bijective"]
                         and r["orbit_total"] == r["space"]))
    tables: dict[tuple, list] = {}
    for case in rep["cases"]:
        tables.setdefault((case["table"], case["c"]), []).append(case)
    for (table, c), cases in sorted(tables.items()):
        bad = [{k: v for k, v in x.items() if k != "match"} for x in cases if not x["match"]]
        out.append(check(f"ktype.table.{table}", {"c": c, "p": cfg.p, "L": cfg.L},
                         "displayed case values", "PAPER",
                         {"cases": len(cases), "mismatches": bad}, not bad))
    out.append(check("ktype.backstop", {"samples": 200}, True, "DERIVED", rep["backstop_ok"],
                     rep["backstop_ok"]))
    for r in level_consistency_report(4):
        out.append(check("ktype.level_consistency", {"c": r["c"], "m": r["m"]}, r["expected"],
                         "PAPER", r["dim"], r["ok"]))
    return out


def suite_arch(cfg: RunConfig) -> list[dict]:
    from .arch import arch_identity_check, arch_ratio, gamma_mult_check, gamma_mult_sweep

    out = []
    for t, l in ((0.0, 0), (0.1, 2), (-0.05, 1)):
        r = arch_identity_check(t, l)
        out.append(check("arch.identity", {"t": t, "l": l}, "< 1e-8", "PAPER",
                         {"residual": _f(r), "ratio": _f(arch_ratio(t, l))}, r < 1e-8))
        rc = arch_identity_check(t, -l)
        out.append(check("arch.conjugate_symmetry", {"t": t, "l": l}, _f(r), "TRIVIAL", _f(rc),
                         abs(r - rc) < 1e-12))
    for z in (1 / 3, 0.37):
        r = gamma_mult_check(z)
        out.append(check("arch.gamma_mult", {"z": _f(z)}, "< 1e-9", "DERIVED", _f(r), r < 1e-9))
    sweep = gamma_mult_sweep(20, cfg.seed)
    worst = max(r for _, r in sweep)
    out.append(check("arch.gamma_mult_sweep", {"n": 20, "seed": cfg.seed}, "< 1e-9", "DERIVED",
                     _f(worst), worst < 1e-9))
    return out


SUITE_FUNCS = {name: globals()[f"suite_{name}"] for name in SUITES}


def run_suites(names, cfg: RunConfig) -> dict:
    checks = []
    for name in names:
        checks.extend(SUITE_FUNCS[name](cfg))
    return {"schema": SCHEMA, "config": asdict(cfg), "suites": list(names), "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def dump(report, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        rows = report["checks"] if isinstance(report, dict) and "checks" in report else report
        buf = io.StringIO()
        if rows:
            cols = list(rows[0].keys())
            w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list))
                            else v for k, v in r.items()})
        text = buf.getvalue()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands ------------------------------------------------------------------------

def common(fn):
    opts = [
        click.option("--p", "p", default=7, show_default=True, help="Residue characteristic."),
        click.option("--precision", "M", default=6, show_default=True, help="p-adic precision."),
        click.option("--c", "c", default=0, show_default=True, help="Cover parameter in {0,1,2}."),
        click.option("--order", "N", default=20, show_default=True, help="Series truncation."),
        click.option("--seed", default=0, show_default=True),
        click.option("--samples", default=10000, show_default=True),
        click.option("--L", "L", default=3, show_default=True, help="Level bound for K-types."),
        click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json"),
        click.option("--out", type=click.Path(dir_okay=False), default=None),
    ]
    for o in reversed(opts):
        fn = o(fn)
    return fn


def _config(p, M, c, N, seed, samples, L) -> RunConfig:
    cfg = RunConfig(p, M, c, N, seed, samples, L)
    cfg.validate()
    return cfg


@click.group()
def main():
    """Checks for the cubic-cover co-period computations."""


@main.command()
@click.option("--p", "p", default=7, show_default=True)
@click.option("--precision", "M", default=6, show_default=True)
@click.argument("a")
@click.argument("b")
def hilbert(p, M, a, b):
    """Cubic Hilbert symbol of two literals val:unit, printed as an exponent in Z/3."""
    ctx = RunConfig(p=p, M=M).validate()
    try:
        x, y = PAdicElem.parse(ctx, a), PAdicElem.parse(ctx, b)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    click.echo(int(hilbert3(x, y)))


@main.command()
@click.argument("suite", type=click.Choice(SUITES + ("all",)))
@common
def verify(suite, p, M, c, N, seed, samples, L, fmt, out):
    """Run one verification suite (or all) and emit a report."""
    cfg = _config(p, M, c, N, seed, samples, L)
    names = SUITES if suite == "all" else (suite,)
    report = run_suites(names, cfg)
    dump(report, fmt, out)
    sys.exit(0 if report["pass"] else 1)


def _alias(name: str, suite: str, doc: str):
    @main.command(name=name, help=doc)
    @common
    def cmd(p, M, c, N, seed, samples, L, fmt, out):
        cfg = _config(p, M, c, N, seed, samples, L)
        report = run_suites((suite,), cfg)
        dump(report, fmt, out)
        sys.exit(0 if report["pass"] else 1)
    return cmd


_alias("coperiod-verify", "coperiod", "Same as `verify coperiod`.")
_alias("ktype-count", "ktype", "Same as `verify ktype`.")
_alias("arch-check", "arch", "Same as `verify arch`.")


@main.command()
@click.argument("kind", type=click.Choice(["whittaker", "lfactor"]))
@click.option("--window", nargs=2, type=int, default=(-3, 3), show_default=True,
              help="Inclusive range for both coordinates (whittaker).")
@click.option("--sign", type=click.Choice(["+", "-"]), default="+")
@click.option("--dual", is_flag=True)
@click.option("--rep", type=click.Choice(["sym3", "adjoint", "zeta"]), default="sym3")
@click.option("--s0", default="1/2", show_default=True)
@click.option("--c", "c", default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def table(kind, window, sign, dual, rep, s0, c, fmt, out):
    """Canonical text tables of W(eta_{a,b}) or of a local L-factor."""
    from .chars import TorusCharSpec
    from .coperiod import l_factor
    from .cover import CocycleParams
    from .whittaker import WhittakerTable, build_c_table

    if c not in (0, 1, 2):
        raise click.UsageError("--c must be 0, 1 or 2")
    rows = []
    if kind == "whittaker":
        lo, hi = window
        if lo <= hi:
            d = CocycleParams(PrimeContext(7), c).d
            chi = TorusCharSpec(1 if sign == "+" else -1, d)
            chi = chi.dualize() if dual else chi
            span = (min(-hi, 0) - 1, max(-lo, 0) + 1)
            W = WhittakerTable(build_c_table(chi, span + span))
            rows = [{"a": a, "b": b, "value": W(a, b).text()}
                    for a in range(lo, hi + 1) for b in range(lo, hi + 1)]
    else:
        try:
            f = l_factor(rep, Fraction(s0))
            rows = [{"rep": rep, "s0": str(f.s0), "value": f.text()}]
        except (ValueError, ZeroDivisionError) as exc:
            raise click.UsageError(str(exc)) from exc
    report = {"schema": SCHEMA, "kind": kind, "rows": rows}
    if fmt == "csv":
        dump({"checks": rows}, "csv", out)
    else:
        dump(report, "json", out)


if __name__ == "__main__":  # pragma: no cover
    main()
