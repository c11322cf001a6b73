"""Command line interface.

Exit status: 0 when every verdict passes, 1 for a certified mismatch or a
Refuted verdict, 2 for Inconclusive results, 3 for usage and input errors.
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path

import click

from . import acceptance
from .algebra import GradedAlgebra, PresentationError, WindowError
from .fixtures import DMAX, HMAX, KMAX, SEED
from .gorenstein import check_as_gorenstein, dualizing_module
from .homology import BigradedTable, ext, ext_into_algebra, resolve
from .localcoh import gamma_via_limit, verify_lcf
from .modspec import SpecError, parse_module
from .module import regular, simple
from .presentation import load_algebra, parse_field, parse_file
from .report import (Report, algebra_summary, hilbert_summary, render_comparison, render_pairs, render_table,
                     resolution_summary)

EXIT_USAGE = 3


class InputError(click.ClickException):
    exit_code = EXIT_USAGE


def _common(fn):
    """Options shared by every command."""
    opts = [
        click.option("--field", "field_text", default=None, help="rationals or a prime; overrides the file"),
        click.option("--dmax", type=click.IntRange(0), default=DMAX, show_default=True,
                     help="highest algebra degree built"),
        click.option("--hmax", type=click.IntRange(0), default=HMAX, show_default=True,
                     help="highest homological degree"),
        click.option("--kmax", type=click.IntRange(1), default=KMAX, show_default=True,
                     help="last truncation stage for local cohomology"),
        click.option("--seed", type=int, default=SEED, show_default=True, help="seed for random sampling"),
        click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="write the JSON report here"),
        click.option("--figures", type=click.Path(file_okay=False, path_type=Path), default=None,
                     help="render figures into this directory"),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _finish(report: Report, text: list[str], out: Path | None) -> int:
    click.echo("\n".join(t.rstrip("\n") for t in text))
    click.echo(f"# exit {report.exit_code}")
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report.dumps())
    return report.exit_code


def _load(path: str, field_text: str | None, dmax: int) -> GradedAlgebra:
    try:
        field = parse_field(field_text) if field_text else None
        return load_algebra(parse_file(path, field), dmax)
    except (PresentationError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _module(text: str, a: GradedAlgebra):
    try:
        return parse_module(text, a)
    except SpecError as exc:
        raise InputError(str(exc)) from exc


def _flags(**kw) -> dict:
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in kw.items() if k not in ("out", "figures")}


def _plots(figures: Path | None):
    if figures is None:
        return None
    from . import plotting
    return plotting


def _guard(fn):
    """Turn engine errors raised by out-of-window requests into input errors."""
    @functools.wraps(fn)
    def run(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except WindowError as exc:
            raise InputError(f"bounds too small: {exc}") from exc
    return run


@click.group()
def cli():
    """Graded homological invariants of quiver algebras."""


# -- check --------------------------------------------------------------------------------

@cli.command()
@click.argument("algebra", type=click.Path(exists=True, dir_okay=False))
@_common
@_guard
def check(algebra, field_text, dmax, hmax, kmax, seed, out, figures):
    """Build ALGEBRA and audit its invariants."""
    a = _load(algebra, field_text, dmax)
    rep = Report("check", _flags(algebra=algebra, field=field_text, dmax=dmax, hmax=hmax, kmax=kmax, seed=seed))
    rep.add("algebra", algebra_summary(a))
    audit = {"associative": a.check_associativity(), "relations_annihilate": not regular(a).validate(),
             "opposite_involution": a.opposite().opposite().structure_signature() == a.structure_signature()}
    res_checks = {}
    for v in range(a.vertex_count):
        res = resolve(simple(a, v + 1), min(hmax, 4))
        res_checks[f"simple({v + 1})"] = {"boundary_squared_zero": res.check_complex(),
                                          "minimal": res.check_minimal(), "exact": res.check_exact()}
    audit["resolutions"] = res_checks
    ok = all(v for k, v in audit.items() if k != "resolutions") and \
        all(all(c.values()) for c in res_checks.values())
    rep.add("audit", audit)
    rep.verdict("pass" if ok else "fail")
    text = [render_pairs("algebra", [("name", a.name), ("field", a.field), ("vertices", a.vertex_count),
                                     ("dmax", dmax)]),
            render_pairs("dimension per degree", list(enumerate(a.dims()))),
            render_pairs("audit", [(k, v) for k, v in audit.items() if k != "resolutions"]
                         + [(f"{m} {k}", v) for m, c in res_checks.items() for k, v in c.items()])]
    plots = _plots(figures)
    if plots:
        plots.hilbert_bars(regular(a), f"{a.name or 'algebra'} hilbert", figures)
    return _finish(rep, text, out)


# -- resolve --------------------------------------------------------------------------------

def _betti_table(res) -> BigradedTable:
    t = BigradedTable("betti", bounds={"hmax": res.hmax, "E": res.E})
    for s in range(res.hmax + 1):
        for (_, d), c in res.multiplicities(s).items():
            t.dims[(s, d)] = t.dims.get((s, d), 0) + c
            t.certified[(s, d)] = res.complete(s)
    return t


@cli.command(name="resolve")
@click.argument("algebra", type=click.Path(exists=True, dir_okay=False))
@click.argument("module")
@_common
@_guard
def resolve_cmd(algebra, module, field_text, dmax, hmax, kmax, seed, out, figures):
    """Minimal projective resolution of MODULE."""
    a = _load(algebra, field_text, dmax)
    m = _module(module, a)
    res = resolve(m, hmax)
    rep = Report("resolve", _flags(algebra=algebra, module=module, field=field_text, dmax=dmax, hmax=hmax,
                                   kmax=kmax, seed=seed))
    rep.add("algebra", algebra_summary(a))
    rep.add("resolution", resolution_summary(res))
    checks = {"boundary_squared_zero": res.check_complex(), "minimal": res.check_minimal(),
              "exact": res.check_exact()}
    rep.add("checks", checks)
    rep.verdict("pass" if all(checks.values()) else "fail")
    if not all(res.complete(s) for s in range(hmax + 1)):
        rep.verdict("Inconclusive")
    betti = _betti_table(res)
    text = [render_table(f"generators of P_s for {m.name} (rows s, columns degree)", betti),
            render_pairs("checks", checks.items())]
    plots = _plots(figures)
    if plots:
        plots.table_heatmap(betti, f"betti {m.name}", figures)
    return _finish(rep, text, out)


# -- ext ------------------------------------------------------------------------------------

@cli.command(name="ext")
@click.argument("algebra", type=click.Path(exists=True, dir_okay=False))
@click.argument("first")
@click.argument("second")
@_common
@_guard
def ext_cmd(algebra, first, second, field_text, dmax, hmax, kmax, seed, out, figures):
    """Dimensions of Ext^s(FIRST, SECOND)_t."""
    a = _load(algebra, field_text, dmax)
    m, n = _module(first, a), _module(second, a)
    table = ext(m, n, hmax)
    rep = Report("ext", _flags(algebra=algebra, first=first, second=second, field=field_text, dmax=dmax,
                               hmax=hmax, kmax=kmax, seed=seed))
    rep.add("algebra", algebra_summary(a))
    rep.add("ext", table.to_json())
    title = f"Ext({m.name}, {n.name}) (rows s, columns degree; ? = uncertified)"
    plots = _plots(figures)
    if plots:
        plots.table_heatmap(table, f"ext {m.name} {n.name}", figures)
    return _finish(rep, [render_table(title, table)], out)


# -- gorenstein ----------------------------------------------------------------------------

@cli.command()
@click.argument("algebra", type=click.Path(exists=True, dir_okay=False))
@_common
@_guard
def gorenstein(algebra, field_text, dmax, hmax, kmax, seed, out, figures):
    """Decide the graded AS-Gorenstein conditions within the bounds."""
    a = _load(algebra, field_text, dmax)
    g = check_as_gorenstein(a, hmax)
    rep = Report("gorenstein", _flags(algebra=algebra, field=field_text, dmax=dmax, hmax=hmax, kmax=kmax,
                                      seed=seed))
    rep.add("algebra", algebra_summary(a))
    rep.add("gorenstein", g.to_json())
    rep.verdict(g.verdict)
    pairs = [("verdict", g.verdict), ("n", g.n), ("reason", g.reason), ("tail_assumed", g.tail_assumed)]
    text = []
    if g.verified:
        pairs += [("sigma", " ".join(str(s + 1) for s in g.sigma)), ("shifts", " ".join(map(str, g.shifts)))]
        dz = dualizing_module(a, g)
        rep.add("dualizing_module", {"summands": [{"vertex": j + 1, "shift": s} for j, s in dz.summands],
                                     "hilbert": hilbert_summary(dz.as_left),
                                     "left_right_check": dz.hilbert_check.to_json()})
        rep.verdict(dz.hilbert_check.verdict)
        text.append(render_pairs("dualizing module (degree, dimension per vertex)",
                                 [(d, " ".join(map(str, by))) for d, by in dz.as_left.hilbert().items()]))
    text.insert(0, render_pairs("gorenstein", pairs))
    plots = _plots(figures)
    if plots:
        for v in range(a.vertex_count):
            tab = ext_into_algebra(simple(a, v + 1), hmax).table
            plots.table_heatmap(tab, f"ext simple {v + 1} into A", figures)
    return _finish(rep, text, out)


# -- local cohomology -----------------------------------------------------------------------

def _verified_or_exit(a: GradedAlgebra, hmax: int, rep: Report):
    g = check_as_gorenstein(a, hmax)
    rep.add("gorenstein", g.to_json())
    if not g.verified:
        rep.verdict(g.verdict)
    return g


@cli.command()
@click.argument("algebra", type=click.Path(exists=True, dir_okay=False))
@click.argument("module")
@click.option("--imax", type=click.IntRange(0), default=None,
              help="highest cohomological degree (default: n of a Verified algebra, else 2)")
@_common
@_guard
def localcoh(algebra, module, imax, field_text, dmax, hmax, kmax, seed, out, figures):
    """Local cohomology of MODULE as stabilized direct limits."""
    a = _load(algebra, field_text, dmax)
    m = _module(module, a)
    if kmax > a.dmax:
        raise InputError(f"--kmax {kmax} exceeds --dmax {a.dmax}")
    rep = Report("localcoh", _flags(algebra=algebra, module=module, imax=imax, field=field_text, dmax=dmax,
                                    hmax=hmax, kmax=kmax, seed=seed))
    rep.add("algebra", algebra_summary(a))
    if imax is None:
        g = check_as_gorenstein(a, hmax)
        imax = g.n if g.verified else 2
    lim = gamma_via_limit(m, imax, kmax, all_stages=figures is not None)
    rep.add("limit", lim.to_json())
    totals = lim.totals()
    # edge cells never stabilize inside a finite window; only a table without any stable cell is inconclusive
    if not any(totals.certified.values()):
        rep.verdict("Inconclusive")
    text = [render_table(f"local cohomology of {m.name} (rows i, columns degree; ? = not yet stable)", totals,
                         row_label="i"),
            render_pairs("summary", [("max nonzero i", lim.max_nonzero()), ("k_max", kmax)])]
    plots = _plots(figures)
    if plots:
        plots.table_heatmap(totals, f"local cohomology {m.name}", figures, row_label="i")
        plots.limit_stages(lim, f"stages {m.name}", figures)
    return _finish(rep, text, out)


@cli.command(name="verify-lcf")
@click.argument("algebra", type=click.Path(exists=True, dir_okay=False))
@click.argument("module")
@_common
@_guard
def verify_lcf_cmd(algebra, module, field_text, dmax, hmax, kmax, seed, out, figures):
    """Check the local cohomology formula for MODULE in every degree i <= n."""
    a = _load(algebra, field_text, dmax)
    m = _module(module, a)
    if kmax > a.dmax:
        raise InputError(f"--kmax {kmax} exceeds --dmax {a.dmax}")
    rep = Report("verify-lcf", _flags(algebra=algebra, module=module, field=field_text, dmax=dmax, hmax=hmax,
                                      kmax=kmax, seed=seed))
    rep.add("algebra", algebra_summary(a))
    g = _verified_or_exit(a, hmax, rep)
    if not g.verified:
        return _finish(rep, [render_pairs("gorenstein", [("verdict", g.verdict), ("reason", g.reason)])], out)
    dz = dualizing_module(a, g)
    lim = gamma_via_limit(m, g.n, kmax)
    formulas, text = [], []
    for i in range(g.n + 1):
        fr = verify_lcf(m, i, dz, g.n, g.op_shifts, kmax, lim)
        formulas.append(fr.to_json())
        rep.verdict(fr.verdict)
        text.append(render_comparison(fr.comparison))
    rep.add("formulas", formulas)
    text.insert(0, render_pairs("verdicts", [(f"i={f['i']}", f["verdict"]) for f in formulas]))
    plots = _plots(figures)
    if plots:
        plots.table_heatmap(lim.totals(), f"local cohomology {m.name}", figures, row_label="i")
    return _finish(rep, text, out)


# -- acceptance --------------------------------------------------------------------------------

@cli.command(name="verify-all")
@click.option("--only", default=None, help="comma-separated criterion numbers")
@_common
def verify_all(only, field_text, dmax, hmax, kmax, seed, out, figures):
    """Run the acceptance pipeline (criteria 1-9 at their pinned bounds)."""
    if field_text or dmax != DMAX or hmax != HMAX or kmax != KMAX:
        click.echo("# note: verify-all uses its pinned field and bounds", err=True)
    try:
        picked = sorted({int(x) for x in only.split(",")}) if only else None
    except ValueError as exc:
        raise InputError(f"bad --only value {only!r}") from exc
    if picked and not set(picked) <= set(acceptance.CRITERIA):
        raise InputError(f"criteria are numbered 1..{len(acceptance.CRITERIA)}")
    results = acceptance.run_all(seed, picked)
    rep = Report("verify-all", {"seed": seed, "only": picked})
    rep.add("criteria", [_strip_timing(r.to_json()) for r in results])
    for r in results:
        rep.verdict("pass" if r.passed else "fail")
    text = [render_pairs("criteria (number, passed, seconds, title)",
                         [(r.number, f"{'pass' if r.passed else 'FAIL'}\t{r.seconds:.1f}\t{r.title}")
                          for r in results])]
    plots = _plots(figures)
    if plots:
        plots.criteria_summary(results, "acceptance", figures)
    return _finish(rep, text, out)


def _strip_timing(obj):
    """Drop wall-clock fields so reports are byte-stable."""
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k not in ("seconds", "runtime")}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def main(argv: list[str] | None = None) -> int:
    try:
        code = cli.main(args=argv, prog_name="gradedhom", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return max(exc.exit_code, EXIT_USAGE)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    return code if isinstance(code, int) else 0


def entry() -> None:
    sys.exit(main())


__all__ = ["cli", "main", "entry"]
