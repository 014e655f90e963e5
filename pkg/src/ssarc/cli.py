"""
Benchmark harness: ``ssarc-bench run`` and ``ssarc-bench compare``.

``run`` solves named problems (or ``all``) and prints one record per
problem as a table, CSV or JSON.  ``compare`` checks a saved run against a
reference table, by default the bundled ``data/table1.csv``.

Exit codes: 0 when every run converged (or no divergence was found),
1 otherwise, 2 for usage errors.
"""

import argparse
import csv
import dataclasses
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .problems import get_problem, problem_names
from .solver import SolverConfig, solve

__all__ = ['RunRecord', 'Divergence', 'run_problems', 'format_records', 'parse_records',
           'read_records', 'load_reference', 'compare_records', 'main']

FIELDS = ('problem', 'n', 'm', 'nit', 'cpu_s', 'res', 'nif', 'nig', 'status')
_INT_FIELDS = {'n', 'm', 'nit', 'nif', 'nig'}
_FLOAT_FIELDS = {'cpu_s', 'res'}


@dataclass(frozen=True)
class RunRecord:
    """One row of the results table."""
    problem: str
    n: int
    m: int
    nit: int
    cpu_s: float
    res: float
    nif: int
    nig: int
    status: str = ''

    def as_dict(self):
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class Divergence:
    problem: str
    reason: str
    hard: bool = False


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

def _solve_one(name, config):
    p = get_problem(name)
    t0 = time.perf_counter()
    rep = solve(p, config)
    elapsed = time.perf_counter() - t0
    rec = RunRecord(p.name, p.n, p.m, rep.nit, elapsed, float(rep.res), rep.nif, rep.nig,
                    rep.status)
    trace = [dict(problem=p.name, **t.as_dict()) for t in rep.trace]
    return rec, trace


def run_problems(names, config=None, jobs=1, with_trace=False):
    """Solve each named problem and return records in the order given.

    Parameters
    ----------
    names : list of str or 'all'
    config : SolverConfig, optional
    jobs : int
        Worker processes; results keep the input order either way.
    with_trace : bool
        Also return the per-trial trace dictionaries.

    Returns
    -------
    records : list of RunRecord
    traces : list of list of dict
        Only when ``with_trace`` is true.
    """
    config = config or SolverConfig()
    if names == 'all':
        names = problem_names()
    names = [get_problem(n).name for n in names]
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            out = list(pool.map(_solve_one, names, [config] * len(names)))
    else:
        out = [_solve_one(n, config) for n in names]
    records = [r for r, _ in out]
    if with_trace:
        return records, [t for _, t in out]
    return records


# ---------------------------------------------------------------------------
# formatting and parsing
# ---------------------------------------------------------------------------

def format_records(records, fmt='table'):
    """Render records as ``'table'``, ``'csv'`` or ``'json'`` text."""
    if fmt == 'csv':
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator='\n')
        w.writerow(FIELDS)
        for r in records:
            w.writerow([repr(v) if isinstance(v, float) else v
                        for v in (getattr(r, f) for f in FIELDS)])
        return buf.getvalue()
    if fmt == 'json':
        return json.dumps([r.as_dict() for r in records], indent=1) + '\n'
    if fmt == 'table':
        head = f"{'Problem':<10}{'n':>5}{'m':>5}{'NIT':>6}{'CPU-time':>11}{'Res':>12}" \
               f"{'NIF':>6}{'NIG':>6}  Status"
        lines = [head, '-' * len(head)]
        for r in records:
            lines.append(f"{r.problem:<10}{r.n:>5}{r.m:>5}{r.nit:>6}{r.cpu_s:>11.4f}"
                         f"{r.res:>12.4e}{r.nif:>6}{r.nig:>6}  {r.status}")
        return '\n'.join(lines) + '\n'
    raise ValueError(f"unknown format {fmt!r}")


def _coerce(row):
    missing = [f for f in FIELDS[:-1] if f not in row]
    if missing:
        raise ValueError(f"record lacks fields {missing}")
    vals = {}
    for f in FIELDS:
        v = row.get(f, '')
        if f in _INT_FIELDS:
            vals[f] = int(v)
        elif f in _FLOAT_FIELDS:
            vals[f] = float(v)
        else:
            vals[f] = '' if v is None else str(v)
    return RunRecord(**vals)


def parse_records(text):
    """Parse CSV or JSON text produced by :func:`format_records`.

    A missing ``status`` column is allowed (reference tables have none).
    """
    stripped = text.lstrip()
    if stripped.startswith('['):
        rows = json.loads(stripped)
    else:
        rows = list(csv.DictReader(io.StringIO(text)))
    return [_coerce(r) for r in rows]


def read_records(path):
    with open(path, encoding='utf-8') as fh:
        return parse_records(fh.read())


def load_reference(path=None):
    """Reference records from ``path`` or from the bundled table."""
    if path is None:
        text = resources.files('ssarc').joinpath('data/table1.csv').read_text(encoding='utf-8')
        return parse_records(text)
    return read_records(path)


# ---------------------------------------------------------------------------
# comparison
# ---------------------------------------------------------------------------

def compare_records(records, reference, factor=3.0, epsilon=1e-8):
    """Check ``records`` against ``reference`` row by row.

    A problem diverges when its status is not ``Converged`` (hard), when
    ``res > epsilon``, when ``nit > factor * nit_ref``, or when it takes no
    step although the reference needed at least one.  Problems absent from
    either side are ignored.

    Returns
    -------
    list of Divergence
    """
    ref = {r.problem.upper(): r for r in reference}
    out = []
    for r in records:
        q = ref.get(r.problem.upper())
        if q is None:
            continue
        if r.status and r.status != 'Converged':
            out.append(Divergence(r.problem, f"status {r.status}", hard=True))
            continue
        if not r.res <= epsilon:
            out.append(Divergence(r.problem, f"Res {r.res:.3e} > {epsilon:.1e}"))
        if q.nit >= 1 and r.nit < 1:
            out.append(Divergence(r.problem, "no iterations taken"))
        if q.nit > 0 and r.nit > factor * q.nit:
            out.append(Divergence(r.problem, f"NIT ratio {r.nit / q.nit:.2f} > {factor:g} "
                                             f"({r.nit} vs {q.nit})"))
    return out


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _flag(name):
    return '--' + name.replace('_', '-')


def _add_config_flags(parser):
    grp = parser.add_argument_group('solver parameters')
    defaults = SolverConfig()
    for f in dataclasses.fields(SolverConfig):
        default = getattr(defaults, f.name)
        if isinstance(default, bool):
            grp.add_argument(_flag(f.name), dest=f.name, default=None,
                             action=argparse.BooleanOptionalAction,
                             help=f"default {default}")
        else:
            kind = int if f.name in ('ladder_m', 'max_outer', 'max_inner') else float
            grp.add_argument(_flag(f.name), dest=f.name, type=kind, default=None,
                             metavar='N' if kind is int else 'X', help=f"default {default}")


def _config_from(args):
    overrides = {f.name: getattr(args, f.name) for f in dataclasses.fields(SolverConfig)
                 if getattr(args, f.name) is not None}
    return SolverConfig(**overrides)


def build_parser():
    parser = argparse.ArgumentParser(prog='ssarc-bench',
                                     description='Equality-constrained benchmark runner.')
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help='solve problems and print a results table')
    run.add_argument('names', nargs='*', default=['all'],
                     help="problem names (case-insensitive) or 'all'")
    run.add_argument('--format', choices=('table', 'csv', 'json'), default='table')
    run.add_argument('--output', '-o', help='write records here instead of stdout')
    run.add_argument('--trace', help='write one JSON object per trial to this file')
    run.add_argument('--jobs', '-j', type=int, default=1, help='worker processes')
    _add_config_flags(run)

    cmp_ = sub.add_parser('compare', help='compare a saved run with reference values')
    cmp_.add_argument('--input', required=True, help='CSV or JSON written by run')
    cmp_.add_argument('--reference', help='reference CSV (default: bundled table)')
    cmp_.add_argument('--factor', type=float, default=3.0, help='allowed NIT ratio')
    cmp_.add_argument('--epsilon', type=float, default=1e-8, help='Res threshold')

    sub.add_parser('list', help='list built-in problems')
    return parser


def _write(text, path):
    if path:
        with open(path, 'w', encoding='utf-8') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args):
    names = args.names
    if len(names) == 1 and names[0].lower() == 'all':
        names = 'all'
    else:
        unknown = [n for n in names if n.upper() not in problem_names()]
        if unknown:
            raise _UsageError(f"unknown problem(s): {', '.join(unknown)}")
    if args.jobs < 1:
        raise _UsageError("--jobs must be at least 1")
    try:
        config = _config_from(args)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    records, traces = run_problems(names, config, jobs=args.jobs, with_trace=True)
    _write(format_records(records, args.format), args.output)
    if args.trace:
        with open(args.trace, 'w', encoding='utf-8') as fh:
            for trace in traces:
                for row in trace:
                    fh.write(json.dumps(row) + '\n')
    return 0 if all(r.status == 'Converged' for r in records) else 1


def _cmd_compare(args):
    try:
        records = read_records(args.input)
        reference = load_reference(args.reference)
    except (OSError, ValueError, KeyError) as exc:
        raise _UsageError(f"cannot read records: {exc}") from None
    div = compare_records(records, reference, args.factor, args.epsilon)
    matched = sum(r.problem.upper() in {q.problem.upper() for q in reference} for r in records)
    for d in div:
        print(f"{'HARD ' if d.hard else ''}DIVERGENCE {d.problem}: {d.reason}")
    print(f"{matched} problems compared, {len(div)} divergences")
    return 1 if div else 0


class _UsageError(Exception):
    pass


def main(argv: Optional[list] = None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == 'run':
            return _cmd_run(args)
        if args.command == 'compare':
            return _cmd_compare(args)
        for name in problem_names():
            p = get_problem(name)
            print(f"{p.name:<10}{p.n:>4}{p.m:>4}  {p.source}")
        return 0
    except _UsageError as exc:
        print(f"ssarc-bench: error: {exc}", file=sys.stderr)
        return 2


if __name__ == '__main__':  # pragma: no cover
    sys.exit(main())
