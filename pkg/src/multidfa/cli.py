"""Command-line interface: ``multidfa <command> ...``.

Exit status: 0 on success, 1 on usage errors, 2 on data errors (missing or
malformed input files, inconsistent samples).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import io
from .automata import build_pta
from .evaluation import Method, run_grid
from .evolution import EaConfig, evolve, extract_solution, transition_clustering
from .merging import rpni_splitting, standard_rpni

log = logging.getLogger("multidfa")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _load_sample(path):
    path = Path(path)
    if not path.is_file():
        raise DataError(f"cannot read sample file {path}")
    try:
        return io.read_sample(path)
    except (OSError, ValueError) as exc:
        raise DataError(str(exc)) from None


def _load_dfa(path):
    path = Path(path)
    if not path.is_file():
        raise DataError(f"cannot read DFA file {path}")
    try:
        return io.read_dfa(path)
    except (OSError, ValueError) as exc:
        raise DataError(str(exc)) from None


def _write_subs(dfas, stem, out_dir):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, dfa in enumerate(dfas):
        path = out_dir / f"{stem}.sub{i}.dfa"
        io.write_dfa(dfa, path)
        paths.append(path)
        print(path)
    return paths


def cmd_pta(args):
    sample = _load_sample(args.sample)
    if not sample.positives:
        raise DataError(f"{args.sample}: no positive strings")
    sys.stdout.write(io.serialize(build_pta(sample.positives, sample.alphabet)))


def cmd_rpni(args):
    sample = _load_sample(args.sample)
    if not sample.positives:
        raise DataError(f"{args.sample}: no positive strings")
    sys.stdout.write(io.serialize(standard_rpni(sample)))


def cmd_rpni_split(args):
    sample = _load_sample(args.sample)
    if not sample.positives:
        raise DataError(f"{args.sample}: no positive strings")
    result = rpni_splitting(sample, args.k)
    _write_subs(result.dfas, Path(args.sample).stem, args.out_dir)


def cmd_ea(args):
    sample = _load_sample(args.sample)
    if not sample.positives:
        raise DataError(f"{args.sample}: no positive strings")
    overrides = dict(k=args.k, rng_seed=args.seed, population_size=args.pop,
                     max_generations=args.gens)
    try:
        if args.config:
            config = EaConfig.from_file(args.config, **overrides)
        else:
            config = EaConfig(**{k: v for k, v in overrides.items() if v is not None})
    except (OSError, ValueError) as exc:
        raise DataError(str(exc)) from None
    result = evolve(sample, config)
    stem = Path(args.sample).stem
    _write_subs(extract_solution(result.best, sample).subs, stem, args.out_dir)
    history = Path(args.out_dir) / f"{stem}.history.csv"
    result.write_history(history)
    print(history)
    log.info("best fitness f1=%s f2=%s after %d generations",
             result.fitness.f1, result.fitness.f2, result.generations)


def cmd_cluster(args):
    dfa = _load_dfa(args.dfa)
    path = Path(args.sample)
    if not path.is_file():
        raise DataError(f"cannot read sample file {path}")
    try:
        sample = io.read_sample(path, alphabet=dfa.alphabet)
    except (OSError, ValueError) as exc:
        raise DataError(str(exc)) from None
    subs = transition_clustering(dfa, sample.positives)
    _write_subs(subs.subs, Path(args.dfa).stem, args.out_dir)


def cmd_bench(args):
    if any(not 0 < d < 1 for d in args.densities):
        raise UsageError("densities must lie in (0, 1)")
    if any(k < 1 or k > 6 for k in args.ks):
        raise UsageError("k values must lie in 1..6")
    report = run_grid(ks=args.ks, densities=args.densities, methods=args.methods,
                      seeds=args.seeds, total_strings=args.total, jobs=args.jobs,
                      timing=not args.no_timing)
    for path in report.write(args.out).values():
        print(path)
    if report.errors:
        log.warning("%d grid cells failed, see errors.csv", len(report.errors))


def cmd_dot(args):
    sys.stdout.write(io.to_dot(_load_dfa(args.dfa)))


def build_parser():
    p = _Parser(prog="multidfa", description="Learn sets of DFAs from labeled strings.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("pta", help="print the prefix tree acceptor of a sample")
    s.add_argument("--sample", required=True)
    s.set_defaults(func=cmd_pta)

    s = sub.add_parser("rpni", help="run standard RPNI")
    s.add_argument("--sample", required=True)
    s.set_defaults(func=cmd_rpni)

    s = sub.add_parser("rpni-split", help="run RPNI-splitting, write one file per DFA")
    s.add_argument("--sample", required=True)
    s.add_argument("--k", type=_positive_int, required=True)
    s.add_argument("--out-dir", default=".")
    s.set_defaults(func=cmd_rpni_split)

    s = sub.add_parser("ea", help="run the evolutionary learner")
    s.add_argument("--sample", required=True)
    s.add_argument("--k", type=_positive_int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--pop", type=_positive_int)
    s.add_argument("--gens", type=int)
    s.add_argument("--config", help="key=value file with EA settings")
    s.add_argument("--out-dir", default=".")
    s.set_defaults(func=cmd_ea)

    s = sub.add_parser("cluster", help="extract sub-DFAs by transition clustering")
    s.add_argument("--dfa", required=True)
    s.add_argument("--sample", required=True)
    s.add_argument("--out-dir", default=".")
    s.set_defaults(func=cmd_cluster)

    s = sub.add_parser("bench", help="run the purity grid")
    s.add_argument("--out", required=True)
    s.add_argument("--seeds", type=_int_list, required=True)
    s.add_argument("--ks", type=_int_list, default=[2, 3, 4, 5])
    s.add_argument("--densities", type=_float_list, default=[0.02, 0.05, 0.10, 0.15, 0.20])
    s.add_argument("--methods", type=lambda t: [Method(m) for m in t.split(",")],
                   default=[Method.RP])
    s.add_argument("--total", type=_positive_int, default=100)
    s.add_argument("--jobs", type=_positive_int, default=1)
    s.add_argument("--no-timing", action="store_true",
                   help="write runtime_ms as 0 so reruns are byte-identical")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("dot", help="print a DFA in Graphviz DOT")
    s.add_argument("--dfa", required=True)
    s.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
