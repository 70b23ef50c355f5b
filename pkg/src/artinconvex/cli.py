"""Command-line interface.

Every subcommand prints either a human readable table (``--format text``)
or line-oriented ``key=value`` records (``--format records``).  Exit codes:
0 success / PASS, 1 FAIL verdict, 2 usage or parse error, 3 precondition
failure, 4 bound overflow.
"""

from __future__ import annotations

import argparse
import random
import shlex
import sys
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, TextIO

from . import artin, braid, coxeter, salvetti
from .coxeter import CoxeterGraph
from .errors import (
    ArtinConvexError,
    ElementBoundError,
    GraphParseError,
    PreconditionError,
    WordParseError,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_BOUND = 4

DEFAULT_TRIALS = 200
DEFAULT_MAX_LEN = 64
DEFAULT_MOVES = 40
TINY_LENGTH = 3  # brute-force geodesics in braid groups up to this length


@dataclass
class RunConfig:
    command: str
    graph: CoxeterGraph | None = None
    target: frozenset[int] | None = None
    word: str = ""
    seed: int = 0
    trials: int = DEFAULT_TRIALS
    max_len: int = DEFAULT_MAX_LEN
    moves: int = DEFAULT_MOVES
    max_elements: int = coxeter.DEFAULT_MAX_ELEMENTS
    fmt: str = "text"
    extra: dict = field(default_factory=dict)


class Output:
    """Collects records and renders them in the selected format."""

    def __init__(self, stream: TextIO, fmt: str):
        self.stream = stream
        self.fmt = fmt

    def record(self, **fields) -> None:
        if self.fmt == "records":
            self.stream.write(" ".join(f"{k}={shlex.quote(_value(v))}" for k, v in fields.items()) + "\n")

    def text(self, line: str = "") -> None:
        if self.fmt == "text":
            self.stream.write(line + "\n")

    def table(self, header: list[str], rows: list[list]) -> None:
        if self.fmt != "text":
            return
        cells = [[_value(c) for c in row] for row in rows]
        widths = [max([len(h)] + [len(r[k]) for r in cells]) for k, h in enumerate(header)]
        self.text("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        self.text("  ".join("-" * w for w in widths))
        for row in cells:
            self.text("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    return str(v)


def _word(graph: CoxeterGraph, word: Iterable[int]) -> str:
    return graph.format_word(word) or "1"


def _aword(graph: CoxeterGraph, word) -> str:
    return artin.format_artin_word(graph, word) or "1"


# -- subcommands ------------------------------------------------------------


def cmd_reduce(cfg: RunConfig, out: Output) -> int:
    graph = cfg.graph
    e = coxeter.normalize(graph, graph.parse_word(cfg.word))
    out.record(normal_form=graph.format_word(e.word), length=len(e))
    out.text(f"normal form: {e.word and graph.format_word(e.word) or 'identity'}")
    out.text(f"length: {len(e)}")
    return EXIT_OK


def cmd_decompose(cfg: RunConfig, out: Output) -> int:
    graph = cfg.graph
    target = _require_target(cfg)
    e = coxeter.normalize(graph, graph.parse_word(cfg.word))
    u0, u1 = coxeter.parabolic_decompose(e, target)
    out.record(
        element=graph.format_word(e.word),
        u0=graph.format_word(u0.word),
        u1=graph.format_word(u1.word),
        length=len(e),
        u0_length=len(u0),
        u1_length=len(u1),
    )
    out.text(f"element: {_word(graph, e.word)}  (length {len(e)})")
    out.text(f"u0 in W_T: {_word(graph, u0.word)}  (length {len(u0)})")
    out.text(f"u1 minimal: {_word(graph, u1.word)}  (length {len(u1)})")
    return EXIT_OK


def cmd_project(cfg: RunConfig, out: Output) -> int:
    graph = cfg.graph
    target = _require_target(cfg)
    word = artin.parse_artin_word(graph, cfg.word)
    projected, trace = artin.project_word(graph, word, target)
    rows = []
    for step in trace:
        t = None if step.conjugate is None else graph.names[step.conjugate]
        tau = None if step.emitted is None else _aword(graph, [step.emitted])
        rows.append([step.index, _aword(graph, [step.letter]), step.prefix, step.parabolic, step.minimal, t, tau])
        out.record(
            step=step.index,
            letter=_aword(graph, [step.letter]),
            u=graph.format_word(step.prefix.word),
            v=graph.format_word(step.parabolic.word),
            w=graph.format_word(step.minimal.word),
            t=t,
            tau=tau,
        )
    out.record(projection=artin.format_artin_word(graph, projected), length=len(projected), input_length=len(word))
    out.text(f"projection: {_aword(graph, projected)}  (length {len(projected)} of {len(word)})")
    out.text()
    out.table(["i", "letter", "u_i", "v_i", "w_i", "t_i", "tau_i"], rows)
    return EXIT_OK


def geodesic_words(index: dict, table: list[list[int]], dist: list[int], g: int) -> Iterable[tuple[int, ...]]:
    """Every geodesic word from the identity to element ``g`` of a Cayley graph."""
    rank = len(table[0]) if table else 0
    suffix: list[int] = []

    def rec(h: int):
        if dist[h] == 0:
            yield tuple(reversed(suffix))
            return
        for s in range(rank):
            k = table[h][s]
            if dist[k] == dist[h] - 1:
                suffix.append(s)
                yield from rec(k)
                suffix.pop()

    return rec(g)


def coxeter_convexity(graph: CoxeterGraph, targets: Iterable[frozenset[int]], max_elements: int) -> list[dict]:
    """Check that every geodesic of every element of ``W_T`` stays in ``T``."""
    elements = coxeter.enumerate_group(graph, max_elements)
    index = {e.word: k for k, e in enumerate(elements)}
    table = [[index[coxeter.multiply_generator(e, s).word] for s in range(graph.rank)] for e in elements]
    dist = [len(e) for e in elements]
    results = []
    for target in targets:
        members = coxeter.parabolic_elements(graph, target, max_elements)
        geodesics = violations = 0
        for e in members:
            for word in geodesic_words(index, table, dist, index[e.word]):
                geodesics += 1
                if not set(word) <= target:
                    violations += 1
        results.append(
            dict(target=target, elements=len(members), geodesics=geodesics, violations=violations)
        )
    return results


def cmd_coxeter_convexity(cfg: RunConfig, out: Output) -> int:
    graph = cfg.graph
    if not coxeter.is_finite_type(graph):
        raise coxeter.InfiniteGroupError("W is infinite: exhaustive check needs a finite group")
    if cfg.target is not None:
        targets = [cfg.target]
    else:
        targets = [frozenset(c) for k in range(graph.rank + 1) for c in combinations(range(graph.rank), k)]
    results = coxeter_convexity(graph, targets, cfg.max_elements)
    verdict = all(r["violations"] == 0 for r in results)
    rows = []
    for r in results:
        status = "PASS" if r["violations"] == 0 else "FAIL"
        rows.append([graph.format_set(r["target"]), r["elements"], r["geodesics"], r["violations"], status])
        out.record(
            target=",".join(graph.names[g] for g in sorted(r["target"])),
            elements=r["elements"],
            geodesics=r["geodesics"],
            violations=r["violations"],
            verdict=status,
        )
    out.table(["T", "|W_T|", "geodesics", "violations", "verdict"], rows)
    out.record(verdict="PASS" if verdict else "FAIL")
    out.text(f"verdict: {'PASS' if verdict else 'FAIL'}")
    return EXIT_OK if verdict else EXIT_FAIL


@dataclass
class TrialResult:
    index: int
    word: artin.ArtinWord
    scrambled: artin.ArtinWord
    report: artin.ConvexityReport
    geodesics_checked: int | None = None
    geodesics_ok: bool | None = None

    @property
    def passed(self) -> bool:
        return (
            self.report.ok
            and self.report.reference_equal is not False
            and self.geodesics_ok is not False
        )


def artin_campaign(
    graph: CoxeterGraph,
    target: frozenset[int],
    trials: int,
    seed: int,
    max_len: int,
    moves: int = DEFAULT_MOVES,
) -> list[TrialResult]:
    """Scramble random ``Sigma_T`` words and check each projection."""
    rng = random.Random(seed)
    oracle = artin.equality_oracle(graph)
    type_a = artin.type_a_order(graph) is not None
    results = []
    gens = sorted(target)
    for k in range(trials):
        word = artin.random_word(rng, gens, max_len) if gens else ()
        steps = rng.randint(0, moves)
        scrambled = artin.scramble(graph, word, steps, seed=rng.getrandbits(64))
        report = artin.check_convexity(graph, scrambled, target, oracle, reference=word)
        result = TrialResult(k, word, scrambled, report)
        if type_a and len(word) <= TINY_LENGTH:
            _, found = braid.geodesics(artin.to_braid(graph, word))
            order = artin.type_a_order(graph)
            allowed = {order.index(s) + 1 for s in target}
            result.geodesics_checked = len(found)
            result.geodesics_ok = all(i in allowed for w in found for i, _ in w.letters)
        results.append(result)
    return results


def cmd_artin_convexity(cfg: RunConfig, out: Output) -> int:
    graph = cfg.graph
    target = _require_target(cfg)
    results = artin_campaign(graph, target, cfg.trials, cfg.seed, cfg.max_len, cfg.moves)
    oracle = artin.equality_oracle(graph)
    rows = []
    for r in results:
        rep = r.report
        rows.append([
            r.index, len(r.word), len(r.scrambled), len(rep.projected),
            rep.projection_equal, rep.theta_preserved, rep.abelian_preserved,
            r.geodesics_checked, "PASS" if r.passed else "FAIL",
        ])
        out.record(
            trial=r.index,
            word=artin.format_artin_word(graph, r.word),
            scrambled_length=len(r.scrambled),
            projection=artin.format_artin_word(graph, rep.projected),
            projection_equal=rep.projection_equal,
            theta_preserved=rep.theta_preserved,
            abelian_preserved=rep.abelian_preserved,
            geodesics_checked=r.geodesics_checked,
            verdict="PASS" if r.passed else "FAIL",
        )
    verdict = all(r.passed for r in results)
    out.text(f"oracle: {oracle.name if oracle else 'none (necessary conditions only)'}")
    if rows:
        out.table(["trial", "|w|", "|scrambled|", "|tau|", "equal", "theta", "abelian", "geodesics", "verdict"], rows)
    out.record(oracle=oracle.name if oracle else None, trials=len(results), verdict="PASS" if verdict else "FAIL")
    out.text(f"trials: {len(results)}  verdict: {'PASS' if verdict else 'FAIL'}")
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_salvetti(cfg: RunConfig, out: Output) -> int:
    graph = cfg.graph
    radius = cfg.extra.get("radius")
    summary = salvetti.build_complex(graph, radius)
    names = ["vertices", "edges", "faces"] + [f"cells_{k}" for k in range(3, len(summary.counts))]
    counts = dict(zip(names, summary.counts))
    out.record(**counts, euler=summary.euler_characteristic)
    for name, c in counts.items():
        out.text(f"{name}: {c}")
    out.text(f"euler characteristic: {summary.euler_characteristic}")
    dump = cfg.extra.get("dump_edges")
    if dump:
        if dump == "-":
            salvetti.write_one_skeleton(graph, out.stream, radius)
        else:
            with open(dump, "w", encoding="utf-8") as fh:
                salvetti.write_one_skeleton(graph, fh, radius)
    return EXIT_OK


def cmd_braid_nf(cfg: RunConfig, out: Output) -> int:
    n = cfg.extra["strands"]
    w = braid.parse_braid(cfg.word, n)
    nf = braid.garside_nf(w)
    factors = [braid.format_braid(braid.simple_word(f)) for f in nf.factors]
    perms = [" ".join(str(x + 1) for x in f) for f in nf.factors]
    out.record(strands=n, delta_power=nf.power, factors=" | ".join(factors), permutation=" ".join(str(x + 1) for x in braid.perm_of(w)))
    out.text(f"Delta^{nf.power}")
    out.table(["k", "factor", "permutation"], [[k + 1, f, p] for k, (f, p) in enumerate(zip(factors, perms))])
    return EXIT_OK


def cmd_braid_delete(cfg: RunConfig, out: Output) -> int:
    n = cfg.extra["strands"]
    keep = cfg.extra.get("keep")
    if not keep:
        raise PreconditionError("--keep is required")
    w = braid.parse_braid(cfg.word, n)
    result = braid.delete_strands(w, keep)
    out.record(strands=result.n, word=str(result), length=len(result), input_length=len(w))
    out.text(f"{result.n} strands: {str(result) or '(empty)'}")
    out.text(f"length {len(result)} of {len(w)}")
    return EXIT_OK


COMMANDS = {
    "reduce": cmd_reduce,
    "decompose": cmd_decompose,
    "project": cmd_project,
    "coxeter-convexity": cmd_coxeter_convexity,
    "artin-convexity": cmd_artin_convexity,
    "salvetti": cmd_salvetti,
    "braid-nf": cmd_braid_nf,
    "braid-delete": cmd_braid_delete,
}
GRAPH_COMMANDS = set(COMMANDS) - {"braid-nf", "braid-delete"}


def _require_target(cfg: RunConfig) -> frozenset[int]:
    if cfg.target is None:
        raise PreconditionError("--target is required")
    return cfg.target


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph description file")
    common.add_argument("--type", dest="gtype", help="standard type instead of a file, e.g. A3 or I2(5)")
    common.add_argument("--target", help="comma-separated subset T of the generators")
    common.add_argument("--word", default="", help="whitespace-separated word")
    common.add_argument("--seed", type=_nonneg, default=0)
    common.add_argument("--trials", type=_nonneg, default=DEFAULT_TRIALS)
    common.add_argument("--max-len", type=_positive, default=DEFAULT_MAX_LEN)
    common.add_argument("--moves", type=_nonneg, default=DEFAULT_MOVES, help="maximum scramble moves per trial")
    common.add_argument("--max-elements", type=_positive, default=coxeter.DEFAULT_MAX_ELEMENTS)
    common.add_argument("--format", dest="fmt", choices=("text", "records"), default="text")
    common.add_argument("--strands", type=_positive, help="strand count for braid commands")
    common.add_argument("--keep", help="comma-separated kept strand positions")
    common.add_argument("--radius", type=_nonneg, help="length bound for infinite W")
    common.add_argument("--dump-edges", help="write the 1-skeleton edge list to this file ('-' for stdout)")

    parser = argparse.ArgumentParser(prog="artinconvex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _load_graph(args) -> CoxeterGraph:
    if args.graph and args.gtype:
        raise GraphParseError("give --graph or --type, not both")
    if args.gtype:
        return coxeter.coxeter_type(args.gtype)
    if not args.graph:
        raise PreconditionError("--graph (or --type) is required")
    try:
        text = Path(args.graph).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphParseError(f"cannot read {args.graph}: {exc}") from None
    return coxeter.parse_graph(text)


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        word=args.word,
        seed=args.seed,
        trials=args.trials,
        max_len=args.max_len,
        moves=args.moves,
        max_elements=args.max_elements,
        fmt=args.fmt,
    )
    if args.command in GRAPH_COMMANDS:
        cfg.graph = _load_graph(args)
        if args.target is not None:
            cfg.target = cfg.graph.subset(args.target)
    else:
        if not args.strands:
            raise PreconditionError("--strands is required")
        cfg.extra["strands"] = args.strands
        if args.keep:
            try:
                cfg.extra["keep"] = [int(x) for x in args.keep.replace(",", " ").split()]
            except ValueError:
                raise WordParseError(f"bad --keep {args.keep!r}") from None
    cfg.extra["radius"] = args.radius
    cfg.extra["dump_edges"] = args.dump_edges
    return cfg


def main(argv: list[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg, Output(stdout, cfg.fmt))
    except (GraphParseError, WordParseError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ElementBoundError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_BOUND
    except (PreconditionError, ArtinConvexError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
