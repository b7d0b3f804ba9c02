"""Command-line front door: corpus -> graph -> augmentation -> metrics.

Exit codes: 0 success, 1 usage error, 2 data error (bad files, unknown
nodes, schema violations).
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .augment import AugmentConfig, Task, augment_corpus, emit_jsonl
from .cograph import CoGraph, GraphFileError, NodeUnknownError, build_graph
from .corpus import CorpusError, load_corpus
from .metrics import f1_report, ppl_report, read_logprobs, rouge_report
from .textproc import AlignmentError, ExternalTagger, HeuristicTagger, extract_keywords

USAGE_ERROR = 1
DATA_ERROR = 2

_DATA_ERRORS = (CorpusError, GraphFileError, NodeUnknownError, AlignmentError,
                ValueError, OSError)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage problems; this artifact reserves 2 for data."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {number}")
    return number


def _parse_tasks(value: str) -> frozenset[Task]:
    tasks = set()
    for name in value.split(","):
        name = name.strip()
        if not name:
            continue
        try:
            tasks.add(Task(name))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"unknown task {name!r} (choose from dialogue, graph, ner)"
            ) from None
    if not tasks:
        raise argparse.ArgumentTypeError("at least one task required")
    return frozenset(tasks)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphaug",
                     description="Co-occurrence graph and training-data toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build-graph", help="build a co-occurrence graph from a corpus")
    p.add_argument("--input", required=True, help="corpus JSON file")
    p.add_argument("--output", required=True, help="graph JSON file to write")
    p.add_argument("--min-count", type=_positive_int, default=1,
                   help="drop edges with fewer co-occurrences (default 1 = keep all)")
    p.add_argument("--knowledge", choices=["all", "wizard-only"], default="all",
                   help="which turns contribute knowledge passages")
    p.add_argument("--threads", type=_positive_int, default=1, help="parallel build workers")

    p = sub.add_parser("query", help="top-k weighted neighbors of a node, as TSV")
    p.add_argument("--graph", required=True)
    p.add_argument("--node", required=True)
    p.add_argument("--k", type=_positive_int, default=10)

    p = sub.add_parser("augment", help="emit training instances as JSONL")
    p.add_argument("--input", required=True, help="corpus JSON file")
    p.add_argument("--graph", help="graph file (required for the graph task)")
    p.add_argument("--tasks", type=_parse_tasks, default=frozenset(Task),
                   help="comma-separated subset of dialogue,graph,ner")
    p.add_argument("--k", type=_positive_int, default=10, help="neighbors per graph target")
    p.add_argument("--output", required=True, help="JSONL file to write")
    p.add_argument("--tags", help="CoNLL tag file (external NER)")
    p.add_argument("--gazetteer-dir", help="directory with per.txt/loc.txt/org.txt")
    p.add_argument("--separator", default="[SEP]", help="turn separator token")

    p = sub.add_parser("stats", help="node/edge/degree summary of a graph, as JSON")
    p.add_argument("--graph", required=True)

    p = sub.add_parser("eval", help="metric report from files, as JSON")
    p.add_argument("--metric", required=True, choices=["ppl", "f1", "rouge"])
    p.add_argument("--n", type=_positive_int, default=1, help="n-gram order for rouge")
    p.add_argument("--hyp", help="hypothesis file, one per line")
    p.add_argument("--ref", help="reference file, line-aligned with --hyp")
    p.add_argument("--logprobs", help="LogProbRecord JSONL (for ppl)")
    p.add_argument("--no-lowercase", action="store_true",
                   help="case-sensitive f1/rouge")
    p.add_argument("--strip-punctuation", action="store_true",
                   help="strip token-edge punctuation before matching")

    return parser


def cmd_build_graph(args) -> int:
    corpus = load_corpus(args.input)
    documents = corpus.documents(knowledge=args.knowledge)
    keyword_sets = [extract_keywords(doc) for doc in documents]
    graph = build_graph(keyword_sets, min_count=args.min_count,
                        threads=args.threads)
    graph.save(args.output)
    print(f"nodes={len(graph.nodes)} edges={graph.edge_count} docs={graph.doc_count}")
    return 0


def cmd_query(args) -> int:
    graph = CoGraph.load(args.graph)
    for nw in graph.edge_weights(args.node)[:args.k]:
        print(f"{nw.neighbor}\t{nw.count}\t{nw.weight:.6f}")
    return 0


def cmd_augment(args) -> int:
    corpus = load_corpus(args.input)
    graph = None
    if Task.GRAPH in args.tasks:
        if not args.graph:
            raise ValueError("--graph is required when the graph task is selected")
        graph = CoGraph.load(args.graph)
    gazetteer = ()
    tagger = None
    if args.gazetteer_dir:
        heuristic = HeuristicTagger.from_dir(args.gazetteer_dir)
        gazetteer = heuristic.entries
        tagger = heuristic
    if args.tags:
        tagger = ExternalTagger(args.tags)
    cfg = AugmentConfig(k=args.k, tasks=args.tasks, turn_separator=args.separator)
    instances = augment_corpus(corpus, cfg, graph=graph, tagger=tagger,
                               gazetteer=gazetteer)
    emit_jsonl(instances, args.output)
    by_task = Counter(inst.task.value for inst in instances)
    summary = " ".join(f"{task.value}={by_task.get(task.value, 0)}" for task in Task)
    print(f"instances={len(instances)} {summary}")
    return 0


def cmd_stats(args) -> int:
    graph = CoGraph.load(args.graph)
    histogram = Counter(graph.degree(v) for v in graph.nodes)
    payload = {
        "nodes": len(graph.nodes),
        "edges": graph.edge_count,
        "doc_count": graph.doc_count,
        "degree_histogram": {str(deg): histogram[deg] for deg in sorted(histogram)},
    }
    print(json.dumps(payload, ensure_ascii=False))
    return 0


def _read_lines(path) -> list[str]:
    with open(path, encoding="utf-8") as f:
        return [line.rstrip("\n") for line in f]


def cmd_eval(args, parser: argparse.ArgumentParser) -> int:
    if args.metric == "ppl":
        if not args.logprobs:
            parser.error("--logprobs is required for --metric ppl")
        records = read_logprobs(args.logprobs)
        if not records:
            raise ValueError(f"{args.logprobs}: no records")
        report = ppl_report(records)
    else:
        if not args.hyp or not args.ref:
            parser.error(f"--hyp and --ref are required for --metric {args.metric}")
        hyps = _read_lines(args.hyp)
        refs = _read_lines(args.ref)
        if len(hyps) != len(refs):
            raise ValueError(
                f"line count mismatch: {args.hyp} has {len(hyps)}, "
                f"{args.ref} has {len(refs)}"
            )
        pairs = [(str(i), hyp, ref) for i, (hyp, ref) in enumerate(zip(hyps, refs))]
        lowercase = not args.no_lowercase
        if args.metric == "f1":
            report = f1_report(pairs, lowercase, args.strip_punctuation)
        else:
            report = rouge_report(pairs, args.n, lowercase, args.strip_punctuation)
    print(json.dumps(report.to_dict(), ensure_ascii=False))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "build-graph":
            return cmd_build_graph(args)
        if args.command == "query":
            return cmd_query(args)
        if args.command == "augment":
            return cmd_augment(args)
        if args.command == "stats":
            return cmd_stats(args)
        if args.command == "eval":
            return cmd_eval(args, parser)
    except SystemExit as exc:
        # raised by argparse for usage problems (and --help)
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    except _DATA_ERRORS as exc:
        print(f"graphaug: {exc}", file=sys.stderr)
        return DATA_ERROR
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
