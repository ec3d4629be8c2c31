"""Adapter CLI.

    amr-adapter parse raw.jsonl -o corpus.jsonl [--backend rule|seq2seq --model-dir DIR]
    amr-adapter project labels.txt -o coords.csv [--seed N] [--embeddings hashed|transformer --model-dir DIR]

Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Iterator, Optional, Sequence, TextIO

from .backends import make_backend
from .embeddings import HashedEmbeddings, TransformerInputEmbeddings, write_coordinates
from .pipeline import BadInput, run_parse

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="amr-adapter", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="convert raw-document JSONL to corpus JSONL")
    p.add_argument("raw", help="raw-document JSONL path")
    p.add_argument("-o", "--output", help="corpus JSONL path (default: stdout)")
    p.add_argument("--backend", choices=["rule", "seq2seq"], default="rule")
    p.add_argument("--model-dir", help="local model directory (seq2seq backend)")

    p = sub.add_parser("project", help="project labels to 2-D coordinates")
    p.add_argument("labels", help="text file, one label per line")
    p.add_argument("-o", "--output", help="coordinates CSV path (default: stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--embeddings", choices=["hashed", "transformer"], default="hashed")
    p.add_argument("--model-dir", help="local model directory (transformer embeddings)")

    return parser


@contextlib.contextmanager
def _open_out(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle


def cmd_parse(args) -> int:
    backend = make_backend(args.backend, args.model_dir)
    with _open_out(args.output) as out:
        stats = run_parse(args.raw, out, backend)
    print(
        f"documents={stats.documents} sentences={stats.sentences}"
        f" graphs={stats.graphs} dropped={stats.dropped}",
        file=sys.stderr,
    )
    return 0


def cmd_project(args) -> int:
    if args.embeddings == "transformer":
        if not args.model_dir:
            raise ValueError("transformer embeddings need --model-dir")
        source = TransformerInputEmbeddings(args.model_dir)
    else:
        source = HashedEmbeddings()
    with open(args.labels, encoding="utf-8") as handle:
        labels = [line.strip() for line in handle if line.strip()]
    with _open_out(args.output) as out:
        write_coordinates(out, labels, source, seed=args.seed)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "parse":
            return cmd_parse(args)
        return cmd_project(args)
    except (BadInput, ValueError, OSError) as exc:
        print(f"amr-adapter {args.command}: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
