"""Command-line entry point: ``imgql run``, ``imgql batch``, ``imgql corpus``."""

from __future__ import annotations

import argparse
import logging
import shutil
import sys
from pathlib import Path

from . import dsl, harness
from .corpus import corpus, corpus_dir
from .dsl import EvalOptions
from .grid import Adjacency

log = logging.getLogger("imgql")


def _define(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    return key, value


def _spec_path(name: str) -> Path:
    p = Path(name)
    if p.is_file():
        return p
    bundled = corpus()
    if p.name in bundled and not p.parent.parts:
        return bundled[p.name]
    raise FileNotFoundError(f"script not found: {name}")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--define", "-D", action="append", type=_define, default=[], metavar="K=V",
                   help="bind $K in path literals (overrides the environment)")
    p.add_argument("--output", "-o", required=True, metavar="DIR", help="output directory, bound to $OUTPUTDIR")
    p.add_argument("--threads", type=int, default=1, help="evaluation worker threads")
    p.add_argument("--adjacency", choices=["4", "8"], default="8")
    p.add_argument("--intensity", choices=["rec601", "mean"], default="rec601")
    p.add_argument("--oracle-texture", action="store_true",
                   help="use the naive per-voxel cross-correlation (slow, for verification)")
    p.add_argument("--window", choices=["square"], default="square", help="texture window shape")
    p.add_argument("--stdlib", action="append", default=None, metavar="DIR",
                   help="extra import directory (default: bundled scripts)")
    p.add_argument("-q", "--quiet", action="store_true", help="do not log saves and prints")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="imgql", description="Spatial model checking of 2D images.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate one script")
    run.add_argument("spec", help="script file, or the name of a bundled script")
    _common(run)

    batch = sub.add_parser("batch", help="run a script over every case of a dataset")
    batch.add_argument("dataset", help="directory of <NAME>.png and <NAME>_seg_RGB.png files")
    batch.add_argument("--spec", default="nevus_v0.imgql")
    batch.add_argument("--skip-list", metavar="FILE", help="case names to leave out, one per line")
    batch.add_argument("--jobs", type=int, default=1, help="cases run in parallel processes")
    batch.add_argument("--no-timings", action="store_true", help="write 0 in the seconds column")
    _common(batch)

    cor = sub.add_parser("corpus", help="list or copy the bundled scripts")
    cor.add_argument("--extract", metavar="DIR", help="copy the bundled scripts into DIR")
    return parser


def _options(args) -> EvalOptions:
    return EvalOptions(
        adjacency=Adjacency.parse(args.adjacency),
        intensity=args.intensity,
        oracle_texture=args.oracle_texture,
        threads=max(1, args.threads),
    )


def _search_path(args) -> list[Path]:
    return [Path(d) for d in (args.stdlib or [])] + [corpus_dir()]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "corpus":
        if args.extract:
            dest = Path(args.extract)
            dest.mkdir(parents=True, exist_ok=True)
            for name, path in corpus().items():
                shutil.copyfile(path, dest / name)
        for name, path in corpus().items():
            print(name if not args.extract else Path(args.extract) / name)
        return 0

    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(message)s",
        stream=sys.stderr,
    )
    try:
        spec = _spec_path(args.spec)
        defines = dict(args.define)
        if args.command == "run":
            bindings = dsl.make_bindings({**defines, "OUTPUTDIR": args.output})
            Path(args.output).mkdir(parents=True, exist_ok=True)
            dsl.run_file(spec, bindings, _options(args), _search_path(args))
            return 0
        result = harness.run_batch(
            args.dataset,
            spec,
            args.output,
            _options(args),
            skip=harness.read_skip_list(args.skip_list),
            jobs=args.jobs,
            timings=not args.no_timings,
            search_path=_search_path(args),
            defines=defines,
        )
        sys.stdout.write(result.report.to_text())
        return 0
    except (dsl.ImgQLError, OSError, ValueError) as exc:
        print(f"imgql: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
