"""Command line entry point: compile, analyze, generate, validate, stats."""

import argparse
import json
import sys

from . import automaton as am
from .compiler import CompileError, compile_all, load_compiled, read_roots, save_compiled
from .lexicon import LexiconError, load_lexicon_dir, validate_lexicon
from .pipeline import AnalysisReport, UnknownCategory, analyze_text, export_report, generate
from .scheme import SchemeError
from .seedlex import load_seed
from .translit import TranslitError

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_ERROR = 2


def _compiled(args):
    if args.compiled:
        return load_compiled(args.compiled)
    lex, roots = load_seed()
    return compile_all(lex, roots)


def cmd_compile(args):
    if args.lexicon:
        lex = load_lexicon_dir(args.lexicon)
        roots = read_roots(args.roots) if args.roots else []
    else:
        lex, roots = load_seed()
        if args.roots:
            roots = read_roots(args.roots)
    cl = compile_all(lex, roots, determinize=args.determinize, minimize=args.minimize)
    save_compiled(cl, args.out)
    for name, a in cl.automata.items():
        print(f"{name}\tstates={a.n_states}\taccepts={len(a.accepts)}", file=sys.stderr)
    return EXIT_OK


def cmd_analyze(args):
    cl = _compiled(args)
    if args.file in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    rep = analyze_text(cl, text, args.script)
    sys.stdout.buffer.write(export_report(rep, args.format))
    if rep.not_found and not rep.rows:
        return EXIT_NOT_FOUND
    return EXIT_OK


def cmd_generate(args):
    cl = _compiled(args)
    found = generate(
        cl,
        category=args.category,
        root=args.root,
        scheme=args.scheme,
        descriptors=args.descriptor or (),
        prefix=args.prefix,
        suffix=args.suffix,
        max_len=args.max_len,
    )
    rep = AnalysisReport([a for _, a in found], [])
    sys.stdout.buffer.write(export_report(rep, args.format))
    return EXIT_OK if found else EXIT_NOT_FOUND


def cmd_validate(args):
    lex = load_lexicon_dir(args.lexicon) if args.lexicon else load_seed()[0]
    report = validate_lexicon(lex)
    for v in report:
        print(v)
    if report.ok:
        print("ok", file=sys.stderr)
        return EXIT_OK
    return EXIT_ERROR


def cmd_stats(args):
    cl = _compiled(args)
    stats = {"counts": cl.counts, "automata": {}}
    for name, a in cl.automata.items():
        stats["automata"][name] = {
            "states": a.n_states,
            "transitions": a.n_transitions,
            "accepts": len(a.accepts),
            "words": am.count_words(a),
        }
    print(json.dumps(stats, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="amaut", description="Arabic morphological automata")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a lexicon into a cache file")
    p.add_argument("--lexicon", help="directory of XML lexicon files (default: bundled seed)")
    p.add_argument("--roots", help="root list, one per line")
    p.add_argument("--out", required=True)
    p.add_argument("--determinize", action="store_true")
    p.add_argument("--minimize", action="store_true")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("analyze", help="analyze text")
    p.add_argument("--compiled", help="cache file (default: compile the seed lexicon)")
    p.add_argument("--script", choices=["arabic", "latin"])
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="generate surfaces matching constraints")
    p.add_argument("--compiled")
    p.add_argument("--category")
    p.add_argument("--root")
    p.add_argument("--scheme")
    p.add_argument("--descriptor", action="append", help="required descriptor code, repeatable")
    p.add_argument("--prefix")
    p.add_argument("--suffix")
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="check a lexicon for consistency")
    p.add_argument("--lexicon")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", help="automaton sizes and lexicon counts")
    p.add_argument("--compiled")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LexiconError, CompileError, SchemeError, TranslitError, UnknownCategory, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
