"""The bundled fixture lexicon and root list."""

import json
from importlib.resources import files

from .compiler import InvalidLexicon, read_roots
from .lexicon import load_lexicon_dir, validate_lexicon


def data_dir():
    return files("amaut") / "data"


def lexicon_dir():
    return data_dir() / "lexicon"


def roots_file():
    return data_dir() / "roots.txt"


def manifest():
    return json.loads((data_dir() / "manifest.json").read_text(encoding="utf-8"))


def load_seed():
    """Parse and validate the seed lexicon; returns ``(lexicon, roots)``."""
    lex = load_lexicon_dir(lexicon_dir())
    report = validate_lexicon(lex)
    if not report.ok:
        raise InvalidLexicon(report)
    return lex, read_roots(roots_file())
