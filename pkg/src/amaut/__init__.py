"""Arabic morphological analysis and generation with morphological automata."""

from .automaton import Amaut, Payload, Segment, concat, determinize, lookup, minimize, union
from .compiler import CompiledLexicon, compile_all, load_compiled, save_compiled
from .lexicon import Lexicon, load_lexicon_dir, parse_lexicon, validate_lexicon
from .pipeline import Analysis, AnalysisReport, analyze_text, analyze_word, export_report, generate
from .scheme import Root, Scheme, instantiate_scheme, match_scheme
from .seedlex import load_seed
from .translit import to_arabic, to_latin

__version__ = "0.1.0"
