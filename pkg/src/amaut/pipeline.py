"""Analysis and generation over compiled category automata.

Text is tokenized, every token is looked up in each category automaton,
and each accepting payload becomes one :class:`Analysis` row laid out in
the ten report columns (word, original schemes, scheme, gender, person,
number, properties, descriptors, prefixes, suffixes).
"""

import json
import weakref
from dataclasses import dataclass, fields

from . import automaton as am
from .lexicon import EXCLUSIVE, SEGMENT, SELECTOR
from .translit import has_arabic, is_canonical, is_separator, to_latin


NOT_EXIST = "Not exist"
EMPTY = "∅"

POS = {
    "verbs": "verb",
    "derived_nouns": "noun",
    "particular_nouns": "noun",
    "particles": "particle",
}

# properties shown in the descriptors column; everything else that is not
# gender/person/number or structural goes to the properties column
DESCRIPTOR_PROPERTIES = ("Case", "Definiteness", "NounForm", "Adverb")
_OWN_COLUMNS = ("Gender", "Person", "Number")
_HIDDEN = (SEGMENT, SELECTOR)

HEADERS = (
    "Morphological component",
    "Original Scheme",
    "Scheme",
    "Gender",
    "Person",
    "Number",
    "Properties",
    "Morphological Descriptors",
    "Prefixes",
    "Suffixes",
)


class UnknownCategory(KeyError):
    pass


@dataclass(frozen=True)
class Analysis:
    word: str
    pos: str
    category: str
    rule: str
    stem: str = ""
    root: str = ""
    # template the stem was built from, whatever the part of speech
    template: str = ""
    original_schemes: tuple = ()
    # report column, filled for nouns only
    scheme: str = ""
    gender: tuple = ()
    person: tuple = ()
    number: tuple = ()
    properties: tuple = ()
    descriptors: tuple = ()
    prefixes: tuple = ()
    suffixes: tuple = ()

    def codes(self):
        return set(self.gender + self.person + self.number + self.properties + self.descriptors)


@dataclass
class AnalysisReport:
    rows: list
    not_found: list

    def __eq__(self, other):
        return isinstance(other, AnalysisReport) and self.rows == other.rows and self.not_found == other.not_found


def tokenize(text):
    """Split on whitespace and punctuation, dropping the separators."""
    tokens = []
    cur = []
    for ch in text:
        if is_separator(ch):
            if cur:
                tokens.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if cur:
        tokens.append("".join(cur))
    return tokens


def _order(properties):
    rank = {}
    for i, prop in enumerate(properties.values()):
        for j, code in enumerate(prop.descriptors):
            rank[(prop.name, code)] = (i, j)
    return rank


def make_analysis(compiled, word, category, payload, rank=None):
    rank = rank or _order(compiled.properties)
    pos = POS.get(category, category)
    prefixes = tuple(word[s.start:s.end] for s in payload.segments if s.role == "prefix")
    suffixes = tuple(word[s.start:s.end] for s in payload.segments if s.role == "suffix")
    stems = [s for s in payload.segments if s.role == "stem"]
    stem = "".join(word[s.start:s.end] for s in stems)
    root = next((s.root for s in stems if s.root), "")
    template = next((s.component for s in stems if s.root), "")
    originals = payload.original_refs
    if pos == "noun" and template and not originals:
        originals = (NOT_EXIST,)
    columns = {"Gender": [], "Person": [], "Number": [], "G": [], "H": []}
    for d in sorted(payload.descriptors, key=lambda d: rank.get((d.property, d.code), (999, d.code))):
        if d.property in _HIDDEN:
            continue
        if d.property in _OWN_COLUMNS:
            columns[d.property].append(d.code)
        elif d.property in DESCRIPTOR_PROPERTIES:
            columns["H"].append(d.code)
        else:
            columns["G"].append(d.code)
    return Analysis(
        word=word,
        pos=pos,
        category=category,
        rule=payload.rule,
        stem=stem,
        root=root,
        template=template,
        original_schemes=tuple(originals),
        scheme=template if pos == "noun" else "",
        gender=tuple(columns["Gender"]),
        person=tuple(columns["Person"]),
        number=tuple(columns["Number"]),
        properties=tuple(columns["G"]),
        descriptors=tuple(columns["H"]),
        prefixes=prefixes,
        suffixes=suffixes,
    )


def analyze_word(compiled, word):
    """Every analysis of ``word``, ordered by (category, rule, decomposition)."""
    if not word or not is_canonical(word):
        return []
    rank = _order(compiled.properties)
    rows = []
    for category in sorted(compiled.automata):
        for p in am.lookup(compiled.automata[category], word):
            rows.append(make_analysis(compiled, word, category, p, rank))
    return rows


def analyze_text(compiled, text, script=None):
    """Tokenize and analyze; ``script`` is ``"arabic"``, ``"latin"`` or None to auto-detect."""
    if script == "arabic" or (script is None and has_arabic(text)):
        text = to_latin(text)
    rows = []
    not_found = []
    for token in tokenize(text):
        found = analyze_word(compiled, token)
        if found:
            rows.extend(found)
        elif token not in not_found:
            not_found.append(token)
    return AnalysisReport(rows, not_found)


def _exclusive_clash(compiled, codes):
    owner = {}
    for prop in compiled.properties.values():
        for code in prop.descriptors:
            owner.setdefault(code, prop)
    seen = {}
    for code in codes:
        prop = owner.get(code)
        if prop is None or prop.kind != EXCLUSIVE:
            continue
        if seen.setdefault(prop.name, code) != code:
            return True
    return False


def _matches(payload, word, root, scheme, codes, prefix, suffix):
    stems = [s for s in payload.segments if s.role == "stem"]
    if root is not None and not any(s.root == root for s in stems):
        return False
    if scheme is not None and not any(s.root and s.component == scheme for s in stems):
        return False
    if codes and not codes <= {d.code for d in payload.descriptors}:
        return False
    if prefix is not None and prefix not in [word[s.start:s.end] for s in payload.segments if s.role == "prefix"]:
        return False
    if suffix is not None and suffix not in [word[s.start:s.end] for s in payload.segments if s.role == "suffix"]:
        return False
    return True


# automaton -> {max_len: enumeration}; automata are immutable so this is safe
_ENUMERATED = weakref.WeakKeyDictionary()


def _enumerate(a, max_len):
    per = _ENUMERATED.setdefault(a, {})
    if max_len not in per:
        per[max_len] = sorted(am.enumerate_payloads(a, max_len).items())
    return per[max_len]


def generate(compiled, category=None, root=None, scheme=None, descriptors=(), prefix=None, suffix=None, max_len=12):
    """Surfaces (with their analyses) whose payload satisfies every constraint."""
    if category is not None and category not in compiled.automata:
        raise UnknownCategory(category)
    codes = set(descriptors)
    if _exclusive_clash(compiled, codes):
        return []
    rank = _order(compiled.properties)
    cats = [category] if category is not None else sorted(compiled.automata)
    out = []
    for cat in cats:
        for word, payloads in _enumerate(compiled.automata[cat], max_len):
            for p in payloads:
                if _matches(p, word, root, scheme, codes, prefix, suffix):
                    out.append((word, make_analysis(compiled, word, cat, p, rank)))
    return out


# ------------------------------------------------------------------ export

def _bracket(items):
    return "[" + ", ".join(items) + "]" if items else EMPTY


def _plain(items):
    return ", ".join(items) if items else EMPTY


def report_rows(rep):
    """The ten report columns of every row, as strings."""
    table = []
    for a in rep.rows:
        if a.original_schemes == (NOT_EXIST,):
            original = NOT_EXIST
        else:
            original = _bracket(a.original_schemes)
        table.append(
            [
                a.word,
                original,
                _bracket((a.scheme,) if a.scheme else ()),
                _plain(a.gender),
                _plain(a.person),
                _plain(a.number),
                _plain(a.properties),
                _plain(a.descriptors),
                _bracket(a.prefixes),
                _bracket(a.suffixes),
            ]
        )
    return table


def _to_json(rep):
    rows = []
    for a in rep.rows:
        row = {}
        for f in fields(Analysis):
            value = getattr(a, f.name)
            row[f.name] = list(value) if isinstance(value, tuple) and value else (value or None)
        rows.append(row)
    return {"rows": rows, "not_found": rep.not_found}


def export_report(rep, fmt="tsv"):
    """Render a report as UTF-8 bytes, ``"tsv"`` or ``"json"``."""
    if fmt == "tsv":
        lines = ["\t".join(HEADERS)]
        lines.extend("\t".join(cols) for cols in report_rows(rep))
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "json":
        text = json.dumps(_to_json(rep), ensure_ascii=False, indent=2)
        return (text + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def report_from_json(data):
    obj = json.loads(data)
    rows = []
    for row in obj["rows"]:
        kwargs = {}
        for f in fields(Analysis):
            value = row.get(f.name)
            if f.default == ():
                kwargs[f.name] = tuple(value or ())
            else:
                kwargs[f.name] = value or ""
        rows.append(Analysis(**kwargs))
    return AnalysisReport(rows, list(obj["not_found"]))
