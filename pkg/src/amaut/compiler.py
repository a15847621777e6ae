"""Compile a lexicon's rules classes into per-category automata."""

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

from . import automaton as am
from .automaton import Payload, Segment
from .lexicon import (
    LexiconError,
    MorphemeRef,
    RulesClass,
    UnknownClass,
    effective_descriptors,
    resolve_original,
    select_components,
    validate_lexicon,
)
from .scheme import ArityMismatch, Root, Scheme, instantiate_scheme

UNCATEGORIZED = "uncategorized"

MAGIC = b"AMAUT\x00"
VERSION = 1
_EPS_INDEX = 0xFFFF


class CompileError(LexiconError):
    pass


class UnresolvedKey(CompileError):
    pass


class InvalidLexicon(CompileError):
    def __init__(self, report):
        super().__init__("lexicon does not validate: " + "; ".join(map(str, report)))
        self.report = report


class CacheFormatError(CompileError):
    pass


@dataclass
class CompiledLexicon:
    automata: dict
    rule_index: dict
    rule_category: dict
    properties: dict
    counts: dict = field(default_factory=dict)

    @property
    def categories(self):
        return list(self.automata)


def read_roots(path):
    """One root per line; blank lines and ``#`` comments are skipped."""
    roots = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            roots.append(Root.parse(line))
    return roots


def _role(cls):
    return {"prefix": "prefix", "suffix": "suffix"}.get(cls.segment, "stem")


def _originals(lex, cls, comp):
    if cls.referenced_class and comp.key is not None:
        return tuple(o.surface for o in resolve_original(lex, cls.name, comp))
    return ()


def component_payload(lex, cls, comp, surface=None, root=""):
    surface = comp.surface if surface is None else surface
    seg = Segment(
        cls.name, comp.surface, 0, len(surface), _role(cls), root, _originals(lex, cls, comp)
    )
    return Payload(effective_descriptors(lex, cls.name, comp), "", (seg,))


def expand_schemes(lex, scheme_class, roots, components=None):
    """Union of every compatible (root, scheme) instantiation of a scheme class."""
    cls = lex.get_class(scheme_class)
    comps = cls.components if components is None else components
    atoms = []
    for comp in comps:
        scheme = Scheme(comp.surface)
        for root in roots:
            try:
                stem = instantiate_scheme(root, scheme)
            except ArityMismatch:
                continue
            atoms.append(am.atom(stem.surface, component_payload(lex, cls, comp, stem.surface, str(root))))
    return am.union(*atoms) if atoms else am.empty()


def compile_morpheme(lex, m, roots=()):
    """Union of atoms over the components selected by a morpheme key."""
    try:
        cls, comps = select_components(lex, m)
    except UnknownClass:
        raise UnresolvedKey(m.key) from None
    if not comps:
        raise UnresolvedKey(f"{m.key} (component {m.fixed_component!r})")
    if cls.segment == "scheme":
        return expand_schemes(lex, cls.name, roots, comps)
    return am.union(*(am.atom(c.surface, component_payload(lex, cls, c)) for c in comps))


def compile_rule(lex, rule, roots=()):
    """Left-to-right concatenation of the rule's morphemes, tagged with the rule id and its idp descriptors."""
    machine = None
    for m in rule.morphemes:
        part = compile_morpheme(lex, m, roots)
        machine = part if machine is None else am.concat(machine, part)
    extra = frozenset()
    for name in rule.added_descriptors:
        extra |= lex.bundles.get(name, frozenset())

    def tag(p):
        return Payload(p.descriptors | extra, rule.id, p.segments)

    return am.map_payloads(machine, tag)


def compile_rules_class(lex, rules_class, roots=()):
    rules = rules_class.rules if isinstance(rules_class, RulesClass) else rules_class
    machines = [compile_rule(lex, r, roots) for r in rules]
    if len(machines) == 1:
        return machines[0]
    return am.union(*machines) if machines else am.empty()


def compile_all(lex, roots, determinize=False, minimize=False):
    report = validate_lexicon(lex)
    if not report.ok:
        raise InvalidLexicon(report)
    by_category = {}
    rule_index = {}
    rule_category = {}
    for name in sorted(lex.rules_classes):
        rc = lex.rules_classes[name]
        category = rc.category or UNCATEGORIZED
        by_category.setdefault(category, []).append(compile_rules_class(lex, rc, roots))
        for r in rc.rules:
            rule_index[r.id] = rc.name
            rule_category[r.id] = category
    automata = {}
    for category in sorted(by_category):
        parts = by_category[category]
        machine = parts[0] if len(parts) == 1 else am.union(*parts)
        if determinize or minimize:
            machine = am.determinize(machine)
        if minimize:
            machine = am.minimize(machine)
        automata[category] = machine
    counts = {
        "classes": len(lex.classes),
        "components": sum(len(c.components) for c in lex.classes.values()),
        "properties": len(lex.property_defs),
        "rules_classes": len(lex.rules_classes),
        "rules": len(rule_index),
        "roots": len(roots),
    }
    return CompiledLexicon(automata, rule_index, rule_category, dict(lex.property_defs), counts)


# ------------------------------------------------------------------ cache

def _payload_json(p):
    return {
        "d": sorted([d.property, d.code] for d in p.descriptors),
        "r": p.rule,
        "s": [[s.cls, s.component, s.start, s.end, s.role, s.root, list(s.originals)] for s in p.segments],
    }


def _payload_from_json(obj):
    from .lexicon import FeatureDescriptor

    return Payload(
        frozenset(FeatureDescriptor(p, c) for p, c in obj["d"]),
        obj["r"],
        tuple(Segment(c, comp, st, en, role, root, tuple(orig)) for c, comp, st, en, role, root, orig in obj["s"]),
    )


def dump_compiled(cl):
    """Serialize to bytes: versioned header, JSON metadata, then binary state tables."""
    payloads = set()
    symbols = set()
    for a in cl.automata.values():
        payloads |= a.payloads()
        symbols |= a.alphabet
    payload_list = sorted(payloads, key=Payload.sort_key)
    p_index = {p: i for i, p in enumerate(payload_list)}
    sym_list = sorted(symbols)
    s_index = {s: i for i, s in enumerate(sym_list)}
    s_index[am.EPS] = _EPS_INDEX
    meta = {
        "categories": list(cl.automata),
        "rule_index": cl.rule_index,
        "rule_category": cl.rule_category,
        "properties": [
            {"name": p.name, "kind": p.kind, "descriptors": list(p.descriptors), "package": p.package}
            for p in cl.properties.values()
        ],
        "counts": cl.counts,
        "symbols": sym_list,
        "payloads": [_payload_json(p) for p in payload_list],
    }
    blob = json.dumps(meta, sort_keys=True, ensure_ascii=False, separators=(",", ":")).encode("utf-8")
    out = [MAGIC, struct.pack(">HI", VERSION, len(blob)), blob]
    for a in cl.automata.values():
        edges = [
            (q, s_index[sym], d)
            for q, row in enumerate(a.transitions)
            for sym in sorted(row)
            for d in row[sym]
        ]
        out.append(struct.pack(">III", a.n_states, a.start, len(edges)))
        out.extend(struct.pack(">IHI", *e) for e in edges)
        out.append(struct.pack(">I", len(a.accepts)))
        for q in sorted(a.accepts):
            idx = sorted(p_index[p] for p in a.accepts[q])
            out.append(struct.pack(">IH", q, len(idx)))
            out.append(struct.pack(f">{len(idx)}I", *idx))
    return b"".join(out)


def load_compiled_bytes(data):
    from .lexicon import PropertyDef

    if not data.startswith(MAGIC):
        raise CacheFormatError("not a compiled automaton cache")
    pos = len(MAGIC)
    version, size = struct.unpack_from(">HI", data, pos)
    if version != VERSION:
        raise CacheFormatError(f"unsupported cache version {version}")
    pos += 6
    meta = json.loads(data[pos:pos + size].decode("utf-8"))
    pos += size
    payloads = [_payload_from_json(p) for p in meta["payloads"]]
    symbols = meta["symbols"]
    automata = {}
    try:
        for name in meta["categories"]:
            n, start, n_edges = struct.unpack_from(">III", data, pos)
            pos += 12
            trans = [{} for _ in range(n)]
            for _ in range(n_edges):
                q, si, d = struct.unpack_from(">IHI", data, pos)
                pos += 10
                sym = am.EPS if si == _EPS_INDEX else symbols[si]
                trans[q].setdefault(sym, []).append(d)
            (n_acc,) = struct.unpack_from(">I", data, pos)
            pos += 4
            accepts = {}
            for _ in range(n_acc):
                q, k = struct.unpack_from(">IH", data, pos)
                pos += 6
                idx = struct.unpack_from(f">{k}I", data, pos)
                pos += 4 * k
                accepts[q] = {payloads[i] for i in idx}
            automata[name] = am.Amaut(n, start, trans, accepts)
    except struct.error as e:
        raise CacheFormatError(f"truncated cache: {e}") from None
    props = {
        p["name"]: PropertyDef(p["name"], p["kind"], tuple(p["descriptors"]), p["package"])
        for p in meta["properties"]
    }
    return CompiledLexicon(automata, meta["rule_index"], meta["rule_category"], props, meta["counts"])


def save_compiled(cl, path):
    Path(path).write_bytes(dump_compiled(cl))


def load_compiled(path):
    return load_compiled_bytes(Path(path).read_bytes())
