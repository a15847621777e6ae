"""XMODEL lexicon: component classes, property classes and rules classes."""

import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from .translit import has_arabic, to_latin

EXCLUSIVE = "exclusive"
ADDITIVE = "additive"

# structural properties: they drive segmentation and morpheme selection
SEGMENT = "Segment"
SELECTOR = "Selector"


class LexiconError(Exception):
    pass


class XmlSyntax(LexiconError):
    def __init__(self, location, detail=""):
        super().__init__(f"{location}: malformed XML {detail}".rstrip())
        self.location = location


class UnknownTag(LexiconError):
    def __init__(self, tag, location):
        super().__init__(f"{location}: unknown or misplaced tag <{tag}>")
        self.tag = tag
        self.location = location


class DuplicateClass(LexiconError):
    def __init__(self, name):
        super().__init__(f"duplicate definition {name!r}")
        self.name = name


class NoReference(LexiconError):
    pass


class KeyNotFound(LexiconError):
    pass


class UnknownComponent(LexiconError):
    pass


class UnknownClass(LexiconError):
    pass


@dataclass(frozen=True, order=True)
class FeatureDescriptor:
    property: str
    code: str

    def __str__(self):
        return self.code

    @classmethod
    def parse(cls, text):
        prop, _, code = text.partition(".")
        return cls(prop, code)


@dataclass(frozen=True)
class PropertyDef:
    name: str
    kind: str
    descriptors: tuple
    package: str = ""


@dataclass(frozen=True)
class MorphComponent:
    surface: str
    id: int = None
    key: int = None
    local_descriptors: frozenset = frozenset()


@dataclass(frozen=True)
class MorphClass:
    name: str
    package: str = ""
    class_descriptors: frozenset = frozenset()
    used_properties: tuple = ()
    referenced_class: str = None
    components: tuple = ()
    modifiers: tuple = ()
    # bare <is> values naming a class kind rather than a descriptor
    tags: tuple = ()

    def find(self, surface):
        return [c for c in self.components if c.surface == surface]

    @property
    def segment(self):
        for d in self.class_descriptors:
            if d.property == SEGMENT:
                return d.code
        return None


@dataclass(frozen=True)
class MorphemeRef:
    key: str
    fixed_component: str = None

    @property
    def class_name(self):
        return self.key.partition(".")[0]

    @property
    def selector(self):
        return self.key.partition(".")[2] or None


@dataclass(frozen=True)
class MorphRule:
    id: str
    morphemes: tuple
    added_descriptors: tuple = ()


@dataclass(frozen=True)
class RulesClass:
    name: str
    rules: tuple
    category: str = None
    package: str = ""


@dataclass
class Lexicon:
    property_defs: dict = field(default_factory=dict)
    classes: dict = field(default_factory=dict)
    rules_classes: dict = field(default_factory=dict)
    # idp bundle name -> frozenset of FeatureDescriptor
    bundles: dict = field(default_factory=dict)

    def get_class(self, name):
        try:
            return self.classes[name]
        except KeyError:
            raise UnknownClass(name) from None

    def rules(self):
        for rc in self.rules_classes.values():
            yield from rc.rules

    def code_index(self):
        """descriptor code -> owning property names"""
        index = {}
        for prop in self.property_defs.values():
            for code in prop.descriptors:
                index.setdefault(code, []).append(prop.name)
        return index


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    detail: str = ""

    def __str__(self):
        return f"{self.kind}({self.subject}{', ' + self.detail if self.detail else ''})"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def kinds(self):
        return [v.kind for v in self.violations]

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)


# ---------------------------------------------------------------- parsing

_CHILDREN = {
    "package": {"morphological_class", "morphological_properties", "rules_class"},
    "morphological_class": {"properties", "component"},
    "properties": {"modifier", "is", "uses", "ref"},
    "component": {"md"},
    "morphological_properties": {"property"},
    "property": {"descriptor"},
    "rules_class": {"rule"},
    "rule": {"morpheme", "idp"},
}
_LEAVES = {"modifier", "is", "uses", "ref", "md", "descriptor", "morpheme", "idp"}
_DECL = re.compile(r"^\s*<\?xml[^>]*\?>")


def _surface(text):
    text = text.strip()
    return to_latin(text) if has_arabic(text) else text


def _int_attr(elem, name, where):
    value = elem.get(name)
    if value is None:
        return None
    try:
        n = int(value)
    except ValueError:
        raise XmlSyntax(where, f"({name}={value!r} is not an integer)") from None
    if n < 0:
        raise XmlSyntax(where, f"({name}={value!r} is negative)")
    return n


def _check(elem, where):
    allowed = _CHILDREN.get(elem.tag, set())
    for child in elem:
        if child.tag not in allowed:
            raise UnknownTag(child.tag, f"{where}/{child.tag}")
        if child.tag in _LEAVES and len(child):
            raise UnknownTag(child[0].tag, f"{where}/{child.tag}/{child[0].tag}")


def _read_root(doc, name):
    if isinstance(doc, bytes):
        try:
            doc = doc.decode("utf-8")
        except UnicodeDecodeError as e:
            raise XmlSyntax(name, f"(not UTF-8: {e})") from None
    doc = _DECL.sub("", doc, count=1)
    try:
        return ET.fromstring(doc)
    except ET.ParseError as e:
        raise XmlSyntax(f"{name}:{e.position[0]}:{e.position[1]}", f"({e})") from None


def parse_lexicon(documents, bundles=None, names=None):
    """Parse XMODEL documents (str or UTF-8 bytes) into a :class:`Lexicon`."""
    names = list(names) if names is not None else [f"doc{i}" for i in range(len(documents))]
    raw_classes = []
    props = {}
    rules_classes = {}
    for doc, name in zip(documents, names):
        root = _read_root(doc, name)
        if root.tag != "package":
            raise UnknownTag(root.tag, f"{name}:/{root.tag}")
        package = root.get("name", "")
        where = f"{name}:/package"
        _check(root, where)
        for elem in root:
            if elem.tag == "morphological_class":
                raw_classes.append(_read_class(elem, package, f"{where}/morphological_class"))
            elif elem.tag == "morphological_properties":
                w = f"{where}/morphological_properties"
                _check(elem, w)
                for p in elem:
                    prop = _read_property(p, package, f"{w}/property")
                    if prop.name in props:
                        raise DuplicateClass(prop.name)
                    props[prop.name] = prop
            else:
                rc = _read_rules_class(elem, package, f"{where}/rules_class")
                if rc.name in rules_classes:
                    raise DuplicateClass(rc.name)
                rules_classes[rc.name] = rc

    classes = {}
    for raw in raw_classes:
        if raw["name"] in classes:
            raise DuplicateClass(raw["name"])
        classes[raw["name"]] = _resolve_class(raw, props)

    lex = Lexicon(props, classes, rules_classes)
    for name, entries in (bundles or {}).items():
        lex.bundles[name] = frozenset(
            e if isinstance(e, FeatureDescriptor) else FeatureDescriptor.parse(e) for e in entries
        )
    return lex


def _read_property(elem, package, where):
    _check(elem, where)
    kind = elem.get("type", "")
    if kind not in (EXCLUSIVE, ADDITIVE):
        raise XmlSyntax(where, f"(property type must be exclusive or additive, got {kind!r})")
    codes = tuple(d.get("name", "") for d in elem)
    if len(set(codes)) != len(codes):
        raise XmlSyntax(where, f"(duplicate descriptor in {elem.get('name')!r})")
    return PropertyDef(elem.get("name", ""), kind, codes, package)


def _read_class(elem, package, where):
    _check(elem, where)
    raw = {
        "name": elem.get("name", ""),
        "package": package,
        "is": [],
        "uses": [],
        "ref": None,
        "modifiers": [],
        "components": [],
    }
    for child in elem:
        if child.tag == "properties":
            _check(child, f"{where}/properties")
            for p in child:
                text = (p.text or "").strip()
                if p.tag == "is":
                    raw["is"].append(text)
                elif p.tag == "uses":
                    raw["uses"].append(text)
                elif p.tag == "ref":
                    raw["ref"] = text
                else:
                    raw["modifiers"].append(text)
        else:
            w = f"{where}/component"
            _check(child, w)
            raw["components"].append(
                (
                    _surface(child.get("name", "")),
                    _int_attr(child, "id", w),
                    _int_attr(child, "key", w),
                    [md.get("key", "") for md in child],
                )
            )
    return raw


def _resolve_class(raw, props):
    class_desc = set()
    tags = []
    for text in raw["is"]:
        if "." in text:
            class_desc.add(FeatureDescriptor.parse(text))
        else:
            tags.append(text)
    comps = []
    for surface, cid, key, mds in raw["components"]:
        local = set()
        for code in mds:
            owner = next(
                (u for u in raw["uses"] if u in props and code in props[u].descriptors), ""
            )
            local.add(FeatureDescriptor(owner, code))
        comps.append(MorphComponent(surface, cid, key, frozenset(local)))
    return MorphClass(
        name=raw["name"],
        package=raw["package"],
        class_descriptors=frozenset(class_desc),
        used_properties=tuple(raw["uses"]),
        referenced_class=raw["ref"],
        components=tuple(comps),
        modifiers=tuple(raw["modifiers"]),
        tags=tuple(tags),
    )


def _read_rules_class(elem, package, where):
    _check(elem, where)
    name = elem.get("name", "")
    rules = []
    for i, r in enumerate(elem):
        _check(r, f"{where}/rule")
        morphemes = tuple(
            MorphemeRef(m.get("key", ""), _surface(m.get("component")) if m.get("component") else None)
            for m in r
            if m.tag == "morpheme"
        )
        idps = tuple(m.get("name", "") for m in r if m.tag == "idp")
        if not morphemes:
            raise XmlSyntax(f"{where}/rule[{i}]", "(rule without morphemes)")
        rules.append(MorphRule(r.get("id") or f"{name}.{i + 1}", morphemes, idps))
    return RulesClass(name, tuple(rules), elem.get("category"), package)


def load_lexicon_dir(path):
    """Read every ``*.xml`` under ``path`` (sorted) plus the ``idp.json`` bundle table."""
    path = Path(path)
    files = sorted(path.rglob("*.xml"))
    bundles = {}
    idp = path / "idp.json"
    if idp.exists():
        bundles = json.loads(idp.read_text(encoding="utf-8"))
    return parse_lexicon(
        [f.read_bytes() for f in files], bundles, [str(f.relative_to(path)) for f in files]
    )


# ---------------------------------------------------------------- queries

def effective_descriptors(lex, class_name, component):
    """Class-level ``is`` descriptors plus the component's own ``md`` descriptors."""
    cls = lex.get_class(class_name)
    if isinstance(component, MorphComponent):
        found = [component]
    else:
        found = cls.find(component)
    if not found:
        raise UnknownComponent(f"{class_name}/{component}")
    result = set(cls.class_descriptors)
    for c in found:
        result |= c.local_descriptors
    return frozenset(result)


def resolve_original(lex, class_name, component):
    """Original components (in the ``ref`` class) whose id equals the component key."""
    cls = lex.get_class(class_name)
    if not cls.referenced_class:
        raise NoReference(class_name)
    target = lex.get_class(cls.referenced_class)
    found = [component] if isinstance(component, MorphComponent) else cls.find(component)
    if not found:
        raise UnknownComponent(f"{class_name}/{component}")
    result = []
    for comp in found:
        matches = [c for c in target.components if c.id == comp.key]
        if comp.key is None or not matches:
            raise KeyNotFound(f"{class_name}/{comp.surface}: key {comp.key}")
        result.extend(m for m in matches if m not in result)
    return result


def select_components(lex, ref):
    """Components picked by a morpheme key (and its fixed component, if any)."""
    cls = lex.get_class(ref.class_name)
    comps = list(cls.components)
    sel = ref.selector
    if sel and sel in lex.code_index():
        comps = [
            c for c in comps
            if any(d.code == sel for d in effective_descriptors(lex, cls.name, c))
        ]
    if ref.fixed_component is not None:
        comps = [c for c in comps if c.surface == ref.fixed_component]
    return cls, comps


# ------------------------------------------------------------- validation

def validate_lexicon(lex):
    from .scheme import Scheme, SchemeError

    report = ValidationReport()
    add = report.violations.append
    props = lex.property_defs

    def known(d):
        return d.property in props and d.code in props[d.property].descriptors

    for cls in lex.classes.values():
        for prop in cls.used_properties:
            if prop not in props:
                add(Violation("UnknownProperty", cls.name, prop))
        for d in sorted(cls.class_descriptors):
            if not known(d):
                add(Violation("UnknownDescriptor", cls.name, f"{d.property}.{d.code}"))
        target = lex.classes.get(cls.referenced_class) if cls.referenced_class else None
        for comp in cls.components:
            for d in sorted(comp.local_descriptors):
                if not known(d):
                    add(Violation("UnknownDescriptor", cls.name, d.code))
            combined = cls.class_descriptors | comp.local_descriptors
            for prop in props.values():
                if prop.kind == EXCLUSIVE:
                    n = sum(1 for d in combined if d.property == prop.name)
                    if n > 1:
                        add(Violation("ExclusiveViolation", f"{cls.name}/{comp.surface}", prop.name))
            if cls.referenced_class and comp.key is not None:
                ids = {c.id for c in target.components} if target else set()
                if comp.key not in ids:
                    add(Violation("DanglingRef", cls.name, str(comp.key)))
            if cls.segment == "scheme":
                try:
                    Scheme(comp.surface)
                except SchemeError as e:
                    add(Violation("InvalidTemplate", f"{cls.name}/{comp.surface}", str(e)))

    seen_ids = set()
    for rc in lex.rules_classes.values():
        for rule in rc.rules:
            if rule.id in seen_ids:
                add(Violation("DuplicateRuleId", rule.id))
            seen_ids.add(rule.id)
            for name in rule.added_descriptors:
                if name not in lex.bundles:
                    add(Violation("UnknownBundle", rule.id, name))
            roles = []
            for m in rule.morphemes:
                if m.class_name not in lex.classes:
                    add(Violation("UnresolvedMorphemeKey", rule.id, m.key))
                    continue
                cls, comps = select_components(lex, MorphemeRef(m.key))
                if not comps:
                    add(Violation("UnresolvedMorphemeKey", rule.id, m.key))
                    continue
                if m.fixed_component is not None and m.fixed_component not in {c.surface for c in comps}:
                    add(Violation("FixedComponentNotInClass", rule.id, m.fixed_component))
                roles.append({"prefix": 0, "suffix": 2}.get(cls.segment, 1))
            if roles != sorted(roles):
                add(Violation("AffixOrder", rule.id))
    for name, descs in lex.bundles.items():
        for d in sorted(descs):
            if not known(d):
                add(Violation("UnknownDescriptor", f"idp:{name}", f"{d.property}.{d.code}"))
    return report


# ---------------------------------------------------------- serialization

def dump_lexicon(lex):
    """Render the lexicon back to XMODEL, one document per package."""
    packages = {}

    def pkg(name):
        if name not in packages:
            packages[name] = ET.Element("package", name=name)
        return packages[name]

    prop_groups = {}
    for prop in lex.property_defs.values():
        if prop.package not in prop_groups:
            prop_groups[prop.package] = ET.SubElement(pkg(prop.package), "morphological_properties")
        p = ET.SubElement(prop_groups[prop.package], "property", name=prop.name, type=prop.kind)
        for code in prop.descriptors:
            ET.SubElement(p, "descriptor", name=code)

    for cls in lex.classes.values():
        c = ET.SubElement(pkg(cls.package), "morphological_class", name=cls.name)
        ps = ET.SubElement(c, "properties")
        for m in cls.modifiers:
            ET.SubElement(ps, "modifier").text = m
        for t in cls.tags:
            ET.SubElement(ps, "is").text = t
        for d in sorted(cls.class_descriptors):
            ET.SubElement(ps, "is").text = f"{d.property}.{d.code}"
        for u in cls.used_properties:
            ET.SubElement(ps, "uses").text = u
        if cls.referenced_class:
            ET.SubElement(ps, "ref").text = cls.referenced_class
        for comp in cls.components:
            attrs = {"name": comp.surface}
            if comp.id is not None:
                attrs["id"] = str(comp.id)
            if comp.key is not None:
                attrs["key"] = str(comp.key)
            e = ET.SubElement(c, "component", attrs)
            for d in sorted(comp.local_descriptors):
                ET.SubElement(e, "md", key=d.code)

    for rc in lex.rules_classes.values():
        attrs = {"name": rc.name}
        if rc.category:
            attrs["category"] = rc.category
        r_el = ET.SubElement(pkg(rc.package), "rules_class", attrs)
        for rule in rc.rules:
            e = ET.SubElement(r_el, "rule", id=rule.id)
            for m in rule.morphemes:
                attrs = {"key": m.key}
                if m.fixed_component is not None:
                    attrs["component"] = m.fixed_component
                ET.SubElement(e, "morpheme", attrs)
            for name in rule.added_descriptors:
                ET.SubElement(e, "idp", name=name)

    out = {}
    for name, elem in packages.items():
        ET.indent(elem)
        out[name] = '<?xml version="1.0" encoding="UTF-8" ?>\n' + ET.tostring(elem, encoding="unicode") + "\n"
    return out


def dump_bundles(lex):
    return {
        name: [f"{d.property}.{d.code}" for d in sorted(descs)]
        for name, descs in sorted(lex.bundles.items())
    }
