import json

import pytest

from amaut.lexicon import (
    ADDITIVE,
    EXCLUSIVE,
    DuplicateClass,
    FeatureDescriptor,
    KeyNotFound,
    MorphemeRef,
    NoReference,
    UnknownClass,
    UnknownComponent,
    UnknownTag,
    XmlSyntax,
    dump_bundles,
    dump_lexicon,
    effective_descriptors,
    load_lexicon_dir,
    parse_lexicon,
    resolve_original,
    select_components,
    validate_lexicon,
)

from conftest import FIXTURES


def fixture(*names):
    return [(FIXTURES / n).read_bytes() for n in names]


def codes(descs):
    return {d.code for d in descs}


def test_class_descriptors_apply_to_all_components():
    lex = parse_lexicon(fixture("properties_min.xml", "origin_schemes.xml"))
    cls = lex.get_class("OriginSchemeS")
    assert [c.surface for c in cls.components] == ["facala", "facila", "facula", "faclala"]
    assert codes(effective_descriptors(lex, "OriginSchemeS", "facala")) == {"NSg", "Pr3", "GMa"}
    assert cls.modifiers == ("final",)
    assert cls.tags == ("FinalVerbS",)
    assert validate_lexicon(lex).ok


def test_property_kinds():
    lex = parse_lexicon(fixture("person_gender.xml"))
    assert lex.property_defs["Person"].kind == EXCLUSIVE
    assert lex.property_defs["Person"].descriptors == ("Pr1", "Pr2", "Pr3")
    assert lex.property_defs["Gender"].kind == ADDITIVE
    assert lex.property_defs["Gender"].descriptors == ("GFe", "GMa")


def test_component_descriptors():
    lex = parse_lexicon(fixture("properties_min.xml", "demonstratives.xml"))
    assert codes(effective_descriptors(lex, "NPEichArat", "hAvA")) == {"NSg", "GMa", "pro"}
    assert codes(effective_descriptors(lex, "NPEichArat", "vAlika")) == {"NSg", "GMa", "LOI"}
    assert FeatureDescriptor("Place", "LOI") in effective_descriptors(lex, "NPEichArat", "vAlika")


def test_reference_to_original_components():
    lex = parse_lexicon(fixture("properties_min.xml", "conjugated_forms.xml"))
    assert [c.surface for c in resolve_original(lex, "VerbSainMuDAric", "afcal")] == ["facala"]
    assert [c.surface for c in resolve_original(lex, "VerbSainMuDAric", "ufcil")] == ["eafcala"]
    assert validate_lexicon(lex).ok


def test_reference_errors():
    lex = parse_lexicon(fixture("properties_min.xml", "conjugated_forms.xml"))
    with pytest.raises(NoReference):
        resolve_original(lex, "OriginSchemeS", "facala")
    with pytest.raises(UnknownComponent):
        resolve_original(lex, "VerbSainMuDAric", "nothing")
    with pytest.raises(UnknownClass):
        lex.get_class("Nope")


def test_dangling_key():
    doc = """<package name="p"><morphological_class name="A">
      <component name="x" id="1"/></morphological_class>
      <morphological_class name="B"><properties><ref>A</ref></properties>
      <component name="y" key="9"/></morphological_class></package>"""
    lex = parse_lexicon([doc])
    with pytest.raises(KeyNotFound):
        resolve_original(lex, "B", "y")
    assert validate_lexicon(lex).kinds() == ["DanglingRef"]


def test_rule_ids_default_to_position():
    lex = parse_lexicon(fixture("preposition_rules.xml"))
    rules = list(lex.rules())
    assert [r.id for r in rules] == ["prefixeSuffixes.1", "prefixeSuffixes.2"]
    assert rules[0].morphemes[0] == MorphemeRef("PrefixeHJar.JarMaDmUr", "la")
    # the classes it names are absent from this document alone
    assert "UnresolvedMorphemeKey" in validate_lexicon(lex).kinds()


def test_rules_and_selectors():
    bundles = json.loads((FIXTURES / "card_number_idp.json").read_text())
    lex = parse_lexicon(fixture("card_number_rules.xml"), bundles)
    assert validate_lexicon(lex).ok
    rc = lex.rules_classes["cardNbCRules"]
    assert [r.id for r in rc.rules] == ["rule_1", "rule_2"]
    assert rc.rules[0].added_descriptors == ("CNIndefMarfUc",)
    cls, comps = select_components(lex, MorphemeRef("CasSuffixe.SCID", "un"))
    assert [c.surface for c in comps] == ["un"]
    cls, comps = select_components(lex, MorphemeRef("CardNumber.CNAccepteSCID"))
    assert [c.surface for c in comps] == ["wAHid"]


def test_arabic_component_names_are_transliterated():
    doc = '<package name="p"><morphological_class name="A"><component name="فَعَلَ" id="1"/></morphological_class></package>'
    assert parse_lexicon([doc]).get_class("A").components[0].surface == "facala"


def test_declared_encoding_is_ignored_for_utf8():
    doc = '<?xml version="1.0" encoding="ISO-8859-1" ?>\n<package name="p"><morphological_class name="A"><component name="مع"/></morphological_class></package>'
    assert parse_lexicon([doc.encode("utf-8")]).get_class("A").components[0].surface == "mc"


def test_malformed_xml():
    with pytest.raises(XmlSyntax) as e:
        parse_lexicon(["<package><morphological_class name='A'></package>"], names=["bad.xml"])
    assert e.value.location.startswith("bad.xml:")


def test_not_utf8():
    with pytest.raises(XmlSyntax):
        parse_lexicon([b"<package name='\xff'/>"])


def test_unknown_tag():
    with pytest.raises(UnknownTag) as e:
        parse_lexicon(["<package><morphological_class name='A'><colour/></morphological_class></package>"])
    assert e.value.tag == "colour"
    with pytest.raises(UnknownTag):
        parse_lexicon(["<lexicon/>"])


def test_duplicate_class():
    doc = "<package><morphological_class name='A'/><morphological_class name='A'/></package>"
    with pytest.raises(DuplicateClass):
        parse_lexicon([doc])


def test_bad_property_type():
    with pytest.raises(XmlSyntax):
        parse_lexicon(["<package><morphological_properties><property name='P' type='both'/></morphological_properties></package>"])


def test_negative_id():
    with pytest.raises(XmlSyntax):
        parse_lexicon(["<package><morphological_class name='A'><component name='x' id='-1'/></morphological_class></package>"])


def _props():
    return (FIXTURES / "properties_min.xml").read_text()


def test_exclusive_violation():
    doc = """<package><morphological_class name='A'><properties><is>Person.Pr1</is><uses>Person</uses></properties>
      <component name='x'><md key='Pr3'/></component></morphological_class></package>"""
    report = validate_lexicon(parse_lexicon([_props(), doc]))
    assert report.kinds() == ["ExclusiveViolation"]


def test_additive_allows_several():
    doc = """<package><morphological_class name='A'><properties><uses>Gender</uses></properties>
      <component name='x'><md key='GFe'/><md key='GMa'/></component></morphological_class></package>"""
    assert validate_lexicon(parse_lexicon([_props(), doc])).ok


def test_unknown_property_and_descriptor():
    doc = """<package><morphological_class name='A'><properties><is>Person.Pr9</is><uses>Mood</uses></properties>
      <component name='x'/></morphological_class></package>"""
    assert sorted(validate_lexicon(parse_lexicon([_props(), doc])).kinds()) == ["UnknownDescriptor", "UnknownProperty"]


def test_unknown_bundle_and_duplicate_rule_id():
    doc = """<package><morphological_class name='A'><component name='x'/></morphological_class>
      <rules_class name='R'><rule id='r'><morpheme key='A'/><idp name='Missing'/></rule>
      <rule id='r'><morpheme key='A'/></rule></rules_class></package>"""
    assert sorted(validate_lexicon(parse_lexicon([doc])).kinds()) == ["DuplicateRuleId", "UnknownBundle"]


def test_fixed_component_not_in_class():
    doc = """<package><morphological_class name='A'><component name='x'/></morphological_class>
      <rules_class name='R'><rule><morpheme key='A' component='y'/></rule></rules_class></package>"""
    assert validate_lexicon(parse_lexicon([doc])).kinds() == ["FixedComponentNotInClass"]


def test_seed_validates(seed):
    lex, roots = seed
    assert validate_lexicon(lex).ok


def test_dump_round_trip(seed, tmp_path):
    lex, _ = seed
    docs = dump_lexicon(lex)
    for name, text in docs.items():
        (tmp_path / f"{name}.xml").write_text(text, encoding="utf-8")
    (tmp_path / "idp.json").write_text(json.dumps(dump_bundles(lex)))
    again = load_lexicon_dir(tmp_path)
    assert set(again.classes) == set(lex.classes)
    assert again.rules_classes == lex.rules_classes
    assert again.bundles == lex.bundles
    for name, cls in lex.classes.items():
        assert again.classes[name].components == cls.components
        assert again.classes[name].class_descriptors == cls.class_descriptors
    assert list(again.property_defs.values()) == list(lex.property_defs.values())
