"""Root and scheme (wazn) instantiation.

A scheme is a template over constants and the radical variables ``f``,
``c`` and ``l``.  A run of the same variable letter is one radical slot
written geminated, so ``eifcalla`` has three slots while ``faclala`` has
four (its two ``l`` runs are separated by a constant).
"""

from dataclasses import dataclass, field

from .translit import CONSONANTS

VARIABLES = "fcl"


class SchemeError(ValueError):
    pass


class ArityMismatch(SchemeError):
    def __init__(self, root, scheme):
        super().__init__(f"root {root} does not fit scheme {scheme}")
        self.root = root
        self.scheme = scheme


class InvalidTemplate(SchemeError):
    pass


@dataclass(frozen=True, order=True)
class Root:
    radicals: tuple

    def __post_init__(self):
        if len(self.radicals) not in (3, 4):
            raise ArityMismatch("".join(self.radicals), None)
        for r in self.radicals:
            if r not in CONSONANTS:
                raise SchemeError(f"radical {r!r} is not a consonant")

    @classmethod
    def parse(cls, text):
        return cls(tuple(text.strip()))

    def __str__(self):
        return "".join(self.radicals)


@dataclass(frozen=True)
class Scheme:
    template: str
    # (start, end) per radical slot, in order
    slots: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        slots = []
        letters = []
        i = 0
        t = self.template
        if not t:
            raise InvalidTemplate("empty template")
        while i < len(t):
            if t[i] in VARIABLES:
                j = i
                while j < len(t) and t[j] == t[i]:
                    j += 1
                slots.append((i, j))
                letters.append(t[i])
                i = j
            else:
                if t[i] not in CONSONANTS and t[i] not in "aiuAIU":
                    raise InvalidTemplate(f"{t!r}: bad symbol {t[i]!r}")
                i += 1
        if "".join(letters) not in ("fcl", "fcll"):
            raise InvalidTemplate(f"{t!r}: radical slots must read f, c, l(, l)")
        object.__setattr__(self, "slots", tuple(slots))

    @property
    def arity(self):
        return len(self.slots)

    def __str__(self):
        return self.template


@dataclass(frozen=True)
class Stem:
    surface: str
    root: Root
    scheme: Scheme


def instantiate_scheme(root, scheme):
    """Substitute the radicals of ``root`` into the slots of ``scheme``."""
    if isinstance(root, str):
        root = Root.parse(root)
    if isinstance(scheme, str):
        scheme = Scheme(scheme)
    if len(root.radicals) != scheme.arity:
        raise ArityMismatch(str(root), scheme.template)
    chars = list(scheme.template)
    for radical, (start, end) in zip(root.radicals, scheme.slots):
        for k in range(start, end):
            chars[k] = radical
    return Stem("".join(chars), root, scheme)


def match_scheme(stem_surface, schemes):
    """Every (scheme, root) pair among ``schemes`` that yields ``stem_surface``."""
    found = []
    for scheme in schemes:
        if isinstance(scheme, str):
            scheme = Scheme(scheme)
        t = scheme.template
        if len(t) != len(stem_surface):
            continue
        radicals = []
        ok = True
        for start, end in scheme.slots:
            seg = stem_surface[start:end]
            if seg[0] not in CONSONANTS or seg != seg[0] * len(seg):
                ok = False
                break
            radicals.append(seg[0])
        if not ok:
            continue
        try:
            root = Root(tuple(radicals))
        except SchemeError:
            continue
        if instantiate_scheme(root, scheme).surface == stem_surface:
            found.append((scheme, root))
    return found
