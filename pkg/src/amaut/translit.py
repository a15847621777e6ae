"""Arabic script <-> Latin transliteration.

Consonants follow the letter table used throughout the lexicon files, with
case used to keep emphatic/plain pairs apart (t/T, d/D, s/S, h/H, z/Z).
Short vowels are a/i/u, long vowels A/I/U, gemination is a doubled
consonant and tanween is written un/an/in.
"""

import unicodedata

__all__ = [
    "CONSONANTS",
    "VOWELS",
    "ALPHABET",
    "TranslitError",
    "UnknownCharacter",
    "UnknownSymbol",
    "to_latin",
    "to_arabic",
    "is_canonical",
    "has_arabic",
    "is_separator",
]

# letter -> latin
_LETTERS = {
    "ب": "b",
    "ت": "t",
    "ث": "~",
    "ج": "j",
    "ح": "H",
    "خ": "x",
    "د": "d",
    "ذ": "v",
    "ر": "r",
    "ز": "z",
    "س": "s",
    "ش": "^",
    "ص": "S",
    "ض": "D",
    "ط": "T",
    "ظ": "Z",
    "ع": "c",
    "غ": "g",
    "ف": "f",
    "ق": "q",
    "ك": "k",
    "ل": "l",
    "م": "m",
    "ن": "n",
    "ه": "h",
    "و": "w",
    "ي": "y",
    "ة": "t",
    "ء": "e",
    "أ": "e",
    "إ": "e",
    "ؤ": "e",
    "ئ": "e",
}

ALEF = "ا"
ALEF_MAQSURA = "ى"
ALEF_MADDA = "آ"
WAW = "و"
YEH = "ي"
TATWEEL = "ـ"
DAGGER_ALEF = "ٰ"
HAMZA = "ء"
HAMZA_ABOVE = "أ"
HAMZA_BELOW = "إ"

FATHATAN = "ً"
DAMMATAN = "ٌ"
KASRATAN = "ٍ"
FATHA = "َ"
DAMMA = "ُ"
KASRA = "ِ"
SHADDA = "ّ"
SUKUN = "ْ"

_MARKS = {FATHATAN, DAMMATAN, KASRATAN, FATHA, DAMMA, KASRA, SHADDA, SUKUN, DAGGER_ALEF}
_SHORT = {FATHA: "a", KASRA: "i", DAMMA: "u"}
_TANWEEN = {FATHATAN: "an", DAMMATAN: "un", KASRATAN: "in"}

CONSONANTS = frozenset(_LETTERS.values())
VOWELS = frozenset("aiuAIU")
ALPHABET = CONSONANTS | VOWELS

# canonical representative for each latin consonant
_INVERSE = {
    latin: letter
    for letter, latin in _LETTERS.items()
    if letter not in ("ة", "أ", "إ", "ؤ", "ئ")
}
_SHORT_INV = {"a": FATHA, "i": KASRA, "u": DAMMA}
_LONG_INV = {"A": (FATHA, ALEF), "I": (KASRA, YEH), "U": (DAMMA, WAW)}
_TANWEEN_INV = {"a": FATHATAN, "u": DAMMATAN, "i": KASRATAN}


class TranslitError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownCharacter(TranslitError):
    def __init__(self, char, position):
        super().__init__(f"unsupported character {char!r}", position)
        self.char = char


class UnknownSymbol(TranslitError):
    def __init__(self, symbol, position):
        super().__init__(f"unknown transliteration symbol {symbol!r}", position)
        self.symbol = symbol


def is_separator(ch):
    return ch.isspace() or unicodedata.category(ch).startswith("P")


def has_arabic(text):
    return any("؀" <= ch <= "ۿ" for ch in text)


def is_canonical(word):
    """True when every symbol of ``word`` is in the closed Latin alphabet."""
    return all(ch in ALPHABET for ch in word)


def to_latin(text):
    """Transliterate Arabic script into the canonical Latin alphabet."""
    out = []
    n = len(text)
    i = 0
    word_start = True
    after_tanween_fatha = False
    while i < n:
        ch = text[i]
        if is_separator(ch) and ch not in _MARKS:
            out.append(ch)
            word_start = True
            after_tanween_fatha = False
            i += 1
            continue
        if ch in _MARKS:
            raise UnknownCharacter(ch, i)

        j = i + 1
        marks = []
        while j < n and text[j] in _MARKS:
            marks.append(text[j])
            j += 1

        if ch == ALEF and word_start:
            # hamzat al-wasl: written vowel, else the article takes "a"
            vowel = next((_SHORT[m] for m in marks if m in _SHORT), None)
            if vowel is None:
                nxt = text[j] if j < n else ""
                vowel = "a" if nxt == "ل" else "i"
            out.append("e" + vowel)
        elif ch in (ALEF, ALEF_MAQSURA) and not marks:
            if after_tanween_fatha:
                pass
            elif out and out[-1] == "a":
                out[-1] = "A"
            else:
                out.append("A")
        elif ch in (ALEF, ALEF_MAQSURA):
            out.extend(_vowels(marks))
        elif ch == ALEF_MADDA:
            out.append("eA")
        elif ch in (WAW, YEH) and not marks and out and out[-1] == ("u" if ch == WAW else "i"):
            out[-1] = "U" if ch == WAW else "I"
        elif ch == TATWEEL:
            out.extend(_vowels(marks))
        elif ch in _LETTERS:
            latin = _LETTERS[ch]
            out.append(latin)
            if SHADDA in marks:
                out.append(latin)
            out.extend(_vowels(marks))
        else:
            raise UnknownCharacter(ch, i)

        after_tanween_fatha = FATHATAN in marks
        word_start = False
        i = j
    return "".join(out)


def _vowels(marks):
    res = []
    for m in marks:
        if m in _SHORT:
            res.append(_SHORT[m])
        elif m in _TANWEEN:
            res.append(_TANWEEN[m])
        elif m == DAGGER_ALEF:
            if res and res[-1] == "a":
                res[-1] = "A"
            else:
                res.append("A")
    return res


def to_arabic(s):
    """Inverse of :func:`to_latin` on canonical strings.

    ``A`` is always written with alif, never alif maqsura, and ``t`` with
    ta, never ta marbuta.
    """
    out = []
    n = len(s)
    i = 0
    while i < n:
        if s[i] not in ALPHABET:
            if is_separator(s[i]):
                out.append(s[i])
                i += 1
                continue
            raise UnknownSymbol(s[i], i)
        j = i
        while j < n and s[j] in ALPHABET:
            j += 1
        out.append(_word_to_arabic(s[i:j], i))
        i = j
    # canonical mark order (vowel before shadda)
    return unicodedata.normalize("NFC", "".join(out))


def _word_to_arabic(word, offset):
    vocalized = any(ch in VOWELS for ch in word)
    n = len(word)
    out = []
    i = 0
    while i < n:
        ch = word[i]
        if ch in VOWELS:
            # vowel with no consonant before it rides on a tatweel
            out.append(TATWEEL)
            if ch in _LONG_INV:
                out.extend(_LONG_INV[ch])
            else:
                out.append(_SHORT_INV[ch])
            i += 1
            continue
        if ch not in _INVERSE:
            raise UnknownSymbol(ch, offset + i)
        letter = _INVERSE[ch]
        nxt_i = i + 1
        geminate = nxt_i < n and word[nxt_i] == ch
        if geminate:
            nxt_i += 1
        nxt = word[nxt_i] if nxt_i < n else ""
        if i == 0 and ch == "e" and not geminate:
            if nxt == "A":
                out.append(ALEF_MADDA)
                i = nxt_i + 1
                continue
            if nxt in ("a", "u", "U"):
                letter = HAMZA_ABOVE
            elif nxt in ("i", "I"):
                letter = HAMZA_BELOW
        out.append(letter)
        if geminate:
            out.append(SHADDA)
        if nxt in _SHORT_INV and nxt_i + 2 == n and word[nxt_i + 1] == "n":
            out.append(_TANWEEN_INV[nxt])
            i = n
        elif nxt in _SHORT_INV:
            out.append(_SHORT_INV[nxt])
            i = nxt_i + 1
        elif nxt in _LONG_INV:
            out.extend(_LONG_INV[nxt])
            i = nxt_i + 1
        else:
            if vocalized:
                out.append(SUKUN)
            i = nxt_i
    return "".join(out)
