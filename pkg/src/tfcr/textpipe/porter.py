"""Porter (1980) suffix-stripping stemmer.

This is the algorithm as originally published, without the later
departures found in some reference implementations (no ``logi -> log``
rule, ``abli -> able`` rather than ``bli -> ble``, and short words are not
special-cased). Each step is a table of ``(suffix, replacement, condition)``
rules; within a step the first rule whose suffix matches decides the
outcome, whether or not its condition holds.

Input is expected to be lowercase ASCII.
"""

from __future__ import annotations

from typing import Callable

_VOWELS = frozenset("aeiou")


def _is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def measure(stem: str) -> int:
    """Number of VC sequences in *stem*, the ``m`` of ``[C](VC)^m[V]``."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        cons = _is_consonant(stem, i)
        if cons and prev_vowel:
            m += 1
        prev_vowel = not cons
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(stem: str) -> bool:
    return len(stem) >= 2 and stem[-1] == stem[-2] and _is_consonant(stem, len(stem) - 1)


def _ends_cvc(stem: str) -> bool:
    n = len(stem)
    return (
        n >= 3
        and _is_consonant(stem, n - 3)
        and not _is_consonant(stem, n - 2)
        and _is_consonant(stem, n - 1)
        and stem[-1] not in "wxy"
    )


Condition = Callable[[str], bool]


def _m_gt(k: int) -> Condition:
    return lambda stem: measure(stem) > k


_ALWAYS: Condition = lambda stem: True

Rule = tuple[str, str, Condition]

_STEP2: list[Rule] = [
    ("ational", "ate", _m_gt(0)),
    ("tional", "tion", _m_gt(0)),
    ("enci", "ence", _m_gt(0)),
    ("anci", "ance", _m_gt(0)),
    ("izer", "ize", _m_gt(0)),
    ("abli", "able", _m_gt(0)),
    ("alli", "al", _m_gt(0)),
    ("entli", "ent", _m_gt(0)),
    ("eli", "e", _m_gt(0)),
    ("ousli", "ous", _m_gt(0)),
    ("ization", "ize", _m_gt(0)),
    ("ation", "ate", _m_gt(0)),
    ("ator", "ate", _m_gt(0)),
    ("alism", "al", _m_gt(0)),
    ("iveness", "ive", _m_gt(0)),
    ("fulness", "ful", _m_gt(0)),
    ("ousness", "ous", _m_gt(0)),
    ("aliti", "al", _m_gt(0)),
    ("iviti", "ive", _m_gt(0)),
    ("biliti", "ble", _m_gt(0)),
]

_STEP3: list[Rule] = [
    ("icate", "ic", _m_gt(0)),
    ("ative", "", _m_gt(0)),
    ("alize", "al", _m_gt(0)),
    ("iciti", "ic", _m_gt(0)),
    ("ical", "ic", _m_gt(0)),
    ("ful", "", _m_gt(0)),
    ("ness", "", _m_gt(0)),
]

_STEP4: list[Rule] = [
    ("al", "", _m_gt(1)),
    ("ance", "", _m_gt(1)),
    ("ence", "", _m_gt(1)),
    ("er", "", _m_gt(1)),
    ("ic", "", _m_gt(1)),
    ("able", "", _m_gt(1)),
    ("ible", "", _m_gt(1)),
    ("ant", "", _m_gt(1)),
    ("ement", "", _m_gt(1)),
    ("ment", "", _m_gt(1)),
    ("ent", "", _m_gt(1)),
    ("ion", "", lambda s: measure(s) > 1 and s[-1:] in ("s", "t")),
    ("ou", "", _m_gt(1)),
    ("ism", "", _m_gt(1)),
    ("ate", "", _m_gt(1)),
    ("iti", "", _m_gt(1)),
    ("ous", "", _m_gt(1)),
    ("ive", "", _m_gt(1)),
    ("ize", "", _m_gt(1)),
]


def _longest_first(rules: list[Rule]) -> list[Rule]:
    # A suffix must be tried before any shorter suffix it ends with.
    return sorted(rules, key=lambda r: -len(r[0]))


_STEP2 = _longest_first(_STEP2)
_STEP3 = _longest_first(_STEP3)
_STEP4 = _longest_first(_STEP4)


def _apply(word: str, rules: list[Rule]) -> str:
    for suffix, repl, cond in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            return stem + repl if cond(stem) else word
    return word


def _step1a(word: str) -> str:
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith("ies"):
        return word[:-2]
    if word.endswith("ss"):
        return word
    if word.endswith("s"):
        return word[:-1]
    return word


def _step1b(word: str) -> str:
    if word.endswith("eed"):
        stem = word[:-3]
        return stem + "ee" if measure(stem) > 0 else word
    for suffix in ("ed", "ing"):
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if not _has_vowel(stem):
                return word
            return _step1b_tidy(stem)
    return word


def _step1b_tidy(stem: str) -> str:
    if stem.endswith(("at", "bl", "iz")):
        return stem + "e"
    if _ends_double_consonant(stem) and stem[-1] not in "lsz":
        return stem[:-1]
    if measure(stem) == 1 and _ends_cvc(stem):
        return stem + "e"
    return stem


def _step1c(word: str) -> str:
    if word.endswith("y") and _has_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


def _step5a(word: str) -> str:
    if word.endswith("e"):
        stem = word[:-1]
        m = measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            return stem
    return word


def _step5b(word: str) -> str:
    if measure(word) > 1 and _ends_double_consonant(word) and word.endswith("l"):
        return word[:-1]
    return word


def stem(word: str) -> str:
    """Return the Porter stem of a lowercase word."""
    word = _step1a(word)
    word = _step1b(word)
    word = _step1c(word)
    word = _apply(word, _STEP2)
    word = _apply(word, _STEP3)
    word = _apply(word, _STEP4)
    word = _step5a(word)
    word = _step5b(word)
    return word
