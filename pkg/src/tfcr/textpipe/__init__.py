"""Deterministic text normalisation shared by indexing and querying.

``tokenize`` lowercases, ASCII-folds, splits on anything that is not an
ASCII letter or digit, drops all-digit tokens and stopwords, then stems the
survivors with the Porter algorithm::

    >>> tokenize("The 2019 Models")
    ['model']
"""

from __future__ import annotations

import functools
import hashlib
import os
import re
import unicodedata
from importlib import resources
from pathlib import Path
from typing import Iterable

from .porter import stem

__all__ = [
    "Analyzer",
    "STOPWORDS_SHA256",
    "StopwordChecksumError",
    "ascii_fold",
    "default_analyzer",
    "load_stopwords",
    "stem",
    "tokenize",
]

STOPWORDS_SHA256 = "b3f772a000465cb76e23adb03b47073c591c156fad8f7af09c8b8e80d6bd8eac"
STOPWORDS_ENV = "TFCR_STOPWORDS"

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class StopwordChecksumError(RuntimeError):
    pass


def _read_stopword_bytes(path: str | Path | None) -> bytes:
    if path is None:
        return resources.files(__name__).joinpath("stopwords.txt").read_bytes()
    return Path(path).read_bytes()


def load_stopwords(
    path: str | Path | None = None,
    expected_sha256: str | None = STOPWORDS_SHA256,
    verify: bool = True,
) -> frozenset[str]:
    """Read a stopword file (one lowercase word per line).

    With no *path*, ``$TFCR_STOPWORDS`` is consulted and then the bundled
    list. The SHA-256 of the file must equal *expected_sha256* unless
    ``verify`` is false.
    """
    if path is None:
        path = os.environ.get(STOPWORDS_ENV) or None
    data = _read_stopword_bytes(path)
    if verify and expected_sha256 is not None:
        digest = hashlib.sha256(data).hexdigest()
        if digest != expected_sha256:
            raise StopwordChecksumError(
                f"stopword list {path or '<bundled>'} has sha256 {digest}, expected {expected_sha256}"
            )
    return frozenset(w.strip() for w in data.decode("utf-8").split("\n") if w.strip())


@functools.lru_cache(maxsize=None)
def _fold_char(ch: str) -> str:
    if ch.isascii():
        return ch
    base = "".join(c for c in unicodedata.normalize("NFKD", ch) if not unicodedata.combining(c))
    if len(base) == 1 and base.isascii() and base.isalnum():
        return base
    return " "


def ascii_fold(text: str) -> str:
    """Map accented letters to their ASCII base; other non-ASCII becomes a space."""
    if text.isascii():
        return text
    return "".join(_fold_char(ch) for ch in text)


class Analyzer:
    """Tokenizer bound to a particular stopword set.

    Stemming is repeated until the term stops changing, and a stem that
    lands on a stopword or on digits ("0s" -> "0") is dropped, so that
    re-tokenizing an output stream reproduces it unchanged.
    """

    def __init__(self, stopwords: Iterable[str] | None = None):
        self.stopwords = frozenset(stopwords) if stopwords is not None else load_stopwords()
        self._stem_cache: dict[str, str] = {}

    def stem_term(self, token: str) -> str:
        cached = self._stem_cache.get(token)
        if cached is None:
            cached = token
            while True:
                nxt = stem(cached)
                if nxt == cached:
                    break
                cached = nxt
            self._stem_cache[token] = cached
        return cached

    def __call__(self, text: str) -> list[str]:
        return self.tokenize(text)

    def tokenize(self, text: str) -> list[str]:
        out = []
        for tok in _TOKEN_RE.findall(ascii_fold(text).lower()):
            if tok.isdigit() or tok in self.stopwords:
                continue
            term = self.stem_term(tok)
            if term and not term.isdigit() and term not in self.stopwords:
                out.append(term)
        return out


@functools.lru_cache(maxsize=1)
def default_analyzer() -> Analyzer:
    return Analyzer()


def tokenize(text: str) -> list[str]:
    """Tokenize with the default analyzer (bundled or ``$TFCR_STOPWORDS`` list)."""
    return default_analyzer().tokenize(text)
