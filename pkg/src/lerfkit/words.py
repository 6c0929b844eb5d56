"""Free-group words over a signed alphabet.

A word is a tuple of nonzero ints: generator ``i`` of an alphabet is the
letter ``i + 1`` and its formal inverse is ``-(i + 1)``.  The text form
writes a generator in lowercase and its inverse in uppercase, with primes
kept as trailing apostrophes (``a'`` and ``A'``).  The identity is printed
as the empty string, or ``1`` where an explicit token is needed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import EmptyWord, UnknownLetter

Word = tuple  # tuple[int, ...]

_SYMBOL = re.compile(r"[a-z]'*")
_TOKEN = re.compile(r"([A-Za-z])((?:'|′)*)")


@dataclass(frozen=True)
class Alphabet:
    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if len(set(letters)) != len(letters):
            raise ValueError(f"repeated generator in {letters}")
        for s in letters:
            if not _SYMBOL.fullmatch(s):
                raise ValueError(f"invalid generator symbol {s!r}")

    @classmethod
    def of(cls, text: Union[str, Iterable[str]]) -> "Alphabet":
        if isinstance(text, str):
            text = text.split()
        return cls(tuple(text))

    def __len__(self):
        return len(self.letters)

    @property
    def rank(self) -> int:
        return len(self.letters)

    def signed(self) -> list:
        """The signed letters in canonical order: 1, -1, 2, -2, ..."""
        out = []
        for i in range(1, self.rank + 1):
            out += [i, -i]
        return out

    def positive(self) -> list:
        return list(range(1, self.rank + 1))

    def __contains__(self, letter) -> bool:
        return isinstance(letter, int) and 0 < abs(letter) <= self.rank

    def symbol(self, letter: int) -> str:
        if letter not in self:
            raise UnknownLetter(letter, self.letters)
        s = self.letters[abs(letter) - 1]
        return s if letter > 0 else s[0].upper() + s[1:]

    def letter(self, symbol: str) -> int:
        symbol = symbol.replace("′", "'")
        base = symbol[0].lower() + symbol[1:]
        try:
            i = self.letters.index(base) + 1
        except ValueError:
            raise UnknownLetter(symbol, self.letters) from None
        return i if symbol[0].islower() else -i

    def parse(self, text: str) -> Word:
        """Parse a word; the result is *not* reduced (see :func:`reduce`)."""
        text = text.strip()
        if text in ("", "1"):
            return ()
        out = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise UnknownLetter(text[pos], self.letters)
            out.append(self.letter(m.group(1) + m.group(2)))
            pos = m.end()
        return tuple(out)

    def format(self, word: Sequence[int]) -> str:
        return "".join(self.symbol(x) for x in word)

    def token(self, word: Sequence[int]) -> str:
        """Like :meth:`format` but prints the identity as ``1``."""
        return self.format(word) if word else "1"


def _as_letters(raw, alphabet):
    if isinstance(raw, str):
        if alphabet is None:
            raise TypeError("parsing a string needs an alphabet")
        return alphabet.parse(raw)
    raw = tuple(raw)
    if alphabet is not None:
        for x in raw:
            if x not in alphabet:
                raise UnknownLetter(x, alphabet.letters)
    elif any(not isinstance(x, int) or x == 0 for x in raw):
        raise UnknownLetter(next(x for x in raw if not isinstance(x, int) or x == 0))
    return raw


def reduce(raw, alphabet: Alphabet = None) -> Word:
    """Freely reduce a letter sequence (or a string, given an alphabet)."""
    stack = []
    for x in _as_letters(raw, alphabet):
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def is_reduced(word: Sequence[int]) -> bool:
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def multiply(*words: Sequence[int]) -> Word:
    out = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def power(word: Sequence[int], k: int) -> Word:
    base = reduce(word) if k >= 0 else inverse(reduce(word))
    return multiply(*([base] * abs(k)))


def conjugate(word, by) -> Word:
    """``by * word * by^-1``."""
    return multiply(by, word, inverse(by))


def cyclic_reduce(w: Sequence[int]) -> tuple:
    """Split ``w`` as ``conjugator * core * conjugator^-1`` with a cyclically reduced core."""
    w = tuple(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1], w[:i]


def _least_period(s: Sequence[int]) -> int:
    # prefix function; the period only counts if it tiles s exactly
    n = len(s)
    pi = [0] * n
    for q in range(1, n):
        k = pi[q - 1]
        while k and s[q] != s[k]:
            k = pi[k - 1]
        if s[q] == s[k]:
            k += 1
        pi[q] = k
    p = n - pi[-1]
    return p if n % p == 0 else n


def primitive_root(w: Sequence[int]) -> tuple:
    """Return ``(root, exponent)`` with ``w == root ** exponent`` and root not a proper power."""
    w = reduce(w)
    if not w:
        raise EmptyWord("the identity has no primitive root")
    core, conj = cyclic_reduce(w)
    p = _least_period(core)
    root = conjugate(core[:p], conj)
    return root, len(core) // p


def is_malnormal_cyclic(w: Sequence[int]) -> bool:
    """Whether the cyclic subgroup generated by ``w`` is malnormal in the free group.

    In a free group ``g w^k g^-1 = w^m`` forces ``k == m`` and ``g`` into the
    cyclic group of the primitive root, so malnormality is exactly the root
    having exponent one.
    """
    return primitive_root(w)[1] == 1


def power_exponent(word: Sequence[int], base: Sequence[int]):
    """If reduced ``word`` equals ``base ** k`` for cyclically reduced ``base``, return k; else None."""
    word, base = tuple(word), tuple(base)
    if not word:
        return 0
    n = len(base)
    if n == 0 or len(word) % n:
        return None
    k = len(word) // n
    if word == base * k:
        return k
    if word == inverse(base) * k:
        return -k
    return None
