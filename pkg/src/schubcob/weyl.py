"""Symmetric groups S_n and hyperoctahedral groups W_n.

Elements are stored in one-line notation ``(w(1), ..., w(n))``; for signed
permutations the values are nonzero integers with ``-i`` standing for
``i-bar`` and ``w(-i) = -w(i)`` left implicit.  Generators: ``s_i`` swaps
``i`` and ``i+1`` (``1 <= i < n``) and, in type C, ``s_0`` swaps ``1`` and
``-1``.  Products compose right to left, ``(v*w)(i) = v(w(i))``, so right
multiplication by ``s_i`` acts on positions and left multiplication on
values.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator

Word = tuple[int, ...]


class WeylError(ValueError):
    pass


def check_word(word, n: int, type: str = "C") -> Word:
    word = tuple(int(i) for i in word)
    lo = 0 if type == "C" else 1
    for i in word:
        if not lo <= i <= n - 1:
            raise WeylError(f"index {i} out of range for type {type}, n={n}")
    return word


class _Element:
    images: tuple[int, ...]
    type: str

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if i < 0:
            return -self.images[-i - 1]
        return self.images[i - 1]

    def __mul__(self, other):
        if type(other) is not type(self) or other.n != self.n:
            raise WeylError("can only multiply elements of the same group")
        return type(self)(tuple(self(j) for j in other.images))

    def inverse(self):
        inv = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            inv[abs(v) - 1] = i if v > 0 else -i
        return type(self)(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def _check_index(self, i: int):
        lo = 0 if self.type == "C" else 1
        if not lo <= i <= self.n - 1:
            raise WeylError(f"generator index {i} out of range for {self!r}")

    def apply_generator(self, i: int):
        """Right multiplication ``w * s_i``."""
        self._check_index(i)
        im = list(self.images)
        if i == 0:
            im[0] = -im[0]
        else:
            im[i - 1], im[i] = im[i], im[i - 1]
        return type(self)(tuple(im))

    def left_generator(self, i: int):
        """Left multiplication ``s_i * w``."""
        self._check_index(i)
        def s(v):
            a = abs(v)
            sign = 1 if v > 0 else -1
            if i == 0:
                return -v if a == 1 else v
            if a == i:
                return sign * (i + 1)
            if a == i + 1:
                return sign * i
            return v
        return type(self)(tuple(s(v) for v in self.images))

    def descents(self, side: str = "right") -> list[int]:
        lo = 0 if self.type == "C" else 1
        step = self.apply_generator if side == "right" else self.left_generator
        ell = self.length()
        return [i for i in range(lo, self.n) if step(i).length() < ell]

    def canonical_word(self) -> Word:
        """Lexicographically least reduced word.

        The first letter of any reduced word is a left descent, so always
        taking the smallest left descent yields the least word.
        """
        out = []
        w = self
        while True:
            ds = w.descents("left")
            if not ds:
                break
            i = ds[0]
            out.append(i)
            w = w.left_generator(i)
        return tuple(out)

    def reduced_words(self) -> Iterator[Word]:
        """All reduced words, in lexicographic order (generated lazily)."""
        if self.length() == 0:
            yield ()
            return
        for i in self.descents("left"):
            for rest in self.left_generator(i).reduced_words():
                yield (i,) + rest

    def is_reduced_word(self, word) -> bool:
        return len(word) == self.length() and type(self).from_word(self.n, word) == self

    def one_line(self) -> str:
        return ",".join(str(v) for v in self.images)

    def __str__(self):
        return "(" + ", ".join(_bar(v) for v in self.images) + ")"


def _bar(v: int) -> str:
    return f"{-v}̅" if v < 0 else str(v)


@dataclass(frozen=True, repr=False)
class Permutation(_Element):
    images: tuple[int, ...]
    type = "A"

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise WeylError(f"{self.images} is not a permutation")

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def generator(cls, n: int, i: int) -> "Permutation":
        return cls.identity(n).apply_generator(i)

    @classmethod
    def from_word(cls, n: int, word) -> "Permutation":
        w = cls.identity(n)
        for i in check_word(word, n, "A"):
            w = w.apply_generator(i)
        return w

    @classmethod
    def elements(cls, n: int) -> Iterator["Permutation"]:
        for p in permutations(range(1, n + 1)):
            yield cls(p)

    def length(self) -> int:
        im = self.images
        return sum(1 for a in range(len(im)) for b in range(a + 1, len(im)) if im[a] > im[b])

    def embed(self, n: int) -> "Permutation":
        """Iterated embedding ``S_m -> S_n``: new last value 1, others shift up."""
        if n < self.n:
            raise WeylError(f"cannot embed S_{self.n} into S_{n}")
        im = self.images
        for _ in range(n - self.n):
            im = tuple(v + 1 for v in im) + (1,)
        return Permutation(im)


@dataclass(frozen=True, repr=False)
class SignedPermutation(_Element):
    images: tuple[int, ...]
    type = "C"

    def __post_init__(self):
        if sorted(abs(v) for v in self.images) != list(range(1, len(self.images) + 1)):
            raise WeylError(f"{self.images} is not a signed permutation")

    def __repr__(self):
        return f"SignedPermutation({list(self.images)})"

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "SignedPermutation":
        return cls(tuple(-i for i in range(1, n + 1)))

    @classmethod
    def generator(cls, n: int, i: int) -> "SignedPermutation":
        return cls.identity(n).apply_generator(i)

    @classmethod
    def from_word(cls, n: int, word) -> "SignedPermutation":
        w = cls.identity(n)
        for i in check_word(word, n, "C"):
            w = w.apply_generator(i)
        return w

    @classmethod
    def elements(cls, n: int) -> Iterator["SignedPermutation"]:
        for p in permutations(range(1, n + 1)):
            for signs in product((1, -1), repeat=n):
                yield cls(tuple(s * v for s, v in zip(signs, p)))

    def length(self) -> int:
        """Inversions of the one-line word plus the absolute sum of its
        negative entries (the usual formula for this choice of ``s_0``)."""
        im = self.images
        inv = sum(1 for a in range(len(im)) for b in range(a + 1, len(im)) if im[a] > im[b])
        return inv - sum(v for v in im if v < 0)

    def embed(self, n: int) -> "SignedPermutation":
        """Iterated embedding ``W_m -> W_n``: positions m+1..n map to their bars."""
        if n < self.n:
            raise WeylError(f"cannot embed W_{self.n} into W_{n}")
        im = self.images + tuple(-i for i in range(self.n + 1, n + 1))
        return SignedPermutation(im)


def longest(type: str, n: int):
    return (SignedPermutation if type == "C" else Permutation).longest(n)


def identity(type: str, n: int):
    return (SignedPermutation if type == "C" else Permutation).identity(n)


def elements(type: str, n: int):
    return (SignedPermutation if type == "C" else Permutation).elements(n)


def nu(type: str, m: int, n: int):
    """``nu_m = e_m(id)``, the image of the rank-m identity in rank n."""
    return identity(type, m).embed(n)


def g_bijection(n: int, k: int) -> int:
    """Order-preserving bijection {1..2n} -> {-n < ... < -1 < 1 < ... < n}."""
    if not 1 <= k <= 2 * n:
        raise WeylError(f"k={k} out of range 1..{2 * n}")
    return k - n if k > n else -(n + 1 - k)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_element(text: str, type: str = "C", n: int | None = None):
    """Parse one-line ``"-1,2"`` or cycle ``"(1 -1)(2 3)"`` notation.

    Values may be written ``-i`` or ``i-bar`` style ``~i``.  ``n`` is needed
    for cycle notation and may pad a short one-line word with fixed points.
    """
    cls = SignedPermutation if type == "C" else Permutation
    text = text.strip().replace("~", "-")
    if text in ("", "id", "()") and n is not None:
        return cls.identity(n)
    if text.startswith("("):
        if n is None:
            raise WeylError("cycle notation needs the rank n")
        img = {i: i for i in range(-n, n + 1) if i}
        for cyc in _CYCLE.findall(text):
            vals = [int(t) for t in cyc.replace(",", " ").split()]
            for a, b in zip(vals, vals[1:] + vals[:1]):
                img[a] = b
                if type == "C" and img.get(-a, -a) == -a and -a not in vals:
                    img[-a] = -b
        return cls(tuple(img[i] for i in range(1, n + 1)))
    try:
        vals = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise WeylError(f"malformed permutation {text!r}") from None
    if n is not None and len(vals) < n:
        vals = vals + tuple(range(len(vals) + 1, n + 1))
    return cls(vals)


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError:
        raise WeylError(f"malformed word {text!r}") from None
