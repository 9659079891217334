"""The Z-moded current algebra of the double super Yangian: free graded
words on the mode generators, the exchange-relation rewrite engine, PBW
normal ordering for the non-negative half, and bounded ideal-membership
checks for the cubic Serre relations.

Letters are pairs (family, mode) with family in {e, f, h, E, F}; e and f
are odd, h even, and E_{2k+1} = {e_k, e_{k+1}} - e_k^2/4 (F likewise) are
even abbreviations the engine can expand on demand.

The normal form for the non-negative half is: e/E block, then h block,
then f/F block, each block in the Poincare-Birkhoff-Witt monomial shape
(ascending levels e0, E1, e1, E3, ... on the left; h ascending; descending
levels ..., F3, f1, F1, f0 on the right).  Moving h past e or f uses the
closed two-step recursion in the h index (base cases h0, h1); everything
cubic goes through exact linear algebra in a finite window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

_ZERO = Fraction(0)
_ONE = Fraction(1)

ODD_FAMILIES = ("e", "f")
BLOCK = {"e": 0, "E": 0, "h": 1, "f": 2, "F": 2}


class UnorderableError(ValueError):
    """Raised when no rewrite rule applies at exact level (negative-mode h)."""


class WindowError(ValueError):
    """Raised when a finite reduction window is too small for the element."""


def letter_parity(letter) -> int:
    return 1 if letter[0] in ODD_FAMILIES else 0


def letter_degree(letter) -> int:
    return letter[1]


def word_parity(word) -> int:
    return sum(letter_parity(l) for l in word) % 2


def word_degree(word) -> int:
    return sum(l[1] for l in word)


def expanded_length(word) -> int:
    return sum(2 if l[0] in ("E", "F") else 1 for l in word)


def letter_str(letter) -> str:
    fam, m = letter
    return f"{fam}{m}"


class Element:
    """Finite rational combination of words; the free graded algebra."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms:
            self.terms = {w: c for w, c in terms.items() if c != 0}
        else:
            self.terms = {}

    @classmethod
    def word(cls, letters, coeff=_ONE):
        return cls({tuple(letters): Fraction(coeff)})

    @classmethod
    def gen(cls, fam, mode, coeff=_ONE):
        return cls({((fam, mode),): Fraction(coeff)})

    @classmethod
    def one(cls, coeff=_ONE):
        return cls({(): Fraction(coeff)})

    @classmethod
    def zero(cls):
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, _ZERO) + c
        return Element(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, _ZERO) - c
        return Element(out)

    def __neg__(self):
        return Element({w: -c for w, c in self.terms.items()})

    def scale(self, r):
        r = Fraction(r)
        return Element({w: r * c for w, c in self.terms.items()})

    __rmul__ = scale

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, _ZERO) + c1 * c2
        return Element(out)

    def degree(self):
        """Top filtration degree (None for the zero element)."""
        if not self.terms:
            return None
        return max(word_degree(w) for w in self.terms)

    def top_part(self):
        d = self.degree()
        if d is None:
            return Element()
        return Element({w: c for w, c in self.terms.items() if word_degree(w) == d})

    def parity(self):
        """Z2 parity if homogeneous, else None."""
        ps = {word_parity(w) for w in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def min_mode(self):
        return min((l[1] for w in self.terms for l in w), default=0)

    def max_mode(self):
        return max((l[1] for w in self.terms for l in w), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = "*".join(letter_str(l) for l in w) if w else "1"
            bits.append(f"({c})*{mono}")
        return " + ".join(bits)


def commutator(x: Element, y: Element) -> Element:
    return x * y - y * x

def anticommutator(x: Element, y: Element) -> Element:
    return x * y + y * x


def expand_letter(letter) -> Element:
    """Expand E/F abbreviations: X_{2k+1} = {x_k, x_{k+1}} - x_k^2 / 4."""
    fam, m = letter
    if fam not in ("E", "F"):
        return Element.word((letter,))
    base = "e" if fam == "E" else "f"
    k = (m - 1) // 2
    return Element(
        {
            ((base, k), (base, k + 1)): _ONE,
            ((base, k + 1), (base, k)): _ONE,
            ((base, k), (base, k)): Fraction(-1, 4),
        }
    )


def expand_element(x: Element) -> Element:
    out = Element()
    for w, c in x.terms.items():
        piece = Element.one(c)
        for letter in w:
            piece = piece * expand_letter(letter)
        out = out + piece
    return out


# ---------------------------------------------------------------------------
# Closed-form exchange recursions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def com_he(l: int, m: int) -> Element:
    """[h_l, e_m] for l >= 0 as a combination of words e_j (h_i)?.

    The defining h-e relation is a three-term recursion in the h index;
    solving for the top index and descending lands on the h0/h1 base cases.
    """
    if l < 0:
        raise UnorderableError("negative-mode h past e has no exact rewrite")
    if l == 0:
        return Element.gen("e", m)
    if l == 1:
        return Element(
            {
                (("e", m + 1),): _ONE,
                (("e", m), ("h", 0)): _ONE,
                (("e", m),): Fraction(1, 2),
            }
        )
    return (
        com_he(l - 2, m + 2).scale(-1)
        + com_he(l - 1, m + 1).scale(2)
        + com_he(l - 2, m).scale(Fraction(1, 2))
        + acom_he(l - 1, m).scale(Fraction(1, 2))
        - acom_he(l - 2, m + 1).scale(Fraction(1, 2))
    )


def acom_he(l: int, m: int) -> Element:
    """{h_l, e_m} = 2 e_m h_l + [h_l, e_m]."""
    return Element({(("e", m), ("h", l)): Fraction(2)}) + com_he(l, m)


@lru_cache(maxsize=None)
def com_hf(l: int, m: int) -> Element:
    """[h_l, f_m] for l >= 0, ordered h-then-f."""
    if l < 0:
        raise UnorderableError("negative-mode h past f has no exact rewrite")
    if l == 0:
        return Element.gen("f", m, -1)
    if l == 1:
        return Element(
            {
                (("f", m + 1),): -_ONE,
                (("h", 0), ("f", m)): -_ONE,
                (("f", m),): Fraction(-1, 2),
            }
        )
    return (
        com_hf(l - 2, m + 2).scale(-1)
        + com_hf(l - 1, m + 1).scale(2)
        + com_hf(l - 2, m).scale(Fraction(1, 2))
        - acom_hf(l - 1, m).scale(Fraction(1, 2))
        + acom_hf(l - 2, m + 1).scale(Fraction(1, 2))
    )


def acom_hf(l: int, m: int) -> Element:
    """{h_l, f_m} = 2 h_l f_m - [h_l, f_m]."""
    return Element({(("h", l), ("f", m)): Fraction(2)}) - com_hf(l, m)


@lru_cache(maxsize=None)
def acom_ee(m: int, n: int) -> Element:
    """{e_m, e_n} in the PBW letter alphabet (ascending words, E letters).

    Recursion on the spread |m - n| through the quadratic e-e relation,
    valid for any integer modes; base cases are the square and the
    E-abbreviation.
    """
    if m < n:
        m, n = n, m
    if m == n:
        return Element({(("e", n), ("e", n)): Fraction(2)})
    if m == n + 1:
        return Element({(("E", 2 * n + 1),): _ONE, (("e", n), ("e", n)): Fraction(1, 4)})
    if m == n + 2:
        # the relation at (k, l) = (n, n) references {e_{n+2}, e_n} twice
        return (
            acom_ee(n + 1, n + 1)
            + acom_ee(n, n).scale(Fraction(1, 4))
            + _com_ee_words(n + 1, n).scale(Fraction(1, 2))
        )
    return (
        acom_ee(m - 2, n + 2).scale(-1)
        + acom_ee(m - 1, n + 1).scale(2)
        + acom_ee(m - 2, n).scale(Fraction(1, 2))
        + _com_ee_words(m - 1, n).scale(Fraction(1, 2))
        - _com_ee_words(m - 2, n + 1).scale(Fraction(1, 2))
    )


def _com_ee_words(i: int, j: int) -> Element:
    """[e_i, e_j] with the descending word eliminated (i > j assumed distinct)."""
    if i == j:
        return Element()
    if i < j:
        return _com_ee_words(j, i).scale(-1)
    # e_i e_j = -e_j e_i + {e_i, e_j}
    return Element({(("e", j), ("e", i)): Fraction(-2)}) + acom_ee(i, j)


@lru_cache(maxsize=None)
def acom_ff(m: int, n: int) -> Element:
    """{f_m, f_n} in the PBW letter alphabet (descending words, F letters)."""
    if m < n:
        m, n = n, m
    if m == n:
        return Element({(("f", n), ("f", n)): Fraction(2)})
    if m == n + 1:
        return Element({(("F", 2 * n + 1),): _ONE, (("f", n), ("f", n)): Fraction(1, 4)})
    if m == n + 2:
        return (
            acom_ff(n + 1, n + 1)
            + acom_ff(n, n).scale(Fraction(1, 4))
            - _com_ff_words(n + 1, n).scale(Fraction(1, 2))
        )
    return (
        acom_ff(m - 2, n + 2).scale(-1)
        + acom_ff(m - 1, n + 1).scale(2)
        + acom_ff(m - 2, n).scale(Fraction(1, 2))
        - _com_ff_words(m - 1, n).scale(Fraction(1, 2))
        + _com_ff_words(m - 2, n + 1).scale(Fraction(1, 2))
    )


def _com_ff_words(i: int, j: int) -> Element:
    """[f_i, f_j] with the ascending word eliminated (canonical is descending)."""
    if i == j:
        return Element()
    if i < j:
        return _com_ff_words(j, i).scale(-1)
    # f_j f_i = -f_i f_j + {f_i, f_j}
    return Element({(("f", i), ("f", j)): Fraction(2)}) - acom_ff(i, j)


# ---------------------------------------------------------------------------
# Block separation: e-words, then h-words, then f-words
# ---------------------------------------------------------------------------

def _separate_once(word):
    """Find the first cross-block inversion and return the replacement
    Element for the two offending letters, or None if block-separated."""
    for p in range(len(word) - 1):
        (fa, ma), (fb, mb) = word[p], word[p + 1]
        if BLOCK[fa] <= BLOCK[fb]:
            continue
        if fa == "h" and fb == "e":
            repl = Element({(("e", mb), ("h", ma)): _ONE}) + com_he(ma, mb)
        elif fa == "f" and fb == "e":
            repl = Element({(("e", mb), ("f", ma)): -_ONE, (("h", ma + mb),): _ONE})
        elif fa == "f" and fb == "h":
            repl = Element({(("h", mb), ("f", ma)): _ONE}) - com_hf(mb, ma)
        else:  # letters with E/F abbreviations: expand first
            raise ValueError("separation expects expanded words (no E/F letters)")
        return p, repl
    return None


def block_separate(x: Element, max_steps: int = 200000) -> Element:
    """Rewrite into the span of (e-word)(h-word)(f-word) concatenations."""
    pending = dict(expand_element(x).terms)
    done = {}
    steps = 0
    while pending:
        word, coeff = pending.popitem()
        hit = _separate_once(word)
        if hit is None:
            done[word] = done.get(word, _ZERO) + coeff
            continue
        steps += 1
        if steps > max_steps:
            raise RuntimeError("block separation exceeded the step budget")
        p, repl = hit
        for w2, c2 in repl.terms.items():
            w = word[:p] + w2 + word[p + 2:]
            pending[w] = pending.get(w, _ZERO) + coeff * c2
    return Element(done)


def split_blocks(word):
    """Split a block-separated word into its (e, h, f) parts."""
    e_part = tuple(l for l in word if BLOCK[l[0]] == 0)
    h_part = tuple(l for l in word if BLOCK[l[0]] == 1)
    f_part = tuple(l for l in word if BLOCK[l[0]] == 2)
    return e_part, h_part, f_part


# ---------------------------------------------------------------------------
# Windowed exact linear algebra for the e- and f-subalgebras
# ---------------------------------------------------------------------------

def _serre_coeff_words(family: str, m: int):
    """Words of the u^{-m} coefficient of the generating-function Serre
    relation (cubic, length-homogeneous).  Relation == 0 in the algebra."""
    sign = _ONE if family == "e" else -_ONE
    terms = {}

    def add(modes, c):
        w = tuple((family, i) for i in modes)
        terms[w] = terms.get(w, _ZERO) + c

    # x(u)^3 coefficient
    for a in range(m - 2):
        for b in range(m - 2 - a):
            add((a, b, m - 3 - a - b), _ONE)
    # -sign * x(u){x(u), x_0} coefficient
    for a in range(m - 1):
        b = m - 2 - a
        add((a, b, 0), -sign)
        add((a, 0, b), -sign)
    # -[x_0^2, x(u)] coefficient
    add((0, 0, m - 1), -_ONE)
    add((m - 1, 0, 0), _ONE)
    return Element(terms)


def _quadratic_relation(family: str, k: int, l: int) -> Element:
    """The quadratic exchange relation at (k, l); == 0 in the algebra."""
    x = lambda i: Element.gen(family, i)
    A = anticommutator
    C = commutator
    if family == "e":
        return (
            A(x(k + 2), x(l)).scale(2)
            + A(x(k), x(l + 2)).scale(2)
            - A(x(k + 1), x(l + 1)).scale(4)
            - A(x(k), x(l))
            - C(x(k + 1), x(l))
            + C(x(k), x(l + 1))
        )
    return (
        A(x(k + 2), x(l)).scale(2)
        + A(x(k), x(l + 2)).scale(2)
        - A(x(k + 1), x(l + 1)).scale(4)
        - A(x(k), x(l))
        + C(x(k + 1), x(l))
        - C(x(k), x(l + 1))
    )


def _pure_words(max_len, max_mode, max_deg):
    """All words over modes 0..max_mode with the stated bounds, short first."""
    out = [()]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            d = sum(w)
            for mode in range(0, max_mode + 1):
                if d + mode <= max_deg:
                    nxt.append(w + (mode,))
        out.extend(nxt)
        layer = nxt
    return out


def _word_key(w):
    return (len(w), sum(w), w)


class BlockReducer:
    """Echelonised span of the windowed two-sided ideal of one family.

    Generators: the quadratic exchange relations plus the u-coefficients of
    the cubic generating-function Serre relation, multiplied by all window
    words on both sides.  Words are tuples of modes (family implicit).
    """

    def __init__(self, family: str, max_len: int, max_mode: int, max_deg: int):
        self.family = family
        self.max_len = max_len
        self.max_mode = max_mode
        self.max_deg = max_deg
        self.pivots = {}
        self._build()

    def _to_modes(self, el: Element):
        vec = {}
        for w, c in el.terms.items():
            modes = tuple(m for (_f, m) in w)
            vec[modes] = vec.get(modes, _ZERO) + c
        return {w: c for w, c in vec.items() if c != 0}

    def _build(self):
        fam = self.family
        rels = []
        for k in range(0, self.max_mode - 1):
            for l in range(k, self.max_mode - 1):
                if k + l + 2 <= self.max_deg:
                    rels.append((2, k + l + 2, self._to_modes(_quadratic_relation(fam, k, l))))
        if self.max_len >= 3:
            for m in range(2, self.max_deg + 2):
                if m - 1 <= self.max_mode and m - 1 <= self.max_deg:
                    rel = self._to_modes(_serre_coeff_words(fam, m))
                    if rel:
                        rels.append((3, m - 1, rel))
        words = _pure_words(self.max_len, self.max_mode, self.max_deg)
        for length, topdeg, rel in rels:
            if not rel:
                continue
            for x in words:
                if len(x) + length > self.max_len:
                    continue
                dx = sum(x)
                if dx + topdeg > self.max_deg:
                    continue
                for y in words:
                    if len(x) + length + len(y) > self.max_len:
                        continue
                    if dx + topdeg + sum(y) > self.max_deg:
                        continue
                    row = {}
                    for w, c in rel.items():
                        key = x + w + y
                        row[key] = row.get(key, _ZERO) + c
                    self._insert(row)

    def _insert(self, row):
        row = self.reduce(row)
        if not row:
            return
        lead = max(row, key=_word_key)
        inv = _ONE / row[lead]
        self.pivots[lead] = {w: c * inv for w, c in row.items()}

    def reduce(self, vec):
        vec = {w: c for w, c in vec.items() if c != 0}
        while True:
            hits = [w for w in vec if w in self.pivots]
            if not hits:
                return vec
            w = max(hits, key=_word_key)
            coeff = vec[w]
            for w2, c2 in self.pivots[w].items():
                vec[w2] = vec.get(w2, _ZERO) - coeff * c2
                if vec[w2] == 0:
                    del vec[w2]

    def contains(self, el: Element) -> bool:
        return not self.reduce(self._to_modes(el))

    # --- canonical coordinates -------------------------------------------

    def _pbw_block_words(self):
        """Canonical one-block PBW words within the window (letter tuples)."""
        fam = self.family
        big = "E" if fam == "e" else "F"
        letters = []
        for lev in range(0, self.max_mode + 1):
            letters.append(((fam, lev), 1, lev))
            if lev + 1 <= self.max_mode and 2 * lev + 1 <= self.max_deg:
                letters.append(((big, 2 * lev + 1), 2, 2 * lev + 1))
        letters.sort(key=lambda t: _rank_in_block(t[0]))
        out = [()]
        def rec(prefix, start, length, deg):
            for i in range(start, len(letters)):
                letter, dl, dd = letters[i]
                if length + dl > self.max_len or deg + dd > self.max_deg:
                    continue
                w = prefix + (letter,)
                out.append(w)
                rec(w, i, length + dl, deg + dd)
        rec((), 0, 0, 0)
        return out

    def coords(self, el: Element):
        """Express el modulo the windowed ideal in the PBW block monomials.

        Returns {canonical letter word: coefficient}; raises WindowError if
        the window cannot exhibit a representation.
        """
        target = self.reduce(self._to_modes(el))
        if not target:
            return {}
        aug = {}
        for mono in sorted(self._pbw_block_words(), key=lambda w: (expanded_length(w), word_degree(w), w)):
            vec = self.reduce(self._to_modes(expand_element(Element.word(mono))))
            coords = {mono: _ONE}
            while vec:
                lead = max(vec, key=_word_key)
                if lead not in aug:
                    break
                prow, pco = aug[lead]
                scale = vec[lead]
                for w2, c2 in prow.items():
                    vec[w2] = vec.get(w2, _ZERO) - scale * c2
                    if vec[w2] == 0:
                        del vec[w2]
                for m2, c2 in pco.items():
                    coords[m2] = coords.get(m2, _ZERO) - scale * c2
            if vec:
                lead = max(vec, key=_word_key)
                inv = _ONE / vec[lead]
                aug[lead] = (
                    {w: c * inv for w, c in vec.items()},
                    {m: c * inv for m, c in coords.items()},
                )
        out = {}
        vec = dict(target)
        while vec:
            lead = max(vec, key=_word_key)
            if lead not in aug:
                raise WindowError(
                    f"window (len<={self.max_len}, mode<={self.max_mode}, "
                    f"deg<={self.max_deg}) too small: residual word {lead}"
                )
            prow, pco = aug[lead]
            scale = vec[lead]
            for w2, c2 in prow.items():
                vec[w2] = vec.get(w2, _ZERO) - scale * c2
                if vec[w2] == 0:
                    del vec[w2]
            for m2, c2 in pco.items():
                out[m2] = out.get(m2, _ZERO) + scale * c2
        return {m: c for m, c in out.items() if c != 0}


@lru_cache(maxsize=None)
def _reducer(family: str, max_len: int, max_mode: int, max_deg: int) -> BlockReducer:
    return BlockReducer(family, max_len, max_mode, max_deg)


_canonical_block_cache = {}


def canonical_block(family: str, modes) -> Element:
    """Canonical PBW form of a pure one-family word (modes >= 0)."""
    modes = tuple(modes)
    if not modes:
        return Element.one()
    key = (family, modes)
    if key in _canonical_block_cache:
        return _canonical_block_cache[key]
    if min(modes) < 0:
        raise UnorderableError(
            "negative modes have no exact normal form; use ideal membership"
        )
    L = len(modes)
    D = sum(modes)
    M0 = max(max(modes), 1)
    el = Element.word(tuple((family, m) for m in modes))
    last = None
    for M in range(M0, max(M0, D) + 3, 2):
        try:
            coords = _reducer(family, L, M, D).coords(el)
            result = Element(coords)
            _canonical_block_cache[key] = result
            return result
        except WindowError as exc:
            last = exc
    raise last


# ---------------------------------------------------------------------------
# Normal ordering of the non-negative half
# ---------------------------------------------------------------------------

def normal_order_plus(x: Element, trace=None) -> Element:
    """PBW normal form of an element of the non-negative half.

    The result is a combination of ordered monomials: e/E block in the
    ascending basis shape, then h's ascending, then the f/F block in the
    descending basis shape.
    """
    if x.min_mode() < 0:
        raise UnorderableError(
            "normal_order_plus needs all modes >= 0 (negative modes are "
            "handled by the windowed ideal machinery)"
        )
    sep = block_separate(x)
    if trace is not None:
        trace.append(f"block-separated: {sep!r}")
    out = Element()
    for word, coeff in sorted(sep.terms.items()):
        e_part, h_part, f_part = split_blocks(word)
        e_can = canonical_block("e", tuple(m for (_f, m) in e_part))
        f_can = canonical_block("f", tuple(m for (_f, m) in f_part))
        h_word = tuple(sorted(h_part, key=lambda l: l[1]))
        piece = e_can * Element.word(h_word) * f_can
        out = out + piece.scale(coeff)
        if trace is not None:
            trace.append(f"  {letter_str_word(word)} -> {piece!r}")
    return out


def letter_str_word(word) -> str:
    return "*".join(letter_str(l) for l in word) if word else "1"


# ---------------------------------------------------------------------------
# Single-step rewriting (audit trail / confluence experiments)
# ---------------------------------------------------------------------------

def _rank_in_block(letter):
    fam, m = letter
    if fam == "e":
        return 2 * m
    if fam == "E":
        return m  # label 2k+1 sits between e_k (2k) and e_{k+1} (2k+2)
    if fam == "h":
        return m
    if fam == "f":
        return -2 * m
    return -m  # F label 2k+1 -> -(2k+1)


def is_inversion(a, b) -> bool:
    """Does the adjacent pair (a, b) violate the target order?"""
    if BLOCK[a[0]] != BLOCK[b[0]]:
        return BLOCK[a[0]] > BLOCK[b[0]]
    return _rank_in_block(a) > _rank_in_block(b)


@lru_cache(maxsize=None)
def _pair_rule(a, b) -> Element:
    """Replacement Element for the inverted adjacent pair a b."""
    fa, ma = a
    fb, mb = b
    swap_sign = -_ONE if letter_parity(a) and letter_parity(b) else _ONE
    swapped = Element({(b, a): swap_sign})
    if BLOCK[fa] != BLOCK[fb]:
        if fa == "h" and fb in ("e", "E"):
            return swapped + _com_h_letter(ma, b)
        if fa in ("f", "F") and fb in ("e", "E"):
            return swapped + _cross_ef_bracket(a, b)
        if fa in ("f", "F") and fb == "h":
            return swapped - _com_h_letter_right(mb, a)
        raise UnorderableError(f"no rule for pair {letter_str(a)} {letter_str(b)}")
    if fa == "h":
        return swapped  # h's commute
    if fa == "e" and fb == "e":
        return swapped + acom_ee(ma, mb) if ma > mb else swapped
    if fa == "f" and fb == "f":
        return swapped + acom_ff(ma, mb)
    # pairs involving E/F letters inside a block: derived bracket
    x = Element.word((a,))
    y = Element.word((b,))
    fam = "e" if BLOCK[fa] == 0 else "f"
    bracket = expand_element(commutator(x, y) if swap_sign == 1 else anticommutator(x, y))
    if min((m for w in bracket.terms for (_f, m) in w), default=0) < 0:
        raise UnorderableError("derived bracket needs non-negative modes")
    can = Element()
    for w, c in block_separate(bracket).terms.items():
        modes = tuple(m for (_f, m) in w)
        can = can + canonical_block(fam, modes).scale(c)
    return swapped + can


def _com_h_letter(l: int, b) -> Element:
    """[h_l, b] for b an e/E letter, via the Leibniz rule on expansions."""
    fb, mb = b
    if fb == "e":
        return com_he(l, mb)
    out = Element()
    for w, c in expand_letter(b).terms.items():
        (f1, m1), (f2, m2) = w
        out = out + (
            com_he(l, m1) * Element.word(((f2, m2),))
            + Element.word(((f1, m1),)) * com_he(l, m2)
        ).scale(c)
    return out


def _com_h_letter_right(l: int, a) -> Element:
    """[h_l, a] for a an f/F letter."""
    fa, ma = a
    if fa == "f":
        return com_hf(l, ma)
    out = Element()
    for w, c in expand_letter(a).terms.items():
        (f1, m1), (f2, m2) = w
        out = out + (
            com_hf(l, m1) * Element.word(((f2, m2),))
            + Element.word(((f1, m1),)) * com_hf(l, m2)
        ).scale(c)
    return out


def _cross_ef_bracket(a, b) -> Element:
    """a b -+ b a for a in the f/F block, b in the e/E block."""
    ea = expand_letter(a)
    eb = expand_letter(b)
    sign = -_ONE if letter_parity(a) and letter_parity(b) else _ONE
    raw = ea * eb - eb.scale(sign) * ea
    # every word is f...e mixture; eliminate via {e_k, f_l} = h_{k+l}
    return block_separate(raw)


def rewrite_step(word, p: int) -> Element:
    """One rewrite at position p of the word (an identity in the algebra).

    The pair (word[p], word[p+1]) must be an inversion of the target order;
    the result replaces it, leaving the rest of the word untouched.
    """
    word = tuple(word)
    if p < 0 or p + 1 >= len(word):
        raise IndexError("position out of range")
    a, b = word[p], word[p + 1]
    if not is_inversion(a, b):
        raise ValueError(f"pair {letter_str(a)} {letter_str(b)} is already ordered")
    repl = _pair_rule(a, b)
    out = {}
    for w, c in repl.terms.items():
        key = word[:p] + w + word[p + 2:]
        out[key] = out.get(key, _ZERO) + c
    return Element(out)


def normal_order_by_steps(x: Element, rng=None, max_steps: int = 100000) -> Element:
    """Drive an element to normal form with single rewrite steps, choosing
    the position randomly when `rng` is given (confluence experiments)."""
    pending = dict(expand_element(x).terms)
    done = {}
    steps = 0
    while pending:
        word, coeff = pending.popitem()
        spots = [p for p in range(len(word) - 1) if is_inversion(word[p], word[p + 1])]
        if not spots:
            done[word] = done.get(word, _ZERO) + coeff
            continue
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting exceeded the step budget")
        p = spots[0] if rng is None else rng.choice(spots)
        for w, c in rewrite_step(word, p).terms.items():
            pending[w] = pending.get(w, _ZERO) + coeff * c
    # words may still carry expanded squares where the basis wants E letters:
    # a final deterministic pass through the block canonicaliser settles them.
    return Element(done)


# ---------------------------------------------------------------------------
# PBW bases
# ---------------------------------------------------------------------------

SIDES = ("E+", "F-", "F+", "E-")


@dataclass(frozen=True)
class PBWIndex:
    """One PBW basis monomial, encoded by the pairing-theorem exponent data
    (a_l, b_l, c_l) per level l (trailing zero levels dropped)."""

    side: str
    levels: tuple

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"unknown side {self.side!r}")
        for (a, b, c) in self.levels:
            if a < 0 or b < 0 or c not in (0, 1):
                raise ValueError(f"malformed PBW exponents {self.levels!r}")
        if self.levels and self.levels[-1] == (0, 0, 0):
            raise ValueError("trailing zero level in PBWIndex")

    def exponents(self, lev: int):
        """(small-letter exponent, capital-letter exponent) at a level."""
        if lev >= len(self.levels):
            return (0, 0)
        a, b, c = self.levels[lev]
        if self.side in ("E+", "E-"):
            small = 2 * b + c if self.side == "E+" else 2 * a + c
            big = a if self.side == "E+" else b
        else:
            small = 2 * a + c if self.side == "F-" else 2 * b + c
            big = b if self.side == "F-" else a
        return (small, big)

    def word(self):
        """The monomial as a letter word in the displayed ordering."""
        fam = "e" if self.side.startswith("E") else "f"
        big = fam.upper()
        neg = self.side.endswith("-")
        parts = []
        for lev, (_a, _b, _c) in enumerate(self.levels):
            small, cap = self.exponents(lev)
            mode = -lev - 1 if neg else lev
            label = -(2 * lev + 1) if neg else 2 * lev + 1
            if self.side == "E+":
                seg = ((fam, mode),) * small + ((big, label),) * cap
            elif self.side == "F-":
                seg = ((big, label),) * cap + ((fam, mode),) * small
            elif self.side == "F+":
                seg = ((big, label),) * cap + ((fam, mode),) * small
            else:  # E-
                seg = ((fam, mode),) * small + ((big, label),) * cap
            parts.append(seg)
        if self.side in ("F+", "E-"):
            parts.reverse()
        word = ()
        for seg in parts:
            word = word + seg
        return word

    def expanded_length(self) -> int:
        return sum(2 * a + 2 * b + c for (a, b, c) in self.levels)

    def letter_length(self) -> int:
        return sum(sum(self.exponents(l)) for l in range(len(self.levels)))

    def degree(self) -> int:
        d = 0
        for lev, (a, b, c) in enumerate(self.levels):
            small, cap = self.exponents(lev)
            mode = -(lev + 1) if self.side.endswith("-") else lev
            label = -(2 * lev + 1) if self.side.endswith("-") else 2 * lev + 1
            d += small * mode + cap * label
        return d

    def parity(self) -> int:
        return sum(c for (_a, _b, c) in self.levels) % 2

    def partner(self) -> "PBWIndex":
        dual = {"E+": "F-", "F-": "E+", "F+": "E-", "E-": "F+"}[self.side]
        return PBWIndex(dual, self.levels)


def _strip(levels):
    levels = list(levels)
    while levels and levels[-1] == (0, 0, 0):
        levels.pop()
    return tuple(levels)


def pbw_enumerate(side: str, max_word_length: int, max_mode: int):
    """All PBW monomials of the side with letter count <= max_word_length
    and every symbol mode label <= max_mode (in absolute value), in a
    deterministic order."""
    if side not in SIDES:
        raise ValueError(f"unknown side {side!r}")
    max_level = max_mode  # small letters at level l carry mode l (or -l-1)
    out = []

    def rec(levels, lev, letters_used):
        if lev > max_level:
            out.append(levels)
            return
        small_mode = lev if side.endswith("+") else lev + 1
        label = 2 * lev + 1
        small_ok = small_mode <= max_mode
        cap_ok = label <= max_mode
        for a in range(0, max_word_length + 1):
            for b in range(0, max_word_length + 1):
                for c in (0, 1):
                    if side in ("E+",):
                        small, cap = 2 * b + c, a
                    elif side == "F-":
                        small, cap = 2 * a + c, b
                    elif side == "F+":
                        small, cap = 2 * b + c, a
                    else:
                        small, cap = 2 * a + c, b
                    used = small + cap
                    if used == 0 and (a or b or c):
                        continue
                    if letters_used + used > max_word_length:
                        continue
                    if small > 0 and not small_ok:
                        continue
                    if cap > 0 and not cap_ok:
                        continue
                    rec(levels + ((a, b, c),), lev + 1, letters_used + used)

    rec((), 0, 0)
    seen = set()
    result = []
    for levels in out:
        stripped = _strip(levels)
        if stripped in seen:
            continue
        seen.add(stripped)
        result.append(PBWIndex(side, stripped))
    result.sort(key=lambda b: (b.letter_length(), abs(b.degree()), b.levels))
    return result


# ---------------------------------------------------------------------------
# Serre relations in mode form
# ---------------------------------------------------------------------------

def serre_relation(family: str, k: int, idx: int, flip_rhs: bool = False) -> Element:
    """Candidate cubic relation (idx in 1..3), as LHS - RHS; zero in the
    algebra when the mode conjecture holds.  flip_rhs negates the right
    side (negative control)."""
    x = lambda i: Element.gen(family, i)
    lead = commutator(anticommutator(x(k), x(k + 1)), x(k + idx - 1))
    s = -_ONE if flip_rhs else _ONE
    if family == "e":
        if idx == 1:
            rhs = (x(k) * x(k) * x(k)).scale(2)
        elif idx == 2:
            rhs = (
                (x(k) * x(k + 1) * x(k)).scale(-1)
                + (x(k) * x(k) * x(k + 1)).scale(Fraction(-1, 2))
                + (x(k + 1) * x(k) * x(k)).scale(Fraction(-1, 2))
            )
        else:
            rhs = (
                x(k + 1) * x(k + 1) * x(k)
                + x(k + 1) * x(k) * x(k + 1)
                + x(k) * x(k + 1) * x(k + 1)
            ).scale(-2)
    else:
        if idx == 1:
            rhs = (x(k) * x(k) * x(k)).scale(-2)
        elif idx == 2:
            rhs = (
                x(k) * x(k + 1) * x(k)
                + (x(k) * x(k) * x(k + 1)).scale(Fraction(1, 2))
                + (x(k + 1) * x(k) * x(k)).scale(Fraction(1, 2))
            )
        else:
            rhs = (
                x(k + 1) * x(k + 1) * x(k)
                + x(k + 1) * x(k) * x(k + 1)
                + x(k) * x(k + 1) * x(k + 1)
            ).scale(2)
    return lead - rhs.scale(s)


def default_serre_window(k: int):
    """(mode bound, degree bound) comfortably containing the k-th relations."""
    return (3 * k + 3, 3 * k + 4)


def serre_relation_check(
    family: str, k: int, idx: int, window=None, flip_rhs: bool = False
) -> bool:
    """Is the cubic mode relation in the windowed ideal generated by the
    quadratic exchange relations and the generating-function Serre
    coefficients?"""
    if k < 0:
        raise UnorderableError(
            "negative-k Serre checks need the double's generating-function "
            "relations; only k >= 0 is wired to the exact window"
        )
    if window is None:
        window = default_serre_window(k)
    max_mode, max_deg = window
    cand = serre_relation(family, k, idx, flip_rhs=flip_rhs)
    if cand.max_mode() > max_mode or cand.degree() > max_deg:
        raise WindowError(
            f"window {window} cannot contain the relation (needs mode "
            f"<= {cand.max_mode()}, degree <= {cand.degree()})"
        )
    red = _reducer(family, 3, max_mode, max_deg)
    return red.contains(expand_element(cand))


def serre_mode_check(family: str, k: int, window=None) -> bool:
    """All three cubic relations at level k hold by bounded ideal membership."""
    return all(serre_relation_check(family, k, idx, window) for idx in (1, 2, 3))


# ---------------------------------------------------------------------------
# Graded (classical-limit) checks
# ---------------------------------------------------------------------------

def graded_limit_check(max_mode: int = 4, cubic_max_mode: int = 2) -> bool:
    """Top-filtration parts of the defining relations reproduce the current
    superalgebra of osp(1|2): [h,h]=0, {e,f}=h, [h,e]=e, [h,f]=-f,
    {e_n,e_m}={e_0,e_{n+m}} (same for f), and the cubic brackets vanish."""
    for k in range(max_mode + 1):
        for l in range(max_mode + 1):
            # {e_k, f_l} = h_{k+l} holds exactly, not only in the limit
            lhs = normal_order_plus(
                anticommutator(Element.gen("e", k), Element.gen("f", l))
            )
            if lhs != Element.gen("h", k + l):
                return False
            # [h_k, e_l] = e_{k+l} + lower order
            t = com_he(k, l).top_part()
            if t != Element.gen("e", k + l):
                return False
            t = com_hf(k, l).top_part()
            if t != Element.gen("f", k + l, -1):
                return False
    for n in range(max_mode + 1):
        for m in range(n, max_mode + 1):
            diff = acom_ee(n, m) - acom_ee(0, n + m)
            if diff and diff.degree() >= n + m:
                return False
            diff = acom_ff(n, m) - acom_ff(0, n + m)
            if diff and diff.degree() >= n + m:
                return False
    for fam in ("e", "f"):
        x = lambda i: Element.gen(fam, i)
        for l in range(cubic_max_mode + 1):
            for m in range(l, cubic_max_mode + 1):
                for n in range(cubic_max_mode + 1):
                    el = commutator(anticommutator(x(l), x(m)), x(n))
                    nf = normal_order_plus(el)
                    if nf and nf.degree() >= l + m + n:
                        return False
    return True


# ---------------------------------------------------------------------------
# Double Serre relations: literal mode-coefficient extraction
# ---------------------------------------------------------------------------

def _half_series(family: str, branch: str, lo: int, hi: int):
    """u-power dict of x^+(u) (modes >= 0) or x^-(u) (modes < 0), powers
    clipped to [lo, hi]."""
    out = {}
    if branch == "+":
        k = 0
        while -(k + 1) >= lo:
            if -(k + 1) <= hi:
                out[-(k + 1)] = Element.gen(family, k)
            k += 1
    else:
        k = -1
        while -(k + 1) <= hi:
            if -(k + 1) >= lo:
                out[-(k + 1)] = Element.gen(family, k, -1)
            k -= 1
    return out


def _series_mul(a, b, lo, hi):
    out = {}
    for p, x in a.items():
        for q, y in b.items():
            r = p + q
            if lo <= r <= hi:
                out[r] = out.get(r, Element()) + x * y
    return out


def _series_combine(parts, lo, hi):
    out = {}
    for sign, series in parts:
        for p, x in series.items():
            if lo <= p <= hi:
                out[p] = out.get(p, Element()) + x.scale(sign)
    return out


def dy_serre_coefficient(family: str, branch: str, power: int, span: int = 0) -> Element:
    """The u^{power} coefficient of the double's cubic Serre relation
    (LHS - RHS), extracted literally from the displayed equation.

    For the + branch the meaningful powers are -m-2, m >= 0; the boundary
    u^{-1} coefficient is NOT a relation (it reduces to a nonzero multiple
    of x_0^3) and is refused.
    """
    if branch == "+" and power >= -1:
        raise ValueError(
            "u^{-1} boundary coefficient of the + branch is not a relation; "
            "use powers <= -2"
        )
    lo = min(power - 1, -3) - span
    hi = max(power + 1, 1) + span
    x0 = Element.gen(family, 0)
    x1 = Element.gen(family, 1)
    xs = _half_series(family, branch, lo - 1, hi + 1)
    acom0 = {p: anticommutator(x0, v) for p, v in xs.items()}
    lhs = _series_mul(acom0, xs, lo, hi)
    acom_sq = {p: anticommutator(x0 * x0, v) for p, v in xs.items()}
    com_sq_shift = {p + 1: commutator(x0 * x0, v) for p, v in xs.items()}
    mid = {p: x0 * v * x0 for p, v in xs.items()}
    com_E = {p: commutator(anticommutator(x0, x1), v) for p, v in xs.items()}
    sign = _ONE if family == "e" else -_ONE
    rhs = _series_combine(
        [
            (sign * Fraction(5, 2), acom_sq),
            (Fraction(-2), com_sq_shift),
            (sign, mid),
            (-_ONE, com_E),
        ],
        lo,
        hi,
    )
    rel = _series_combine([(1, lhs), (-1, rhs)], lo, hi)
    return rel.get(power, Element())
