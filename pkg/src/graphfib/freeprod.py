"""Words over a free product of order-2 generators, and normal-closure membership.

The ambient group has one involutive generator per letter ``0..n-1`` and no
other relations.  Words are tuples of letters; reduction cancels adjacent
equal letters, and the inverse of a reduced word is its reversal.

Membership in a normal closure is answered by one of three strategies:

* ``finite-model``: run coset enumeration over the quotient presentation and
  trace the word; exact whenever the quotient is recognized finite within the
  coset cap.
* ``racg``: applicable when every closure generator is a commutator-shaped
  word ``xyxy`` with ``x != y``; the quotient is then a right-angled Coxeter
  group and repeated deletion of letter pairs with commuting interludes
  decides the word problem exactly.
* ``bounded-bfs``: a semi-decision.  A parity check over GF(2) gives sound
  "no" answers; otherwise breadth-first insertion of generators searches for
  a cancellation to the empty word, giving "yes" or "unknown".
"""

from __future__ import annotations

from collections import deque
from enum import Enum
from functools import lru_cache


class Membership(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


DEFAULT_BFS_DEPTH = 6
DEFAULT_BFS_MAX_LEN = 24
DEFAULT_COSET_CAP = 20000


# ---------------------------------------------------------------------------
# words


def reduce_word(letters):
    out = []
    for x in letters:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def multiply(u, v):
    return reduce_word(tuple(u) + tuple(v))


def inverse(w):
    # every letter is an involution, so reversal inverts
    return reduce_word(reversed(tuple(w)))


def conjugate(w, u):
    """The word ``u w u^-1``, reduced."""
    u = tuple(u)
    return reduce_word(u + tuple(w) + inverse(u))


def apply_letter_map(mapping, w):
    """Push a word through a letter substitution and reduce."""
    return reduce_word(mapping[x] for x in w)


def validate_word(letters, alphabet_size):
    w = tuple(letters)
    for x in w:
        if not (0 <= x < alphabet_size):
            raise ValueError(f"letter {x} out of range for alphabet of {alphabet_size}")
    return w


# ---------------------------------------------------------------------------
# normal-closure specifications


class NormalClosureSpec:
    """A normal closure ``<<generators>>`` inside the free product on
    ``alphabet_size`` involutive letters, plus the strategy used to answer
    membership queries against it."""

    __slots__ = ("alphabet_size", "generators", "strategy", "bfs_depth", "bfs_max_len", "coset_cap")

    def __init__(
        self,
        alphabet_size,
        generators,
        strategy="auto",
        bfs_depth=DEFAULT_BFS_DEPTH,
        bfs_max_len=DEFAULT_BFS_MAX_LEN,
        coset_cap=DEFAULT_COSET_CAP,
    ):
        if strategy not in ("auto", "racg", "finite-model", "bounded-bfs"):
            raise ValueError(f"unknown membership strategy {strategy!r}")
        gens = []
        for g in generators:
            w = reduce_word(validate_word(g, alphabet_size))
            if w and w not in gens:
                gens.append(w)
        self.alphabet_size = alphabet_size
        self.generators = tuple(gens)
        self.strategy = strategy
        self.bfs_depth = bfs_depth
        self.bfs_max_len = bfs_max_len
        self.coset_cap = coset_cap

    def replace(self, **kwargs):
        fields = {name: getattr(self, name) for name in self.__slots__}
        fields.update(kwargs)
        return NormalClosureSpec(**fields)

    def __eq__(self, other):
        return isinstance(other, NormalClosureSpec) and all(
            getattr(self, name) == getattr(other, name) for name in self.__slots__
        )

    def __hash__(self):
        return hash(tuple(getattr(self, name) for name in self.__slots__))

    def __repr__(self):
        return (
            f"NormalClosureSpec({self.alphabet_size}, {list(self.generators)}, "
            f"strategy={self.strategy!r})"
        )


# ---------------------------------------------------------------------------
# coset enumeration (all generators involutive, trivial subgroup)


def coset_table(alphabet_size, relators, max_cosets=DEFAULT_COSET_CAP):
    """Complete coset table of ``<x_0..x_{n-1} | x_i^2, relators>`` or None.

    Returns the table as a list of rows (one per group element, row ``c``
    maps letter ``x`` to ``table[c][x]``) with coset 0 the identity, or None
    when enumeration exceeds ``max_cosets`` cosets.
    """
    n = alphabet_size
    relators = [reduce_word(r) for r in relators]
    relators = [r for r in relators if r]
    table = [[None] * n]
    p = [0]

    class _Overflow(Exception):
        pass

    def rep(c):
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def define(c, x):
        if len(table) >= max_cosets:
            raise _Overflow
        d = len(table)
        table.append([None] * n)
        p.append(d)
        table[c][x] = d
        table[d][x] = c

    def coincidence(a, b):
        queue = deque()

        def merge(u, v):
            u, v = rep(u), rep(v)
            if u != v:
                u, v = min(u, v), max(u, v)
                p[v] = u
                queue.append(v)

        merge(a, b)
        while queue:
            dead = queue.popleft()
            for x in range(n):
                d = table[dead][x]
                if d is None:
                    continue
                table[d][x] = None
                mu, nu = rep(dead), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x])
                elif table[nu][x] is not None:
                    merge(mu, table[nu][x])
                else:
                    table[mu][x] = nu
                    table[nu][x] = mu

    def scan_and_fill(alpha, r):
        f, i = alpha, 0
        b, j = alpha, len(r) - 1
        while True:
            while i <= j and table[f][r[i]] is not None:
                f = table[f][r[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][r[j]] is not None:
                b = table[b][r[j]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][r[i]] = b
                table[b][r[i]] = f
                return
            define(f, r[i])

    try:
        alpha = 0
        while alpha < len(table):
            if p[alpha] != alpha:
                alpha += 1
                continue
            for r in relators:
                scan_and_fill(alpha, r)
                if p[alpha] != alpha:
                    break
            if p[alpha] == alpha:
                for x in range(n):
                    if table[alpha][x] is None:
                        define(alpha, x)
            alpha += 1
    except _Overflow:
        return None

    live = [c for c in range(len(table)) if p[c] == c]
    index = {c: i for i, c in enumerate(live)}
    return [[index[rep(table[c][x])] for x in range(n)] for c in live]


@lru_cache(maxsize=256)
def _cached_table(alphabet_size, generators, coset_cap):
    return coset_table(alphabet_size, generators, coset_cap)


def quotient_order_if_finite(spec, max_cosets=None):
    """Order of the quotient by the closure, or None if not shown finite."""
    cap = spec.coset_cap if max_cosets is None else max_cosets
    table = _cached_table(spec.alphabet_size, spec.generators, cap)
    return None if table is None else len(table)


# ---------------------------------------------------------------------------
# strategy: right-angled Coxeter quotients


def racg_eligible(generators):
    """True when every generator reads ``xyxy`` with two distinct letters."""
    for w in generators:
        if len(w) != 4:
            return False
        x, y = w[0], w[1]
        if x == y or w != (x, y, x, y):
            return False
    return True


def _racg_member(word, generators):
    comm = set()
    for x, y, _, _ in generators:
        comm.add((x, y))
        comm.add((y, x))
    w = list(word)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(w):
            x = w[i]
            j = i + 1
            blocked = False
            while j < len(w) and w[j] != x:
                if (x, w[j]) not in comm:
                    blocked = True
                    break
                j += 1
            if not blocked and j < len(w):
                del w[j]
                del w[i]
                changed = True
                break
            i += 1
    return Membership.YES if not w else Membership.NO


# ---------------------------------------------------------------------------
# strategy: bounded search


def _parity(w):
    m = 0
    for x in w:
        m ^= 1 << x
    return m


def _gf2_in_span(target, vectors):
    pivots = {}
    for v in vectors:
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                v ^= pivots[h]
            else:
                pivots[h] = v
                break
    while target:
        h = target.bit_length() - 1
        if h not in pivots:
            return False
        target ^= pivots[h]
    return True


def _bounded_bfs_member(word, generators, depth, max_len):
    if not generators:
        return Membership.NO
    # abelianized over GF(2), membership in the closure forces membership in
    # the subgroup spanned by the generator parity vectors
    if not _gf2_in_span(_parity(word), [_parity(g) for g in generators]):
        return Membership.NO
    moves = set(generators) | {inverse(g) for g in generators}
    visited = {word}
    frontier = [word]
    for _ in range(depth):
        nxt = []
        for u in frontier:
            for g in moves:
                for pos in range(len(u) + 1):
                    v = reduce_word(u[:pos] + g + u[pos:])
                    if not v:
                        return Membership.YES
                    if len(v) <= max_len and v not in visited:
                        visited.add(v)
                        nxt.append(v)
        if not nxt:
            break
        frontier = nxt
    return Membership.UNKNOWN


# ---------------------------------------------------------------------------
# dispatch


def member(word, spec):
    """Tri-state membership of ``word`` in the normal closure of ``spec``."""
    w = reduce_word(validate_word(word, spec.alphabet_size))
    if not w:
        return Membership.YES
    strategy = spec.strategy
    if strategy == "auto":
        if racg_eligible(spec.generators):
            strategy = "racg"
        elif _cached_table(spec.alphabet_size, spec.generators, spec.coset_cap) is not None:
            strategy = "finite-model"
        else:
            strategy = "bounded-bfs"
    if strategy == "racg":
        if not racg_eligible(spec.generators):
            raise ValueError("racg strategy requires every generator to read xyxy with x != y")
        return _racg_member(w, spec.generators)
    if strategy == "finite-model":
        table = _cached_table(spec.alphabet_size, spec.generators, spec.coset_cap)
        if table is None:
            return Membership.UNKNOWN
        c = 0
        for x in w:
            c = table[c][x]
        return Membership.YES if c == 0 else Membership.NO
    return _bounded_bfs_member(w, spec.generators, spec.bfs_depth, spec.bfs_max_len)


# ---------------------------------------------------------------------------
# serialization


def letter_from_json(x, alphabet_size):
    if isinstance(x, int):
        v = x
    elif isinstance(x, str) and len(x) == 1 and "a" <= x <= "z":
        v = ord(x) - ord("a")
    else:
        raise ValueError(f"invalid letter {x!r}")
    if not (0 <= v < alphabet_size):
        raise ValueError(f"letter {x!r} out of range for alphabet of {alphabet_size}")
    return v


def word_from_json(obj, alphabet_size):
    if not isinstance(obj, list):
        raise ValueError("word JSON must be a list of letters")
    return tuple(letter_from_json(x, alphabet_size) for x in obj)


def closure_from_json(obj):
    if not isinstance(obj, dict):
        raise ValueError("closure JSON must be an object")
    try:
        alphabet = obj["alphabet"]
        raw_gens = obj["generators"]
    except KeyError as exc:
        raise ValueError(f"closure JSON missing key {exc}")
    gens = [word_from_json(g, alphabet) for g in raw_gens]
    strategy = obj.get("strategy", "auto")
    kwargs = {}
    if isinstance(strategy, dict):
        if list(strategy) != ["bounded-bfs"]:
            raise ValueError(f"invalid strategy object {strategy!r}")
        params = strategy["bounded-bfs"]
        kwargs["bfs_depth"] = params.get("depth", DEFAULT_BFS_DEPTH)
        kwargs["bfs_max_len"] = params.get("max_len", DEFAULT_BFS_MAX_LEN)
        strategy = "bounded-bfs"
    return NormalClosureSpec(alphabet, gens, strategy=strategy, **kwargs)
