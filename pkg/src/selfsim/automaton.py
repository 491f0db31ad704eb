"""Wreath recursions: finite descriptions of self-similar group actions.

A group acting on the d-ary rooted word tree is described by finitely many
generators, each carrying a permutation of the alphabet and one restriction
word per letter.  The identities

    (x w)^g = x^g w^{g|_x}        g|_{uv} = (g|_u)|_v        (g h)|_v = g|_v h|_{v^g}

extend the table to the whole group (the action eats the leftmost letter
first).  Group elements are words in the generators and their inverses;
equality means equality of the induced tree maps, decided by running the
restriction closure of g*h^-1 to a finite automaton and taking the greatest
fixpoint of "acts trivially at the root and all restrictions act trivially".

For set-like work (nucleus, balls) every element is interned into a global
minimized automaton: states are canonical ids, products and inverses of
interned states are interned on demand, and two elements are equal exactly
when they share an id.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import (
    InputError,
    NotContractingWithinBound,
    StateCapExceeded,
    UnknownName,
)

Word = tuple  # of nonzero ints: +k is generator k-1, -k its inverse

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_ALPHABET = len(DIGITS)

DEFAULT_STATE_CAP = 100_000
DEFAULT_WORD_CAP = 65_536
DEFAULT_MAX_ROUNDS = 50
FINGERPRINT_DEPTH = 6

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def reduce_word(word):
    """Cancel adjacent s * s^-1 pairs (free reduction only)."""
    out = []
    for s in word:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def inverse_word(word):
    return tuple(-s for s in reversed(word))


def letter_value(ch):
    try:
        return DIGITS.index(ch)
    except ValueError:
        raise InputError(f"bad letter {ch!r}") from None


def letter_char(x):
    return DIGITS[x]


@dataclass(frozen=True)
class GeneratorSpec:
    """One row of a wreath recursion table."""

    name: str
    perm: tuple
    restrictions: tuple  # one Word per letter


class WreathRecursion:
    """A validated recursion table plus word parsing/formatting helpers."""

    def __init__(self, alphabet_size, generators):
        if not isinstance(alphabet_size, int) or alphabet_size < 2:
            raise InputError("alphabet size must be an integer >= 2")
        if alphabet_size > MAX_ALPHABET:
            raise InputError(f"alphabet size capped at {MAX_ALPHABET}")
        self.d = alphabet_size
        gens = tuple(generators)
        if not gens:
            raise InputError("at least one generator is required")
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise InputError("generator names must be distinct")
        for g in gens:
            if not _NAME_RE.fullmatch(g.name):
                raise InputError(f"bad generator name {g.name!r}")
            if sorted(g.perm) != list(range(self.d)):
                raise InputError(f"perm of {g.name} is not a bijection of the alphabet")
            if len(g.restrictions) != self.d:
                raise InputError(f"{g.name} needs one restriction per letter")
            for w in g.restrictions:
                for s in w:
                    if s == 0 or abs(s) > len(gens):
                        raise InputError(f"restriction of {g.name} references symbol {s}")
        self.generators = gens
        self._index = {g.name: i for i, g in enumerate(gens)}

    # -- construction from / export to the JSON wire format ----------------

    @classmethod
    def from_dict(cls, data):
        try:
            d = data["alphabet"]
            rows = data["generators"]
        except (TypeError, KeyError) as exc:
            raise InputError(f"group definition missing field: {exc}") from None
        names = []
        for row in rows:
            if "name" not in row:
                raise InputError("generator row without a name")
            names.append(row["name"])
        parse = lambda s: _parse_word(s, names)
        gens = []
        for row in rows:
            try:
                perm = tuple(row["perm"])
                restr = tuple(parse(s) for s in row["restrictions"])
            except KeyError as exc:
                raise InputError(f"generator {row['name']}: missing {exc}") from None
            gens.append(GeneratorSpec(row["name"], perm, restr))
        return cls(d, gens)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"group file is not valid JSON: {exc}") from None
        return cls.from_dict(data)

    def to_dict(self):
        return {
            "alphabet": self.d,
            "generators": [
                {
                    "name": g.name,
                    "perm": list(g.perm),
                    "restrictions": [self.format_word(w) for w in g.restrictions],
                }
                for g in self.generators
            ],
        }

    # -- words over the generator symbols ----------------------------------

    def parse_word(self, text):
        return _parse_word(text, [g.name for g in self.generators])

    def format_word(self, word):
        if not word:
            return ""
        parts = []
        for s in word:
            name = self.generators[abs(s) - 1].name
            parts.append(name if s > 0 else "~" + name)
        return "".join(parts)


def _parse_word(text, names):
    """Parse a comma-free concatenation of generator names, ~name = inverse."""
    if not isinstance(text, str):
        raise InputError(f"expected a word string, got {text!r}")
    by_length = sorted(names, key=len, reverse=True)
    pos, out = 0, []
    while pos < len(text):
        inv = text[pos] == "~"
        if inv:
            pos += 1
        for name in by_length:
            if text.startswith(name, pos):
                idx = names.index(name) + 1
                out.append(-idx if inv else idx)
                pos += len(name)
                break
        else:
            raise UnknownName(f"cannot read a generator name at {text[pos:]!r}")
    return reduce_word(tuple(out))


def _node_sort_key(node):
    return repr(node)


@dataclass(frozen=True)
class Nucleus:
    """The absorbing set: Elements sorted by representative, plus their ids."""

    elements: tuple
    ids: frozenset

    @property
    def size(self):
        return len(self.elements)

    def names(self):
        return tuple(e.engine.name_of(e.id) for e in self.elements)


class Element:
    """A group element: canonical id in the engine plus a display word."""

    __slots__ = ("engine", "id", "word")

    def __init__(self, engine, state_id, word):
        self.engine = engine
        self.id = state_id
        self.word = word

    def __mul__(self, other):
        eng = self.engine
        return Element(eng, eng.product(self.id, other.id),
                       reduce_word(self.word + other.word))

    def inverse(self):
        eng = self.engine
        return Element(eng, eng.inverse(self.id), inverse_word(self.word))

    def act(self, w):
        return self.engine.act_id(self.id, w)

    def restrict(self, v):
        eng = self.engine
        rid = eng.restrict_id(self.id, v)
        return Element(eng, rid, eng.rep(rid))

    def is_identity(self):
        return self.id == self.engine.identity_id

    def __eq__(self, other):
        return isinstance(other, Element) and self.id == other.id

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return f"<{self.engine.recursion.format_word(self.word) or 'e'}>"


class Action:
    """Evaluation, equality, nucleus and ball machinery for one recursion.

    Two layers coexist.  Formal words (tuples of signed ints) support act /
    restrict / is_trivial without any global state and implement the
    coinductive equality test exactly as specified.  On top of that, an
    append-only minimized automaton hands out canonical integer ids: states
    know their alphabet permutation and the id of each letter restriction,
    and interning a new state checks bisimilarity against the table so that
    id equality is semantic equality.
    """

    def __init__(self, recursion, state_cap=DEFAULT_STATE_CAP,
                 word_cap=DEFAULT_WORD_CAP):
        self.recursion = recursion
        self.d = recursion.d
        self.state_cap = state_cap
        self.word_cap = word_cap
        self._restr_memo = {}
        self._sigma_memo = {}
        # canonical state table
        self._perm = []
        self._child = []
        self._rep = []
        self._tok = {}
        self._fp = {}
        self._bucket = {}
        self._prod_memo = {}
        self._inv_memo = {}
        self._magic_memo = {}
        self._ball_cache = {}
        self._word_id = {}
        self._nucleus = None
        self._good = None
        self.identity_id = self._intern_words([()])[()]
        self._symbol_ids = {}
        npos = len(recursion.generators)
        pos = [(i,) for i in range(1, npos + 1)]
        neg = [(-i,) for i in range(1, npos + 1)]
        interned = self._intern_words(pos)
        interned.update(self._intern_words(neg))
        for w in pos + neg:
            self._symbol_ids[w[0]] = interned[w]

    # ---------------------------------------------------------------- formal

    def _symbol_perm(self, s):
        g = self.recursion.generators[abs(s) - 1]
        if s > 0:
            return g.perm
        inv = [0] * self.d
        for x, y in enumerate(g.perm):
            inv[y] = x
        return tuple(inv)

    def _symbol_restriction(self, s, x):
        g = self.recursion.generators[abs(s) - 1]
        if s > 0:
            return g.restrictions[x]
        # (a^-1)|_x = (a|_{x^(a^-1)})^-1
        y = self._symbol_perm(s)[x]
        return inverse_word(g.restrictions[y])

    def sigma_word(self, word):
        """The permutation the word induces on single letters."""
        try:
            return self._sigma_memo[word]
        except KeyError:
            pass
        perm = tuple(range(self.d))
        for s in word:
            sp = self._symbol_perm(s)
            perm = tuple(sp[x] for x in perm)
        self._sigma_memo[word] = perm
        return perm

    def restrict_word(self, word, x):
        """Formal restriction of a word at one letter, freely reduced."""
        key = (word, x)
        try:
            return self._restr_memo[key]
        except KeyError:
            pass
        parts = []
        cur = x
        for s in word:
            parts.extend(self._symbol_restriction(s, cur))
            cur = self._symbol_perm(s)[cur]
        out = reduce_word(tuple(parts))
        if len(out) > self.word_cap:
            # reduced restrictions of a contracting action stay short;
            # runaway growth would otherwise exhaust memory, not the
            # state-count cap
            raise StateCapExceeded(
                f"restriction word grew past {self.word_cap} symbols")
        self._restr_memo[key] = out
        return out

    def closure_words(self, word, state_cap=None):
        """All iterated formal restrictions of a word, as a transition map."""
        cap = state_cap or self.state_cap
        table = {}
        stack = [reduce_word(word)]
        while stack:
            w = stack.pop()
            if w in table:
                continue
            if len(table) >= cap:
                raise StateCapExceeded(
                    f"restriction closure exceeded {cap} states")
            kids = tuple(self.restrict_word(w, x) for x in range(self.d))
            table[w] = kids
            stack.extend(k for k in kids if k not in table)
        return table

    def is_trivial(self, word, state_cap=None):
        """Greatest fixpoint: trivial root permutation, trivial restrictions."""
        word = reduce_word(word)
        table = self.closure_words(word, state_cap)
        idperm = tuple(range(self.d))
        trivial = {w for w in table if self.sigma_word(w) == idperm}
        parents = {w: [] for w in table}
        for w, kids in table.items():
            for k in kids:
                parents[k].append(w)
        queue = [w for w in trivial if any(k not in trivial for k in table[w])]
        while queue:
            w = queue.pop()
            if w not in trivial:
                continue
            trivial.discard(w)
            for p in parents[w]:
                if p in trivial:
                    queue.append(p)
        return word in trivial

    # ------------------------------------------------------------- interning

    def _table_fp(self, state_id, depth):
        """Behaviour-to-depth fingerprint token of an interned state."""
        if depth == 0:
            return 0
        key = (state_id, depth)
        try:
            return self._fp[key]
        except KeyError:
            pass
        kids = tuple(self._table_fp(c, depth - 1) for c in self._child[state_id])
        tok = self._tok.setdefault((self._perm[state_id], kids), len(self._tok))
        self._fp[key] = tok
        return tok

    def _intern(self, roots, perm_of, children_of, rep_of):
        """Intern a batch of automaton nodes, returning node -> canonical id.

        Nodes are hashable keys; children_of may yield either node keys or
        existing integer ids.  New semantic states are appended to the table;
        nodes bisimilar to existing states are mapped onto them.
        """
        order = []
        seen = set()
        stack = list(roots)
        while stack:
            n = stack.pop()
            if n in seen or isinstance(n, int):
                continue
            seen.add(n)
            order.append(n)
            if len(self._perm) + len(order) > self.state_cap:
                raise StateCapExceeded(
                    f"canonical state table exceeded {self.state_cap} states")
            stack.extend(c for c in children_of(n) if not isinstance(c, int))
        order.sort(key=_node_sort_key)

        fpmemo = {}

        def fp(item, depth=FINGERPRINT_DEPTH):
            if isinstance(item, int):
                return self._table_fp(item, depth)
            if depth == 0:
                return 0
            key = (item, depth)
            try:
                return fpmemo[key]
            except KeyError:
                pass
            kids = tuple(fp(c, depth - 1) for c in children_of(item))
            tok = self._tok.setdefault((perm_of(item), kids), len(self._tok))
            fpmemo[key] = tok
            return tok

        matched = {}

        def bisim(node, cand):
            assume = {node: cand}
            stack = [(node, cand)]
            while stack:
                n, c = stack.pop()
                if perm_of(n) != self._perm[c]:
                    return None
                for cn, cc in zip(children_of(n), self._child[c]):
                    if isinstance(cn, int):
                        if cn != cc:
                            return None
                    elif cn in matched:
                        if matched[cn] != cc:
                            return None
                    elif cn in assume:
                        if assume[cn] != cc:
                            return None
                    else:
                        assume[cn] = cc
                        stack.append((cn, cc))
            return assume

        for n in order:
            if n in matched:
                continue
            for cand in self._bucket.get(fp(n), ()):
                found = bisim(n, cand)
                if found is not None:
                    matched.update(found)
                    break

        leftovers = [n for n in order if n not in matched]
        color = {n: fp(n) for n in leftovers}
        while True:
            sigs = {}
            for n in leftovers:
                kid_colors = []
                for c in children_of(n):
                    if isinstance(c, int):
                        kid_colors.append(("id", c))
                    elif c in matched:
                        kid_colors.append(("id", matched[c]))
                    else:
                        kid_colors.append(("n", color[c]))
                sigs[n] = (color[n], perm_of(n), tuple(kid_colors))
            ranks = {s: i for i, s in enumerate(sorted(set(sigs.values()), key=repr))}
            new_color = {n: ranks[sigs[n]] for n in leftovers}
            if new_color == color:
                break
            color = new_color

        assign = {}
        result = dict(matched)
        for n in leftovers:
            c = color[n]
            if c not in assign:
                assign[c] = len(self._perm)
                self._perm.append(perm_of(n))
                self._child.append(None)
                self._rep.append(rep_of(n))
            result[n] = assign[c]
        for n in leftovers:
            sid = result[n]
            if self._child[sid] is None:
                kids = tuple(c if isinstance(c, int) else result[c]
                             for c in children_of(n))
                self._child[sid] = kids
        for sid in sorted(set(assign.values())):
            self._bucket.setdefault(self._table_fp(sid, FINGERPRINT_DEPTH),
                                    []).append(sid)
        return result

    def _intern_words(self, words):
        words = [reduce_word(w) for w in words]
        return self._intern(
            words,
            self.sigma_word,
            lambda w: tuple(self.restrict_word(w, x) for x in range(self.d)),
            lambda w: w)

    # ------------------------------------------------- canonical id algebra

    def rep(self, state_id):
        return self._rep[state_id]

    def name_of(self, state_id):
        return self.recursion.format_word(self._rep[state_id]) or "e"

    def intern_word(self, word):
        word = reduce_word(word)
        try:
            return self._word_id[word]
        except KeyError:
            sid = self._intern_words([word])[word]
            self._word_id[word] = sid
            return sid

    def element(self, word):
        """Build an Element from a Word tuple or a display string."""
        if isinstance(word, str):
            word = self.recursion.parse_word(word)
        word = reduce_word(word)
        return Element(self, self.intern_word(word), word)

    def identity(self):
        return Element(self, self.identity_id, ())

    def product(self, a, b):
        if a == self.identity_id:
            return b
        if b == self.identity_id:
            return a
        try:
            return self._prod_memo[(a, b)]
        except KeyError:
            pass

        def children(node):
            _, x, y = node
            out = []
            sx = self._perm[x]
            cx, cy = self._child[x], self._child[y]
            for letter in range(self.d):
                u, v = cx[letter], cy[sx[letter]]
                if u == self.identity_id:
                    out.append(v)
                elif v == self.identity_id:
                    out.append(u)
                else:
                    got = self._prod_memo.get((u, v))
                    out.append(got if got is not None else ("p", u, v))
            return tuple(out)

        def perm(node):
            _, x, y = node
            px, py = self._perm[x], self._perm[y]
            return tuple(py[px[i]] for i in range(self.d))

        def rep(node):
            _, x, y = node
            return reduce_word(self._rep[x] + self._rep[y])

        got = self._intern([("p", a, b)], perm, children, rep)
        for node, sid in got.items():
            self._prod_memo[(node[1], node[2])] = sid
        return self._prod_memo[(a, b)]

    def inverse(self, a):
        if a == self.identity_id:
            return a
        try:
            return self._inv_memo[a]
        except KeyError:
            pass

        def perm(node):
            p = self._perm[node[1]]
            inv = [0] * self.d
            for x, y in enumerate(p):
                inv[y] = x
            return tuple(inv)

        def children(node):
            s = node[1]
            p = self._perm[s]
            inv = [0] * self.d
            for x, y in enumerate(p):
                inv[y] = x
            out = []
            for letter in range(self.d):
                base = self._child[s][inv[letter]]
                if base == self.identity_id:
                    out.append(base)
                else:
                    got = self._inv_memo.get(base)
                    out.append(got if got is not None else ("i", base))
            return tuple(out)

        got = self._intern([("i", a)], perm, children,
                           lambda node: inverse_word(self._rep[node[1]]))
        for node, sid in got.items():
            self._inv_memo[node[1]] = sid
            self._inv_memo.setdefault(sid, node[1])
        return self._inv_memo[a]

    def equal(self, g, h, state_cap=None):
        """True iff g and h induce the same permutation of the word tree."""
        gw = g.word if isinstance(g, Element) else reduce_word(g)
        hw = h.word if isinstance(h, Element) else reduce_word(h)
        return self.is_trivial(reduce_word(gw + inverse_word(hw)), state_cap)

    # ----------------------------------------------------- action on vertices

    def act_id(self, state_id, w):
        out = []
        cur = state_id
        for ch in w:
            x = letter_value(ch)
            out.append(letter_char(self._perm[cur][x]))
            cur = self._child[cur][x]
        return "".join(out)

    def restrict_id(self, state_id, w):
        cur = state_id
        for ch in w:
            cur = self._child[cur][letter_value(ch)]
        return cur

    def act(self, g, w):
        """Image of vertex word w under g (Element, Word tuple, or string)."""
        if isinstance(g, Element):
            return self.act_id(g.id, w)
        if isinstance(g, str):
            g = self.recursion.parse_word(g)
        return self.act_id(self.intern_word(g), w)

    def restrict(self, g, v):
        """g|_v as an Element."""
        if not isinstance(g, Element):
            g = self.element(g)
        return g.restrict(v)

    # ------------------------------------------------------- nucleus machinery

    def close_under_restrictions(self, ids):
        """Smallest superset of ids closed under single-letter restriction."""
        out = set()
        stack = list(ids)
        while stack:
            s = stack.pop()
            if s in out:
                continue
            out.add(s)
            stack.extend(self._child[s])
        return out

    def _recurrent_part(self, root):
        """States visited at arbitrarily deep restriction levels below root."""
        reach = self.close_under_restrictions([root])
        graph = {s: set(self._child[s]) for s in sorted(reach)}
        index, low, on, order = {}, {}, set(), []
        sccs = []
        # iterative Tarjan over all reachable nodes
        for start in graph:
            if start in index:
                continue
            work = [(start, iter(sorted(graph[start])))]
            index[start] = low[start] = len(index)
            order.append(start)
            on.add(start)
            while work:
                node, it = work[-1]
                advanced = False
                for nxt in it:
                    if nxt not in index:
                        index[nxt] = low[nxt] = len(index)
                        order.append(nxt)
                        on.add(nxt)
                        work.append((nxt, iter(sorted(graph[nxt]))))
                        advanced = True
                        break
                    if nxt in on:
                        low[node] = min(low[node], index[nxt])
                if advanced:
                    continue
                work.pop()
                if work:
                    low[work[-1][0]] = min(low[work[-1][0]], low[node])
                if low[node] == index[node]:
                    comp = []
                    while True:
                        top = order.pop()
                        on.discard(top)
                        comp.append(top)
                        if top == node:
                            break
                    sccs.append(comp)
        cyclic = set()
        for comp in sccs:
            if len(comp) > 1 or comp[0] in graph[comp[0]]:
                cyclic.update(comp)
        persistent = set()
        stack = list(cyclic)
        while stack:
            s = stack.pop()
            if s in persistent:
                continue
            persistent.add(s)
            stack.extend(self._child[s])
        return persistent

    def compute_nucleus(self, max_rounds=DEFAULT_MAX_ROUNDS, state_cap=None):
        """The finite absorbing set of a contracting action.

        Iterates "adjoin the eventually-recurrent restriction states of every
        pairwise product" from the restriction closure of the symmetrized
        generators until stable, then keeps the union of those recurrent
        parts (which coincides with the stable set whenever the generators
        themselves recur).
        """
        if self._nucleus is not None:
            return self._nucleus
        if state_cap:
            self.state_cap = max(self.state_cap, state_cap)
        seed = set(self._symbol_ids.values())
        seed.add(self.identity_id)
        current = self.close_under_restrictions(seed)
        for _ in range(max_rounds):
            members = sorted(current)
            recurrent = set()
            for g in members:
                for h in members:
                    recurrent |= self._recurrent_part(self.product(g, h))
            if recurrent <= current:
                elements = tuple(
                    Element(self, sid, self._rep[sid])
                    for sid in sorted(recurrent,
                                      key=lambda s: (len(self._rep[s]),
                                                     self._rep[s], s)))
                self._nucleus = Nucleus(elements, frozenset(recurrent))
                return self._nucleus
            current |= recurrent
        raise NotContractingWithinBound(
            f"nucleus iteration still growing after {max_rounds} rounds "
            f"({len(current)} states)")

    def nucleus_ids(self):
        return self.compute_nucleus().ids

    # ------------------------------------------------------------ balls, magic

    def good_symbols(self):
        """Ids of the closed symmetric edge set: closure of S u S^-1 u nucleus.

        Closed under restriction and inverse, contains every nucleus element;
        the identity is excluded (it labels no edge).  Order is deterministic:
        declared symbols first, then closure discoveries, then nucleus extras.
        """
        if self._good is not None:
            return self._good
        ordered = []
        seen = set()

        def add(sid):
            if sid not in seen and sid != self.identity_id:
                seen.add(sid)
                ordered.append(sid)

        declared = [self._symbol_ids[k] for i in range(1, len(self.recursion.generators) + 1)
                    for k in (i, -i)]
        for sid in declared:
            add(sid)
        frontier = list(ordered)
        while frontier:
            nxt = []
            for sid in frontier:
                for kid in self._child[sid]:
                    if kid not in seen and kid != self.identity_id:
                        add(kid)
                        nxt.append(kid)
            frontier = nxt
        for el in self.compute_nucleus().elements:
            add(el.id)
        self._good = tuple(ordered)
        return self._good

    def good_names(self):
        return tuple(self.name_of(s) for s in self.good_symbols())

    def ball_ids(self, radius, basis=None):
        """Canonical ids of all elements of word norm <= radius."""
        basis = tuple(basis) if basis is not None else self.good_symbols()
        key = (radius, basis)
        try:
            return self._ball_cache[key]
        except KeyError:
            pass
        dist = {self.identity_id: 0}
        frontier = [self.identity_id]
        for r in range(1, radius + 1):
            nxt = []
            for g in frontier:
                for s in basis:
                    p = self.product(g, s)
                    if p not in dist:
                        dist[p] = r
                        nxt.append(p)
            frontier = nxt
        out = tuple(sorted(dist))
        self._ball_cache[key] = out
        return out

    def group_ball(self, radius):
        """All distinct elements of norm <= radius (norm w.r.t. good symbols)."""
        return [Element(self, sid, self._rep[sid])
                for sid in self.ball_ids(radius)]

    def element_magic(self, state_id, max_depth=400):
        """Least m with every depth-m restriction inside the nucleus."""
        try:
            return self._magic_memo[state_id]
        except KeyError:
            pass
        nucleus = self.nucleus_ids()
        frontier = {state_id}
        m = 0
        while not frontier <= nucleus:
            frontier = {kid for s in frontier for kid in self._child[s]}
            m += 1
            if m > max_depth:
                raise NotContractingWithinBound(
                    f"restrictions not absorbed after {max_depth} levels")
        self._magic_memo[state_id] = m
        return m

    def magic_level(self, radius):
        """max m(g) over the ball of the given radius; m(0) = 0."""
        if radius == 0:
            return 0
        return max(self.element_magic(s) for s in self.ball_ids(radius))
