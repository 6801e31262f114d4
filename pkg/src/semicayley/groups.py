"""Finite groups given by multiplication tables, and multisets of group elements.

Elements are the integers ``0..n-1`` with ``0`` the identity. Built-in families
are generated by breadth-first closure from their generators, so element
order is deterministic and labels follow the usual presentation notation
(``a^2``, ``ba^3``, cycle notation for permutation groups).
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from . import kernels

DEFAULT_ORDER_CAP = 512
MAX_PERMUTATION_DEGREE = 16


class GroupError(ValueError):
    """Invalid group description."""


def units_mod(m: int) -> list[int]:
    """Sorted units of Z/mZ; for m = 1 the trivial unit group ``[1]``."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return [1]
    return [t for t in range(1, m) if math.gcd(t, m) == 1]


def euler_phi(m: int) -> int:
    return len(units_mod(m))


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ConjugacyClassSet:
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    representatives: tuple[int, ...]

    def __len__(self):
        return len(self.classes)

    @cached_property
    def sizes(self) -> np.ndarray:
        return _readonly([len(c) for c in self.classes])


class FiniteGroup:
    """A finite group stored as its Cayley table.

    ``mul[a, b]`` is the index of ``a*b``. Instances are immutable; derived
    data (inverses, conjugacy classes, power maps) is computed lazily.
    """

    def __init__(self, mul, labels: Sequence[str] | None = None, name: str = "",
                 perms: Sequence[tuple[int, ...]] | None = None, spec: Mapping | None = None):
        mul = np.asarray(mul, dtype=np.int64)
        n = mul.shape[0]
        if mul.shape != (n, n) or n == 0:
            raise GroupError("multiplication table must be a non-empty square array")
        self.mul = _readonly(mul)
        self.order = n
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise GroupError("labels must be distinct, one per element")
        self.name = name or f"G{n}"
        self.perms = tuple(perms) if perms is not None else None
        self.spec = dict(spec) if spec is not None else None
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def __len__(self):
        return self.order

    # -- basic structure -----------------------------------------------------

    @cached_property
    def inv(self) -> np.ndarray:
        rows, cols = np.nonzero(self.mul == 0)
        inv = np.empty(self.order, np.int64)
        inv[rows] = cols
        return _readonly(inv)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.ones(n, np.int64)
        cur = np.arange(n)
        done = cur == 0
        k = 1
        while not done.all():
            cur = self.mul[cur, np.arange(n)]
            k += 1
            newly = (cur == 0) & ~done
            orders[newly] = k
            done |= newly
        orders[0] = 1
        return _readonly(orders)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, (int(o) for o in self.element_orders), 1)

    @cached_property
    def power_table(self) -> np.ndarray:
        """``power_table[x, k] = x**k`` for ``0 <= k < exponent``."""
        n, m = self.order, self.exponent
        pt = np.zeros((n, m), np.int64)
        cur = np.zeros(n, np.int64)
        ar = np.arange(n)
        for k in range(m):
            pt[:, k] = cur
            cur = self.mul[cur, ar]
        return _readonly(pt)

    def power(self, x: int, k: int) -> int:
        return int(self.power_table[x, k % self.exponent])

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    @cached_property
    def conjugacy(self) -> ConjugacyClassSet:
        return conjugacy_classes(self)

    # -- labels --------------------------------------------------------------

    def index(self, label) -> int:
        """Element index for a label (cycle notation is parsed for permutation groups)."""
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.order:
                return int(label)
            raise GroupError(f"element index {label} out of range")
        key = str(label).strip()
        for k in (key, re.sub(r"\s+", "", key)):
            if k in self._index:
                return self._index[k]
        if key in ("1", "1_G", "id", "e", "identity", "()"):
            return 0
        if self.perms is not None and key.startswith("("):
            try:
                perm = parse_cycles(key, len(self.perms[0]))
            except GroupError:
                perm = None
            if perm is not None and perm in self._perm_index:
                return self._perm_index[perm]
        raise GroupError(f"unknown element label {label!r} in {self.name}")

    @cached_property
    def _perm_index(self):
        return {p: i for i, p in enumerate(self.perms)}

    # -- validation ----------------------------------------------------------

    def check_axioms(self, samples: int = 20000, seed: int = 0) -> None:
        """Raise GroupError unless the table is a group with identity 0."""
        validate_table(self.mul, samples=samples, seed=seed)


def validate_table(mul, samples: int = 20000, seed: int = 0) -> None:
    mul = np.asarray(mul, dtype=np.int64)
    n = mul.shape[0]
    if mul.shape != (n, n):
        raise GroupError("table must be square")
    if mul.min() < 0 or mul.max() >= n:
        raise GroupError("table entries out of range")
    ar = np.arange(n)
    if not ((mul[0] == ar).all() and (mul[:, 0] == ar).all()):
        raise GroupError("element 0 must be the identity")
    for row in mul:
        if len(set(row.tolist())) != n:
            raise GroupError("table is not a Latin square (no inverses)")
    if n <= 24:
        left = mul[mul, :]            # (a*b)*c indexed [a, b, c]
        right = mul[:, mul]           # a*(b*c) indexed [a, b, c]
        if not (left == right).all():
            raise GroupError("table is not associative")
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        if not (mul[mul[a, b], c] == mul[a, mul[b, c]]).all():
            raise GroupError("table is not associative")


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClassSet:
    """Orbits of conjugation; each class is represented by its least element."""
    n = G.order
    ar = np.arange(n)
    # conj[h, g] = h^-1 g h
    conj = G.mul[G.mul[G.inv], ar[:, None]]
    class_of = np.full(n, -1, np.int64)
    classes = []
    for g in range(n):
        if class_of[g] >= 0:
            continue
        orbit = np.unique(conj[:, g])
        class_of[orbit] = len(classes)
        classes.append(tuple(int(x) for x in orbit))
    reps = tuple(c[0] for c in classes)
    return ConjugacyClassSet(tuple(classes), _readonly(class_of), reps)


def exponent(G: FiniteGroup) -> int:
    return G.exponent


# ---------------------------------------------------------------------------
# construction


def closure(gens: Sequence[Hashable], op: Callable, identity: Hashable,
            cap: int = DEFAULT_ORDER_CAP) -> list:
    """Breadth-first closure of ``gens`` under right multiplication."""
    elements = [identity]
    seen = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = op(x, g)
            if y not in seen:
                if len(elements) >= cap:
                    raise GroupError(f"group order exceeds cap {cap}")
                seen[y] = len(elements)
                elements.append(y)
                queue.append(y)
    return elements


def _table_from_elements(elements: list, op: Callable) -> np.ndarray:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    mul = np.empty((n, n), np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            mul[i, j] = index[op(x, y)]
    return mul


def group_from_elements(elements: list, op: Callable, labels: Callable[[Hashable], str],
                        name: str, **kw) -> FiniteGroup:
    return FiniteGroup(_table_from_elements(elements, op),
                       [labels(e) for e in elements], name=name, **kw)


def _compose(p, q):
    # apply p first, then q
    return tuple(q[i] for i in p)


def format_cycles(perm: tuple[int, ...]) -> str:
    """Cycle notation on points 1..n, e.g. ``(1 2 3)(4 5)``; identity is ``()``."""
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(out) or "()"


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse cycle notation such as ``(12)(34)``, ``(1 2 3)`` or ``(1,10)``."""
    text = text.strip()
    if text in ("()", "", "id", "e", "1"):
        return tuple(range(degree))
    if not re.fullmatch(r"(\([^()]*\))+", text.replace(" ", "")):
        raise GroupError(f"bad cycle notation {text!r}")
    perm = list(range(degree))
    for body in re.findall(r"\(([^()]*)\)", text):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[\s,]", body):
            pts = [int(t) for t in re.split(r"[\s,]+", body) if t]
        else:
            pts = [int(ch) for ch in body]
        if any(p < 1 or p > degree for p in pts) or len(set(pts)) != len(pts):
            raise GroupError(f"bad cycle {body!r} for degree {degree}")
        # cycles compose left to right: apply the earlier one first
        cyc = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a - 1] = b - 1
        perm = list(_compose(tuple(perm), tuple(cyc)))
    return tuple(perm)


def permutation_group(generators: Sequence, degree: int | None = None, name: str = "",
                      cap: int = DEFAULT_ORDER_CAP, spec: Mapping | None = None) -> FiniteGroup:
    """Group generated by permutations (cycle-notation strings or image tuples)."""
    if degree is None:
        degree = 0
        for g in generators:
            if isinstance(g, str):
                nums = [int(t) for t in re.findall(r"\d+", g)] if re.search(r"[\s,]", g) \
                    else [int(ch) for ch in g if ch.isdigit()]
                degree = max([degree, *nums])
            else:
                degree = max(degree, len(g))
        degree = max(degree, 1)
    if degree > MAX_PERMUTATION_DEGREE:
        raise GroupError(f"permutation degree {degree} exceeds {MAX_PERMUTATION_DEGREE}")
    gens = []
    for g in generators:
        if isinstance(g, str):
            gens.append(parse_cycles(g, degree))
        else:
            g = tuple(int(x) for x in g)
            if sorted(g) != list(range(degree)):
                raise GroupError(f"{g} is not a permutation of 0..{degree - 1}")
            gens.append(g)
    elements = closure(gens, _compose, tuple(range(degree)), cap)
    return group_from_elements(elements, _compose, format_cycles, name or f"Perm({len(elements)})",
                               perms=elements, spec=spec)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    mul = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(mul, [str(i) for i in range(n)], name=f"Z{n}",
                       spec={"kind": "cyclic", "params": {"n": n}})


def abelian_group(invariants: Sequence[int], cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Z_{n1} x ... x Z_{nk}; labels are tuples like ``(1,0)``."""
    inv = tuple(int(k) for k in invariants)
    if not inv or any(k < 1 for k in inv):
        raise GroupError("invariant factors must be positive")
    if math.prod(inv) > cap:
        raise GroupError(f"group order exceeds cap {cap}")
    if len(inv) == 1:
        G = cyclic_group(inv[0])
        return G
    zero = tuple(0 for _ in inv)
    gens = [tuple(1 if i == j else 0 for i in range(len(inv))) for j in range(len(inv))]

    def op(x, y):
        return tuple((a + b) % k for a, b, k in zip(x, y, inv))

    elements = closure(gens, op, zero, cap)
    return group_from_elements(elements, op, lambda e: "(" + ",".join(map(str, e)) + ")",
                               "x".join(f"Z{k}" for k in inv),
                               spec={"kind": "abelian", "params": {"invariants": list(inv)}})


def _dihedral_label(e):
    s, i = e
    a = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
    if s == 0:
        return a or "1"
    return "b" + a


def dihedral_group(n: int) -> FiniteGroup:
    """D_{2n} = <a, b | a^n = b^2 = (ab)^2 = 1>, elements b^s a^i labelled ``a^i``/``ba^i``."""
    if n < 1:
        raise GroupError("dihedral parameter must be positive")

    def op(x, y):
        s, i = x
        t, j = y
        return ((s + t) % 2, ((-i if t else i) + j) % n)

    elements = closure([(0, 1 % n), (1, 0)], op, (0, 0))
    return group_from_elements(elements, op, _dihedral_label, f"D{2 * n}",
                               spec={"kind": "dihedral", "params": {"n": n}})


def dicyclic_group(n: int) -> FiniteGroup:
    """Dic_n = <a, x | a^{2n} = 1, x^2 = a^n, x^-1 a x = a^-1> of order 4n (Q8 for n = 2)."""
    if n < 2:
        raise GroupError("dicyclic parameter must be >= 2")
    N = 2 * n

    def op(u, v):
        i, j = u
        k, l = v
        if j == 0:
            return ((i + k) % N, l)
        if l == 0:
            return ((i - k) % N, 1)
        return ((i - k + n) % N, 0)

    def label(e):
        i, j = e
        a = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
        if j == 0:
            return a or "1"
        return a + "x"

    elements = closure([(1, 0), (0, 1)], op, (0, 0))
    name = "Q8" if n == 2 else f"Dic{4 * n}"
    return group_from_elements(elements, op, label, name,
                               spec={"kind": "dicyclic", "params": {"n": n}})


def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise GroupError("built-in symmetric groups are limited to degree <= 5")
    gens = ["(1 2)", "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"] if n >= 2 else []
    return permutation_group(gens, degree=n, name=f"S{n}",
                             spec={"kind": "symmetric", "params": {"n": n}})


def alternating_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise GroupError("built-in alternating groups are limited to degree <= 5")
    if n < 3:
        gens = []
    elif n == 3:
        gens = ["(1 2 3)"]
    elif n == 4:
        gens = ["(1 2)(3 4)", "(1 2 3)"]
    else:
        gens = ["(1 2 3)", "(1 2 3 4 5)"]
    return permutation_group(gens, degree=n, name=f"A{n}",
                             spec={"kind": "alternating", "params": {"n": n}})


def table_group(table, labels: Sequence[str] | None = None, name: str = "") -> FiniteGroup:
    mul = np.asarray(table, dtype=np.int64)
    validate_table(mul)
    return FiniteGroup(mul, labels, name=name or f"Table({mul.shape[0]})",
                       spec={"kind": "table", "params": {"table": mul.tolist(),
                                                          **({"labels": list(labels)} if labels else {})}})


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, k = G.order, H.order
    idx = np.arange(n * k)
    gi, hi = idx // k, idx % k
    mul = G.mul[gi[:, None], gi[None, :]] * k + H.mul[hi[:, None], hi[None, :]]
    labels = [f"({G.labels[g]},{H.labels[h]})" for g, h in zip(gi, hi)]
    return FiniteGroup(mul, labels, name=f"{G.name}x{H.name}",
                       spec={"kind": "product", "params": {"factors": [G.spec, H.spec]}})


def _word_label(j: int, i: int, b: str = "b", a: str = "a") -> str:
    bp = "" if j == 0 else (b if j == 1 else f"{b}^{j}")
    ap = "" if i == 0 else (a if i == 1 else f"{a}^{i}")
    return (bp + ap) or "1"


def metacyclic_group(n: int, k: int, r: int, s: int = 0) -> FiniteGroup:
    """<a, b | a^n = 1, b^k = a^s, b^-1 a b = a^r>, elements b^j a^i.

    Needs r^k = 1 and s(r - 1) = 0 mod n; both are checked.
    """
    if n < 1 or k < 1:
        raise GroupError("metacyclic parameters must be positive")
    r %= n
    s %= n
    if pow(r, k, n) != 1 % n or (s * (r - 1)) % n:
        raise GroupError(f"inconsistent metacyclic relations n={n}, k={k}, r={r}, s={s}")
    rp = [pow(r, q, n) for q in range(k)]

    def op(x, y):
        j, i = x
        q, l = y
        e = (i * rp[q] + l) % n
        t = j + q
        if t >= k:
            t -= k
            e = (e + s) % n  # b^k = a^s
        return (t, e)

    elements = closure([(0, 1 % n), (1 % k, 0)], op, (0, 0))
    G = group_from_elements(elements, op, lambda e: _word_label(*e), f"Meta({n},{k},{r},{s})",
                            spec={"kind": "metacyclic", "params": {"n": n, "k": k, "r": r, "s": s}})
    if G.order != n * k:
        raise GroupError(f"metacyclic relations collapse the group to order {G.order}")
    validate_table(G.mul)
    return G


def semidirect_product(N: FiniteGroup, H: FiniteGroup, action: Mapping) -> FiniteGroup:
    """N x| H with h acting on N; ``action`` maps generators of H to automorphisms of N.

    Automorphisms are given as element maps (label -> label, or a list of
    images indexed by N's elements). Pairs (x, h) multiply as
    (x, h)(y, k) = (x * h(y), hk).
    """
    auts = {}
    for hl, img in action.items():
        h = H.index(hl)
        if isinstance(img, Mapping):
            perm = np.arange(N.order)
            for src, dst in img.items():
                perm[N.index(src)] = N.index(dst)
        else:
            perm = np.array([N.index(v) for v in img], np.int64)
        if sorted(perm.tolist()) != list(range(N.order)):
            raise GroupError(f"action of {hl} is not a bijection")
        if not np.array_equal(perm[N.mul], N.mul[perm[:, None], perm[None, :]]):
            raise GroupError(f"action of {hl} is not an automorphism")
        auts[h] = perm
    phi = {0: np.arange(N.order)}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, pg in auts.items():
            y = int(H.mul[x, g])
            cand = phi[x][pg]
            if y in phi:
                if not np.array_equal(phi[y], cand):
                    raise GroupError("action is not a homomorphism")
            else:
                phi[y] = cand
                queue.append(y)
    if len(phi) != H.order:
        raise GroupError("action generators do not generate the acting group")
    k = H.order
    idx = np.arange(N.order * k)
    xi, hi = idx // k, idx % k
    mul = np.empty((len(idx), len(idx)), np.int64)
    for a in idx:
        x, h = xi[a], hi[a]
        mul[a] = N.mul[x, phi[int(h)][xi]] * k + H.mul[h, hi]
    labels = [f"({N.labels[x]},{H.labels[h]})" for x, h in zip(xi, hi)]
    validate_table(mul)
    return FiniteGroup(mul, labels, name=f"{N.name}:{H.name}",
                       spec={"kind": "semidirect", "params": {"normal": N.spec, "acting": H.spec,
                                                               "action": {H.labels[h]: [N.labels[int(v)] for v in p]
                                                                          for h, p in auts.items()}}})


def matrix_group(generators: Sequence, modulus: int, name: str = "", cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Group generated by invertible square matrices over Z/modulus."""
    q = int(modulus)
    gens = [tuple(tuple(int(v) % q for v in row) for row in g) for g in generators]
    if not gens:
        raise GroupError("matrix group needs at least one generator")
    d = len(gens[0])
    ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))

    def op(x, y):
        return tuple(tuple(sum(x[i][t] * y[t][j] for t in range(d)) % q for j in range(d))
                     for i in range(d))

    elements = closure(gens, op, ident, cap)

    def label(e):
        return "[" + "; ".join(" ".join(str(v) for v in row) for row in e) + "]"

    return group_from_elements(elements, op, label, name or f"Mat{d}(Z/{q})",
                               spec={"kind": "matrix", "params": {"generators": [list(map(list, g)) for g in gens],
                                                                   "modulus": q}})


def build_group(spec: Mapping, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from ``{"kind": ..., "params": {...}}``.

    Kinds: cyclic(n), abelian(invariants), dihedral(n) (order 2n), dicyclic(n),
    quaternion, symmetric(n), alternating(n), permutation(generators[, degree]),
    table(table[, labels]), product(factors), metacyclic(n, k, r[, s]),
    semidirect(normal, acting, action), matrix(generators, modulus).
    """
    kind = str(spec.get("kind", "")).lower()
    params = dict(spec.get("params") or {})
    if kind == "cyclic":
        G = cyclic_group(int(params["n"]))
    elif kind == "abelian":
        G = abelian_group(params["invariants"], cap)
    elif kind == "dihedral":
        G = dihedral_group(int(params["n"]))
    elif kind == "dicyclic":
        G = dicyclic_group(int(params["n"]))
    elif kind == "quaternion":
        G = dicyclic_group(2)
    elif kind == "symmetric":
        G = symmetric_group(int(params["n"]))
    elif kind == "alternating":
        G = alternating_group(int(params["n"]))
    elif kind == "permutation":
        G = permutation_group(params["generators"], params.get("degree"), cap=cap,
                              name=params.get("name", ""),
                              spec={"kind": "permutation", "params": params})
    elif kind == "table":
        G = table_group(params["table"], params.get("labels"), params.get("name", ""))
    elif kind == "product":
        factors = [build_group(f, cap) for f in params["factors"]]
        G = reduce(direct_product, factors)
    elif kind == "metacyclic":
        G = metacyclic_group(int(params["n"]), int(params["k"]), int(params["r"]), int(params.get("s", 0)))
    elif kind == "semidirect":
        G = semidirect_product(build_group(params["normal"], cap), build_group(params["acting"], cap),
                               params["action"])
    elif kind == "matrix":
        G = matrix_group(params["generators"], params["modulus"], params.get("name", ""), cap)
    else:
        raise GroupError(f"unknown group kind {kind!r}")
    if G.order > cap:
        raise GroupError(f"group order {G.order} exceeds cap {cap}")
    G.spec = {"kind": kind, "params": params}
    return G


# ---------------------------------------------------------------------------
# multisets


class GMultiset:
    """Multiset of elements of a FiniteGroup, stored as a count vector."""

    __slots__ = ("group", "counts", "_key")

    def __init__(self, group: FiniteGroup, counts):
        counts = np.array(counts, dtype=np.int64)
        if counts.shape != (group.order,):
            raise ValueError("count vector length must equal the group order")
        if (counts < 0).any():
            raise ValueError("multiplicities must be non-negative")
        counts.setflags(write=False)
        self.group = group
        self.counts = counts
        self._key = None

    @classmethod
    def empty(cls, group):
        return cls(group, np.zeros(group.order, np.int64))

    @classmethod
    def from_elements(cls, group, elements: Iterable, multiplicity: int = 1):
        c = np.zeros(group.order, np.int64)
        for e in elements:
            c[group.index(e)] += multiplicity
        return cls(group, c)

    @classmethod
    def from_classes(cls, group, class_indices: Iterable[int]):
        cc = group.conjugacy
        c = np.zeros(group.order, np.int64)
        for i in class_indices:
            c[list(cc.classes[i])] = 1
        return cls(group, c)

    # -- views -----------------------------------------------------------------

    @property
    def size(self) -> int:
        return int(self.counts.sum())

    def __len__(self):
        return self.size

    def __bool__(self):
        return bool(self.counts.any())

    def support(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.counts)]

    def is_set(self) -> bool:
        return bool((self.counts <= 1).all())

    def items(self):
        return [(int(i), int(self.counts[i])) for i in np.flatnonzero(self.counts)]

    def class_counts(self) -> np.ndarray:
        """Total multiplicity carried by each conjugacy class."""
        cc = self.group.conjugacy
        return np.bincount(cc.class_of, weights=self.counts, minlength=len(cc)).astype(np.int64)

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.counts.tobytes()
        return self._key

    def __eq__(self, other):
        if not isinstance(other, GMultiset):
            return NotImplemented
        return self.group is other.group and np.array_equal(self.counts, other.counts)

    def __hash__(self):
        return hash((id(self.group), self.key()))

    def __repr__(self):
        labels = self.group.labels
        body = ", ".join(lab if c == 1 else f"{c}*{lab}" for lab, c in
                         ((labels[i], c) for i, c in self.items()))
        return f"[{body}]"

    # -- algebra -----------------------------------------------------------------

    def _check(self, other):
        if other.group is not self.group:
            raise ValueError("multisets belong to different groups")

    def union(self, other):
        """Multiset union: multiplicities add."""
        self._check(other)
        return GMultiset(self.group, self.counts + other.counts)

    __or__ = union

    def scale(self, k: int):
        """``k*X``."""
        if k < 0:
            raise ValueError("scale factor must be non-negative")
        return GMultiset(self.group, self.counts * k)

    def __rmul__(self, k: int):
        return self.scale(k)

    def __mul__(self, other):
        if isinstance(other, GMultiset):
            return mset_product(self, other)
        return self.scale(other)

    def __pow__(self, t: int):
        return mset_power(self, t)

    def __sub__(self, other):
        return mset_diff(self, other)

    def inverse(self):
        """``X^{-1}``."""
        return GMultiset(self.group, kernels.mset_image(self.group.inv, self.counts))


def mset_product(X: GMultiset, Y: GMultiset) -> GMultiset:
    X._check(Y)
    G = X.group
    return GMultiset(G, kernels.mset_product(G.mul, X.counts, Y.counts))


def mset_power(X: GMultiset, t: int) -> GMultiset:
    if t < 1:
        raise ValueError("power must be a positive integer")
    G = X.group
    return GMultiset(G, kernels.mset_image(G.power_table[:, t % G.exponent], X.counts))


def mset_diff(X: GMultiset, Y: GMultiset) -> GMultiset:
    X._check(Y)
    return GMultiset(X.group, np.maximum(X.counts - Y.counts, 0))


def is_conjugate_closed(X: GMultiset) -> bool:
    cc = X.group.conjugacy
    c = X.counts
    return bool((c == c[np.asarray(cc.representatives)][cc.class_of]).all())


def split_class_witness(X: GMultiset) -> int | None:
    """An element whose multiplicity differs from its class representative's, if any."""
    cc = X.group.conjugacy
    c = X.counts
    bad = np.flatnonzero(c != c[np.asarray(cc.representatives)][cc.class_of])
    return int(bad[0]) if bad.size else None


def class_unions(G: FiniteGroup, max_classes: int | None = None) -> list[tuple[int, ...]]:
    """All sets of class indices of size <= max_classes (all unions if None), empty first."""
    r = len(G.conjugacy)
    top = r if max_classes is None else min(r, max_classes)
    return [c for k in range(top + 1) for c in itertools.combinations(range(r), k)]
