"""Weighted hypergraphs on vertices {0, ..., n-1} with bitmask-keyed weights."""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import frac_str
from .rng import SplitMix64

MAX_VERTICES = 12
WEIGHT_LAWS = ("uniform01", "unit", "exponential")
# exact-mode draws are quantised to this grid so weights stay rational
EXACT_GRID = 16


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for x in vertices:
        mask |= 1 << x
    return mask


def vertices_of(mask: int) -> list[int]:
    out = []
    x = 0
    while mask >> x:
        if mask >> x & 1:
            out.append(x)
        x += 1
    return out


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count must be in [1, {MAX_VERTICES}], got {n}")


@dataclass(frozen=True)
class Hypergraph:
    """n vertices plus a weight on each subset (absent key = weight 0).

    Weights are all ``Fraction`` (exact) or all ``float``.  Construction does
    not reject negative weights so that ``validate`` can report them.
    """

    n: int
    weights: Mapping[int, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_n(self.n)
        clean = {int(b): w for b, w in sorted(self.weights.items()) if w != 0}
        object.__setattr__(self, "weights", clean)

    @property
    def exact(self) -> bool:
        return all(isinstance(w, (int, Fraction)) for w in self.weights.values())

    def items(self):
        return self.weights.items()

    def weight(self, B) -> object:
        mask = B if isinstance(B, int) else mask_of(B)
        return self.weights.get(mask, 0)

    def total_weight(self):
        return sum(self.weights.values(), Fraction(0) if self.exact else 0.0)

    def as_exact(self) -> "Hypergraph":
        return Hypergraph(self.n, {b: Fraction(w) for b, w in self.weights.items()})

    def as_float(self) -> "Hypergraph":
        return Hypergraph(self.n, {b: float(w) for b, w in self.weights.items()})

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Image under the vertex map x -> perm[x]."""
        return Hypergraph(self.n, {mask_of(perm[x] for x in vertices_of(b)): w for b, w in self.weights.items()})

    def to_json(self) -> dict:
        edges = []
        for b, w in self.weights.items():
            val = frac_str(w) if isinstance(w, (int, Fraction)) else float(w)
            edges.append({"B": [x + 1 for x in vertices_of(b)], "w": val})
        return {"n": self.n, "edges": edges}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()[:16]


@dataclass(frozen=True)
class PhiProfile:
    per_vertex: tuple
    minimum: object


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple = ()
    notes: tuple = ()


def validate(graph: Hypergraph) -> ValidationReport:
    violations = []
    notes = []
    for b, w in graph.weights.items():
        if b < 0 or b >> graph.n:
            violations.append(f"subset mask {b} does not fit in {graph.n} bits")
            continue
        if w < 0:
            violations.append(f"negative weight {w} on {[x + 1 for x in vertices_of(b)]}")
        elif popcount(b) <= 1:
            notes.append(f"weight on {[x + 1 for x in vertices_of(b)]} has no effect (|B| <= 1)")
    return ValidationReport(not violations, tuple(violations), tuple(notes))


def is_connected(graph: Hypergraph) -> bool:
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b, w in graph.weights.items():
        if w <= 0 or popcount(b) < 2:
            continue
        vs = vertices_of(b)
        root = find(vs[0])
        for v in vs[1:]:
            parent[find(v)] = root
    return len({find(x) for x in range(graph.n)}) == 1


def phi(graph: Hypergraph) -> PhiProfile:
    zero = Fraction(0) if graph.exact else 0.0
    per = [zero] * graph.n
    for b, w in graph.weights.items():
        for x in vertices_of(b):
            per[x] += w
    return PhiProfile(tuple(per), min(per))


# --- generators ------------------------------------------------------------------


def _nonneg(values: Sequence, what: str) -> None:
    for i, v in enumerate(values):
        if v < 0:
            raise ValueError(f"{what}[{i}] = {v} is negative")


def mean_field(n: int, c: Sequence) -> Hypergraph:
    """w_B = c[|B|] for every subset B; ``c`` lists c_0..c_n."""
    _check_n(n)
    if len(c) != n + 1:
        raise ValueError(f"expected {n + 1} coefficients c_0..c_n, got {len(c)}")
    _nonneg(c, "c")
    return Hypergraph(n, {b: c[popcount(b)] for b in range(1 << n) if c[popcount(b)] != 0})


def codim1(n: int, c: Sequence) -> Hypergraph:
    """Weight c[x] on the complement of vertex x; ``c`` lists c_1..c_n."""
    _check_n(n)
    if len(c) != n:
        raise ValueError(f"expected {n} weights, got {len(c)}")
    _nonneg(c, "c")
    full = (1 << n) - 1
    return Hypergraph(n, {full ^ (1 << x): c[x] for x in range(n) if c[x] != 0})


def gamma_ell(n: int, ell: int) -> Hypergraph:
    """Weight 1 on every subset of size ell."""
    if not 0 <= ell <= n:
        raise ValueError(f"need 0 <= ell <= n, got ell={ell}, n={n}")
    c = [Fraction(0)] * (n + 1)
    c[ell] = Fraction(1)
    return mean_field(n, c)


def subsets_in_order(n: int, min_size: int = 2) -> list[int]:
    """Subsets of size >= min_size, by size then lexicographically (the draw order)."""
    out = []
    for size in range(min_size, n + 1):
        for combo in itertools.combinations(range(n), size):
            out.append(mask_of(combo))
    return out


def draw_weight(rng: SplitMix64, law: str, exact: bool):
    if law == "unit":
        return Fraction(1) if exact else 1.0
    if law == "uniform01":
        if exact:
            return Fraction(rng.randint(1, EXACT_GRID), EXACT_GRID)
        return 1.0 - rng.uniform()  # in (0, 1]
    if law == "exponential":
        x = rng.exponential()
        if exact:
            return Fraction(max(1, round(x * EXACT_GRID)), EXACT_GRID)
        return x
    raise ValueError(f"unknown weight law {law!r}; choose from {WEIGHT_LAWS}")


def random_hypergraph(n: int, p: float, weight_law: str = "uniform01", seed: int | SplitMix64 = 0,
                      exact: bool = False) -> Hypergraph:
    """Each subset of size >= 2 kept with probability p, weights drawn from ``weight_law``.

    One uniform draw decides inclusion of each subset; a weight is drawn
    only for included subsets.
    """
    _check_n(n)
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    if weight_law not in WEIGHT_LAWS:
        raise ValueError(f"unknown weight law {weight_law!r}; choose from {WEIGHT_LAWS}")
    rng = seed if isinstance(seed, SplitMix64) else SplitMix64(seed)
    weights = {}
    for b in subsets_in_order(n):
        if rng.uniform() < p:
            weights[b] = draw_weight(rng, weight_law, exact)
    return Hypergraph(n, weights)


# --- JSON -------------------------------------------------------------------------


class HypergraphParseError(ValueError):
    pass


def from_json(data: Mapping | str, exact: bool | None = None) -> Hypergraph:
    """Parse the file format ``{"n": 3, "edges": [{"B": [1, 2], "w": "1/2"}]}``.

    Vertices are 1-based in the file.  Weights may be numbers or "p/q"
    strings.  With ``exact=None`` the mode is inferred: any float literal
    forces float mode.  ``exact=True`` rejects float literals.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise HypergraphParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, Mapping) or "n" not in data:
        raise HypergraphParseError('expected an object with keys "n" and "edges"')
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise HypergraphParseError('"n" must be an integer')
    try:
        _check_n(n)
    except ValueError as exc:
        raise HypergraphParseError(str(exc)) from exc
    parsed = []
    saw_float = False
    for i, edge in enumerate(data.get("edges", [])):
        try:
            verts = edge["B"]
            raw = edge["w"]
        except (KeyError, TypeError) as exc:
            raise HypergraphParseError(f"edge {i}: needs keys \"B\" and \"w\"") from exc
        if any(not isinstance(v, int) or not 1 <= v <= n for v in verts):
            raise HypergraphParseError(f"edge {i}: vertices must be integers in [1, {n}]")
        if len(set(verts)) != len(verts):
            raise HypergraphParseError(f"edge {i}: repeated vertex")
        if isinstance(raw, bool):
            raise HypergraphParseError(f"edge {i}: weight must be a number or a \"p/q\" string")
        if isinstance(raw, float):
            saw_float = True
            val = raw
        elif isinstance(raw, int):
            val = Fraction(raw)
        elif isinstance(raw, str):
            try:
                val = Fraction(raw.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise HypergraphParseError(f"edge {i}: cannot parse weight {raw!r}") from exc
        else:
            raise HypergraphParseError(f"edge {i}: weight must be a number or a \"p/q\" string")
        parsed.append((mask_of(v - 1 for v in verts), val))
    if exact and saw_float:
        raise HypergraphParseError("float weights are not allowed in exact mode; use \"p/q\" strings")
    use_float = saw_float if exact is None else not exact
    weights: dict[int, object] = {}
    for mask, val in parsed:
        val = float(val) if use_float else Fraction(val)
        weights[mask] = weights.get(mask, 0) + val
    return Hypergraph(n, weights)


def load(path: str, exact: bool | None = None) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return from_json(fh.read(), exact)
