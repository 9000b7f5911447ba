"""Enumeration of the structure graph and the identity verification suites.

Vertices are canonical structure keys; edges are graft moves and
elementary moves (meridian twists where the meridian meets the real
curves exactly twice). The breadth-first closure under a bounded
generator family is deterministic for fixed inputs: frontier expansion
may fan out over worker threads, but results are merged in a fixed
order, and exports sort everything by key, so repeated builds are
byte-identical regardless of scheduling.
"""

from __future__ import annotations

import hashlib
import inspect
import json
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import BadConfiguration, NotAdmissible, OddMultiplicity, UnknownSuite
from .torus import Mode, TorusClass, algebraic_intersection, dehn_twist, \
    geometric_intersection, normalize, resolve
from . import grid_oracle
from .surface import (
    Component,
    Configuration,
    Structure,
    SurfaceModel,
    SurfaceMulticurve,
    canonical_key,
    component,
    goldman_decompose,
    graft_along,
    graft_disjoint,
    graft_spiraling,
    is_admissible,
    structure,
    twist_about_curve,
    twist_about_meridian,
    validate_configuration,
)

log = logging.getLogger("graftkit")


@dataclass(frozen=True)
class Vertex:
    key: str
    structure: Structure


@dataclass(frozen=True)
class Edge:
    """One move: kind is "graft" or "elementary"; chart names the twisting
    chart ("" for the untwisted graft); n is the twist power."""

    kind: str
    chart: str
    n: int
    src: str
    dst: str

    def label(self) -> str:
        if self.kind == "elementary":
            return f"elem {self.chart} {'+' if self.n > 0 else ''}{self.n}"
        if self.n == 0:
            return "graft"
        return f"graft T^{self.n}@{self.chart}"


@dataclass(frozen=True)
class Witness:
    """A verified coincidence of the two graft pipelines.

    The doubled twist on the one-step side pairs with k + l = 2m on the
    two-step side; every witness stores the checked key equality."""

    m: int
    k: int
    l: int
    key: str


@dataclass
class ComplexGraph:
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    twist_bound: int
    depth: int
    seed_key: str

    def cycle_rank(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def rank_by_kind(self) -> Dict[str, int]:
        """First Betti number for each edge-set choice.

        The full graph is connected by construction, so its rank is
        |E| - |V| + 1; a single-kind subgraph may be disconnected, so its
        rank counts components explicitly."""
        out = {"all": self.cycle_rank()}
        keys = [v.key for v in self.vertices]
        index = {k: i for i, k in enumerate(keys)}
        for kind in ("graft", "elementary"):
            parent = list(range(len(keys)))

            def find(i: int) -> int:
                while parent[i] != i:
                    parent[i] = parent[parent[i]]
                    i = parent[i]
                return i

            count = 0
            for e in self.edges:
                if e.kind != kind:
                    continue
                count += 1
                a, b = find(index[e.src]), find(index[e.dst])
                if a != b:
                    parent[a] = b
            components = sum(1 for i in range(len(keys)) if find(i) == i)
            out[kind] = count - len(keys) + components
        return out

    def to_json_obj(self) -> dict:
        ordered = sorted(self.vertices, key=lambda v: v.key)
        ids = {v.key: i for i, v in enumerate(ordered)}
        edges = sorted(
            (ids[e.src], ids[e.dst], e.kind, e.chart, e.n)
            for e in self.edges)
        return {
            "schema": 1,
            "kind": "grafting-complex",
            "twist_bound": self.twist_bound,
            "depth": self.depth,
            "seed": self.seed_key,
            "vertices": [{"id": i, "key": v.key}
                         for i, v in enumerate(ordered)],
            "edges": [{"src": s, "dst": d, "kind": k, "chart": c, "n": n}
                      for s, d, k, c, n in edges],
            "stats": {"vertices": len(self.vertices),
                      "edges": len(self.edges),
                      "cycle_rank": self.cycle_rank(),
                      "rank_by_kind": self.rank_by_kind()},
        }

    def to_json_bytes(self) -> bytes:
        return json.dumps(self.to_json_obj(), sort_keys=True,
                          separators=(",", ":")).encode("ascii")

    def to_dot(self) -> str:
        ordered = sorted(self.vertices, key=lambda v: v.key)
        ids = {v.key: i for i, v in enumerate(ordered)}
        lines = ["graph complex {"]
        for i, v in enumerate(ordered):
            digest = hashlib.sha256(v.key.encode()).hexdigest()[:12]
            lines.append(f'  v{i} [label="{digest}"];')
        for src, dst, kind, chart, n in sorted(
                (ids[e.src], ids[e.dst], e.kind, e.chart, e.n)
                for e in self.edges):
            e = Edge(kind, chart, n, "", "")
            lines.append(f'  v{src} -- v{dst} [label="{e.label()}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def cycle_rank(graph: ComplexGraph) -> int:
    """First Betti number of the enumerated subgraph, |E| - |V| + 1;
    parallel edges count separately (BFS construction keeps it connected)."""
    return graph.cycle_rank()


def standard_configuration(num_charts: int = 1,
                           genus: int = 2) -> Configuration:
    """The base setup used by the suites: real curve reading (2,0) and
    grafting curve (1,0) in each chart."""
    names = tuple(chr(ord("a") + i) for i in range(num_charts))
    model = SurfaceModel(genus, "rho", names)
    lam = component("lambda", {name: (2, 0) for name in names})
    gam = component("gamma", {name: (1, 0) for name in names})
    return validate_configuration(model, lam, gam)


def _graft_generators(config: Configuration,
                      twist_bound: int) -> List[Tuple[str, str, int]]:
    gens: List[Tuple[str, str, int]] = [("graft", "", 0)]
    for chart in config.model.charts:
        for n in range(-twist_bound, twist_bound + 1):
            if n != 0:
                gens.append(("graft", chart, n))
    return gens


def _elementary_applicable(struct: Structure, chart: str) -> bool:
    # An elementary move needs the meridian to cross the real curves
    # exactly twice in its chart.
    hits = sum(c.multiplicity * abs(c.chart_class(chart).p)
               for c in struct.real_curves.components)
    return hits == 2


def _expand(config: Configuration, struct: Structure,
            gens: Sequence[Tuple[str, str, int]]
            ) -> List[Tuple[Tuple[str, str, int], Structure]]:
    """Apply every generator to one structure; inadmissible grafts are
    skipped (logged at debug level)."""
    out = []
    for chart in config.model.charts:
        if _elementary_applicable(struct, chart):
            for n in (1, -1):
                out.append((("elementary", chart, n),
                            twist_about_meridian(struct, chart, n)))
    for desc in gens:
        _, chart, n = desc
        gamma = config.gamma if n == 0 else twist_about_meridian(
            config.gamma, chart, n)
        adm = is_admissible(gamma, struct)
        if not adm:
            log.debug("skipping %s at %s: %s", desc, struct.key(), adm.reason)
            continue
        out.append((desc, graft_along(struct, gamma)))
    return out


def build_complex(config: Configuration, twist_bound: int, depth: int,
                  workers: int = 1,
                  seed: Optional[Structure] = None) -> ComplexGraph:
    """Breadth-first closure of the seed structure under the generators.

    Generators: elementary moves (where applicable) in every chart, the
    untwisted graft, and grafts of the meridian-twisted grafting curve up
    to the twist bound, per chart. Vertices deduplicate by canonical key.
    An elementary move and its inverse between the same two vertices are
    one edge; distinct generators landing on the same vertex pair stay
    parallel. The seed defaults to the configuration's base structure.
    """
    if twist_bound < 0 or depth < 0:
        raise BadConfiguration("twist bound and depth must be nonnegative")
    if workers < 1:
        raise BadConfiguration("workers must be positive")
    gens = _graft_generators(config, twist_bound)
    if seed is None:
        seed = config.base_structure()
    seed_key = seed.key()
    vertices: Dict[str, Vertex] = {seed_key: Vertex(seed_key, seed)}
    edges: List[Edge] = []
    seen_elementary = set()
    frontier = [seed]
    for _ in range(depth):
        if not frontier:
            break
        frontier.sort(key=lambda s: s.key())
        if workers == 1:
            batches = [_expand(config, s, gens) for s in frontier]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                batches = list(pool.map(
                    lambda s: _expand(config, s, gens), frontier))
        next_frontier: List[Structure] = []
        for src, batch in zip(frontier, batches):
            src_key = src.key()
            for desc, result in batch:
                kind, chart, n = desc
                dst_key = result.key()
                if dst_key not in vertices:
                    vertices[dst_key] = Vertex(dst_key, result)
                    next_frontier.append(result)
                if kind == "elementary":
                    pair = (min(src_key, dst_key), max(src_key, dst_key),
                            chart)
                    if pair in seen_elementary:
                        continue
                    seen_elementary.add(pair)
                edges.append(Edge(kind, chart, n, src_key, dst_key))
        frontier = next_frontier
    return ComplexGraph(tuple(vertices.values()), tuple(edges),
                        twist_bound, depth, seed_key)


# ---------------------------------------------------------------------------
# Witness search and the fan of standard structures


def _twist_chart(config: Configuration) -> str:
    return config.model.charts[0]


def common_grafts(config: Configuration, l0: int,
                  twist_bound: int) -> List[Witness]:
    """Search the doubled-twist graft coincidences for a fixed pair.

    For every |m| <= twist_bound the curve twisted 2m times is grafted
    onto the base structure, and the curve twisted k = 2m - l0 times onto
    the l0-twisted structure; a Witness records each verified key
    equality. The twist budget splits as k + l = 2m: grafting inserts two
    leaves of the curve, so each unit of twisting on the real-curve side
    trades against two units absorbed by the doubled grafting class. The
    expected hit count is the full range of m.
    """
    chart = _twist_chart(config)
    base = config.base_structure()
    other = twist_about_meridian(base, chart, l0)
    found = []
    for m in range(-twist_bound, twist_bound + 1):
        k = 2 * m - l0
        one_step = graft_along(base, twist_about_meridian(
            config.gamma, chart, 2 * m))
        two_step = graft_along(other, twist_about_meridian(
            config.gamma, chart, k))
        if one_step.key() == two_step.key():
            found.append(Witness(m, k, l0, one_step.key()))
        else:
            log.debug("no witness at m=%d (keys %s vs %s)", m,
                      one_step.key(), two_step.key())
    return found


def witness_graph(config: Configuration, l0: int,
                  twist_bound: int) -> ComplexGraph:
    """Graph form of a common-graft search for export: the two base
    structures plus every common graft, with the graft moves as edges."""
    chart = _twist_chart(config)
    base = config.base_structure()
    other = twist_about_meridian(base, chart, l0)
    vertices = {base.key(): Vertex(base.key(), base)}
    vertices.setdefault(other.key(), Vertex(other.key(), other))
    edges = []
    for w in common_grafts(config, l0, twist_bound):
        target = graft_along(base, twist_about_meridian(
            config.gamma, chart, 2 * w.m))
        vertices.setdefault(w.key, Vertex(w.key, target))
        edges.append(Edge("graft", chart, 2 * w.m, base.key(), w.key))
        edges.append(Edge("graft", chart, w.k, other.key(), w.key))
    return ComplexGraph(tuple(vertices.values()), tuple(edges),
                        twist_bound, 1, base.key())


@dataclass
class FanReport:
    common_key: Optional[str]
    rows: List[Tuple[int, int, str]]  # (l, k, key)
    passed: bool


def standard_fan(config: Configuration, chart: str, fan_size: int,
                 m: int) -> FanReport:
    """Graft every structure of the fan to one target.

    For l = 0..fan_size the l-twisted structure is grafted along the
    (m - l)-twisted curve; all fan members must land on a single key.
    """
    config.model.require_chart(chart)
    base = config.base_structure()
    rows = []
    keys = set()
    for l in range(fan_size + 1):
        k = m - l
        start = twist_about_meridian(base, chart, l)
        result = graft_along(start, twist_about_meridian(
            config.gamma, chart, k))
        rows.append((l, k, result.key()))
        keys.add(result.key())
    passed = len(keys) == 1
    return FanReport(keys.pop() if passed else None, rows, passed)


# ---------------------------------------------------------------------------
# Verification suites


@dataclass
class Instance:
    desc: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    suite: str
    instances: List[Instance] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i.ok for i in self.instances)

    def add(self, desc: str, ok: bool, detail: str = "") -> None:
        self.instances.append(Instance(desc, ok, detail))

    def to_json_obj(self) -> dict:
        return {
            "schema": 1,
            "suite": self.suite,
            "passed": self.passed,
            "instances": [
                {"desc": i.desc, "ok": i.ok, "detail": i.detail}
                for i in self.instances],
        }

    def lines(self) -> List[str]:
        out = []
        for i in self.instances:
            mark = "ok" if i.ok else "FAIL"
            tail = f" ({i.detail})" if (i.detail and not i.ok) else ""
            out.append(f"{mark:4} {i.desc}{tail}")
        out.append(f"suite {self.suite}: "
                   f"{'pass' if self.passed else 'FAIL'} "
                   f"({len(self.instances)} instances)")
        return out


def _suite_flatsharp(k_max: int = 10) -> Report:
    report = Report("flatsharp")
    for k in range(1, k_max + 1):
        got = resolve((0, 2 * k), (2, -2 * k), Mode.FLAT)
        report.add(f"flat (0,{2*k}) with (2,{-2*k}) -> (2,0)",
                   got == (2, 0), f"got {got}")
    return report


def _four_way(k: int) -> Tuple[TorusClass, ...]:
    lam = TorusClass(2, 0)
    two_gamma = TorusClass(2, 0)
    meridian = TorusClass(0, 1)
    e1 = dehn_twist(resolve(lam, two_gamma, Mode.SHARP), meridian, k)
    # The named modes below mirror for k < 0: the configuration is the
    # mirror image, which exchanges the two smoothings.
    m2 = Mode.SHARP if k >= 0 else Mode.FLAT
    m3 = Mode.FLAT if k >= 0 else Mode.SHARP
    e2 = resolve(lam, dehn_twist(two_gamma, meridian, 2 * k), m2)
    e3 = resolve(dehn_twist(lam, meridian, 2 * k), two_gamma, m3)
    e4 = resolve(dehn_twist(lam, meridian, k),
                 dehn_twist(two_gamma, meridian, k), Mode.SHARP)
    return e1, e2, e3, e4


def _suite_sharp_flat(k_max: int = 8) -> Report:
    report = Report("sharp_flat")
    meridian = TorusClass(0, 1)
    for k in range(-k_max, k_max + 1):
        values = _four_way(k)
        want = TorusClass(4, 4 * k)
        report.add(f"four-way identity at k={k}",
                   all(v == want for v in values),
                   f"got {values}")
        pairs = [
            (TorusClass(2, 0), TorusClass(2, 0)),
            (TorusClass(2, 0), dehn_twist((2, 0), meridian, 2 * k)),
            (dehn_twist((2, 0), meridian, 2 * k), TorusClass(2, 0)),
            (dehn_twist((2, 0), meridian, k), dehn_twist((2, 0), meridian, k)),
        ]
        ok = True
        for a, b in pairs:
            sharp_ab = resolve(a, b, Mode.SHARP)
            flat_ba = resolve(b, a, Mode.FLAT)
            if algebraic_intersection(a, b) >= 0:
                ok = ok and sharp_ab == flat_ba
            else:
                ok = ok and normalize(sharp_ab) == normalize(flat_ba)
        report.add(f"switch identity at k={k}", ok)
    return report


def _suite_dehn_twist(k_max: int = 6) -> Report:
    report = Report("dehn_twist")
    config = standard_configuration()
    chart = _twist_chart(config)
    for k in range(1, k_max + 1):
        for sign, name in ((1, "right"), (-1, "left")):
            lam_k = twist_about_meridian(config.lam, chart, sign * (k - 1))
            start = structure(config.model, [lam_k])
            gam_k = twist_about_meridian(config.gamma, chart, sign * k)
            grafted = graft_spiraling(start, gam_k)
            reference = twist_about_curve(start, gam_k, sign)
            report.add(
                f"{name}-spiraling graft at k={k} matches the "
                f"{'inverse ' if sign < 0 else ''}twisted structure",
                grafted.key() == reference.key(),
                f"{grafted.key()} vs {reference.key()}")
    return report


def _random_even_multicurve(rng: random.Random,
                            model: SurfaceModel) -> SurfaceMulticurve:
    n = rng.randint(1, len(model.charts))
    charts = rng.sample(list(model.charts), n)
    comps = []
    for i, chart in enumerate(charts):
        while True:
            p = rng.randint(-5, 5)
            q = rng.randint(-5, 5)
            if (p, q) != (0, 0) and gcd(abs(p), abs(q)) == 1:
                break
        comps.append(component(f"w{i}", {chart: (p, q)},
                               2 * rng.randint(1, 4)))
    return SurfaceMulticurve(tuple(comps))


def _suite_goldman(trials: int = 100, seed: int = 7) -> Report:
    report = Report("goldman")
    rng = random.Random(seed)
    model = SurfaceModel(4, "rho", tuple(f"c{i}" for i in range(6)))
    for t in range(trials):
        lam = _random_even_multicurve(rng, model)
        target = canonical_key(lam, model)
        sigma = list(goldman_decompose(lam).components)
        rng.shuffle(sigma)
        current = structure(model, [])
        try:
            for comp in sigma:
                current = graft_disjoint(current, comp)
            ok = current.key() == target
            detail = f"{current.key()} vs {target}"
        except NotAdmissible as exc:
            ok = False
            detail = str(exc)
        report.add(f"round trip #{t}", ok, detail)
    odd = SurfaceMulticurve((component("w0", {"c0": (1, 0)}, 3),))
    try:
        goldman_decompose(odd)
        report.add("odd multiplicity rejected", False, "no error raised")
    except OddMultiplicity as exc:
        report.add("odd multiplicity rejected", exc.label == "w0",
                   f"named {exc.label!r}")
    return report


def _suite_iterated(l0: int = 1, twist_bound: int = 8) -> Report:
    report = Report("iterated")
    config = standard_configuration()
    witnesses = common_grafts(config, l0, twist_bound)
    expected = 2 * twist_bound + 1
    by_m = {w.m: w for w in witnesses}
    for m in range(-twist_bound, twist_bound + 1):
        w = by_m.get(m)
        report.add(f"common graft at m={m} (k={2*m-l0}, l={l0})",
                   w is not None,
                   w.key if w else "keys differ")
    report.add(f"witness count equals full range ({expected})",
               len(witnesses) == expected, f"got {len(witnesses)}")
    return report


def _suite_two_meridian(k_max: int = 5) -> Report:
    report = Report("two_meridian")
    config = standard_configuration(num_charts=2)
    a, b = config.model.charts
    base = config.base_structure()
    for k in range(1, k_max + 1):
        for l in range(0, k):
            both = twist_about_meridian(
                twist_about_meridian(config.gamma, a, k), b, l)
            one = graft_along(base, both)
            other = graft_along(
                twist_about_meridian(base, a, k),
                twist_about_meridian(config.gamma, b, l))
            report.add(f"two-meridian keys at k={k}, l={l}",
                       one.key() == other.key(),
                       f"{one.key()} vs {other.key()}")
    return report


def _suite_oracle(sweep: int = 5) -> Report:
    """Exhaustive torus/oracle agreement over primitive classes with
    entries bounded by the sweep radius."""
    report = Report("oracle")
    prims = [(p, q) for p in range(-sweep, sweep + 1)
             for q in range(-sweep, sweep + 1)
             if gcd(abs(p), abs(q)) == 1]
    mismatches = 0
    checked = 0
    for a in prims:
        for b in prims:
            first, second = grid_oracle.draw_pair(a, 1, b, 1)
            geo, alg = grid_oracle.oracle_intersection(first, second)
            ok = (alg == algebraic_intersection(a, b)
                  and geo == geometric_intersection(a, b))
            for mode in (Mode.SHARP, Mode.FLAT):
                comps = grid_oracle.oracle_resolve(first, second, mode)
                total = (sum(c.p for c in comps), sum(c.q for c in comps))
                ok = ok and TorusClass(*total) == resolve(a, b, mode)
            checked += 1
            if not ok:
                mismatches += 1
                report.add(f"oracle agreement for {a} vs {b}", False)
    report.add(f"oracle agreement on {checked} primitive pairs "
               f"(radius {sweep})", mismatches == 0,
               f"{mismatches} mismatches")
    return report


_SUITES: Dict[str, Callable[..., Report]] = {
    "flatsharp": _suite_flatsharp,
    "sharp_flat": _suite_sharp_flat,
    "dehn_twist": _suite_dehn_twist,
    "goldman": _suite_goldman,
    "iterated": _suite_iterated,
    "two_meridian": _suite_two_meridian,
    "oracle": _suite_oracle,
}


def suite_names() -> Tuple[str, ...]:
    return tuple(sorted(_SUITES))


def suite_parameters(name: str) -> set:
    """Names of the range parameters the given suite accepts."""
    if name not in _SUITES:
        raise UnknownSuite(
            f"unknown suite {name!r}; known: {', '.join(suite_names())}")
    return set(inspect.signature(_SUITES[name]).parameters)


def verify_suite(name: str, **params) -> Report:
    """Run one named identity sweep and return its report.

    Unknown names raise UnknownSuite; parameters not taken by the chosen
    suite raise TypeError (surfaced by the CLI as an input error).
    """
    try:
        fn = _SUITES[name]
    except KeyError:
        raise UnknownSuite(
            f"unknown suite {name!r}; known: {', '.join(suite_names())}")
    return fn(**params)
