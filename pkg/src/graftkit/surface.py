"""Curves and structures on a genus-g surface with meridian annulus charts.

The surface is modeled by the data the calculus actually needs: a genus,
a holonomy tag (an opaque identifier for the fixed representation), and a
list of named meridian annulus charts that are pairwise disjoint. A curve
is a finite set of components, each carrying

* a content multiset of base-curve labels recording which exterior routes
  the component follows (distinct labels, and parallel copies of one
  label, never meet outside the annuli),
* one torus class per chart it enters, in the chart basis where the base
  real curve reads (2,0), the meridian (0,1), the base grafting curve
  (1,0),
* a positive multiplicity counting parallel leaves.

Structure identity is the canonical key of the real multicurve: the
sorted content totals together with per-chart homology totals of
sign-normalized components. Operations reduce to chart torus arithmetic.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import (
    BadIntersectionPattern,
    NonSpiralingCurve,
    NotAdmissible,
    OddMultiplicity,
    UnknownChart,
)
from .torus import (
    Mode,
    TorusClass,
    algebraic_intersection,
    dehn_twist,
    geometric_intersection,
    resolve,
)

MERIDIAN = TorusClass(0, 1)

Content = Tuple[Tuple[str, int], ...]
ChartMap = Tuple[Tuple[str, TorusClass], ...]


@dataclass(frozen=True)
class SurfaceModel:
    """Genus-g surface with named, pairwise disjoint meridian charts.

    Every chart's core meridian has trivial holonomy; the flag is stored
    so the invariant is visible, and no operation ever clears it.
    """

    genus: int
    holonomy_tag: str
    charts: Tuple[str, ...]
    meridians_trivial: bool = True

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError("genus must be at least 2")
        if not self.charts or len(set(self.charts)) != len(self.charts):
            raise ValueError("charts must be nonempty and distinct")

    def require_chart(self, name: str) -> None:
        if name not in self.charts:
            raise UnknownChart(f"no chart named {name!r}")


@dataclass(frozen=True)
class Component:
    """One isotopy class of leaves: content labels, chart classes, count."""

    content: Content
    charts: ChartMap
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if not self.content:
            raise ValueError("content must name at least one label")

    def chart_class(self, name: str) -> TorusClass:
        for chart, cls in self.charts:
            if chart == name:
                return cls
        return TorusClass(0, 0)

    def content_counter(self) -> Counter:
        return Counter(dict(self.content))


def component(label: str, charts: Mapping[str, Sequence[int]],
              multiplicity: int = 1) -> Component:
    """Build a simple (single-label) component from plain chart pairs."""
    chart_map = tuple(sorted(
        (name, TorusClass(int(v[0]), int(v[1]))) for name, v in charts.items()
    ))
    return Component(((label, 1),), chart_map, multiplicity)


def _merged_component(content: Counter, charts: Mapping[str, TorusClass],
                      multiplicity: int = 1) -> Component:
    chart_map = tuple(sorted(
        (name, cls) for name, cls in charts.items() if cls != (0, 0)
    ))
    cont = tuple(sorted((lab, n) for lab, n in content.items() if n))
    return Component(cont, chart_map, multiplicity)


def _normalized(comp: Component, chart_order: Sequence[str]) -> Component:
    """Quotient the component's global orientation: flip every chart class
    together so the first nonzero entry, scanning charts in model order,
    is positive."""
    flip = 0
    for name in chart_order:
        cls = comp.chart_class(name)
        for entry in cls:
            if entry:
                flip = -1 if entry < 0 else 1
                break
        if flip:
            break
    if flip >= 0:
        return comp
    charts = tuple((name, -cls) for name, cls in comp.charts)
    return Component(comp.content, charts, comp.multiplicity)


@dataclass(frozen=True)
class SurfaceMulticurve:
    components: Tuple[Component, ...] = ()

    def total_chart_class(self, name: str) -> TorusClass:
        p = sum(c.multiplicity * c.chart_class(name).p for c in self.components)
        q = sum(c.multiplicity * c.chart_class(name).q for c in self.components)
        return TorusClass(p, q)

    def content_total(self) -> Counter:
        total: Counter = Counter()
        for c in self.components:
            for lab, n in c.content:
                total[lab] += n * c.multiplicity
        return total


def multicurve(*components: Component) -> SurfaceMulticurve:
    return SurfaceMulticurve(tuple(components))


def canonicalize(curve: SurfaceMulticurve,
                 model: SurfaceModel) -> SurfaceMulticurve:
    """Sorted normal form: orientation-normalized components, identical
    ones merged by adding multiplicities."""
    merged: Dict[Tuple[Content, ChartMap], int] = {}
    for comp in curve.components:
        norm = _normalized(comp, model.charts)
        key = (norm.content, norm.charts)
        merged[key] = merged.get(key, 0) + norm.multiplicity
    comps = tuple(
        Component(content, charts, mult)
        for (content, charts), mult in sorted(merged.items())
    )
    return SurfaceMulticurve(comps)


@dataclass(frozen=True)
class Structure:
    """A projective structure with the fixed holonomy: identified by the
    canonical form of its real multicurve."""

    model: SurfaceModel
    real_curves: SurfaceMulticurve

    @property
    def holonomy_tag(self) -> str:
        return self.model.holonomy_tag

    def key(self) -> str:
        return canonical_key(self.real_curves, self.model)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Structure):
            return NotImplemented
        return (self.holonomy_tag == other.holonomy_tag
                and self.key() == other.key())

    def __hash__(self) -> int:
        return hash((self.holonomy_tag, self.key()))


def structure(model: SurfaceModel,
              components: Iterable[Component] = ()) -> Structure:
    return Structure(model, canonicalize(SurfaceMulticurve(tuple(components)),
                                         model))


def canonical_key(curve: SurfaceMulticurve, model: SurfaceModel) -> str:
    """Deterministic identity key of a multicurve.

    Flattens to what classifies the structure: the content-label totals
    and, per chart, the homology total of the orientation-normalized
    components. Component order, orientations, and how parallel leaves
    are split across equal components cannot affect the key.
    """
    canon = canonicalize(curve, model)
    chart_totals = {}
    for name in model.charts:
        cls = canon.total_chart_class(name)
        chart_totals[name] = [cls.p, cls.q]
    payload = {
        "content": sorted(canon.content_total().items()),
        "charts": chart_totals,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Configuration checking


@dataclass(frozen=True)
class Configuration:
    """Validated base data for grafting pipelines: the base real curve,
    the base grafting curve, and a meridian class per chart."""

    model: SurfaceModel
    lam: Component
    gamma: Component
    meridians: Tuple[Tuple[str, TorusClass], ...]

    def meridian(self, chart: str) -> TorusClass:
        for name, cls in self.meridians:
            if name == chart:
                return cls
        return MERIDIAN

    def base_structure(self) -> Structure:
        return structure(self.model, [self.lam])


def validate_configuration(
    model: SurfaceModel,
    lam: Component,
    gamma: Component,
    meridians: Optional[Mapping[str, Sequence[int]]] = None,
) -> Configuration:
    """Check the chart intersection pattern the grafting calculus assumes.

    Per chart both curves enter: the meridian must meet the real curve
    twice and the grafting curve once, and the two curves must be
    chart-disjoint. Violations raise BadIntersectionPattern naming the
    failed count.
    """
    given = {name: TorusClass(int(v[0]), int(v[1]))
             for name, v in (meridians or {}).items()}
    for name in given:
        model.require_chart(name)
    table = tuple((name, given.get(name, MERIDIAN)) for name in model.charts)
    for name, mer in table:
        lam_c = lam.chart_class(name)
        gam_c = gamma.chart_class(name)
        if lam_c == (0, 0) and gam_c == (0, 0):
            continue
        n_lam = geometric_intersection(mer, lam_c)
        if n_lam != 2:
            raise BadIntersectionPattern(
                f"chart {name!r}: meridian meets the real curve "
                f"{n_lam} times, expected 2")
        n_gam = geometric_intersection(mer, gam_c)
        if n_gam != 1:
            raise BadIntersectionPattern(
                f"chart {name!r}: meridian meets the grafting curve "
                f"{n_gam} times, expected 1")
        n_cross = geometric_intersection(lam_c, gam_c)
        if n_cross != 0:
            raise BadIntersectionPattern(
                f"chart {name!r}: base curves intersect {n_cross} times, "
                f"expected 0")
    return Configuration(model, lam, gamma, table)


# ---------------------------------------------------------------------------
# Spiraling classification and admissibility


class SpiralClass(Tuple[str, int]):
    """Direction and step count of a spiraling chart class."""

    def __new__(cls, direction: str, steps: int):
        return super().__new__(cls, (direction, steps))

    @property
    def direction(self) -> str:
        return self[0]

    @property
    def steps(self) -> int:
        return self[1]

    @classmethod
    def right(cls, k: int) -> "SpiralClass":
        return cls("right", k)

    @classmethod
    def left(cls, k: int) -> "SpiralClass":
        return cls("left", k)

    def __repr__(self) -> str:
        if self.direction == "none":
            return "NonSpiraling"
        return f"{self.direction.capitalize()}({self.steps})"


NON_SPIRALING = SpiralClass("none", 0)


def spiraling_class(chart_cls: Sequence[int]) -> SpiralClass:
    """Classify a single-strand chart class (1, k).

    Direction labels are fixed by the twist convention used everywhere in
    this package: positive meridian twisting of the base grafting curve
    yields right-spiraling, so (1,k) is Right(k) for k > 0 and Left(-k)
    for k < 0. Anything without a single strand, and the untwisted class,
    is NonSpiraling.
    """
    p, q = int(chart_cls[0]), int(chart_cls[1])
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    if p != 1 or q == 0:
        return NON_SPIRALING
    return SpiralClass.right(q) if q > 0 else SpiralClass.left(-q)


def _spiral_sign(lam_total: TorusClass, gamma_cls: TorusClass) -> int:
    """Orientation of the spiral in one chart: for a real-curve class with
    horizontal strands the sign of the algebraic intersection, otherwise
    (doubled vertical class) the sign of the grafting class's twist."""
    if lam_total.p != 0:
        d = algebraic_intersection(lam_total, gamma_cls)
    else:
        d = gamma_cls.q if gamma_cls.p >= 0 else -gamma_cls.q
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    route: Optional[str]
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def is_admissible(gamma: Component, struct: Structure) -> Admissibility:
    """Decide whether the curve can be grafted onto the structure.

    Disjoint route: no chart crossings with any real component (distinct
    exterior labels never meet outside charts). Spiraling route: every
    chart with crossings carries a single strand of gamma (|p| = 1) and a
    well-defined spiral direction. Returns the route taken, or the failed
    condition.
    """
    model = struct.model
    crossing_charts = []
    for name in model.charts:
        g = gamma.chart_class(name)
        if g == (0, 0):
            continue
        total = sum(
            comp.multiplicity * geometric_intersection(comp.chart_class(name), g)
            for comp in struct.real_curves.components)
        if total:
            crossing_charts.append(name)
    if not crossing_charts:
        return Admissibility(True, "disjoint",
                             "disjoint from the real curves in every chart")
    for name in crossing_charts:
        g = gamma.chart_class(name)
        if abs(g.p) != 1:
            return Admissibility(
                False, None,
                f"chart {name!r}: grafting class {g} is not a single strand")
        lam_total = struct.real_curves.total_chart_class(name)
        if _spiral_sign(lam_total, g) == 0:
            return Admissibility(
                False, None,
                f"chart {name!r}: no spiral direction for {g} against "
                f"{lam_total}")
    return Admissibility(True, "spiraling",
                         f"spiraling through {', '.join(crossing_charts)}")


def check_spiraling_hypotheses(gamma_prime: Component, gamma: Component,
                               lam: Component) -> bool:
    """Verify the intersection-count hypotheses for a twisted curve.

    For a curve obtained from the base grafting curve by meridian twists
    the counts must satisfy |i^(gamma, gamma')| = i(gamma, gamma') =
    i(gamma', lam)/2, and every chart strand must be single. Curves not
    of that twist-generated shape are rejected conservatively.
    """
    charts = {name for name, _ in gamma_prime.charts}
    charts.update(name for name, _ in gamma.charts)
    alg = 0
    geo = 0
    against_lam = 0
    for name in sorted(charts):
        g1 = gamma.chart_class(name)
        g2 = gamma_prime.chart_class(name)
        if (g1 != (0, 0) and abs(g1.p) != 1) or \
           (g2 != (0, 0) and abs(g2.p) != 1):
            return False
        if g1.p != g2.p:
            return False
        alg += algebraic_intersection(g1, g2)
        geo += geometric_intersection(g1, g2)
        against_lam += geometric_intersection(g2, lam.chart_class(name))
    if against_lam % 2:
        return False
    return abs(alg) == geo == against_lam // 2


# ---------------------------------------------------------------------------
# Twisting


def _twist_component(comp: Component, chart: str, n: int) -> Component:
    charts = dict(comp.charts)
    cls = comp.chart_class(chart)
    if cls != (0, 0):
        charts[chart] = dehn_twist(cls, MERIDIAN, n)
    return Component(comp.content, tuple(sorted(charts.items())),
                     comp.multiplicity)


def twist_about_meridian(obj, chart: str, n: int):
    """Apply the n-fold Dehn twist about a chart's meridian.

    Works on a Component, a SurfaceMulticurve, or a Structure and returns
    the same kind. Only the named chart's classes change; content labels,
    other charts, and the holonomy tag are untouched.
    """
    if isinstance(obj, Structure):
        obj.model.require_chart(chart)
        comps = [_twist_component(c, chart, n)
                 for c in obj.real_curves.components]
        return structure(obj.model, comps)
    if isinstance(obj, SurfaceMulticurve):
        return SurfaceMulticurve(tuple(
            _twist_component(c, chart, n) for c in obj.components))
    if isinstance(obj, Component):
        return _twist_component(obj, chart, n)
    raise TypeError(f"cannot twist {type(obj).__name__}")


def twist_about_curve(struct: Structure, curve: Component,
                      k: int) -> Structure:
    """Twist the structure's real curves k times about a charted curve.

    Chart classes transform by the chart Dehn twist; each real component
    additionally picks up |k| * (crossing count) copies of the twisting
    curve's content per leaf, since every crossing drags one full copy of
    the curve into the component.
    """
    if curve.multiplicity != 1:
        raise ValueError("twisting curve must be a single leaf")
    out = []
    for comp in struct.real_curves.components:
        crossings = sum(
            geometric_intersection(comp.chart_class(name),
                                   curve.chart_class(name))
            for name, _ in curve.charts)
        charts = dict(comp.charts)
        for name, cls in curve.charts:
            base = comp.chart_class(name)
            twisted = dehn_twist(base, cls, k)
            if twisted != (0, 0) or base != (0, 0):
                charts[name] = twisted
        content = comp.content_counter()
        for lab, cnt in curve.content:
            content[lab] += abs(k) * crossings * cnt
        out.append(_merged_component(content, charts, comp.multiplicity))
    return structure(struct.model, out)


# ---------------------------------------------------------------------------
# Grafting


def graft_disjoint(struct: Structure, gamma: Component) -> Structure:
    """Graft along a curve disjoint from the real curves.

    The real multicurve gains two parallel leaves of the grafting curve;
    nothing else changes.
    """
    adm = is_admissible(gamma, struct)
    if not adm or adm.route != "disjoint":
        raise NotAdmissible(adm.reason if not adm else
                            "curve crosses the real curves; use the "
                            "spiraling graft")
    doubled = Component(gamma.content, gamma.charts, 2 * gamma.multiplicity)
    return structure(struct.model,
                     list(struct.real_curves.components) + [doubled])


def graft_spiraling(struct: Structure, gamma: Component) -> Structure:
    """Graft along a spiraling curve that crosses the real curves.

    Every crossed component fuses with two leaves of the grafting curve.
    In each crossing chart the fused class is the crossing resolution of
    the crossed total with the doubled grafting class, SHARP where the
    spiral turns right (positive spiral sign) and FLAT where it turns
    left; charts without crossings contribute the plain homology sum.
    """
    model = struct.model
    adm = is_admissible(gamma, struct)
    if adm.route == "disjoint":
        raise NonSpiralingCurve(
            "curve is disjoint from the real curves; nothing spirals")
    if not adm:
        raise NotAdmissible(adm.reason)

    crossed = []
    rest = []
    for comp in struct.real_curves.components:
        hits = sum(
            geometric_intersection(comp.chart_class(name),
                                   gamma.chart_class(name))
            for name in model.charts)
        (crossed if hits else rest).append(comp)

    content: Counter = Counter()
    for comp in crossed:
        for lab, n in comp.content:
            content[lab] += n * comp.multiplicity
    for lab, n in gamma.content:
        content[lab] += 2 * n * gamma.multiplicity

    charts: Dict[str, TorusClass] = {}
    for name in model.charts:
        lam_total = TorusClass(
            sum(c.multiplicity * c.chart_class(name).p for c in crossed),
            sum(c.multiplicity * c.chart_class(name).q for c in crossed))
        g = gamma.chart_class(name)
        doubled = TorusClass(2 * gamma.multiplicity * g.p,
                             2 * gamma.multiplicity * g.q)
        if geometric_intersection(lam_total, g) == 0:
            merged = TorusClass(lam_total.p + doubled.p,
                                lam_total.q + doubled.q)
        else:
            sign = _spiral_sign(lam_total, g)
            mode = Mode.SHARP if sign > 0 else Mode.FLAT
            merged = resolve(lam_total, doubled, mode)
        if merged != (0, 0):
            charts[name] = merged
    fused = _merged_component(content, charts, 1)
    return structure(model, rest + [fused])


def graft_along(struct: Structure, gamma: Component) -> Structure:
    """Graft dispatcher: disjoint route when there are no chart crossings,
    spiraling route otherwise."""
    adm = is_admissible(gamma, struct)
    if not adm:
        raise NotAdmissible(adm.reason)
    if adm.route == "disjoint":
        return graft_disjoint(struct, gamma)
    return graft_spiraling(struct, gamma)


# ---------------------------------------------------------------------------
# Goldman decomposition


def goldman_decompose(curve: SurfaceMulticurve) -> SurfaceMulticurve:
    """Halve every multiplicity of an all-even multicurve.

    Grafting a standard structure with empty real curves along the result
    (components in any order) reproduces the input; a component with odd
    multiplicity means no such decomposition exists and raises
    OddMultiplicity naming it.
    """
    halved = []
    for comp in curve.components:
        if comp.multiplicity % 2:
            label = "+".join(f"{lab}x{n}" if n > 1 else lab
                             for lab, n in comp.content)
            raise OddMultiplicity(label)
        halved.append(Component(comp.content, comp.charts,
                                comp.multiplicity // 2))
    return SurfaceMulticurve(tuple(halved))


# ---------------------------------------------------------------------------
# JSON wire format (schema 1)


def _component_to_json(comp: Component) -> dict:
    if len(comp.content) == 1 and comp.content[0][1] == 1:
        label = comp.content[0][0]
    else:
        label = [[lab, n] for lab, n in comp.content]
    return {
        "label": label,
        "charts": {name: [cls.p, cls.q] for name, cls in comp.charts},
        "multiplicity": comp.multiplicity,
    }


def _component_from_json(data: dict) -> Component:
    label = data.get("label")
    if isinstance(label, str):
        content: Content = ((label, 1),)
    elif isinstance(label, list):
        content = tuple(sorted((str(lab), int(n)) for lab, n in label))
    else:
        raise ValueError("curve entry needs a 'label'")
    charts = data.get("charts")
    if not isinstance(charts, dict) or not charts:
        raise ValueError("curve entry needs a nonempty 'charts' object")
    chart_map = tuple(sorted(
        (str(name), TorusClass(int(v[0]), int(v[1])))
        for name, v in charts.items()))
    mult = int(data.get("multiplicity", 1))
    return Component(content, chart_map, mult)


def parse_configuration(data: dict) -> Tuple[SurfaceModel, Structure,
                                             Optional[Component]]:
    """Read a schema-1 configuration object.

    Returns the model, the structure whose real curves are the listed
    components, and the designated grafting curve when a "gamma" entry is
    present. Raises ValueError on any schema violation.
    """
    if not isinstance(data, dict):
        raise ValueError("configuration must be a JSON object")
    if data.get("schema") != 1:
        raise ValueError("unsupported or missing 'schema' (expected 1)")
    genus = data.get("genus")
    if not isinstance(genus, int):
        raise ValueError("'genus' must be an integer")
    charts = data.get("charts")
    if (not isinstance(charts, list) or not charts
            or not all(isinstance(c, str) for c in charts)):
        raise ValueError("'charts' must be a nonempty list of names")
    holonomy = str(data.get("holonomy", "rho"))
    try:
        model = SurfaceModel(genus, holonomy, tuple(charts))
    except ValueError as exc:
        raise ValueError(str(exc)) from exc
    curves = data.get("curves", [])
    if not isinstance(curves, list):
        raise ValueError("'curves' must be a list")
    comps = [_component_from_json(entry) for entry in curves]
    for comp in comps:
        for name, _ in comp.charts:
            if name not in model.charts:
                raise ValueError(f"curve uses unknown chart {name!r}")
    gamma = None
    if "gamma" in data:
        gamma = _component_from_json(data["gamma"])
        for name, _ in gamma.charts:
            if name not in model.charts:
                raise ValueError(f"gamma uses unknown chart {name!r}")
    return model, structure(model, comps), gamma


def structure_to_json(struct: Structure) -> dict:
    """Schema-1 object for a structure, canonical key included."""
    return {
        "schema": 1,
        "genus": struct.model.genus,
        "holonomy": struct.holonomy_tag,
        "charts": list(struct.model.charts),
        "curves": [_component_to_json(c)
                   for c in struct.real_curves.components],
        "key": struct.key(),
    }
