"""Finite multi-cosmos models and their sheaf conditions.

A model is a finite poset of sub-cosmoses (finite carriers) with a restriction
map for every comparable pair ``big > small``. Three conditions are checked:

* composition: restricting in two steps equals restricting in one,
  ``rho[a->c] == rho[b->c] . rho[a->b]``;
* separatedness: distinct elements of a top cosmos are told apart by some
  restriction below it;
* gluing: sections that agree on declared intersections come from a single
  element of the top cosmos.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Optional

from .errors import IncompatibleFamily, MalformedModel, NoAmalgam, UnderdeterminedFamily

Id = Hashable


@dataclass(frozen=True)
class SubCosmos:
    id: Id
    carrier: tuple
    time_tag: int = 0

    def __post_init__(self):
        if not self.carrier:
            raise MalformedModel(f"sub-cosmos {self.id!r} has an empty carrier")
        if len(set(self.carrier)) != len(self.carrier):
            raise MalformedModel(f"sub-cosmos {self.id!r} repeats a carrier element")


@dataclass(frozen=True)
class Restriction:
    src: Id
    dst: Id
    map: Mapping


@dataclass
class MultiCosmosModel:
    """Well-formedness is checked on construction.

    ``order`` holds ``(bigger, smaller)`` pairs and is closed transitively;
    ``restrictions`` must then cover every pair of the closure.
    ``operations`` optionally gives a binary operation table per sub-cosmos,
    ``{id: {(a, b): a*b}}``, for :func:`validate_homomorphisms`.
    """

    subcosmoses: dict
    order: frozenset
    restrictions: dict  # (src, dst) -> {element: element}
    intersections: dict = field(default_factory=dict)  # frozenset({i, j}) -> meet id
    operations: dict = field(default_factory=dict)

    def __post_init__(self):
        ids = set(self.subcosmoses)
        order = set(self.order)
        for a, b in order:
            if a not in ids or b not in ids:
                raise MalformedModel(f"order pair ({a!r}, {b!r}) names an unknown sub-cosmos")
            if a == b:
                raise MalformedModel(f"order is not irreflexive at {a!r}")
        changed = True
        while changed:
            extra = {(a, d) for a, b in order for c, d in order if b == c} - order
            changed = bool(extra)
            order |= extra
        if any((b, a) in order for a, b in order) or any(a == b for a, b in order):
            raise MalformedModel("order has a cycle")
        self.order = frozenset(order)
        if set(self.restrictions) != order:
            missing = sorted(map(repr, order - set(self.restrictions)))
            unexpected = sorted(map(repr, set(self.restrictions) - order))
            raise MalformedModel(
                f"restrictions must match comparable pairs; missing {missing}, unexpected {unexpected}"
            )
        for (a, b), rho in self.restrictions.items():
            src, dst = self.subcosmoses[a].carrier, set(self.subcosmoses[b].carrier)
            if set(rho) != set(src):
                raise MalformedModel(f"restriction {a!r}->{b!r} is not total on its source")
            if not set(rho.values()) <= dst:
                raise MalformedModel(f"restriction {a!r}->{b!r} leaves the target carrier")
        for pair, meet in self.intersections.items():
            if len(pair) != 2 or meet not in ids:
                raise MalformedModel(f"bad intersection declaration {sorted(map(repr, pair))} -> {meet!r}")
            for x in pair:
                if x != meet and (x, meet) not in order:
                    raise MalformedModel(f"intersection {meet!r} is not below {x!r}")

    # -- order helpers ------------------------------------------------------

    def below(self, top: Id) -> list:
        """Sub-cosmoses strictly below ``top``, in declaration order."""
        return [i for i in self.subcosmoses if (top, i) in self.order]

    def is_maximal(self, i: Id) -> bool:
        return not any(b == i for _, b in self.order)

    def rho(self, src: Id, dst: Id, x):
        if src == dst:
            return x
        return self.restrictions[(src, dst)][x]

    def chains(self) -> list[tuple]:
        """All triples ``a > b > c`` in declaration order."""
        ids = list(self.subcosmoses)
        return [
            (a, b, c)
            for a in ids
            for b in ids
            if (a, b) in self.order
            for c in ids
            if (b, c) in self.order
        ]

    # -- (de)serialisation --------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "MultiCosmosModel":
        try:
            subs = {}
            for s in data["subcosmoses"]:
                if s["id"] in subs:
                    raise MalformedModel(f"duplicate sub-cosmos id {s['id']!r}")
                subs[s["id"]] = SubCosmos(s["id"], tuple(s["carrier"]), int(s.get("time_tag", 0)))
            order = frozenset((a, b) for a, b in data.get("order", []))
            restrictions = {}
            for r in data.get("restrictions", []):
                key = (r["src"], r["dst"])
                if key in restrictions:
                    raise MalformedModel(f"duplicate restriction {key!r}")
                restrictions[key] = dict(r["map"])
            intersections = {frozenset(i["pair"]): i["meet"] for i in data.get("intersections", [])}
            operations = {
                k: {(a, b): c for a, b, c in table} for k, table in data.get("operations", {}).items()
            }
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedModel):
                raise
            raise MalformedModel(f"cannot read model: {exc!r}") from exc
        return cls(subs, order, restrictions, intersections, operations)

    @classmethod
    def from_json(cls, text: str) -> "MultiCosmosModel":
        return cls.from_dict(json.loads(text))


# --------------------------------------------------------------------------
# conditions


@dataclass(frozen=True)
class ConditionReport:
    passed: bool
    violations: tuple = ()
    skipped: bool = False


def validate_composition(model: MultiCosmosModel) -> ConditionReport:
    """First element per chain ``a > b > c`` where the two routes to ``c`` disagree."""
    violations = []
    for a, b, c in model.chains():
        for x in model.subcosmoses[a].carrier:
            if model.rho(a, c, x) != model.rho(b, c, model.rho(a, b, x)):
                violations.append(((a, b, c), x))
                break
    return ConditionReport(not violations, tuple(violations))


def validate_separated(model: MultiCosmosModel, top: Id) -> ConditionReport:
    if top not in model.subcosmoses:
        raise MalformedModel(f"unknown sub-cosmos {top!r}")
    if not model.is_maximal(top):
        raise MalformedModel(f"{top!r} is not maximal")
    lower = model.below(top)
    violations = []
    for g, h in itertools.combinations(model.subcosmoses[top].carrier, 2):
        if not any(model.rho(top, i, g) != model.rho(top, i, h) for i in lower):
            violations.append((g, h))
    return ConditionReport(not violations, tuple(violations))


def validate_homomorphisms(model: MultiCosmosModel) -> ConditionReport:
    """Restrictions preserve the supplied operation tables, where both ends have one."""
    violations = []
    for (a, b), rho in model.restrictions.items():
        op_a, op_b = model.operations.get(a), model.operations.get(b)
        if op_a is None or op_b is None:
            continue
        for (x, y), z in op_a.items():
            if op_b.get((rho[x], rho[y])) != rho[z]:
                violations.append(((a, b), (x, y)))
                break
    return ConditionReport(not violations, tuple(violations))


def check_compatible(model: MultiCosmosModel, family: Mapping) -> Optional[tuple]:
    """First pair of the family that disagrees on its declared intersection, else None."""
    keys = [i for i in model.subcosmoses if i in family]
    for i, j in itertools.combinations(keys, 2):
        meet = model.intersections.get(frozenset((i, j)))
        if meet is None:
            continue
        if model.rho(i, meet, family[i]) != model.rho(j, meet, family[j]):
            return (i, j)
    return None


def glue(model: MultiCosmosModel, top: Id, family: Mapping):
    """Element of ``top`` restricting to every section of ``family``.

    Raises :class:`IncompatibleFamily` when two sections disagree on a declared
    intersection, :class:`NoAmalgam` when no element fits, and
    :class:`UnderdeterminedFamily` for an empty family over a carrier with more
    than one element. When the family covers everything below a separated
    ``top`` the amalgam is checked to be unique; otherwise the first match in
    carrier order is returned.
    """
    if top not in model.subcosmoses:
        raise MalformedModel(f"unknown sub-cosmos {top!r}")
    carrier = model.subcosmoses[top].carrier
    lower = set(model.below(top))
    for i, x in family.items():
        if i not in lower:
            raise MalformedModel(f"section on {i!r}, which is not below {top!r}")
        if x not in model.subcosmoses[i].carrier:
            raise MalformedModel(f"{x!r} is not in the carrier of {i!r}")
    if not family:
        if len(carrier) == 1:
            return carrier[0]
        raise UnderdeterminedFamily("empty family over a carrier with several elements")
    bad = check_compatible(model, family)
    if bad is not None:
        raise IncompatibleFamily(f"sections on {bad[0]!r} and {bad[1]!r} disagree on their intersection", bad)
    hits = [f for f in carrier if all(model.rho(top, i, f) == x for i, x in family.items())]
    if not hits:
        raise NoAmalgam(f"no element of {top!r} restricts to the given family")
    if len(hits) > 1 and set(family) == lower and validate_separated(model, top).passed:
        raise AssertionError(f"separated cosmos {top!r} produced several amalgams {hits}")
    return hits[0]


def random_compatible_family(model: MultiCosmosModel, top: Id, rng: random.Random, attempts: int = 50) -> dict:
    """A nonempty compatible family on sub-cosmoses below ``top``.

    Sections are drawn uniformly and rejected until compatible; after
    ``attempts`` failures the restriction of a random top element is used.
    """
    lower = model.below(top)
    if not lower:
        return {}
    for _ in range(attempts):
        k = rng.randint(1, len(lower))
        cover = rng.sample(lower, k)
        family = {i: rng.choice(model.subcosmoses[i].carrier) for i in cover}
        if check_compatible(model, family) is None:
            return family
    f = rng.choice(model.subcosmoses[top].carrier)
    cover = rng.sample(lower, rng.randint(1, len(lower)))
    family = {i: model.rho(top, i, f) for i in cover}
    if check_compatible(model, family) is None:
        return family
    return {}


@dataclass(frozen=True)
class SheafReport:
    composition: ConditionReport
    separated: ConditionReport
    gluing: ConditionReport
    families: tuple = ()  # (family, amalgam or None)

    @property
    def passed(self) -> bool:
        return self.composition.passed and self.separated.passed and (self.gluing.passed or self.gluing.skipped)


def validate_sheaf_conditions(model: MultiCosmosModel, top: Id, trials: int = 100, seed: int = 0) -> SheafReport:
    """Composition, separatedness, and gluing on ``trials`` random compatible families."""
    composition = validate_composition(model)
    separated = validate_separated(model, top)
    if trials <= 0:
        return SheafReport(composition, separated, ConditionReport(True, skipped=True))
    rng = random.Random(seed)
    failures, families = [], []
    for _ in range(trials):
        family = random_compatible_family(model, top, rng)
        if not family:
            continue
        try:
            amalgam = glue(model, top, family)
        except NoAmalgam:
            amalgam = None
            failures.append(dict(family))
        families.append((dict(family), amalgam))
    if not families:
        return SheafReport(composition, separated, ConditionReport(True, skipped=True))
    return SheafReport(composition, separated, ConditionReport(not failures, tuple(failures)), tuple(families))
