"""Loading and saving instance files.

An instance file is one JSON document with four sections, each a mapping
from names to structures:

    {
      "quantaloid":   { "Q": { "objects": [...],
                               "hom": {"X->Y": {"elements": [...], "leq": [[i,j], ...]}},
                               "compose": {"X->Y->Z": [[...], ...]},
                               "units": {"X": k} } },
      "categories":   { "A": {"base": "Q", "objects": [{"name": ..., "type": ...}, ...],
                              "hom": [[...], ...]} },
      "functors":     { "F": {"dom": "A", "cod": "B", "map": [...]} },
      "distributors": { "phi": {"dom": "A", "cod": "B", "entries": [[...], ...]} }
    }

Hom rows are indexed by the target object, columns by the source.  Loading
resolves every cross-reference and validates shapes, raising MalformedInput
on any structural problem; the algebraic axioms are a separate concern
(``validate_instance`` runs all the verifiers and returns their reports).
Serialization is canonical: sorted keys, two-space indent, trailing newline,
so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .lattice import FiniteLattice, MalformedInput
from .quantaloid import Quantaloid, verify_quantaloid
from .category import (
    QCategory,
    QDistributor,
    QFunctor,
    verify_category,
    verify_distributor,
    verify_functor,
)
from .report import Violation


@dataclass
class Instance:
    quantaloids: dict[str, Quantaloid] = field(default_factory=dict)
    categories: dict[str, QCategory] = field(default_factory=dict)
    functors: dict[str, QFunctor] = field(default_factory=dict)
    distributors: dict[str, QDistributor] = field(default_factory=dict)
    category_base: dict[str, str] = field(default_factory=dict)
    distributor_ends: dict[str, tuple[str, str]] = field(default_factory=dict)
    functor_ends: dict[str, tuple[str, str]] = field(default_factory=dict)


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise MalformedInput(message)


def lattice_from_json(data) -> FiniteLattice:
    _expect(isinstance(data, dict) and "elements" in data and "leq" in data,
            "lattice needs 'elements' and 'leq'")
    names = tuple(str(x) for x in data["elements"])
    pairs = []
    for item in data["leq"]:
        _expect(isinstance(item, list) and len(item) == 2, "leq entries are [i, j] pairs")
        pairs.append((int(item[0]), int(item[1])))
    return FiniteLattice.from_pairs(names, pairs)


def lattice_to_json(lat: FiniteLattice) -> dict:
    return {
        "elements": list(lat.names),
        "leq": [[i, j] for i in range(lat.n) for j in range(lat.n) if lat.le(i, j)],
    }


def quantaloid_from_json(data) -> Quantaloid:
    _expect(isinstance(data, dict), "quantaloid must be an object")
    for key in ("objects", "hom", "compose", "units"):
        _expect(key in data, f"quantaloid needs '{key}'")
    objects = tuple(str(x) for x in data["objects"])
    for name in objects:
        _expect("->" not in name, f"object name {name!r} may not contain '->'")
    homs = {}
    for key, sub in data["hom"].items():
        parts = key.split("->")
        _expect(len(parts) == 2, f"hom key {key!r} is not 'X->Y'")
        _expect(parts[0] in objects and parts[1] in objects, f"hom key {key!r} unknown objects")
        homs[(parts[0], parts[1])] = lattice_from_json(sub)
    compose = {}
    for key, rows in data["compose"].items():
        parts = key.split("->")
        _expect(len(parts) == 3, f"compose key {key!r} is not 'X->Y->Z'")
        compose[(parts[0], parts[1], parts[2])] = tuple(
            tuple(int(v) for v in row) for row in rows
        )
    units = {str(k): int(v) for k, v in data["units"].items()}
    return Quantaloid(objects, homs, compose, units)


def quantaloid_to_json(q: Quantaloid) -> dict:
    return {
        "objects": list(q.objects),
        "hom": {f"{x}->{y}": lattice_to_json(q.hom(x, y))
                for x in q.objects for y in q.objects},
        "compose": {f"{x}->{y}->{z}": [list(row) for row in q.compose_table[(x, y, z)]]
                    for x in q.objects for y in q.objects for z in q.objects},
        "units": {x: q.unit(x) for x in q.objects},
    }


def category_from_json(data, quantaloids: dict[str, Quantaloid]) -> tuple[QCategory, str]:
    _expect(isinstance(data, dict), "category must be an object")
    for key in ("base", "objects", "hom"):
        _expect(key in data, f"category needs '{key}'")
    base_name = str(data["base"])
    _expect(base_name in quantaloids, f"unknown quantaloid {base_name!r}")
    q = quantaloids[base_name]
    names = []
    types = []
    for obj in data["objects"]:
        _expect(isinstance(obj, dict) and "name" in obj and "type" in obj,
                "category objects are {'name', 'type'} records")
        names.append(str(obj["name"]))
        types.append(str(obj["type"]))
    hom = tuple(tuple(int(v) for v in row) for row in data["hom"])
    return QCategory(q, tuple(names), tuple(types), hom), base_name


def category_to_json(cat: QCategory, base_name: str) -> dict:
    return {
        "base": base_name,
        "objects": [{"name": n, "type": t} for n, t in zip(cat.objects, cat.types)],
        "hom": [list(row) for row in cat.hom],
    }


def load_instance(data) -> Instance:
    """Build an Instance from a parsed JSON document (or a JSON string)."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"not valid JSON: {exc}") from None
    _expect(isinstance(data, dict), "instance file must be a JSON object")
    inst = Instance()
    for name, sub in (data.get("quantaloid") or {}).items():
        inst.quantaloids[str(name)] = quantaloid_from_json(sub)
    for name, sub in (data.get("categories") or {}).items():
        cat, base = category_from_json(sub, inst.quantaloids)
        inst.categories[str(name)] = cat
        inst.category_base[str(name)] = base
    for name, sub in (data.get("functors") or {}).items():
        _expect(isinstance(sub, dict) and {"dom", "cod", "map"} <= set(sub),
                f"functor {name!r} needs dom/cod/map")
        dom, cod = str(sub["dom"]), str(sub["cod"])
        _expect(dom in inst.categories, f"functor {name!r}: unknown category {dom!r}")
        _expect(cod in inst.categories, f"functor {name!r}: unknown category {cod!r}")
        inst.functors[str(name)] = QFunctor(
            inst.categories[dom], inst.categories[cod],
            tuple(int(v) for v in sub["map"]))
        inst.functor_ends[str(name)] = (dom, cod)
    for name, sub in (data.get("distributors") or {}).items():
        _expect(isinstance(sub, dict) and {"dom", "cod", "entries"} <= set(sub),
                f"distributor {name!r} needs dom/cod/entries")
        dom, cod = str(sub["dom"]), str(sub["cod"])
        _expect(dom in inst.categories, f"distributor {name!r}: unknown category {dom!r}")
        _expect(cod in inst.categories, f"distributor {name!r}: unknown category {cod!r}")
        inst.distributors[str(name)] = QDistributor(
            inst.categories[dom], inst.categories[cod],
            tuple(tuple(int(v) for v in row) for row in sub["entries"]))
        inst.distributor_ends[str(name)] = (dom, cod)
    return inst


def load_instance_file(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from None
    return load_instance(text)


def dump_instance(inst: Instance) -> dict:
    data: dict = {"quantaloid": {}, "categories": {}, "functors": {}, "distributors": {}}
    for name, q in inst.quantaloids.items():
        data["quantaloid"][name] = quantaloid_to_json(q)
    for name, cat in inst.categories.items():
        data["categories"][name] = category_to_json(cat, inst.category_base[name])
    for name, f in inst.functors.items():
        dom, cod = inst.functor_ends[name]
        data["functors"][name] = {"dom": dom, "cod": cod, "map": list(f.mapping)}
    for name, d in inst.distributors.items():
        dom, cod = inst.distributor_ends[name]
        data["distributors"][name] = {"dom": dom, "cod": cod,
                                      "entries": [list(r) for r in d.entries]}
    return data


def canonical_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def validate_instance(inst: Instance) -> dict[str, list[Violation]]:
    """Run every verifier; a mapping from 'kind name' to its violation list."""
    out: dict[str, list[Violation]] = {}
    for name, q in inst.quantaloids.items():
        out[f"quantaloid {name}"] = verify_quantaloid(q)
    for name, cat in inst.categories.items():
        out[f"category {name}"] = verify_category(cat)
    for name, f in inst.functors.items():
        out[f"functor {name}"] = verify_functor(f)
    for name, d in inst.distributors.items():
        out[f"distributor {name}"] = verify_distributor(d)
    return out
