"""Batch front-end: validate, check, construct, verify, generate.

Exit codes are uniform across subcommands:

    0  success / property holds
    1  property fails, witnesses printed
    2  malformed input
    3  oracle budget exhausted (inconclusive)

The default oracle budget comes from the QEXP_BUDGET environment variable
when set.  Output files are written atomically and are byte-stable for
identical invocations.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from .lattice import MalformedInput, chain_lattice, m3_lattice, n5_lattice
from .quantaloid import (
    boolean_quantale,
    chain_quantale,
    cyclic_monoid,
    endo_quantale,
    free_quantaloid_on_graph,
    powerset_monoid_quantale,
)
from .category import pullback
from .exponentiable import (
    ConditionViolated,
    FactorizationWitness,
    JoinMeetWitness,
    check_condition_one,
    check_condition_two,
    partial_product,
    slice_exponential,
)
from . import instances, oracle

OK, PROPERTY_FAILS, MALFORMED, INCONCLUSIVE = 0, 1, 2, 3


def default_budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("QEXP_BUDGET")
    return int(env) if env else 1_000_000


def _probes(inst_or_base, args):
    base = inst_or_base
    max_objs = getattr(args, "max_probe_objects", None) or 2
    fam = oracle.default_probes(base)
    if max_objs < 2:
        fam = oracle.ProbeFamily(fam.points, (), fam.extras)
    return fam


def _witness_json(w, functor) -> dict:
    a, b = functor.dom, functor.cod
    if isinstance(w, JoinMeetWitness):
        lat = a.hom_lat(w.tgt, w.src)
        return {
            "kind": "join-meet",
            "a": a.objects[w.src], "a'": a.objects[w.tgt],
            "f1": lat.names[w.f1], "f2": lat.names[w.f2],
            "lhs": lat.names[w.lhs], "rhs": lat.names[w.rhs],
            "indices": list(w.as_tuple()[1:]),
        }
    assert isinstance(w, FactorizationWitness)
    q = a.base
    lat = a.hom_lat(w.tgt, w.src)
    lat_f = q.hom(a.types[w.src], b.types[w.via])
    lat_g = q.hom(b.types[w.via], a.types[w.tgt])
    return {
        "kind": "factorization",
        "a": a.objects[w.src], "a''": a.objects[w.tgt], "b'": b.objects[w.via],
        "f": lat_f.names[w.f], "g": lat_g.names[w.g],
        "lhs": lat.names[w.lhs], "rhs": lat.names[w.rhs],
        "indices": list(w.as_tuple()[1:]),
    }


def cmd_validate(args) -> int:
    inst = instances.load_instance_file(args.file)
    reports = instances.validate_instance(inst)
    bad = 0
    for name in sorted(reports):
        violations = reports[name]
        if violations:
            bad += 1
            print(f"{name}: {len(violations)} violation(s)")
            for v in violations:
                print(f"  {v}")
        else:
            print(f"{name}: ok")
    return PROPERTY_FAILS if bad else OK


def _resolve_functor(inst, name):
    if name not in inst.functors:
        raise MalformedInput(f"no functor named {name!r}")
    return inst.functors[name]


def cmd_check(args) -> int:
    inst = instances.load_instance_file(args.file)
    func = _resolve_functor(inst, args.functor)
    one = check_condition_one(func)
    two = check_condition_two(func)
    report = {
        "verdict": one.verdict and two.verdict,
        "condition1": {
            "verdict": one.verdict,
            "witnesses": [_witness_json(w, func) for w in one.witnesses],
        },
        "condition2": {
            "verdict": two.verdict,
            "witnesses": [_witness_json(w, func) for w in two.witnesses],
        },
        "witnesses": [_witness_json(w, func) for w in one.witnesses + two.witnesses],
    }
    print(instances.canonical_json(report), end="")
    return OK if report["verdict"] else PROPERTY_FAILS


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qexp-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fresh(name: str, taken) -> str:
    while name in taken:
        name += "'"
    return name


def cmd_pp(args) -> int:
    inst = instances.load_instance_file(args.file)
    func = _resolve_functor(inst, args.functor)
    if args.target not in inst.categories:
        raise MalformedInput(f"no category named {args.target!r}")
    target = inst.categories[args.target]
    try:
        pp = partial_product(func, target)
    except ConditionViolated as exc:
        print("not exponentiable; witnesses:")
        for w in exc.report.witnesses:
            print(f"  {_witness_json(w, func)}")
        return PROPERTY_FAILS
    if args.verify:
        verdict = oracle.verify_universal_property(
            func, target, pp, probes=_probes(func.dom.base, args),
            budget=default_budget(args))
        if verdict.inconclusive:
            print(f"oracle inconclusive after {verdict.checked} cone checks")
            return INCONCLUSIVE
        if not verdict.passed:
            print("universal property FAILED:")
            for fail in verdict.failures:
                print(f"  {fail}")
            return PROPERTY_FAILS
        print(f"universal property verified on {verdict.checked} cones")
    out = _pp_instance(inst, args, func, target, pp)
    _write_atomic(args.output, instances.canonical_json(instances.dump_instance(out)))
    print(f"wrote {args.output}")
    return OK


def _pp_instance(inst, args, func, target, pp):
    base_name = inst.category_base[inst.functor_ends[args.functor][0]]
    out = instances.Instance()
    out.quantaloids[base_name] = inst.quantaloids[base_name]
    dom_name, cod_name = inst.functor_ends[args.functor]
    for name in (dom_name, cod_name, args.target):
        out.categories[name] = inst.categories[name]
        out.category_base[name] = base_name
    taken = set(out.categories)
    p_name = _fresh("P", taken)
    out.categories[p_name] = pp.category
    out.category_base[p_name] = base_name
    taken.add(p_name)
    pq_name = _fresh("P_x_A", taken)
    out.categories[pq_name] = pp.ev.dom
    out.category_base[pq_name] = base_name
    out.functors["proj"] = pp.proj
    out.functor_ends["proj"] = (p_name, cod_name)
    out.functors["ev"] = pp.ev
    out.functor_ends["ev"] = (pq_name, args.target)
    return out


def cmd_exp(args) -> int:
    inst = instances.load_instance_file(args.file)
    func = _resolve_functor(inst, args.functor)
    over = _resolve_functor(inst, args.target)
    try:
        exp = slice_exponential(func, over)
    except ConditionViolated as exc:
        print("not exponentiable; witnesses:")
        for w in exc.report.witnesses:
            print(f"  {_witness_json(w, func)}")
        return PROPERTY_FAILS
    if args.verify:
        verdict = oracle.check_adjunction_bijection(
            func, over, exp, probes=_probes(func.dom.base, args),
            budget=default_budget(args))
        if verdict.inconclusive:
            print(f"oracle inconclusive after {verdict.checked} checks")
            return INCONCLUSIVE
        if not verdict.passed:
            print("adjunction bijection FAILED:")
            for fail in verdict.failures:
                print(f"  {fail}")
            return PROPERTY_FAILS
        print(f"adjunction bijection verified ({verdict.checked} items)")
    base_name = inst.category_base[inst.functor_ends[args.functor][0]]
    out = instances.Instance()
    out.quantaloids[base_name] = inst.quantaloids[base_name]
    cod_name = inst.functor_ends[args.functor][1]
    out.categories[cod_name] = inst.categories[cod_name]
    out.category_base[cod_name] = base_name
    e_name = _fresh("E", set(out.categories))
    out.categories[e_name] = exp.category
    out.category_base[e_name] = base_name
    out.functors["to_base"] = exp.to_base
    out.functor_ends["to_base"] = (e_name, cod_name)
    _write_atomic(args.output, instances.canonical_json(instances.dump_instance(out)))
    print(f"wrote {args.output}")
    return OK


def cmd_oracle(args) -> int:
    budget = default_budget(args)
    if args.suite == "preorder-equivalence":
        result = oracle.preorder_equivalence_experiment(
            max_objects=args.max_objects, budget=budget, seed=args.seed)
        print(f"instances: {result.total}")
        print(f"agreements: {result.agreements}")
        print(f"disagreements: {len(result.disagreements)}")
        for d in result.disagreements[:20]:
            print(f"  {d}")
        print(f"inconclusive: {len(result.inconclusive)}")
        print(f"elapsed: {result.elapsed:.1f}s")
        if result.inconclusive:
            return INCONCLUSIVE
        return OK if result.passed else PROPERTY_FAILS
    if not args.file or not args.functor:
        raise MalformedInput("oracle needs either --suite or a file with --functor")
    inst = instances.load_instance_file(args.file)
    func = _resolve_functor(inst, args.functor)
    result = oracle.brute_force_exponentiable(func, budget=budget, seed=args.seed)
    if result.inconclusive:
        print(f"inconclusive: {result.evidence}")
        return INCONCLUSIVE
    print(f"exponentiable: {result.ok}"
          + (f" ({result.evidence})" if result.evidence else ""))
    return OK if result.ok else PROPERTY_FAILS


_STOCK_LATTICES = {
    "chain2": lambda: chain_lattice(2),
    "chain3": lambda: chain_lattice(3),
    "chain4": lambda: chain_lattice(4),
    "m3": m3_lattice,
    "n5": n5_lattice,
}

_STOCK_MONOIDS = {
    "z1": lambda: cyclic_monoid(1),
    "z2": lambda: cyclic_monoid(2),
    "z3": lambda: cyclic_monoid(3),
}


def cmd_gen(args) -> int:
    if args.builder == "boolean":
        q = boolean_quantale()
    elif args.builder == "chain":
        q = chain_quantale(args.size)
    elif args.builder == "endo":
        if args.lattice not in _STOCK_LATTICES:
            raise MalformedInput(f"unknown lattice {args.lattice!r}; "
                                 f"one of {sorted(_STOCK_LATTICES)}")
        q = endo_quantale(_STOCK_LATTICES[args.lattice]())
    elif args.builder == "powerset":
        if args.monoid not in _STOCK_MONOIDS:
            raise MalformedInput(f"unknown monoid {args.monoid!r}; "
                                 f"one of {sorted(_STOCK_MONOIDS)}")
        q = powerset_monoid_quantale(_STOCK_MONOIDS[args.monoid]())
    elif args.builder == "free":
        if not args.graph:
            raise MalformedInput("free builder needs --graph 'a>b,b>c'")
        edges = []
        nodes = []
        for part in args.graph.split(","):
            ends = part.split(">")
            if len(ends) != 2:
                raise MalformedInput(f"bad edge {part!r}; expected 'x>y'")
            src, tgt = ends[0].strip(), ends[1].strip()
            for node in (src, tgt):
                if node not in nodes:
                    nodes.append(node)
            edges.append((src, tgt))
        q = free_quantaloid_on_graph(nodes, edges)
    else:
        raise MalformedInput(f"unknown builder {args.builder!r}")
    inst = instances.Instance()
    inst.quantaloids["Q"] = q
    _write_atomic(args.output, instances.canonical_json(instances.dump_instance(inst)))
    print(f"wrote {args.output}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qexp",
        description="Exponentiability of functors between quantaloid-enriched categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_file=True):
        if needs_file:
            p.add_argument("file", help="instance JSON file")
        p.add_argument("--budget", type=int, default=None,
                       help="oracle budget (default: QEXP_BUDGET or 1000000)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-probe-objects", type=int, default=2, dest="max_probe_objects")

    p = sub.add_parser("validate", help="validate an instance file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="decide exponentiability of a functor")
    p.add_argument("file")
    p.add_argument("--functor", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pp", help="construct a partial product")
    common(p)
    p.add_argument("--functor", required=True)
    p.add_argument("--target", required=True, help="target category name")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_pp)

    p = sub.add_parser("exp", help="construct a slice exponential")
    common(p)
    p.add_argument("--functor", required=True)
    p.add_argument("--target", required=True, help="functor name (the exponent base)")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_exp)

    p = sub.add_parser("oracle", help="run brute-force verification")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--suite", choices=["preorder-equivalence"], default=None)
    p.add_argument("--functor", default=None)
    p.add_argument("--max-objects", type=int, default=2)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-probe-objects", type=int, default=2, dest="max_probe_objects")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="emit a builder quantaloid as an instance file")
    p.add_argument("--builder", required=True,
                   choices=["boolean", "chain", "endo", "powerset", "free"])
    p.add_argument("--size", type=int, default=2, help="chain builder ceiling")
    p.add_argument("--lattice", default="m3", help="endo builder lattice")
    p.add_argument("--monoid", default="z2", help="powerset builder monoid")
    p.add_argument("--graph", default=None, help="free builder edges, e.g. 'a>b,b>c'")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
