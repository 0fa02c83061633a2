"""Command line: validate, convert, roundtrip, fuzz, report.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from .. import linalg
from ..errors import RuthVBError, StructureError, UsageError
from ..groupoid import validate_groupoid
from ..reports import Report
from ..ruth import validate_morphism, validate_ruth
from ..semidirect import semidirect
from ..twoterm import (extract_chain_map, extract_homotopy, phi_object,
                       phi_onemorphism, phi_twomorphism, split_bundle)
from ..vb import validate_vb
from ..weak import (action_groupoid, act_on_morphism, validate_equivariant,
                    validate_weak_representation, EquivariantMap)
from ..equivalences import (reconstruct_equivariant, ruth_from_wrep,
                            triangle_witness, vb_to_wrep, wrep_from_ruth)
from . import fixtures, generators, serialize


def _validator_for(kind: str):
    return {
        "groupoid": validate_groupoid,
        "complex": lambda c: Report("complex"),
        "ruth": validate_ruth,
        "morphism": validate_morphism,
        "vb": validate_vb,
        "wrep": validate_weak_representation,
        "equivariant": validate_equivariant,
    }[kind]


def _emit(report: Report, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    else:
        print(report.to_text())
    return 0 if report.passed else 1


def cmd_validate(args) -> int:
    kind, obj, _ = serialize.load_instance(Path(args.file).read_text(),
                                           expect_kind=args.kind)
    t0 = time.perf_counter()
    report = _validator_for(kind)(obj)
    report.subject = f"{kind} {args.file}"
    report.seconds = time.perf_counter() - t0
    return _emit(report, args.format)


CONVERSIONS = {
    ("ruth", "wrep"): "wrep",
    ("wrep", "ruth"): "ruth",
    ("ruth", "vb"): "vb",
    ("wrep", "vb"): "vb",
    ("vb", "wrep"): "wrep",
}


def cmd_convert(args) -> int:
    if (args.from_kind, args.to_kind) not in CONVERSIONS:
        raise UsageError(f"unsupported conversion {args.from_kind} -> {args.to_kind}")
    kind, obj, _ = serialize.load_instance(Path(args.file).read_text(),
                                           expect_kind=args.from_kind)
    pre = _validator_for(kind)(obj)
    if not pre.passed:
        pre.subject = f"input {kind} {args.file}"
        print(pre.to_text(), file=sys.stderr)
        return 1
    metadata = {"conversion": f"{args.from_kind}->{args.to_kind}"}
    if (args.from_kind, args.to_kind) == ("ruth", "wrep"):
        out = wrep_from_ruth(obj, validate=False)
    elif (args.from_kind, args.to_kind) == ("wrep", "ruth"):
        out = ruth_from_wrep(obj)
        witness = _wrep_recovery_witness(obj, out)
        wrep_report = validate_equivariant(witness)
        if not wrep_report.passed:
            print(wrep_report.to_text(), file=sys.stderr)
            return 1
        metadata["witness"] = "validated equivariant isomorphism onto the input"
    elif (args.from_kind, args.to_kind) == ("ruth", "vb"):
        out = semidirect(obj, validate=False)
    elif (args.from_kind, args.to_kind) == ("wrep", "vb"):
        out = action_groupoid(obj, validate=False)
    else:
        result = vb_to_wrep(obj, validate=False)
        out = result.wrep
        metadata["connection"] = result.connection.rule
        metadata["witness"] = "validated action-groupoid isomorphism onto the input"
    post = _validator_for(args.to_kind)(out)
    if not post.passed:
        post.subject = "converted output"
        print(post.to_text(), file=sys.stderr)
        return 1
    text = serialize.dumps_instance(args.to_kind, out, metadata)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")
    return 0


def _wrep_recovery_witness(w, r) -> EquivariantMap:
    """Strictly intertwining equivariant map from the canonical-basis weak
    representation of the recovered structure onto the given one."""
    w2 = wrep_from_ruth(r, validate=False)
    _, iso = split_bundle(w.bundle)
    g = w.groupoid
    return EquivariantMap(
        w2, w,
        {x: iso.obj_maps[x] for x in g.objects},
        {x: iso.arr_maps[x] for x in g.objects},
        {a: linalg.compose(w.fiber_unit(g.tgt[a]),
                           linalg.compose(w.a0[a], iso.obj_maps[g.src[a]]))
         for a in g.arrows})


def _trial_ruth(args, rng, obj):
    if obj is not None:
        return obj
    return generators.random_ruth(rng, max_dim=args.max_dim)


def _pipeline_ruth_vb(args, rng, obj, report, trial):
    r = _trial_ruth(args, rng, obj)
    sd = semidirect(r, validate=False)
    rep = validate_vb(sd)
    report.extend(rep, prefix=f"trial {trial}: semidirect: ")
    res = vb_to_wrep(sd, validate=False)
    back = ruth_from_wrep(res.wrep)
    if back != r:
        report.add("ruth-vb-roundtrip", f"trial {trial}",
                   "recovered representation equals input", "differs")


def _pipeline_vb_wrep(args, rng, obj, report, trial):
    v = obj if obj is not None else generators.random_vb(rng, max_dim=args.max_dim)
    res = vb_to_wrep(v, validate=False)
    rep = validate_weak_representation(res.wrep)
    report.extend(rep, prefix=f"trial {trial}: kernel action: ")


def _pipeline_wrep_ruth(args, rng, obj, report, trial):
    w = obj if obj is not None else generators.random_wrep(rng, max_dim=args.max_dim)
    r = ruth_from_wrep(w)
    rep = validate_ruth(r)
    report.extend(rep, prefix=f"trial {trial}: recovered: ")
    rep = validate_equivariant(_wrep_recovery_witness(w, r))
    report.extend(rep, prefix=f"trial {trial}: witness: ")


def _pipeline_triangle(args, rng, obj, report, trial):
    r = _trial_ruth(args, rng, obj)
    try:
        triangle_witness(r, validate=False)
    except RuthVBError as exc:
        report.add("triangle", f"trial {trial}", "verified isomorphism", str(exc))


def _pipeline_phi_hom(args, rng, obj, report, trial):
    c = generators.random_complex(rng, max_dim=args.max_dim)
    d = generators.random_complex(rng, c.base, max_dim=args.max_dim)
    f = generators.random_chain_map(rng, c, d)
    if extract_chain_map(phi_onemorphism(f)) != f:
        report.add("phi-hom", f"trial {trial} (chain map)", "exact recovery", "differs")
    h = generators.random_homotopy_from(rng, f)
    if extract_homotopy(phi_twomorphism(h)) != h:
        report.add("phi-hom", f"trial {trial} (homotopy)", "exact recovery", "differs")
    c2, iso = split_bundle(phi_object(c))
    if c2 != c or not all(m.is_identity() for m in iso.arr_maps.values()):
        report.add("phi-hom", f"trial {trial} (split)", "identity change of basis",
                   "nontrivial")


def _pipeline_act_ff(args, rng, obj, report, trial):
    e = obj if obj is not None else generators.random_equivariant(rng, max_dim=args.max_dim)
    phi = act_on_morphism(e, validate=False)
    back = reconstruct_equivariant(phi, e.source, e.target)
    if back != e:
        report.add("act-ff", f"trial {trial}", "reconstruction equals input", "differs")
    if act_on_morphism(back, validate=False) != phi:
        report.add("act-ff", f"trial {trial}", "round trip fixes the map", "differs")


PIPELINES = {
    "ruth-vb": (_pipeline_ruth_vb, "ruth"),
    "vb-wrep": (_pipeline_vb_wrep, "vb"),
    "wrep-ruth": (_pipeline_wrep_ruth, "wrep"),
    "triangle": (_pipeline_triangle, "ruth"),
    "phi-hom": (_pipeline_phi_hom, None),
    "act-ff": (_pipeline_act_ff, "equivariant"),
}


def cmd_roundtrip(args) -> int:
    runner, file_kind = PIPELINES[args.pipeline]
    obj = None
    if args.file:
        if file_kind is None:
            raise UsageError(f"pipeline {args.pipeline} does not take an input file")
        _, obj, _ = serialize.load_instance(Path(args.file).read_text(),
                                            expect_kind=file_kind)
        pre = _validator_for(file_kind)(obj)
        if not pre.passed:
            print(pre.to_text(), file=sys.stderr)
            return 1
    rng = random.Random(args.seed)
    report = Report(f"roundtrip {args.pipeline} ({args.trials} trial(s), seed {args.seed})")
    t0 = time.perf_counter()
    for trial in range(args.trials):
        runner(args, rng, obj if trial == 0 else None, report, trial)
    report.seconds = time.perf_counter() - t0
    return _emit(report, args.format)


FUZZ_KINDS = {
    "groupoid": ("random_groupoid", validate_groupoid, "mutate_groupoid_comp"),
    "ruth": ("random_ruth", validate_ruth, "mutate_ruth_unit_cell"),
    "vb": ("random_vb", validate_vb, "mutate_vb_cell"),
    "wrep": ("random_wrep", validate_weak_representation, "mutate_wrep_alpha_unit"),
    "equivariant": ("random_equivariant", validate_equivariant,
                    "mutate_equivariant_delta_unit"),
}

FUZZ_POOL_CAP = 6


def run_fuzz(rng: random.Random, trials: int, max_objects: int = 4,
             max_arrows: int = 12, max_dim: int = 2) -> tuple[Report, int, int]:
    """Mutation-kill loop: each trial mutates a valid instance from a small
    per-kind pool and asserts the kind's validator flags it.  Roughly one in
    ten trials is a no-op control that must still validate."""
    report = Report(f"fuzz ({trials} trial(s))")
    pools: dict[str, list] = {k: [] for k in FUZZ_KINDS}
    killed = controls = 0
    for trial in range(trials):
        kind = rng.choice(tuple(FUZZ_KINDS))
        gen_name, validator, mut_name = FUZZ_KINDS[kind]
        pool = pools[kind]
        if len(pool) < FUZZ_POOL_CAP:
            if kind == "groupoid":
                base = generators.random_groupoid(rng, max_objects, max_arrows)
            else:
                base = getattr(generators, gen_name)(rng, max_dim=max_dim)
            if not validator(base).passed:
                report.add("generator", f"trial {trial} ({kind})",
                           "valid generated instance", "invalid")
                continue
            pool.append(base)
        base = pool[rng.randrange(len(pool))]
        if rng.random() < 0.1:
            controls += 1
            if not validator(base).passed:
                report.add("control", f"trial {trial} ({kind})",
                           "no-op mutation stays valid", "flagged")
            continue
        mutated = getattr(generators, mut_name)(rng, base)
        if mutated is None:
            controls += 1
            continue
        instance, desc = mutated
        if validator(instance).passed:
            report.add("mutation-escape", f"trial {trial} ({kind}) {desc}",
                       "validator flags the mutation", "passed validation")
        else:
            killed += 1
    return report, killed, controls


def cmd_fuzz(args) -> int:
    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    report, killed, controls = run_fuzz(rng, args.trials, args.max_objects,
                                        args.max_arrows, args.max_dim)
    report.seconds = time.perf_counter() - t0
    report.subject = (f"fuzz ({args.trials} trial(s), seed {args.seed})"
                      f" [killed {killed}, controls {controls}]")
    return _emit(report, args.format)


def cmd_report(args) -> int:
    doc = json.loads(Path(args.file).read_text())
    if not isinstance(doc, dict) or "verdict" not in doc:
        raise StructureError("not a report file")
    rep = Report(doc.get("subject", args.file), seconds=doc.get("seconds", 0.0))
    for e in doc.get("entries", []):
        rep.add(e["check"], e["location"], e["expected"], e["actual"])
    print(rep.to_text())
    return 0 if rep.passed else 1


def cmd_fixtures(args) -> int:
    for path in fixtures.write_fixture_files(args.dir):
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ruthvb",
        description="Exact checks and conversions for representations up to "
                    "homotopy, weak representations, and VB-groupoids over "
                    "finite groupoids.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("validate", help="run the kind's validator on an instance file")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=serialize.KINDS)
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("convert", help="convert along a supported edge")
    sp.add_argument("file")
    sp.add_argument("--from", dest="from_kind", required=True, choices=serialize.KINDS)
    sp.add_argument("--to", dest="to_kind", required=True, choices=serialize.KINDS)
    sp.add_argument("--out")
    common(sp)
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("roundtrip", help="run an equivalence pipeline with witnesses")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--pipeline", required=True, choices=sorted(PIPELINES))
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-objects", type=int, default=4)
    sp.add_argument("--max-arrows", type=int, default=12)
    sp.add_argument("--max-dim", type=int, default=3)
    common(sp)
    sp.set_defaults(func=cmd_roundtrip)

    sp = sub.add_parser("fuzz", help="mutation-kill run over generated instances")
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-objects", type=int, default=4)
    sp.add_argument("--max-arrows", type=int, default=12)
    sp.add_argument("--max-dim", type=int, default=3)
    common(sp)
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("report", help="render a machine report as text")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("fixtures", help="write the canonical fixture files")
    sp.add_argument("dir")
    sp.set_defaults(func=cmd_fixtures)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, StructureError, FileNotFoundError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except RuthVBError as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
