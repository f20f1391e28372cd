"""Command-line entry point: ``python -m perfectlike <command> ...``.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for usage errors and invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bounds as bnd
from . import catalog, config, construct, lengthen, repro, spectra, verify
from .errors import PerfectLikeError
from .space import Code, Partition


class UsageError(Exception):
    """Bad combination of command-line options."""


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _descriptor(code, what: dict) -> str:
    desc = {"q": code.q, "n": code.n, "size": len(code), "min_distance": code.min_distance,
            "oracle": bool(getattr(code, "is_oracle", False)), "construction": what}
    if getattr(code, "is_oracle", False):
        desc["structure"] = code.structure
    return json.dumps(desc, indent=2, sort_keys=True, default=str) + "\n"


# ---------------------------------------------------------------------------
# construct


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.what} needs {' '.join(missing)}")


def cmd_construct(args) -> int:
    what = args.what
    params = {"kind": what}
    result = None
    if what == "theorem4":
        _need(args, "m")
        result = construct.theorem4_code(args.m)
        params["m"] = args.m
        _emit(_descriptor(result, params), args.out)
        return 0
    _need(args, "q", "m")
    q, m = args.q, args.m
    params.update(q=q, m=m)
    if what == "hamming":
        result = construct.hamming_code(q, m).materialize()
    elif what == "shorten":
        result = construct.shortened_hamming(q, m)
    elif what == "puncture":
        result = construct.punctured_hamming(q, m)
    elif what == "cosetpack":
        _need(args, "lam")
        params["lambda"] = args.lam
        result = construct.coset_multifold_packing(q, m, args.lam)
    elif what == "dpart":
        D = construct.DPartition(q, m)
        if args.oracle:
            desc = {"q": q, "n": D.n, "classes": D.num_classes, "class_size": D.class_size,
                    "construction": params, "certificate": D.certificate()}
            _emit(json.dumps(desc, indent=2, sort_keys=True) + "\n", args.out)
        else:
            _emit(catalog.format_partition(D.materialize()), args.out)
        return 0
    elif what == "romanov":
        D = construct.DPartition(q, m)
        C = construct.hamming_coset_partition(q, m - 1)
        result = construct.romanov_perfect(C, D)
    elif what == "concat":
        B = catalog.read_partition(args.partition) if args.partition else construct.shortened_coset_partition(q, m - 1)
        params["b_partition"] = args.partition or f"cosets of the shortened Hamming code (q={q}, m={m - 1})"
        layout = construct.partition_of_S(B, construct.DPartition(q, m))
        result = construct.concat_code(layout, args.index)
        params["class_index"] = args.index
    if args.oracle or getattr(result, "is_oracle", False):
        _emit(_descriptor(result, params), args.out)
    else:
        _emit(catalog.format_code(result), args.out)
    return 0


# ---------------------------------------------------------------------------
# verify / bounds / spectra


def cmd_verify(args) -> int:
    code = catalog.read_code(args.file)
    kind = args.kind
    if kind == "packing":
        v = verify.is_multifold_packing(code, args.lam if args.lam is not None else 1)
    elif kind == "covering":
        if args.mu is None:
            raise UsageError("--kind covering needs --mu")
        v = verify.is_multiple_covering(code, args.mu)
    elif kind == "perfect":
        v = verify.is_one_perfect(code)
    elif kind == "cr":
        v = verify.is_completely_regular(code)
    else:
        v = verify.is_mds(code)
    print(f"{'PASS' if v else 'FAIL'} {kind}: {v.detail}")
    if kind == "cr" and v:
        for row in v.data["quotient"]:
            print(" ".join(str(x) for x in row))
    if not v and v.witness is not None:
        print(f"witness: {' '.join(map(str, v.witness))}", file=sys.stderr)
    return 0 if v else 1


def _bound_text(rep) -> str:
    return str(rep.bound) if rep.applicable else f"not applicable: {rep.reason}"


def cmd_bounds(args) -> int:
    if args.table is not None:
        if args.lam is None:
            raise UsageError("--table needs --lambda")
        rows = bnd.bounds_table(args.q, args.table, args.lam, args.mu)
        head = ["n", "packing", "dist2", "covering"]
        cells = [[str(n), str(p.bound), str(d.bound), str(c.bound) if c else "-"] for n, p, d, c in rows]
        if args.tsv:
            lines = ["\t".join(head)] + ["\t".join(r) for r in cells]
        else:
            widths = [max(len(r[k]) for r in [head] + cells) for k in range(4)]
            lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in [head] + cells]
        print("\n".join(lines))
        return 0
    if args.n is None or (args.lam is None and args.mu is None):
        raise UsageError("bounds needs --n and --lambda and/or --mu (or --table)")
    reports = []
    if args.lam is not None:
        fn = bnd.packing_upper_bound_dist2 if args.dist2 else bnd.packing_upper_bound
        reports.append(("packing", fn(args.q, args.n, args.lam)))
    if args.mu is not None:
        reports.append(("covering", bnd.covering_lower_bound(args.q, args.n, args.mu)))
    if len(reports) == 1:
        print(_bound_text(reports[0][1]))
    else:
        sep = "\t" if args.tsv else " "
        for name, rep in reports:
            print(f"{name}{sep}{_bound_text(rep)}")
    return 0 if all(r.applicable for _, r in reports) else 1


def cmd_spectra(args) -> int:
    code = catalog.read_code(args.file)
    dd = spectra.distance_distribution(code)
    dual = spectra.dual_distribution(dd)
    sep = "\t" if args.tsv else " "
    print(f"A{sep}{spectra.format_row(dd.A, args.tsv)}")
    print(f"B{sep}{spectra.format_row(dual.B, args.tsv)}")
    return 0


# ---------------------------------------------------------------------------
# lengthen


def _load_partition(args) -> Partition:
    if args.name:
        return catalog.load(args.name)
    if not args.file:
        raise UsageError("give a partition file or --name")
    return catalog.read_partition(args.file)


def cmd_lengthen(args) -> int:
    what = args.what
    if what == "code":
        if not args.file:
            raise UsageError("lengthen code needs a code file")
        B = catalog.read_code(args.file)
        cert = lengthen.lengthen_code(B)
        print(f"{cert.verdict}: {cert.reason}")
        if cert.ok:
            for a, part in enumerate(cert.parts, start=1):
                print(f"shell part for appended symbol {a}: {len(part)} words")
            if args.out:
                catalog.write_code(cert.lengthened, args.out, "lengthened 1-perfect code")
        else:
            print(f"witness: {cert.witness}")
        return 0 if cert.ok else 1
    if what == "partition":
        P = _load_partition(args)
        res = lengthen.lengthen_partition(P, threads=args.threads)
        print(f"{len(P)} classes, unique shell splitting: {sum(res.unique)}/{len(res.unique)}")
        if res.sat:
            print("SAT: the classes lengthen to a partition into 1-perfect codes")
            if args.out:
                catalog.write_partition(res.lengthened, args.out, "lengthened partition into 1-perfect codes")
            return 0
        print(f"UNSAT: conflict core of {len(res.core)} classes: {' '.join(res.core_labels)}")
        for w in res.witnesses:
            if len(w) == 5:
                li, a, lj, b, word = w
                print(f"  class {li} part {a} meets class {lj} part {b} at {' '.join(map(str, word))}")
            else:
                print(f"  class {w[0]}: {w[1]}")
        if args.out:
            core = Partition(Code.from_indices(P.q, P.n, _union(P, res.core)),
                             [P.classes[i] for i in res.core], res.core_labels)
            catalog.write_partition(core, args.out, "classes of a minimal conflict core")
        return 1
    if what == "classify-h33":
        cls = lengthen.classify_H33_partitions()
        print(f"{cls.total} partitions of H(3,3) into (3,3,3)_3 codes")
        print(f"{cls.count} equivalence classes")
        for k, c in enumerate(cls.classes):
            print(f"class {k}: orbit size {c['orbit_size']}, lengthening {'SAT' if c['lengthening'].sat else 'UNSAT'}")
        if args.out:
            text = "".join(catalog.format_partition(c["representative"], f"equivalence class {k}")
                           for k, c in enumerate(cls.classes))
            Path(args.out).write_text(text)
        return 0 if all(c["lengthening"].sat for c in cls.classes) else 1
    # search
    if args.seed is None:
        raise UsageError("lengthen search needs an explicit --seed")
    if args.q is None:
        raise UsageError("lengthen search needs --q")
    found = []
    for f in lengthen.search_partitions(args.q, args.seed, budget=args.budget_nodes, max_finds=args.max_finds):
        verdict = "SAT" if f.result.sat else f"UNSAT core {' '.join(f.result.core_labels)}"
        print(f"attempt {f.attempt}: {verdict}")
        if not f.result.sat:
            found.append(f)
    print(f"{len(found)} non-lengthenable partitions found")
    if args.out and found:
        text = "".join(catalog.format_partition(f.partition, f"non-lengthenable partition, attempt {f.attempt}")
                       for f in found)
        Path(args.out).write_text(text)
    return 0


def _union(P: Partition, idx):
    return np.concatenate([P.classes[i].words for i in idx])


# ---------------------------------------------------------------------------
# catalog / repro


def cmd_catalog(args) -> int:
    if args.what == "list":
        for name, desc in catalog.EMBEDDED.items():
            print(f"{name}\t{desc}")
        return 0
    if not args.name:
        raise UsageError("catalog export needs --name")
    _emit(catalog.format_partition(catalog.load(args.name)), args.out)
    return 0


def cmd_repro(args) -> int:
    if "all" in args.which:
        numbers = None
    else:
        try:
            numbers = sorted({int(x) for x in args.which})
        except ValueError:
            raise UsageError("repro takes 'all' or criterion numbers") from None
        unknown = [k for k in numbers if k not in repro.CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}")
    results = repro.run(numbers, seed=args.seed if args.seed is not None else 7)
    sys.stdout.write(repro.render(results, verbose=not args.quiet))
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="seed for randomized steps")
    common.add_argument("--threads", type=int, default=1, help="worker threads (never changes results)")
    common.add_argument("--budget", type=int, help=f"vertex budget (overrides ${config.ENV_VAR})")

    p = argparse.ArgumentParser(prog="perfectlike", description="Shortened-1-perfect-like codes toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build codes and partitions")
    c.add_argument("what", choices=["hamming", "shorten", "puncture", "cosetpack", "dpart",
                                    "romanov", "concat", "theorem4"])
    c.add_argument("--q", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--lambda", dest="lam", type=int)
    c.add_argument("--partition", help="B-partition file for concat")
    c.add_argument("--index", type=int, default=0, help="class of the S-partition for concat")
    c.add_argument("--oracle", action="store_true", help="print a JSON descriptor instead of the words")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="exhaustive checks on a code file")
    v.add_argument("file")
    v.add_argument("--kind", required=True, choices=["packing", "covering", "perfect", "cr", "mds"])
    v.add_argument("--lambda", dest="lam", type=int)
    v.add_argument("--mu", type=int)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", parents=[common], help="packing and covering bounds")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n", type=int)
    b.add_argument("--lambda", dest="lam", type=int)
    b.add_argument("--mu", type=int)
    b.add_argument("--dist2", action="store_true", help="bound for minimum distance 2")
    b.add_argument("--table", type=int, metavar="NMAX")
    b.add_argument("--tsv", action="store_true")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("spectra", parents=[common], help="distance and dual distributions")
    s.add_argument("file")
    s.add_argument("--tsv", action="store_true")
    s.set_defaults(func=cmd_spectra)

    lg = sub.add_parser("lengthen", parents=[common], help="lengthening checks and searches")
    lg.add_argument("what", choices=["code", "partition", "classify-h33", "search"])
    lg.add_argument("file", nargs="?")
    lg.add_argument("--name", choices=sorted(catalog.EMBEDDED))
    lg.add_argument("--q", type=int)
    lg.add_argument("--budget-nodes", type=int, default=20_000, help="search nodes for 'search'")
    lg.add_argument("--max-finds", type=int, default=None)
    lg.add_argument("--out")
    lg.set_defaults(func=cmd_lengthen)

    ct = sub.add_parser("catalog", parents=[common], help="embedded data")
    ct.add_argument("what", choices=["export", "list"])
    ct.add_argument("--name", choices=sorted(catalog.EMBEDDED))
    ct.add_argument("--out")
    ct.set_defaults(func=cmd_catalog)

    r = sub.add_parser("repro", parents=[common], help="run acceptance checks")
    r.add_argument("which", nargs="+", help="'all' or criterion numbers")
    r.add_argument("--quiet", action="store_true", help="table only")
    r.set_defaults(func=cmd_repro)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with config.budget(args.budget if args.budget is not None else config.get_budget()):
            return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PerfectLikeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
