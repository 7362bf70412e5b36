"""fieldcensus command line.

Exit status: 0 success, 2 invalid input, 3 a result that could not be fully
certified (unfactored discriminant, unresolved Galois label, unfinished shard).
"""

import argparse
import math
import sys

from . import census, heuristics, pipeline
from .hunter import SignatureSet
from .orders import FactorizationIncomplete

EXIT_OK, EXIT_INVALID, EXIT_UNCERTIFIED = 0, 2, 3


class Uncertified(RuntimeError):
    pass


def _degree_range(text):
    a, sep, b = text.partition("..")
    lo = int(a)
    hi = int(b) if sep else lo
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty degree range {text}")
    return range(lo, hi + 1)


def _bound(text):
    x = float(text)
    if not math.isfinite(x) or x < 1:
        raise argparse.ArgumentTypeError(f"bound must be a finite number >= 1, got {text}")
    return x


def _primes(text):
    return tuple(int(p) for p in text.split(",") if p.strip()) if text else ()


def _B_for(store, args):
    if getattr(args, "B", None) is not None:
        return args.B
    n = store.degree
    sig = SignatureSet.parse(store.header["signature"], n)
    return heuristics.bhargava_constant(heuristics.EulerProductJob(n, tuple(sorted(sig)), 12)).value


def _default_group(store, args):
    return args.group or f"S{store.degree}"


# subcommands

def cmd_enumerate(args, out):
    cfg = pipeline.JobConfig(args.degree, args.bound, args.signature, args.shards,
                             not args.no_deep, args.effort, args.sample).validate()
    pipeline.init_job(cfg, args.out)
    return _finish_job(args.out, args.jobs, args.checkpoint_every, out)


def cmd_resume(args, out):
    pipeline.load_job(args.dir)
    return _finish_job(args.dir, args.jobs, args.checkpoint_every, out)


def _finish_job(job_dir, jobs, every, out):
    results = pipeline.run_job(job_dir, jobs, every)
    store = pipeline.job_store(job_dir)
    path = f"{job_dir.rstrip('/')}/fields.tsv"
    census.write_store(path, store)
    counts = {}
    for r in store.records:
        counts[r.label] = counts.get(r.label, 0) + 1
    for label in sorted(counts):
        print(f"{label}\t{counts[label]}", file=out)
    print(f"wrote {len(store.records)} records to {path}", file=out)
    unc = sum(r["uncertified"] for r in results)
    amb = sum(r["ambiguous"] for r in results)
    if unc or amb:
        raise Uncertified(f"{unc} discriminants uncertified, {amb} Galois labels unresolved")
    return EXIT_OK


def cmd_merge(args, out):
    store = pipeline.merge_inputs(args.inputs)
    census.write_store(args.out, store)
    print(f"merged {len(store.records)} records into {args.out}", file=out)
    return EXIT_OK


def cmd_stats(args, out):
    store = census.read_store(args.store)
    group = _default_group(store, args)
    if args.curve:
        census.emit_curve_csv(census.counting_curve(store, group), out)
    elif args.mult is not None:
        hist = census.multiplicity_histogram(store, group, args.mult)
        print("k\tdiscriminants", file=out)
        for k, v in hist.items():
            print(f"{k}\t{v}", file=out)
    elif args.alphas:
        B = _B_for(store, args)
        curve = census.counting_curve(store, group)
        fit = None
        if args.fit:
            fit = census.FitResult(B, *args.fit, 0.0, 0, 0, 0.0)
        cols = ["X", "N", "E", "alpha1", "alpha2"] + (["P", "Delta"] if fit else [])
        print("\t".join(cols), file=out)
        top = int(math.floor(math.log10(store.bound) + 1e-9))
        for e in range(args.from_exp, top + 1):
            X = 10 ** e
            try:
                row = census.table_row(B, curve, X, fit)
            except census.NonpositiveErrorTerm as exc:
                row = {"X": X, "N": curve.N(X), "E": round(exc.E), "alpha1": "-", "alpha2": "-"}
            print("\t".join(str(row.get(c, "-")) for c in cols), file=out)
    else:
        X = args.X if args.X is not None else store.bound
        print(census.count_up_to(store, group, X), file=out)
    return EXIT_OK


def cmd_fit(args, out):
    store = census.read_store(args.store)
    group = _default_group(store, args)
    B = _B_for(store, args)
    res = census.fit_secondary_terms(census.counting_curve(store, group), B, args.imin)
    print(f"B\t{B:.10g}", file=out)
    print(f"c1\t{res.c1:.6g}\nc2\t{res.c2:.6g}\nc3\t{res.c3:.6g}", file=out)
    print(f"residual\t{res.residual:.6g}\npoints\t{res.points}\ncondition\t{res.condition:.3g}", file=out)
    return EXIT_OK


def cmd_bhargava(args, out):
    for n in args.degree:
        sig = SignatureSet.parse(args.signature, n)
        job = heuristics.EulerProductJob(n, tuple(sorted(sig)), args.digits, args.method, args.p_max)
        val = heuristics.bhargava_constant(job)
        line = f"{n}\t{val.value:.{args.digits}f}"
        if args.show_error:
            line += f"\t{val.error:.2e}"
        print(line, file=out)
    return EXIT_OK


def cmd_heuristics(args, out):
    groups = [heuristics.parse_group_label(g) for g in args.groups.split(",")] if args.groups else []
    if args.model == "cm":
        S = _primes(args.exclude)
        c = float(heuristics.cm_constant(args.e, S))
        print(f"constant\t{c:.10f}", file=out)
        for H in groups:
            p = heuristics.cm_probability(H, args.e, S, c)
            print(f"{H.label()}\t{p:.{args.digits}g}", file=out)
    else:
        print(f"constant\t{heuristics.malle_constant():.10f}", file=out)
        S = _primes(args.exclude) or (5,)
        for H in groups:
            p = heuristics.malle_combined_probability(H, args.e, S)
            print(f"{H.label()}\t{p:.{args.digits}g}", file=out)
    return EXIT_OK


def format_distribution(rows, predicted=None):
    labels = []
    for r in rows:
        for k in r:
            if k not in labels:
                labels.append(k)
    lines = ["block\t" + "\t".join(labels)]
    for i, r in enumerate(rows):
        lines.append(f"{i}\t" + "\t".join(f"{r.get(k, 0.0):.3g}" for k in labels))
    if predicted:
        lines.append("pred\t" + "\t".join(f"{predicted[k]:.3g}" if k in predicted else "-" for k in labels))
    return "\n".join(lines) + "\n"


def cmd_ingest(args, out):
    store = census.read_store(args.file)
    missing = [r for r in store.records if r.classgroup is None]
    if missing:
        raise heuristics.MissingClassData(f"{len(missing)} records lack a class group")
    if args.group:
        store.records = store.select(args.group)
    rows = heuristics.class_distribution(store.records, args.block, _primes(args.exclude))
    out.write(format_distribution(rows))
    return EXIT_OK


def cmd_export(args, out):
    store = census.read_store(args.store)
    group = _default_group(store, args)
    fh = open(args.out, "w", newline="") if args.out else out
    try:
        if args.what == "curve":
            census.emit_curve_csv(census.counting_curve(store, group), fh)
        else:
            import csv
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["d_K", "r1", "label", "certainty", "coefficients"])
            for r in store.select(group if args.group else None):
                w.writerow([r.d_K, r.r1, r.label, r.certainty, " ".join(map(str, r.coeffs))])
    finally:
        if args.out:
            fh.close()
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="fieldcensus", description="Census of number fields by discriminant.")
    sub = p.add_subparsers(dest="command", required=True)

    def job_opts(q):
        q.add_argument("--jobs", type=int, default=1, help="worker processes")
        q.add_argument("--checkpoint-every", type=float, default=10.0, metavar="SECONDS")

    q = sub.add_parser("enumerate", help="run a Hunter enumeration job")
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--bound", type=_bound, required=True)
    q.add_argument("--signature", required=True, help="tc, r1le1, tr, all or 'r1,r2;...'")
    q.add_argument("--shards", type=int, default=1)
    q.add_argument("--out", required=True, help="job directory")
    q.add_argument("--effort", type=int, default=pipeline.DEFAULT_RHO_BUDGET)
    q.add_argument("--sample", type=int, default=100, help="primes sampled for Galois labels")
    q.add_argument("--no-deep", action="store_true", help="disable power-sum pruning")
    job_opts(q)
    q.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("resume", help="continue an interrupted job")
    q.add_argument("dir")
    job_opts(q)
    q.set_defaults(func=cmd_resume)

    q = sub.add_parser("merge", help="merge job directories or record files")
    q.add_argument("inputs", nargs="+")
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_merge)

    q = sub.add_parser("stats", help="counts, curves, multiplicities, error exponents")
    q.add_argument("--store", required=True)
    q.add_argument("--group")
    q.add_argument("--X", type=_bound)
    g = q.add_mutually_exclusive_group()
    g.add_argument("--curve", action="store_true")
    g.add_argument("--mult", type=int, metavar="N")
    g.add_argument("--alphas", action="store_true")
    q.add_argument("--B", type=float, help="override the Bhargava constant")
    q.add_argument("--fit", type=float, nargs=3, metavar=("C1", "C2", "C3"),
                   help="secondary-term constants for the P and Delta columns")
    q.add_argument("--from-exp", type=int, default=3)
    q.set_defaults(func=cmd_stats)

    q = sub.add_parser("fit", help="least-squares secondary terms")
    q.add_argument("--store", required=True)
    q.add_argument("--imin", type=int, required=True)
    q.add_argument("--group")
    q.add_argument("--B", type=float)
    q.set_defaults(func=cmd_fit)

    q = sub.add_parser("bhargava", help="Bhargava constants B_n")
    q.add_argument("--degree", type=_degree_range, required=True, help="N or A..B")
    q.add_argument("--signature", default="r1le1")
    q.add_argument("--digits", type=int, default=8)
    q.add_argument("--method", choices=("prime-zeta", "direct"), default="prime-zeta")
    q.add_argument("--p-max", type=int, default=10 ** 6)
    q.add_argument("--show-error", action="store_true")
    q.set_defaults(func=cmd_bhargava)

    q = sub.add_parser("heuristics", help="class-group predictions")
    q.add_argument("model", choices=("cm", "malle"))
    q.add_argument("--e", type=int, default=2)
    q.add_argument("--exclude", default="", help="comma-separated excluded primes")
    q.add_argument("--groups", default="", help="comma-separated labels such as 1,2,4x2,3^2")
    q.add_argument("--digits", type=int, default=3)
    q.set_defaults(func=cmd_heuristics)

    q = sub.add_parser("ingest-classgroups", help="summarize class groups from a record file")
    q.add_argument("file")
    q.add_argument("--block", type=int, default=10 ** 4)
    q.add_argument("--exclude", default="2")
    q.add_argument("--group")
    q.set_defaults(func=cmd_ingest)

    q = sub.add_parser("export-csv", help="curve or record CSV")
    q.add_argument("--store", required=True)
    q.add_argument("--group")
    q.add_argument("--what", choices=("curve", "records"), default="curve")
    q.add_argument("--out")
    q.set_defaults(func=cmd_export)
    return p


def run(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        return args.func(args, out)
    except (Uncertified, FactorizationIncomplete, pipeline.IncompleteJob) as exc:
        print(f"fieldcensus: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except (ValueError, OSError, KeyError, ArithmeticError) as exc:
        print(f"fieldcensus: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
