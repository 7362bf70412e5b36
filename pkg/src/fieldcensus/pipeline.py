"""Enumeration jobs: Hunter candidates -> d_K -> canonical form -> Galois label -> records.

A job directory holds ``job.txt`` (the configuration), and per shard a record
file ``shard-III.tsv`` plus a checkpoint ``shard-III.ckpt``.  The checkpoint
stores the byte length of the record file at the time the cursor was saved,
so a resumed shard first truncates anything written after it.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .canon import canonical_polynomial
from .census import FieldRecord, Store, format_header, parse_header, store_merge, write_store
from .exactmath.integers import DEFAULT_RHO_BUDGET
from .galois import AmbiguousAfterSampling, identify_group
from .hunter import (EnumerationTask, SignatureSet, enumerate_candidates, read_checkpoint,
                     shard, write_checkpoint)
from .orders import FactorizationIncomplete, field_discriminant

UNCERTIFIED_SUFFIX = "+dk-unproven"
AMBIGUOUS = "ambiguous"


class IncompleteJob(RuntimeError):
    pass


@dataclass(frozen=True)
class JobConfig:
    degree: int
    bound: float
    signature: str
    shards: int = 1
    deep: bool = True
    effort: int = DEFAULT_RHO_BUDGET
    sample: int = 100

    def validate(self):
        if not 4 <= self.degree <= 11:
            raise ValueError(f"degree {self.degree} outside 4..11")
        if not self.bound >= 1:
            raise ValueError("bound must be at least 1")
        if self.shards < 1:
            raise ValueError("shards must be positive")
        if self.sample < 10:
            raise ValueError("sample must be at least 10 primes")
        self.signatures()
        return self

    def signatures(self):
        return SignatureSet.parse(self.signature, self.degree)

    def header(self):
        return {"degree": self.degree, "signature": self.signatures().label(),
                "bound": _bound_text(self.bound), "deep": int(self.deep), "effort": self.effort,
                "sample": self.sample}

    def to_text(self):
        h = self.header()
        h["shards"] = self.shards
        return "".join(f"{k}={v}\n" for k, v in h.items())

    @classmethod
    def from_text(cls, text):
        kv = dict(line.split("=", 1) for line in text.splitlines() if "=" in line)
        return cls(int(kv["degree"]), float(kv["bound"]), kv["signature"], int(kv["shards"]),
                   bool(int(kv["deep"])), int(kv["effort"]), int(kv["sample"]))


def _bound_text(x):
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


class FieldBuilder:
    """Turns Hunter candidates into unique field records."""

    def __init__(self, config, seen=()):
        self.config = config
        self.X = config.bound
        self.seen = set(seen)
        self.uncertified = 0
        self.ambiguous = 0

    def record(self, cand):
        f = list(cand.coeffs)
        n = len(f) - 1
        try:
            fd = field_discriminant(f, self.config.effort, poly_disc=cand.disc, bound=self.X)
        except FactorizationIncomplete:
            self.uncertified += 1
            raise
        if fd is None or abs(fd.d_K) > self.X:
            return None
        cf = canonical_polynomial(f, fd)
        if cf.poly in self.seen:
            return None
        self.seen.add(cf.poly)
        sig = (cand.r1, (n - cand.r1) // 2)
        g = list(cf.poly)
        try:
            lab = identify_group(g, fd.d_K, sig, m=self.config.sample)
            name, certainty = lab.name, lab.certainty
        except AmbiguousAfterSampling:
            name, certainty = AMBIGUOUS, "unresolved"
            self.ambiguous += 1
        if not fd.certified:
            certainty += UNCERTIFIED_SUFFIX
            self.uncertified += 1
        return FieldRecord(n, cand.r1, fd.d_K, tuple(cf.poly[:-1]), name, certainty)


def shard_paths(job_dir, i):
    return (os.path.join(job_dir, f"shard-{i:03d}.tsv"), os.path.join(job_dir, f"shard-{i:03d}.ckpt"))


def init_job(config, job_dir):
    config.validate()
    os.makedirs(job_dir, exist_ok=True)
    path = os.path.join(job_dir, "job.txt")
    if os.path.exists(path):
        with open(path) as fh:
            old = JobConfig.from_text(fh.read())
        if old != config:
            raise ValueError(f"{job_dir} already holds a different job")
    else:
        with open(path, "w") as fh:
            fh.write(config.to_text())
    base = EnumerationTask(config.degree, config.bound, config.signatures(), deep=config.deep)
    for task in shard(base, config.shards):
        rec, ck = shard_paths(job_dir, task.slice_id)
        if not os.path.exists(ck):
            header = dict(config.header(), shard=f"{task.slice_id}/{task.parts}")
            with open(rec, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(format_header(header) + "\n")
            write_checkpoint(ck, task, {"records_bytes": os.path.getsize(rec), "complete": 0})
    return config


def load_job(job_dir):
    with open(os.path.join(job_dir, "job.txt")) as fh:
        return JobConfig.from_text(fh.read())


def run_shard(job_dir, i, checkpoint_every=10.0, max_prefixes=None):
    """Run (or continue) shard i to completion.  Returns a dict of counters."""
    config = load_job(job_dir)
    rec_path, ck_path = shard_paths(job_dir, i)
    task, kv = read_checkpoint(ck_path)
    if int(kv.get("complete", 0)):
        return {"shard": i, "complete": True, "uncertified": int(kv.get("uncertified", 0)),
                "ambiguous": int(kv.get("ambiguous", 0))}
    # drop whatever was written after the last checkpoint; those prefixes are redone
    with open(rec_path, "r+b") as fh:
        fh.truncate(int(kv["records_bytes"]))
    with open(rec_path, encoding="utf-8") as fh:
        fh.readline()
        seen = {FieldRecord.from_line(line).poly for line in fh if line.strip()}
    builder = FieldBuilder(config, seen)
    builder.uncertified = int(kv.get("uncertified", 0))
    builder.ambiguous = int(kv.get("ambiguous", 0))
    fh = open(rec_path, "a", encoding="utf-8", newline="\n")
    last = [time.monotonic()]

    def extra(complete):
        fh.flush()
        os.fsync(fh.fileno())
        return {"records_bytes": fh.tell(), "complete": int(complete),
                "uncertified": builder.uncertified, "ambiguous": builder.ambiguous}

    def sink(cand):
        r = builder.record(cand)
        if r is not None:
            fh.write(r.to_line() + "\n")

    def on_prefix(t):
        now = time.monotonic()
        if now - last[0] >= checkpoint_every:
            write_checkpoint(ck_path, t, extra(False))
            last[0] = now

    try:
        summary = enumerate_candidates(task, sink, on_prefix, max_prefixes=max_prefixes)
        write_checkpoint(ck_path, task, extra(summary.complete))
    finally:
        fh.close()
    return {"shard": i, "complete": summary.complete, "uncertified": builder.uncertified,
            "ambiguous": builder.ambiguous}


def _run_shard_args(args):
    return run_shard(*args)


def run_job(job_dir, workers=1, checkpoint_every=10.0):
    config = load_job(job_dir)
    ids = list(range(config.shards))
    if workers <= 1 or len(ids) == 1:
        results = [run_shard(job_dir, i, checkpoint_every) for i in ids]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(ids))) as ex:
            results = list(ex.map(_run_shard_args, [(job_dir, i, checkpoint_every) for i in ids]))
    return results


def read_shard_store(job_dir, i, require_complete=True):
    rec_path, ck_path = shard_paths(job_dir, i)
    task, kv = read_checkpoint(ck_path)
    if require_complete and not int(kv.get("complete", 0)):
        raise IncompleteJob(f"shard {i} of {job_dir} is not complete")
    with open(rec_path, "rb") as fh:
        raw = fh.read(int(kv["records_bytes"])).decode("utf-8")
    first, _, body = raw.partition("\n")
    header = parse_header(first)
    records = [FieldRecord.from_line(line) for line in body.split("\n") if line.strip()]
    header.pop("shard", None)
    return Store(header, records)


def job_store(job_dir, require_complete=True):
    config = load_job(job_dir)
    stores = [read_shard_store(job_dir, i, require_complete) for i in range(config.shards)]
    return store_merge(stores)


def merge_inputs(paths):
    """Merge job directories and record files into one store."""
    from .census import read_store
    stores = []
    for p in paths:
        stores.append(job_store(p) if os.path.isdir(p) else read_store(p))
    return store_merge(stores)


def build_store(config, job_dir, workers=1, out=None):
    init_job(config, job_dir)
    results = run_job(job_dir, workers)
    store = job_store(job_dir)
    if out is not None:
        write_store(out, store)
    return store, results
