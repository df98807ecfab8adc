"""Exhaustive split-and-validate runs over all small connected spaces."""
from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .enumeration import _is_connected, all_levels, as_poset, children
from .homology import poset_homology
from .poset import to_hasse
from .reduction import Triviality, is_homotopically_trivial
from .splitter import DEFAULT_FUEL, split, validate_certificate, rule_counts

CHECKPOINT_VERSION = 1
CHUNK = 256


def _blank():
    return {"classes": 0, "split_ok": 0, "validated": 0, "failures": 0,
            "torsion_free": 0, "rules": Counter(), "triviality": Counter()}


def _check_chunk(args):
    parents, fuel, triviality = args
    tally = _blank()
    failures = []
    for par in parents:
        for q in children(par):
            if not _is_connected(q):
                continue
            p = as_poset(q)
            tally["classes"] += 1
            cert = split(p, fuel=fuel)
            verdict = validate_certificate(cert)
            if cert.complete:
                tally["split_ok"] += 1
            if verdict:
                tally["validated"] += 1
            if poset_homology(p).is_torsion_free():
                tally["torsion_free"] += 1
            tally["rules"].update(rule_counts(cert))
            if triviality:
                tally["triviality"][is_homotopically_trivial(p).status.value] += 1
            if not (cert.complete and verdict):
                failures.append({"space": to_hasse(p), "status": cert.status,
                                 "reason": verdict.reason,
                                 "residue": [to_hasse(r) for r in cert.residue()]})
    return tally, failures


def _merge(into, tally):
    for k in ("classes", "split_ok", "validated", "failures", "torsion_free"):
        into[k] += tally[k]
    into["rules"].update(tally["rules"])
    into["triviality"].update(tally["triviality"])


def _plain(tally):
    out = dict(tally)
    out["rules"] = dict(sorted(tally["rules"].items()))
    out["triviality"] = dict(sorted(tally["triviality"].items()))
    return out


def run_sweep(max_n: int = 10, fuel: int = DEFAULT_FUEL, jobs: int = 1,
              dump_failures: str | None = None, checkpoint: str | None = None,
              checkpoint_every: int = 10 ** 6, triviality: bool = True, log=None) -> dict:
    """Split and validate every connected class with at most max_n points.

    Work for size n is partitioned by parent classes of size n-1.  With a
    checkpoint path, progress is saved every checkpoint_every classes and a
    rerun resumes from the saved chunk.
    """
    state = _load_checkpoint(checkpoint, max_n, fuel)
    per_n = {int(k): _restore(v) for k, v in state.get("per_n", {}).items()}
    failures = state.get("failures", [])
    start_n, start_chunk = state.get("n", 1), state.get("chunk", 0)
    levels = all_levels(max(0, max_n - 1))
    since = 0
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for n in range(start_n, max_n + 1):
            parents = levels[n - 1]
            chunks = [parents[i:i + CHUNK] for i in range(0, len(parents), CHUNK)]
            tally = per_n.setdefault(n, _blank())
            first = start_chunk if n == start_n else 0
            work = [(c, fuel, triviality) for c in chunks[first:]]
            results = pool.map(_check_chunk, work) if pool else map(_check_chunk, work)
            for k, (t, fails) in enumerate(results, first):
                _merge(tally, t)
                for f in fails:
                    f["n"] = n
                tally["failures"] += len(fails)
                failures.extend(fails)
                since += t["classes"]
                if checkpoint and since >= checkpoint_every:
                    _save_checkpoint(checkpoint, max_n, fuel, n, k + 1, per_n, failures)
                    since = 0
            if log:
                log(f"n={n}: {tally['classes']} classes, {tally['validated']} validated, "
                    f"{tally['failures']} failures")
    finally:
        if pool:
            pool.shutdown()
    if checkpoint:
        _save_checkpoint(checkpoint, max_n, fuel, max_n + 1, 0, per_n, failures)
    report = {
        "max_n": max_n,
        "fuel": fuel,
        "per_n": {str(n): _plain(per_n[n]) for n in sorted(per_n)},
        "coverage": {str(n): (per_n[n]["validated"] / per_n[n]["classes"] if per_n[n]["classes"] else 1.0)
                     for n in sorted(per_n)},
        "failures": failures,
    }
    if dump_failures:
        _dump(dump_failures, failures)
    return report


def _restore(v):
    t = dict(v)
    t["rules"] = Counter(v.get("rules", {}))
    t["triviality"] = Counter(v.get("triviality", {}))
    return t


def _load_checkpoint(path, max_n, fuel) -> dict:
    if not path or not os.path.exists(path):
        return {}
    with open(path) as fh:
        state = json.load(fh)
    if state.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"checkpoint version {state.get('version')} not supported")
    if state.get("max_n") != max_n or state.get("fuel") != fuel:
        raise ValueError("checkpoint was written for a different run")
    return state


def _save_checkpoint(path, max_n, fuel, n, chunk, per_n, failures):
    state = {"version": CHECKPOINT_VERSION, "max_n": max_n, "fuel": fuel, "n": n, "chunk": chunk,
             "per_n": {str(k): _plain(v) for k, v in per_n.items()}, "failures": failures}
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(state, fh)
    os.replace(tmp, path)


def _dump(directory, failures):
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for i, f in enumerate(failures):
        (d / f"n{f['n']}_{i:05d}.hasse").write_text(f["space"])
        for j, r in enumerate(f["residue"]):
            (d / f"n{f['n']}_{i:05d}_residue{j}.hasse").write_text(r)


def torsion_sweep(max_n: int) -> dict[int, tuple[int, int]]:
    """n -> (connected classes, torsion-free ones)."""
    out = {}
    levels = all_levels(max_n)
    for n in range(1, max_n + 1):
        total = free = 0
        for q in levels[n]:
            if _is_connected(q):
                total += 1
                free += poset_homology(as_poset(q)).is_torsion_free()
        out[n] = (total, free)
    return out


def unknown_triviality(p) -> bool:
    return is_homotopically_trivial(p).status is Triviality.UNKNOWN
