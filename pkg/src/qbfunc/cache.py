"""Self-describing text caches for derived relation tables.

The payload lists every straightening rule, generator action and parent
pointer using the canonical scalar grammar, so a cache is diffable and
byte-reproducible.  A header hash covers the format version, the
configuration and the payload; any mismatch with the requesting
configuration refuses the cache instead of silently reusing it.
"""

from __future__ import annotations

import hashlib
import os

from .scalars import serialize, parse
from .freealg import RelationTable

CACHE_VERSION = 1


class StaleCache(RuntimeError):
    pass


def cache_name(pd, seed, level):
    return f"{pd.rs.family}{pd.rs.rank}_i{pd.i0 + 1}_s{seed}_{level}.table"


def _header_lines(pd, seed, level):
    order = ";".join(",".join(str(c) for c in b) for b in pd.convex_order)
    return [
        f"version {CACHE_VERSION}",
        f"family {pd.rs.family}",
        f"rank {pd.rs.rank}",
        f"i0 {pd.i0 + 1}",
        f"seed {seed}",
        f"level {level}",
        f"generators {pd.num_generators}",
        f"order {order}",
    ]


def _payload_lines(table):
    lines = []
    for (b, a) in sorted(table.straighten):
        parts = []
        for mono, c in table.straighten[(b, a)]:
            parts.append(f"{','.join(str(g) for g in mono)} {serialize(c)}")
        lines.append(f"rule {b} {a} : " + " ; ".join(parts))
    for (i, g) in sorted(table.rprime):
        s, g2 = table.rprime[(i, g)]
        lines.append(f"rprime {i} {g} : {serialize(s)} {'-' if g2 is None else g2}")
    for (i, g) in sorted(table.adf):
        s, g2 = table.adf[(i, g)]
        lines.append(f"adf {i} {g} : {serialize(s)} {g2}")
    for g, p in enumerate(table.parent):
        if p is None:
            lines.append(f"parent {g} : -")
        else:
            i, gp, c = p
            lines.append(f"parent {g} : {i} {gp} {serialize(c)}")
    return lines


def table_to_text(table, seed, level):
    header = _header_lines(table.pd, seed, level)
    payload = _payload_lines(table)
    digest = hashlib.sha256(
        "\n".join(header + payload).encode()).hexdigest()
    return "\n".join(header + [f"hash {digest}", "---"] + payload) + "\n"


def save_table(table, path, seed, level):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(table_to_text(table, seed, level))
    os.replace(tmp, path)


def load_table(path, pd, seed, level):
    """Parse a cache, refusing any header or hash mismatch."""
    with open(path) as fh:
        text = fh.read()
    head, _, body = text.partition("\n---\n")
    head_lines = head.splitlines()
    if not head_lines or not head_lines[-1].startswith("hash "):
        raise StaleCache(f"{path}: missing hash line")
    stored_hash = head_lines[-1].split()[1]
    header = head_lines[:-1]
    expected = _header_lines(pd, seed, level)
    if header != expected:
        raise StaleCache(f"{path}: header does not match requested configuration")
    payload = body.splitlines()
    digest = hashlib.sha256("\n".join(header + payload).encode()).hexdigest()
    if digest != stored_hash:
        raise StaleCache(f"{path}: payload hash mismatch")

    straighten, rprime, adf = {}, {}, {}
    parent = [None] * pd.num_generators
    for line in payload:
        kind, rest = line.split(" ", 1)
        lhs, _, rhs = rest.partition(" : ")
        if kind == "rule":
            b, a = (int(t) for t in lhs.split())
            rule = []
            for part in rhs.split(" ; "):
                mono_txt, sc = part.split(" ", 1)
                mono = tuple(int(t) for t in mono_txt.split(","))
                rule.append((mono, parse(sc)))
            straighten[(b, a)] = tuple(rule)
        elif kind == "rprime":
            i, g = (int(t) for t in lhs.split())
            sc, g2 = rhs.rsplit(" ", 1)
            rprime[(i, g)] = (parse(sc), None if g2 == "-" else int(g2))
        elif kind == "adf":
            i, g = (int(t) for t in lhs.split())
            sc, g2 = rhs.rsplit(" ", 1)
            adf[(i, g)] = (parse(sc), int(g2))
        elif kind == "parent":
            g = int(lhs)
            if rhs != "-":
                i, gp, sc = rhs.split(" ", 2)
                parent[int(g)] = (int(i), int(gp), parse(sc))
        else:
            raise StaleCache(f"{path}: unknown record {kind!r}")
    return RelationTable(pd=pd, straighten=straighten, rprime=rprime,
                         adf=adf, parent=tuple(parent),
                         verification={"level": level, "seed": seed,
                                       "source": "cache"})


def get_table(pd, seed, level, cache_dir=None, trials=32, budget_seconds=None):
    """Load from cache when valid, else derive and (if a dir is given) save."""
    from .freealg import FreeOracle
    path = None
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, cache_name(pd, seed, level))
        if os.path.exists(path):
            return load_table(path, pd, seed, level)
    table = FreeOracle(pd).derive_table(seed=seed, verify_level=level,
                                        trials=trials,
                                        budget_seconds=budget_seconds)
    if path:
        save_table(table, path, seed, level)
    return table
