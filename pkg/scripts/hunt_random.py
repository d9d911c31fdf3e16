"""Random search for graphs with omega = chi - 1 that fail the join condition.

No such graph exists on at most 7 vertices (the bundled catalogs are
scanned exhaustively by ``flexcolor hunt``), so this samples G(n, p) at
larger n and keeps the first few violators it meets.

    python scripts/hunt_random.py --n 9 --chi 4 --count 3 --out violators9.g6
"""

import argparse
import random
from dataclasses import dataclass

from flexcolor.constructions import converse_certificate, ohba_condition
from flexcolor.graph import from_edge_list
from flexcolor.invariants import chromatic_number, clique_number, tau
from flexcolor.io import emit_graph6


@dataclass
class HuntConfig:
    n: int = 9
    chi: int = 4
    p: float = 0.5
    count: int = 3
    tries: int = 200_000
    seed: int = 0
    certify: bool = True


def hunt(cfg: HuntConfig):
    rng = random.Random(cfg.seed)
    seen = set()
    for _ in range(cfg.tries):
        G = from_edge_list(cfg.n, [(i, j) for i in range(cfg.n) for j in range(i + 1, cfg.n) if rng.random() < cfg.p])
        if clique_number(G) != cfg.chi - 1 or chromatic_number(G) != cfg.chi:
            continue
        res = ohba_condition(G)
        g6 = emit_graph6(G)
        if res.holds or g6 in seen:
            continue
        seen.add(g6)
        cert = converse_certificate(G, res.violating_set, tau(G)) if cfg.certify else None
        yield g6, res.violating_set, cert
        if len(seen) >= cfg.count:
            return


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(HuntConfig()).items():
        if isinstance(default, bool):
            ap.add_argument(f"--{name}", action=argparse.BooleanOptionalAction, default=default)
        else:
            ap.add_argument(f"--{name}", type=type(default), default=default)
    ap.add_argument("--out", help="write a graph6 catalog here")
    args = ap.parse_args()
    out = args.__dict__.pop("out")
    cfg = HuntConfig(**vars(args))
    found = []
    for g6, S, cert in hunt(cfg):
        verdict = "" if cert is None else f" certificate p={cert.p} verified={cert.verified}"
        print(f"{g6}  S={list(S)}{verdict}", flush=True)
        found.append(g6)
    if out:
        with open(out, "w") as fh:
            fh.write(f"# {cfg.n}-vertex graphs with omega = {cfg.chi - 1}, chi = {cfg.chi} failing the join condition"
                     f" (python scripts/hunt_random.py --seed {cfg.seed} --count {cfg.count})\n")
            fh.writelines(g + "\n" for g in found)


if __name__ == "__main__":
    main()
