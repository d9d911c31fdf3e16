"""Write the bundled graph6 catalogs (all graphs up to isomorphism, n = 1..7).

The networkx graph atlas lists every graph on at most 7 vertices; this
script dumps it one file per order so the package can scan catalogs
without depending on networkx at runtime.

    python scripts/make_catalogs.py [--out src/flexcolor/data]
"""

import argparse
from collections import defaultdict
from pathlib import Path

import networkx as nx


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=str(Path(__file__).parent.parent / "src/flexcolor/data"))
    args = parser.parse_args()

    by_order = defaultdict(list)
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() >= 1:
            by_order[g.number_of_nodes()].append(g)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n, graphs in sorted(by_order.items()):
        lines = [nx.to_graph6_bytes(g, header=False).decode().strip() for g in graphs]
        (out / f"graphs{n}.g6").write_text("\n".join(lines) + "\n")
        print(f"graphs{n}.g6: {len(lines)} graphs")


if __name__ == "__main__":
    main()
