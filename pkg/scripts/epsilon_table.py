"""Print the exact list epsilon flexibility of every small graph.

    python scripts/epsilon_table.py [--n-max 4] [--k-max 3]
"""

import argparse

from flexcolor.flex import epsilon_ell
from flexcolor.invariants import hall_ratio
from flexcolor.io import all_graphs, emit_graph6
from flexcolor.lists import list_chromatic_number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--k-max", type=int, default=3)
    args = ap.parse_args()
    print(f"{'graph6':8} {'n':>2} {'m':>2} {'ch':>3} {'1/rho':>6}  eps(k) for k = ch..{args.k_max}")
    for G in all_graphs(args.n_max):
        ch = list_chromatic_number(G)
        eps = [str(epsilon_ell(G, k).epsilon) for k in range(ch, args.k_max + 1)]
        print(f"{emit_graph6(G):8} {G.n:>2} {G.num_edges:>2} {ch:>3} {str(1 / hall_ratio(G)):>6}  {' '.join(eps)}")


if __name__ == "__main__":
    main()
