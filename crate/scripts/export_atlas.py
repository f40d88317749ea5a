"""Write the networkx graph atlas (all graphs on 1..7 vertices, up to
isomorphism) as newline-delimited graph6 files, one file per order."""
import sys
from pathlib import Path

import networkx as nx

out = Path(sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/data")
out.mkdir(parents=True, exist_ok=True)
by_order = {}
for g in nx.graph_atlas_g():
    n = g.number_of_nodes()
    if n == 0:
        continue
    by_order.setdefault(n, []).append(nx.to_graph6_bytes(g, header=False))
for n, lines in sorted(by_order.items()):
    (out / f"atlas_n{n}.g6").write_bytes(b"".join(lines))
    print(n, len(lines))
