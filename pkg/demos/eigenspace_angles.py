"""How the two eigenspaces of C_a sit relative to each other.

For a few values of |a| we print the spectrum of P_- - P_+ near its gap,
the norms ||P_+ P_-|| and ||P_+ P_- P_+||, and the four intersection counts.
"""
import warnings

import numpy as np

from diskops import grassmann as gr
from diskops.errors import SymbolAliasWarning

warnings.simplefilter("ignore", SymbolAliasWarning)
N = 256

print(f"{'a':>5} {'edge':>8} {'min+':>8} {'inside':>6} {'||PQ||':>8} {'||PQP||':>8}  dims")
for a in (0.2, 0.4, 0.6, 0.8):
    P, Q, _ = gr.align(gr.subspace("C", a, -1, N), gr.subspace("C", a, 1, N))
    d = gr.difference_spectrum(P, Q)
    edge = np.sqrt(1 - a * a)
    pos = d[d > 1e-9]
    inside = int(np.sum(np.abs(d) < edge - 0.01))
    # cosines accumulate at 1, so counts are taken on the smaller sections
    dims = gr.intersection_dims(gr.subspace("C", a, -1, 64), gr.subspace("C", a, 1, 64))
    print(f"{a:5.2f} {edge:8.5f} {pos.min():8.5f} {inside:6d} "
          f"{gr.product_norm(P, Q):8.5f} {gr.triple_norm(P, Q):8.5f}  {dims}")

# ||P Q P|| is the square of the largest cosine, so it tracks |a|^2, not |a|
