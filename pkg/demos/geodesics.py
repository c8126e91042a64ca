"""Geodesics between eigenspaces of C_a, R_Omega and W_Omega at a = 0.5.

Each line names a pair, says whether a unique normalized geodesic joins them,
and for the ones that exist prints ||Z|| and the endpoint error of exp(Z).
"""
import warnings

from diskops import grassmann as gr
from diskops.errors import SymbolAliasWarning

warnings.simplefilter("ignore", SymbolAliasWarning)
a, N = 0.5, 128

S = lambda kind, sign: gr.subspace(kind, a, sign, N)
E, O = gr.subspace("E", order=N), gr.subspace("O", order=N)
pairs = [
    ("N(C_a-I), N(C_a+I)", S("C", 1), S("C", -1)),
    ("N(C_a-I), E", S("C", 1), E),
    ("N(C_a-I), O", S("C", 1), O),
    ("N(C_a+I), O", S("C", -1), O),
    ("N(C_a+I), N(R_Om+I)", S("C", -1), S("RP", -1)),
    ("N(C_a+I), N(R_Om-I)", S("C", -1), S("RP", 1)),
    ("K N(C_a-I), N(W_Om-I)", S("KC", 1), S("WP", 1)),
    ("K N(C_a-I), N(W_Om+I)", S("KC", 1), S("WP", -1)),
]
for name, P, Q in pairs:
    verdict = gr.geodesic_exists(P, Q)
    line = f"{name:26s} {verdict:11s}"
    if verdict == "yes_unique":
        p, q, _ = gr.align(P, Q)
        seg = gr.geodesic_generator(p, q)
        line += f" ||Z|| = {seg.norm_bound:.4f}  endpoint error {seg.endpoint_residual():.1e}"
    print(line)
