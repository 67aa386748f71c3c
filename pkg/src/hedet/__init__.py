"""Construction and verification of small counterexamples to Hedetniemi's
conjecture: graphs G, H with chi(G), chi(H) > c but chi(G x H) <= c."""

from .counterexample import HVertex, Params, build_G, build_H, validate, vertex_map
from .fractional import chi_f_exact, tardif_chain_value, tardif_value
from .graph import Graph, lex_complete, mycielski, mycielski_chain, odd_girth, tensor_product
from .verifier import check_embedding, full_verify

__all__ = [
    "Graph", "HVertex", "Params", "build_G", "build_H", "chi_f_exact", "check_embedding",
    "full_verify", "lex_complete", "mycielski", "mycielski_chain", "odd_girth",
    "tardif_chain_value", "tardif_value", "tensor_product", "validate", "vertex_map",
]

__version__ = "0.1.0"
