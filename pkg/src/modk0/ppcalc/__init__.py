from .backend import Backend, CoveredError, IncompatibleFamily, IndexTooLarge, PPError
from .sets import (Block, Cell, DefinableSet, Nest, antichain_join, antichain_meet, build_nest,
                   canonical_antichain, meet_closure, precedes)
from .characteristics import (EvalImage, discrete_form, discrete_nest, evaluate, kappa, kappa_blocks,
                              kappa_cell, local_characteristic, local_complex, singular_set)
from .towers import PrecChain, Tower, cell_decompose, chain_to_tower, closure, tower_chain
from .connectivity import (ConnectivityDigraph, LambdaResult, connected_pieces, connectivity_digraph,
                           lambda_invariant)
from .linear import difference_witness, extend_linear, minkowski_witness
from .expr import Expr, ExprError, Workspace, parse_expr
