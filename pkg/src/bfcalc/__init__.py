"""Laws of Form, the four-valued BF calculus and its relatives.

Submodules: ``syntax`` (expressions, parser, printer), ``pa_engine``
(two-valued arithmetic and algebra), ``bf_engine`` (the BF calculus),
``calculi`` (PAxPA, WF, Belnap, bilattice FOUR, rotations), ``rewrite``
(demonstrations and proof search), ``braid`` (signed permutations) and
``cli``.
"""

from .syntax import EMPTY, MARK, Expr, ParseError, parse, print_expr
from .pa_engine import M, U, PaValue, pa_equivalent, pa_simplify
from .bf_engine import SimpleValue, bf_equivalent, bf_eval, flatten, nms_eval
from .calculi import bilattice_op, op_table, unary
from .rewrite import Demonstration, check, search

__version__ = "0.1.0"

__all__ = [
    "EMPTY", "MARK", "Expr", "ParseError", "parse", "print_expr",
    "M", "U", "PaValue", "pa_equivalent", "pa_simplify",
    "SimpleValue", "bf_equivalent", "bf_eval", "flatten", "nms_eval",
    "bilattice_op", "op_table", "unary",
    "Demonstration", "check", "search",
]
