"""Linear-time temporal logic toolkit.

Formula parsing and printing, lasso-path model checking, a tableau
satisfiability/validity decider with verified witnesses, deterministic
space-bounded machine simulation, and the compiler that turns a machine run
into a single-variable model, path and formula.
"""

try:
    from . import _ltlkit as _ext  # installed wheel: extension inside the package
except ImportError:
    import _ltlkit as _ext  # build tree: extension next to the package on sys.path

Formula = _ext.Formula
KripkeModel = _ext.KripkeModel
LassoPath = _ext.LassoPath
Layout = _ext.Layout
ParseError = _ext.ParseError
ReductionOutput = _ext.ReductionOutput
RunResult = _ext.RunResult
SatResult = _ext.SatResult
SemanticError = _ext.SemanticError
TmSpec = _ext.TmSpec
VerifyReport = _ext.VerifyReport

count_vars = _ext.count_vars
dag_size = _ext.dag_size
eval_lasso = _ext.eval_lasso
node_count = _ext.node_count
oracle_eval = _ext.oracle_eval
parse = _ext.parse
parse_word = _ext.parse_word
read_model_file = _ext.read_model_file
read_tm_file = _ext.read_tm_file
reduce = _ext.reduce
reduce_closed = _ext.reduce_closed
sat = _ext.sat
simulate = _ext.simulate
valid = _ext.valid
validate_model = _ext.validate_model
validate_path = _ext.validate_path
validate_tm = _ext.validate_tm
verify = _ext.verify

__all__ = [
    "Formula",
    "KripkeModel",
    "LassoPath",
    "Layout",
    "ParseError",
    "ReductionOutput",
    "RunResult",
    "SatResult",
    "SemanticError",
    "TmSpec",
    "VerifyReport",
    "count_vars",
    "dag_size",
    "eval_lasso",
    "node_count",
    "oracle_eval",
    "parse",
    "parse_word",
    "read_model_file",
    "read_tm_file",
    "reduce",
    "reduce_closed",
    "sat",
    "simulate",
    "valid",
    "validate_model",
    "validate_path",
    "validate_tm",
    "verify",
]

__version__ = "0.1.0"
