"""Determinant SLOCC invariants of even-n qubit states."""

__version__ = "0.1.0"

from slocc.scalars import Backend, ExactScalar
from slocc.states import PureState, gen_chi, gen_dicke, gen_family, gen_ghz, gen_w, make_state, random_state
from slocc.matrices import InvariantKind, build, index_map
from slocc.determinants import InvariantValue, LogComplex, cofactor_oracle, det_exact, det_float, evaluate
from slocc.operators import (
    LocalOperator,
    LocalOperatorChain,
    apply_chain,
    apply_single,
    covariance_residual,
    flip_all,
    per_qubit_covariance_suite,
    random_invertible,
)
from slocc.classifiers import Signature, Verdict, compare, measure, signature
from slocc.serializers import parse_state, serialize_state

__all__ = [
    '__version__',
    'Backend',
    'ExactScalar',
    'PureState',
    'make_state',
    'gen_ghz',
    'gen_w',
    'gen_dicke',
    'gen_chi',
    'gen_family',
    'random_state',
    'InvariantKind',
    'index_map',
    'build',
    'InvariantValue',
    'LogComplex',
    'det_exact',
    'det_float',
    'cofactor_oracle',
    'evaluate',
    'LocalOperator',
    'LocalOperatorChain',
    'apply_single',
    'apply_chain',
    'flip_all',
    'random_invertible',
    'covariance_residual',
    'per_qubit_covariance_suite',
    'Signature',
    'Verdict',
    'signature',
    'compare',
    'measure',
    'parse_state',
    'serialize_state',
]
