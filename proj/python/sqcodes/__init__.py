"""Linear codes over finite fields, Schur squares, and quadratic-form tools."""

import json as _json

from ._core import (  # noqa: F401
    BudgetError,
    LinearCode,
    SqcodesError,
    __version__,
    census_brute,
    code_to_text,
    decompose,
    distinguish,
    dual,
    entropy_hq,
    ev_kernel_dim,
    exact_expectation,
    field_add,
    field_inv,
    field_modulus,
    field_mul,
    field_pow,
    field_sub,
    is_subcode,
    min_distance,
    parse_code_text,
    puncture,
    qf_eval,
    qf_rank,
    read_code_file,
    rs_code,
    sample_code,
    schur_power,
    schur_product,
    schur_square_dim,
    worker_count,
    write_code_file,
    zero_count_brute,
    zero_count_closed,
)
from . import _core as _c


def gbinom(k, r, q):
    """Gaussian binomial coefficient: subspaces of dimension r in F_q^k."""
    return int(_c.gbinom_str(k, r, q))


def n_fullrank(q, k):
    """Number of full-rank quadratic forms in k variables over F_q."""
    return int(_c.n_fullrank_str(q, k))


def n_rank(q, k, r):
    """Number of rank-r quadratic forms in k variables over F_q."""
    return int(_c.n_rank_str(q, k, r))


def mc_square_full(q, k, n, model="systematic", trials=1000, seed=0):
    return _json.loads(_c.mc_square_full_json(q, k, n, model, trials, seed))


def mc_kernel_size(q, k, n, model="systematic", trials=1000, seed=0):
    return _json.loads(_c.mc_kernel_size_json(q, k, n, model, trials, seed))


def mc_dim_at_large_n(q, k, s, model="systematic", trials=1000, seed=0):
    return _json.loads(_c.mc_dim_at_large_n_json(q, k, s, model, trials, seed))


def mc_dual_distance(q, k, trials=1000, seed=0, delta=0.1, budget=1 << 24):
    return _json.loads(_c.mc_dual_distance_json(q, k, trials, seed, delta, budget))


def mc_model_compare(q, k, n, trials=1000, seed=0):
    return _json.loads(_c.mc_model_compare_json(q, k, n, trials, seed))
