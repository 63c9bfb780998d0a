"""p-adic Maass-Shimura operators on q-expansions, with exact identity checks."""

from .padic import (
    CoefficientRing,
    Padic,
    Qp,
    WeightExponent,
    cyclotomic,
    padic_exp,
    padic_log,
    padic_power,
    ramified_quadratic,
    teichmuller,
    unramified_quadratic,
)
from .series import MONOMIAL_Q, Q_MINUS_ONE, TruncatedSeries
from .operator import (
    OperatorParams,
    c_coeff,
    limit_sequence,
    p_stabilize,
    p_stabilize_average,
    theta_k_j_continuous,
    theta_k_j_integer,
)

__version__ = "0.1.0"
