"""Selmer-group growth certificates over truncated Iwasawa algebras, with
desk-scale arithmetic for the worked examples."""

from .errors import (
    DegenerateSymmetrization,
    EpsilonIotaMismatch,
    IwasawaError,
    MultiEigenvariable,
    NonUnit,
    NotASign,
    NotEigenInitialForm,
    NotInMaximalIdeal,
    NotOrdinary,
    NotSkewHermitian,
    ParseError,
    PrecisionExhausted,
    SpecMismatch,
    ZeroElement,
)
from .growthcert import GrowthCertificate, certify, parity, verify_layers
from .iwalg import (
    ActionSpec,
    IwElem,
    LayerElem,
    WeierstrassData,
    augment,
    grouplike,
    iota,
    layer_reduce,
    parse_elem,
    parse_header,
    retruncate,
    serialize,
    sigma,
    sigma_iota,
    specialize,
    weierstrass_prepare,
)
from .padic import PAdic, padic_invert, padic_make, unit_sign, valuation
from .signcert import SignRecord, check_stability, epsilon_of, initial_form, symmetrize
from .skewherm import (
    LayerRankReport,
    OrganizingMatrix,
    certified_rank,
    check_skew_hermitian,
    coker_rank_at_layer,
    determinant,
    parse_matrix,
    residual_corank,
    serialize_matrix,
)

__version__ = "0.1.0"
