"""Reed-Muller (XOR/AND) forms of truth tables via Gröbner bases over GF(2)."""

from .errors import (
    AmbiguousForm,
    CoprimalityViolation,
    DimensionMismatch,
    EnumerationCapExceeded,
    ExponentOverflow,
    GbsynthError,
    NoForm,
    ParseError,
    ResourceLimit,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    Limits,
    buchberger,
    contains,
    groebner_basis,
    ideal_product,
    ideal_sum,
    is_coprime,
    reduce_basis,
    s_polynomial,
)
from .polyring import (
    GRLEX,
    LEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    PolyRing,
    Role,
    VariableTable,
    add,
    compare,
    evaluate,
    leading_term,
    multiply,
    normal_form,
    parse_polynomial,
)
from .tablefile import format_table, load_document, parse_document, parse_table
from .tabletool import (
    PolynomialForm,
    Row,
    SynthesisResult,
    TruthTable,
    assemble_ideal,
    bool_to_poly,
    check_disjoint_inputs,
    extract_polynomial_form,
    row_ideal,
    synthesize,
)

__version__ = "0.1.0"
