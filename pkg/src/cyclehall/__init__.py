"""Exact computations in the generic Hall algebra and the generic extension
monoid of the oriented cycle, checked by counting over small prime fields."""

__version__ = "0.1.0"

from .hall import (
    HallElement,
    InterpolationError,
    constant_term_mod,
    interpolate_hall_polynomial,
    multiply_at_q,
    word_monomial,
)
from .monoid import (
    IsoClassSet,
    MonoidElement,
    deg_leq,
    end_dim,
    eval_word,
    generic_extension,
    monoid_element,
    orbit_dim,
    psi,
)
from .polynomial import IntPolynomial
from .quiver_core import (
    CycleQuiver,
    Multipartition,
    Word,
    closed_form_simple,
    dim_vector,
    enumerate_classes,
    insert_pi,
    parse_multipartition,
    parse_word,
    q_semisimple,
    q_single,
)
from .repfq import (
    FqRep,
    base_change,
    canonical_rep,
    classify,
    enumerate_submodules,
    ext_exists,
    hall_number_brute,
    hom_dim,
    quotient_rep,
)
