"""Exact bag-semantics evaluation of conjunctive queries, with the query and
structure transformations behind the containment reductions."""
from .bageval import (
    ContainmentCheck, apply, check_scaled_containment_at, component_split, count_homs,
    count_homs_naive, non_trivial, planets, planets_nonvenus, seen, seen_defined, visible,
)
from .polyrep import (
    ONE, Monomial, Polynomial, Valuation, choose_cent, coef, eval_mono, eval_poly, local_valuation,
    mono_to_cq, pad_polynomials, parse_monomial, parse_polynomial, parse_valuation, poly_to_ucq,
    structure_of_valuation, valuation_of_structure,
)
from .reductions import (
    ALL_STRUCTURES, NON_TRIVIAL, ReductionInstance, believer_lift, believer_signature, believer_slice, build_thm1,
    build_thm2, build_thm3, cor5_compose, cor5_gadgets, pleasantize,
)
from .relcore import (
    CQ, UCQ, Atom, Const, CQBagError, Neq, Node, ParseError, QueryError, Signature, SignatureError,
    Structure, StructureError, StructureFlags, Var, canonical_structure, classify_structure, conjoin,
    format_query, format_structure, is_pleasant, parse_cq, parse_query, parse_structure, restrict,
)
from .xform import (
    MAR, VEN, Trip, TripClass, classify_trip, count_by_trips, cqize, enumerate_trips, eta0, eta1,
    good_query, marsify, planet, rclique, relativize, substitute,
)

__version__ = "0.1.0"
