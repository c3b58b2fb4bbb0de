"""Exact Cayley graph computations for F2 x F2 under two generating sets."""
from .ball import (
    BallFormatError,
    BallIndex,
    BallOverflowError,
    build_ball,
    distance,
    export_dot,
    get_ball,
    inside_distance,
    load_ball_cache,
    save_ball_cache,
    sphere_pairs_leq2,
    word_length,
)
from .convexity import (
    CheckReport,
    check_ac_radius,
    check_mac_radius,
    check_mprimeac_radius,
    convexity_profile,
    fftp_scan,
    lsp_scan,
    reverify_report,
    thm2_witness,
    thm3_loop,
    verify_thm2,
    verify_thm3,
)
from .group import (
    IDENTITY,
    S1,
    S2,
    GenSet,
    GroupElement,
    UnsupportedGenSetError,
    WordError,
    canonical_key,
    custom_genset,
    elem_inv,
    elem_mul,
    eval_word,
    exponent_sum,
    genset_from_name,
    hom_h,
    in_H,
    lemma1_express,
    len_s1_closed_form,
    parse_key,
    path_sheet_crossings,
    reduce_free_word,
    retraction_f,
    sheet,
)
from .search import Loop, fellow_travel_check, fftp_falsify, geodesic_check, loop_shorten_search

__version__ = "0.1.0"
