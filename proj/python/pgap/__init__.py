"""Prime-gap structures toolkit.

Certified interval constants, segmented sieve scans, square-difference-free
constructions, and CRT-built perfect-power tuples, backed by the C++ core.
"""

from pgap._core import (  # noqa: F401
    CertifiedInterval,
    Color,
    ColoringReport,
    DigitTupleSpec,
    GreenRun,
    GreenRunWitness,
    InequalityReport,
    InfeasibleSystemError,
    InsufficientTableError,
    PowerTupleResult,
    PrimeTable,
    ResidueSet,
    TargetAssignment,
    Theorem1Report,
    Theorem5Witness,
    Theorem6Result,
    admissible_check,
    admissible_check_factored,
    appendix_reports,
    best_tuple_for_primes,
    build_digit_set,
    check_classical_inequalities,
    color_three,
    color_two,
    default_targets,
    euler_product_partial,
    first_green_run,
    first_sdf_run,
    g_k,
    is_sdf_residue_set,
    is_sdf_residues,
    max_sdf_residues,
    nth_prime,
    pair_count_with_difference,
    pair_tail_sum,
    paper50_targets,
    primes_up_to,
    primorial,
    program5_bounds,
    ruzsa_65,
    shifted_family,
    solve_exponents,
    sqfree_parity_sum,
    square_diff_pairs,
    squares_mod,
    telescoped_pair_tail,
    theorem1_report,
    theorem5_witness,
    theorem6_search,
    tuple_offsets,
    verify_lemma1_chain,
    verify_power_tuple,
    verify_theorem3_display,
    verify_tower_bound,
    yellow_bound_check,
)

__version__ = "0.1.0"
