"""Fuzzy and neutrosophic relational equations: algebra, solvers,
optimization, learning, relational products, and applied demos."""

from .grades import (
    DRASTIC,
    LUKASIEWICZ,
    MIN,
    PRODUCT,
    TOL,
    DrasticTNorm,
    GeneratorTNorm,
    Interval,
    LukasiewiczTNorm,
    MinTNorm,
    NoSolution,
    ProductTNorm,
    Residuum,
    TNorm,
    Unique,
    at_op,
    beta_op,
    crisp_material,
    equality_index,
    godel,
    implication_apply,
    implication_by_name,
    kleene_dienes,
    lukasiewicz_implication,
    q_metric,
    sigma_alpha,
    solve_scalar_t,
    subsethood,
    tnorm_apply,
    tnorm_by_name,
)
from .relations import (
    InfImplication,
    MaxMin,
    MaxProduct,
    Relation,
    SupT,
    alpha_cut,
    as_grid,
    compose,
    composition_by_name,
    identity,
    relation_properties,
    relational_join,
    transitive_closure,
    transpose,
)
from .solve import (
    CapExceeded,
    FreProblem,
    GavalecCertificate,
    InfeasibleError,
    SolutionSet,
    binding_sets,
    classify_attainability,
    constrained_greatest,
    gavalec_certificate,
    greatest_solution_relation,
    kagei_type1,
    kagei_type2_unique,
    max_solution,
    minimal_solutions_archimedean,
    minimal_solutions_lambda,
    minimal_solutions_matrix_pattern,
    solve,
    specificity_shift_fit,
    sre_solvability_criteria,
)
from .optimize import (
    GaConfig,
    LinearFreProblem,
    ParetoArchive,
    brute_force_linear,
    equivalence_reduce,
    fuzzy_c_means,
    optimize_linear,
    optimize_multiobjective,
    optimize_nonlinear_ga,
    pseudo_char_matrix,
    reduce_problem,
)
from .learn import (
    TrainerConfig,
    TrainingSet,
    TrainResult,
    delta_rule_B,
    delta_rule_J,
    delta_rule_K,
    delta_rule_basic,
    equality_error,
    smooth_derivative_train,
    sup_t_image,
    training_error,
)
from .neutro import (
    I,
    NeutroGrade,
    NeutroRelation,
    R,
    n_pseudo_char_matrix,
    neutro_compose,
    neutro_format,
    neutro_max,
    neutro_min,
    neutro_parse,
    nre_max_solution,
)
from .products import (
    ContingencyTable,
    DiagnosisKnowledge,
    ObservationMatrix,
    checklist_product,
    classical_support,
    defuzzify_cog,
    diagnose,
    diagnose_joint,
    explain_at_least_k,
    mamdani_control,
    triangle_product_criteria,
    triangle_product_subjects,
)

__version__ = "0.1.0"
