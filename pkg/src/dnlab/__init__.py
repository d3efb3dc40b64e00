"""Finite-model workbench for distributive nearlattices and their logics."""
from .errors import DNLabError, GuardError, HasseError, InternalConsistencyError, PreconditionError
from .formulas import (M, PLAIN, Box, Const, Signature, Term, Var, build_mn, format_term, join,
                       parse_formula, substitute, variables_of)
from .algebra import (AlgebraClass, FiniteAlgebra, check_distributive, check_nearlattice, eval_term,
                      find_homomorphisms, from_hasse, mn_eval, with_top)
from .io import dump_algebra, load_algebra, load_class, parse_algebra
from .filters import all_filters, all_frink_filters, frink_lattice_is_distributive, generated_filter, is_filter
from .congruences import (GMatrix, all_congruences, frege_relation, is_congruence, is_point_regular,
                          leibniz_congruence, quotient, tarski_congruence)
from .consequence import audit_dn_term, consequence, equivalent_in_class, sfilters
from .gentzen import ProofNode, Sequent, check_proof, parse_sequent, prove, soundness_audit
from .modal import check_identity_M, check_modal
from .enumerate import canonical_form, enumerate_dn, enumerate_modal

__version__ = "0.1.0"
