"""Equivalence of disjunctive logic programs relative to head and body alphabets."""

from .syntax import (AlphabetPair, Atom, EmptyRuleError, Program, ProgramSyntaxError, Rule,
                     Workspace, classify_rule, in_class, parse_program, render_program,
                     symbol_sets)
from .semantics import (answer_sets, models, ordinary_equivalent, reduct, satisfies,
                        simplify_context)
from .characterization import (Characterization, ModelPair, hb_models, is_h_total,
                               is_preceq_maximal, preceq, prec_strict, rel_se_models,
                               rel_ue_models, se_models, ue_models)
from .decision import (Counterexample, Verdict, Witness, decide_containment,
                       decide_equivalence, decide_equivalence_positive,
                       equivalence_lattice_report, find_witness, oracle_equivalence,
                       witness_to_counterexample)
from .reduction import ReductionOutput, build_guess_program, normalize_guess, reduce_to_ordinary

__version__ = "0.1.0"
