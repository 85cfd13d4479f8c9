"""State-space realizations of causal, time-invariant discrete-time systems.

The package builds the Nerode (minimal) realization of finite-state systems,
checks the quotient map from any realization onto it, and realizes linear
systems exactly from their Markov parameters.
"""

from ._backend import BACKEND
from .errors import (AlphabetError, CapacityError, NerodeError, OrderUndeterminedError,
                     ParseError, PreconditionError, ValidationError)
from .signal import (ALL, N0, Z_MINUS, Alphabet, IndexSet, Sequence, canonicalize,
                     concat, insert, project, shift)
from .systems import (FiniteWindowSystem, MealyMachine, ModularLinearSystem, System,
                      evaluate, linear_mod_p_to_mealy, to_mealy, validate_machine,
                      window_to_mealy)
from .engine import (CONTROLLABLE, REST_REACHABLE, NerodeRealization, Partition,
                     QuotientMapReport, controllable_subset, machine_equivalence,
                     minimize, nerode_equivalent, partition_refine, quotient_map,
                     reachable_states, state_at)
from .linear import (HankelMatrix, LinearSystem, RationalMatrix, block_hankel,
                     ho_kalman, markov_parameters, mcmillan_degree, rank_factor)

__version__ = "0.1.0"
