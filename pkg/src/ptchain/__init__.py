"""Reality domains of PT-symmetric tridiagonal chain Hamiltonians.

The N-level chain (N = 2..11) has a real spectrum exactly when its secular
polynomial in ``s = E**2`` has only non-negative real roots.  This package
builds the chain, reduces it to that polynomial, decides membership with
closed-form inequality chains, certifies the answer with Sturm sequences and
maps the boundary of the domain.
"""
from .chain_model import (
    ChainMatrix,
    CouplingVector,
    Interval,
    TwoLevelModel,
    Variant,
    anti_persymmetry_defect,
    build_chain,
    two_level_horizon,
    two_level_spectrum,
)
from .criteria import AuxInvariants, aux_invariants, classify, dispatch, inside_J1, inside_J2, inside_J3, inside_J4, inside_J5
from .errors import (
    AnsatzDomainError,
    DepSolveError,
    InconsistencyError,
    NoBoundaryFound,
    PTChainError,
    ReparametrizationError,
    RootFindingError,
    UnsupportedDimensionError,
)
from .geometry import (
    DepPoint,
    EepPoint,
    ansatz_to_couplings,
    boundary_bisect,
    confluence_surface_N6,
    dep_solve_N6,
    eep_point,
    reparam_J3,
)
from .oracle import SpectrumReport, numeric_spectrum, oracle_verdict, sturm_classify
from .roots import solve_cubic_real, solve_quartic_real
from .secular import SecularForm, char_poly, necessary_conditions, secular_form, to_secular_form
from .verdict import State, Verdict

__version__ = "0.1.0"
