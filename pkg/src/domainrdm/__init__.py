"""Domain-restricted 1-RDMs, domain-averaged hole matrices and their representability."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BoundViolation, ContractionMismatch, DimensionMismatch, DomainRDMError,
    IdentityResolutionFailure, InvalidPartition, LocalizationError, MalformedInput,
    NegativeOccupation, NonOrthonormal, NonSymmetric, NotDuodempotent, NotPSD,
    NotRepresentable, ParseError, SchemaVersionMismatch, SymmetryViolation, TooLarge,
    TraceMismatch, ValidationError, Violation,
)
from .linalg import Spectrum, commutator_norm, psd_sqrt, sym_eigen  # noqa: E402
from .rdm import (  # noqa: E402
    DomainOverlapSet, DomainRestrictedRDM, OneRDM, Provenance, TwoRDM,
    validate_domain_set, validate_one_rdm, validate_two_rdm,
)
from .decomposition import natural_basis_restrict, partition, symmetric_restrict  # noqa: E402
from .dafh import CumulantTensor, cumulant, dafh_matrix, single_det_dafh, single_det_two_rdm  # noqa: E402
from .representability import (  # noqa: E402
    DomainComparison, Finding, FindingCode, RepresentabilityReport, Verdict, check,
    compare_constructions,
)
from .localization import (  # noqa: E402
    LocalizedOrbitals, isopycnic_localize, localization_functional, localize_domain, localize_matrix,
)
from .diagnostics import CommutatorTable, NeglectImpact, common_eigenbasis_report, neglect_impact  # noqa: E402
from .models import HubbardSpec, hubbard_fci, rdm_energy, single_det_system, site_domains  # noqa: E402
from .report import AnalysisBundle, build_bundle  # noqa: E402
