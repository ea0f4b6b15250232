"""otplab: no-signaling nonlocal boxes as one-time-pad hidden-variable systems.

Exact-arithmetic construction and analysis of bipartite binary-output
boxes (PR, isotropic, local deterministic, noisy-key, noisy-signaling),
no-signaling and CHSH/locality tests, vertex model extraction, XOR-pad
distributed-computation protocols with explicit bit accounting, and
Information Causality analysis through random access codes.
"""

from .analysis import (
    CANONICAL_CHSH_VARIANT,
    CHSH_VARIANTS,
    Lemma1Verdict,
    LocalityVerdict,
    NsReport,
    SignalingWitness,
    VertexStructure,
    chsh_family,
    chsh_value,
    correlator,
    full_output_vertex_structure,
    lemma1_verdict,
    local_2222,
    notp_model_from_isotropic,
    ns_check,
    otp_model_from_vertex,
)
from .boxes import (
    CorrelationTable,
    JointKeyDist,
    KeyDist,
    NOtpBoxSpec,
    OtpBoxSpec,
    Scenario,
    anti_pr_box,
    as_fraction,
    convex_mixture,
    evaluate_notp,
    evaluate_otp,
    isotropic,
    local_deterministic,
    noisy_ontic_box,
    pr_box,
    sample_outcome,
)
from .errors import (
    ConstructionError,
    DomainError,
    OtpLabError,
    PreconditionError,
    ProtocolError,
    ResourceLimitError,
    VertexRejection,
)
from .infotheory import (
    InformationReport,
    JointDistribution,
    KeyInfoReport,
    binary_entropy,
    entropy,
    ic_threshold_notp,
    key_mutual_information,
    mutual_information,
    rac_run_noisy_ontic,
    rac_run_notp,
)
from .protocols import (
    BoxEvent,
    DistributedFunction,
    Message,
    OtpSimulationResult,
    PrBoxInstance,
    PrBoxPool,
    ProtocolTranscript,
    VandamReport,
    format_bits,
    otp_decrypt,
    otp_encrypt,
    parse_bits,
    simulate_otp_via_pr,
    vandam_exhaustive,
    vandam_run,
    xor_homomorphism_check,
)

__version__ = "0.1.0"
