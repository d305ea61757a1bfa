from frontlab.geometry.jets import Jet2, jet_lift
from frontlab.geometry.surface import (
    NormalFormCoeffs,
    PolySurface,
    extract_normal_form,
    from_normal_form,
    load_surface,
    parse_surface,
    validate_adapted,
)
from frontlab.geometry.frames import EdgeFrame, build_frame, psi_ccr, weingarten
from frontlab.geometry.curvature import (
    gauss_mean,
    principal_curvature_bounded,
    principal_direction,
    regular_principal,
)
from frontlab.geometry.singularity import SingClass, Verdict, classify, classify_edge
from frontlab.geometry.ridge import (
    ridge_analyze,
    ridge_closed_form,
    regular_parallel_swallowtail,
    sub_parabolic,
)
from frontlab.geometry.parallel import (
    make_parallel,
    parallel_singular_set,
    predict_swallowtail,
    swallowtail_conditions,
)
from frontlab.geometry.contact import classify_umbilic, delta_phi, height_jet_and_delta
from frontlab.geometry.dual import dual_nullfield_witness, dual_singularity, make_dual
