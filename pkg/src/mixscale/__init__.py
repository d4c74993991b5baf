"""Functional and geometric mixing scales of scalar fields on the periodic torus."""

__version__ = "0.1.0"

from .errors import (
    FieldFormatError,
    MalformedHeaderError,
    MeanNotZeroError,
    MixscaleError,
    NonFiniteEntryError,
    ShapeMismatchError,
    ValidationError,
)
from .grid import ScalarField, demean, load_field, mean, store_field, sup_norm, variance
from .spectral import FourierCoeffs, analyze, h_minus_1, sobolev_norm, synthesize
from .averaging import (
    BallKernel,
    SupAverageProfile,
    ball_average,
    ball_average_at,
    ball_kernel,
    sup_average_profile,
    sup_ball_average,
    unit_ball_volume,
)
from .scales import (
    CrippaReport,
    ScaleReport,
    crippa_radius,
    default_radii,
    geometric_mixing_scale,
    prior_sg_bound,
    radius_scan,
    remark_identity_check,
    sg_upper_bound,
    strong_geometric_mixing_scale,
    verify_crippa_implication,
)
from .fields import cosine_field, default_corpus, defect_field, random_meanzero, stripe_field
from .transport import MixingTimeSeries, ShearProtocol, fourier_test_family, shear_step, simulate, translate
