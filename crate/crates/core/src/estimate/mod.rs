//! Bounds on one-dimensional Hausdorff measure: exact partition-sum upper
//! bounds, certified inscribed-polyline lower bounds, box counts, and
//! checkers for the supporting measure inequalities.

mod boxcount;
mod certificate;
mod lemmas;
mod polyline;
mod upper;

pub use boxcount::{
    box_count, box_count_points, box_count_series, ols_slope, BoxCount, BoxCountSeries, DEFAULT_EXTRA_DEPTH,
};
pub use certificate::{
    certify, default_theta, theta_split, CertificateView, H1Certificate, MethodTags, ThetaSplit, DECIMAL_DIGITS,
};
pub use lemmas::{
    check_derivative_bound, check_lipschitz_image, check_sum_lemma, random, run_lemma_suite, InequalityCheck,
    LemmaSuiteReport, LemmaTally, SumLemmaCheck,
};
pub use polyline::{
    cantor_graph_closed_form, cantor_graph_length, collapsed_riesz_nagy_length, grid_length, polyline_length,
    polyline_length_with, PolylineLength, PolylineMethod, DEFAULT_PRECISION, MAX_GRID_DEPTH,
};
pub use upper::upper_bound_h1;
