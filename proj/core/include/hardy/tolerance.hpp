#pragma once

namespace hardy {

/// Tolerances are owned by the caller; every check reads its threshold here.
struct ToleranceProfile {
  double pointwise = 1e-10;        // homogeneity / pointwise operator residuals
  double fd_min_step = 1e-6;       // finite-difference order-fit window
  double fd_max_step = 1e-2;
  double radial = 1e-8;            // identity residuals, 1D radial route
  double cartesian = 1e-4;         // identity residuals, tensor-grid route
  double consistency = 1e-10;      // agreement between two code paths for one statement
  double product_rule = 1e-6;      // dilation-ray finite differences
  double inequality_slack = 1e-8;  // ratio <= 1 + slack
  double strict_margin = 1e-10;    // ratio < 1 - margin counts as strict
  double schwarz = 1e-12;          // |Rf| <= |grad f| + schwarz
  double relative_floor = 1e-30;   // denominator floor for relative residuals
  double exclusion_band = 1e-8;    // skip samples with |x_k| < band * |x|^nu_k
};

}  // namespace hardy
