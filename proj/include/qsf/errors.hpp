#pragma once

#include <stdexcept>
#include <string>

namespace qsf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Chart evaluated on the focal segment / at a focus, where the elliptic
// coordinates degenerate.
struct FocalSegmentError : Error {
  using Error::Error;
};

// Exact-derivative evaluation requested on a field that only carries a value
// rule (or whose derivative depth is exhausted).
struct MissingDerivativeRule : Error {
  using Error::Error;
};

// |B| below the floor where the unit direction b = B/B is meaningful.
struct ZeroFieldError : Error {
  using Error::Error;
};

// Profile E(psi) sampled negative where a square root is required.
struct NegativeEError : Error {
  using Error::Error;
};

// delta = sin^2(nu) + sinh^2(mu) collapsed below the exclusion floor.
struct DegenerateDeltaError : Error {
  using Error::Error;
};

// Initial strip has q0 = 0, violating transversality.
struct DegenerateStripError : Error {
  using Error::Error;
};

// Adaptive step controller underflowed.
struct StepFailureError : Error {
  using Error::Error;
};

// Neighboring characteristics crossed; the (xi,tau) -> (nu,theta) map lost
// rank.
struct PatchFoldError : Error {
  using Error::Error;
};

// eta / |grad mu|^2 < 1: no real slope dh/dnu exists at the reported nu.
struct NegativeRadicandError : Error {
  using Error::Error;
};

// Sample set cannot distinguish isometry generators.
struct RankDeficientSamplesError : Error {
  using Error::Error;
};

// grad(zeta) x grad(B) vanished at a sample, outside the validity region of
// the second-order reduction.
struct TangentialDegeneracyError : Error {
  using Error::Error;
};

// A finite-difference stencil straddles the phi = 0 cut of a multivalued
// field.
struct CutSurfaceError : Error {
  using Error::Error;
};

// CLI / configuration errors (exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace qsf
