#pragma once

#include <memory>
#include <string>

#include "nilrig/number_field.hpp"

namespace nilrig {

/// Options for certificate verification.
struct CertOptions {
  long kmax = 4096;        ///< spot-check all frequencies 0 < k <= kmax (|k| by symmetry)
  int precision_bits = 128;///< working precision of the verified trigonometric bounds
  int threads = 1;
};

/// A certified lower bound  2|sin(pi k a)| >= C * |k|^(-alpha_exp)  for all
/// nonzero integers k, where a is the algebraic number the certificate was
/// built from. C is exact; the numeric spot check validates the bound on a
/// finite frequency range as a defense against construction bugs.
struct DiophantineCertificate {
  Rational C;                ///< exact constant
  int alpha_exp = 0;         ///< exponent (degree of a minus 1)
  std::string provenance;    ///< how the constant was derived
  long kmax_checked = 0;     ///< spot check covered 0 < |k| <= kmax_checked
  int precision_bits = 0;
  double min_margin = 0.0;   ///< min over checked k of lhs/rhs (>= 1 when valid)
  double a_value = 0.0;      ///< numeric value of a (for reports)
  std::shared_ptr<const NumberField> number;  ///< a itself, for exact reuse
};

/// Builds a Liouville certificate for the rotation number a.
/// Throws RationalInput if a has degree 1 (rational rotation numbers admit
/// no small-divisor bound), CertificateSpotCheckFailed if the verified
/// numeric check finds a frequency violating the bound.
DiophantineCertificate diophantine_certificate(const std::shared_ptr<const NumberField>& a,
                                               const CertOptions& opts = {});

/// Distance from x to the nearest integer, as an exact enclosure
/// [lo, hi] computed from a rational enclosure of x.
QInterval integer_distance(const QInterval& x);

}  // namespace nilrig
