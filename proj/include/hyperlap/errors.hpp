#pragma once

#include <stdexcept>

namespace hyperlap {

/// Invalid configuration: bad parameter values, unknown scheme or framework
/// names, missing seed points, impossible fold counts. CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: structural hypergraph violations, unparsable files,
/// non-finite features, mismatched file lengths. CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: factorization breakdown, rank deficiency where full
/// rank is required, zero norms where a normalization is due. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperlap
