#pragma once

#include <stdexcept>
#include <string>

namespace glmae {

// Error taxonomy. Everything derives from std::runtime_error so callers that
// don't care about the category can catch one type.

struct InvalidWindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TokenizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MaskRatioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite activations or losses. Carries the transformer block index when
// the failure is localized to one block, else -1.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what, int block = -1)
      : std::runtime_error(what), block_index(block) {}
  int block_index;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace glmae
