#ifndef SDCIL_ERROR_HPP
#define SDCIL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sdcil {

/// Bad input: malformed files, violated preconditions, dimension mismatches.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A solver or model-building step could not produce a usable model.
class TrainingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Persisted model could not be read back (corrupt file, wrong version).
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace sdcil

#endif  // SDCIL_ERROR_HPP
