#pragma once

#include <stdexcept>
#include <string>

namespace toepsyl {

/// Malformed or rejected input: zero denominators, bad rational text, schema
/// violations in instance files.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch or out-of-range window / block index.
class dimension_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A matrix (or the instance that defines it) is not invertible.
class singular_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The instance generator hit its consecutive-rejection bound.
class generation_exhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace toepsyl
