#pragma once

#include <stdexcept>

namespace bocpd {

// Invalid configuration: bad hyperparameters, malformed config file, ...
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid input data: unparsable series line, datum outside the model's
// support, unreadable/unwritable file, ...
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The filter lost all probability mass or produced non-finite values.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bocpd
