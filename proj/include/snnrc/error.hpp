#pragma once

#include <stdexcept>
#include <string>

namespace snnrc {

/// Invalid parameters or malformed input handed to the library.
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical or structural failure while running a pipeline stage.
class pipeline_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace snnrc
