#pragma once

#include <stdexcept>
#include <string>

namespace mpa {

// bad parameters or malformed scenario input; the CLI maps this to exit code 2
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// a numeric routine could not deliver a certified result; CLI exit code 3
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}
