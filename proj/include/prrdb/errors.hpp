#pragma once

#include <stdexcept>
#include <string>

namespace prrdb {

// Base of every error raised by the library. Callers that only care about
// "something was invalid" catch this.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input (state strings, rule specs, bit streams).
class parse_error : public error {
public:
    using error::error;
};

class zero_state_error : public error {
public:
    zero_state_error() : error("operator is undefined on the all-zero state") {}
};

class order_out_of_range : public error {
public:
    using error::error;
};

// A rule spec that parses but violates its parameter constraints.
class invalid_spec : public error {
public:
    using error::error;
};

class overflow_error : public error {
public:
    using error::error;
};

class length_mismatch : public error {
public:
    using error::error;
};

class not_de_bruijn : public error {
public:
    using error::error;
};

// A deviation state whose conjugate is not itself a deviation state.
class not_paired : public error {
public:
    using error::error;
};

// The conjugate pairs do not induce a rooted spanning tree of the cycles.
class not_spanning : public error {
public:
    using error::error;
};

} // namespace prrdb
