#pragma once

#include <stdexcept>
#include <string>

namespace hellylab {

// Machine-readable failure codes. `validation` maps to CLI exit 2, the
// precondition codes map to exit 3.
enum class errc {
    validation,
    unrealizable,
    not_separable,
    no_projection,
    unrepresentable,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::validation: return "VALIDATION";
        case errc::unrealizable: return "UNREALIZABLE";
        case errc::not_separable: return "NOT_SEPARABLE";
        case errc::no_projection: return "NO_PROJECTION";
        case errc::unrepresentable: return "UNREPRESENTABLE";
    }
    return "UNKNOWN";
}

inline int errc_exit_code(errc c) {
    return c == errc::validation ? 2 : 3;
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
    if (!condition) fail(code, message);
}

}  // namespace hellylab
