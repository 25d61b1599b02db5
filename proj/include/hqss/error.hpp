#pragma once

#include <stdexcept>
#include <string>

namespace hqss {

enum class Errc {
    ZeroInverse,
    ZeroArgument,
    NotPrime,
    SingularSystem,
    BadDirection,
    BadIndex,
    BadInput,
    NotClassifiable,
    UnsupportedClass,
    ExhaustedAttempts,
    NotAnEdge,
    InsufficientSubkeys,
    InconsistentSystem,
};

inline const char* errcName(Errc e) {
    switch (e) {
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::NotPrime: return "NotPrime";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::BadDirection: return "BadDirection";
    case Errc::BadIndex: return "BadIndex";
    case Errc::BadInput: return "BadInput";
    case Errc::NotClassifiable: return "NotClassifiable";
    case Errc::UnsupportedClass: return "UnsupportedClass";
    case Errc::ExhaustedAttempts: return "ExhaustedAttempts";
    case Errc::NotAnEdge: return "NotAnEdge";
    case Errc::InsufficientSubkeys: return "InsufficientSubkeys";
    case Errc::InconsistentSystem: return "InconsistentSystem";
    }
    return "Unknown";
}

// Domain error; every throw in the library uses this type.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errcName(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace hqss
