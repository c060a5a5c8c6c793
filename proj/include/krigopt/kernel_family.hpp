#pragma once

#include <stdexcept>
#include <string>

namespace krigopt {

enum class KernelFamily { SquaredExponential, Matern32, Matern52 };

inline KernelFamily parse_kernel_family(const std::string& name) {
    if (name == "se") return KernelFamily::SquaredExponential;
    if (name == "matern32") return KernelFamily::Matern32;
    if (name == "matern52") return KernelFamily::Matern52;
    throw std::invalid_argument("unknown kernel family: " + name);
}

inline const char* kernel_family_name(KernelFamily f) {
    switch (f) {
        case KernelFamily::SquaredExponential: return "se";
        case KernelFamily::Matern32: return "matern32";
        case KernelFamily::Matern52: return "matern52";
    }
    return "?";
}

}  // namespace krigopt
