#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#include "superosc/errors.hpp"
#include "superosc/real.hpp"

namespace superosc {

// Optional hard cap on precision escalation, e.g. SUPEROSC_MAX_BITS=512.
inline unsigned env_max_bits() {
    static unsigned cached = [] {
        const char* s = std::getenv("SUPEROSC_MAX_BITS");
        if (!s || !*s) return kHardMaxBits;
        char* end = nullptr;
        unsigned long v = std::strtoul(s, &end, 10);
        if (end == s || v < kMinBits) return kHardMaxBits;
        return static_cast<unsigned>(std::min<unsigned long>(v, kHardMaxBits));
    }();
    return cached;
}

// Working-precision policy for constructions whose coefficients grow like
// kappa2^n: the escalated precision is 64 + ceil(n*log2(kappa2_hat)) bits,
// with kappa2_hat = max_j |C_j(n)|, clamped to [base_bits, max_bits].
struct PrecisionPolicy {
    unsigned base_bits = 128;
    unsigned max_bits = 4096;

    unsigned cap() const { return std::min(max_bits, env_max_bits()); }

    unsigned escalate(double n, double kappa2_hat) const {
        double demand = 64.0;
        if (kappa2_hat > 1.0 && n > 0.0) demand += std::ceil(n * std::log2(kappa2_hat));
        unsigned want = demand >= static_cast<double>(kHardMaxBits)
                            ? kHardMaxBits
                            : static_cast<unsigned>(demand);
        return std::min(std::max(base_bits, want), cap());
    }

    // As escalate(), but refuses to run under-provisioned.
    unsigned require(double n, double kappa2_hat, const std::string& who) const {
        double demand = 64.0;
        if (kappa2_hat > 1.0 && n > 0.0) demand += std::ceil(n * std::log2(kappa2_hat));
        if (demand > static_cast<double>(cap()))
            throw PrecisionExhausted(who + ": needs " + std::to_string(static_cast<long>(demand)) +
                                     " bits, cap is " + std::to_string(cap()));
        return escalate(n, kappa2_hat);
    }

    static PrecisionPolicy fixed(unsigned bits) { return {bits, bits}; }
};

}  // namespace superosc
