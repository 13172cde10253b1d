#include "pilotopt/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

#include "pilotopt/errors.hpp"

namespace pilotopt {

const char* to_string(SimdLevel level) noexcept {
    switch (level) {
        case SimdLevel::scalar: return "scalar";
        case SimdLevel::avx2: return "avx2";
    }
    return "unknown";
}

SimdLevel detected_simd_level() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    if (detail::avx2_compiled() && __builtin_cpu_supports("avx2")) return SimdLevel::avx2;
#endif
    return SimdLevel::scalar;
}

SimdLevel active_simd_level() noexcept {
    static const SimdLevel level = [] {
        const char* env = std::getenv("PILOTOPT_SIMD");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) return SimdLevel::scalar;
        return detected_simd_level();
    }();
    return level;
}

bool simd_level_supported(SimdLevel level) noexcept {
    return level == SimdLevel::scalar || detected_simd_level() == SimdLevel::avx2;
}

std::vector<double> AllocationBatch::candidate(std::size_t i) const {
    std::vector<double> out(num_bs_);
    for (std::size_t m = 0; m < num_bs_; ++m) out[m] = at(i, m);
    return out;
}

namespace detail {

void combined_snr_batch_scalar(const double* ratios, std::size_t count, const double* snr,
                               std::size_t num_bs, double coherence, double* out) {
    const double bs_count = static_cast<double>(num_bs);
    for (std::size_t i = 0; i < count; ++i) {
        double useful = 0.0;
        double noise = 0.0;
        for (std::size_t m = 0; m < num_bs; ++m) {
            const double a = ratios[m * count + i];
            const double s = snr[m];
            const double u = a * coherence * s;
            const double e = 1.0 / (1.0 + u);
            useful += (1.0 - a) * s * u * e;
            noise += s * e;
        }
        out[i] = useful / (noise + bs_count);
    }
}

void uniform_ratio_snr_scalar(const double* alphas, std::size_t count, const double* snr, std::size_t num_bs,
                              double coherence, double* out) {
    const double bs_count = static_cast<double>(num_bs);
    for (std::size_t i = 0; i < count; ++i) {
        const double a = alphas[i];
        double useful = 0.0;
        double noise = 0.0;
        for (std::size_t m = 0; m < num_bs; ++m) {
            const double s = snr[m];
            const double u = a * coherence * s;
            const double e = 1.0 / (1.0 + u);
            useful += (1.0 - a) * s * u * e;
            noise += s * e;
        }
        out[i] = useful / (noise + bs_count);
    }
}

}  // namespace detail

namespace {

void check_level(SimdLevel level) {
    if (!simd_level_supported(level)) {
        throw ContractError(std::string("SIMD level not supported on this CPU: ") + to_string(level));
    }
}

}  // namespace

void combined_snr_batch(const AllocationBatch& batch, const LinkState& state, std::span<double> out,
                        SimdLevel level) {
    if (batch.num_bs() != state.per_bs_snr.size()) {
        throw ContractError("combined_snr_batch: batch width does not match link count");
    }
    if (out.size() != batch.count()) {
        throw ContractError("combined_snr_batch: output size does not match batch size");
    }
    check_level(level);
    const double L = static_cast<double>(state.coherence_symbols);
    if (level == SimdLevel::avx2) {
        detail::combined_snr_batch_avx2(batch.data(), batch.count(), state.per_bs_snr.data(), batch.num_bs(), L,
                                        out.data());
    } else {
        detail::combined_snr_batch_scalar(batch.data(), batch.count(), state.per_bs_snr.data(), batch.num_bs(),
                                          L, out.data());
    }
}

void combined_snr_batch(const AllocationBatch& batch, const LinkState& state, std::span<double> out) {
    combined_snr_batch(batch, state, out, active_simd_level());
}

void uniform_ratio_snr(std::span<const double> alphas, const LinkState& state, std::span<double> out,
                       SimdLevel level) {
    if (out.size() != alphas.size()) {
        throw ContractError("uniform_ratio_snr: output size does not match input size");
    }
    check_level(level);
    const double L = static_cast<double>(state.coherence_symbols);
    if (level == SimdLevel::avx2) {
        detail::uniform_ratio_snr_avx2(alphas.data(), alphas.size(), state.per_bs_snr.data(),
                                       state.per_bs_snr.size(), L, out.data());
    } else {
        detail::uniform_ratio_snr_scalar(alphas.data(), alphas.size(), state.per_bs_snr.data(),
                                         state.per_bs_snr.size(), L, out.data());
    }
}

void uniform_ratio_snr(std::span<const double> alphas, const LinkState& state, std::span<double> out) {
    uniform_ratio_snr(alphas, state, out, active_simd_level());
}

}  // namespace pilotopt
