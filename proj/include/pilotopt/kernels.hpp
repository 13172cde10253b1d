#pragma once

// Batched combined-SNR evaluation. Every kernel has a portable scalar
// reference and an AVX2 variant; the variant is picked at runtime from CPU
// support, and PILOTOPT_SIMD=scalar forces the reference path. Both paths
// perform the same IEEE operations in the same order, so results are
// bit-identical.

#include <cstddef>
#include <span>
#include <vector>

#include "pilotopt/link_metrics.hpp"

namespace pilotopt {

enum class SimdLevel { scalar, avx2 };

const char* to_string(SimdLevel level) noexcept;

/// Best level this CPU supports.
SimdLevel detected_simd_level() noexcept;

/// Level used by the dispatching overloads (detected level unless overridden
/// through the environment).
SimdLevel active_simd_level() noexcept;

bool simd_level_supported(SimdLevel level) noexcept;

/// Candidate allocations stored BS-major: ratio of candidate i at BS m is
/// ratios[m * count + i]. Keeps each BS's ratios contiguous for vector loads.
class AllocationBatch {
public:
    AllocationBatch() = default;
    AllocationBatch(std::size_t count, std::size_t num_bs)
        : count_(count), num_bs_(num_bs), ratios_(count * num_bs, 0.0) {}

    std::size_t count() const noexcept { return count_; }
    std::size_t num_bs() const noexcept { return num_bs_; }

    double& at(std::size_t candidate, std::size_t bs) { return ratios_[bs * count_ + candidate]; }
    double at(std::size_t candidate, std::size_t bs) const { return ratios_[bs * count_ + candidate]; }

    std::span<const double> column(std::size_t bs) const {
        return std::span<const double>(ratios_).subspan(bs * count_, count_);
    }
    std::vector<double> candidate(std::size_t i) const;
    const double* data() const noexcept { return ratios_.data(); }

private:
    std::size_t count_ = 0;
    std::size_t num_bs_ = 0;
    std::vector<double> ratios_;
};

/// out[i] = combined_snr(candidate i, state).
void combined_snr_batch(const AllocationBatch& batch, const LinkState& state, std::span<double> out);
void combined_snr_batch(const AllocationBatch& batch, const LinkState& state, std::span<double> out,
                        SimdLevel level);

/// out[i] = combined_snr with every BS at ratio alphas[i].
void uniform_ratio_snr(std::span<const double> alphas, const LinkState& state, std::span<double> out);
void uniform_ratio_snr(std::span<const double> alphas, const LinkState& state, std::span<double> out,
                       SimdLevel level);

namespace detail {

void combined_snr_batch_scalar(const double* ratios, std::size_t count, const double* snr,
                               std::size_t num_bs, double coherence, double* out);
void uniform_ratio_snr_scalar(const double* alphas, std::size_t count, const double* snr, std::size_t num_bs,
                              double coherence, double* out);

bool avx2_compiled() noexcept;
void combined_snr_batch_avx2(const double* ratios, std::size_t count, const double* snr, std::size_t num_bs,
                             double coherence, double* out);
void uniform_ratio_snr_avx2(const double* alphas, std::size_t count, const double* snr, std::size_t num_bs,
                            double coherence, double* out);

}  // namespace detail
}  // namespace pilotopt
