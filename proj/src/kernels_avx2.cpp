#include "pilotopt/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define PILOTOPT_HAVE_AVX2 1
#else
#define PILOTOPT_HAVE_AVX2 0
#endif

namespace pilotopt::detail {

#if PILOTOPT_HAVE_AVX2

bool avx2_compiled() noexcept { return true; }

// No FMA: each multiply and add rounds separately, matching the scalar path.

__attribute__((target("avx2"))) void combined_snr_batch_avx2(const double* ratios, std::size_t count,
                                                              const double* snr, std::size_t num_bs,
                                                              double coherence, double* out) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d L = _mm256_set1_pd(coherence);
    const __m256d bs_count = _mm256_set1_pd(static_cast<double>(num_bs));
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d useful = _mm256_setzero_pd();
        __m256d noise = _mm256_setzero_pd();
        for (std::size_t m = 0; m < num_bs; ++m) {
            const __m256d a = _mm256_loadu_pd(ratios + m * count + i);
            const __m256d s = _mm256_set1_pd(snr[m]);
            const __m256d u = _mm256_mul_pd(_mm256_mul_pd(a, L), s);
            const __m256d e = _mm256_div_pd(one, _mm256_add_pd(one, u));
            const __m256d term = _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(_mm256_sub_pd(one, a), s), u), e);
            useful = _mm256_add_pd(useful, term);
            noise = _mm256_add_pd(noise, _mm256_mul_pd(s, e));
        }
        _mm256_storeu_pd(out + i, _mm256_div_pd(useful, _mm256_add_pd(noise, bs_count)));
    }
    for (; i < count; ++i) {
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
        out[i] = useful / (noise + static_cast<double>(num_bs));
    }
}

__attribute__((target("avx2"))) void uniform_ratio_snr_avx2(const double* alphas, std::size_t count,
                                                             const double* snr, std::size_t num_bs,
                                                             double coherence, double* out) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d L = _mm256_set1_pd(coherence);
    const __m256d bs_count = _mm256_set1_pd(static_cast<double>(num_bs));
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d a = _mm256_loadu_pd(alphas + i);
        const __m256d data_share = _mm256_sub_pd(one, a);
        const __m256d aL = _mm256_mul_pd(a, L);
        __m256d useful = _mm256_setzero_pd();
        __m256d noise = _mm256_setzero_pd();
        for (std::size_t m = 0; m < num_bs; ++m) {
            const __m256d s = _mm256_set1_pd(snr[m]);
            const __m256d u = _mm256_mul_pd(aL, s);
            const __m256d e = _mm256_div_pd(one, _mm256_add_pd(one, u));
            const __m256d term = _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(data_share, s), u), e);
            useful = _mm256_add_pd(useful, term);
            noise = _mm256_add_pd(noise, _mm256_mul_pd(s, e));
        }
        _mm256_storeu_pd(out + i, _mm256_div_pd(useful, _mm256_add_pd(noise, bs_count)));
    }
    if (i < count) uniform_ratio_snr_scalar(alphas + i, count - i, snr, num_bs, coherence, out + i);
}

#else

bool avx2_compiled() noexcept { return false; }

void combined_snr_batch_avx2(const double* ratios, std::size_t count, const double* snr, std::size_t num_bs,
                             double coherence, double* out) {
    combined_snr_batch_scalar(ratios, count, snr, num_bs, coherence, out);
}

void uniform_ratio_snr_avx2(const double* alphas, std::size_t count, const double* snr, std::size_t num_bs,
                            double coherence, double* out) {
    uniform_ratio_snr_scalar(alphas, count, snr, num_bs, coherence, out);
}

#endif

}  // namespace pilotopt::detail
