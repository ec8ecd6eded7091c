#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace qdav::kernels {

using Complex = std::complex<double>;

// Amplitude-level kernels behind the statevector operations. Every kernel
// exists twice: a plain serial reference (namespace serial) and an OpenMP
// variant (namespace omp). The unqualified entry points dispatch by vector
// length. Tests compare the two implementations; tools/bench_kernels times
// them against each other.
//
// Word action on a basis index: W|s> = base * (-1)^{popcount(z & s)} |s ^ x>,
// with base = i^{phase + |x & z|} supplied by the caller.

namespace serial {

/// dst = W src
void apply_word(std::span<const Complex> src, std::span<Complex> dst,
                std::uint64_t x, std::uint64_t z, Complex base);

/// dst += coeff * W src
void accumulate_word(std::span<const Complex> src, std::span<Complex> dst,
                     std::uint64_t x, std::uint64_t z, Complex base,
                     Complex coeff);

/// dst = cos_t * src - i sin_t * W src  (caller passes m_i_sin = -i sin_t)
void apply_exp_word(std::span<const Complex> src, std::span<Complex> dst,
                    std::uint64_t x, std::uint64_t z, Complex base,
                    double cos_t, Complex m_i_sin);

/// In-place variant of apply_exp_word.
void apply_exp_word_inplace(std::span<Complex> v, std::uint64_t x,
                            std::uint64_t z, Complex base, double cos_t,
                            Complex m_i_sin);

/// <a|b>, conjugate-linear in a.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace serial

namespace omp {

void apply_word(std::span<const Complex> src, std::span<Complex> dst,
                std::uint64_t x, std::uint64_t z, Complex base);
void accumulate_word(std::span<const Complex> src, std::span<Complex> dst,
                     std::uint64_t x, std::uint64_t z, Complex base,
                     Complex coeff);
void apply_exp_word(std::span<const Complex> src, std::span<Complex> dst,
                    std::uint64_t x, std::uint64_t z, Complex base,
                    double cos_t, Complex m_i_sin);
void apply_exp_word_inplace(std::span<Complex> v, std::uint64_t x,
                            std::uint64_t z, Complex base, double cos_t,
                            Complex m_i_sin);

/// Deterministic reduction: fixed chunk partials combined in index order,
/// so the result is bit-identical for any thread count.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace omp

// Dispatching entry points (OpenMP above this length, serial below).
inline constexpr std::size_t kParallelCutoff = std::size_t{1} << 12;

void apply_word(std::span<const Complex> src, std::span<Complex> dst,
                std::uint64_t x, std::uint64_t z, Complex base);
void accumulate_word(std::span<const Complex> src, std::span<Complex> dst,
                     std::uint64_t x, std::uint64_t z, Complex base,
                     Complex coeff);
void apply_exp_word(std::span<const Complex> src, std::span<Complex> dst,
                    std::uint64_t x, std::uint64_t z, Complex base,
                    double cos_t, Complex m_i_sin);
void apply_exp_word_inplace(std::span<Complex> v, std::uint64_t x,
                            std::uint64_t z, Complex base, double cos_t,
                            Complex m_i_sin);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace qdav::kernels
