#include "qdav/kernels.hpp"

#include <array>
#include <bit>
#include <cstddef>

namespace qdav::kernels {

namespace {

inline double z_sign(std::uint64_t s, std::uint64_t z) {
  return (std::popcount(s & z) & 1) ? -1.0 : 1.0;
}

}  // namespace

namespace serial {

void apply_word(std::span<const Complex> src, std::span<Complex> dst,
                std::uint64_t x, std::uint64_t z, Complex base) {
  const std::size_t dim = src.size();
  for (std::size_t t = 0; t < dim; ++t) {
    const std::uint64_t s = static_cast<std::uint64_t>(t) ^ x;
    dst[t] = base * z_sign(s, z) * src[s];
  }
}

void accumulate_word(std::span<const Complex> src, std::span<Complex> dst,
                     std::uint64_t x, std::uint64_t z, Complex base,
                     Complex coeff) {
  const Complex c = base * coeff;
  const std::size_t dim = src.size();
  for (std::size_t t = 0; t < dim; ++t) {
    const std::uint64_t s = static_cast<std::uint64_t>(t) ^ x;
    dst[t] += c * z_sign(s, z) * src[s];
  }
}

void apply_exp_word(std::span<const Complex> src, std::span<Complex> dst,
                    std::uint64_t x, std::uint64_t z, Complex base,
                    double cos_t, Complex m_i_sin) {
  const Complex c = m_i_sin * base;
  const std::size_t dim = src.size();
  for (std::size_t t = 0; t < dim; ++t) {
    const std::uint64_t s = static_cast<std::uint64_t>(t) ^ x;
    dst[t] = cos_t * src[t] + c * z_sign(s, z) * src[s];
  }
}

void apply_exp_word_inplace(std::span<Complex> v, std::uint64_t x,
                            std::uint64_t z, Complex base, double cos_t,
                            Complex m_i_sin) {
  const Complex c = m_i_sin * base;
  const std::size_t dim = v.size();
  if (x == 0) {
    for (std::size_t t = 0; t < dim; ++t) {
      v[t] *= cos_t + c * z_sign(static_cast<std::uint64_t>(t), z);
    }
    return;
  }
  // enumerate each {t, t^x} pair once via the highest set bit of x
  const std::uint64_t pivot = std::uint64_t{1}
                              << (63 - std::countl_zero(x));
  const std::uint64_t low = pivot - 1;
  for (std::size_t i = 0; i < dim / 2; ++i) {
    const std::uint64_t t = ((static_cast<std::uint64_t>(i) & ~low) << 1) |
                            (static_cast<std::uint64_t>(i) & low);
    const std::uint64_t u = t ^ x;
    const Complex vt = v[t];
    const Complex vu = v[u];
    v[t] = cos_t * vt + c * z_sign(u, z) * vu;
    v[u] = cos_t * vu + c * z_sign(t, z) * vt;
  }
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc{0.0, 0.0};
  const std::size_t dim = a.size();
  for (std::size_t t = 0; t < dim; ++t) {
    acc += std::conj(a[t]) * b[t];
  }
  return acc;
}

}  // namespace serial

namespace omp {

void apply_word(std::span<const Complex> src, std::span<Complex> dst,
                std::uint64_t x, std::uint64_t z, Complex base) {
  const std::int64_t dim = static_cast<std::int64_t>(src.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < dim; ++t) {
    const std::uint64_t s = static_cast<std::uint64_t>(t) ^ x;
    dst[static_cast<std::size_t>(t)] = base * z_sign(s, z) * src[s];
  }
}

void accumulate_word(std::span<const Complex> src, std::span<Complex> dst,
                     std::uint64_t x, std::uint64_t z, Complex base,
                     Complex coeff) {
  const Complex c = base * coeff;
  const std::int64_t dim = static_cast<std::int64_t>(src.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < dim; ++t) {
    const std::uint64_t s = static_cast<std::uint64_t>(t) ^ x;
    dst[static_cast<std::size_t>(t)] += c * z_sign(s, z) * src[s];
  }
}

void apply_exp_word(std::span<const Complex> src, std::span<Complex> dst,
                    std::uint64_t x, std::uint64_t z, Complex base,
                    double cos_t, Complex m_i_sin) {
  const Complex c = m_i_sin * base;
  const std::int64_t dim = static_cast<std::int64_t>(src.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < dim; ++t) {
    const std::uint64_t s = static_cast<std::uint64_t>(t) ^ x;
    dst[static_cast<std::size_t>(t)] =
        cos_t * src[static_cast<std::size_t>(t)] + c * z_sign(s, z) * src[s];
  }
}

void apply_exp_word_inplace(std::span<Complex> v, std::uint64_t x,
                            std::uint64_t z, Complex base, double cos_t,
                            Complex m_i_sin) {
  const Complex c = m_i_sin * base;
  const std::int64_t dim = static_cast<std::int64_t>(v.size());
  if (x == 0) {
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < dim; ++t) {
      v[static_cast<std::size_t>(t)] *=
          cos_t + c * z_sign(static_cast<std::uint64_t>(t), z);
    }
    return;
  }
  const std::uint64_t pivot = std::uint64_t{1}
                              << (63 - std::countl_zero(x));
  const std::uint64_t low = pivot - 1;
  const std::int64_t half = dim / 2;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < half; ++i) {
    const std::uint64_t t = ((static_cast<std::uint64_t>(i) & ~low) << 1) |
                            (static_cast<std::uint64_t>(i) & low);
    const std::uint64_t u = t ^ x;
    const Complex vt = v[t];
    const Complex vu = v[u];
    v[t] = cos_t * vt + c * z_sign(u, z) * vu;
    v[u] = cos_t * vu + c * z_sign(t, z) * vt;
  }
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  constexpr std::size_t kChunks = 256;
  const std::size_t dim = a.size();
  if (dim < 2 * kChunks) return serial::inner(a, b);
  std::array<Complex, kChunks> partial{};
  const std::size_t chunk = (dim + kChunks - 1) / kChunks;
#pragma omp parallel for schedule(static)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(kChunks); ++ci) {
    const std::size_t begin = static_cast<std::size_t>(ci) * chunk;
    const std::size_t end = std::min(begin + chunk, dim);
    Complex acc{0.0, 0.0};
    for (std::size_t t = begin; t < end; ++t) {
      acc += std::conj(a[t]) * b[t];
    }
    partial[static_cast<std::size_t>(ci)] = acc;
  }
  Complex total{0.0, 0.0};
  for (const Complex& p : partial) total += p;
  return total;
}

}  // namespace omp

void apply_word(std::span<const Complex> src, std::span<Complex> dst,
                std::uint64_t x, std::uint64_t z, Complex base) {
  if (src.size() >= kParallelCutoff) {
    omp::apply_word(src, dst, x, z, base);
  } else {
    serial::apply_word(src, dst, x, z, base);
  }
}

void accumulate_word(std::span<const Complex> src, std::span<Complex> dst,
                     std::uint64_t x, std::uint64_t z, Complex base,
                     Complex coeff) {
  if (src.size() >= kParallelCutoff) {
    omp::accumulate_word(src, dst, x, z, base, coeff);
  } else {
    serial::accumulate_word(src, dst, x, z, base, coeff);
  }
}

void apply_exp_word(std::span<const Complex> src, std::span<Complex> dst,
                    std::uint64_t x, std::uint64_t z, Complex base,
                    double cos_t, Complex m_i_sin) {
  if (src.size() >= kParallelCutoff) {
    omp::apply_exp_word(src, dst, x, z, base, cos_t, m_i_sin);
  } else {
    serial::apply_exp_word(src, dst, x, z, base, cos_t, m_i_sin);
  }
}

void apply_exp_word_inplace(std::span<Complex> v, std::uint64_t x,
                            std::uint64_t z, Complex base, double cos_t,
                            Complex m_i_sin) {
  if (v.size() >= kParallelCutoff) {
    omp::apply_exp_word_inplace(v, x, z, base, cos_t, m_i_sin);
  } else {
    serial::apply_exp_word_inplace(v, x, z, base, cos_t, m_i_sin);
  }
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() >= kParallelCutoff) return omp::inner(a, b);
  return serial::inner(a, b);
}

}  // namespace qdav::kernels
