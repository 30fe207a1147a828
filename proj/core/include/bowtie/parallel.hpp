#pragma once

// Deterministic parallel summation. Terms are grouped into fixed-size chunks,
// each chunk is summed with Neumaier compensation, and chunk totals are
// combined in chunk order. Threads only decide who computes which chunk, so
// the result is bit-identical for every thread count.

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstddef>
#include <thread>
#include <vector>

namespace bowtie::parallel {

enum class Precision { Binary64, Extended };

struct Execution {
  unsigned threads = 0;  // 0: BOWTIE_THREADS if set, else hardware concurrency
  Precision precision = Precision::Binary64;
};

/// Worker count for `exec`, capped by BOWTIE_THREADS when that is set.
unsigned thread_count(const Execution& exec = {});

inline constexpr std::size_t kChunkSize = 2048;

template <class Real>
class NeumaierSum {
 public:
  void add(Real x) {
    const Real t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_{0};
  Real comp_{0};
};

template <class Real>
class ComplexSum {
 public:
  void add(const std::complex<Real>& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<Real> value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum<Real> re_, im_;
};

/// sum_{i < count} term(i) with the chunked contract above.
template <class Real, class Term>
std::complex<Real> chunked_sum(std::size_t count, const Term& term, unsigned threads) {
  const std::size_t chunks = (count + kChunkSize - 1) / kChunkSize;
  std::vector<std::complex<Real>> partial(chunks);
  auto run_chunk = [&](std::size_t c) {
    ComplexSum<Real> acc;
    const std::size_t end = std::min(count, (c + 1) * kChunkSize);
    for (std::size_t i = c * kChunkSize; i < end; ++i) acc.add(term(i));
    partial[c] = acc.value();
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  ComplexSum<Real> total;
  for (const auto& z : partial) total.add(z);
  return total.value();
}

}  // namespace bowtie::parallel
