#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "bowtie/parallel.hpp"

using namespace bowtie::parallel;

TEST(NeumaierSum, RecoversCancelledTerms) {
  NeumaierSum<double> s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_EQ(s.value(), 2.0);

  double naive = 0;
  NeumaierSum<double> t;
  for (int i = 0; i < 1000000; ++i) {
    naive += 0.1;
    t.add(0.1);
  }
  EXPECT_LT(std::abs(t.value() - 100000.0), std::abs(naive - 100000.0));
  EXPECT_NEAR(t.value(), 100000.0, 1e-9);
}

TEST(ChunkedSum, BitIdenticalAcrossThreadCounts) {
  const std::size_t count = 50001;
  auto term = [](std::size_t i) {
    const double x = static_cast<double>(i);
    return std::complex<double>(std::sin(x) / (1 + x), std::cos(3 * x) * 1e-3 * x);
  };
  const auto reference = chunked_sum<double>(count, term, 1);
  for (unsigned threads : {2u, 3u, 4u, 8u}) {
    const auto z = chunked_sum<double>(count, term, threads);
    EXPECT_EQ(z.real(), reference.real()) << threads;
    EXPECT_EQ(z.imag(), reference.imag()) << threads;
  }
}

TEST(ChunkedSum, EmptyAndSmallCounts) {
  auto one = [](std::size_t) { return std::complex<long double>(1, -1); };
  EXPECT_EQ(chunked_sum<long double>(0, one, 4), std::complex<long double>(0, 0));
  EXPECT_EQ(chunked_sum<long double>(7, one, 4), std::complex<long double>(7, -7));
  EXPECT_EQ(chunked_sum<long double>(kChunkSize + 1, one, 4),
            std::complex<long double>(kChunkSize + 1, -static_cast<long double>(kChunkSize + 1)));
}

TEST(ThreadCount, ExplicitAndEnvironmentCap) {
  EXPECT_EQ(thread_count({3, Precision::Binary64}), 3u);
  ::setenv("BOWTIE_THREADS", "2", 1);
  EXPECT_EQ(thread_count({8, Precision::Binary64}), 2u);
  EXPECT_EQ(thread_count({1, Precision::Binary64}), 1u);
  EXPECT_LE(thread_count({}), 2u);
  EXPECT_GE(thread_count({}), 1u);
  ::unsetenv("BOWTIE_THREADS");
  EXPECT_GE(thread_count({}), 1u);
}
