#include "bowtie/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bowtie::parallel {

unsigned thread_count(const Execution& exec) {
  unsigned n = exec.threads;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BOWTIE_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // an unparsable value leaves the count uncapped
    }
  }
  return n;
}

}  // namespace bowtie::parallel
