#include "bianchi/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bianchi {

unsigned default_workers() {
  if (const char* env = std::getenv("BIANCHI_WORKERS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace bianchi
