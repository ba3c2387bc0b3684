#include "tdl/numeric.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace tdl {

unsigned thread_count() {
    if (const char* env = std::getenv("TDL_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

}  // namespace tdl
