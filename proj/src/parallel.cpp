#include "theta/parallel.hpp"

#include <cstdlib>
#include <string>

namespace theta {

std::size_t worker_count()
{
    if (const char* env = std::getenv("THETA_SPANNER_THREADS")) {
        try {
            const long requested = std::stol(env);
            if (requested > 0) {
                return static_cast<std::size_t>(requested);
            }
        } catch (const std::exception&) {
            // unparsable values fall back to auto
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace theta
