#include "cvtele/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

#include "cvtele/epr_model.hpp"

namespace cvtele {

unsigned workers_from_env() {
    const char* raw = std::getenv(kWorkersEnv);
    if (raw == nullptr || *raw == '\0')
        return 1;
    const std::string_view text(raw);
    unsigned value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || value < 1)
        throw DomainError(kWorkersEnv, "worker count must be an integer >= 1");
    return value;
}

}  // namespace cvtele
