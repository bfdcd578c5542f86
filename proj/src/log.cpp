#include "brequant/log.hpp"

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace brequant {

int log_level() {
    static const int level = [] {
        const char* v = std::getenv("BREQUANT_LOG");
        if (v == nullptr || *v == '\0') return 0;
        if (std::strcmp(v, "debug") == 0 || std::strcmp(v, "2") == 0) return 2;
        if (std::strcmp(v, "0") == 0 || std::strcmp(v, "off") == 0) return 0;
        return 1;
    }();
    return level;
}

void log_line(int level, const char* fmt, ...) {
    if (log_level() < level) return;
    std::va_list args;
    va_start(args, fmt);
    std::fprintf(stderr, "[brequant] ");
    std::vfprintf(stderr, fmt, args);
    std::fprintf(stderr, "\n");
    va_end(args);
}

} // namespace brequant
